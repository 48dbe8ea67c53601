#pragma once

// Brute-force oracles and small generators shared by the unit tests and the
// acceptance binary. Nothing here calls the library's ideal algebra.

#include "toroidal/monomial_ideal.hpp"
#include "toroidal/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using tor::Exponent;
using Gens = std::vector<Exponent>;

inline bool divides(const Exponent& a, const Exponent& b) {
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] > b[j]) return false;
    return true;
}

inline bool member(const Gens& gens, const Exponent& u) {
    for (const auto& g : gens)
        if (divides(g, u)) return true;
    return false;
}

inline int degree(const Exponent& u) {
    int t = 0;
    for (int x : u) t += x;
    return t;
}

// Every exponent with entries in [0, bound].
inline void for_box(int dim, int bound, const std::function<void(const Exponent&)>& f) {
    Exponent u(dim, 0);
    while (true) {
        f(u);
        int j = 0;
        while (j < dim && u[j] == bound) u[j++] = 0;
        if (j == dim) return;
        ++u[j];
    }
}

// Every exponent of total degree at most max_deg.
inline void for_degree(int dim, int max_deg, const std::function<void(const Exponent&)>& f) {
    for_box(dim, max_deg, [&](const Exponent& u) {
        if (degree(u) <= max_deg) f(u);
    });
}

inline int max_entry(const Gens& gens) {
    int b = 0;
    for (const auto& g : gens)
        for (int x : g) b = std::max(b, x);
    return b;
}

// Two monomial ideals agree iff they agree on the box one past every
// generator exponent, and on all monomials up to the given degree.
inline bool same_ideal(int dim, const Gens& a, const Gens& b, int max_deg = 12) {
    const int bound = std::max(max_entry(a), max_entry(b)) + 1;
    bool same = true;
    for_box(dim, bound, [&](const Exponent& u) { same = same && member(a, u) == member(b, u); });
    for_degree(dim, max_deg, [&](const Exponent& u) { same = same && member(a, u) == member(b, u); });
    return same;
}

inline bool is_antichain(const Gens& gens) {
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (i != k && divides(gens[i], gens[k])) return false;
    return true;
}

// Smallest total degree of a monomial in the ideal, by scanning.
inline int min_degree(int dim, const Gens& gens) {
    int best = -1;
    for_box(dim, max_entry(gens), [&](const Exponent& u) {
        if (member(gens, u) && (best < 0 || degree(u) < best)) best = degree(u);
    });
    return best;
}

// Largest exponent e with x^e dividing every monomial of the ideal.
inline Exponent common_factor(int dim, const Gens& gens) {
    Exponent f(dim, 1 << 20);
    for_box(dim, max_entry(gens), [&](const Exponent& u) {
        if (member(gens, u))
            for (int j = 0; j < dim; ++j) f[j] = std::min(f[j], u[j]);
    });
    return f;
}

// u is in the radical iff some power of u is in the ideal.
inline bool in_radical(const Gens& gens, const Exponent& u) {
    const int k = std::max(1, max_entry(gens));
    Exponent p = u;
    for (int& x : p) x *= k;
    return member(gens, p);
}

// The largest k with I inside <x_S>^k, read off every monomial of I in the box.
inline int order_along(int dim, const Gens& gens, const std::vector<int>& S) {
    int best = 1 << 20;
    for_box(dim, max_entry(gens), [&](const Exponent& u) {
        if (!member(gens, u)) return;
        int t = 0;
        for (int j : S) t += u[j];
        best = std::min(best, t);
    });
    return best;
}

inline int rank(std::vector<std::vector<mpq_class>> a) {
    int r = 0;
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            mpq_class f = a[i][c] / a[r][c];
            for (int k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
        }
        ++r;
    }
    return r;
}

// Seeded generator local to the tests.
struct Rand {
    std::mt19937_64 eng;
    explicit Rand(std::uint64_t seed) : eng(seed) {}
    int operator()(int lo, int hi) { return lo + static_cast<int>(eng() % static_cast<std::uint64_t>(hi - lo + 1)); }
};

inline Gens random_gens(Rand& r, int dim, int max_exp, int max_gens) {
    Gens g(r(1, max_gens), Exponent(dim));
    for (auto& e : g)
        for (int& x : e) x = r(0, max_exp);
    return g;
}

}  // namespace oracle
