#include "toroidal/monomial_ideal.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace tor {

namespace {

void check_len(int dim, const Exponent& e) {
    if (static_cast<int>(e.size()) != dim)
        throw IdealError("exponent length " + std::to_string(e.size()) + " != ambient dimension " +
                         std::to_string(dim));
}

void require_nonzero(const MonomialIdeal& I, const char* op) {
    if (I.is_zero()) throw IdealError(std::string(op) + ": zero ideal");
}

}  // namespace

MonomialIdeal MonomialIdeal::unit(int dim) { return minimal_generators(dim, {Exponent(dim, 0)}); }

bool MonomialIdeal::is_unit() const {
    return gens_.size() == 1 && std::all_of(gens_[0].begin(), gens_[0].end(), [](int v) { return v == 0; });
}

bool MonomialIdeal::operator<(const MonomialIdeal& o) const {
    if (dim_ != o.dim_) return dim_ < o.dim_;
    return gens_ < o.gens_;
}

std::string MonomialIdeal::str() const {
    std::ostringstream os;
    os << "<";
    for (std::size_t i = 0; i < gens_.size(); ++i) os << (i ? "," : "") << exponent_str(gens_[i]);
    os << ">";
    return os.str();
}

bool divides(const Exponent& a, const Exponent& b) {
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] > b[j]) return false;
    return true;
}

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

MonomialIdeal minimal_generators(int dim, const std::vector<Exponent>& gens) {
    if (dim < 0) throw IdealError("negative ambient dimension");
    std::vector<Exponent> v;
    v.reserve(gens.size());
    for (const auto& g : gens) {
        check_len(dim, g);
        for (int x : g)
            if (x < 0) throw IdealError("negative exponent");
        v.push_back(g);
    }
    // after sorting by degree a divisor always precedes its multiples
    std::sort(v.begin(), v.end(), [](const Exponent& a, const Exponent& b) {
        int da = total_degree(a), db = total_degree(b);
        return da != db ? da < db : a < b;
    });
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::vector<Exponent> keep;
    for (const auto& g : v) {
        bool redundant = std::any_of(keep.begin(), keep.end(), [&](const Exponent& k) { return divides(k, g); });
        if (!redundant) keep.push_back(g);
    }
    std::sort(keep.begin(), keep.end());
    MonomialIdeal I(dim);
    I.gens_ = std::move(keep);
    return I;
}

bool contains_monomial(const MonomialIdeal& I, const Exponent& e) {
    check_len(I.dim(), e);
    return std::any_of(I.generators().begin(), I.generators().end(),
                       [&](const Exponent& g) { return divides(g, e); });
}

Exponent gcd_generators(const MonomialIdeal& I) {
    require_nonzero(I, "gcd_generators");
    Exponent g = I.generators().front();
    for (const auto& e : I.generators())
        for (int j = 0; j < I.dim(); ++j) g[j] = std::min(g[j], e[j]);
    return g;
}

MonomialIdeal colon_by_monomial(const MonomialIdeal& I, const Exponent& m) {
    check_len(I.dim(), m);
    std::vector<Exponent> out;
    for (const auto& g : I.generators()) {
        Exponent h(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) h[j] = std::max(g[j] - m[j], 0);
        out.push_back(std::move(h));
    }
    return minimal_generators(I.dim(), out);
}

Factorization principal_part_factorization(const MonomialIdeal& I) {
    require_nonzero(I, "principal_part_factorization");
    Exponent F = gcd_generators(I);
    return {F, colon_by_monomial(I, F)};
}

bool is_irreducible_form(const MonomialIdeal& I) {
    for (const auto& g : I.generators())
        if (support(g).size() > 1) return false;
    return true;
}

namespace {

void split(const MonomialIdeal& I, std::set<MonomialIdeal>& out) {
    const auto& gens = I.generators();
    auto it = std::find_if(gens.begin(), gens.end(), [](const Exponent& g) { return support(g).size() > 1; });
    if (it == gens.end()) {
        out.insert(I);
        return;
    }
    const Exponent& g = *it;
    int i = support(g).front();
    Exponent pure = unit_vector(I.dim(), i, g[i]);
    Exponent rest = g;
    rest[i] = 0;
    std::vector<Exponent> a = gens, b = gens;
    a.push_back(pure);
    b.push_back(rest);
    split(minimal_generators(I.dim(), a), out);
    split(minimal_generators(I.dim(), b), out);
}

bool ideal_contains(const MonomialIdeal& big, const MonomialIdeal& small) {
    return std::all_of(small.generators().begin(), small.generators().end(),
                       [&](const Exponent& g) { return contains_monomial(big, g); });
}

}  // namespace

std::vector<MonomialIdeal> irreducible_decomposition(const MonomialIdeal& I) {
    require_nonzero(I, "irreducible_decomposition");
    if (I.is_unit()) throw IdealError("irreducible_decomposition: unit ideal");
    std::set<MonomialIdeal> parts;
    split(I, parts);
    std::vector<MonomialIdeal> v(parts.begin(), parts.end());
    // for irreducible monomial ideals, Q is redundant iff some other component lies inside it
    std::vector<MonomialIdeal> out;
    for (std::size_t a = 0; a < v.size(); ++a) {
        bool redundant = false;
        for (std::size_t b = 0; b < v.size() && !redundant; ++b)
            if (a != b && ideal_contains(v[a], v[b])) redundant = true;
        if (!redundant) out.push_back(v[a]);
    }
    return out;
}

MonomialIdeal radical(const MonomialIdeal& I) {
    require_nonzero(I, "radical");
    std::vector<Exponent> out;
    for (const auto& g : I.generators()) {
        Exponent h(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) h[j] = g[j] > 0 ? 1 : 0;
        out.push_back(std::move(h));
    }
    return minimal_generators(I.dim(), out);
}

int order_at_origin(const MonomialIdeal& I) {
    require_nonzero(I, "order_at_origin");
    int best = total_degree(I.generators().front());
    for (const auto& g : I.generators()) best = std::min(best, total_degree(g));
    return best;
}

int order_along(const MonomialIdeal& I, const IndexSet& S) {
    require_nonzero(I, "order_along");
    int best = -1;
    for (const auto& g : I.generators()) {
        int s = 0;
        for (int j : S) s += g.at(j);
        if (best < 0 || s < best) best = s;
    }
    return best;
}

std::vector<IndexSet> max_order_components(const MonomialIdeal& I, int dim_cap) {
    require_nonzero(I, "max_order_components");
    if (I.is_unit()) throw IdealError("max_order_components: unit ideal");
    const int d = I.dim();
    if (d > dim_cap)
        throw IdealError("max_order_components: dimension " + std::to_string(d) + " exceeds cap " +
                         std::to_string(dim_cap));
    int best = -1;
    std::vector<unsigned> winners;
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
        int o = -1;
        for (const auto& g : I.generators()) {
            int s = 0;
            for (int j = 0; j < d; ++j)
                if (mask >> j & 1u) s += g[j];
            if (o < 0 || s < o) o = s;
        }
        if (o > best) {
            best = o;
            winners.clear();
        }
        if (o == best) winners.push_back(mask);
    }
    std::vector<IndexSet> out;
    for (unsigned w : winners) {
        bool minimal = std::none_of(winners.begin(), winners.end(),
                                    [&](unsigned v) { return v != w && (v & w) == v; });
        if (!minimal) continue;
        IndexSet s;
        for (int j = 0; j < d; ++j)
            if (w >> j & 1u) s.push_back(j);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

MonomialIdeal multiply_by_monomial(const MonomialIdeal& I, const Exponent& m) {
    check_len(I.dim(), m);
    std::vector<Exponent> out;
    for (auto g : I.generators()) {
        for (std::size_t j = 0; j < g.size(); ++j) g[j] += m[j];
        out.push_back(std::move(g));
    }
    return minimal_generators(I.dim(), out);
}

MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b) {
    if (a.dim() != b.dim()) throw IdealError("ideal_sum: dimension mismatch");
    std::vector<Exponent> v = a.generators();
    v.insert(v.end(), b.generators().begin(), b.generators().end());
    return minimal_generators(a.dim(), v);
}

MonomialIdeal intersection(const MonomialIdeal& a, const MonomialIdeal& b) {
    if (a.dim() != b.dim()) throw IdealError("intersection: dimension mismatch");
    std::vector<Exponent> v;
    for (const auto& g : a.generators())
        for (const auto& h : b.generators()) {
            Exponent l(g.size());
            for (std::size_t j = 0; j < g.size(); ++j) l[j] = std::max(g[j], h[j]);
            v.push_back(std::move(l));
        }
    return minimal_generators(a.dim(), v);
}

IndexSet support(const Exponent& e) {
    IndexSet s;
    for (std::size_t j = 0; j < e.size(); ++j)
        if (e[j] != 0) s.push_back(static_cast<int>(j));
    return s;
}

Exponent unit_vector(int dim, int j, int power) {
    Exponent e(dim, 0);
    e.at(j) = power;
    return e;
}

std::string exponent_str(const Exponent& e) {
    std::ostringstream os;
    os << "(";
    for (std::size_t j = 0; j < e.size(); ++j) os << (j ? "," : "") << e[j];
    os << ")";
    return os.str();
}

std::string index_set_str(const IndexSet& s) {
    std::ostringstream os;
    os << "{";
    for (std::size_t j = 0; j < s.size(); ++j) os << (j ? "," : "") << s[j];
    os << "}";
    return os.str();
}

}  // namespace tor
