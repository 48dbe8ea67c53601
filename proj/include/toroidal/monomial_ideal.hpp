#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tor {

// Exponent tuple of a monomial; index j is the exponent of the j-th chart variable.
using Exponent = std::vector<int>;
using IndexSet = std::vector<int>;  // sorted, 0-based variable indices

class IdealError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Monomial ideal in a local chart, stored by its minimal generators in
// lexicographic order. No generators = zero ideal; {0..0} = unit ideal.
class MonomialIdeal {
public:
    MonomialIdeal() = default;
    explicit MonomialIdeal(int dim) : dim_(dim) {}

    static MonomialIdeal zero(int dim) { return MonomialIdeal(dim); }
    static MonomialIdeal unit(int dim);

    int dim() const { return dim_; }
    const std::vector<Exponent>& generators() const { return gens_; }
    std::size_t size() const { return gens_.size(); }

    bool is_zero() const { return gens_.empty(); }
    bool is_unit() const;
    bool is_principal() const { return gens_.size() == 1; }

    bool operator==(const MonomialIdeal& o) const { return dim_ == o.dim_ && gens_ == o.gens_; }
    bool operator!=(const MonomialIdeal& o) const { return !(*this == o); }
    bool operator<(const MonomialIdeal& o) const;

    std::string str() const;

private:
    friend MonomialIdeal minimal_generators(int, const std::vector<Exponent>&);
    int dim_ = 0;
    std::vector<Exponent> gens_;
};

bool divides(const Exponent& a, const Exponent& b);
int total_degree(const Exponent& e);

MonomialIdeal minimal_generators(int dim, const std::vector<Exponent>& gens);
bool contains_monomial(const MonomialIdeal& I, const Exponent& e);
Exponent gcd_generators(const MonomialIdeal& I);
MonomialIdeal colon_by_monomial(const MonomialIdeal& I, const Exponent& m);

struct Factorization {
    Exponent principal;  // F
    MonomialIdeal rest;  // N, with I = x^F * N
};
Factorization principal_part_factorization(const MonomialIdeal& I);

// I generated by pure powers of variables
bool is_irreducible_form(const MonomialIdeal& I);
std::vector<MonomialIdeal> irreducible_decomposition(const MonomialIdeal& I);

MonomialIdeal radical(const MonomialIdeal& I);
int order_at_origin(const MonomialIdeal& I);

// sum of exponents over the variables in S, minimized over generators
int order_along(const MonomialIdeal& I, const IndexSet& S);

inline constexpr int kMaxOrderDimCap = 10;
std::vector<IndexSet> max_order_components(const MonomialIdeal& I, int dim_cap = kMaxOrderDimCap);

// helpers shared by later modules
MonomialIdeal multiply_by_monomial(const MonomialIdeal& I, const Exponent& m);
MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal intersection(const MonomialIdeal& a, const MonomialIdeal& b);
IndexSet support(const Exponent& e);
Exponent unit_vector(int dim, int j, int power = 1);

std::string exponent_str(const Exponent& e);
std::string index_set_str(const IndexSet& s);

}  // namespace tor
