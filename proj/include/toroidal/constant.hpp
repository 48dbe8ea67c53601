#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

namespace tor {

using Rational = mpq_class;

// "num/den" (den omitted when 1)
std::string rational_str(const Rational& q);
Rational parse_rational(const std::string& s);

// A nonzero constant: rational coefficient times a Laurent monomial in named
// symbols. Symbols stand for NonzeroGeneric strata, so every value here is
// nonzero by construction and products/quotients stay exact.
class Constant {
public:
    Constant() : coeff_(1) {}
    explicit Constant(const Rational& q);
    explicit Constant(long q) : Constant(Rational(q)) {}

    static Constant symbol(const std::string& name);

    const Rational& coeff() const { return coeff_; }
    const std::map<std::string, int>& symbols() const { return syms_; }
    bool is_rational() const { return syms_.empty(); }
    bool is_one() const { return syms_.empty() && coeff_ == 1; }

    Constant operator*(const Constant& o) const;
    Constant operator/(const Constant& o) const;
    Constant& operator*=(const Constant& o) { return *this = *this * o; }
    Constant pow(int e) const;

    bool operator==(const Constant& o) const;
    bool operator!=(const Constant& o) const { return !(*this == o); }
    bool operator<(const Constant& o) const;

    // e.g. "3/2", "g1", "-2*g1^2*g3^-1"
    std::string str() const;
    static Constant parse(const std::string& s);

private:
    Rational coeff_;
    std::map<std::string, int> syms_;
};

}  // namespace tor
