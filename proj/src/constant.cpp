#include "toroidal/constant.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace tor {

std::string rational_str(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

Constant::Constant(const Rational& q) : coeff_(q) {
    coeff_.canonicalize();
    if (coeff_ == 0) throw std::invalid_argument("Constant must be nonzero");
}

Constant Constant::symbol(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("empty symbol name");
    Constant c;
    c.syms_[name] = 1;
    return c;
}

Constant Constant::operator*(const Constant& o) const {
    Constant r;
    r.coeff_ = coeff_ * o.coeff_;
    r.syms_ = syms_;
    for (const auto& [k, e] : o.syms_) {
        int v = (r.syms_[k] += e);
        if (v == 0) r.syms_.erase(k);
    }
    return r;
}

Constant Constant::operator/(const Constant& o) const { return *this * o.pow(-1); }

Constant Constant::pow(int e) const {
    Constant r;
    if (e == 0) return r;
    Rational base = coeff_;
    if (e < 0) base = 1 / base;
    unsigned k = static_cast<unsigned>(e < 0 ? -e : e);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), k);
    r.coeff_ = Rational(num, den);
    r.coeff_.canonicalize();
    for (const auto& [s, x] : syms_) r.syms_[s] = x * e;
    return r;
}

bool Constant::operator==(const Constant& o) const { return coeff_ == o.coeff_ && syms_ == o.syms_; }

bool Constant::operator<(const Constant& o) const {
    if (syms_ != o.syms_) return syms_ < o.syms_;
    return coeff_ < o.coeff_;
}

std::string Constant::str() const {
    std::ostringstream os;
    bool coeff_shown = false;
    if (syms_.empty() || coeff_ != 1) {
        if (coeff_ == -1 && !syms_.empty())
            os << "-";
        else {
            os << rational_str(coeff_);
            coeff_shown = true;
        }
    }
    bool first = !coeff_shown;
    for (const auto& [s, e] : syms_) {
        if (!first) os << "*";
        first = false;
        os << s;
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

Constant Constant::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty constant");
    Constant out;
    std::string body = s;
    if (body[0] == '-' && body.size() > 1 && std::isalpha(static_cast<unsigned char>(body[1]))) {
        out = Constant(-1);
        body = body.substr(1);
    }
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, '*')) {
        if (tok.empty()) throw std::invalid_argument("bad constant: " + s);
        if (std::isalpha(static_cast<unsigned char>(tok[0]))) {
            auto caret = tok.find('^');
            std::string name = tok.substr(0, caret);
            int e = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
            out *= Constant::symbol(name).pow(e);
        } else {
            out *= Constant(parse_rational(tok));
        }
    }
    return out;
}

}  // namespace tor
