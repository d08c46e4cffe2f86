#include "hahn/ratfunc.hpp"

#include "hahn/error.hpp"

namespace hahn {

RatFunc::RatFunc(const Poly& num, const Poly& den) {
    if (den.is_zero())
        fail(ErrorKind::DivisionByZero, "rational function with zero denominator");
    if (num.is_zero()) {
        den_ = Poly(1);
        return;
    }
    Poly g = gcd(num, den);
    Poly n = num / g, d = den / g;
    Rational lc = d.leading();
    num_ = n * (Rational(1) / lc);
    den_ = d * (Rational(1) / lc);
}

Rational RatFunc::constant_value() const {
    if (!is_constant())
        fail(ErrorKind::DomainMismatch, "not a constant: " + to_string());
    return num_.constant_term();
}

RatFunc RatFunc::derivative() const {
    if (is_polynomial())
        return RatFunc(num_.derivative());
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc RatFunc::inverse() const {
    if (is_zero())
        fail(ErrorKind::DivisionByZero, "inverse of zero");
    Rational lc = num_.leading();
    Rational inv = Rational(1) / lc;
    return RatFunc(den_ * inv, num_ * inv, Canonical{});
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_polynomial() && b.is_polynomial())
        return RatFunc(a.num_ + b.num_);
    if (a.den_ == b.den_)
        return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_polynomial() && b.is_polynomial())
        return RatFunc(a.num_ * b.num_);
    if (a.is_zero() || b.is_zero())
        return RatFunc();
    // cross-cancel before multiplying
    Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    Poly n = (a.num_ / g1) * (b.num_ / g2);
    Poly d = (a.den_ / g2) * (b.den_ / g1);
    Rational lc = d.leading();
    return RatFunc(n * (Rational(1) / lc), d * (Rational(1) / lc), RatFunc::Canonical{});
}

namespace {

bool needs_parens(const Poly& p) {
    int terms = 0;
    for (const auto& c : p.coeffs())
        if (c != 0)
            ++terms;
    if (terms > 1)
        return true;
    // single term with a fractional or non-unit coefficient times a power of x
    return !p.is_constant() && p.leading() != 1 && p.leading() != -1;
}

}  // namespace

std::string RatFunc::to_string() const {
    if (is_polynomial())
        return num_.to_string();
    std::string n = num_.to_string();
    if (needs_parens(num_) || (num_.is_constant() && !is_integer(num_.leading())))
        n = "(" + n + ")";
    std::string d = den_.to_string();
    if (needs_parens(den_))
        d = "(" + d + ")";
    return n + "/" + d;
}

RatFunc pow(const RatFunc& f, long e) {
    if (e < 0)
        return pow(f.inverse(), -e);
    RatFunc r(1), base = f;
    while (e) {
        if (e & 1)
            r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

}  // namespace hahn
