#pragma once

#include "hahn/poly.hpp"

#include <string>

namespace hahn {

// Element of Q(x) in canonical form: coprime numerator and monic denominator.
// Constants are the subfield Q.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(const Rational& c) : num_(c), den_(1) {}  // NOLINT
    RatFunc(int c) : RatFunc(Rational(c)) {}          // NOLINT
    RatFunc(Poly p) : num_(std::move(p)), den_(1) {}  // NOLINT
    RatFunc(const Poly& num, const Poly& den);

    static RatFunc x() { return RatFunc(Poly::x()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return is_polynomial() && num_.is_constant(); }
    // Value of a constant element.
    Rational constant_value() const;

    RatFunc derivative() const;
    RatFunc inverse() const;

    RatFunc operator-() const { return RatFunc(-num_, den_, Canonical{}); }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
    RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
    RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
    RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }

    friend bool operator==(const RatFunc&, const RatFunc&) = default;

    // Parseable canonical text: "x^2 + 1", "(2*x + 1)/(x^2 + x)", "(1/2)/x".
    std::string to_string() const;

private:
    struct Canonical {};
    RatFunc(Poly num, Poly den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}

    Poly num_;
    Poly den_;
};

RatFunc pow(const RatFunc& f, long e);

}  // namespace hahn
