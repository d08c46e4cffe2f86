#pragma once

#include "hahn/numeric.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hahn {

// Dense univariate polynomial over Q in the variable x; coefficient i is
// the coefficient of x^i, trailing zeros trimmed.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c) {  // NOLINT: constants promote
        if (c != 0) {
            coeffs_.push_back(c);
            coeffs_.back().canonicalize();
        }
    }
    Poly(int c) : Poly(Rational(c)) {}  // NOLINT
    explicit Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
        for (auto& c : coeffs_)
            c.canonicalize();
        trim();
    }

    static Poly x() { return monomial(1, 1); }
    static Poly monomial(const Rational& c, std::size_t degree);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
    Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }
    Rational constant_term() const { return coeff(0); }

    Poly monic() const;
    Poly derivative() const;
    Rational operator()(const Rational& at) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& b);
    Poly& operator-=(const Poly& b);
    Poly& operator*=(const Poly& b) { return *this = *this * b; }
    Poly& operator*=(const Rational& c);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    friend Poly operator*(Poly a, int c) { return a *= Rational(c); }
    friend Poly operator*(int c, Poly a) { return a *= Rational(c); }
    friend bool operator==(const Poly&, const Poly&) = default;

    // Lexicographic by degree then coefficients from the top; a total order
    // used for canonical sorting of factor lists.
    friend bool operator<(const Poly& a, const Poly& b);

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

// Monic gcd (zero only if both are zero).
Poly gcd(const Poly& a, const Poly& b);
// s*a + t*b == g with g the monic gcd.
struct ExtendedGcd {
    Poly g, s, t;
};
ExtendedGcd extended_gcd(const Poly& a, const Poly& b);
// Inverse of a modulo m; throws if not coprime.
Poly inverse_mod(const Poly& a, const Poly& m);

Poly pow(const Poly& p, unsigned long e);
// Multiplicity of the irreducible p in a (a != 0).
int multiplicity(const Poly& a, const Poly& p);

// Content-free integer polynomial with positive leading coefficient, and the
// rational factor: p == unit * primitive.
struct PrimitiveForm {
    Rational unit;
    std::vector<Integer> coeffs;
};
PrimitiveForm primitive_part(const Poly& p);
Poly from_integers(const std::vector<Integer>& coeffs);

// Yun squarefree decomposition: p == leading * prod(parts[i].first^parts[i].second)
// with monic, squarefree, pairwise coprime, nonconstant parts.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p);

struct Factorization {
    Rational unit;
    std::vector<std::pair<Poly, int>> factors;  // monic irreducible, sorted
};

// Complete factorization over Q. Throws SizeLimit above degree 32.
Factorization factor(const Poly& p);
constexpr int kMaxFactorDegree = 32;

// Distinct rational roots.
std::vector<Rational> rational_roots(const Poly& p);

}  // namespace hahn
