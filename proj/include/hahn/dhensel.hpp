#pragma once

#include "hahn/coeff_field.hpp"
#include "hahn/error.hpp"
#include "hahn/hahn_series.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hahn {

// Exponents of Y, Y', Y'', ... (no trailing zeros).
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& m);

// Finite sum of monomials in Y, Y', ..., Y^(r) with series coefficients.
class DifferentialPolynomial {
public:
    explicit DifferentialPolynomial(ValueGroup group) : group_(group) {}

    static DifferentialPolynomial constant(const HahnSeries& c);
    // Y^(order)
    static DifferentialPolynomial variable(const ValueGroup& group, int order);

    const ValueGroup& group() const { return group_; }
    const std::map<MultiIndex, HahnSeries>& terms() const { return terms_; }
    void add_term(MultiIndex m, const HahnSeries& c);

    // Highest derivative present (-1 without Y), and the total degree.
    int order() const;
    int degree() const;

    friend DifferentialPolynomial operator+(const DifferentialPolynomial& a, const DifferentialPolynomial& b);
    friend DifferentialPolynomial operator-(const DifferentialPolynomial& a, const DifferentialPolynomial& b);
    friend DifferentialPolynomial operator*(const DifferentialPolynomial& a, const DifferentialPolynomial& b);
    DifferentialPolynomial operator-() const;

    friend bool operator==(const DifferentialPolynomial&, const DifferentialPolynomial&) = default;

    // "(1 + t)*Y' + x*Y - t"
    std::string to_string() const;

private:
    ValueGroup group_;
    std::map<MultiIndex, HahnSeries> terms_;
};

// Image in k{Y} under the residue map.
class ResidueDiffPolynomial {
public:
    const std::map<MultiIndex, RatFunc>& terms() const { return terms_; }
    void add_term(const MultiIndex& m, const RatFunc& c);

    // -1 for the zero polynomial.
    int degree() const;
    // The degree-one part sum a_i Y^(i) as an operator, and the degree-zero part.
    LinearDiffOperator linear_part() const;
    RatFunc constant_part() const;

    std::string to_string() const;

private:
    std::map<MultiIndex, RatFunc> terms_;
};

std::string monomial_name(const MultiIndex& m);

HahnSeries dp_evaluate(const FieldSpec& spec, const DifferentialPolynomial& p, const HahnSeries& y);
ResidueDiffPolynomial dp_reduce(const DifferentialPolynomial& p);
bool is_quasi_linear(const DifferentialPolynomial& p);

// Raised when a residue equation L(u) = rhs has no solution in k.
class LinearSurjectivityError : public Error {
public:
    LinearSurjectivityError(GroupElement gamma, LinearDiffOperator op, RatFunc rhs);

    const GroupElement& gamma() const { return gamma_; }
    const LinearDiffOperator& op() const { return op_; }
    const RatFunc& rhs() const { return rhs_; }

private:
    GroupElement gamma_;
    LinearDiffOperator op_;
    RatFunc rhs_;
};

struct LiftStep {
    GroupElement gamma;        // exponent of the correction (0 for the first step)
    LinearDiffOperator op;     // operator solved at this level
    RatFunc rhs;
    RatFunc correction;
    Valuation residual;        // v(P(y)) after the step
};

struct LiftResult {
    HahnSeries y;
    std::vector<LiftStep> trace;
    Valuation residual;
    bool exact_zero = false;
};

// y in the valuation ring with v(P(y)) >= bound (or P(y) = 0).
LiftResult dhensel_lift(const FieldSpec& spec, const DifferentialPolynomial& p, const GroupElement& bound,
                        std::optional<long> max_iterations = std::nullopt);

// y with y^n = u up to O(t^bound), v(u) = 0, residue root taken positive.
HahnSeries hensel_nth_root(const FieldSpec& spec, const HahnSeries& u, unsigned long n, const GroupElement& bound);

struct PurityWitness {
    HahnSeries w;   // a * y
    HahnSeries y;
    ConstantTest constant;
    GroupElement valuation;
};

// A constant w with w^n = b and v(w) = v(a), from b constant and the
// residue of b/a^n an n-th power in k.
PurityWitness purity_witness(const FieldSpec& spec, const HahnSeries& a, const HahnSeries& b, unsigned long n,
                             const GroupElement& bound);

}  // namespace hahn
