#pragma once

#include "hahn/matrix.hpp"
#include "hahn/ratfunc.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hahn {

// Q with the trivial derivation, or Q(x) with d/dx. Elements of both are
// stored as RatFunc; over Q they are constants.
enum class CoeffField { Rationals, RationalFunctions };

std::string field_name(CoeffField field);  // "Q" | "Qx"
CoeffField parse_field(std::string_view text);

// Throws DomainMismatch when f is not an element of the field.
void require_in_field(CoeffField field, const RatFunc& f);

RatFunc derive(CoeffField field, const RatFunc& f);
// f'/f; throws DivisionByZero for f == 0.
RatFunc dagger(CoeffField field, const RatFunc& f);

// a_0 + a_1 D + ... + a_r D^r
class LinearDiffOperator {
public:
    LinearDiffOperator() = default;
    explicit LinearDiffOperator(std::vector<RatFunc> coeffs);

    static LinearDiffOperator derivation() { return LinearDiffOperator({RatFunc(0), RatFunc(1)}); }

    // -1 for the zero operator.
    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<RatFunc>& coeffs() const { return coeffs_; }
    RatFunc coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : RatFunc(); }

    friend bool operator==(const LinearDiffOperator&, const LinearDiffOperator&) = default;

    // "D^2 + 2*D + 1", "(x + 1)*D - 1/x"; "0" for the zero operator.
    std::string to_string() const;

private:
    std::vector<RatFunc> coeffs_;
};

RatFunc apply_operator(CoeffField field, const LinearDiffOperator& a, const RatFunc& y);

// The operator z -> sum a_i (D + c0)^i z.
LinearDiffOperator twist_operator(CoeffField field, const LinearDiffOperator& a, const RatFunc& c0);

// Rational solutions of a(y) = b: a particular solution (if any) and a basis
// of the kernel. The particular solution has zero coordinates along the
// returned kernel basis.
struct LinearSolution {
    std::optional<RatFunc> particular;
    std::vector<RatFunc> kernel;
};

LinearSolution solve_linear(CoeffField field, const LinearDiffOperator& a, const RatFunc& b);

enum class DaggerReason {
    None,
    PolynomialPart,
    NonSimplePole,
    NonRationalResidue,
    NonIntegerResidue,
};

const char* dagger_reason_name(DaggerReason reason);

// Decision for g in k^dagger = {f'/f : f != 0}.
struct DaggerCertificate {
    bool member = false;
    // member: f = prod factors[i].first ^ factors[i].second (monic irreducible)
    std::vector<std::pair<Poly, Integer>> factors;
    RatFunc witness = 1;
    // non-member: the reason, the place it occurs (absent for the
    // polynomial part) and the offending residue
    DaggerReason reason = DaggerReason::None;
    Poly at;
    RatFunc residue;

    std::string describe() const;
};

DaggerCertificate log_derivative_membership(CoeffField field, const RatFunc& g);

// Least n >= 1 with n*g in k^dagger.
std::optional<Integer> dagger_saturation(CoeffField field, const RatFunc& g);

// An exact n-th root in k (the positive one when n is even), if one exists.
std::optional<RatFunc> nth_root_coeff(CoeffField field, const RatFunc& u, unsigned long n);

// Integer points z with g0 + sum z_i gs[i] in k^dagger. These form a coset
// of a lattice (or are empty). The constraints are staged in the order of
// DaggerReason; on failure, `reason` names the first stage with no integer
// solution.
struct DaggerLattice {
    bool solvable = false;
    IntVector particular;
    IntMatrix lattice;  // Hermite basis rows of the homogeneous solutions
    DaggerReason reason = DaggerReason::None;
    Poly at;
};

DaggerLattice dagger_lattice(CoeffField field, const RatFunc& g0, const std::vector<RatFunc>& gs);

}  // namespace hahn
