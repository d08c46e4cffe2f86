#pragma once

#include "hahn/cmap.hpp"
#include "hahn/coeff_field.hpp"
#include "hahn/value_group.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hahn {

// k((t^Gamma)) with the twisted derivation determined by c.
struct FieldSpec {
    CoeffField field;
    ValueGroup group;
    AdditiveMap cmap;
    std::optional<GroupElement> truncation;  // default precision, > 0

    FieldSpec(CoeffField field, ValueGroup group, AdditiveMap cmap,
              std::optional<GroupElement> truncation = std::nullopt);

    // Default truncation, or NeedsPrecision if none is configured.
    const GroupElement& precision() const;
};

struct Term {
    GroupElement exp;
    RatFunc coeff;

    friend bool operator==(const Term&, const Term&) = default;
};

struct Valuation {
    enum class Kind { Finite, PlusInfinity, AboveTruncation };
    Kind kind;
    GroupElement value;  // exponent, or the truncation bound

    bool finite() const { return kind == Kind::Finite; }
    std::string to_string() const;
};

// Finitely supported series with an optional truncation marker O(t^tau):
// terms at exponents >= tau are unknown.
class HahnSeries {
public:
    explicit HahnSeries(ValueGroup group) : group_(group) {}
    HahnSeries(ValueGroup group, std::vector<Term> terms, std::optional<GroupElement> truncation = std::nullopt);

    static HahnSeries monomial(const ValueGroup& group, const RatFunc& coeff, const GroupElement& exp);
    static HahnSeries constant(const ValueGroup& group, const RatFunc& coeff);
    static HahnSeries big_o(const ValueGroup& group, const GroupElement& tau);

    const ValueGroup& group() const { return group_; }
    const std::vector<Term>& terms() const { return terms_; }
    const std::optional<GroupElement>& truncation() const { return truncation_; }

    bool is_exact() const { return !truncation_; }
    bool is_exact_zero() const { return terms_.empty() && !truncation_; }
    // No known terms (exact zero or O(t^tau) alone).
    bool is_empty() const { return terms_.empty(); }

    RatFunc coeff(const GroupElement& exp) const;
    const Term& leading() const;
    Valuation valuation() const;

    // Drop terms at or above tau and record the marker (keeps the lower one).
    HahnSeries truncated(const GroupElement& tau) const;
    HahnSeries without_truncation() const { return HahnSeries(group_, terms_); }

    HahnSeries operator-() const;
    friend HahnSeries operator+(const HahnSeries& a, const HahnSeries& b);
    friend HahnSeries operator-(const HahnSeries& a, const HahnSeries& b) { return a + (-b); }
    friend HahnSeries operator*(const HahnSeries& a, const HahnSeries& b);
    friend HahnSeries operator*(const RatFunc& c, const HahnSeries& a);
    HahnSeries& operator+=(const HahnSeries& b) { return *this = *this + b; }

    // Structural equality (terms and marker).
    friend bool operator==(const HahnSeries&, const HahnSeries&) = default;

    // "x*t^(1/2) + t^3 + O(t^5)", "0", "O(t^7)"
    std::string to_string() const;

private:
    void normalize();

    ValueGroup group_;
    std::vector<Term> terms_;
    std::optional<GroupElement> truncation_;
};

// Multiplicative inverse. Single exact terms invert exactly; otherwise the
// result is known below min(tau_f - 2 v(f), bound) and `bound` is required
// when f is exact.
HahnSeries inverse(const HahnSeries& f, const std::optional<GroupElement>& bound = std::nullopt);
HahnSeries divide(const HahnSeries& f, const HahnSeries& g, const std::optional<GroupElement>& bound = std::nullopt);
HahnSeries power(const HahnSeries& f, unsigned long n);

// Agreement below the smaller truncation of the two.
bool agrees(const HahnSeries& f, const HahnSeries& g);

// sum (a_gamma' + c(gamma) a_gamma) t^gamma
HahnSeries derive_series(const FieldSpec& spec, const HahnSeries& f);
// f'/f; exact multi-term inputs are expanded to the FieldSpec precision.
HahnSeries dagger_series(const FieldSpec& spec, const HahnSeries& f);
// pi(f), the t^0 coefficient of f in the valuation ring.
RatFunc residue(const HahnSeries& f);
HahnSeries cross_section(const FieldSpec& spec, const GroupElement& gamma);

struct ConstantTest {
    bool constant;
    bool up_to_truncation;
};
ConstantTest is_constant(const FieldSpec& spec, const HahnSeries& f);

// a with a' = u a, for u in k.
struct DaggerSolution {
    enum class Status { Solution, Unsat, Unknown };
    Status status = Status::Unknown;
    std::optional<HahnSeries> a;
    GroupElement m;                      // valuation of the solution
    RatFunc d = 1;                       // leading coefficient
    DaggerReason reason = DaggerReason::None;
    Poly at;
    std::string certificate;
    long checked = 0;                    // exponents tried by the search
};

DaggerSolution solve_dagger(const FieldSpec& spec, const RatFunc& u, long k_bound);

}  // namespace hahn
