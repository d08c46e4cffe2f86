#pragma once

#include "hahn/coeff_field.hpp"
#include "hahn/hahn_series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hahn {

// F = K(w) with w^2 = m for a monomial m of K. The valuation of F is read
// off the first coordinate of the exponents (the outer variable t), so
// v(w) = v_t(m)/2.
struct QuadExt {
    FieldSpec spec;
    HahnSeries m;
    RatFunc w_dagger;  // m^dagger / 2
    bool proper;       // false when m is already a square in K

    static QuadExt make(const FieldSpec& spec, const HahnSeries& m);
};

// a + b*w
struct QuadExtElement {
    HahnSeries a, b;

    friend bool operator==(const QuadExtElement&, const QuadExtElement&) = default;
};

QuadExtElement ext_from_base(const QuadExt& ext, const HahnSeries& a);
QuadExtElement ext_generator(const QuadExt& ext);
QuadExtElement ext_add(const QuadExtElement& x, const QuadExtElement& y);
QuadExtElement ext_mul(const QuadExt& ext, const QuadExtElement& x, const QuadExtElement& y);
// (a + b w)' = a' + (b' + b w^dagger) w
QuadExtElement ext_derive(const QuadExt& ext, const QuadExtElement& z);
bool ext_is_constant(const QuadExt& ext, const QuadExtElement& z);
// t-valuation; nullopt for zero.
std::optional<Rational> outer_valuation(const HahnSeries& f);
std::optional<Rational> ext_valuation(const QuadExt& ext, const QuadExtElement& z);
std::string ext_to_string(const QuadExtElement& z);

// The non-purity tower: k = Q(x), inner layer s with s' = s, outer layer t
// with t' = 0, flattened into Z^2 lex with t first, and m = s*t.
FieldSpec tower_spec();
QuadExt tower_extension();

struct HalfValuationRefutation {
    Rational valuation;       // l + v(w)
    DaggerSolution inner;     // b_l s^k with b_l^dagger = -w^dagger - c(l, 0): Unsat expected
};

struct ConstantScan {
    long bound;
    std::vector<std::pair<long, HahnSeries>> integer_constants;  // (l, a) with v(a) = l, a' = 0
    std::vector<HalfValuationRefutation> half_refutations;
    // integer points gamma of Z^2 with -w^dagger - c(gamma) in k^dagger
    DaggerLattice all_exponents;
    long membership_checks = 0;  // direct residue checks of -w^dagger - c(l, k) for |l|, |k| <= bound
    bool no_half_constants = false;
    FgSubgroup constant_valuations;  // inside (1/2)Z, from the scan
    FgSubgroup::Purity purity;
};

// Constants of F with t-valuation in [-bound, bound].
ConstantScan ext_constant_scan(const QuadExt& ext, long bound);

}  // namespace hahn
