#include "hahn/quad_ext.hpp"

#include "hahn/error.hpp"

namespace hahn {

namespace {

bool all_even(const GroupElement& g) {
    for (const auto& c : g.coords())
        if (c.get_den() != 1 || c.get_num() % 2 != 0)
            return false;
    return true;
}

}  // namespace

QuadExt QuadExt::make(const FieldSpec& spec, const HahnSeries& m) {
    require_same_group(spec.group, m.group());
    if (!m.is_exact() || m.terms().size() != 1)
        fail(ErrorKind::InvalidArgument, "extension datum must be a single exact monomial, got " + m.to_string());
    const Term& t = m.leading();
    RatFunc md = spec.cmap(t.exp) + dagger(spec.field, t.coeff);
    bool square = all_even(t.exp) && nth_root_coeff(spec.field, t.coeff, 2).has_value();
    return QuadExt{spec, m, md * RatFunc(Rational(1, 2)), !square};
}

QuadExtElement ext_from_base(const QuadExt& ext, const HahnSeries& a) {
    return {a, HahnSeries(ext.spec.group)};
}

QuadExtElement ext_generator(const QuadExt& ext) {
    return {HahnSeries(ext.spec.group), HahnSeries::constant(ext.spec.group, 1)};
}

QuadExtElement ext_add(const QuadExtElement& x, const QuadExtElement& y) { return {x.a + y.a, x.b + y.b}; }

QuadExtElement ext_mul(const QuadExt& ext, const QuadExtElement& x, const QuadExtElement& y) {
    return {x.a * y.a + x.b * y.b * ext.m, x.a * y.b + x.b * y.a};
}

QuadExtElement ext_derive(const QuadExt& ext, const QuadExtElement& z) {
    return {derive_series(ext.spec, z.a), derive_series(ext.spec, z.b) + ext.w_dagger * z.b};
}

bool ext_is_constant(const QuadExt& ext, const QuadExtElement& z) {
    QuadExtElement d = ext_derive(ext, z);
    return d.a.is_empty() && d.b.is_empty();
}

std::optional<Rational> outer_valuation(const HahnSeries& f) {
    if (f.is_empty())
        return std::nullopt;
    return f.leading().exp.coords()[0];
}

std::optional<Rational> ext_valuation(const QuadExt& ext, const QuadExtElement& z) {
    std::optional<Rational> va = outer_valuation(z.a), vb = outer_valuation(z.b);
    if (vb)
        vb = *vb + *outer_valuation(ext.m) / 2;
    if (!va)
        return vb;
    if (!vb)
        return va;
    return std::min(*va, *vb);
}

std::string ext_to_string(const QuadExtElement& z) {
    return "(" + z.a.to_string() + ") + (" + z.b.to_string() + ")*w";
}

FieldSpec tower_spec() {
    ValueGroup g = ValueGroup::lex(2);
    return FieldSpec(CoeffField::RationalFunctions, g, AdditiveMap(g, CoeffField::RationalFunctions, {0, 1}));
}

QuadExt tower_extension() {
    FieldSpec spec = tower_spec();
    return QuadExt::make(spec, HahnSeries::monomial(spec.group, 1, GroupElement(spec.group, std::vector<Rational>{1, 1})));
}

ConstantScan ext_constant_scan(const QuadExt& ext, long bound) {
    const FieldSpec& spec = ext.spec;
    if (spec.group != ValueGroup::lex(2) || spec.field != CoeffField::RationalFunctions)
        fail(ErrorKind::Unsupported, "constant scan needs the two-layer tower over Q(x) with Z^2 lex exponents");
    const GroupElement mexp = ext.m.leading().exp;
    if (mexp.coords()[0].get_den() != 1 || mexp.coords()[0].get_num() % 2 == 0)
        fail(ErrorKind::Unsupported, "constant scan needs v_t(m) odd so that w has half-integer valuation");
    if (bound < 0)
        fail(ErrorKind::InvalidArgument, "scan bound must be nonnegative");

    const RatFunc c_t = spec.cmap.images()[0], c_s = spec.cmap.images()[1];
    const ValueGroup z = ValueGroup::integers();
    const FieldSpec inner(spec.field, z, AdditiveMap(z, spec.field, {c_s}));
    const Rational half_shift = mexp.coords()[0] / 2;

    ConstantScan out{bound, {}, {}, {}, 0, true, FgSubgroup::trivial(ValueGroup::frac(2)), {}};

    // Integer valuations: a = d s^k t^l with d^dagger = -c(l, k); the inner
    // solver looks for d s^k with dagger -l*c_t.
    for (long l = -bound; l <= bound; ++l) {
        DaggerSolution s = solve_dagger(inner, -(Rational(l) * c_t), bound);
        if (s.status != DaggerSolution::Status::Solution)
            continue;
        GroupElement exp(spec.group, {Rational(l), s.m.value()});
        HahnSeries a = HahnSeries::monomial(spec.group, s.d, exp);
        if (!is_constant(spec, a).constant)
            throw std::logic_error("integer-valuation constant failed the constancy test");
        out.integer_constants.push_back({l, a});
    }

    // Half-integer valuations: a constant a + b w needs b' = -w^dagger b, so
    // the leading coefficient b_l of b in t satisfies b_l^dagger =
    // -w^dagger - l*c_t inside Q(x)((s^Z)).
    for (Rational h = Rational(-bound) + Rational(1, 2); h < Rational(bound); h += 1) {
        Rational l = h - half_shift;
        RatFunc u = -ext.w_dagger - RatFunc(l) * c_t;
        DaggerSolution s = solve_dagger(inner, u, bound);
        if (s.status != DaggerSolution::Status::Unsat)
            out.no_half_constants = false;
        out.half_refutations.push_back({h, s});
    }

    // The same condition over all of Z^2 at once, and by direct residue checks.
    out.all_exponents = dagger_lattice(spec.field, -ext.w_dagger, {-c_t, -c_s});
    if (out.all_exponents.solvable)
        out.no_half_constants = false;
    for (long l = -bound; l <= bound; ++l)
        for (long k = -bound; k <= bound; ++k) {
            GroupElement g(spec.group, {Rational(l), Rational(k)});
            if (log_derivative_membership(spec.field, -ext.w_dagger - spec.cmap(g)).member)
                out.no_half_constants = false;
            ++out.membership_checks;
        }

    const ValueGroup half = ValueGroup::frac(2);
    std::vector<GroupElement> gens;
    for (const auto& [l, a] : out.integer_constants)
        gens.push_back(GroupElement(half, Rational(l)));
    out.constant_valuations = FgSubgroup(half, gens);
    out.purity = out.constant_valuations.is_pure();
    return out;
}

}  // namespace hahn
