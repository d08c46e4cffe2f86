#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dhensel_support.hpp"
#include "hahn/dhensel.hpp"
#include "hahn/error.hpp"

using namespace hahn;
using namespace testing_support;

namespace {

const CoeffField Q = CoeffField::Rationals;
const CoeffField Qx = CoeffField::RationalFunctions;
const RatFunc X = RatFunc::x();

HahnSeries mono(const RatFunc& c, long e) { return HahnSeries::monomial(Zg, c, gz(e)); }
HahnSeries cst(const RatFunc& c) { return HahnSeries::constant(Zg, c); }
DifferentialPolynomial K(const HahnSeries& c) { return dp_const(c); }
const DifferentialPolynomial Y = dp_var(0), Y1 = dp_var(1), Y2 = dp_var(2);

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("evaluation examples") {
    FieldSpec s1 = spec_z(Qx, 1);
    CHECK(dp_evaluate(s1, Y1 - Y, mono(1, 1)).is_exact_zero());
    CHECK(dp_evaluate(s1, Y * Y1, cst(1)).is_exact_zero());
    CHECK(dp_evaluate(s1, Y - K(cst(1)), cst(1) + mono(1, 1)) == mono(1, 1));
    FieldSpec s0 = spec_z(Qx, 0);
    CHECK(dp_evaluate(s0, Y2 + Y, cst(X * X)) == cst(X * X + 2));
}

TEST_CASE("reduction examples") {
    DifferentialPolynomial p = K(cst(1) + mono(1, 1)) * Y1 + K(cst(X)) * Y - K(mono(1, 1));
    CHECK(p.to_string() == "(1 + t)*Y' + x*Y - t");
    CHECK(p.order() == 1);
    CHECK(dp_reduce(p).to_string() == "Y' + x*Y");
    CHECK(dp_reduce(K(mono(1, 1)) * Y * Y + Y - K(cst(1))).to_string() == "Y - 1");
    CHECK(dp_reduce(K(mono(1, 1)) * Y1 * Y1 * Y1).to_string() == "0");
    CHECK(kind_of([] { dp_reduce(K(mono(1, -1)) * Y); }) == ErrorKind::NotInValuationRing);
}

TEST_CASE("printing") {
    CHECK((Y2 * Y + K(cst(-1)) * Y1 * Y1 + K(cst(3))).to_string() == "Y*Y'' - Y'^2 + 3");
    CHECK(monomial_name({0, 2, 1}) == "Y'^2*Y''");
    CHECK((K(cst(2 * X + 1)) * Y).to_string() == "(2*x + 1)*Y");
    CHECK(DifferentialPolynomial(Zg).to_string() == "0");
}

TEST_CASE("quasi-linearity examples") {
    CHECK(is_quasi_linear(K(mono(1, 1)) * Y * Y1 + Y - K(cst(1))));
    CHECK_FALSE(is_quasi_linear(Y * Y1 - K(cst(1))));
    CHECK_FALSE(is_quasi_linear(K(mono(1, 1)) * Y1 + K(mono(1, 1))));
}

TEST_CASE("lifting examples") {
    GroupElement ten = gz(10);
    LiftResult a = dhensel_lift(spec_z(Qx, 0), Y1 + Y - K(cst(1)) - K(mono(1, 1)), ten);
    CHECK(a.y == cst(1) + mono(1, 1));
    CHECK(a.exact_zero);
    REQUIRE(a.trace.size() == 2);
    CHECK(a.trace[1].gamma == gz(1));
    CHECK(a.trace[1].op.to_string() == "D + 1");

    LiftResult b = dhensel_lift(spec_z(Qx, 1), Y1 - K(mono(1, 1)), ten);
    CHECK(b.y == mono(1, 1));
    CHECK(b.exact_zero);

    // a nonlinear case with a residual that never vanishes exactly
    FieldSpec s = spec_z(Qx, 1);
    DifferentialPolynomial p = Y1 + Y - K(cst(1)) + K(mono(1, 1)) * Y * Y;
    LiftResult c = dhensel_lift(s, p, ten);
    CHECK(c.residual.value >= ten);
    CHECK(dp_evaluate(s, p, c.y).valuation().value >= ten);
}

TEST_CASE("linear surjectivity failure at step zero") {
    FieldSpec trivial = spec_z(Q, 0);
    try {
        dhensel_lift(trivial, Y1 - K(cst(1)), gz(10));
        FAIL("expected LinearSurjectivityError");
    } catch (const LinearSurjectivityError& e) {
        CHECK(e.kind() == ErrorKind::LinearSurjectivityFailure);
        CHECK(e.gamma().is_zero());
        CHECK(e.rhs() == RatFunc(1));
        CHECK(e.op().order() == 1);
    }
    // over Q(x): z' = 1/x has no rational solution
    CHECK(kind_of([] { dhensel_lift(spec_z(Qx, 0), Y1 - K(cst(RatFunc(1) / X)), gz(3)); }) ==
          ErrorKind::LinearSurjectivityFailure);
}

TEST_CASE("lifting preconditions") {
    CHECK(kind_of([] { dhensel_lift(spec_z(Qx, 0), Y * Y1 - K(cst(1)), gz(3)); }) == ErrorKind::NotQuasiLinear);
    CHECK(kind_of([] { dhensel_lift(spec_z(Qx, 0), Y - K(cst(1)), gz(0)); }) == ErrorKind::InvalidArgument);
    ValueGroup z2 = ValueGroup::lex(2);
    FieldSpec lex(Qx, z2, AdditiveMap::zero(z2, Qx));
    DifferentialPolynomial p = DifferentialPolynomial::variable(z2, 0) -
                               DifferentialPolynomial::constant(HahnSeries::constant(z2, 1));
    CHECK(kind_of([&] { dhensel_lift(lex, p, GroupElement::unit(z2)); }) == ErrorKind::Unsupported);
    CHECK(kind_of([] { dhensel_lift(spec_z(Qx, 0), Y + K(mono(1, 1)) * Y - K(cst(1)), gz(20), 3); }) ==
          ErrorKind::IterationLimit);
    // a truncated coefficient caps what can be certified
    CHECK(kind_of([] {
              dhensel_lift(spec_z(Qx, 0), Y - K(cst(1) + HahnSeries::big_o(Zg, gz(3))), gz(5));
          }) == ErrorKind::NeedsPrecision);
}

TEST_CASE("lifting over (1/2)Z and Q") {
    ValueGroup half = ValueGroup::frac(2);
    FieldSpec s(Qx, half, AdditiveMap(half, Qx, {1}));
    auto m = [&](long k) { return HahnSeries::monomial(half, 1, GroupElement(half, Rational(k, 2))); };
    DifferentialPolynomial p = DifferentialPolynomial::variable(half, 1) - DifferentialPolynomial::constant(m(1));
    LiftResult r = dhensel_lift(s, p, GroupElement(half, 4));
    CHECK(r.exact_zero);
    CHECK(r.y == m(1));

    ValueGroup q = ValueGroup::rationals();
    FieldSpec sq(Qx, q, AdditiveMap(q, Qx, {1}));
    HahnSeries g = HahnSeries::monomial(q, 1, GroupElement(q, Rational(1, 3))) +
                   HahnSeries::monomial(q, X, GroupElement(q, Rational(2, 5)));
    DifferentialPolynomial pq =
        DifferentialPolynomial::variable(q, 0) + DifferentialPolynomial::constant(g) *
                                                     DifferentialPolynomial::variable(q, 0) *
                                                     DifferentialPolynomial::variable(q, 1) -
        DifferentialPolynomial::constant(g);
    LiftResult rq = dhensel_lift(sq, pq, GroupElement(q, 2));
    CHECK(dp_evaluate(sq, pq, rq.y).valuation().value >= GroupElement(q, 2));
}

TEST_CASE("random quasi-linear lifting: soundness and progress") {
    std::mt19937 rng(2024);
    const GroupElement bound = gz(10);
    for (int i = 0; i < 100; ++i) {
        QuasiLinearCase qc = random_quasi_linear(rng, i % 3);
        CAPTURE(qc.p.to_string());
        REQUIRE(is_quasi_linear(qc.p));
        LiftResult r = dhensel_lift(qc.spec, qc.p, bound);
        HahnSeries check = dp_evaluate(qc.spec, qc.p, r.y);
        CHECK((check.is_exact_zero() || check.valuation().value >= bound));
        for (std::size_t k = 1; k < r.trace.size(); ++k) {
            const Valuation& prev = r.trace[k - 1].residual;
            const Valuation& cur = r.trace[k].residual;
            REQUIRE(prev.finite());
            CHECK((cur.kind == Valuation::Kind::PlusInfinity || cur.value > prev.value));
            CHECK(r.trace[k].gamma == prev.value);
        }
        CHECK(residue(r.y).is_polynomial());
    }
}

TEST_CASE("linear family matches the undetermined-coefficients oracle") {
    std::mt19937 rng(77);
    const GroupElement bound = gz(10);
    for (int i = 0; i < 50; ++i) {
        const int c_kind = i % 3;
        FieldSpec spec = spec_z(Qx, c_image(c_kind));
        std::vector<RatFunc> a = residue_operator(rng, c_kind);
        HahnSeries g = small_series(rng, 0, 12, 5);
        DifferentialPolynomial p = -K(g);
        for (std::size_t k = 0; k < a.size(); ++k)
            p = p + K(cst(a[k])) * dp_var(static_cast<int>(k));
        LiftResult r = dhensel_lift(spec, p, bound);
        for (long e = 0; e < 10; ++e) {
            RatFunc ge = g.coeff(gz(e));
            auto expect = oracle_solve(a, spec.cmap(gz(e)), ge);
            REQUIRE(expect);
            CHECK(r.y.coeff(gz(e)) == *expect);
        }
        for (const auto& t : r.y.terms())
            CHECK(t.exp < bound);
    }
}

TEST_CASE("n-th root examples") {
    FieldSpec s = spec_z(Qx, 0);
    HahnSeries y = hensel_nth_root(s, cst(1) + mono(1, 1), 2, gz(4));
    CHECK(y.to_string() == "1 + 1/2*t - 1/8*t^2 + 1/16*t^3 + O(t^4)");
    CHECK(hensel_nth_root(s, cst(4), 2, gz(4)) == cst(2));
    CHECK(kind_of([&] { hensel_nth_root(s, cst(X) * (cst(1) + mono(1, 1)), 2, gz(4)); }) ==
          ErrorKind::NoRootInResidue);
    CHECK(kind_of([&] { hensel_nth_root(s, mono(1, 1), 2, gz(4)); }) == ErrorKind::InvalidArgument);
    CHECK(hensel_nth_root(s, cst(X * X) * (cst(1) + mono(2, 1)) * (cst(1) + mono(2, 1)), 2, gz(6)) ==
          cst(X) + mono(2 * X, 1));
}

TEST_CASE("n-th root matches the binomial series") {
    FieldSpec s = spec_z(Qx, 0);
    for (unsigned long n : {2UL, 3UL, 5UL}) {
        for (long c : {1L, -2L, 3L}) {
            for (long bound : {1L, 5L, 16L}) {
                HahnSeries y = hensel_nth_root(s, cst(1) + mono(RatFunc(Rational(c)), 1), n, gz(bound));
                // binom(1/n, k) c^k
                Rational coeff = 1, alpha(1, n);
                alpha.canonicalize();
                for (long k = 0; k < bound; ++k) {
                    CHECK(y.coeff(gz(k)) == RatFunc(coeff));
                    coeff = coeff * (alpha - k) / (k + 1) * c;
                }
                CHECK(*y.truncation() == gz(bound));
            }
        }
    }
}

TEST_CASE("purity witness examples") {
    FieldSpec trivial = spec_z(Q, 0);
    PurityWitness a = purity_witness(trivial, mono(1, 1), mono(4, 2), 2, gz(6));
    CHECK(a.w == mono(2, 1));
    CHECK(a.constant.constant);
    CHECK(a.valuation == gz(1));

    FieldSpec s0 = spec_z(Qx, 0);
    PurityWitness b = purity_witness(s0, mono(X, 1), mono(1, 2), 2, gz(6));
    CHECK(b.w == mono(1, 1));
    CHECK(kind_of([&] { purity_witness(s0, mono(1, 1), mono(X, 2), 2, gz(6)); }) == ErrorKind::NoRootInResidue);

    // c(1) = 1/x: m = t/x is constant, b = m^2 + m^3
    FieldSpec s = spec_z(Qx, RatFunc(1) / X);
    HahnSeries m = mono(RatFunc(1) / X, 1);
    PurityWitness c = purity_witness(s, m, power(m, 2) + power(m, 3), 2, gz(8));
    CHECK(c.constant.constant);
    CHECK(c.valuation == gz(1));
    CHECK(c.w.valuation().value == gz(1));
    CHECK(agrees(power(c.w, 2), power(m, 2) + power(m, 3)));

    CHECK(kind_of([&] { purity_witness(spec_z(Qx, 1), mono(1, 1), mono(1, 2), 2, gz(6)); }) ==
          ErrorKind::NotConstant);
    CHECK(kind_of([&] { purity_witness(s0, mono(1, 1), mono(1, 3), 2, gz(6)); }) == ErrorKind::InvalidArgument);
}
