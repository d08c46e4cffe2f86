// One PASS/FAIL line per acceptance criterion, with its time limit.

#include "dhensel_support.hpp"
#include "golden_support.hpp"
#include "hahn/cmap.hpp"
#include "hahn/examples.hpp"
#include "hahn/quad_ext.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>

using namespace hahn;
using namespace testing_support;

namespace {

const CoeffField Q = CoeffField::Rationals;
const CoeffField Qx = CoeffField::RationalFunctions;
const RatFunc X = RatFunc::x();

HahnSeries mono(const RatFunc& c, long e) { return HahnSeries::monomial(Zg, c, gz(e)); }
HahnSeries cst(const RatFunc& c) { return HahnSeries::constant(Zg, c); }

// Counts checks; keeps the first failure for the report line.
struct Checker {
    long checks = 0;
    long failures = 0;
    std::string first;

    void operator()(bool ok, const std::string& what) {
        ++checks;
        if (!ok && failures++ == 0)
            first = what;
    }
    template <class F>
    void no_throw(F&& f, const std::string& what) {
        try {
            f();
        } catch (const std::exception& e) {
            (*this)(false, what + ": " + e.what());
        }
    }
};

bool at_least(const Valuation& v, const GroupElement& bound) {
    return v.kind == Valuation::Kind::PlusInfinity || !(v.value < bound);
}

std::vector<FieldSpec> c_catalog() {
    return {spec_z(Qx, 0), spec_z(Qx, 1), spec_z(Qx, X), spec_z(Qx, RatFunc(1) / X)};
}

void derivation_laws(Checker& check) {
    std::mt19937 rng(101);
    auto specs = c_catalog();
    specs.push_back(spec_z(Q, 1));
    for (int i = 0; i < 500; ++i) {
        const FieldSpec& s = specs[i % specs.size()];
        HahnSeries f = random_series(rng, Zg, s.field, 3, -3, 3), g = random_series(rng, Zg, s.field, 3, -3, 3);
        check(derive_series(s, f * g) == derive_series(s, f) * g + f * derive_series(s, g), "Leibniz " + f.to_string());
    }
    std::uniform_int_distribution<int> e(-60, 60);
    for (int i = 0; i < 100; ++i) {
        const FieldSpec& s = specs[i % specs.size()];
        GroupElement gamma = gz(e(rng));
        HahnSeries m = HahnSeries::monomial(Zg, 1, gamma);
        check(derive_series(s, m) == s.cmap(gamma) * m, "monomial derivative at " + gamma.to_string());
    }
    const ValueGroup z2 = ValueGroup::lex(2), half = ValueGroup::frac(2);
    AdditiveMap c2(z2, Qx, {X + 1, RatFunc(1) / X}), ch(half, Qx, {X * X});
    for (int i = 0; i < 200; ++i) {
        GroupElement a(z2, {Rational(e(rng)), Rational(e(rng))}), b(z2, {Rational(e(rng)), Rational(e(rng))});
        check(c2(a + b) == c2(a) + c2(b), "additivity on Z^2");
        GroupElement ha(half, Rational(e(rng), 2)), hb(half, Rational(e(rng), 2));
        check(ch(ha + hb) == ch(ha) + ch(hb), "additivity on (1/2)Z");
    }
}

void monotonicity(Checker& check) {
    std::mt19937 rng(103);
    auto specs = c_catalog();
    for (int i = 0; i < 500; ++i) {
        const FieldSpec& s = specs[i % specs.size()];
        HahnSeries f = random_series(rng, Zg, s.field, 4, -4, 4, i % 2 == 0);
        Valuation vf = f.valuation(), vd = derive_series(s, f).valuation();
        if (vd.kind == Valuation::Kind::PlusInfinity)
            continue;
        check(!(vd.value < vf.value), "v(f') >= v(f) for " + f.to_string());
        if (vf.value.sign() > 0)
            check(vd.value.sign() > 0, "smallness for " + f.to_string());
    }
}

void cross_section_axioms(Checker& check) {
    std::mt19937 rng(107);
    std::uniform_int_distribution<int> e(-40, 40);
    auto specs = c_catalog();
    for (int i = 0; i < 100; ++i) {
        const FieldSpec& s = specs[i % specs.size()];
        GroupElement g = gz(e(rng)), d = gz(e(rng));
        HahnSeries sg = cross_section(s, g);
        check(cross_section(s, g + d) == sg * cross_section(s, d), "s(g + d) = s(g) s(d)");
        check(dagger_series(s, sg) == cst(s.cmap(g)), "s(g)-dagger = c(g)");
        check(sg.valuation().value == g, "v(s(g)) = g");
    }
}

void separation(Checker& check) {
    DaggerSolution one = solve_dagger(spec_z(Qx, 1), 1, 20);
    check(one.status == DaggerSolution::Status::Solution && one.a && *one.a == mono(1, 1), "c(1) = 1 gives a = t");
    if (one.a)
        check(derive_series(spec_z(Qx, 1), *one.a) == *one.a, "a' = a");
    DaggerSolution x = solve_dagger(spec_z(Qx, X), 1, 20);
    check(x.status == DaggerSolution::Status::Unsat && !x.certificate.empty(), "c(1) = x gives a certified Unsat");
}

bool in_dagger(CoeffField field, const RatFunc& g) {
    return field == Q ? g.is_zero() : log_derivative_membership(field, g).member;
}

void constants_catalog_facts(Checker& check) {
    auto catalog = constants_catalog();
    check(catalog.size() >= 6, "catalog has at least 6 instances");
    bool saw_zero = false, saw_one = false, saw_inv_x = false, saw_z2_kernel = false;
    for (const auto& e : catalog) {
        ConstantsClassification cl = classify_constants(e.c);
        const ValueGroup& g = e.c.domain();
        check(cl.verdict == e.expected, e.name + ": verdict");
        check(cl.kernel.subset_of(cl.delta), e.name + ": ker(c) <= Delta_C");
        check(!cl.meet.meets == cl.kernel.same_as(cl.delta), e.name + ": meet biconditional");
        check((cl.injective && !cl.meet.meets) == (cl.verdict == ConstantsVerdict::FewConstants),
              e.name + ": few-constants biconditional");
        // brute-force Delta_C and ker(c) over a box
        std::vector<GroupElement> box;
        if (g.kind() == GroupKind::LexTuples) {
            for (int a = -4; a <= 4; ++a)
                for (int b = -4; b <= 4; ++b)
                    box.push_back(GroupElement(g, {Rational(a), Rational(b)}));
        } else {
            const long d = g.denominator();
            for (long k = -10 * d; k <= 10 * d; ++k) {
                Rational q(k, d);
                q.canonicalize();
                box.push_back(GroupElement(g, q));
            }
        }
        for (const auto& gamma : box) {
            check(cl.delta.contains(gamma) == in_dagger(e.c.field(), -e.c(gamma)), e.name + ": Delta_C at " + gamma.to_string());
            check(cl.kernel.contains(gamma) == e.c(gamma).is_zero(), e.name + ": ker(c) at " + gamma.to_string());
        }
        FieldSpec spec(e.c.field(), g, e.c);
        for (const auto& w : cl.witnesses)
            check(is_constant(spec, HahnSeries::monomial(g, w.coeff, w.gamma)).constant, e.name + ": witness constant");

        const bool rank_one = g.kind() == GroupKind::Integers;
        if (rank_one && e.c.field() == Qx && e.c.images()[0].is_zero())
            saw_zero = cl.verdict == ConstantsVerdict::ManyConstants;
        if (rank_one && e.c.images()[0] == RatFunc(1))
            saw_one = saw_one || cl.verdict == ConstantsVerdict::FewConstants;
        if (rank_one && e.c.images()[0] == RatFunc(1) / X) {
            bool witness = false;
            for (const auto& w : cl.witnesses)
                witness = witness || HahnSeries::monomial(g, w.coeff, w.gamma) == mono(RatFunc(1) / X, 1);
            saw_inv_x = cl.verdict == ConstantsVerdict::ManyConstants && witness;
        }
        if (g.kind() == GroupKind::LexTuples && !cl.kernel.is_trivial())
            saw_z2_kernel = true;
    }
    check(saw_zero, "c = 0 gives many constants");
    check(saw_one, "c(1) = 1 gives few constants");
    check(saw_inv_x, "c(1) = 1/x gives many constants with witness (1/x)t");
    check(saw_z2_kernel, "a Z^2 instance with nontrivial kernel");
}

void dhensel_engine(Checker& check) {
    std::mt19937 rng(2024);
    const GroupElement bound = gz(10);
    for (int i = 0; i < 100; ++i) {
        QuasiLinearCase qc = random_quasi_linear(rng, i % 3);
        check.no_throw([&] {
            LiftResult r = dhensel_lift(qc.spec, qc.p, bound);
            check(at_least(dp_evaluate(qc.spec, qc.p, r.y).valuation(), bound), "v(P(y)) >= 10 for " + qc.p.to_string());
            bool increasing = true;
            for (std::size_t k = 1; k < r.trace.size(); ++k) {
                const Valuation &prev = r.trace[k - 1].residual, &cur = r.trace[k].residual;
                increasing = increasing && prev.finite() &&
                             (cur.kind == Valuation::Kind::PlusInfinity || prev.value < cur.value);
            }
            check(increasing, "strictly increasing trace for " + qc.p.to_string());
        }, "lift " + qc.p.to_string());
    }
    std::mt19937 lin(77);
    for (int i = 0; i < 50; ++i) {
        const int c_kind = i % 3;
        FieldSpec spec = spec_z(Qx, c_image(c_kind));
        std::vector<RatFunc> a = residue_operator(lin, c_kind);
        HahnSeries g = small_series(lin, 0, 12, 5);
        DifferentialPolynomial p = -dp_const(g);
        for (std::size_t k = 0; k < a.size(); ++k)
            p = p + dp_const(cst(a[k])) * dp_var(static_cast<int>(k));
        check.no_throw([&] {
            LiftResult r = dhensel_lift(spec, p, bound);
            for (long e = 0; e < 10; ++e) {
                auto expect = oracle_solve(a, spec.cmap(gz(e)), g.coeff(gz(e)));
                check(expect && r.y.coeff(gz(e)) == *expect, "oracle coefficient t^" + std::to_string(e) + " of " + p.to_string());
            }
        }, "linear lift " + p.to_string());
    }
}

void surjectivity_failure(Checker& check) {
    try {
        dhensel_lift(spec_z(Q, 0), dp_var(1) - dp_const(cst(1)), gz(10));
        check(false, "no error raised");
    } catch (const LinearSurjectivityError& e) {
        check(e.kind() == ErrorKind::LinearSurjectivityFailure, "error kind");
        check(e.gamma().is_zero(), "raised at step 0");
    }
}

void roots_and_purity(Checker& check) {
    FieldSpec s = spec_z(Qx, 0);
    HahnSeries y = hensel_nth_root(s, cst(1) + mono(1, 1), 2, gz(16));
    Rational coeff = 1, half(1, 2);
    for (long k = 0; k < 16; ++k) {
        check(y.coeff(gz(k)) == RatFunc(coeff), "binomial coefficient of t^" + std::to_string(k));
        coeff = coeff * (half - k) / (k + 1);
    }
    check(y.truncation() && *y.truncation() == gz(16), "root known below t^16");

    struct Case {
        FieldSpec spec;
        HahnSeries a, b;
    };
    const HahnSeries m = mono(RatFunc(1) / X, 1);
    std::vector<Case> ok{{spec_z(Q, 0), mono(1, 1), mono(4, 2)},
                         {spec_z(Qx, 0), mono(X, 1), mono(1, 2)},
                         {spec_z(Qx, RatFunc(1) / X), m, power(m, 2) + power(m, 3)}};
    for (const auto& c : ok) {
        check.no_throw([&] {
            PurityWitness w = purity_witness(c.spec, c.a, c.b, 2, gz(8));
            check(w.constant.constant, "witness is constant for b = " + c.b.to_string());
            check(w.w.valuation().value == c.a.valuation().value, "v(a y) = v(a) for b = " + c.b.to_string());
            check(agrees(power(w.w, 2), c.b), "w^2 = b for b = " + c.b.to_string());
        }, "purity b = " + c.b.to_string());
    }
    try {
        purity_witness(spec_z(Qx, 0), mono(1, 1), mono(X, 2), 2, gz(8));
        check(false, "NoRootInResidue not raised");
    } catch (const Error& e) {
        check(e.kind() == ErrorKind::NoRootInResidue, "residue x is not a square");
    }
}

void non_purity(Checker& check) {
    ConstantScan scan = ext_constant_scan(tower_extension(), 6);
    check(scan.no_half_constants, "no constants at half-integer valuations");
    check(!scan.all_exponents.solvable, "lattice of exponents is empty");
    for (const auto& h : scan.half_refutations)
        check(h.inner.status == DaggerSolution::Status::Unsat, "half-integer refutation certified");
    std::set<long> found;
    for (const auto& [l, a] : scan.integer_constants)
        found.insert(l);
    check(found.size() == 13 && *found.begin() == -6 && *found.rbegin() == 6, "integer constants at every l in [-6, 6]");
    const ValueGroup half = ValueGroup::frac(2);
    check(scan.constant_valuations.same_as(FgSubgroup(half, {GroupElement(half, 1)})), "v(C^x) = Z");
    const auto& w = scan.purity.witness;
    check(!scan.purity.pure && w && w->first.value() == Rational(1, 2) && w->second == 2, "not pure, witness (1/2, 2)");
}

void good_subfields(Checker& check) {
    std::mt19937 rng(109);
    std::uniform_int_distribution<int> gamma_d(-5, 5), deg(0, 5), pick(0, 2);
    for (int i = 0; i < 100; ++i) {
        int gamma = 0;
        while (gamma == 0)
            gamma = gamma_d(rng);
        HahnSeries sum(Zg);
        std::optional<long> expect;
        const int n = deg(rng);
        for (int k = 0; k <= n; ++k) {
            if (pick(rng) == 0 && !(k == n && !expect))
                continue;
            RatFunc q;
            while (q.is_zero())
                q = random_coeff(rng, Qx);
            sum += mono(q, static_cast<long>(k) * gamma);
            long e = static_cast<long>(k) * gamma;
            expect = expect ? std::min(*expect, e) : e;
        }
        check(sum.valuation().value == gz(*expect), "v(sum) for " + sum.to_string());
    }
}

void cli_goldens(Checker& check) {
    auto cases = golden_cases();
    check(cases.size() >= 20, "at least 20 golden invocations");
    const std::set<std::string> commands{"eval", "derive", "dagger", "valuation", "residue", "constant?",
                                         "solve-linear", "solve-dagger", "lift", "nth-root", "kernel",
                                         "classify", "purity", "examples"};
    std::set<std::string> covered;
    for (const auto& c : cases) {
        for (const auto& a : c.args)
            if (commands.count(a))
                covered.insert(a);
        auto r = run_golden(c);
        check(r.exit == c.exit, c.name + ": exit code");
        check(r.actual_text == r.expected_text, c.name + ": byte-identical json");
    }
    check(covered == commands, "every command covered");
}

struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds, 0 = none stated
    std::function<void(Checker&)> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "derivation laws (Leibniz 500, monomials 100, additivity 200)", 5, derivation_laws},
        {2, "monotonicity and smallness (500 series, c in {0, 1, x, 1/x})", 5, monotonicity},
        {3, "cross-section axioms (100 pairs)", 0, cross_section_axioms},
        {4, "separation: a-dagger = 1 under c(1) = 1 and c(1) = x", 1, separation},
        {5, "constants catalog: Delta_C, ker(c), biconditionals", 10, constants_catalog_facts},
        {6, "d-Hensel lifting (100 random, 50 against oracle)", 60, dhensel_engine},
        {7, "linear surjectivity failure at step 0", 0, surjectivity_failure},
        {8, "n-th root through t^15 and purity witnesses", 5, roots_and_purity},
        {9, "non-purity of constant valuations (bound 6)", 10, non_purity},
        {10, "valuation of polynomials in a monomial (100)", 0, good_subfields},
        {11, "CLI golden corpus", 10, cli_goldens},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Checker check;
        auto start = std::chrono::steady_clock::now();
        check.no_throw([&] { c.body(check); }, "uncaught");
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = c.limit == 0 || secs < c.limit;
        bool pass = check.failures == 0 && in_time;
        failed += !pass;
        char limit[32] = "no limit";
        if (c.limit > 0)
            std::snprintf(limit, sizeof limit, "< %g s", c.limit);
        std::printf("[%s] %2d %s: %ld/%ld exact checks, %.3f s (%s)", pass ? "PASS" : "FAIL", c.id, c.name,
                    check.checks - check.failures, check.checks, secs, limit);
        if (check.failures)
            std::printf(" first failure: %s", check.first.c_str());
        if (!in_time)
            std::printf(" time limit exceeded");
        std::printf("\n");
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
