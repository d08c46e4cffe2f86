#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hahn/coeff_field.hpp"
#include "hahn/error.hpp"
#include "support.hpp"

using namespace hahn;
using namespace testing_support;

namespace {

const CoeffField Q = CoeffField::Rationals;
const CoeffField Qx = CoeffField::RationalFunctions;
const RatFunc X = RatFunc::x();

LinearDiffOperator op(std::vector<RatFunc> c) { return LinearDiffOperator(std::move(c)); }

// Direct expansion of ((D + c0)^i)(z) by iterating z -> z' + c0 z.
RatFunc twisted_power(const RatFunc& z, const RatFunc& c0, int i) {
    RatFunc v = z;
    for (int k = 0; k < i; ++k)
        v = v.derivative() + c0 * v;
    return v;
}

}  // namespace

TEST_CASE("canonical form") {
    RatFunc f(Poly::x() * Poly::x() - 1, 2 * Poly::x() - 2);
    CHECK(f == RatFunc(Poly::x() + 1) * RatFunc(Rational(1, 2)));
    CHECK(f.den() == Poly(1));
    CHECK(RatFunc(1, 2 * Poly::x()).to_string() == "(1/2)/x");
    CHECK(RatFunc(Poly::x() * 2 + 1, Poly::x() * Poly::x() + Poly::x()).to_string() == "(2*x + 1)/(x^2 + x)");
    CHECK_THROWS_AS(RatFunc(1, 0), Error);
}

TEST_CASE("derive and dagger examples") {
    CHECK(derive(Q, RatFunc(Rational(7, 3))).is_zero());
    CHECK(derive(Qx, X * X) == 2 * X);
    CHECK(derive(Qx, X.inverse()) == RatFunc(-1) / (X * X));
    CHECK(dagger(Qx, X * X) == RatFunc(2) / X);
    CHECK(dagger(Qx, X * (X + 1)) == (2 * X + 1) / (X * X + X));
    CHECK(dagger(Q, RatFunc(5)).is_zero());
    CHECK_THROWS_AS(dagger(Qx, RatFunc()), Error);
}

TEST_CASE("Leibniz and dagger morphism on random pairs") {
    std::mt19937 rng(1);
    for (int i = 0; i < 500; ++i) {
        RatFunc f = random_ratfunc(rng), g = random_ratfunc(rng);
        CHECK(derive(Qx, f * g) == derive(Qx, f) * g + f * derive(Qx, g));
        RatFunc a = random_nonzero_ratfunc(rng), b = random_nonzero_ratfunc(rng);
        CHECK(dagger(Qx, a * b) == dagger(Qx, a) + dagger(Qx, b));
    }
}

TEST_CASE("apply_operator examples") {
    CHECK(apply_operator(Qx, LinearDiffOperator::derivation(), X) == RatFunc(1));
    CHECK(apply_operator(Qx, op({X.inverse(), 1}), X.inverse()).is_zero());
    CHECK(apply_operator(Q, op({2}), RatFunc(3)) == RatFunc(6));
}

TEST_CASE("twist_operator examples") {
    CHECK(twist_operator(Qx, LinearDiffOperator::derivation(), 1) == op({1, 1}));
    CHECK(twist_operator(Qx, op({0, 0, 1}), 1) == op({1, 2, 1}));
    CHECK(twist_operator(Qx, LinearDiffOperator::derivation(), 0) == LinearDiffOperator::derivation());
    CHECK(op({1, 2, 1}).to_string() == "D^2 + 2*D + 1");
}

TEST_CASE("twist_operator agrees with direct expansion") {
    std::mt19937 rng(2);
    for (int i = 0; i < 100; ++i) {
        std::uniform_int_distribution<int> ord(0, 3);
        std::vector<RatFunc> c(ord(rng) + 1);
        for (auto& a : c)
            a = random_ratfunc(rng, 1, 3);
        LinearDiffOperator a(c);
        RatFunc c0 = random_ratfunc(rng, 1, 3), z = random_ratfunc(rng, 2, 3);
        RatFunc direct;
        for (std::size_t k = 0; k < c.size(); ++k)
            direct += c[k] * twisted_power(z, c0, static_cast<int>(k));
        CHECK(apply_operator(Qx, twist_operator(Qx, a, c0), z) == direct);
    }
}

TEST_CASE("solve_linear examples") {
    auto s1 = solve_linear(Qx, op({-1, 1}), X);
    REQUIRE(s1.particular);
    CHECK(*s1.particular == -X - 1);
    CHECK(s1.kernel.empty());

    auto s2 = solve_linear(Qx, LinearDiffOperator::derivation(), 0);
    REQUIRE(s2.particular);
    CHECK(s2.particular->is_zero());
    REQUIRE(s2.kernel.size() == 1);
    CHECK(s2.kernel[0].is_constant());

    auto s3 = solve_linear(Q, LinearDiffOperator::derivation(), 1);
    CHECK(!s3.particular);
    REQUIRE(s3.kernel.size() == 1);
    CHECK(s3.kernel[0] == RatFunc(1));

    CHECK_THROWS_AS(solve_linear(Qx, LinearDiffOperator(), 1), Error);

    // x y' - 2 y = 0 has kernel x^2; y' + y/x = 0 has kernel 1/x
    auto s4 = solve_linear(Qx, op({-2, X}), 0);
    REQUIRE(s4.kernel.size() == 1);
    CHECK(dagger(Qx, s4.kernel[0]) == RatFunc(2) / X);
    auto s5 = solve_linear(Qx, op({X.inverse(), 1}), 0);
    REQUIRE(s5.kernel.size() == 1);
    CHECK(dagger(Qx, s5.kernel[0]) == RatFunc(-1) / X);
}

TEST_CASE("y' - y has no rational kernel up to degree 20") {
    // oracle: y = N/x^k with deg N <= 20; x^(k+1) (y' - y) = x N' - k N - x N
    for (int k = 0; k <= 3; ++k) {
        const int n = 21;
        std::vector<std::vector<Rational>> a(n + 1, std::vector<Rational>(n));
        for (int j = 0; j < n; ++j) {
            a[j][j] += j - k;
            a[j + 1][j] -= 1;
        }
        CHECK(gauss_rank(a) == n);
    }
    CHECK(solve_linear(Qx, op({-1, 1}), 0).kernel.empty());
}

TEST_CASE("solve_linear soundness and completeness on random operators") {
    std::mt19937 rng(3);
    int with_solution = 0, without = 0;
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<int> ord(1, 2), coin(0, 1);
        std::vector<Poly> coeffs(ord(rng) + 1);
        for (auto& c : coeffs)
            c = random_poly(rng, 2, 3);
        coeffs.back() = random_nonzero_poly(rng, 2, 3);
        LinearDiffOperator a(std::vector<RatFunc>(coeffs.begin(), coeffs.end()));
        RatFunc b = coin(rng) ? apply_operator(Qx, a, random_ratfunc(rng, 2, 3)) : random_ratfunc(rng, 2, 3);
        LinearSolution s = solve_linear(Qx, a, b);
        for (const auto& k : s.kernel)
            CHECK(apply_operator(Qx, a, k).is_zero());
        if (s.particular) {
            ++with_solution;
            CHECK(apply_operator(Qx, a, *s.particular) == b);
            continue;
        }
        ++without;
        // brute force: y = N / Dk with Dk = (squarefree singular part)^e, deg N <= 12
        Poly sing = coeffs.back() * b.den();
        Poly sqf(1);
        for (const auto& [p, e] : squarefree_decomposition(sing))
            sqf = sqf * p;
        for (int e = 0; e <= 3; ++e) {
            Poly den = pow(sqf, e);
            const int n = 13;
            std::vector<RatFunc> images;
            Poly w = b.den();
            for (int j = 0; j < n; ++j) {
                images.push_back(apply_operator(Qx, a, RatFunc(Poly::monomial(1, j), den)));
                w = w * images.back().den() / gcd(w, images.back().den());
            }
            std::vector<Poly> cols;
            int rows = 0;
            for (auto& im : images) {
                cols.push_back(im.num() * (w / im.den()));
                rows = std::max(rows, cols.back().degree() + 1);
            }
            Poly t = b.num() * (w / b.den());
            rows = std::max(rows, t.degree() + 1);
            std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(n));
            std::vector<Rational> rhs(rows);
            for (int j = 0; j < n; ++j)
                for (int i = 0; i <= cols[j].degree(); ++i)
                    m[i][j] = cols[j].coeff(i);
            for (int i = 0; i <= t.degree(); ++i)
                rhs[i] = t.coeff(i);
            CHECK_FALSE(gauss_solvable(m, rhs));
        }
    }
    CHECK(with_solution > 10);
    CHECK(without > 5);
}

TEST_CASE("log_derivative_membership examples") {
    auto m1 = log_derivative_membership(Qx, X.inverse());
    CHECK(m1.member);
    CHECK(m1.witness == X);

    auto m2 = log_derivative_membership(Qx, RatFunc(1) / (2 * X));
    CHECK_FALSE(m2.member);
    CHECK(m2.reason == DaggerReason::NonIntegerResidue);
    CHECK(m2.residue == RatFunc(Rational(1, 2)));
    CHECK(m2.at == Poly::x());

    auto m3 = log_derivative_membership(Qx, 1);
    CHECK_FALSE(m3.member);
    CHECK(m3.reason == DaggerReason::PolynomialPart);

    CHECK(log_derivative_membership(Qx, 0).member);
    CHECK(log_derivative_membership(Qx, RatFunc(1) / (X * X)).reason == DaggerReason::NonSimplePole);
    // 1/(x^2+1) has residues -i/2, i/2 at the conjugate roots
    CHECK(log_derivative_membership(Qx, RatFunc(1) / (X * X + 1)).reason == DaggerReason::NonRationalResidue);
}

TEST_CASE("1/(2x) is not a logarithmic derivative of small products") {
    // oracle: all f = prod p^n with p in a fixed list of small irreducibles
    Poly x = Poly::x();
    std::vector<Poly> ps = {x, x + 1, x * x + 1, x * x * x - 2};
    RatFunc target = RatFunc(1) / (2 * X);
    std::vector<int> n(ps.size(), -4);
    int checked = 0;
    while (true) {
        RatFunc d;
        for (std::size_t i = 0; i < ps.size(); ++i)
            d += RatFunc(n[i]) * dagger(Qx, ps[i]);
        CHECK(d != target);
        ++checked;
        std::size_t k = 0;
        while (k < n.size() && n[k] == 4)
            n[k++] = -4;
        if (k == n.size())
            break;
        ++n[k];
    }
    CHECK(checked == 6561);
}

TEST_CASE("log_derivative_membership on random sums of daggers") {
    std::mt19937 rng(4);
    std::uniform_int_distribution<int> e(-3, 3), count(1, 3);
    for (int trial = 0; trial < 200; ++trial) {
        RatFunc g, f(1);
        int k = count(rng);
        for (int i = 0; i < k; ++i) {
            Poly p = random_nonzero_poly(rng, 2, 4);
            if (p.degree() < 1)
                continue;
            int n = e(rng);
            g += RatFunc(n) * dagger(Qx, p);
            f *= pow(RatFunc(p), n);
        }
        auto cert = log_derivative_membership(Qx, g);
        REQUIRE(cert.member);
        CHECK(dagger(Qx, cert.witness) == g);
        // witness agrees with f up to a constant factor
        CHECK((cert.witness / f).is_constant());
    }
}

TEST_CASE("nonzero rationals are never logarithmic derivatives") {
    std::mt19937 rng(5);
    for (int i = 0; i < 50; ++i) {
        Rational q = random_rational(rng, 20, 7);
        if (q == 0)
            q = 1;
        CHECK_FALSE(log_derivative_membership(Qx, q).member);
        CHECK_FALSE(log_derivative_membership(Q, q).member);
    }
}

TEST_CASE("dagger_saturation") {
    auto s = dagger_saturation(Qx, RatFunc(1) / (2 * X));
    REQUIRE(s);
    CHECK(*s == 2);
    CHECK(log_derivative_membership(Qx, RatFunc(2) / (2 * X)).member);
    CHECK(*dagger_saturation(Qx, X.inverse()) == 1);
    CHECK_FALSE(dagger_saturation(Qx, X));
    CHECK(*dagger_saturation(Qx, RatFunc(1) / (3 * X) + RatFunc(1) / (2 * (X + 1))) == 6);
}

TEST_CASE("nth_root_coeff") {
    CHECK(*nth_root_coeff(Q, 4, 2) == RatFunc(2));
    CHECK(*nth_root_coeff(Qx, RatFunc(1) / (X * X), 2) == X.inverse());
    CHECK_FALSE(nth_root_coeff(Qx, X, 2));
    CHECK_FALSE(nth_root_coeff(Q, -4, 2));
    CHECK(*nth_root_coeff(Q, -8, 3) == RatFunc(-2));
    auto r = nth_root_coeff(Qx, RatFunc(Rational(9, 4)) * pow(X + 1, 4) / pow(X * X + 2, 2), 2);
    REQUIRE(r);
    CHECK(*r * *r == RatFunc(Rational(9, 4)) * pow(X + 1, 4) / pow(X * X + 2, 2));
}

TEST_CASE("dagger_lattice") {
    // z/x in k^dagger for all integers z
    auto l1 = dagger_lattice(Qx, 0, {X.inverse()});
    REQUIRE(l1.solvable);
    CHECK(l1.lattice.rows() == 1);
    CHECK(l1.lattice(0, 0) == 1);
    // z/(2x): only even z
    auto l2 = dagger_lattice(Qx, 0, {RatFunc(1) / (2 * X)});
    REQUIRE(l2.solvable);
    CHECK(l2.lattice(0, 0) == 2);
    // 1 - z x: never (constant term of the polynomial part)
    auto l3 = dagger_lattice(Qx, 1, {-X});
    CHECK_FALSE(l3.solvable);
    CHECK(l3.reason == DaggerReason::PolynomialPart);
    // 1/(2x) + z/x: residue 1/2 + z never an integer
    auto l4 = dagger_lattice(Qx, RatFunc(1) / (2 * X), {X.inverse()});
    CHECK_FALSE(l4.solvable);
    CHECK(l4.reason == DaggerReason::NonIntegerResidue);
    CHECK(l4.at == Poly::x());
    // two generators: z1 + z2 x^{-1}: need z1 = 0
    auto l5 = dagger_lattice(Qx, 0, {1, X.inverse()});
    REQUIRE(l5.solvable);
    REQUIRE(l5.lattice.rows() == 1);
    CHECK(l5.lattice(0, 0) == 0);
    CHECK(l5.lattice(0, 1) == 1);
    // brute-force agreement on small random instances
    std::mt19937 rng(6);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<RatFunc> gs;
        std::uniform_int_distribution<int> num(-2, 2), den(1, 3), pick(0, 3);
        std::vector<Poly> poles = {Poly::x(), Poly::x() + 1, Poly::x() * Poly::x() + 1, Poly::x() - 2};
        for (int i = 0; i < 2; ++i) {
            RatFunc g = RatFunc(Rational(num(rng), den(rng))) / RatFunc(poles[pick(rng)]);
            if (pick(rng) == 0)
                g += RatFunc(Rational(num(rng), den(rng)));
            gs.push_back(g);
        }
        RatFunc g0 = pick(rng) == 0 ? RatFunc(Rational(num(rng), den(rng))) / RatFunc(poles[pick(rng)]) : RatFunc();
        auto lat = dagger_lattice(Qx, g0, gs);
        for (int a = -6; a <= 6; ++a)
            for (int b = -6; b <= 6; ++b) {
                RatFunc h = g0 + RatFunc(a) * gs[0] + RatFunc(b) * gs[1];
                bool member = log_derivative_membership(Qx, h).member;
                bool in_lattice = false;
                if (lat.solvable) {
                    // (a, b) - particular in the row lattice
                    IntMatrix basis = lat.lattice;
                    IntVector diff = {Integer(a) - lat.particular[0], Integer(b) - lat.particular[1]};
                    if (basis.rows() == 0) {
                        in_lattice = diff[0] == 0 && diff[1] == 0;
                    } else {
                        auto h2 = hermite_form(basis);
                        in_lattice = solve_row_combination(h2, diff).has_value();
                    }
                }
                CHECK(member == in_lattice);
            }
    }
}
