#include "hahn/coeff_field.hpp"

#include "hahn/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace hahn {

std::string field_name(CoeffField field) {
    return field == CoeffField::Rationals ? "Q" : "Qx";
}

CoeffField parse_field(std::string_view text) {
    if (text == "Q")
        return CoeffField::Rationals;
    if (text == "Qx" || text == "Q(x)")
        return CoeffField::RationalFunctions;
    fail(ErrorKind::Config, "unknown coefficient field '" + std::string(text) + "' (expected Q or Qx)");
}

void require_in_field(CoeffField field, const RatFunc& f) {
    if (field == CoeffField::Rationals && !f.is_constant())
        fail(ErrorKind::DomainMismatch, "'" + f.to_string() + "' is not in Q");
}

RatFunc derive(CoeffField field, const RatFunc& f) {
    if (field == CoeffField::Rationals)
        return RatFunc();
    return f.derivative();
}

RatFunc dagger(CoeffField field, const RatFunc& f) {
    if (f.is_zero())
        fail(ErrorKind::DivisionByZero, "logarithmic derivative of zero");
    return derive(field, f) / f;
}

// --- operators ---------------------------------------------------------------

LinearDiffOperator::LinearDiffOperator(std::vector<RatFunc> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back().is_zero())
        coeffs_.pop_back();
}

namespace {

std::string coeff_factor(const RatFunc& c) {
    std::string s = c.to_string();
    int terms = 0;
    for (const auto& q : c.num().coeffs())
        if (q != 0)
            ++terms;
    if (!c.is_polynomial() || terms > 1)
        return "(" + s + ")";
    return s;
}

}  // namespace

std::string LinearDiffOperator::to_string() const {
    if (coeffs_.empty())
        return "0";
    std::string out;
    for (int i = order(); i >= 0; --i) {
        const RatFunc& c = coeffs_[i];
        if (c.is_zero())
            continue;
        std::string term;
        if (i == 0) {
            term = c.to_string();
        } else {
            std::string d = i == 1 ? "D" : "D^" + std::to_string(i);
            if (c == RatFunc(1))
                term = d;
            else if (c == RatFunc(-1))
                term = "-" + d;
            else
                term = coeff_factor(c) + "*" + d;
        }
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out;
}

RatFunc apply_operator(CoeffField field, const LinearDiffOperator& a, const RatFunc& y) {
    RatFunc sum, deriv = y;
    for (int i = 0; i <= a.order(); ++i) {
        if (i > 0)
            deriv = derive(field, deriv);
        if (!a.coeff(i).is_zero())
            sum += a.coeff(i) * deriv;
    }
    return sum;
}

LinearDiffOperator twist_operator(CoeffField field, const LinearDiffOperator& a, const RatFunc& c0) {
    if (a.is_zero())
        return a;
    std::vector<RatFunc> total(a.order() + 1);
    std::vector<RatFunc> power{RatFunc(1)};  // (D + c0)^i
    for (int i = 0; i <= a.order(); ++i) {
        if (i > 0) {
            std::vector<RatFunc> next(power.size() + 1);
            for (std::size_t j = 0; j < power.size(); ++j) {
                next[j] += derive(field, power[j]) + c0 * power[j];
                next[j + 1] += power[j];
            }
            power = std::move(next);
        }
        if (a.coeff(i).is_zero())
            continue;
        for (std::size_t j = 0; j < power.size(); ++j)
            total[j] += a.coeff(i) * power[j];
    }
    return LinearDiffOperator(std::move(total));
}

// --- rational solutions ------------------------------------------------------

namespace {

// s (s-1) ... (s-i+1) as a polynomial in s.
Poly falling(int i) {
    Poly r(1), s = Poly::x();
    for (int k = 0; k < i; ++k)
        r = r * (s - Rational(k));
    return r;
}

std::vector<Integer> integer_roots(const Poly& p) {
    std::vector<Integer> out;
    if (p.is_zero() || p.degree() == 0)
        return out;
    for (const auto& r : rational_roots(p))
        if (is_integer(r))
            out.push_back(r.get_num());
    return out;
}

Poly lcm_poly(const Poly& a, const Poly& b) { return (a * b / gcd(a, b)).monic(); }

// Largest pole order of a rational solution at the irreducible p.
Integer pole_bound(const std::vector<Poly>& a, const RatFunc& b, const Poly& p) {
    std::optional<int> mu;
    std::vector<int> nu(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero())
            continue;
        nu[i] = multiplicity(a[i], p);
        int v = nu[i] - static_cast<int>(i);
        mu = mu ? std::min(*mu, v) : v;
    }
    // indicial polynomial with coefficients in Q[x]/(p), split by x-power
    Poly dp = p.derivative();
    std::vector<Poly> components(p.degree());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero() || nu[i] - static_cast<int>(i) != *mu)
            continue;
        Poly q = a[i] / pow(p, nu[i]) % p;
        Poly term = q * pow(dp, i) % p;
        Poly f = falling(static_cast<int>(i));
        for (int j = 0; j <= term.degree(); ++j)
            components[j] += f * term.coeff(j);
    }
    Poly common;
    for (const auto& c : components)
        common = gcd(common, c);
    Integer bound = 0;
    for (const auto& r : integer_roots(common))
        bound = std::max(bound, Integer(-r));
    if (!b.is_zero()) {
        int vb = multiplicity(b.num(), p) - multiplicity(b.den(), p);
        bound = std::max(bound, Integer(*mu - vb));
    }
    return bound;
}

// Largest possible deg(num) - deg(den) of a rational solution, or nullopt
// when only y = 0 can solve.
std::optional<Integer> degree_bound(const std::vector<Poly>& a, const RatFunc& b) {
    std::optional<int> m;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero()) {
            int v = a[i].degree() - static_cast<int>(i);
            m = m ? std::max(*m, v) : v;
        }
    Poly ind;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && a[i].degree() - static_cast<int>(i) == *m)
            ind += falling(static_cast<int>(i)) * a[i].leading();
    std::optional<Integer> best;
    for (const auto& r : integer_roots(ind))
        best = best ? std::max(*best, r) : r;
    if (!b.is_zero()) {
        Integer v = b.num().degree() - b.den().degree() - *m;
        best = best ? std::max(*best, v) : v;
    }
    return best;
}

}  // namespace

LinearSolution solve_linear(CoeffField field, const LinearDiffOperator& op, const RatFunc& b) {
    if (op.is_zero())
        fail(ErrorKind::InvalidOperator, "solve_linear needs a nonzero operator");
    require_in_field(field, b);
    for (const auto& c : op.coeffs())
        require_in_field(field, c);
    LinearSolution out;
    if (field == CoeffField::Rationals) {
        const RatFunc a0 = op.coeff(0);
        if (!a0.is_zero()) {
            out.particular = b / a0;
        } else {
            if (b.is_zero())
                out.particular = RatFunc();
            out.kernel.push_back(RatFunc(1));
        }
        return out;
    }

    // clear denominators of the operator
    Poly l(1);
    for (const auto& c : op.coeffs())
        l = lcm_poly(l, c.den());
    std::vector<Poly> a;
    for (const auto& c : op.coeffs())
        a.push_back(c.num() * (l / c.den()));
    LinearDiffOperator cleared(std::vector<RatFunc>(a.begin(), a.end()));
    RatFunc rhs = b * RatFunc(l);

    // universal denominator
    Poly singular = a.back() * rhs.den();
    Poly den(1);
    if (singular.degree() > 0)
        for (const auto& [p, e] : factor(singular).factors) {
            (void)e;
            Integer k = pole_bound(a, rhs, p);
            if (k > 0)
                den = den * pow(p, k.get_ui());
        }

    std::optional<Integer> s = degree_bound(a, rhs);
    long top = -1;
    if (s) {
        Integer t = *s + den.degree();
        if (t >= 0) {
            if (t > 4096)
                fail(ErrorKind::SizeLimit, "degree bound " + to_string(t) + " too large");
            top = t.get_si();
        }
    }
    if (top < 0) {
        if (rhs.is_zero())
            out.particular = RatFunc();
        return out;
    }

    // undetermined coefficients: N = sum n_j x^j, y = N/den
    std::vector<RatFunc> images;
    Poly w = rhs.den();
    for (long j = 0; j <= top; ++j) {
        images.push_back(apply_operator(field, cleared, RatFunc(Poly::monomial(1, j), den)));
        w = lcm_poly(w, images.back().den());
    }
    std::vector<Poly> cols;
    int rows = 0;
    for (const auto& im : images) {
        cols.push_back(im.num() * (w / im.den()));
        rows = std::max(rows, cols.back().degree() + 1);
    }
    Poly target = rhs.num() * (w / rhs.den());
    rows = std::max(rows, target.degree() + 1);
    RatMatrix m(static_cast<std::size_t>(rows), cols.size());
    RatVector t(static_cast<std::size_t>(rows));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i <= cols[j].degree(); ++i)
            m(i, j) = cols[j].coeff(i);
    for (int i = 0; i <= target.degree(); ++i)
        t[i] = target.coeff(i);
    RationalSolution sol = solve_rational(m, t);
    auto to_func = [&](const RatVector& v) { return RatFunc(Poly(v), den); };
    if (sol.particular)
        out.particular = to_func(*sol.particular);
    for (const auto& v : sol.nullspace)
        out.kernel.push_back(to_func(v));
    return out;
}

// --- logarithmic derivatives -------------------------------------------------

const char* dagger_reason_name(DaggerReason reason) {
    switch (reason) {
    case DaggerReason::None: return "none";
    case DaggerReason::PolynomialPart: return "polynomial-part";
    case DaggerReason::NonSimplePole: return "non-simple-pole";
    case DaggerReason::NonRationalResidue: return "non-rational-residue";
    case DaggerReason::NonIntegerResidue: return "non-integer-residue";
    }
    return "?";
}

std::string DaggerCertificate::describe() const {
    if (member)
        return "member: f = " + witness.to_string();
    switch (reason) {
    case DaggerReason::PolynomialPart: return "nonzero polynomial part";
    case DaggerReason::NonSimplePole: return "non-simple pole at " + at.to_string();
    case DaggerReason::NonRationalResidue:
        return "non-rational residue " + residue.to_string() + " at " + at.to_string();
    case DaggerReason::NonIntegerResidue:
        return "non-integer residue " + residue.to_string() + " at " + at.to_string();
    default: return "non-member";
    }
}

DaggerCertificate log_derivative_membership(CoeffField field, const RatFunc& g) {
    require_in_field(field, g);
    DaggerCertificate cert;
    if (g.is_zero()) {
        cert.member = true;
        return cert;
    }
    if (field == CoeffField::Rationals || !(g.num() / g.den()).is_zero()) {
        cert.reason = DaggerReason::PolynomialPart;
        return cert;
    }
    const Poly& d = g.den();
    Factorization fd = factor(d);
    for (const auto& [p, e] : fd.factors)
        if (e > 1) {
            cert.reason = DaggerReason::NonSimplePole;
            cert.at = p;
            return cert;
        }
    RatFunc witness(1);
    for (const auto& [p, e] : fd.factors) {
        (void)e;
        Poly r = g.num() * inverse_mod((d / p) * p.derivative(), p) % p;
        if (r.degree() > 0) {
            cert.reason = DaggerReason::NonRationalResidue;
            cert.at = p;
            cert.residue = RatFunc(r);
            return cert;
        }
        Rational n = r.constant_term();
        if (!is_integer(n)) {
            cert.reason = DaggerReason::NonIntegerResidue;
            cert.at = p;
            cert.residue = RatFunc(n);
            return cert;
        }
        cert.factors.emplace_back(p, n.get_num());
        witness *= pow(RatFunc(p), n.get_num().get_si());
    }
    if (dagger(field, witness) != g)
        throw std::logic_error("logarithmic derivative witness failed to verify");
    cert.member = true;
    cert.witness = witness;
    return cert;
}

std::optional<Integer> dagger_saturation(CoeffField field, const RatFunc& g) {
    require_in_field(field, g);
    if (g.is_zero())
        return Integer(1);
    if (field == CoeffField::Rationals || !(g.num() / g.den()).is_zero())
        return std::nullopt;
    const Poly& d = g.den();
    Integer n = 1;
    for (const auto& [p, e] : factor(d).factors) {
        if (e > 1)
            return std::nullopt;
        Poly r = g.num() * inverse_mod((d / p) * p.derivative(), p) % p;
        if (r.degree() > 0)
            return std::nullopt;
        n = lcm(n, r.constant_term().get_den());
    }
    return n;
}

std::optional<RatFunc> nth_root_coeff(CoeffField field, const RatFunc& u, unsigned long n) {
    require_in_field(field, u);
    if (n == 0)
        fail(ErrorKind::InvalidArgument, "root index must be positive");
    if (u.is_zero())
        return RatFunc();
    if (u.is_constant()) {
        auto r = exact_root(u.constant_value(), n);
        if (!r)
            return std::nullopt;
        return RatFunc(*r);
    }
    Factorization fn = factor(u.num());
    auto c = exact_root(fn.unit, n);
    if (!c)
        return std::nullopt;
    Poly num(*c), den(1);
    for (const auto& [p, e] : fn.factors) {
        if (e % n != 0)
            return std::nullopt;
        num = num * pow(p, e / n);
    }
    if (u.den().degree() > 0)
        for (const auto& [p, e] : factor(u.den()).factors) {
            if (e % n != 0)
                return std::nullopt;
            den = den * pow(p, e / n);
        }
    return RatFunc(num, den);
}

// --- affine dagger lattice ---------------------------------------------------

namespace {

Poly mod_poly(const Poly& a, const Poly& m) { return a % m; }

// Splits an element with denominator dividing d into Q-linear data:
// polynomial part, higher-order polar parts, and residue coefficients.
struct Decomposer {
    Poly d;
    std::vector<std::pair<Poly, int>> places;
    int poly_len = 0;

    // stage vectors: [0] polynomial part (single entry), [1..3] one per place
    std::vector<std::vector<RatVector>> split(const RatFunc& g) const {
        std::vector<std::vector<RatVector>> out(4);
        Poly n = g.num() * (d / g.den());
        auto [q, r] = divmod(n, d);
        RatVector poly(poly_len);
        for (int i = 0; i <= q.degree(); ++i)
            poly[i] = q.coeff(i);
        out[0].push_back(poly);
        for (const auto& [p, e] : places) {
            Poly pe = pow(p, e);
            Poly a = mod_poly(r * inverse_mod(d / pe, pe), pe);
            const int dp = p.degree();
            RatVector higher, nonconst, integral(1);
            // base-p digits: digit k is the coefficient of 1/p^(e-k)
            std::vector<Poly> digits;
            for (int k = 0; k < e; ++k) {
                auto [qq, rr] = divmod(a, p);
                digits.push_back(rr);
                a = qq;
            }
            for (int k = 0; k + 1 < e; ++k)
                for (int i = 0; i < dp; ++i)
                    higher.push_back(digits[k].coeff(i));
            Poly res = digits[e - 1] * inverse_mod(p.derivative(), p) % p;
            for (int i = 1; i < dp; ++i)
                nonconst.push_back(res.coeff(i));
            integral[0] = res.coeff(0);
            out[1].push_back(higher);
            out[2].push_back(nonconst);
            out[3].push_back(integral);
        }
        return out;
    }
};

// Rows of an integer system in the unknowns (z_1..z_n, w_1..w_J).
struct IntSystem {
    std::vector<IntVector> rows;
    IntVector rhs;
};

void append_rows(IntSystem& sys, const RatVector& base, const std::vector<RatVector>& coeffs, std::size_t unknowns,
                 std::optional<std::size_t> w_index) {
    for (std::size_t e = 0; e < base.size(); ++e) {
        RatVector row(unknowns);
        bool nonzero = base[e] != 0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            row[i] = coeffs[i][e];
            nonzero = nonzero || row[i] != 0;
        }
        if (w_index) {
            row[*w_index] = -1;
            nonzero = true;
        }
        if (!nonzero)
            continue;
        Rational r = -base[e];
        Integer den = r.get_den();
        for (const auto& c : row)
            den = lcm(den, c.get_den());
        IntVector irow;
        for (const auto& c : row)
            irow.push_back(Rational(c * den).get_num());
        sys.rows.push_back(irow);
        sys.rhs.push_back(Rational(r * den).get_num());
    }
}

std::optional<DiophantineSolution> solve_system(const IntSystem& sys, std::size_t unknowns) {
    if (sys.rows.empty()) {
        DiophantineSolution s;
        s.particular = IntVector(unknowns);
        s.kernel = IntMatrix::identity(unknowns);
        return s;
    }
    if (unknowns == 0) {
        for (const auto& r : sys.rhs)
            if (r != 0)
                return std::nullopt;
        return DiophantineSolution{};
    }
    return solve_diophantine(IntMatrix::from_rows(sys.rows, unknowns), sys.rhs);
}

}  // namespace

DaggerLattice dagger_lattice(CoeffField field, const RatFunc& g0, const std::vector<RatFunc>& gs) {
    require_in_field(field, g0);
    for (const auto& g : gs)
        require_in_field(field, g);
    Decomposer dec;
    dec.d = g0.den();
    for (const auto& g : gs)
        dec.d = lcm_poly(dec.d, g.den());
    if (dec.d.degree() > 0)
        dec.places = factor(dec.d).factors;
    {
        int top = (g0.num() * (dec.d / g0.den()) / dec.d).degree();
        for (const auto& g : gs)
            top = std::max(top, (g.num() * (dec.d / g.den()) / dec.d).degree());
        dec.poly_len = top + 1;
    }
    const std::size_t n = gs.size(), places = dec.places.size();
    const std::size_t unknowns = n + places;

    auto base = dec.split(g0);
    std::vector<std::vector<std::vector<RatVector>>> parts;
    for (const auto& g : gs)
        parts.push_back(dec.split(g));
    auto coeffs_at = [&](int stage, std::size_t place) {
        std::vector<RatVector> out;
        for (const auto& pg : parts)
            out.push_back(pg[stage][place]);
        return out;
    };

    DaggerLattice out;
    IntSystem sys;
    std::optional<DiophantineSolution> sol;
    const DaggerReason reasons[4] = {DaggerReason::PolynomialPart, DaggerReason::NonSimplePole,
                                     DaggerReason::NonRationalResidue, DaggerReason::NonIntegerResidue};
    for (int stage = 0; stage < 4; ++stage) {
        IntSystem before = sys;
        const std::size_t count = stage == 0 ? 1 : places;
        for (std::size_t j = 0; j < count; ++j) {
            std::optional<std::size_t> w;
            if (stage == 3)
                w = n + j;
            append_rows(sys, base[stage][j], coeffs_at(stage, j), unknowns, w);
        }
        sol = solve_system(sys, unknowns);
        if (sol)
            continue;
        out.reason = reasons[stage];
        if (stage > 0) {
            out.at = dec.places.front().first;
            for (std::size_t j = 0; j < places; ++j) {
                IntSystem probe = before;
                std::optional<std::size_t> w;
                if (stage == 3)
                    w = n + j;
                append_rows(probe, base[stage][j], coeffs_at(stage, j), unknowns, w);
                if (!solve_system(probe, unknowns)) {
                    out.at = dec.places[j].first;
                    break;
                }
            }
        }
        return out;
    }
    out.solvable = true;
    out.particular.assign(sol->particular.begin(), sol->particular.begin() + n);
    if (n > 0) {
        IntMatrix k(sol->kernel.rows(), n);
        for (std::size_t i = 0; i < k.rows(); ++i)
            for (std::size_t j = 0; j < n; ++j)
                k(i, j) = sol->kernel(i, j);
        out.lattice = lattice_basis(k);
        // canonical representative: reduce along the Hermite pivots
        for (std::size_t r = 0; r < out.lattice.rows(); ++r) {
            std::size_t c = 0;
            while (out.lattice(r, c) == 0)
                ++c;
            Integer q = floor_div(out.particular[c], out.lattice(r, c));
            for (std::size_t j = 0; j < n; ++j)
                out.particular[j] -= q * out.lattice(r, j);
        }
    }
    return out;
}

}  // namespace hahn
