#include "hahn/dhensel.hpp"

#include <algorithm>
#include <stdexcept>

namespace hahn {

int total_degree(const MultiIndex& m) {
    int d = 0;
    for (int e : m)
        d += e;
    return d;
}

namespace {

MultiIndex trimmed(MultiIndex m) {
    while (!m.empty() && m.back() == 0)
        m.pop_back();
    return m;
}

// Printing order: higher derivatives first, then higher degree.
std::vector<MultiIndex> print_order(std::vector<MultiIndex> keys) {
    std::sort(keys.begin(), keys.end(), [](const MultiIndex& a, const MultiIndex& b) {
        if (a.size() != b.size())
            return a.size() > b.size();
        if (total_degree(a) != total_degree(b))
            return total_degree(a) > total_degree(b);
        return std::lexicographical_compare(b.rbegin(), b.rend(), a.rbegin(), a.rend());
    });
    return keys;
}

std::string join_signed(const std::vector<std::string>& pieces) {
    std::string out;
    for (const auto& piece : pieces) {
        if (out.empty())
            out = piece;
        else if (piece[0] == '-')
            out += " - " + piece.substr(1);
        else
            out += " + " + piece;
    }
    return out.empty() ? "0" : out;
}

bool is_sum_text(const std::string& s) {
    return s.find(" + ") != std::string::npos || s.find(" - ") != std::string::npos;
}

}  // namespace

std::string monomial_name(const MultiIndex& m) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        if (!out.empty())
            out += "*";
        out += "Y" + std::string(i, '\'');
        if (m[i] > 1)
            out += "^" + std::to_string(m[i]);
    }
    return out;
}

// --- differential polynomials --------------------------------------------------

DifferentialPolynomial DifferentialPolynomial::constant(const HahnSeries& c) {
    DifferentialPolynomial p(c.group());
    p.add_term({}, c);
    return p;
}

DifferentialPolynomial DifferentialPolynomial::variable(const ValueGroup& group, int order) {
    DifferentialPolynomial p(group);
    MultiIndex m(order + 1, 0);
    m[order] = 1;
    p.add_term(m, HahnSeries::constant(group, 1));
    return p;
}

void DifferentialPolynomial::add_term(MultiIndex m, const HahnSeries& c) {
    require_same_group(group_, c.group());
    m = trimmed(std::move(m));
    auto it = terms_.find(m);
    HahnSeries sum = it == terms_.end() ? c : it->second + c;
    if (sum.is_exact_zero()) {
        if (it != terms_.end())
            terms_.erase(it);
        return;
    }
    terms_.insert_or_assign(m, sum);
}

int DifferentialPolynomial::order() const {
    int r = -1;
    for (const auto& [m, c] : terms_)
        r = std::max(r, static_cast<int>(m.size()) - 1);
    return r;
}

int DifferentialPolynomial::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_)
        d = std::max(d, total_degree(m));
    return d;
}

DifferentialPolynomial operator+(const DifferentialPolynomial& a, const DifferentialPolynomial& b) {
    DifferentialPolynomial r = a;
    for (const auto& [m, c] : b.terms_)
        r.add_term(m, c);
    return r;
}

DifferentialPolynomial DifferentialPolynomial::operator-() const {
    DifferentialPolynomial r(group_);
    for (const auto& [m, c] : terms_)
        r.add_term(m, -c);
    return r;
}

DifferentialPolynomial operator-(const DifferentialPolynomial& a, const DifferentialPolynomial& b) { return a + (-b); }

DifferentialPolynomial operator*(const DifferentialPolynomial& a, const DifferentialPolynomial& b) {
    require_same_group(a.group_, b.group_);
    DifferentialPolynomial r(a.group_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            MultiIndex m(std::max(ma.size(), mb.size()), 0);
            for (std::size_t i = 0; i < ma.size(); ++i)
                m[i] += ma[i];
            for (std::size_t i = 0; i < mb.size(); ++i)
                m[i] += mb[i];
            r.add_term(m, ca * cb);
        }
    return r;
}

std::string DifferentialPolynomial::to_string() const {
    std::vector<MultiIndex> keys;
    for (const auto& [m, c] : terms_)
        keys.push_back(m);
    std::vector<std::string> pieces;
    const HahnSeries one = HahnSeries::constant(group_, 1);
    for (const auto& m : print_order(keys)) {
        const HahnSeries& c = terms_.at(m);
        if (m.empty()) {
            pieces.push_back(c.to_string());
            continue;
        }
        std::string mono = monomial_name(m);
        if (c == one) {
            pieces.push_back(mono);
        } else if (c == -one) {
            pieces.push_back("-" + mono);
        } else {
            std::string s = c.to_string();
            if (c.terms().size() > 1 || !c.is_exact() || is_sum_text(s))
                s = "(" + s + ")";
            pieces.push_back(s + "*" + mono);
        }
    }
    return join_signed(pieces);
}

void ResidueDiffPolynomial::add_term(const MultiIndex& m, const RatFunc& c) {
    MultiIndex k = trimmed(m);
    RatFunc sum = terms_.count(k) ? terms_.at(k) + c : c;
    if (sum.is_zero())
        terms_.erase(k);
    else
        terms_.insert_or_assign(k, sum);
}

int ResidueDiffPolynomial::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_)
        d = std::max(d, total_degree(m));
    return d;
}

LinearDiffOperator ResidueDiffPolynomial::linear_part() const {
    std::vector<RatFunc> coeffs;
    for (const auto& [m, c] : terms_) {
        if (total_degree(m) != 1)
            continue;
        std::size_t i = m.size() - 1;
        if (coeffs.size() <= i)
            coeffs.resize(i + 1);
        coeffs[i] += c;
    }
    return LinearDiffOperator(std::move(coeffs));
}

RatFunc ResidueDiffPolynomial::constant_part() const {
    auto it = terms_.find(MultiIndex{});
    return it == terms_.end() ? RatFunc() : it->second;
}

std::string ResidueDiffPolynomial::to_string() const {
    std::vector<MultiIndex> keys;
    for (const auto& [m, c] : terms_)
        keys.push_back(m);
    std::vector<std::string> pieces;
    for (const auto& m : print_order(keys)) {
        const RatFunc& c = terms_.at(m);
        if (m.empty()) {
            pieces.push_back(c.to_string());
            continue;
        }
        std::string mono = monomial_name(m);
        if (c == RatFunc(1)) {
            pieces.push_back(mono);
        } else if (c == RatFunc(-1)) {
            pieces.push_back("-" + mono);
        } else {
            std::string s = c.to_string();
            if (is_sum_text(s))
                s = "(" + s + ")";
            pieces.push_back(s + "*" + mono);
        }
    }
    return join_signed(pieces);
}

HahnSeries dp_evaluate(const FieldSpec& spec, const DifferentialPolynomial& p, const HahnSeries& y) {
    require_same_group(spec.group, p.group());
    require_same_group(spec.group, y.group());
    std::vector<HahnSeries> derivs{y};
    for (int i = 1; i <= p.order(); ++i)
        derivs.push_back(derive_series(spec, derivs.back()));
    HahnSeries sum(spec.group);
    for (const auto& [m, c] : p.terms()) {
        HahnSeries term = c;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (int e = 0; e < m[i]; ++e)
                term = term * derivs[i];
        sum += term;
    }
    return sum;
}

ResidueDiffPolynomial dp_reduce(const DifferentialPolynomial& p) {
    ResidueDiffPolynomial r;
    for (const auto& [m, c] : p.terms())
        r.add_term(m, residue(c));
    return r;
}

bool is_quasi_linear(const DifferentialPolynomial& p) { return dp_reduce(p).degree() == 1; }

// --- lifting --------------------------------------------------------------------

LinearSurjectivityError::LinearSurjectivityError(GroupElement gamma, LinearDiffOperator op, RatFunc rhs)
    : Error(ErrorKind::LinearSurjectivityFailure,
            "no solution in k of (" + op.to_string() + ")(u) = " + rhs.to_string() + " at level " + gamma.to_string()),
      gamma_(std::move(gamma)), op_(std::move(op)), rhs_(std::move(rhs)) {}

namespace {

// Denominator of the exponent lattice that the lifting loop can reach.
Integer exponent_denominator(const DifferentialPolynomial& p, const GroupElement& bound) {
    const ValueGroup& g = p.group();
    if (g.kind() == GroupKind::FracIntegers)
        return Integer(g.denominator());
    if (g.kind() != GroupKind::Rationals)
        return 1;
    Integer d = bound.value().get_den();
    for (const auto& [m, c] : p.terms()) {
        for (const auto& t : c.terms())
            d = lcm(d, t.exp.value().get_den());
        if (c.truncation())
            d = lcm(d, c.truncation()->value().get_den());
    }
    return d;
}

}  // namespace

LiftResult dhensel_lift(const FieldSpec& spec, const DifferentialPolynomial& p, const GroupElement& bound,
                        std::optional<long> max_iterations) {
    require_same_group(spec.group, p.group());
    require_same_group(spec.group, bound.group());
    if (!spec.group.archimedean())
        fail(ErrorKind::Unsupported, "lifting needs an archimedean value group, got " + spec.group.to_string());
    if (bound.sign() <= 0)
        fail(ErrorKind::InvalidArgument, "lifting bound must be positive");
    ResidueDiffPolynomial reduced = dp_reduce(p);
    if (reduced.degree() != 1)
        fail(ErrorKind::NotQuasiLinear, "reduction " + reduced.to_string() + " does not have total degree 1");
    const LinearDiffOperator lbar = reduced.linear_part();
    const RatFunc bbar = reduced.constant_part();

    long cap;
    if (max_iterations) {
        cap = *max_iterations;
    } else {
        Rational b = bound.value() * exponent_denominator(p, bound);
        Integer steps = 10 * (b.get_num() / b.get_den() + 1);
        cap = steps.fits_slong_p() ? steps.get_si() : 1000000;
    }

    LiftResult out{HahnSeries(spec.group), {}, {}, false};
    const GroupElement zero(spec.group);
    LinearSolution s0 = solve_linear(spec.field, lbar, -bbar);
    if (!s0.particular)
        throw LinearSurjectivityError(zero, lbar, -bbar);
    HahnSeries y = HahnSeries::constant(spec.group, *s0.particular);
    HahnSeries r = dp_evaluate(spec, p, y);
    out.trace.push_back({zero, lbar, -bbar, *s0.particular, r.valuation()});

    for (long iter = 0;; ++iter) {
        Valuation v = r.valuation();
        if (v.kind == Valuation::Kind::PlusInfinity) {
            out.exact_zero = true;
            break;
        }
        if (v.value >= bound)
            break;
        if (v.kind == Valuation::Kind::AboveTruncation)
            fail(ErrorKind::NeedsPrecision, "residual known only to " + v.to_string() + ", below the bound " +
                                                bound.to_string());
        if (iter >= cap)
            fail(ErrorKind::IterationLimit, "lifting exceeded " + std::to_string(cap) + " iterations");
        const GroupElement gamma = v.value;
        LinearDiffOperator op = twist_operator(spec.field, lbar, spec.cmap(gamma));
        RatFunc rhs = -r.leading().coeff;
        LinearSolution s = solve_linear(spec.field, op, rhs);
        if (!s.particular)
            throw LinearSurjectivityError(gamma, op, rhs);
        y += HahnSeries::monomial(spec.group, *s.particular, gamma);
        r = dp_evaluate(spec, p, y);
        Valuation after = r.valuation();
        if (after.kind != Valuation::Kind::PlusInfinity && !(after.value > gamma))
            throw std::logic_error("lifting step did not increase the valuation of the residual");
        out.trace.push_back({gamma, op, rhs, *s.particular, after});
    }
    out.y = y;
    out.residual = r.valuation();
    return out;
}

HahnSeries hensel_nth_root(const FieldSpec& spec, const HahnSeries& u, unsigned long n, const GroupElement& bound) {
    require_same_group(spec.group, u.group());
    if (n == 0)
        fail(ErrorKind::InvalidArgument, "root index must be positive");
    Valuation vu = u.valuation();
    if (!vu.finite() || !vu.value.is_zero())
        fail(vu.kind == Valuation::Kind::AboveTruncation ? ErrorKind::NeedsPrecision : ErrorKind::InvalidArgument,
             "n-th root lifting needs v(u) = 0, got " + vu.to_string());
    RatFunc u0 = residue(u);
    auto r0 = nth_root_coeff(spec.field, u0, n);
    if (!r0)
        throw Error(ErrorKind::NoRootInResidue, "residue " + u0.to_string() + " has no " + std::to_string(n) +
                                                    "-th root in k");
    HahnSeries y = HahnSeries::constant(spec.group, *r0).truncated(bound);
    const HahnSeries target = u.truncated(bound);
    const HahnSeries n_series = HahnSeries::constant(spec.group, RatFunc(Rational(static_cast<long>(n))));
    for (int iter = 0; iter < 128; ++iter) {
        HahnSeries e = power(y, n) - target;
        if (e.is_empty())
            break;
        HahnSeries step = divide(e, n_series * power(y, n - 1), bound);
        y = (y - step).truncated(bound);
    }
    if (u.is_exact()) {
        HahnSeries exact = y.without_truncation();
        if (power(exact, n) == u)
            return exact;
    }
    if (!(power(y, n) - u).is_empty())
        throw std::logic_error("Newton iteration for the n-th root did not converge");
    return y;
}

PurityWitness purity_witness(const FieldSpec& spec, const HahnSeries& a, const HahnSeries& b, unsigned long n,
                             const GroupElement& bound) {
    Valuation va = a.valuation(), vb = b.valuation();
    if (!va.finite() || !vb.finite())
        fail(ErrorKind::InvalidArgument, "purity witness needs a, b with known valuations");
    if (!(vb.value == Integer(static_cast<unsigned long>(n)) * va.value))
        fail(ErrorKind::InvalidArgument, "v(b) = " + vb.value.to_string() + " is not " + std::to_string(n) +
                                             " * v(a) = " + va.value.to_string());
    HahnSeries q = divide(b, power(a, n), bound - vb.value);
    RatFunc q0 = residue(q);
    if (!nth_root_coeff(spec.field, q0, n))
        throw Error(ErrorKind::NoRootInResidue, "residue of b/a^n = " + q0.to_string() + " has no " +
                                                    std::to_string(n) + "-th root in k");
    if (!is_constant(spec, b).constant)
        throw Error(ErrorKind::NotConstant, "b = " + b.to_string() + " is not constant");
    PurityWitness out{HahnSeries(spec.group), hensel_nth_root(spec, q, n, bound), {}, va.value};
    out.w = a * out.y;
    out.constant = is_constant(spec, out.w);
    Valuation vw = out.w.valuation();
    if (!vw.finite() || !(vw.value == va.value))
        throw std::logic_error("purity witness has the wrong valuation");
    return out;
}

}  // namespace hahn
