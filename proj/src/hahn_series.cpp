#include "hahn/hahn_series.hpp"

#include "hahn/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace hahn {

FieldSpec::FieldSpec(CoeffField field_, ValueGroup group_, AdditiveMap cmap_, std::optional<GroupElement> truncation_)
    : field(field_), group(group_), cmap(std::move(cmap_)), truncation(std::move(truncation_)) {
    if (!(cmap.domain() == group))
        fail(ErrorKind::Config, "c-map domain " + cmap.domain().to_string() + " differs from value group " +
                                    group.to_string());
    if (cmap.field() != field)
        fail(ErrorKind::Config, "c-map codomain differs from the coefficient field");
    if (truncation) {
        require_same_group(group, truncation->group());
        if (truncation->sign() <= 0)
            fail(ErrorKind::Config, "truncation bound must be positive");
    }
}

const GroupElement& FieldSpec::precision() const {
    if (!truncation)
        fail(ErrorKind::NeedsPrecision, "operation needs a truncation bound (none configured)");
    return *truncation;
}

std::string Valuation::to_string() const {
    switch (kind) {
    case Kind::Finite: return value.to_string();
    case Kind::PlusInfinity: return "+inf";
    case Kind::AboveTruncation: return ">=" + value.to_string();
    }
    return "?";
}

// --- construction -----------------------------------------------------------

HahnSeries::HahnSeries(ValueGroup group, std::vector<Term> terms, std::optional<GroupElement> truncation)
    : group_(group), terms_(std::move(terms)), truncation_(std::move(truncation)) {
    for (const auto& t : terms_)
        require_same_group(group_, t.exp.group());
    if (truncation_)
        require_same_group(group_, truncation_->group());
    normalize();
}

void HahnSeries::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
    std::vector<Term> merged;
    for (auto& t : terms_) {
        if (truncation_ && t.exp >= *truncation_)
            break;
        if (!merged.empty() && merged.back().exp == t.exp)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(std::move(t));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Term& t) { return t.coeff.is_zero(); }),
                 merged.end());
    terms_ = std::move(merged);
}

HahnSeries HahnSeries::monomial(const ValueGroup& group, const RatFunc& coeff, const GroupElement& exp) {
    return HahnSeries(group, {Term{exp, coeff}});
}

HahnSeries HahnSeries::constant(const ValueGroup& group, const RatFunc& coeff) {
    return monomial(group, coeff, GroupElement(group));
}

HahnSeries HahnSeries::big_o(const ValueGroup& group, const GroupElement& tau) {
    return HahnSeries(group, {}, tau);
}

RatFunc HahnSeries::coeff(const GroupElement& exp) const {
    for (const auto& t : terms_)
        if (t.exp == exp)
            return t.coeff;
    return RatFunc();
}

const Term& HahnSeries::leading() const {
    if (terms_.empty())
        fail(truncation_ ? ErrorKind::NeedsPrecision : ErrorKind::InvalidArgument,
             "leading term of a series with no known terms");
    return terms_.front();
}

Valuation HahnSeries::valuation() const {
    if (!terms_.empty())
        return {Valuation::Kind::Finite, terms_.front().exp};
    if (truncation_)
        return {Valuation::Kind::AboveTruncation, *truncation_};
    return {Valuation::Kind::PlusInfinity, GroupElement(group_)};
}

HahnSeries HahnSeries::truncated(const GroupElement& tau) const {
    std::optional<GroupElement> t = tau;
    if (truncation_ && *truncation_ < tau)
        t = truncation_;
    return HahnSeries(group_, terms_, t);
}

// --- arithmetic -------------------------------------------------------------

namespace {

std::optional<GroupElement> min_bound(const std::optional<GroupElement>& a, const std::optional<GroupElement>& b) {
    if (!a)
        return b;
    if (!b)
        return a;
    return *a < *b ? a : b;
}

// Lower bound for the valuation of a series that is not an exact zero.
GroupElement low(const HahnSeries& f) {
    return f.terms().empty() ? *f.truncation() : f.terms().front().exp;
}

}  // namespace

HahnSeries HahnSeries::operator-() const {
    HahnSeries r(*this);
    for (auto& t : r.terms_)
        t.coeff = -t.coeff;
    return r;
}

HahnSeries operator+(const HahnSeries& a, const HahnSeries& b) {
    require_same_group(a.group_, b.group_);
    std::vector<Term> terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return HahnSeries(a.group_, std::move(terms), min_bound(a.truncation_, b.truncation_));
}

HahnSeries operator*(const HahnSeries& a, const HahnSeries& b) {
    require_same_group(a.group_, b.group_);
    if (a.is_exact_zero() || b.is_exact_zero())
        return HahnSeries(a.group_);
    std::optional<GroupElement> bound;
    if (a.truncation_)
        bound = low(b) + *a.truncation_;
    if (b.truncation_)
        bound = min_bound(bound, low(a) + *b.truncation_);
    std::vector<Term> terms;
    terms.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) {
            GroupElement e = x.exp + y.exp;
            if (bound && e >= *bound)
                continue;
            terms.push_back(Term{e, x.coeff * y.coeff});
        }
    return HahnSeries(a.group_, std::move(terms), bound);
}

HahnSeries operator*(const RatFunc& c, const HahnSeries& a) {
    if (c.is_zero())
        return HahnSeries(a.group_);
    HahnSeries r(a);
    for (auto& t : r.terms_)
        t.coeff = c * t.coeff;
    return r;
}

HahnSeries inverse(const HahnSeries& f, const std::optional<GroupElement>& bound) {
    if (f.is_exact_zero())
        fail(ErrorKind::DivisionByZero, "inverse of the zero series");
    if (f.is_empty())
        fail(ErrorKind::NeedsPrecision, "inverse of " + f.to_string() + ": possibly zero");
    const ValueGroup& g = f.group();
    const Term& lead = f.leading();
    HahnSeries lead_inv = HahnSeries::monomial(g, lead.coeff.inverse(), -lead.exp);
    if (f.is_exact() && f.terms().size() == 1)
        return lead_inv;
    std::optional<GroupElement> tau;
    if (f.truncation())
        tau = *f.truncation() - lead.exp - lead.exp;
    tau = min_bound(tau, bound);
    if (!tau)
        fail(ErrorKind::NeedsPrecision, "inverse of a multi-term exact series needs a truncation bound");
    GroupElement rel = *tau + lead.exp;  // relative precision for (1 + eps)^-1
    if (rel.sign() <= 0)
        return HahnSeries::big_o(g, *tau);
    HahnSeries one = HahnSeries::constant(g, 1);
    HahnSeries eps = (f * lead_inv - one).truncated(rel);
    HahnSeries sum = one.truncated(rel);
    if (!eps.is_empty()) {
        auto steps = multiples_to_reach(eps.leading().exp, rel);
        if (!steps)
            fail(ErrorKind::Unsupported, "geometric expansion does not reach the bound in a non-archimedean group");
        HahnSeries p = one;
        for (Integer k = 1; k <= *steps; ++k) {
            p = (p * -eps).truncated(rel);
            sum += p;
        }
    }
    return lead_inv * sum;
}

HahnSeries divide(const HahnSeries& f, const HahnSeries& g, const std::optional<GroupElement>& bound) {
    return f * inverse(g, bound);
}

HahnSeries power(const HahnSeries& f, unsigned long n) {
    HahnSeries r = HahnSeries::constant(f.group(), 1);
    for (unsigned long i = 0; i < n; ++i)
        r = r * f;
    return r;
}

bool agrees(const HahnSeries& f, const HahnSeries& g) { return (f - g).is_empty(); }

// --- derivation and friends ---------------------------------------------------

HahnSeries derive_series(const FieldSpec& spec, const HahnSeries& f) {
    require_same_group(spec.group, f.group());
    std::vector<Term> terms;
    for (const auto& t : f.terms()) {
        RatFunc c = derive(spec.field, t.coeff) + spec.cmap(t.exp) * t.coeff;
        if (!c.is_zero())
            terms.push_back(Term{t.exp, c});
    }
    return HahnSeries(f.group(), std::move(terms), f.truncation());
}

HahnSeries dagger_series(const FieldSpec& spec, const HahnSeries& f) {
    if (f.is_exact_zero())
        fail(ErrorKind::DivisionByZero, "logarithmic derivative of zero");
    if (f.is_empty())
        fail(ErrorKind::NeedsPrecision, "logarithmic derivative of " + f.to_string() + ": leading term unknown");
    if (f.is_exact() && f.terms().size() == 1) {
        const Term& t = f.leading();
        return HahnSeries::constant(f.group(), dagger(spec.field, t.coeff) + spec.cmap(t.exp));
    }
    std::optional<GroupElement> bound;
    if (f.is_exact())
        bound = spec.precision();
    return divide(derive_series(spec, f), f, bound);
}

RatFunc residue(const HahnSeries& f) {
    if (!f.terms().empty() && f.terms().front().exp.sign() < 0)
        fail(ErrorKind::NotInValuationRing, "residue of " + f.to_string() + ": negative valuation");
    if (f.truncation() && f.truncation()->sign() <= 0)
        fail(ErrorKind::NeedsPrecision, "residue of " + f.to_string() + ": exponent 0 is not known");
    return f.coeff(GroupElement(f.group()));
}

HahnSeries cross_section(const FieldSpec& spec, const GroupElement& gamma) {
    require_same_group(spec.group, gamma.group());
    return HahnSeries::monomial(spec.group, 1, gamma);
}

ConstantTest is_constant(const FieldSpec& spec, const HahnSeries& f) {
    return {derive_series(spec, f).is_empty(), !f.is_exact()};
}

// --- printing -----------------------------------------------------------------

namespace {

std::string power_text(const GroupElement& e, bool bare_t = true) {
    if (e.group().rank() == 1) {
        const Rational& v = e.value();
        if (v == 1 && bare_t)
            return "t";
        if (is_integer(v))
            return "t^" + to_string(v);
        return "t^(" + to_string(v) + ")";
    }
    return "t^" + e.to_string();
}

std::string term_text(const Term& t) {
    if (t.exp.is_zero())
        return t.coeff.to_string();
    std::string p = power_text(t.exp);
    if (t.coeff == RatFunc(1))
        return p;
    if (t.coeff == RatFunc(-1))
        return "-" + p;
    std::string c = t.coeff.to_string();
    int terms = 0;
    for (const auto& q : t.coeff.num().coeffs())
        if (q != 0)
            ++terms;
    if (t.coeff.is_polynomial() && terms > 1)
        c = "(" + c + ")";
    return c + "*" + p;
}

}  // namespace

std::string HahnSeries::to_string() const {
    std::string out;
    auto append = [&](const std::string& piece) {
        if (out.empty())
            out = piece;
        else if (piece[0] == '-')
            out += " - " + piece.substr(1);
        else
            out += " + " + piece;
    };
    for (const auto& t : terms_)
        append(term_text(t));
    if (truncation_)
        append("O(" + power_text(*truncation_, false) + ")");
    return out.empty() ? "0" : out;
}

// --- the dagger equation ------------------------------------------------------

DaggerSolution solve_dagger(const FieldSpec& spec, const RatFunc& u, long k_bound) {
    if (!spec.group.discrete_rank_one())
        fail(ErrorKind::Unsupported, "solve_dagger needs Gamma = Z or (1/d)Z, got " + spec.group.to_string());
    if (k_bound < 0)
        fail(ErrorKind::InvalidArgument, "search bound must be nonnegative");
    require_in_field(spec.field, u);
    const GroupElement gen = spec.cmap.generator(0);
    const RatFunc cg = spec.cmap(gen);
    DaggerSolution out;
    out.m = GroupElement(spec.group);
    // a = d t^m forces d^dagger = u - c(m); scan m = 0, g, -g, 2g, ...
    const long steps = k_bound * spec.group.denominator();
    for (long j = 0; j <= 2 * steps; ++j) {
        long z = (j + 1) / 2 * (j % 2 ? 1 : -1);
        GroupElement m = Integer(z) * gen;
        ++out.checked;
        auto cert = log_derivative_membership(spec.field, u - RatFunc(z) * cg);
        if (!cert.member)
            continue;
        out.status = DaggerSolution::Status::Solution;
        out.m = m;
        out.d = cert.witness;
        out.a = HahnSeries::monomial(spec.group, cert.witness, m);
        if (dagger_series(spec, *out.a) != HahnSeries::constant(spec.group, u))
            throw std::logic_error("dagger solution failed to verify");
        return out;
    }
    DaggerLattice lat = dagger_lattice(spec.field, u, {-cg});
    if (lat.solvable)
        return out;  // a solution exists only beyond the search bound
    out.status = DaggerSolution::Status::Unsat;
    out.reason = lat.reason;
    out.at = lat.at;
    std::string phrase;
    switch (lat.reason) {
    case DaggerReason::PolynomialPart: phrase = "has nonzero polynomial part"; break;
    case DaggerReason::NonSimplePole: phrase = "has a non-simple pole at " + lat.at.to_string(); break;
    case DaggerReason::NonRationalResidue: phrase = "has a non-rational residue at " + lat.at.to_string(); break;
    case DaggerReason::NonIntegerResidue: phrase = "has a non-integer residue at " + lat.at.to_string(); break;
    case DaggerReason::None: break;
    }
    std::string m = gen.value() == 1 ? "m" : "m*" + gen.to_string();
    out.certificate = "u - c(" + m + ") = " + u.to_string() + " - m*(" + cg.to_string() + ") " + phrase +
                      " for every integer m";
    return out;
}

}  // namespace hahn
