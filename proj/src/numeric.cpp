#include "hahn/numeric.hpp"

#include "hahn/error.hpp"

namespace hahn {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NeedsPrecision: return "NeedsPrecision";
    case ErrorKind::NotInValuationRing: return "NotInValuationRing";
    case ErrorKind::InvalidOperator: return "InvalidOperator";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::Unsupported: return "UnsupportedSpec";
    case ErrorKind::NotQuasiLinear: return "NotQuasiLinear";
    case ErrorKind::LinearSurjectivityFailure: return "LinearSurjectivityFailure";
    case ErrorKind::NoRootInResidue: return "NoRootInResidue";
    case ErrorKind::NotConstant: return "NotConstant";
    case ErrorKind::IterationLimit: return "IterationLimit";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Config: return "ConfigError";
    }
    return "Error";
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty())
        return false;
    for (char ch : s)
        if (ch < '0' || ch > '9')
            return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && s.front() == ' ')
        s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ')
        s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        fail(ErrorKind::InvalidArgument, "not a rational literal: '" + std::string(text) + "'");
    Integer n{std::string(num)}, d{std::string(den)};
    if (d == 0)
        fail(ErrorKind::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

std::optional<Integer> exact_root(const Integer& a, unsigned long n) {
    if (n == 0)
        fail(ErrorKind::InvalidArgument, "root of order 0");
    if (a < 0 && n % 2 == 0)
        return std::nullopt;
    Integer r;
    Integer abs_a = abs(a);
    if (mpz_root(r.get_mpz_t(), abs_a.get_mpz_t(), n) == 0)
        return std::nullopt;
    if (a < 0)
        r = -r;
    return r;
}

std::optional<Rational> exact_root(const Rational& q, unsigned long n) {
    auto num = exact_root(q.get_num(), n);
    auto den = exact_root(q.get_den(), n);
    if (!num || !den)
        return std::nullopt;
    Rational r(*num, *den);
    r.canonicalize();
    return r;
}

Rational pow(const Rational& q, long e) {
    if (e < 0) {
        if (q == 0)
            fail(ErrorKind::DivisionByZero, "negative power of zero");
        return pow(Rational(1) / q, -e);
    }
    Rational r(1), base(q);
    while (e > 0) {
        if (e & 1)
            r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

}  // namespace hahn
