#include "hahn/poly.hpp"

#include "hahn/error.hpp"

#include <algorithm>

namespace hahn {

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

Poly Poly::monomial(const Rational& c, std::size_t degree) {
    if (c == 0)
        return Poly();
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return Poly(std::move(v));
}

Poly Poly::monic() const {
    if (is_zero())
        return *this;
    Poly r(*this);
    Rational inv = Rational(1) / leading();
    for (auto& c : r.coeffs_)
        c *= inv;
    return r;
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1)
        return Poly();
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        d[i - 1] = coeffs_[i] * static_cast<long>(i);
    return Poly(std::move(d));
}

Rational Poly::operator()(const Rational& at) const {
    Rational r = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        r = r * at + *it;
    return r;
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& b) {
    if (b.coeffs_.size() > coeffs_.size())
        coeffs_.resize(b.coeffs_.size());
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
        coeffs_[i] += b.coeffs_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& b) {
    if (b.coeffs_.size() > coeffs_.size())
        coeffs_.resize(b.coeffs_.size());
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
        coeffs_[i] -= b.coeffs_[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Rational& c) {
    if (c == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& x : coeffs_)
        x *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero())
        return Poly();
    std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(r));
}

bool operator<(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        int c = cmp(a.coeffs_[i], b.coeffs_[i]);
        if (c != 0)
            return c < 0;
    }
    return false;
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero())
        return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = coeffs_[i];
        if (c == 0)
            continue;
        Rational mag = abs(c);
        if (s.empty())
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        if (mono.empty())
            s += hahn::to_string(mag);
        else if (mag == 1)
            s += mono;
        else
            s += hahn::to_string(mag) + "*" + mono;
    }
    return s;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero())
        fail(ErrorKind::DivisionByZero, "polynomial division by zero");
    if (a.degree() < b.degree())
        return {Poly(), a};
    std::vector<Rational> rem = a.coeffs();
    std::vector<Rational> quo(a.degree() - b.degree() + 1);
    const Rational inv = Rational(1) / b.leading();
    const int db = b.degree();
    for (int i = a.degree(); i >= db; --i) {
        if (rem[i] == 0)
            continue;
        Rational q = rem[i] * inv;
        quo[i - db] = q;
        for (int j = 0; j <= db; ++j)
            rem[i - db + j] -= q * b.coeffs()[j];
    }
    rem.resize(db);
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

ExtendedGcd extended_gcd(const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    Poly s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero())
        return {Poly(), Poly(), Poly()};
    Rational inv = Rational(1) / r0.leading();
    return {r0 * inv, s0 * inv, t0 * inv};
}

Poly inverse_mod(const Poly& a, const Poly& m) {
    ExtendedGcd e = extended_gcd(a % m, m);
    if (e.g.degree() != 0)
        fail(ErrorKind::DivisionByZero, "polynomial not invertible modulo " + m.to_string());
    return e.s % m;
}

Poly pow(const Poly& p, unsigned long e) {
    Poly r = 1, base = p;
    while (e > 0) {
        if (e & 1)
            r *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return r;
}

int multiplicity(const Poly& a, const Poly& p) {
    if (a.is_zero())
        fail(ErrorKind::InvalidArgument, "multiplicity in the zero polynomial");
    int m = 0;
    Poly cur = a;
    while (true) {
        auto [q, r] = divmod(cur, p);
        if (!r.is_zero())
            return m;
        cur = std::move(q);
        ++m;
    }
}

PrimitiveForm primitive_part(const Poly& p) {
    PrimitiveForm out;
    if (p.is_zero()) {
        out.unit = 0;
        return out;
    }
    Integer den = 1;
    for (const auto& c : p.coeffs())
        den = lcm(den, c.get_den());
    Integer content = 0;
    for (const auto& c : p.coeffs()) {
        Integer v = Rational(c * den).get_num();
        out.coeffs.push_back(v);
        content = gcd(content, v);
    }
    if (p.leading() < 0)
        content = -content;
    for (auto& c : out.coeffs)
        c /= content;
    out.unit = Rational(content, den);
    out.unit.canonicalize();
    return out;
}

Poly from_integers(const std::vector<Integer>& coeffs) {
    std::vector<Rational> v;
    v.reserve(coeffs.size());
    for (const auto& c : coeffs)
        v.emplace_back(c);
    return Poly(std::move(v));
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p) {
    std::vector<std::pair<Poly, int>> parts;
    if (p.degree() < 1)
        return parts;
    Poly f = p.monic();
    Poly fp = f.derivative();
    Poly a = gcd(f, fp);
    Poly b = f / a;
    Poly c = fp / a;
    Poly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        Poly g = gcd(b, d);
        if (g.degree() > 0)
            parts.emplace_back(g, i);
        b = b / g;
        c = d / g;
        d = c - b.derivative();
        ++i;
    }
    return parts;
}

std::vector<Rational> rational_roots(const Poly& p) {
    std::vector<Rational> roots;
    if (p.degree() < 1)
        return roots;
    for (const auto& [f, mult] : factor(p).factors)
        if (f.degree() == 1)
            roots.push_back(-f.constant_term());
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace hahn
