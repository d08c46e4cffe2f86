#include "hahn/error.hpp"
#include "hahn/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

namespace hahn {

namespace {

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;  // coefficients mod p, low degree first
using ZPoly = std::vector<Integer>;

// --- arithmetic in F_p[x] --------------------------------------------------

void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

int deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    a %= p;
    while (e) {
        if (e & 1)
            r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

ModPoly sub(const ModPoly& a, const ModPoly& b, u64 p) {
    ModPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = (x + p - y) % p;
    }
    trim(r);
    return r;
}

ModPoly mul(const ModPoly& a, const ModPoly& b, u64 p) {
    if (a.empty() || b.empty())
        return {};
    ModPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i])
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
}

std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b, u64 p) {
    if (deg(a) < deg(b))
        return {{}, a};
    ModPoly rem = a, quo(a.size() - b.size() + 1);
    u64 inv = invmod(b.back(), p);
    const int db = deg(b);
    for (int i = deg(a); i >= db; --i) {
        u64 q = rem[i] * inv % p;
        quo[i - db] = q;
        if (!q)
            continue;
        for (int j = 0; j <= db; ++j)
            rem[i - db + j] = (rem[i - db + j] + p - q * b[j] % p) % p;
    }
    rem.resize(db);
    trim(rem);
    trim(quo);
    return {quo, rem};
}

ModPoly monic(ModPoly a, u64 p) {
    if (a.empty())
        return a;
    u64 inv = invmod(a.back(), p);
    for (auto& c : a)
        c = c * inv % p;
    return a;
}

ModPoly gcd(ModPoly a, ModPoly b, u64 p) {
    while (!b.empty()) {
        ModPoly r = divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

ModPoly derivative(const ModPoly& a, u64 p) {
    ModPoly d;
    for (std::size_t i = 1; i < a.size(); ++i)
        d.push_back(a[i] * (i % p) % p);
    trim(d);
    return d;
}

ModPoly mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& f, u64 p) {
    return divmod(mul(a, b, p), f, p).second;
}

ModPoly powmod(const ModPoly& a, const Integer& e, const ModPoly& f, u64 p) {
    ModPoly r{1}, base = divmod(a, f, p).second;
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = mulmod(r, base, f, p);
        base = mulmod(base, base, f, p);
    }
    return r;
}

// Extended gcd over F_p: s*a + t*b == 1 (a, b coprime).
void extended_gcd(const ModPoly& a, const ModPoly& b, u64 p, ModPoly& s, ModPoly& t) {
    ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1, p);
        r0 = std::move(r1);
        r1 = std::move(r);
        ModPoly s2 = sub(s0, mul(q, s1, p), p);
        s0 = std::move(s1);
        s1 = std::move(s2);
        ModPoly t2 = sub(t0, mul(q, t1, p), p);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    u64 inv = invmod(r0.back(), p);
    for (auto& c : s0)
        c = c * inv % p;
    for (auto& c : t0)
        c = c * inv % p;
    s = s0;
    t = t0;
}

std::vector<std::pair<ModPoly, int>> distinct_degree(ModPoly f, u64 p) {
    std::vector<std::pair<ModPoly, int>> out;
    ModPoly x{0, 1};
    ModPoly h = x;
    int d = 1;
    while (deg(f) >= 2 * d) {
        h = powmod(h, Integer(static_cast<unsigned long>(p)), f, p);
        ModPoly g = gcd(f, sub(h, x, p), p);
        if (deg(g) > 0) {
            out.emplace_back(g, d);
            f = divmod(f, g, p).first;
            h = divmod(h, f, p).second;
        }
        ++d;
    }
    if (deg(f) > 0)
        out.emplace_back(f, deg(f));
    return out;
}

void equal_degree(const ModPoly& g, int d, u64 p, std::mt19937_64& rng, std::vector<ModPoly>& out) {
    if (deg(g) == d) {
        out.push_back(g);
        return;
    }
    Integer pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), p, static_cast<unsigned long>(d));
    Integer e = (pd - 1) / 2;
    std::uniform_int_distribution<u64> coef(0, p - 1);
    while (true) {
        ModPoly a(g.size() - 1);
        for (auto& c : a)
            c = coef(rng);
        trim(a);
        if (deg(a) < 1)
            continue;
        ModPoly b = sub(powmod(a, e, g, p), ModPoly{1}, p);
        ModPoly h = gcd(g, b, p);
        if (deg(h) > 0 && deg(h) < deg(g)) {
            equal_degree(h, d, p, rng, out);
            equal_degree(divmod(g, h, p).first, d, p, rng, out);
            return;
        }
    }
}

// --- arithmetic in (Z/M)[x] -------------------------------------------------

Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

void trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

ZPoly reduce(ZPoly a, const Integer& m) {
    for (auto& c : a)
        c = mod(c, m);
    trim(a);
    return a;
}

ZPoly symmetric(ZPoly a, const Integer& m) {
    Integer half = m / 2;
    for (auto& c : a) {
        c = mod(c, m);
        if (c > half)
            c -= m;
    }
    trim(a);
    return a;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const Integer& m) {
    if (a.empty() || b.empty())
        return {};
    ZPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return reduce(std::move(r), m);
}

ZPoly zadd(const ZPoly& a, const ZPoly& b, const Integer& m) {
    ZPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = (i < a.size() ? a[i] : Integer(0)) + (i < b.size() ? b[i] : Integer(0));
    return reduce(std::move(r), m);
}

ZPoly zsub(const ZPoly& a, const ZPoly& b, const Integer& m) {
    ZPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = (i < a.size() ? a[i] : Integer(0)) - (i < b.size() ? b[i] : Integer(0));
    return reduce(std::move(r), m);
}

// Division by a monic polynomial modulo m.
std::pair<ZPoly, ZPoly> zdivmod_monic(const ZPoly& a, const ZPoly& b, const Integer& m) {
    if (a.size() < b.size())
        return {{}, a};
    ZPoly rem = a, quo(a.size() - b.size() + 1);
    const int db = static_cast<int>(b.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
        Integer q = mod(rem[i], m);
        quo[i - db] = q;
        if (q == 0)
            continue;
        for (int j = 0; j <= db; ++j)
            rem[i - db + j] = mod(rem[i - db + j] - q * b[j], m);
    }
    rem.resize(db);
    trim(rem);
    return {reduce(std::move(quo), m), rem};
}

ZPoly to_z(const ModPoly& a) {
    ZPoly r;
    for (u64 c : a)
        r.emplace_back(static_cast<unsigned long>(c));
    return r;
}

ModPoly to_mod(const ZPoly& a, u64 p) {
    ModPoly r;
    Integer pp(static_cast<unsigned long>(p));
    for (const auto& c : a)
        r.push_back(mod(c, pp).get_ui());
    trim(r);
    return r;
}

// One quadratic Hensel step modulo m -> m^2 (h monic).
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Integer& m2) {
    ZPoly e = zsub(f, zmul(g, h, m2), m2);
    auto [q, r] = zdivmod_monic(zmul(s, e, m2), h, m2);
    ZPoly g2 = zadd(zadd(g, zmul(t, e, m2), m2), zmul(q, g, m2), m2);
    ZPoly h2 = zadd(h, r, m2);
    ZPoly b = zsub(zadd(zmul(s, g2, m2), zmul(t, h2, m2), m2), ZPoly{1}, m2);
    auto [c, d] = zdivmod_monic(zmul(s, b, m2), h2, m2);
    s = zsub(s, d, m2);
    t = zsub(zsub(t, zmul(t, b, m2), m2), zmul(c, g2, m2), m2);
    g = std::move(g2);
    h = std::move(h2);
}

bool divides_exactly(const ZPoly& divisor, const ZPoly& dividend, ZPoly& quotient) {
    Poly q, r;
    std::tie(q, r) = divmod(from_integers(dividend), from_integers(divisor));
    if (!r.is_zero())
        return false;
    quotient.clear();
    for (const auto& c : q.coeffs()) {
        if (!is_integer(c))
            return false;
        quotient.push_back(c.get_num());
    }
    return true;
}

ZPoly primitive(const ZPoly& a) {
    Integer g = 0;
    for (const auto& c : a)
        g = hahn::gcd(g, c);
    if (a.back() < 0)
        g = -g;
    ZPoly r;
    for (const auto& c : a)
        r.push_back(c / g);
    return r;
}

bool is_prime_u64(u64 n) {
    if (n < 2)
        return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

// Irreducible factors of a primitive squarefree integer polynomial with
// positive leading coefficient.
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
    const int n = static_cast<int>(f.size()) - 1;
    if (n <= 1)
        return {f};

    // pick the prime giving the fewest modular factors among a few candidates
    std::mt19937_64 rng(0x5eed5eedULL);
    u64 best_p = 0;
    std::vector<ModPoly> best;
    int tried = 0;
    for (u64 p = 3; tried < 5 && p < 100000; p += 2) {
        if (!is_prime_u64(p))
            continue;
        Integer pp(static_cast<unsigned long>(p));
        if (mod(f.back(), pp) == 0)
            continue;
        ModPoly fp = to_mod(f, p);
        if (deg(gcd(fp, derivative(fp, p), p)) > 0)
            continue;
        ++tried;
        std::vector<ModPoly> facs;
        for (auto& [g, d] : distinct_degree(monic(fp, p), p))
            equal_degree(g, d, p, rng, facs);
        if (best_p == 0 || facs.size() < best.size()) {
            best_p = p;
            best = std::move(facs);
        }
        if (best.size() == 1)
            return {f};
    }
    if (best_p == 0)
        fail(ErrorKind::SizeLimit, "no suitable prime for factorization");
    const u64 p = best_p;
    std::sort(best.begin(), best.end());

    // coefficient bound for factors (times the leading coefficient)
    Integer maxc = 0;
    for (const auto& c : f)
        maxc = std::max(maxc, Integer(abs(c)));
    Integer root = 1;
    while (root * root < n + 1)
        ++root;
    Integer bound = root * (Integer(1) << n) * maxc * abs(f.back());
    Integer target = 2 * bound + 1;
    const Integer pz(static_cast<unsigned long>(p));
    int squarings = 0;
    for (Integer m = pz; m <= target; m *= m)
        ++squarings;
    Integer big = pz;
    for (int i = 0; i < squarings; ++i)
        big *= big;

    // multifactor lifting by successive two-factor splits
    std::vector<ZPoly> lifted;
    ZPoly current = f;
    for (std::size_t i = 0; i + 1 < best.size(); ++i) {
        ModPoly h0 = best[i];
        ModPoly g0{to_mod(ZPoly{current.back()}, p)};
        for (std::size_t j = i + 1; j < best.size(); ++j)
            g0 = mul(g0, best[j], p);
        ModPoly s0, t0;
        extended_gcd(g0, h0, p, s0, t0);
        ZPoly g = to_z(g0), h = to_z(h0), s = to_z(s0), t = to_z(t0);
        Integer m = pz;
        for (int k = 0; k < squarings; ++k) {
            m *= m;
            hensel_step(current, g, h, s, t, m);
        }
        lifted.push_back(h);
        current = symmetric(g, big);
    }
    {
        Integer inv;
        Integer lc = mod(current.back(), big);
        mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), big.get_mpz_t());
        ZPoly last;
        for (const auto& c : current)
            last.push_back(mod(c * inv, big));
        lifted.push_back(reduce(last, big));
    }

    // recombination
    std::vector<ZPoly> result;
    std::vector<std::size_t> remaining(lifted.size());
    for (std::size_t i = 0; i < remaining.size(); ++i)
        remaining[i] = i;
    ZPoly rest = f;
    std::size_t size = 1;
    while (2 * size <= remaining.size()) {
        bool found = false;
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i)
            pick[i] = i;
        while (true) {
            ZPoly cand{mod(rest.back(), big)};
            for (std::size_t i : pick)
                cand = zmul(cand, lifted[remaining[i]], big);
            cand = primitive(symmetric(cand, big));
            ZPoly quotient;
            if (cand.size() > 1 && divides_exactly(cand, rest, quotient)) {
                result.push_back(cand);
                rest = primitive(quotient);
                std::vector<std::size_t> keep;
                for (std::size_t i = 0; i < remaining.size(); ++i)
                    if (std::find(pick.begin(), pick.end(), i) == pick.end())
                        keep.push_back(remaining[i]);
                remaining = std::move(keep);
                found = true;
                break;
            }
            // next combination
            int k = static_cast<int>(size) - 1;
            while (k >= 0 && pick[k] == remaining.size() - size + k)
                --k;
            if (k < 0)
                break;
            ++pick[k];
            for (std::size_t j = k + 1; j < size; ++j)
                pick[j] = pick[j - 1] + 1;
        }
        if (!found)
            ++size;
    }
    if (rest.size() > 1)
        result.push_back(rest);
    return result;
}

}  // namespace

Factorization factor(const Poly& p) {
    if (p.is_zero())
        fail(ErrorKind::InvalidArgument, "factorization of the zero polynomial");
    if (p.degree() > kMaxFactorDegree)
        fail(ErrorKind::SizeLimit, "factorization limited to degree " + std::to_string(kMaxFactorDegree) +
                                       ", got " + std::to_string(p.degree()));
    Factorization out;
    out.unit = p.leading();
    for (const auto& [part, mult] : squarefree_decomposition(p)) {
        PrimitiveForm prim = primitive_part(part);
        for (const auto& z : zassenhaus(prim.coeffs))
            out.factors.emplace_back(from_integers(z).monic(), mult);
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace hahn
