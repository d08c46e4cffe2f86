#pragma once

#include "hahn/ratfunc.hpp"

#include <random>
#include <vector>

namespace testing_support {

using hahn::Poly;
using hahn::Rational;
using hahn::RatFunc;

inline Rational random_rational(std::mt19937& rng, int range, int den_range = 3) {
    std::uniform_int_distribution<int> n(-range, range), d(1, den_range);
    Rational q(n(rng), d(rng));
    q.canonicalize();
    return q;
}

inline Poly random_poly(std::mt19937& rng, int max_deg, int range) {
    std::uniform_int_distribution<int> deg(0, max_deg), c(-range, range);
    std::vector<Rational> v(deg(rng) + 1);
    for (auto& x : v)
        x = c(rng);
    return Poly(v);
}

inline Poly random_nonzero_poly(std::mt19937& rng, int max_deg, int range) {
    Poly p;
    while (p.is_zero())
        p = random_poly(rng, max_deg, range);
    return p;
}

inline RatFunc random_ratfunc(std::mt19937& rng, int max_deg = 2, int range = 3) {
    return RatFunc(random_poly(rng, max_deg, range), random_nonzero_poly(rng, max_deg, range));
}

inline RatFunc random_nonzero_ratfunc(std::mt19937& rng, int max_deg = 2, int range = 3) {
    RatFunc f;
    while (f.is_zero())
        f = random_ratfunc(rng, max_deg, range);
    return f;
}

// Plain Gauss-Jordan feasibility test for a * u == rhs over Q.
inline std::size_t gauss_rank(std::vector<std::vector<Rational>> a) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0)
                continue;
            Rational f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

inline bool gauss_solvable(std::vector<std::vector<Rational>> a, std::vector<Rational> rhs) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        std::swap(rhs[p], rhs[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0)
                continue;
            Rational f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] -= f * a[r][j];
            rhs[i] -= f * rhs[r];
        }
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (rhs[i] != 0)
            return false;
    return true;
}

}  // namespace testing_support
