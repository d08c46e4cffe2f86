#include "hahn/matrix.hpp"

#include "hahn/error.hpp"

#include <algorithm>

namespace hahn {

namespace {

// [row_a; row_b] <- [s*row_a + t*row_b; -(b/g)*row_a + (a/g)*row_b]
void combine_rows(IntMatrix& m, std::size_t ra, std::size_t rb, const Integer& s, const Integer& t,
                  const Integer& u, const Integer& v) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Integer x = m(ra, j), y = m(rb, j);
        m(ra, j) = s * x + t * y;
        m(rb, j) = u * x + v * y;
    }
}

void negate_row(IntMatrix& m, std::size_t r) {
    for (std::size_t j = 0; j < m.cols(); ++j)
        m(r, j) = -m(r, j);
}

Integer trunc_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

HermiteForm hermite_form(const IntMatrix& a) {
    HermiteForm out;
    out.form = a;
    out.transform = IntMatrix::identity(a.rows());
    IntMatrix& h = out.form;
    IntMatrix& u = out.transform;
    const std::size_t m = a.rows();
    std::size_t r = 0;
    for (std::size_t col = 0; col < a.cols() && r < m; ++col) {
        std::size_t first = m;
        for (std::size_t i = r; i < m; ++i)
            if (h(i, col) != 0) {
                first = i;
                break;
            }
        if (first == m)
            continue;
        h.swap_rows(r, first);
        u.swap_rows(r, first);
        for (std::size_t i = r + 1; i < m; ++i) {
            if (h(i, col) == 0)
                continue;
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(r, col).get_mpz_t(),
                       h(i, col).get_mpz_t());
            Integer ua = -(h(i, col) / g), va = h(r, col) / g;
            combine_rows(h, r, i, s, t, ua, va);
            combine_rows(u, r, i, s, t, ua, va);
        }
        if (h(r, col) < 0) {
            negate_row(h, r);
            negate_row(u, r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            if (h(i, col) == 0)
                continue;
            Integer q = floor_div(h(i, col), h(r, col));
            h.add_row(i, r, -q);
            u.add_row(i, r, -q);
        }
        out.pivots.push_back(col);
        ++r;
    }
    out.rank = r;
    return out;
}

SmithForm smith_form(const IntMatrix& a) {
    SmithForm out;
    out.diagonal = a;
    out.left = IntMatrix::identity(a.rows());
    out.right = IntMatrix::identity(a.cols());
    out.right_inverse = IntMatrix::identity(a.cols());
    IntMatrix& d = out.diagonal;
    const std::size_t m = a.rows(), n = a.cols();
    const std::size_t steps = std::min(m, n);
    for (std::size_t t = 0; t < steps; ++t) {
        bool exhausted = false;
        while (true) {
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (d(i, j) != 0 && (pi == m || abs(d(i, j)) < abs(d(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m) {
                exhausted = true;
                break;
            }
            d.swap_rows(t, pi);
            out.left.swap_rows(t, pi);
            d.swap_cols(t, pj);
            out.right.swap_cols(t, pj);
            out.right_inverse.swap_rows(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (d(i, t) == 0)
                    continue;
                Integer q = trunc_div(d(i, t), d(t, t));
                d.add_row(i, t, -q);
                out.left.add_row(i, t, -q);
                if (d(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d(t, j) == 0)
                    continue;
                Integer q = trunc_div(d(t, j), d(t, t));
                d.add_col(j, t, -q);
                out.right.add_col(j, t, -q);
                out.right_inverse.add_row(t, j, q);
                if (d(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        d.add_row(t, i, 1);
                        out.left.add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (exhausted)
            break;
        if (d(t, t) < 0) {
            negate_row(d, t);
            negate_row(out.left, t);
        }
        out.divisors.push_back(d(t, t));
    }
    return out;
}

IntMatrix lattice_basis(const IntMatrix& a) {
    HermiteForm h = hermite_form(a);
    IntMatrix basis(h.rank, a.cols());
    for (std::size_t i = 0; i < h.rank; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            basis(i, j) = h.form(i, j);
    return basis;
}

IntMatrix left_integer_kernel(const IntMatrix& a) {
    HermiteForm h = hermite_form(a);
    IntMatrix k(a.rows() - h.rank, a.rows());
    for (std::size_t i = h.rank; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j)
            k(i - h.rank, j) = h.transform(i, j);
    return lattice_basis(k);
}

std::optional<IntVector> solve_row_combination(const HermiteForm& h, const IntVector& target) {
    const std::size_t n = h.form.cols();
    if (target.size() != n)
        fail(ErrorKind::InvalidArgument, "target length does not match lattice dimension");
    IntVector residual = target;
    IntVector y(h.form.rows());
    for (std::size_t r = 0; r < h.rank; ++r) {
        std::size_t col = h.pivots[r];
        if (residual[col] == 0)
            continue;
        if (residual[col] % h.form(r, col) != 0)
            return std::nullopt;
        Integer coef = residual[col] / h.form(r, col);
        y[r] = coef;
        for (std::size_t j = 0; j < n; ++j)
            residual[j] -= coef * h.form(r, j);
    }
    for (const auto& e : residual)
        if (e != 0)
            return std::nullopt;
    IntVector x(h.transform.cols());
    for (std::size_t r = 0; r < h.rank; ++r) {
        if (y[r] == 0)
            continue;
        for (std::size_t j = 0; j < x.size(); ++j)
            x[j] += y[r] * h.transform(r, j);
    }
    return x;
}

std::optional<DiophantineSolution> solve_diophantine(const IntMatrix& m, const IntVector& rhs) {
    if (rhs.size() != m.rows())
        fail(ErrorKind::InvalidArgument, "rhs length does not match equation count");
    IntMatrix at = m.transpose();
    HermiteForm h = hermite_form(at);
    auto particular = solve_row_combination(h, rhs);
    if (!particular)
        return std::nullopt;
    DiophantineSolution out;
    out.particular = std::move(*particular);
    IntMatrix k(at.rows() - h.rank, at.rows());
    for (std::size_t i = h.rank; i < at.rows(); ++i)
        for (std::size_t j = 0; j < at.rows(); ++j)
            k(i - h.rank, j) = h.transform(i, j);
    out.kernel = lattice_basis(k);
    return out;
}

RowEchelon row_echelon(const RatMatrix& a) {
    RowEchelon out;
    out.form = a;
    RatMatrix& f = out.form;
    std::size_t r = 0;
    for (std::size_t col = 0; col < f.cols() && r < f.rows(); ++col) {
        std::size_t p = f.rows();
        for (std::size_t i = r; i < f.rows(); ++i)
            if (f(i, col) != 0) {
                p = i;
                break;
            }
        if (p == f.rows())
            continue;
        f.swap_rows(r, p);
        Rational inv = Rational(1) / f(r, col);
        for (std::size_t j = col; j < f.cols(); ++j)
            f(r, j) *= inv;
        for (std::size_t i = 0; i < f.rows(); ++i) {
            if (i == r || f(i, col) == 0)
                continue;
            Rational factor = -f(i, col);
            for (std::size_t j = col; j < f.cols(); ++j)
                if (f(r, j) != 0)
                    f(i, j) += factor * f(r, j);
        }
        out.pivots.push_back(col);
        ++r;
    }
    return out;
}

RationalSolution solve_rational(const RatMatrix& a, const RatVector& rhs) {
    const std::size_t n = a.cols();
    RatMatrix aug(a.rows(), n + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n) = rhs[i];
    }
    RowEchelon e = row_echelon(aug);
    RationalSolution out;
    std::vector<bool> is_pivot(n, false);
    bool consistent = true;
    for (std::size_t p : e.pivots) {
        if (p == n)
            consistent = false;
        else
            is_pivot[p] = true;
    }
    if (consistent) {
        RatVector x(n);
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            x[e.pivots[r]] = e.form(r, n);
        out.particular = std::move(x);
    }
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        RatVector v(n);
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            if (e.pivots[r] < n)
                v[e.pivots[r]] = -e.form(r, free);
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

}  // namespace hahn
