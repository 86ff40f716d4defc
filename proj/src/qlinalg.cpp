#include "nilpot/qlinalg.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace nilpot {

QMatrix QMatrix::identity(int n)
{
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

ZMatrix ZMatrix::identity(int n)
{
    ZMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

ZMatrix zmul(const ZMatrix &a, const ZMatrix &b)
{
    if (a.cols != b.rows)
        throw std::invalid_argument("zmul: shape mismatch");
    ZMatrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const Int &aik = a.at(i, k);
            if (aik == 0)
                continue;
            for (int j = 0; j < b.cols; ++j)
                c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

RrefResult rref(const QMatrix &m)
{
    QMatrix a = m;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < a.cols && r < a.rows; ++c) {
        int p = -1;
        for (int i = r; i < a.rows; ++i)
            if (a.at(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        if (p != r)
            for (int j = 0; j < a.cols; ++j)
                std::swap(a.at(p, j), a.at(r, j));
        Rat inv = a.at(r, c);
        for (int j = c; j < a.cols; ++j)
            a.at(r, j) /= inv;
        for (int i = 0; i < a.rows; ++i) {
            if (i == r || a.at(i, c) == 0)
                continue;
            Rat f = a.at(i, c);
            for (int j = c; j < a.cols; ++j)
                a.at(i, j) -= f * a.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(pivots)};
}

std::vector<std::vector<Rat>> kernel_basis(const QMatrix &m)
{
    auto [red, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots)
        is_pivot[c] = true;

    std::vector<std::vector<Rat>> basis;
    for (int free = 0; free < m.cols; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Rat> v(m.cols);
        v[free] = 1;
        for (size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] = -red.at(int(k), free);
        // normalize: first nonzero entry = 1
        Rat lead;
        for (const Rat &x : v)
            if (x != 0) {
                lead = x;
                break;
            }
        if (lead != 0 && lead != 1)
            for (Rat &x : v)
                x /= lead;
        basis.push_back(std::move(v));
    }
    return basis;
}

HnfResult hnf(const ZMatrix &m)
{
    ZMatrix h = m;
    ZMatrix u = ZMatrix::identity(m.rows);

    auto row_sub = [&](int dst, int src, const Int &q) {
        if (q == 0)
            return;
        for (int j = 0; j < h.cols; ++j)
            h.at(dst, j) -= q * h.at(src, j);
        for (int j = 0; j < u.cols; ++j)
            u.at(dst, j) -= q * u.at(src, j);
    };
    auto row_swap = [&](int a, int b) {
        if (a == b)
            return;
        for (int j = 0; j < h.cols; ++j)
            std::swap(h.at(a, j), h.at(b, j));
        for (int j = 0; j < u.cols; ++j)
            std::swap(u.at(a, j), u.at(b, j));
    };
    auto row_negate = [&](int a) {
        for (int j = 0; j < h.cols; ++j)
            h.at(a, j) = -h.at(a, j);
        for (int j = 0; j < u.cols; ++j)
            u.at(a, j) = -u.at(a, j);
    };

    int r = 0;
    for (int c = 0; c < h.cols && r < h.rows; ++c) {
        // Euclidean reduction of column c among rows r..
        while (true) {
            int p = -1;
            for (int i = r; i < h.rows; ++i) {
                if (h.at(i, c) == 0)
                    continue;
                if (p < 0 || cmp(abs(h.at(i, c)), abs(h.at(p, c))) < 0)
                    p = i;
            }
            if (p < 0)
                break;
            row_swap(p, r);
            bool done = true;
            for (int i = r + 1; i < h.rows; ++i) {
                if (h.at(i, c) == 0)
                    continue;
                Int q = h.at(i, c) / h.at(r, c); // truncated division
                row_sub(i, r, q);
                if (h.at(i, c) != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (h.at(r, c) == 0)
            continue;
        if (h.at(r, c) < 0)
            row_negate(r);
        // entries above the pivot into [0, pivot)
        for (int i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(r, c).get_mpz_t());
            row_sub(i, r, q);
        }
        ++r;
    }
    return {std::move(h), std::move(u)};
}

SnfResult snf_with_transforms(const ZMatrix &m)
{
    ZMatrix d = m;
    ZMatrix left = ZMatrix::identity(m.rows);
    ZMatrix right = ZMatrix::identity(m.cols);
    ZMatrix right_inv = ZMatrix::identity(m.cols);

    auto row_sub = [&](int dst, int src, const Int &q) {
        if (q == 0)
            return;
        for (int j = 0; j < d.cols; ++j)
            d.at(dst, j) -= q * d.at(src, j);
        for (int j = 0; j < left.cols; ++j)
            left.at(dst, j) -= q * left.at(src, j);
    };
    auto col_sub = [&](int dst, int src, const Int &q) {
        // d <- d * T where T subtracts q*col_src from col_dst; T^{-1} adds it back
        if (q == 0)
            return;
        for (int i = 0; i < d.rows; ++i)
            d.at(i, dst) -= q * d.at(i, src);
        for (int i = 0; i < right.rows; ++i)
            right.at(i, dst) -= q * right.at(i, src);
        for (int j = 0; j < right_inv.cols; ++j)
            right_inv.at(src, j) += q * right_inv.at(dst, j);
    };
    auto row_swap = [&](int a, int b) {
        if (a == b)
            return;
        for (int j = 0; j < d.cols; ++j)
            std::swap(d.at(a, j), d.at(b, j));
        for (int j = 0; j < left.cols; ++j)
            std::swap(left.at(a, j), left.at(b, j));
    };
    auto col_swap = [&](int a, int b) {
        if (a == b)
            return;
        for (int i = 0; i < d.rows; ++i)
            std::swap(d.at(i, a), d.at(i, b));
        for (int i = 0; i < right.rows; ++i)
            std::swap(right.at(i, a), right.at(i, b));
        for (int j = 0; j < right_inv.cols; ++j)
            std::swap(right_inv.at(a, j), right_inv.at(b, j));
    };
    auto row_negate = [&](int a) {
        for (int j = 0; j < d.cols; ++j)
            d.at(a, j) = -d.at(a, j);
        for (int j = 0; j < left.cols; ++j)
            left.at(a, j) = -left.at(a, j);
    };

    int t = 0;
    int nmin = std::min(d.rows, d.cols);
    while (t < nmin) {
        // locate minimal nonzero entry in the trailing block
        int pi = -1, pj = -1;
        for (int i = t; i < d.rows; ++i)
            for (int j = t; j < d.cols; ++j) {
                if (d.at(i, j) == 0)
                    continue;
                if (pi < 0 || cmp(abs(d.at(i, j)), abs(d.at(pi, pj))) < 0) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0)
            break;
        row_swap(pi, t);
        col_swap(pj, t);
        if (d.at(t, t) < 0)
            row_negate(t);

        bool again = false;
        for (int i = t + 1; i < d.rows; ++i) {
            Int q = d.at(i, t) / d.at(t, t);
            row_sub(i, t, q);
            if (d.at(i, t) != 0)
                again = true;
        }
        for (int j = t + 1; j < d.cols; ++j) {
            Int q = d.at(t, j) / d.at(t, t);
            col_sub(j, t, q);
            if (d.at(t, j) != 0)
                again = true;
        }
        if (again)
            continue; // smaller remainders appeared, redo the pivot hunt

        // enforce divisibility: fold any non-multiple into the pivot's column
        bool fixed = true;
        for (int i = t + 1; i < d.rows && fixed; ++i)
            for (int j = t + 1; j < d.cols && fixed; ++j)
                if (d.at(i, j) % d.at(t, t) != 0) {
                    row_sub(t, i, Int(-1)); // adds row i to row t
                    fixed = false;
                }
        if (fixed)
            ++t;
    }
    return {std::move(d), std::move(left), std::move(right), std::move(right_inv)};
}

std::vector<Int> snf(const ZMatrix &m)
{
    SnfResult s = snf_with_transforms(m);
    int nmin = std::min(m.rows, m.cols);
    std::vector<Int> factors(nmin);
    for (int i = 0; i < nmin; ++i)
        factors[i] = s.d.at(i, i);
    return factors;
}

bool lattice_membership(const ZMatrix &basis_rows, const std::vector<Int> &v)
{
    if (int(v.size()) != basis_rows.cols)
        throw std::invalid_argument("lattice_membership: length mismatch");
    HnfResult h = hnf(basis_rows);
    std::vector<Int> w = v;
    int r = 0;
    for (int c = 0; c < h.h.cols; ++c) {
        if (r < h.h.rows && h.h.at(r, c) != 0) {
            Int q, rem;
            mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), w[c].get_mpz_t(),
                        h.h.at(r, c).get_mpz_t());
            if (rem != 0)
                return false;
            for (int j = c; j < h.h.cols; ++j)
                w[j] -= q * h.h.at(r, j);
            ++r;
        }
        if (w[c] != 0)
            return false;
    }
    return true;
}

} // namespace nilpot
