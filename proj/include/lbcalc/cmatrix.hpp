// Small dense matrices over the coefficient field, exact Gaussian elimination.
#pragma once

#include "lbcalc/coeff.hpp"

#include <optional>
#include <vector>

namespace lbc {

using CMatrix = std::vector<std::vector<Coeff>>;

inline CMatrix cmat_identity(int n) {
    CMatrix m(size_t(n), std::vector<Coeff>(size_t(n), Coeff(0)));
    for (int i = 0; i < n; ++i)
        m[size_t(i)][size_t(i)] = Coeff(1);
    return m;
}

// Inverse over Q(params); nullopt when singular.
inline std::optional<CMatrix> cmat_inverse(CMatrix a) {
    size_t n = a.size();
    CMatrix inv = cmat_identity(int(n));
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col].is_zero())
            ++piv;
        if (piv == n)
            return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Coeff d = a[col][col];
        for (size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero())
                continue;
            Coeff f = a[r][col];
            for (size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

inline size_t cmat_rank(CMatrix a) {
    if (a.empty())
        return 0;
    size_t rows = a.size(), cols = a[0].size(), rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && a[piv][col].is_zero())
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[rank]);
        Coeff d = a[rank][col];
        for (size_t j = col; j < cols; ++j)
            a[rank][j] /= d;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][col].is_zero())
                continue;
            Coeff f = a[r][col];
            for (size_t j = col; j < cols; ++j)
                a[r][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

// Solve a x = b; nullopt when inconsistent. a may be rectangular; returns one
// solution with free coordinates set to zero.
inline std::optional<std::vector<Coeff>> cmat_solve(CMatrix a, std::vector<Coeff> b) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    std::vector<int> pivot_col;
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && a[piv][col].is_zero())
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[rank]);
        std::swap(b[piv], b[rank]);
        Coeff d = a[rank][col];
        for (size_t j = col; j < cols; ++j)
            a[rank][j] /= d;
        b[rank] /= d;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][col].is_zero())
                continue;
            Coeff f = a[r][col];
            for (size_t j = col; j < cols; ++j)
                a[r][j] -= f * a[rank][j];
            b[r] -= f * b[rank];
        }
        pivot_col.push_back(int(col));
        ++rank;
    }
    for (size_t r = rank; r < rows; ++r)
        if (!b[r].is_zero())
            return std::nullopt;
    std::vector<Coeff> x(cols, Coeff(0));
    for (size_t r = 0; r < rank; ++r)
        x[size_t(pivot_col[r])] = b[r];
    return x;
}

} // namespace lbc
