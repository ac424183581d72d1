// Exact elimination kernels shared by every rank/homology computation.
//
// Matrices of graded maps are sparse and can get large on word spaces, so the
// workhorse routines operate on sorted sparse rows. Dense Eigen matrices are
// used at API boundaries and for small solves.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ainfty/scalar.hpp"

namespace ainfty {

template <typename K>
using DenseMatrix = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <typename K>
using DenseVector = Eigen::Matrix<K, Eigen::Dynamic, 1>;

/// One sparse row: sorted (column, value) pairs, values nonzero.
template <typename K>
using SparseRow = std::vector<std::pair<int, K>>;
template <typename K>
using SparseRows = std::vector<SparseRow<K>>;

template <typename K>
SparseRow<K> sparse_axpy(const SparseRow<K>& x, const std::type_identity_t<K>& c,
                         const SparseRow<K>& y)
{
    // x + c*y, both sorted by column
    SparseRow<K> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            K v = c * y[j].second;
            if (!is_zero(v))
                out.emplace_back(y[j].first, v);
            ++j;
        } else {
            K v = x[i].second + c * y[j].second;
            if (!is_zero(v))
                out.emplace_back(x[i].first, v);
            ++i, ++j;
        }
    }
    return out;
}

namespace detail {

inline void normalize_row(SparseRow<Rational>& row)
{
    // Keep entries as a primitive integer vector times a leading sign; this is
    // the fraction-management step that keeps elimination fraction-free.
    if (row.empty())
        return;
    Integer lcm_den = 1, gcd_num = 0;
    for (const auto& [c, v] : row)
        lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(v));
    for (const auto& [c, v] : row)
        gcd_num = boost::multiprecision::gcd(
            gcd_num, Integer(boost::multiprecision::numerator(v) * (lcm_den / boost::multiprecision::denominator(v))));
    if (gcd_num == 0)
        return;
    Rational scale{lcm_den, gcd_num};
    if (row.front().second < 0)
        scale = -scale;
    if (scale != 1)
        for (auto& [c, v] : row)
            v *= scale;
}

inline void normalize_row(SparseRow<Fp>& row)
{
    if (row.empty())
        return;
    Fp inv = row.front().second.inverse();
    if (inv != Fp(1))
        for (auto& [c, v] : row)
            v *= inv;
}

} // namespace detail

/// Echelonizes rows in place (deterministic: columns left to right, shortest
/// candidate row wins, ties by row index). Returns pivot (column, row) pairs
/// in column order. Rows end up scaled to a canonical form but not reduced
/// above pivots; use sparse_rref for that.
template <typename K>
std::vector<std::pair<int, int>> sparse_echelonize(SparseRows<K>& rows, int ncols)
{
    std::vector<std::pair<int, int>> pivots;
    std::vector<char> used(rows.size(), 0);
    for (int col = 0; col < ncols; ++col) {
        int pivot = -1;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (used[r] || rows[r].empty() || rows[r].front().first != col)
                continue;
            if (pivot < 0 || rows[r].size() < rows[pivot].size())
                pivot = static_cast<int>(r);
        }
        if (pivot < 0)
            continue;
        used[pivot] = 1;
        detail::normalize_row(rows[pivot]);
        const K pv = rows[pivot].front().second;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<int>(r) == pivot || rows[r].empty() || rows[r].front().first != col)
                continue;
            K c = -(rows[r].front().second / pv);
            rows[r] = sparse_axpy(rows[r], c, rows[pivot]);
            detail::normalize_row(rows[r]);
        }
        pivots.emplace_back(col, pivot);
    }
    return pivots;
}

template <typename K>
int sparse_rank(SparseRows<K> rows, int ncols)
{
    return static_cast<int>(sparse_echelonize(rows, ncols).size());
}

/// Fully reduced row echelon form; pivot columns in increasing order, pivot
/// entries 1, zero above and below. Non-pivot rows are dropped.
template <typename K>
std::vector<int> sparse_rref(SparseRows<K>& rows, int ncols)
{
    auto pivots = sparse_echelonize(rows, ncols);
    SparseRows<K> reduced;
    std::vector<int> pivot_cols;
    reduced.reserve(pivots.size());
    for (auto [col, r] : pivots) {
        SparseRow<K> row = rows[r];
        K inv = K(1) / row.front().second;
        if (!(inv == K(1)))
            for (auto& [c, v] : row)
                v *= inv;
        reduced.push_back(std::move(row));
        pivot_cols.push_back(col);
    }
    // back-substitute, rightmost pivot first
    for (int i = static_cast<int>(reduced.size()) - 1; i >= 0; --i) {
        for (int j = 0; j < i; ++j) {
            // eliminate pivot_cols[i] from row j
            const int col = pivot_cols[i];
            auto it = std::lower_bound(reduced[j].begin(), reduced[j].end(), col,
                                       [](const auto& e, int c) { return e.first < c; });
            if (it != reduced[j].end() && it->first == col)
                reduced[j] = sparse_axpy(reduced[j], K(-it->second), reduced[i]);
        }
    }
    rows = std::move(reduced);
    return pivot_cols;
}

/// Basis of the null space of the matrix whose rows are given (viewed as a
/// linear system rows * x = 0 with x of length ncols). Deterministic: free
/// columns in increasing order.
template <typename K>
std::vector<SparseRow<K>> sparse_kernel_basis(SparseRows<K> rows, int ncols)
{
    std::vector<int> pivot_cols = sparse_rref(rows, ncols);
    std::vector<int> pivot_of_col(ncols, -1);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i)
        pivot_of_col[pivot_cols[i]] = static_cast<int>(i);
    std::vector<SparseRow<K>> basis;
    for (int free_col = 0; free_col < ncols; ++free_col) {
        if (pivot_of_col[free_col] >= 0)
            continue;
        SparseRow<K> v;
        v.emplace_back(free_col, K(1));
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
            auto it = std::lower_bound(rows[i].begin(), rows[i].end(), free_col,
                                       [](const auto& e, int c) { return e.first < c; });
            if (it != rows[i].end() && it->first == free_col)
                v.emplace_back(pivot_cols[i], -it->second);
        }
        std::sort(v.begin(), v.end());
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Is v in the row span of `span`? `span` must already be in rref form
/// (output of sparse_rref); v is reduced against it.
template <typename K>
bool in_row_span(SparseRow<K> v, const SparseRows<K>& span, const std::vector<int>& pivot_cols)
{
    for (std::size_t i = 0; i < span.size() && !v.empty(); ++i) {
        auto it = std::lower_bound(v.begin(), v.end(), pivot_cols[i],
                                   [](const auto& e, int c) { return e.first < c; });
        if (it != v.end() && it->first == pivot_cols[i])
            v = sparse_axpy(v, K(-it->second), span[i]);
    }
    return v.empty();
}

// --- dense helpers --------------------------------------------------------

template <typename K>
SparseRows<K> to_sparse_rows(const DenseMatrix<K>& m)
{
    SparseRows<K> rows(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!is_zero(m(i, j)))
                rows[i].emplace_back(static_cast<int>(j), m(i, j));
    return rows;
}

template <typename K>
DenseMatrix<K> to_dense(const SparseRows<K>& rows, int ncols)
{
    DenseMatrix<K> m = DenseMatrix<K>::Zero(rows.size(), ncols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [c, v] : rows[i])
            m(static_cast<int>(i), c) = v;
    return m;
}

template <typename K>
int rank(const DenseMatrix<K>& m)
{
    return sparse_rank(to_sparse_rows(m), static_cast<int>(m.cols()));
}

/// Solves A x = b exactly. Returns nullopt when inconsistent.
template <typename K>
std::optional<DenseVector<K>> solve(const DenseMatrix<K>& a, const DenseVector<K>& b)
{
    const int n = static_cast<int>(a.cols());
    SparseRows<K> rows = to_sparse_rows(a);
    for (Eigen::Index i = 0; i < b.size(); ++i)
        if (!is_zero(b(i)))
            rows[i].emplace_back(n, b(i));
    std::vector<int> pivots = sparse_rref(rows, n + 1);
    DenseVector<K> x = DenseVector<K>::Zero(n);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == n)
            return std::nullopt; // row (0 ... 0 | 1): inconsistent
        auto it = std::lower_bound(rows[i].begin(), rows[i].end(), n,
                                   [](const auto& e, int c) { return e.first < c; });
        x(pivots[i]) = (it != rows[i].end() && it->first == n) ? it->second : K(0);
    }
    return x;
}

} // namespace ainfty
