#pragma once

// Dense matrices and exact Gauss-Jordan elimination over a FieldCtx.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "field.hpp"

namespace mnc {

using Vec = std::vector<FieldElem>;

class Matrix {
public:
    Matrix(FieldCtx ctx, size_t rows, size_t cols)
        : ctx_(std::move(ctx)), rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(const FieldCtx& ctx, size_t n) {
        Matrix m(ctx, n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = ctx.one();
        return m;
    }

    static Matrix from_columns(const FieldCtx& ctx, size_t dim, const std::vector<Vec>& cols) {
        Matrix m(ctx, dim, cols.size());
        for (size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != dim) throw std::invalid_argument("column length mismatch");
            for (size_t i = 0; i < dim; ++i) m.at(i, j) = cols[j][i];
        }
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const FieldCtx& ctx() const { return ctx_; }

    FieldElem at(size_t r, size_t c) const { return data_[r * cols_ + c]; }
    FieldElem& at(size_t r, size_t c) { return data_[r * cols_ + c]; }

    Vec column(size_t j) const {
        Vec v(rows_);
        for (size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }

    Matrix select_columns(const std::vector<int>& idx) const {
        Matrix m(ctx_, rows_, idx.size());
        for (size_t j = 0; j < idx.size(); ++j) {
            if (idx[j] < 0 || static_cast<size_t>(idx[j]) >= cols_)
                throw std::out_of_range("column index out of range");
            for (size_t i = 0; i < rows_; ++i) m.at(i, j) = at(i, idx[j]);
        }
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.ctx_ == b.ctx_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    FieldCtx ctx_;
    size_t rows_, cols_;
    std::vector<FieldElem> data_;
};

struct RrefResult {
    Matrix reduced;
    std::vector<int> pivot_cols;
    int rank() const { return static_cast<int>(pivot_cols.size()); }
};

// Reduced row echelon form; deterministic (first nonzero pivot per column).
inline RrefResult rref(const Matrix& a) {
    const FieldCtx& f = a.ctx();
    Matrix m = a;
    std::vector<int> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        size_t sel = row;
        while (sel < m.rows() && m.at(sel, col) == f.zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(row, j), m.at(sel, j));
        const FieldElem scale = f.inv(m.at(row, col));
        for (size_t j = 0; j < m.cols(); ++j) m.at(row, j) = f.mul(m.at(row, j), scale);
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col) == f.zero()) continue;
            const FieldElem factor = m.at(i, col);
            for (size_t j = 0; j < m.cols(); ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(row, j)));
        }
        pivots.push_back(static_cast<int>(col));
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

inline int rank(const Matrix& a) { return rref(a).rank(); }

// Coefficients expressing target as a combination of the given vectors,
// or nullopt when target is outside their span. Free coefficients are zero.
inline std::optional<Vec> in_span(const Vec& target, const std::vector<Vec>& vectors,
                                  const FieldCtx& ctx) {
    const size_t dim = target.size();
    for (const auto& v : vectors)
        if (v.size() != dim) throw std::invalid_argument("span vectors must share the target's length");
    const size_t k = vectors.size();
    Matrix m(ctx, dim, k + 1);
    for (size_t j = 0; j < k; ++j)
        for (size_t i = 0; i < dim; ++i) m.at(i, j) = vectors[j][i];
    for (size_t i = 0; i < dim; ++i) m.at(i, k) = target[i];
    const RrefResult r = rref(m);
    Vec coeffs(k, ctx.zero());
    for (size_t i = 0; i < r.pivot_cols.size(); ++i) {
        if (static_cast<size_t>(r.pivot_cols[i]) == k) return std::nullopt;
        coeffs[r.pivot_cols[i]] = r.reduced.at(i, k);
    }
    return coeffs;
}

inline FieldElem dot(const Vec& a, const Vec& b, const FieldCtx& ctx) {
    if (a.size() != b.size()) throw std::invalid_argument("dot product length mismatch");
    FieldElem r = ctx.zero();
    for (size_t i = 0; i < a.size(); ++i) r = ctx.add(r, ctx.mul(a[i], b[i]));
    return r;
}

inline Vec standard_basis(const FieldCtx& ctx, size_t len, size_t i) {
    Vec v(len, ctx.zero());
    if (i >= len) throw std::out_of_range("basis index out of range");
    v[i] = ctx.one();
    return v;
}

// Enumeration order for vectors in F^len: coordinate 0 is the most
// significant base-q digit of the index.
inline Vec vector_from_index(const FieldCtx& ctx, size_t len, uint64_t idx) {
    Vec v(len);
    for (size_t i = len; i-- > 0;) {
        v[i] = ctx.element(idx % ctx.order());
        idx /= ctx.order();
    }
    if (idx != 0) throw std::out_of_range("vector index out of range");
    return v;
}

inline uint64_t vector_index(const FieldCtx& ctx, const Vec& v) {
    uint64_t idx = 0;
    for (const FieldElem e : v) idx = idx * ctx.order() + e.value;
    return idx;
}

inline Matrix embedded(const FieldEmbedding& emb, const Matrix& a) {
    if (!(a.ctx() == emb.from())) throw std::invalid_argument("matrix field does not match embedding source");
    Matrix m(emb.to(), a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) m.at(i, j) = emb(a.at(i, j));
    return m;
}

}  // namespace mnc
