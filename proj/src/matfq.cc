// Copyright 2026 The nsumbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nsumbox/matfq.hpp"

#include <sstream>

#include "nsumbox/error.hpp"

namespace nsumbox {

namespace {

void require_same_shape(const MatrixFq &a, const MatrixFq &b) {
    require_same_field(a.field(), b.field());
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::kDimMismatch, "shapes differ");
    }
}

}  // namespace

MatrixFq::MatrixFq(Field field, size_t rows, size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {
}

MatrixFq MatrixFq::identity(const Field &field, size_t n) {
    MatrixFq out(field, n, n);
    for (size_t i = 0; i < n; i++) {
        out.data_[i * n + i] = 1;
    }
    return out;
}

MatrixFq MatrixFq::from_rows(const Field &field, const std::vector<std::vector<Elem>> &rows) {
    size_t ncols = rows.empty() ? 0 : rows[0].size();
    MatrixFq out(field, rows.size(), ncols);
    for (size_t i = 0; i < rows.size(); i++) {
        if (rows[i].size() != ncols) {
            throw Error(ErrorCode::kDimMismatch, "ragged rows");
        }
        for (size_t j = 0; j < ncols; j++) {
            out.set(i, j, rows[i][j]);
        }
    }
    return out;
}

MatrixFq MatrixFq::column(const Field &field, std::span<const Elem> values) {
    MatrixFq out(field, values.size(), 1);
    for (size_t i = 0; i < values.size(); i++) {
        out.set(i, 0, values[i]);
    }
    return out;
}

MatrixFq MatrixFq::diagonal(const Field &field, std::span<const Elem> values) {
    MatrixFq out(field, values.size(), values.size());
    for (size_t i = 0; i < values.size(); i++) {
        out.set(i, i, values[i]);
    }
    return out;
}

void MatrixFq::set(size_t i, size_t j, Elem value) {
    if (i >= rows_ || j >= cols_) {
        throw Error(ErrorCode::kIndexOutOfRange, "matrix index out of range");
    }
    if (!field_.contains(value)) {
        throw Error(ErrorCode::kInvalidSpec, "entry " + std::to_string(value) + " not in " + field_.name());
    }
    data_[i * cols_ + j] = value;
}

std::vector<Elem> MatrixFq::row(size_t i) const {
    return std::vector<Elem>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

std::vector<Elem> MatrixFq::col(size_t j) const {
    std::vector<Elem> out(rows_);
    for (size_t i = 0; i < rows_; i++) {
        out[i] = data_[i * cols_ + j];
    }
    return out;
}

MatrixFq MatrixFq::transpose() const {
    MatrixFq out(field_, cols_, rows_);
    for (size_t i = 0; i < rows_; i++) {
        for (size_t j = 0; j < cols_; j++) {
            out.data_[j * rows_ + i] = data_[i * cols_ + j];
        }
    }
    return out;
}

MatrixFq MatrixFq::block(size_t row0, size_t col0, size_t nrows, size_t ncols) const {
    if (row0 + nrows > rows_ || col0 + ncols > cols_) {
        throw Error(ErrorCode::kDimMismatch, "block out of range");
    }
    MatrixFq out(field_, nrows, ncols);
    for (size_t i = 0; i < nrows; i++) {
        for (size_t j = 0; j < ncols; j++) {
            out.data_[i * ncols + j] = data_[(row0 + i) * cols_ + col0 + j];
        }
    }
    return out;
}

MatrixFq MatrixFq::select_columns(std::span<const size_t> indices) const {
    MatrixFq out(field_, rows_, indices.size());
    for (size_t k = 0; k < indices.size(); k++) {
        if (indices[k] >= cols_) {
            throw Error(ErrorCode::kIndexOutOfRange, "column index out of range");
        }
        for (size_t i = 0; i < rows_; i++) {
            out.data_[i * indices.size() + k] = data_[i * cols_ + indices[k]];
        }
    }
    return out;
}

bool MatrixFq::is_zero() const {
    for (auto v : data_) {
        if (v != 0) {
            return false;
        }
    }
    return true;
}

std::vector<Elem> MatrixFq::apply(std::span<const Elem> x) const {
    if (x.size() != cols_) {
        throw Error(ErrorCode::kDimMismatch, "vector length does not match column count");
    }
    std::vector<Elem> out(rows_, 0);
    for (size_t i = 0; i < rows_; i++) {
        Elem acc = 0;
        for (size_t j = 0; j < cols_; j++) {
            if (!field_.contains(x[j])) {
                throw Error(ErrorCode::kInvalidSpec, "vector entry not in field");
            }
            acc = field_.add(acc, field_.mul(data_[i * cols_ + j], x[j]));
        }
        out[i] = acc;
    }
    return out;
}

std::string MatrixFq::to_string() const {
    std::ostringstream out;
    for (size_t i = 0; i < rows_; i++) {
        for (size_t j = 0; j < cols_; j++) {
            out << (j ? " " : "") << data_[i * cols_ + j];
        }
        out << "\n";
    }
    return out.str();
}

bool operator==(const MatrixFq &a, const MatrixFq &b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

MatrixFq operator+(const MatrixFq &a, const MatrixFq &b) {
    require_same_shape(a, b);
    MatrixFq out = a;
    for (size_t k = 0; k < out.data_.size(); k++) {
        out.data_[k] = a.field_.add(a.data_[k], b.data_[k]);
    }
    return out;
}

MatrixFq operator-(const MatrixFq &a, const MatrixFq &b) {
    require_same_shape(a, b);
    MatrixFq out = a;
    for (size_t k = 0; k < out.data_.size(); k++) {
        out.data_[k] = a.field_.sub(a.data_[k], b.data_[k]);
    }
    return out;
}

MatrixFq operator-(const MatrixFq &a) {
    MatrixFq out = a;
    for (auto &v : out.data_) {
        v = a.field_.neg(v);
    }
    return out;
}

MatrixFq operator*(const MatrixFq &a, const MatrixFq &b) {
    require_same_field(a.field_, b.field_);
    if (a.cols_ != b.rows_) {
        throw Error(ErrorCode::kDimMismatch, "inner dimensions differ");
    }
    const Field &f = a.field_;
    MatrixFq out(f, a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; i++) {
        for (size_t k = 0; k < a.cols_; k++) {
            Elem aik = a.data_[i * a.cols_ + k];
            if (aik == 0) {
                continue;
            }
            for (size_t j = 0; j < b.cols_; j++) {
                Elem &o = out.data_[i * b.cols_ + j];
                o = f.add(o, f.mul(aik, b.data_[k * b.cols_ + j]));
            }
        }
    }
    return out;
}

MatrixFq operator*(Elem c, const MatrixFq &a) {
    if (!a.field_.contains(c)) {
        throw Error(ErrorCode::kInvalidSpec, "scalar not in field");
    }
    MatrixFq out = a;
    for (auto &v : out.data_) {
        v = a.field_.mul(c, v);
    }
    return out;
}

MatrixFq hstack(const MatrixFq &a, const MatrixFq &b) {
    require_same_field(a.field(), b.field());
    if (a.rows() != b.rows()) {
        throw Error(ErrorCode::kDimMismatch, "hstack row counts differ");
    }
    MatrixFq out(a.field(), a.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < a.cols(); j++) {
            out.set(i, j, a(i, j));
        }
        for (size_t j = 0; j < b.cols(); j++) {
            out.set(i, a.cols() + j, b(i, j));
        }
    }
    return out;
}

MatrixFq vstack(const MatrixFq &a, const MatrixFq &b) {
    return hstack(a.transpose(), b.transpose()).transpose();
}

MatrixFq block_diag(const MatrixFq &a, const MatrixFq &b) {
    require_same_field(a.field(), b.field());
    MatrixFq out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < a.cols(); j++) {
            out.set(i, j, a(i, j));
        }
    }
    for (size_t i = 0; i < b.rows(); i++) {
        for (size_t j = 0; j < b.cols(); j++) {
            out.set(a.rows() + i, a.cols() + j, b(i, j));
        }
    }
    return out;
}

RrefResult rref_decompose(const MatrixFq &a) {
    const Field &f = a.field();
    size_t m = a.rows(), n = a.cols();
    std::vector<std::vector<Elem>> rows(m), tr(m);
    for (size_t i = 0; i < m; i++) {
        rows[i] = a.row(i);
        tr[i].assign(m, 0);
        tr[i][i] = 1;
    }
    auto axpy = [&](std::vector<Elem> &dst, Elem c, const std::vector<Elem> &src) {
        for (size_t k = 0; k < dst.size(); k++) {
            dst[k] = f.sub(dst[k], f.mul(c, src[k]));
        }
    };
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t col = 0; col < n && r < m; col++) {
        size_t sel = r;
        while (sel < m && rows[sel][col] == 0) {
            sel++;
        }
        if (sel == m) {
            continue;
        }
        std::swap(rows[r], rows[sel]);
        std::swap(tr[r], tr[sel]);
        Elem scale = f.inv(rows[r][col]);
        for (auto &v : rows[r]) {
            v = f.mul(scale, v);
        }
        for (auto &v : tr[r]) {
            v = f.mul(scale, v);
        }
        for (size_t i = 0; i < m; i++) {
            if (i != r && rows[i][col] != 0) {
                Elem c = rows[i][col];
                axpy(rows[i], c, rows[r]);
                axpy(tr[i], c, tr[r]);
            }
        }
        pivots.push_back(col);
        r++;
    }
    MatrixFq rref(f, m, n), transform(f, m, m);
    for (size_t i = 0; i < m; i++) {
        for (size_t j = 0; j < n; j++) {
            rref.set(i, j, rows[i][j]);
        }
        for (size_t j = 0; j < m; j++) {
            transform.set(i, j, tr[i][j]);
        }
    }
    return {std::move(rref), r, std::move(pivots), std::move(transform)};
}

size_t rank(const MatrixFq &a) {
    SpanBuilder span(a.field(), a.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        span.insert(a.row(i));
    }
    return span.size();
}

MatrixFq inverse(const MatrixFq &a) {
    if (!a.is_square()) {
        throw Error(ErrorCode::kDimMismatch, "inverse of a non-square matrix");
    }
    RrefResult res = rref_decompose(a);
    if (res.rank != a.rows()) {
        throw Error(ErrorCode::kSingular, "matrix is singular");
    }
    return res.transform;
}

MatrixFq nullspace(const MatrixFq &a) {
    const Field &f = a.field();
    RrefResult res = rref_decompose(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : res.pivots) {
        is_pivot[p] = true;
    }
    MatrixFq basis(f, a.cols(), a.cols() - res.rank);
    size_t k = 0;
    for (size_t free = 0; free < a.cols(); free++) {
        if (is_pivot[free]) {
            continue;
        }
        basis.set(free, k, 1);
        for (size_t i = 0; i < res.rank; i++) {
            basis.set(res.pivots[i], k, f.neg(res.rref(i, free)));
        }
        k++;
    }
    return basis;
}

LinearSolution solve_linear(const MatrixFq &a, const MatrixFq &b) {
    require_same_field(a.field(), b.field());
    if (a.rows() != b.rows()) {
        throw Error(ErrorCode::kDimMismatch, "solve_linear row counts differ");
    }
    const Field &f = a.field();
    RrefResult res = rref_decompose(hstack(a, b));
    size_t n = a.cols();
    LinearSolution out{LinearSolution::Kind::kInconsistent, std::nullopt, std::nullopt};
    size_t rank_a = 0;
    for (auto p : res.pivots) {
        if (p >= n) {
            return out;
        }
        rank_a++;
    }
    MatrixFq x(f, n, b.cols());
    for (size_t i = 0; i < rank_a; i++) {
        for (size_t j = 0; j < b.cols(); j++) {
            x.set(res.pivots[i], j, res.rref(i, n + j));
        }
    }
    out.kind = rank_a == n ? LinearSolution::Kind::kUnique : LinearSolution::Kind::kParametric;
    out.particular = std::move(x);
    out.nullspace_basis = nullspace(a);
    return out;
}

MatrixFq permutation_matrix(const Field &field, std::span<const size_t> pi) {
    size_t n = pi.size();
    std::vector<bool> seen(n, false);
    for (auto v : pi) {
        if (v >= n || seen[v]) {
            throw Error(ErrorCode::kNotAPermutation, "not a permutation of [0, n)");
        }
        seen[v] = true;
    }
    MatrixFq out(field, n, n);
    for (size_t j = 0; j < n; j++) {
        out.set(pi[j], j, 1);
    }
    return out;
}

SpanBuilder::SpanBuilder(Field field, size_t dim) : field_(std::move(field)), dim_(dim) {
}

std::vector<Elem> SpanBuilder::reduce(std::span<const Elem> v) const {
    if (v.size() != dim_) {
        throw Error(ErrorCode::kDimMismatch, "vector length differs from span dimension");
    }
    std::vector<Elem> w(v.begin(), v.end());
    for (size_t k = 0; k < basis_.size(); k++) {
        Elem c = w[pivots_[k]];
        if (c == 0) {
            continue;
        }
        for (size_t i = 0; i < dim_; i++) {
            w[i] = field_.sub(w[i], field_.mul(c, basis_[k][i]));
        }
    }
    return w;
}

bool SpanBuilder::contains(std::span<const Elem> v) const {
    for (auto c : reduce(v)) {
        if (c != 0) {
            return false;
        }
    }
    return true;
}

bool SpanBuilder::insert(std::span<const Elem> v) {
    std::vector<Elem> w = reduce(v);
    for (size_t i = 0; i < dim_; i++) {
        if (w[i] != 0) {
            Elem s = field_.inv(w[i]);
            for (auto &c : w) {
                c = field_.mul(s, c);
            }
            basis_.push_back(std::move(w));
            pivots_.push_back(i);
            return true;
        }
    }
    return false;
}

}  // namespace nsumbox
