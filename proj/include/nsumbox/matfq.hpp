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

#ifndef NSUMBOX_MATFQ_HPP_
#define NSUMBOX_MATFQ_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nsumbox/gf.hpp"

namespace nsumbox {

/// Dense row-major matrix over GF(q), entries in canonical encoding.
class MatrixFq {
   public:
    MatrixFq(Field field, size_t rows, size_t cols);

    static MatrixFq identity(const Field &field, size_t n);
    static MatrixFq from_rows(const Field &field, const std::vector<std::vector<Elem>> &rows);
    static MatrixFq column(const Field &field, std::span<const Elem> values);
    static MatrixFq diagonal(const Field &field, std::span<const Elem> values);

    const Field &field() const {
        return field_;
    }
    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    Elem operator()(size_t i, size_t j) const {
        return data_[i * cols_ + j];
    }
    void set(size_t i, size_t j, Elem value);
    const std::vector<Elem> &data() const {
        return data_;
    }

    std::vector<Elem> row(size_t i) const;
    std::vector<Elem> col(size_t j) const;
    MatrixFq transpose() const;
    MatrixFq block(size_t row0, size_t col0, size_t nrows, size_t ncols) const;
    MatrixFq select_columns(std::span<const size_t> indices) const;
    bool is_zero() const;
    bool is_square() const {
        return rows_ == cols_;
    }
    /// Matrix-vector product.
    std::vector<Elem> apply(std::span<const Elem> x) const;
    std::string to_string() const;

    friend bool operator==(const MatrixFq &a, const MatrixFq &b);
    friend MatrixFq operator+(const MatrixFq &a, const MatrixFq &b);
    friend MatrixFq operator-(const MatrixFq &a, const MatrixFq &b);
    friend MatrixFq operator-(const MatrixFq &a);
    friend MatrixFq operator*(const MatrixFq &a, const MatrixFq &b);
    friend MatrixFq operator*(Elem c, const MatrixFq &a);

   private:
    Field field_;
    size_t rows_;
    size_t cols_;
    std::vector<Elem> data_;
};

MatrixFq hstack(const MatrixFq &a, const MatrixFq &b);
MatrixFq vstack(const MatrixFq &a, const MatrixFq &b);
MatrixFq block_diag(const MatrixFq &a, const MatrixFq &b);

struct RrefResult {
    MatrixFq rref;
    size_t rank;
    std::vector<size_t> pivots;
    /// Invertible, with transform * a == rref.
    MatrixFq transform;
};

RrefResult rref_decompose(const MatrixFq &a);
size_t rank(const MatrixFq &a);
/// Throws Singular (or DimMismatch when not square).
MatrixFq inverse(const MatrixFq &a);
/// Basis of {x : a x = 0} as columns, one per free column in increasing order.
MatrixFq nullspace(const MatrixFq &a);

struct LinearSolution {
    enum class Kind { kUnique, kParametric, kInconsistent };
    Kind kind;
    /// Present unless inconsistent; free variables are set to zero.
    std::optional<MatrixFq> particular;
    /// Null space basis of `a` as columns (zero columns for a unique solution).
    std::optional<MatrixFq> nullspace_basis;
};

/// Solves a x = b for x (b may have several columns).
LinearSolution solve_linear(const MatrixFq &a, const MatrixFq &b);

/// Column j is e_{pi[j]}.
MatrixFq permutation_matrix(const Field &field, std::span<const size_t> pi);

/// Incrementally maintained row-echelon basis for membership tests.
class SpanBuilder {
   public:
    SpanBuilder(Field field, size_t dim);
    bool contains(std::span<const Elem> v) const;
    /// Adds v if it is independent of the current basis; returns whether it was added.
    bool insert(std::span<const Elem> v);
    size_t size() const {
        return basis_.size();
    }

   private:
    std::vector<Elem> reduce(std::span<const Elem> v) const;

    Field field_;
    size_t dim_;
    std::vector<std::vector<Elem>> basis_;
    std::vector<size_t> pivots_;
};

}  // namespace nsumbox

#endif  // NSUMBOX_MATFQ_HPP_
