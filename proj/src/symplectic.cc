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

#include "nsumbox/symplectic.hpp"

#include <random>

#include "nsumbox/error.hpp"

namespace nsumbox {

namespace {

constexpr std::uint64_t kEnumerationLimit = 1000000;
constexpr int kRandomSamples = 10000;

void require_even_rows(const MatrixFq &m) {
    if (m.rows() % 2 != 0) {
        throw Error(ErrorCode::kBadShape, "expected an even row count");
    }
}

bool is_diagonal(const MatrixFq &m) {
    if (!m.is_square()) {
        return false;
    }
    for (size_t i = 0; i < m.rows(); i++) {
        for (size_t j = 0; j < m.cols(); j++) {
            if (i != j && m(i, j) != 0) {
                return false;
            }
        }
    }
    return true;
}

// omega(a, b) = aᵀ J b for vectors of length 2n.
Elem omega(const Field &f, const std::vector<Elem> &a, const std::vector<Elem> &b) {
    size_t n = a.size() / 2;
    Elem acc = 0;
    for (size_t i = 0; i < n; i++) {
        acc = f.add(acc, f.sub(f.mul(a[n + i], b[i]), f.mul(a[i], b[n + i])));
    }
    return acc;
}

// Some h with omega(g_j, h) = -[j == target] for all g_j and omega(h_k, h) = 0 for all h_k.
std::vector<Elem> find_partner(const Field &f, const std::vector<std::vector<Elem>> &gs,
                               const std::vector<std::vector<Elem>> &hs, size_t target, size_t dim) {
    MatrixFq jm = build_J(f, dim / 2);
    MatrixFq a(f, gs.size() + hs.size(), dim);
    MatrixFq b(f, gs.size() + hs.size(), 1);
    size_t row = 0;
    for (size_t j = 0; j < gs.size(); j++, row++) {
        auto r = (MatrixFq::column(f, gs[j]).transpose() * jm).row(0);
        for (size_t k = 0; k < dim; k++) {
            a.set(row, k, r[k]);
        }
        b.set(row, 0, j == target ? f.neg(1) : 0);
    }
    for (const auto &h : hs) {
        auto r = (MatrixFq::column(f, h).transpose() * jm).row(0);
        for (size_t k = 0; k < dim; k++) {
            a.set(row, k, r[k]);
        }
        row++;
    }
    LinearSolution sol = solve_linear(a, b);
    if (!sol.particular) {
        throw Error(ErrorCode::kAlgorithmFailure, "no symplectic partner exists");
    }
    return sol.particular->col(0);
}

MatrixFq columns_to_matrix(const Field &f, const std::vector<std::vector<Elem>> &cols, size_t dim) {
    MatrixFq out(f, dim, cols.size());
    for (size_t j = 0; j < cols.size(); j++) {
        for (size_t i = 0; i < dim; i++) {
            out.set(i, j, cols[j][i]);
        }
    }
    return out;
}

}  // namespace

MatrixFq build_J(const Field &field, size_t n) {
    MatrixFq j(field, 2 * n, 2 * n);
    for (size_t i = 0; i < n; i++) {
        j.set(i, n + i, field.neg(1));
        j.set(n + i, i, 1);
    }
    return j;
}

MatrixFq symplectic_gram(const MatrixFq &a, const MatrixFq &b) {
    if (a.rows() != b.rows() || a.rows() % 2 != 0) {
        throw Error(ErrorCode::kDimMismatch, "symplectic_gram needs equal even row counts");
    }
    return a.transpose() * build_J(a.field(), a.rows() / 2) * b;
}

bool is_symplectic(const MatrixFq &f) {
    if (!f.is_square() || f.rows() % 2 != 0) {
        throw Error(ErrorCode::kDimMismatch, "is_symplectic needs a square matrix of even size");
    }
    return symplectic_gram(f, f) == build_J(f.field(), f.rows() / 2);
}

MatrixFq symplectic_inverse(const MatrixFq &f) {
    if (!is_symplectic(f)) {
        throw Error(ErrorCode::kNotSymplectic, "matrix is not symplectic");
    }
    MatrixFq j = build_J(f.field(), f.rows() / 2);
    return j.transpose() * f.transpose() * j;
}

bool is_self_orthogonal(const MatrixFq &g) {
    require_even_rows(g);
    return symplectic_gram(g, g).is_zero();
}

bool is_sso(const MatrixFq &m) {
    if (m.rows() != 2 * m.cols() || m.cols() == 0) {
        throw Error(ErrorCode::kBadShape, "is_sso expects a 2N×N matrix");
    }
    return is_self_orthogonal(m) && rank(m) == m.cols();
}

MatrixFq symplectic_complete(const MatrixFq &g) {
    require_even_rows(g);
    const Field &f = g.field();
    size_t dim = g.rows(), n = dim / 2, kappa = g.cols();
    if (!is_self_orthogonal(g)) {
        throw Error(ErrorCode::kNotSelfOrthogonal, "gᵀJg != 0");
    }
    if (rank(g) != kappa) {
        throw Error(ErrorCode::kRankDeficient, "g does not have full column rank");
    }
    std::vector<std::vector<Elem>> gs, hs;
    for (size_t j = 0; j < kappa; j++) {
        gs.push_back(g.col(j));
    }
    for (size_t i = 0; i < kappa; i++) {
        hs.push_back(find_partner(f, gs, hs, i, dim));
    }
    for (size_t e = 0; e < dim && gs.size() < n; e++) {
        std::vector<Elem> c(dim, 0);
        c[e] = 1;
        std::vector<Elem> proj = c;
        for (size_t k = 0; k < gs.size(); k++) {
            Elem a = omega(f, c, hs[k]);
            Elem b = omega(f, c, gs[k]);
            for (size_t i = 0; i < dim; i++) {
                proj[i] = f.add(proj[i], f.sub(f.mul(a, gs[k][i]), f.mul(b, hs[k][i])));
            }
        }
        bool nonzero = false;
        for (auto v : proj) {
            nonzero = nonzero || v != 0;
        }
        if (!nonzero) {
            continue;
        }
        gs.push_back(proj);
        hs.push_back(find_partner(f, gs, hs, gs.size() - 1, dim));
    }
    if (gs.size() != n) {
        throw Error(ErrorCode::kAlgorithmFailure, "standard basis did not complete the symplectic basis");
    }
    MatrixFq out = hstack(columns_to_matrix(f, gs, dim), columns_to_matrix(f, hs, dim));
    if (!is_symplectic(out)) {
        throw Error(ErrorCode::kAlgorithmFailure, "completion is not symplectic");
    }
    return out;
}

MatrixFq gperp_extend(const MatrixFq &g) {
    MatrixFq full = symplectic_complete(g);
    size_t n = g.rows() / 2, kappa = g.cols();
    MatrixFq out = hstack(g, full.block(0, kappa, 2 * n, n - kappa));
    return hstack(out, full.block(0, n + kappa, 2 * n, n - kappa));
}

LitTransform::LitTransform(MatrixFq l1, MatrixFq l2, MatrixFq l3, MatrixFq l4)
    : l1_(std::move(l1)), l2_(std::move(l2)), l3_(std::move(l3)), l4_(std::move(l4)) {
    for (const MatrixFq *m : {&l1_, &l2_, &l3_, &l4_}) {
        require_same_field(m->field(), l1_.field());
        if (!is_diagonal(*m) || m->rows() != l1_.rows()) {
            throw Error(ErrorCode::kNotALit, "LIT blocks must be diagonal N×N");
        }
    }
    const Field &f = l1_.field();
    for (size_t i = 0; i < n(); i++) {
        if (f.sub(f.mul(l1_(i, i), l4_(i, i)), f.mul(l2_(i, i), l3_(i, i))) == 0) {
            throw Error(ErrorCode::kNotALit, "per-transmitter block is singular");
        }
    }
}

LitTransform LitTransform::identity(const Field &field, size_t n) {
    return LitTransform(MatrixFq::identity(field, n), MatrixFq(field, n, n), MatrixFq(field, n, n),
                        MatrixFq::identity(field, n));
}

LitTransform LitTransform::from_matrix(const MatrixFq &m) {
    if (!m.is_square() || m.rows() % 2 != 0) {
        throw Error(ErrorCode::kDimMismatch, "LIT matrix must be 2N×2N");
    }
    size_t n = m.rows() / 2;
    try {
        return LitTransform(m.block(0, 0, n, n), m.block(0, n, n, n), m.block(n, 0, n, n), m.block(n, n, n, n));
    } catch (const Error &e) {
        throw Error(ErrorCode::kNotALit, e.what());
    }
}

MatrixFq LitTransform::matrix() const {
    return vstack(hstack(l1_, l2_), hstack(l3_, l4_));
}

LitTransform LitTransform::inverse() const {
    const Field &f = l1_.field();
    size_t n = this->n();
    MatrixFq a(f, n, n), b(f, n, n), c(f, n, n), d(f, n, n);
    for (size_t i = 0; i < n; i++) {
        Elem det_inv = f.inv(f.sub(f.mul(l1_(i, i), l4_(i, i)), f.mul(l2_(i, i), l3_(i, i))));
        a.set(i, i, f.mul(det_inv, l4_(i, i)));
        b.set(i, i, f.neg(f.mul(det_inv, l2_(i, i))));
        c.set(i, i, f.neg(f.mul(det_inv, l3_(i, i))));
        d.set(i, i, f.mul(det_inv, l1_(i, i)));
    }
    return LitTransform(a, b, c, d);
}

bool operator==(const LitTransform &a, const LitTransform &b) {
    return a.l1_ == b.l1_ && a.l2_ == b.l2_ && a.l3_ == b.l3_ && a.l4_ == b.l4_;
}

LitTransform signed_swap_lit(const MatrixFq &sigma) {
    const Field &f = sigma.field();
    size_t n = sigma.rows();
    if (!is_diagonal(sigma)) {
        throw Error(ErrorCode::kDimMismatch, "sigma must be square diagonal");
    }
    for (size_t i = 0; i < n; i++) {
        if (sigma(i, i) > 1) {
            throw Error(ErrorCode::kInvalidSpec, "sigma must be 0/1");
        }
    }
    MatrixFq keep = MatrixFq::identity(f, n) - sigma;
    return LitTransform(keep, sigma, -sigma, keep);
}

SignedSwap signed_column_swap(const MatrixFq &mt) {
    if (mt.cols() != 2 * mt.rows() || !is_sso(mt.transpose())) {
        throw Error(ErrorCode::kNotSSO, "mtᵀ is not SSO");
    }
    const Field &f = mt.field();
    size_t n = mt.rows();
    MatrixFq out = mt;
    MatrixFq sigma(f, n, n);
    SpanBuilder fixed(f, n);
    for (size_t i = 0; i < n; i++) {
        std::vector<Elem> left = out.col(i);
        std::vector<Elem> right = out.col(n + i);
        if (fixed.insert(left)) {
            continue;
        }
        if (!fixed.insert(right)) {
            throw Error(ErrorCode::kAlgorithmFailure, "both columns dependent at position " + std::to_string(i));
        }
        for (size_t k = 0; k < n; k++) {
            out.set(k, i, f.neg(right[k]));
            out.set(k, n + i, left[k]);
        }
        sigma.set(i, i, 1);
    }
    return {std::move(out), std::move(sigma)};
}

StandardForm to_standard_form(const MatrixFq &mt) {
    SignedSwap swapped = signed_column_swap(mt);
    size_t n = mt.rows();
    MatrixFq p = swapped.m_out.block(0, 0, n, n);
    MatrixFq s = inverse(p) * swapped.m_out.block(0, n, n, n);
    // Λ_swap⁻¹ = (I-Σ, -Σ; Σ, I-Σ).
    LitTransform lambda = signed_swap_lit(swapped.sigma).inverse();
    if (!(s == s.transpose())) {
        throw Error(ErrorCode::kAlgorithmFailure, "standard form is not symmetric");
    }
    if (!(p * hstack(MatrixFq::identity(mt.field(), n), s) * lambda.matrix() == mt)) {
        throw Error(ErrorCode::kAlgorithmFailure, "standard form does not reconstruct the input");
    }
    return {std::move(s), std::move(p), std::move(lambda)};
}

Feasibility lit_feasibility(const MatrixFq &mt) {
    const Field &f = mt.field();
    size_t n = mt.rows();
    if (n == 0 || mt.cols() != 2 * n || rank(mt) != n) {
        return {std::nullopt, true};
    }
    MatrixFq ml = mt.block(0, 0, n, n), mr = mt.block(0, n, n, n);
    // Entry (i, j) of (M_l | M_r Δ) J (M_l | M_r Δ)ᵀ is linear in the diagonal of Δ.
    MatrixFq constraints(f, n * (n - 1) / 2, n);
    size_t row = 0;
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++, row++) {
            for (size_t k = 0; k < n; k++) {
                constraints.set(row, k, f.sub(f.mul(mr(i, k), ml(j, k)), f.mul(ml(i, k), mr(j, k))));
            }
        }
    }
    auto accept = [&](const std::vector<Elem> &d) -> std::optional<MatrixFq> {
        for (auto v : d) {
            if (v == 0) {
                return std::nullopt;
            }
        }
        for (auto v : constraints.apply(d)) {
            if (v != 0) {
                return std::nullopt;
            }
        }
        return MatrixFq::diagonal(f, d);
    };
    if (auto hit = accept(std::vector<Elem>(n, 1))) {
        return {hit, true};
    }
    MatrixFq basis = nullspace(constraints);
    size_t free = basis.cols();
    if (free == 0) {
        return {std::nullopt, true};
    }
    auto combine = [&](const std::vector<Elem> &coef) {
        std::vector<Elem> d(n, 0);
        for (size_t t = 0; t < free; t++) {
            if (coef[t] == 0) {
                continue;
            }
            for (size_t k = 0; k < n; k++) {
                d[k] = f.add(d[k], f.mul(coef[t], basis(k, t)));
            }
        }
        return d;
    };
    std::uint64_t total = 1;
    bool enumerable = true;
    for (size_t t = 0; t < free && enumerable; t++) {
        total *= f.q();
        enumerable = total <= kEnumerationLimit;
    }
    std::vector<Elem> coef(free, 0);
    if (enumerable) {
        for (std::uint64_t idx = 0; idx < total; idx++) {
            std::uint64_t v = idx;
            for (size_t t = free; t-- > 0;) {
                coef[t] = static_cast<Elem>(v % f.q());
                v /= f.q();
            }
            if (auto hit = accept(combine(coef))) {
                return {hit, true};
            }
        }
        return {std::nullopt, true};
    }
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<Elem> digit(0, f.q() - 1);
    for (int s = 0; s < kRandomSamples; s++) {
        for (auto &c : coef) {
            c = digit(rng);
        }
        if (auto hit = accept(combine(coef))) {
            return {hit, false};
        }
    }
    return {std::nullopt, false};
}

MatrixFq apply_lit(const MatrixFq &mt, const LitTransform &lam, const MatrixFq &p) {
    size_t n = mt.rows();
    if (mt.cols() != 2 * n || lam.n() != n || p.rows() != n || p.cols() != n) {
        throw Error(ErrorCode::kDimMismatch, "apply_lit shape mismatch");
    }
    if (rank(p) != n) {
        throw Error(ErrorCode::kSingular, "receiver transform is singular");
    }
    return p * mt * lam.matrix();
}

}  // namespace nsumbox
