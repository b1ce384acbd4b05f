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

#include "nsumbox/sumbox.hpp"

#include <random>

#include "nsumbox/error.hpp"
#include "nsumbox/symplectic.hpp"

namespace nsumbox {

namespace {

void check_generator(const MatrixFq &g) {
    if (g.rows() == 0 || g.rows() % 2 != 0 || g.cols() == 0 || g.cols() > g.rows() / 2) {
        throw Error(ErrorCode::kBadShape, "generator must be 2N×κ with 1 <= κ <= N");
    }
    if (!is_self_orthogonal(g)) {
        throw Error(ErrorCode::kNotSelfOrthogonal, "gᵀJg != 0");
    }
    if (rank(g) != g.cols()) {
        throw Error(ErrorCode::kRankDeficient, "g does not have full column rank");
    }
}

MatrixFq transfer_from(const MatrixFq &gperp, const MatrixFq &h) {
    size_t dim = gperp.rows();
    return inverse(hstack(gperp, h)).block(dim - h.cols(), 0, h.cols(), dim);
}

}  // namespace

void validate_spec(const SumBoxSpec &s) {
    auto fail = [](const std::string &why) { throw Error(ErrorCode::kInvalidSpec, why); };
    size_t dim = 2 * s.n;
    if (s.n == 0 || s.kappa == 0 || s.kappa > s.n) {
        fail("need 1 <= kappa <= n");
    }
    for (const MatrixFq *m : {&s.g, &s.gperp, &s.h, &s.m}) {
        if (!(m->field() == s.field)) {
            fail("matrix field differs from spec field");
        }
    }
    if (s.g.rows() != dim || s.g.cols() != s.kappa || s.gperp.rows() != dim || s.gperp.cols() != dim - s.kappa ||
        s.h.rows() != dim || s.h.cols() != s.kappa || s.m.rows() != s.kappa || s.m.cols() != dim) {
        fail("matrix shapes inconsistent with (n, kappa)");
    }
    if (!is_self_orthogonal(s.g) || rank(s.g) != s.kappa) {
        fail("g is not self-orthogonal of full rank");
    }
    if (!(s.gperp.block(0, 0, dim, s.kappa) == s.g)) {
        fail("g is not the leading block of gperp");
    }
    if (!symplectic_gram(s.g, s.gperp).is_zero()) {
        fail("gᵀJ gperp != 0");
    }
    if (rank(hstack(s.gperp, s.h)) != dim) {
        fail("(gperp | h) is singular");
    }
    if (!(transfer_from(s.gperp, s.h) == s.m)) {
        fail("m != (0 | I)(gperp | h)^-1");
    }
    if (rank(s.m) != s.kappa) {
        fail("m does not have full row rank");
    }
}

SumBoxSpec build_box_with_gperp(const MatrixFq &g, const MatrixFq &gperp, const std::optional<MatrixFq> &h) {
    check_generator(g);
    const Field &f = g.field();
    size_t dim = g.rows(), kappa = g.cols();
    if (gperp.rows() != dim || gperp.cols() != dim - kappa || !(gperp.block(0, 0, dim, kappa) == g) ||
        rank(gperp) != gperp.cols() || !symplectic_gram(g, gperp).is_zero()) {
        throw Error(ErrorCode::kInvalidSpec, "gperp does not extend g inside its symplectic complement");
    }
    MatrixFq completion(f, dim, kappa);
    if (h) {
        require_same_field(h->field(), f);
        if (h->rows() != dim || h->cols() != kappa || rank(hstack(gperp, *h)) != dim) {
            throw Error(ErrorCode::kBadCompletion, "(gperp | h) is not invertible");
        }
        completion = *h;
    } else {
        SpanBuilder span(f, dim);
        for (size_t j = 0; j < gperp.cols(); j++) {
            span.insert(gperp.col(j));
        }
        size_t added = 0;
        for (size_t e = 0; e < dim && added < kappa; e++) {
            std::vector<Elem> v(dim, 0);
            v[e] = 1;
            if (span.insert(v)) {
                completion.set(e, added++, 1);
            }
        }
    }
    SumBoxSpec spec{f, dim / 2, kappa, g, gperp, completion, transfer_from(gperp, completion)};
    validate_spec(spec);
    return spec;
}

SumBoxSpec build_box(const MatrixFq &g, const std::optional<MatrixFq> &h) {
    check_generator(g);
    MatrixFq gperp = g.cols() == g.rows() / 2 ? g : gperp_extend(g);
    return build_box_with_gperp(g, gperp, h);
}

SumBoxSpec box_from_transfer(const MatrixFq &mt) {
    const Field &f = mt.field();
    size_t kappa = mt.rows(), dim = mt.cols();
    if (kappa == 0 || dim % 2 != 0 || kappa > dim / 2) {
        throw Error(ErrorCode::kNotRealizable, "transfer matrix must be κ×2N with 1 <= κ <= N");
    }
    MatrixFq jm = build_J(f, dim / 2);
    if (!(mt * jm * mt.transpose()).is_zero() || rank(mt) != kappa) {
        throw Error(ErrorCode::kNotRealizable, "mt J mtᵀ != 0 or rank deficient");
    }
    // span(Jᵀ mtᵀ)'s symplectic complement is ker(mt).
    MatrixFq g = jm.transpose() * mt.transpose();
    MatrixFq gperp = kappa == dim / 2 ? g : gperp_extend(g);
    LinearSolution sol = solve_linear(mt, MatrixFq::identity(f, kappa));
    SumBoxSpec spec = build_box_with_gperp(g, gperp, *sol.particular);
    if (!(spec.m == mt)) {
        throw Error(ErrorCode::kAlgorithmFailure, "realized transfer matrix differs from the request");
    }
    return spec;
}

BoxOutput evaluate(const SumBoxSpec &spec, std::span<const Elem> x, std::uint64_t seed, bool strict) {
    if (x.size() != 2 * spec.n) {
        throw Error(ErrorCode::kDimMismatch, "input must have length 2N");
    }
    BoxOutput out{spec.m.apply(x), {}, seed};
    if (!strict) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<Elem> digit(0, spec.field.q() - 1);
        for (size_t i = spec.kappa; i < spec.n; i++) {
            out.discarded.push_back(digit(rng));
        }
    }
    return out;
}

InputAssembly::InputAssembly(Field field, size_t n)
    : field_(std::move(field)), n_(n), x_(2 * n, 0), sent_(n, false) {
}

void InputAssembly::transmit(size_t tx, Elem a, Elem b) {
    if (tx < 1 || tx > n_) {
        throw Error(ErrorCode::kIndexOutOfRange, "transmitter index must be in [1, N]");
    }
    if (!field_.contains(a) || !field_.contains(b)) {
        throw Error(ErrorCode::kInvalidSpec, "input symbol not in field");
    }
    x_[tx - 1] = a;
    x_[n_ + tx - 1] = b;
    sent_[tx - 1] = true;
}

bool InputAssembly::complete() const {
    for (bool s : sent_) {
        if (!s) {
            return false;
        }
    }
    return true;
}

std::vector<Elem> InputAssembly::x() const {
    if (!complete()) {
        throw Error(ErrorCode::kInvalidSpec, "not every transmitter has sent");
    }
    return x_;
}

}  // namespace nsumbox
