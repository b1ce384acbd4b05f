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

#include "nsumbox/qcsa.hpp"

#include <set>

#include "nsumbox/error.hpp"

namespace nsumbox {

namespace {

bool all_distinct(std::span<const Elem> a) {
    return std::set<Elem>(a.begin(), a.end()).size() == a.size();
}

std::vector<Elem> scale_answers(const Field &f, std::span<const Elem> scale, std::span<const Elem> a) {
    if (a.size() != scale.size()) {
        throw Error(ErrorCode::kDimMismatch, "answer vector must have length N");
    }
    std::vector<Elem> out(a.size());
    for (size_t i = 0; i < a.size(); i++) {
        if (!f.contains(a[i])) {
            throw Error(ErrorCode::kInvalidSpec, "answer symbol not in field");
        }
        out[i] = f.mul(scale[i], a[i]);
    }
    return out;
}

void check_box_params(const QcsaParams &params) {
    if (params.l == 0 || params.l > params.n / 2) {
        throw Error(ErrorCode::kLTooLarge, "box construction needs 1 <= L <= floor(N/2)");
    }
    if (params.field.q() < params.n + params.l) {
        throw Error(ErrorCode::kFieldTooSmall, "need q >= N + L");
    }
    validate_params(params);
}

QcsaParams with_beta(const QcsaParams &params, std::vector<Elem> beta) {
    QcsaParams out = params;
    out.beta = std::move(beta);
    return out;
}

}  // namespace

MatrixFq grs_generator(const GrsSpec &spec) {
    const Field &f = spec.field;
    if (spec.alpha.size() != spec.n || spec.u.size() != spec.n || spec.k > spec.n || !all_distinct(spec.alpha)) {
        throw Error(ErrorCode::kInvalidSpec, "GRS needs n distinct points, n multipliers and k <= n");
    }
    MatrixFq out(f, spec.n, spec.k);
    for (size_t i = 0; i < spec.n; i++) {
        if (spec.u[i] == 0 || !f.contains(spec.u[i]) || !f.contains(spec.alpha[i])) {
            throw Error(ErrorCode::kInvalidSpec, "GRS multipliers must be nonzero field elements");
        }
        Elem power = spec.u[i];
        for (size_t j = 0; j < spec.k; j++) {
            out.set(i, j, power);
            power = f.mul(power, spec.alpha[i]);
        }
    }
    return out;
}

std::vector<Elem> dual_scalars(const Field &field, std::span<const Elem> alpha, std::span<const Elem> u) {
    if (alpha.size() != u.size()) {
        throw Error(ErrorCode::kLengthMismatch, "alpha and u differ in length");
    }
    if (!all_distinct(alpha)) {
        throw Error(ErrorCode::kDuplicatePoints, "evaluation points must be distinct");
    }
    std::vector<Elem> v(alpha.size());
    for (size_t j = 0; j < alpha.size(); j++) {
        if (u[j] == 0) {
            throw Error(ErrorCode::kZeroMultiplier, "column multipliers must be nonzero");
        }
        Elem prod = u[j];
        for (size_t i = 0; i < alpha.size(); i++) {
            if (i != j) {
                prod = field.mul(prod, field.sub(alpha[j], alpha[i]));
            }
        }
        v[j] = field.inv(prod);
    }
    return v;
}

void validate_params(const QcsaParams &p) {
    auto fail = [](const std::string &why) { throw Error(ErrorCode::kInvalidParams, why); };
    if (p.n == 0 || p.l == 0 || p.l > p.n) {
        fail("need 1 <= L <= N");
    }
    if (p.alpha.size() != p.n || p.beta.size() != p.n || p.f.size() != p.l) {
        fail("need N points, N scalars and L points");
    }
    if (p.field.q() < p.n + p.l) {
        fail("need q >= N + L");
    }
    std::vector<Elem> points(p.alpha);
    points.insert(points.end(), p.f.begin(), p.f.end());
    for (auto v : points) {
        if (!p.field.contains(v)) {
            fail("point not in field");
        }
    }
    if (!all_distinct(points)) {
        fail("alpha and f values must be pairwise distinct");
    }
    for (auto b : p.beta) {
        if (b == 0 || !p.field.contains(b)) {
            fail("scalars must be nonzero field elements");
        }
    }
}

MatrixFq qcsa_matrix(const QcsaParams &p) {
    validate_params(p);
    const Field &f = p.field;
    MatrixFq out(f, p.n, p.n);
    for (size_t i = 0; i < p.n; i++) {
        for (size_t j = 0; j < p.l; j++) {
            out.set(i, j, f.div(p.beta[i], f.sub(p.f[j], p.alpha[i])));
        }
        Elem power = p.beta[i];
        for (size_t j = p.l; j < p.n; j++) {
            out.set(i, j, power);
            power = f.mul(power, p.alpha[i]);
        }
    }
    return out;
}

MatrixFq csa_matrix(const Field &field, std::span<const Elem> alpha, std::span<const Elem> f) {
    QcsaParams p{field, alpha.size(), f.size(), {alpha.begin(), alpha.end()}, std::vector<Elem>(alpha.size(), 1),
                 {f.begin(), f.end()}};
    return qcsa_matrix(p);
}

std::vector<size_t> qcsa_permutation(size_t n, size_t l) {
    size_t ceil_half = (n + 1) / 2, floor_half = n / 2;
    std::vector<size_t> pi;
    // 1-based ranges, shifted to 0-based on insertion.
    auto range = [&](size_t from, size_t to) {
        for (size_t v = from; v <= to; v++) {
            pi.push_back(v - 1);
        }
    };
    range(l + 1, l + ceil_half);
    range(n + l + 1, n + l + floor_half);
    range(1, l);
    range(l + ceil_half + 1, n);
    range(n + 1, n + l);
    range(n + l + floor_half + 1, 2 * n);
    return pi;
}

QcsaBox qcsa_box(const QcsaParams &params) {
    check_box_params(params);
    const Field &f = params.field;
    size_t n = params.n;
    std::vector<Elem> u = params.beta;
    std::vector<Elem> v = dual_scalars(f, params.alpha, u);
    MatrixFq q_u = qcsa_matrix(params);
    MatrixFq q_v = qcsa_matrix(with_beta(params, v));
    std::vector<size_t> pi = qcsa_permutation(n, params.l);
    MatrixFq perm = permutation_matrix(f, pi);
    MatrixFq gh = block_diag(q_u, q_v) * perm;
    MatrixFq g = gh.block(0, 0, 2 * n, n);
    MatrixFq h = gh.block(0, n, 2 * n, n);
    SumBoxSpec spec = build_box(g, h);
    // Selector-row form: (0 | I) P_pi^-1 diag(Q^u, Q^v)^-1.
    MatrixFq selector = hstack(MatrixFq(f, n, n), MatrixFq::identity(f, n));
    MatrixFq m_qcsa = selector * perm.transpose() * block_diag(inverse(q_u), inverse(q_v));
    if (!(m_qcsa == spec.m)) {
        throw Error(ErrorCode::kAlgorithmFailure, "selector form disagrees with the built transfer matrix");
    }
    return {std::move(spec), std::move(pi), std::move(m_qcsa), std::move(q_u), std::move(q_v),
            std::move(u), std::move(v), params};
}

OtaOutput over_the_air_decode(const QcsaBox &box, std::span<const Elem> a1, std::span<const Elem> a2) {
    const Field &f = box.spec.field;
    size_t n = box.params.n, l = box.params.l;
    std::vector<Elem> x = scale_answers(f, box.u, a1);
    std::vector<Elem> x2 = scale_answers(f, box.v, a2);
    x.insert(x.end(), x2.begin(), x2.end());
    std::vector<Elem> y = evaluate(box.spec, x, 0, true).digits;
    size_t tail1 = n / 2 - l, tail2 = (n + 1) / 2 - l;
    auto take = [&](size_t from, size_t count) {
        return std::vector<Elem>(y.begin() + static_cast<std::ptrdiff_t>(from),
                                 y.begin() + static_cast<std::ptrdiff_t>(from + count));
    };
    return {take(0, l), take(l, tail1), take(l + tail1, l), take(2 * l + tail1, tail2)};
}

ServerReduction reduce_servers(size_t n, size_t l) {
    if (2 * l <= n) {
        return {n, l};
    }
    size_t n_prime = 2 * n - 2 * l;
    return {n_prime, n_prime / 2};
}

SymmetricBox symmetric_box(const QcsaParams &params) {
    check_box_params(params);
    const Field &f = params.field;
    size_t n = params.n, l = params.l;
    std::vector<Elem> u = params.beta;
    std::vector<Elem> v = dual_scalars(f, params.alpha, u);
    MatrixFq q_u = qcsa_matrix(params);
    MatrixFq q_v = qcsa_matrix(with_beta(params, v));
    // Q = (Cauchy block | GRS(α, β, N-L)); the GRS(·, L) prefix is the code generator.
    MatrixFq grs_u = q_u.block(0, l, n, n - l), grs_v = q_v.block(0, l, n, n - l);
    MatrixFq zero_l(f, n, l), zero_rest(f, n, n - 2 * l);
    MatrixFq g = block_diag(grs_u.block(0, 0, n, l), grs_v.block(0, 0, n, l));
    MatrixFq gperp = hstack(g, block_diag(grs_u.block(0, l, n, n - 2 * l), grs_v.block(0, l, n, n - 2 * l)));
    MatrixFq h = block_diag(q_u.block(0, 0, n, l), q_v.block(0, 0, n, l));
    SumBoxSpec spec = build_box_with_gperp(g, gperp, h);
    return {std::move(spec), std::move(q_u), std::move(q_v), std::move(u), std::move(v), params};
}

SymmetricOutput symmetric_decode(const SymmetricBox &box, std::span<const Elem> a1, std::span<const Elem> a2,
                                 std::uint64_t seed) {
    const Field &f = box.spec.field;
    size_t l = box.params.l;
    std::vector<Elem> x = scale_answers(f, box.u, a1);
    std::vector<Elem> x2 = scale_answers(f, box.v, a2);
    x.insert(x.end(), x2.begin(), x2.end());
    BoxOutput out = evaluate(box.spec, x, seed);
    return {std::vector<Elem>(out.digits.begin(), out.digits.begin() + static_cast<std::ptrdiff_t>(l)),
            std::vector<Elem>(out.digits.begin() + static_cast<std::ptrdiff_t>(l), out.digits.end()),
            std::move(out.discarded)};
}

}  // namespace nsumbox
