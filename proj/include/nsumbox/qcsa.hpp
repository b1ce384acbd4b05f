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

#ifndef NSUMBOX_QCSA_HPP_
#define NSUMBOX_QCSA_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "nsumbox/sumbox.hpp"

namespace nsumbox {

struct GrsSpec {
    Field field;
    size_t n;
    size_t k;
    std::vector<Elem> alpha;
    std::vector<Elem> u;
};

/// n×k with entry (i, j) = u_i α_i^j.
MatrixFq grs_generator(const GrsSpec &spec);

/// v_j = u_j^-1 · prod_{i != j} (α_j - α_i)^-1, the multipliers of the dual GRS code.
std::vector<Elem> dual_scalars(const Field &field, std::span<const Elem> alpha, std::span<const Elem> u);

struct QcsaParams {
    Field field;
    size_t n;
    size_t l;
    std::vector<Elem> alpha;
    std::vector<Elem> beta;
    std::vector<Elem> f;
};

/// Throws InvalidParams.
void validate_params(const QcsaParams &params);

/// Columns 0..L-1 are β_i/(f_j - α_i); columns L..N-1 are β_i α_i^(0..N-L-1).
MatrixFq qcsa_matrix(const QcsaParams &params);
/// The β = 1 special case.
MatrixFq csa_matrix(const Field &field, std::span<const Elem> alpha, std::span<const Elem> f);

/// 0-based column order with (G | H) = diag(Q^u, Q^v) · P_pi.
std::vector<size_t> qcsa_permutation(size_t n, size_t l);

struct QcsaBox {
    SumBoxSpec spec;
    std::vector<size_t> pi;
    MatrixFq m_qcsa;
    MatrixFq q_u;
    MatrixFq q_v;
    std::vector<Elem> u;
    std::vector<Elem> v;
    QcsaParams params;
};

/// N-sum box for two dual QCSA instances; `params.beta` holds u.
QcsaBox qcsa_box(const QcsaParams &params);

struct OtaOutput {
    std::vector<Elem> delta1;
    std::vector<Elem> nu1_tail;
    std::vector<Elem> delta2;
    std::vector<Elem> nu2_tail;
};

/// Scales the answers by u and v, evaluates the box and splits the N outputs.
OtaOutput over_the_air_decode(const QcsaBox &box, std::span<const Elem> a1, std::span<const Elem> a2);

struct ServerReduction {
    size_t n_prime;
    size_t l_prime;
};

/// For l > n/2: n' = 2n - 2l and l' = n'/2, keeping n - l fixed.
ServerReduction reduce_servers(size_t n, size_t l);

struct SymmetricBox {
    SumBoxSpec spec;
    MatrixFq q_u;
    MatrixFq q_v;
    std::vector<Elem> u;
    std::vector<Elem> v;
    QcsaParams params;
};

/// (2L, N)-sum box whose informative outputs are only (δ¹, δ²).
SymmetricBox symmetric_box(const QcsaParams &params);

struct SymmetricOutput {
    std::vector<Elem> delta1;
    std::vector<Elem> delta2;
    std::vector<Elem> discarded;
};

SymmetricOutput symmetric_decode(const SymmetricBox &box, std::span<const Elem> a1, std::span<const Elem> a2,
                                 std::uint64_t seed);

}  // namespace nsumbox

#endif  // NSUMBOX_QCSA_HPP_
