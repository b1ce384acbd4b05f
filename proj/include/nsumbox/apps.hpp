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

#ifndef NSUMBOX_APPS_HPP_
#define NSUMBOX_APPS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nsumbox/qcsa.hpp"

namespace nsumbox {

/// Reduced nonnegative fraction.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static Rational make(std::uint64_t num, std::uint64_t den);
    std::string to_string() const;
    bool operator==(const Rational &) const = default;
};

Rational min(const Rational &a, const Rational &b);

/// Smallest prime-power field with at least min_q elements.
Field smallest_field(std::uint64_t min_q);

/// Evaluation points alpha = 1..n and f = n+1..n+l, as element encodings.
QcsaParams default_csa_params(const Field &field, size_t n, size_t l);

struct PirParams {
    size_t n = 0;
    size_t m = 0;
    size_t k = 0;
    size_t x = 0;
    size_t t = 0;
    size_t theta = 0;
    std::optional<Field> field;
};

struct PirInstance {
    PirParams params;
    size_t l = 0;
    size_t n_eff = 0;
    size_t l_eff = 0;
    Field field;
    QcsaParams csa;
    // messages[b][i] is l_eff x K.
    std::array<std::vector<MatrixFq>, 2> messages;
};

PirInstance make_pir_instance(const PirParams &params, std::uint64_t seed);

/// records[b][l] holds M symbols, one per message.
struct ServerStorage {
    std::array<std::vector<std::vector<Elem>>, 2> records;
};

std::vector<ServerStorage> pir_storage_encode(const PirInstance &inst, std::uint64_t noise_seed);

/// R vector of round kappa (1-based) from earlier desired symbols; w_prev[l][k] for k < kappa-1.
std::vector<Elem> pir_r_vector(const PirInstance &inst, size_t kappa,
                               const std::vector<std::vector<Elem>> &w_prev);

/// N answers of instance b (0 or 1) in round kappa, interference drawn from rng.
std::vector<Elem> pir_round_answers(const PirInstance &inst, size_t kappa, size_t b, std::mt19937_64 &rng);

/// Per-round desired outputs: deltas[kappa-1][b] has l_eff symbols.
using PirRoundDeltas = std::vector<std::array<std::vector<Elem>, 2>>;

struct PirDecodeResult {
    std::array<MatrixFq, 2> recovered;
    Rational rate_measured;
};

/// Throws DecodeMismatch if the recovered message differs from message theta.
PirDecodeResult pir_decode(const PirInstance &inst, const PirRoundDeltas &deltas);

Rational pir_rate_formula(const PirParams &params);

struct DemoReport {
    std::string scheme;
    Rational rate_formula;
    Rational rate_measured;
    bool recovered_ok = false;
    size_t rounds = 0;
    size_t n_eff = 0;
    size_t l_eff = 0;
    Field field;
    // Digits the symmetric box threw away, in evaluation order.
    std::vector<Elem> discarded;
};

DemoReport run_pir_demo(const PirParams &params, std::uint64_t seed, bool symmetric = false);

struct SdbmmParams {
    size_t n = 0;
    size_t xa = 0;
    size_t xb = 0;
    size_t lambda = 1;
    size_t eta = 1;
    size_t mu = 1;
    std::optional<Field> field;
};

struct SdbmmInstance {
    SdbmmParams params;
    size_t l = 0;
    size_t n_eff = 0;
    size_t l_eff = 0;
    Field field;
    QcsaParams csa;
    // a[b][l] is lambda x eta, bm[b][l] is eta x mu.
    std::array<std::vector<MatrixFq>, 2> a;
    std::array<std::vector<MatrixFq>, 2> bm;
};

SdbmmInstance make_sdbmm_instance(const SdbmmParams &params, std::uint64_t seed);

/// Recovered entry (i,j) of every product, per instance; throws DecodeMismatch on disagreement.
std::array<std::vector<Elem>, 2> sdbmm_run_entry(const SdbmmInstance &inst, const QcsaBox &box, size_t i, size_t j,
                                                 std::mt19937_64 &rng);

Rational sdbmm_rate_formula(const SdbmmParams &params);

DemoReport run_sdbmm_demo(const SdbmmParams &params, std::uint64_t seed);

}  // namespace nsumbox

#endif  // NSUMBOX_APPS_HPP_
