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

#include "nsumbox/apps.hpp"

#include <numeric>

#include "nsumbox/error.hpp"

namespace nsumbox {

namespace {

Elem random_elem(const Field &f, std::mt19937_64 &rng) {
    return std::uniform_int_distribution<Elem>(0, f.q() - 1)(rng);
}

MatrixFq random_matrix(const Field &f, size_t rows, size_t cols, std::mt19937_64 &rng) {
    MatrixFq out(f, rows, cols);
    for (size_t i = 0; i < rows; i++) {
        for (size_t j = 0; j < cols; j++) {
            out.set(i, j, random_elem(f, rng));
        }
    }
    return out;
}

Field pick_field(const std::optional<Field> &requested, size_t n_eff, size_t l_eff) {
    // Encodings run up to n_eff + l_eff, so the field needs one more element.
    size_t need = n_eff + l_eff + 1;
    if (!requested) {
        return smallest_field(need);
    }
    if (requested->q() < need) {
        throw Error(ErrorCode::kFieldTooSmall,
                    "default evaluation points need q > " + std::to_string(n_eff + l_eff));
    }
    return *requested;
}

// A = G_CSA (delta; nu) with nu uniform.
std::vector<Elem> csa_answers(const MatrixFq &g_csa, std::span<const Elem> delta, std::mt19937_64 &rng) {
    const Field &f = g_csa.field();
    std::vector<Elem> x(delta.begin(), delta.end());
    while (x.size() < g_csa.cols()) {
        x.push_back(random_elem(f, rng));
    }
    return g_csa.apply(x);
}

std::array<std::vector<Elem>, 2> box_deltas(const QcsaBox &box, const std::vector<Elem> &a1,
                                            const std::vector<Elem> &a2) {
    OtaOutput out = over_the_air_decode(box, a1, a2);
    return {out.delta1, out.delta2};
}

}  // namespace

Rational Rational::make(std::uint64_t num, std::uint64_t den) {
    if (den == 0) {
        throw Error(ErrorCode::kDivisionByZero, "zero denominator");
    }
    std::uint64_t g = std::gcd(num, den);
    if (g == 0) {
        return {0, 1};
    }
    return {num / g, den / g};
}

std::string Rational::to_string() const {
    if (den == 1) {
        return std::to_string(num);
    }
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational min(const Rational &a, const Rational &b) {
    return a.num * b.den <= b.num * a.den ? a : b;
}

Field smallest_field(std::uint64_t min_q) {
    for (std::uint64_t q = std::max<std::uint64_t>(min_q, 2);; q++) {
        std::uint64_t p = 2;
        while (q % p != 0) {
            p++;
        }
        std::uint64_t rest = q;
        std::uint32_t r = 0;
        while (rest % p == 0) {
            rest /= p;
            r++;
        }
        if (rest == 1) {
            return Field::make(static_cast<std::uint32_t>(p), r);
        }
    }
}

QcsaParams default_csa_params(const Field &field, size_t n, size_t l) {
    QcsaParams p{field, n, l, {}, std::vector<Elem>(n, 1), {}};
    for (size_t i = 0; i < n; i++) {
        p.alpha.push_back(static_cast<Elem>(i + 1));
    }
    for (size_t j = 0; j < l; j++) {
        p.f.push_back(static_cast<Elem>(n + j + 1));
    }
    validate_params(p);
    return p;
}

PirInstance make_pir_instance(const PirParams &params, std::uint64_t seed) {
    size_t overhead = params.x + params.t + params.k - 1;
    if (params.k == 0 || params.m == 0 || params.n <= overhead) {
        throw Error(ErrorCode::kInvalidParams, "need K >= 1, M >= 1 and N > X + T + K - 1");
    }
    if (params.theta >= params.m) {
        throw Error(ErrorCode::kInvalidParams, "theta out of range");
    }
    size_t l = params.n - overhead;
    ServerReduction red = reduce_servers(params.n, l);
    Field field = pick_field(params.field, red.n_prime, red.l_prime);
    PirInstance inst{params, l, red.n_prime, red.l_prime, field,
                     default_csa_params(field, red.n_prime, red.l_prime), {}};
    std::mt19937_64 rng(seed);
    for (size_t b = 0; b < 2; b++) {
        for (size_t i = 0; i < params.m; i++) {
            inst.messages[b].push_back(random_matrix(inst.field, inst.l_eff, params.k, rng));
        }
    }
    return inst;
}

std::vector<ServerStorage> pir_storage_encode(const PirInstance &inst, std::uint64_t noise_seed) {
    const Field &f = inst.field;
    const PirParams &pp = inst.params;
    std::mt19937_64 rng(noise_seed);
    // z[b][l][x] is a length-M noise row.
    std::array<std::vector<std::vector<std::vector<Elem>>>, 2> z;
    for (size_t b = 0; b < 2; b++) {
        z[b].assign(inst.l_eff, {});
        for (size_t l = 0; l < inst.l_eff; l++) {
            for (size_t x = 0; x < pp.x; x++) {
                std::vector<Elem> row(pp.m);
                for (auto &e : row) {
                    e = random_elem(f, rng);
                }
                z[b][l].push_back(std::move(row));
            }
        }
    }
    std::vector<ServerStorage> out(inst.n_eff);
    for (size_t n = 0; n < inst.n_eff; n++) {
        Elem alpha = inst.csa.alpha[n];
        Elem base = f.inv(f.sub(inst.csa.f[0], alpha));
        for (size_t b = 0; b < 2; b++) {
            for (size_t l = 0; l < inst.l_eff; l++) {
                std::vector<Elem> rec(pp.m, 0);
                for (size_t i = 0; i < pp.m; i++) {
                    for (size_t k = 0; k < pp.k; k++) {
                        Elem coef = f.pow(base, pp.k - k);
                        rec[i] = f.add(rec[i], f.mul(coef, inst.messages[b][i](l, k)));
                    }
                    Elem apow = 1;
                    for (size_t x = 0; x < pp.x; x++) {
                        rec[i] = f.add(rec[i], f.mul(apow, z[b][l][x][i]));
                        apow = f.mul(apow, alpha);
                    }
                }
                out[n].records[b].push_back(std::move(rec));
            }
        }
    }
    return out;
}

std::vector<Elem> pir_r_vector(const PirInstance &inst, size_t kappa, const std::vector<std::vector<Elem>> &w_prev) {
    const Field &f = inst.field;
    if (kappa == 0 || kappa > inst.params.k) {
        throw Error(ErrorCode::kBadRound, "round must be in 1..K");
    }
    if (w_prev.size() != inst.l_eff) {
        throw Error(ErrorCode::kDimMismatch, "need one row of earlier symbols per l");
    }
    std::vector<Elem> r(inst.n_eff, 0);
    for (size_t n = 0; n < inst.n_eff; n++) {
        for (size_t l = 0; l < inst.l_eff; l++) {
            if (w_prev[l].size() < kappa - 1) {
                throw Error(ErrorCode::kDimMismatch, "missing earlier-round symbols");
            }
            Elem base = f.inv(f.sub(inst.csa.f[l], inst.csa.alpha[n]));
            // 1-based k runs over 1..kappa-1 with exponent kappa-k+1.
            for (size_t k = 1; k < kappa; k++) {
                Elem coef = f.pow(base, kappa - k + 1);
                r[n] = f.add(r[n], f.mul(coef, w_prev[l][k - 1]));
            }
        }
    }
    return r;
}

std::vector<Elem> pir_round_answers(const PirInstance &inst, size_t kappa, size_t b, std::mt19937_64 &rng) {
    if (kappa == 0 || kappa > inst.params.k) {
        throw Error(ErrorCode::kBadRound, "round must be in 1..K");
    }
    if (b > 1) {
        throw Error(ErrorCode::kIndexOutOfRange, "instance index must be 0 or 1");
    }
    const MatrixFq &w = inst.messages[b][inst.params.theta];
    std::vector<std::vector<Elem>> w_prev(inst.l_eff);
    std::vector<Elem> delta(inst.l_eff);
    for (size_t l = 0; l < inst.l_eff; l++) {
        for (size_t k = 0; k + 1 < kappa; k++) {
            w_prev[l].push_back(w(l, k));
        }
        delta[l] = w(l, kappa - 1);
    }
    MatrixFq g_csa = qcsa_matrix(inst.csa);
    std::vector<Elem> a = csa_answers(g_csa, delta, rng);
    std::vector<Elem> r = pir_r_vector(inst, kappa, w_prev);
    for (size_t n = 0; n < a.size(); n++) {
        a[n] = inst.field.add(a[n], r[n]);
    }
    return a;
}

PirDecodeResult pir_decode(const PirInstance &inst, const PirRoundDeltas &deltas) {
    const Field &f = inst.field;
    size_t kk = inst.params.k;
    if (deltas.size() != kk) {
        throw Error(ErrorCode::kBadRound, "need outputs for all K rounds");
    }
    MatrixFq g_inv = inverse(qcsa_matrix(inst.csa));
    PirDecodeResult res{{MatrixFq(f, inst.l_eff, kk), MatrixFq(f, inst.l_eff, kk)},
                        Rational::make(2 * inst.l_eff * kk, inst.n_eff * kk)};
    for (size_t b = 0; b < 2; b++) {
        std::vector<std::vector<Elem>> known(inst.l_eff);
        for (size_t kappa = 1; kappa <= kk; kappa++) {
            const std::vector<Elem> &delta = deltas[kappa - 1][b];
            if (delta.size() != inst.l_eff) {
                throw Error(ErrorCode::kDimMismatch, "round output must have L symbols");
            }
            std::vector<Elem> corr = g_inv.apply(pir_r_vector(inst, kappa, known));
            for (size_t l = 0; l < inst.l_eff; l++) {
                Elem w = f.sub(delta[l], corr[l]);
                res.recovered[b].set(l, kappa - 1, w);
                known[l].push_back(w);
            }
        }
        if (!(res.recovered[b] == inst.messages[b][inst.params.theta])) {
            throw Error(ErrorCode::kDecodeMismatch, "recovered message differs in instance " + std::to_string(b + 1));
        }
    }
    return res;
}

Rational pir_rate_formula(const PirParams &params) {
    size_t l = params.n - (params.x + params.t + params.k - 1);
    return min(Rational::make(1, 1), Rational::make(2 * l, params.n));
}

DemoReport run_pir_demo(const PirParams &params, std::uint64_t seed, bool symmetric) {
    PirInstance inst = make_pir_instance(params, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    DemoReport rep{"pir", pir_rate_formula(params), {}, false, params.k, inst.n_eff, inst.l_eff, inst.field, {}};

    PirRoundDeltas deltas;
    std::optional<QcsaBox> box;
    std::optional<SymmetricBox> sbox;
    if (symmetric) {
        sbox = symmetric_box(inst.csa);
    } else {
        box = qcsa_box(inst.csa);
    }
    for (size_t kappa = 1; kappa <= params.k; kappa++) {
        std::vector<Elem> a1 = pir_round_answers(inst, kappa, 0, rng);
        std::vector<Elem> a2 = pir_round_answers(inst, kappa, 1, rng);
        if (symmetric) {
            SymmetricOutput out = symmetric_decode(*sbox, a1, a2, rng());
            rep.discarded.insert(rep.discarded.end(), out.discarded.begin(), out.discarded.end());
            deltas.push_back({out.delta1, out.delta2});
        } else {
            deltas.push_back(box_deltas(*box, a1, a2));
        }
    }
    try {
        rep.rate_measured = pir_decode(inst, deltas).rate_measured;
        rep.recovered_ok = true;
    } catch (const Error &e) {
        if (e.code() != ErrorCode::kDecodeMismatch) {
            throw;
        }
        rep.rate_measured = Rational::make(2 * inst.l_eff, inst.n_eff);
        rep.recovered_ok = false;
    }
    return rep;
}

SdbmmInstance make_sdbmm_instance(const SdbmmParams &params, std::uint64_t seed) {
    if (params.n <= params.xa + params.xb) {
        throw Error(ErrorCode::kInvalidParams, "need N > XA + XB");
    }
    if (params.lambda == 0 || params.eta == 0 || params.mu == 0) {
        throw Error(ErrorCode::kInvalidParams, "matrix dimensions must be positive");
    }
    size_t l = params.n - params.xa - params.xb;
    ServerReduction red = reduce_servers(params.n, l);
    Field field = pick_field(params.field, red.n_prime, red.l_prime);
    SdbmmInstance inst{params, l, red.n_prime, red.l_prime, field,
                       default_csa_params(field, red.n_prime, red.l_prime), {}, {}};
    std::mt19937_64 rng(seed);
    for (size_t b = 0; b < 2; b++) {
        for (size_t l = 0; l < inst.l_eff; l++) {
            inst.a[b].push_back(random_matrix(inst.field, params.lambda, params.eta, rng));
            inst.bm[b].push_back(random_matrix(inst.field, params.eta, params.mu, rng));
        }
    }
    return inst;
}

std::array<std::vector<Elem>, 2> sdbmm_run_entry(const SdbmmInstance &inst, const QcsaBox &box, size_t i, size_t j,
                                                 std::mt19937_64 &rng) {
    if (i >= inst.params.lambda || j >= inst.params.mu) {
        throw Error(ErrorCode::kIndexOutOfRange, "product entry out of range");
    }
    const Field &f = inst.field;
    MatrixFq g_csa = qcsa_matrix(inst.csa);
    std::array<std::vector<Elem>, 2> planted, answers;
    for (size_t b = 0; b < 2; b++) {
        for (size_t l = 0; l < inst.l_eff; l++) {
            Elem c = 0;
            for (size_t e = 0; e < inst.params.eta; e++) {
                c = f.add(c, f.mul(inst.a[b][l](i, e), inst.bm[b][l](e, j)));
            }
            planted[b].push_back(c);
        }
        answers[b] = csa_answers(g_csa, planted[b], rng);
    }
    std::array<std::vector<Elem>, 2> got = box_deltas(box, answers[0], answers[1]);
    for (size_t b = 0; b < 2; b++) {
        for (size_t l = 0; l < inst.l_eff; l++) {
            // Independent check straight from the batch matrices.
            MatrixFq prod = inst.a[b][l] * inst.bm[b][l];
            if (got[b][l] != prod(i, j)) {
                throw Error(ErrorCode::kDecodeMismatch, "product entry differs");
            }
        }
    }
    return got;
}

Rational sdbmm_rate_formula(const SdbmmParams &params) {
    size_t l = params.n - params.xa - params.xb;
    return min(Rational::make(1, 1), Rational::make(2 * l, params.n));
}

DemoReport run_sdbmm_demo(const SdbmmParams &params, std::uint64_t seed) {
    SdbmmInstance inst = make_sdbmm_instance(params, seed);
    QcsaBox box = qcsa_box(inst.csa);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    DemoReport rep{"sdbmm", sdbmm_rate_formula(params), {}, true, params.lambda * params.mu, inst.n_eff, inst.l_eff,
                   inst.field, {}};
    for (size_t i = 0; i < params.lambda; i++) {
        for (size_t j = 0; j < params.mu; j++) {
            try {
                sdbmm_run_entry(inst, box, i, j, rng);
            } catch (const Error &e) {
                if (e.code() != ErrorCode::kDecodeMismatch) {
                    throw;
                }
                rep.recovered_ok = false;
            }
        }
    }
    std::uint64_t invocations = rep.rounds;
    rep.rate_measured = Rational::make(2 * inst.l_eff * invocations, inst.n_eff * invocations);
    return rep;
}

}  // namespace nsumbox
