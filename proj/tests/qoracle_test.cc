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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nsumbox/error.hpp"
#include "nsumbox/qoracle.hpp"
#include "nsumbox/symplectic.hpp"
#include "support/random.hpp"
#include "support/stats.hpp"

namespace nsumbox {
namespace {

using testing::rand_sso;
using testing::rand_vec;

MatrixFq M(const Field &f, std::vector<std::vector<Elem>> rows) {
    return MatrixFq::from_rows(f, rows);
}

ErrorCode code_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::kAlgorithmFailure;
}

const Field kF2 = Field::make(2, 1);

// Kronecker product of per-qudit X(a)Z(b), qudit 0 leftmost.
Eigen::MatrixXcd weyl_oracle(const Field &f, size_t n, const std::vector<Elem> &s) {
    const double two_pi_over_p = 2 * std::numbers::pi / f.p();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (size_t i = 0; i < n; i++) {
        Eigen::MatrixXcd local = Eigen::MatrixXcd::Zero(f.q(), f.q());
        for (Elem j = 0; j < f.q(); j++) {
            double phase = two_pi_over_p * f.trace(f.mul(s[n + i], j)).value;
            local(f.add(j, s[i]), j) = std::polar(1.0, phase);
        }
        Eigen::MatrixXcd next(out.rows() * f.q(), out.cols() * f.q());
        for (Eigen::Index a = 0; a < out.rows(); a++) {
            for (Eigen::Index b = 0; b < out.cols(); b++) {
                next.block(a * f.q(), b * f.q(), f.q(), f.q()) = out(a, b) * local;
            }
        }
        out = next;
    }
    return out;
}

Eigen::VectorXcd to_eigen(const StateVector &psi) {
    Eigen::VectorXcd v(psi.dim());
    for (size_t i = 0; i < psi.dim(); i++) {
        v(static_cast<Eigen::Index>(i)) = psi[i];
    }
    return v;
}

StateVector random_state(const Field &f, size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> d;
    size_t dim = 1;
    for (size_t i = 0; i < n; i++) {
        dim *= f.q();
    }
    std::vector<Complex> amps(dim);
    double norm = 0;
    for (auto &a : amps) {
        a = {d(rng), d(rng)};
        norm += std::norm(a);
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm);
    }
    return StateVector(f, n, amps);
}

TEST(Indexing, MixedRadix) {
    EXPECT_EQ(index_to_digits(3, 2, 5), (std::vector<Elem>{1, 2}));
    std::vector<Elem> d{1, 0, 1};
    EXPECT_EQ(digits_to_index(2, d), 5u);
}

TEST(WeylApply, Examples) {
    StateVector zero = StateVector::basis(kF2, 1, 0);
    std::vector<Elem> x{1, 0}, z{0, 1}, id{0, 0};
    StateVector flipped = weyl_apply(zero, x);
    EXPECT_NEAR(std::abs(flipped[1]), 1.0, 1e-12);
    StateVector plus = StateVector::uniform(kF2, 1);
    StateVector minus = weyl_apply(plus, z);
    EXPECT_NEAR(minus[0].real(), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(minus[1].real(), -1 / std::sqrt(2.0), 1e-12);
    StateVector same = weyl_apply(plus, id);
    EXPECT_NEAR(std::abs(same.inner(plus)), 1.0, 1e-12);
}

TEST(WeylApply, MatchesKroneckerOracle) {
    for (auto [p, r, n] : {std::tuple{2u, 1u, 3u}, {3u, 1u, 2u}, {2u, 2u, 2u}, {5u, 1u, 2u}, {3u, 2u, 1u}}) {
        Field f = Field::make(p, r);
        std::mt19937_64 rng(p * 100 + r * 10 + n);
        for (int t = 0; t < 10; t++) {
            std::vector<Elem> s = rand_vec(f, 2 * n, rng);
            StateVector psi = random_state(f, n, rng);
            Eigen::VectorXcd expect = weyl_oracle(f, n, s) * to_eigen(psi);
            StateVector got = weyl_apply(psi, s);
            EXPECT_LT((to_eigen(got) - expect).norm(), 1e-9);
            EXPECT_NEAR(got.norm(), 1.0, 1e-9);
            EXPECT_LT((weyl_matrix(f, n, s) - weyl_oracle(f, n, s)).norm(), 1e-9);
        }
    }
}

TEST(WeylApply, TooLarge) {
    Field f = Field::make(2, 1);
    std::vector<Elem> s(44, 0);
    EXPECT_EQ(code_of([&] { weyl_matrix(f, 22, s); }), ErrorCode::kTooLarge);
}

TEST(WeylCommute, Examples) {
    std::vector<Elem> a{1, 1, 0, 0}, b{0, 0, 1, 1}, x{1, 0}, z{0, 1};
    EXPECT_TRUE(weyl_commute(kF2, a, a));
    EXPECT_TRUE(weyl_commute(kF2, a, b));
    EXPECT_FALSE(weyl_commute(kF2, x, z));
    std::vector<Elem> odd{1, 0, 0};
    EXPECT_EQ(code_of([&] { weyl_commute(kF2, a, odd); }), ErrorCode::kLengthMismatch);
}

TEST(WeylCommute, AgreesWithOperators) {
    for (auto [p, r, n] : {std::tuple{2u, 1u, 2u}, {3u, 1u, 2u}, {2u, 2u, 2u}, {3u, 2u, 1u}}) {
        Field f = Field::make(p, r);
        std::mt19937_64 rng(7 * p + r);
        int commuting = 0;
        for (int t = 0; t < 60; t++) {
            std::vector<Elem> s = rand_vec(f, 2 * n, rng), u = rand_vec(f, 2 * n, rng);
            if (t % 3 == 0) {
                u = s;
                for (auto &e : u) {
                    e = f.mul(e, 1 + static_cast<Elem>(t) % (f.q() - 1));
                }
            }
            Eigen::MatrixXcd ws = weyl_oracle(f, n, s), wu = weyl_oracle(f, n, u);
            bool ops = (ws * wu - wu * ws).norm() < 1e-9;
            EXPECT_EQ(weyl_commute(f, s, u), ops);
            commuting += ops;
            // Composition up to a unimodular phase.
            std::vector<Elem> sum(2 * n);
            for (size_t i = 0; i < sum.size(); i++) {
                sum[i] = f.add(s[i], u[i]);
            }
            Eigen::MatrixXcd prod = ws * wu, wsum = weyl_oracle(f, n, sum);
            Complex gamma = (wsum.adjoint() * prod).trace() / static_cast<double>(wsum.rows());
            EXPECT_NEAR(std::abs(gamma), 1.0, 1e-9);
            EXPECT_LT((prod - gamma * wsum).norm(), 1e-9);
        }
        EXPECT_GT(commuting, 0);
    }
}

TEST(StabilizedState, XStabilizerGivesUniform) {
    Field f = Field::make(3, 1);
    MatrixFq g = vstack(MatrixFq::identity(f, 2), MatrixFq(f, 2, 2));
    StateVector psi = stabilized_state(g);
    for (size_t i = 0; i < psi.dim(); i++) {
        EXPECT_NEAR(std::abs(psi[i]), 1.0 / 3.0, 1e-9);
    }
}

TEST(StabilizedState, ZStabilizerGivesBasisState) {
    Field f = Field::make(5, 1);
    MatrixFq g = vstack(MatrixFq(f, 2, 2), MatrixFq::identity(f, 2));
    StateVector psi = stabilized_state(g);
    double max_mod = 0;
    for (size_t i = 0; i < psi.dim(); i++) {
        max_mod = std::max(max_mod, std::abs(psi[i]));
    }
    EXPECT_NEAR(max_mod, 1.0, 1e-9);
}

TEST(StabilizedState, TwoSumIsBellCoset) {
    MatrixFq g = M(kF2, {{0, 1}, {0, 1}, {1, 0}, {1, 0}});
    MatrixFq h = M(kF2, {{1, 0}, {0, 0}, {0, 0}, {0, 1}});
    StateVector psi = stabilized_state(g);
    double r = 1 / std::sqrt(2.0);
    StateVector bell(kF2, 2, {r, 0, 0, r});
    double best = 0;
    for (Elem a = 0; a < 2; a++) {
        for (Elem b = 0; b < 2; b++) {
            std::vector<Elem> sh{a, b};
            std::vector<Elem> shift = h.apply(sh);
            best = std::max(best, std::abs(weyl_apply(bell, shift).inner(psi)));
        }
    }
    EXPECT_NEAR(best, 1.0, 1e-9);
}

TEST(StabilizedState, JointEigenvectorForRandomSso) {
    for (auto [p, r, n] : {std::tuple{2u, 1u, 3u}, {3u, 1u, 2u}, {2u, 2u, 2u}, {3u, 2u, 1u}}) {
        Field f = Field::make(p, r);
        std::mt19937_64 rng(13 * p + r);
        for (int t = 0; t < 5; t++) {
            MatrixFq g = rand_sso(f, n, rng);
            StateVector psi = stabilized_state(g);
            EXPECT_NEAR(psi.norm(), 1.0, 1e-9);
            for (size_t c = 0; c < g.cols(); c++) {
                for (Elem scale = 1; scale < f.q(); scale++) {
                    std::vector<Elem> s = g.col(c);
                    for (auto &e : s) {
                        e = f.mul(e, scale);
                    }
                    EXPECT_NEAR(std::abs(weyl_apply(psi, s).inner(psi)), 1.0, 1e-9);
                }
            }
        }
    }
}

TEST(StabilizedState, RejectsNonIsotropic) {
    EXPECT_EQ(code_of([] { stabilized_state(M(kF2, {{1, 0}, {0, 0}, {0, 1}, {0, 0}})); }),
              ErrorCode::kNotSelfOrthogonal);
}

TEST(CosetMeasurement, Orthonormal) {
    for (auto [p, r, n] : {std::tuple{2u, 1u, 2u}, {3u, 1u, 2u}, {2u, 2u, 1u}}) {
        Field f = Field::make(p, r);
        std::mt19937_64 rng(17 * p + r);
        MatrixFq g = rand_sso(f, n, rng);
        SumBoxSpec spec = build_box(g);
        CosetMeasurement cm(spec.g, spec.h);
        Eigen::MatrixXcd basis(cm.dim(), cm.dim());
        for (size_t s = 0; s < cm.dim(); s++) {
            basis.col(static_cast<Eigen::Index>(s)) = to_eigen(cm.basis_state(s));
        }
        Eigen::MatrixXcd gram = basis.adjoint() * basis;
        EXPECT_LT((gram - Eigen::MatrixXcd::Identity(cm.dim(), cm.dim())).cwiseAbs().maxCoeff(), 1e-7);
    }
}

TEST(SimulateBox, TwoSumAllInputs) {
    MatrixFq g = M(kF2, {{0, 1}, {0, 1}, {1, 0}, {1, 0}});
    MatrixFq h = M(kF2, {{1, 0}, {0, 0}, {0, 0}, {0, 1}});
    SumBoxSpec spec = build_box(g, h);
    std::vector<Elem> zero(4, 0);
    std::vector<Elem> offset = simulate_box(spec, zero);
    for (size_t idx = 0; idx < 16; idx++) {
        std::vector<Elem> x = index_to_digits(2, 4, idx);
        std::vector<Elem> y = simulate_box(spec, x);
        EXPECT_EQ(kF2.sub(y[0], offset[0]), x[0] ^ x[1]);
        EXPECT_EQ(kF2.sub(y[1], offset[1]), x[2] ^ x[3]);
    }
}

TEST(SimulateBox, StandardBoxReadsZPart) {
    Field f = Field::make(3, 1);
    SumBoxSpec spec = build_box(vstack(MatrixFq::identity(f, 2), MatrixFq(f, 2, 2)),
                                vstack(MatrixFq(f, 2, 2), MatrixFq::identity(f, 2)));
    std::vector<Elem> zero(4, 0), x{1, 2, 2, 1};
    std::vector<Elem> off = simulate_box(spec, zero), y = simulate_box(spec, x);
    EXPECT_EQ(f.sub(y[0], off[0]), 2u);
    EXPECT_EQ(f.sub(y[1], off[1]), 1u);
}

TEST(SimulateBox, RequiresMaximal) {
    SumBoxSpec spec = build_box(M(kF2, {{1}, {1}, {0}, {0}}));
    std::vector<Elem> x(4, 0);
    EXPECT_EQ(code_of([&] { simulate_box(spec, x); }), ErrorCode::kInvalidSpec);
}

TEST(Certify, Examples) {
    MatrixFq g = M(kF2, {{0, 1}, {0, 1}, {1, 0}, {1, 0}});
    MatrixFq h = M(kF2, {{1, 0}, {0, 0}, {0, 0}, {0, 1}});
    SumBoxSpec spec = build_box(g, h);
    CertifyReport rep = certify(spec, CertifyMode::all_inputs());
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.tested, 16u);
    EXPECT_LT(rep.max_prob_defect, 1e-9);

    Field f3 = Field::make(3, 1);
    CertifyReport one = certify(build_box(M(f3, {{1}, {0}})), CertifyMode::all_inputs());
    EXPECT_TRUE(one.pass);
    EXPECT_EQ(one.tested, 9u);

    SumBoxSpec bad = spec;
    bad.m.set(0, 0, 0);
    EXPECT_FALSE(certify(bad, CertifyMode::all_inputs()).pass);
}

TEST(Certify, RandomSpecsPass) {
    for (auto [p, r, n] : {std::tuple{2u, 1u, 2u}, {3u, 1u, 1u}, {2u, 2u, 1u}, {5u, 1u, 1u}}) {
        Field f = Field::make(p, r);
        std::mt19937_64 rng(19 * p + r);
        for (int t = 0; t < 10; t++) {
            SumBoxSpec spec = build_box(rand_sso(f, n, rng));
            CertifyReport rep = certify(spec, CertifyMode::all_inputs());
            EXPECT_TRUE(rep.pass);
            EXPECT_LT(rep.max_prob_defect, 1e-6);
        }
    }
    Field f5 = Field::make(5, 1);
    std::mt19937_64 rng(23);
    SumBoxSpec spec = build_box(rand_sso(f5, 2, rng));
    CertifyReport rep = certify(spec, CertifyMode::random(30, 4));
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.tested, 30u);
}

TEST(Certify, ExhaustiveTooLarge) {
    Field f = Field::make(5, 1);
    std::mt19937_64 rng(29);
    SumBoxSpec spec = build_box(rand_sso(f, 3, rng));
    EXPECT_EQ(code_of([&] { certify(spec, CertifyMode::all_inputs()); }), ErrorCode::kTooLarge);
}

// The (1,2) box reading x3 + x4, with a fixed complement basis.
SumBoxSpec one_two_box() {
    MatrixFq g = M(kF2, {{1}, {1}, {0}, {0}});
    MatrixFq gperp = M(kF2, {{1, 0, 1}, {1, 0, 0}, {0, 1, 0}, {0, 1, 0}});
    return build_box_with_gperp(g, gperp, M(kF2, {{0}, {0}, {0}, {1}}));
}

TEST(SimulateNonmax, InformativeDigitDeterministic) {
    SumBoxSpec spec = one_two_box();
    for (size_t idx = 0; idx < 16; idx++) {
        std::vector<Elem> x = index_to_digits(2, 4, idx);
        NonmaxResult res = simulate_nonmax(spec, x, 64, idx);
        Elem expect = kF2.add(x[2] ^ x[3], res.offset[0]);
        double mass = 0;
        for (size_t o = 0; o < res.probabilities.size(); o++) {
            if (index_to_digits(2, 2, o)[0] == expect) {
                mass += res.probabilities[o];
            }
        }
        EXPECT_NEAR(mass, 1.0, 1e-9);
        for (size_t o = 0; o < res.counts.size(); o++) {
            if (res.counts[o] > 0) {
                EXPECT_EQ(index_to_digits(2, 2, o)[0], expect);
            }
        }
    }
}

TEST(SimulateNonmax, DiscardedDigitUniform) {
    SumBoxSpec spec = one_two_box();
    std::vector<Elem> x{1, 1, 1, 0};
    NonmaxResult res = simulate_nonmax(spec, x, 4096, 2026);
    std::vector<std::uint64_t> second(2, 0);
    std::uint64_t total = 0;
    for (size_t o = 0; o < res.counts.size(); o++) {
        auto d = index_to_digits(2, 2, o);
        EXPECT_TRUE(res.counts[o] == 0 || d[0] == kF2.add(1, res.offset[0]));
        second[d[1]] += res.counts[o];
        total += res.counts[o];
    }
    EXPECT_EQ(total, 4096u);
    EXPECT_GT(testing::uniform_chi2_p(second), 0.001);

    NonmaxResult single = simulate_nonmax(spec, x, 1, 3);
    std::uint64_t shots = 0;
    for (auto c : single.counts) {
        shots += c;
    }
    EXPECT_EQ(shots, 1u);
}

TEST(SimulateNonmax, ZeroInputIsOffset) {
    SumBoxSpec spec = one_two_box();
    std::vector<Elem> zero(4, 0);
    NonmaxResult res = simulate_nonmax(spec, zero, 256, 1);
    for (size_t o = 0; o < res.counts.size(); o++) {
        if (res.counts[o] > 0) {
            EXPECT_EQ(index_to_digits(2, 2, o)[0], res.offset[0]);
        }
    }
}

TEST(PartialTrace, Basics) {
    Field f = Field::make(3, 1);
    std::mt19937_64 rng(31);
    StateVector a = random_state(f, 1, rng), b = random_state(f, 1, rng);
    std::vector<Complex> prod;
    for (size_t i = 0; i < 3; i++) {
        for (size_t j = 0; j < 3; j++) {
            prod.push_back(a[i] * b[j]);
        }
    }
    DensityOp rho = DensityOp::pure(StateVector(f, 2, prod));
    std::vector<size_t> all{0, 1}, first{0}, bad{2}, dup{0, 0};
    EXPECT_LT((partial_trace(rho, all).matrix() - rho.matrix()).norm(), 1e-12);
    DensityOp ra = partial_trace(rho, first);
    EXPECT_LT((ra.matrix() - DensityOp::pure(a).matrix()).norm(), 1e-9);
    EXPECT_TRUE(ra.is_valid());
    EXPECT_EQ(code_of([&] { partial_trace(rho, bad); }), ErrorCode::kBadIndexSet);
    EXPECT_EQ(code_of([&] { partial_trace(rho, dup); }), ErrorCode::kBadIndexSet);
}

TEST(PartialTrace, NonMaximalCircuit) {
    const double r = 1 / std::sqrt(2.0);
    Eigen::MatrixXcd hadamard(2, 2);
    hadamard << r, r, r, -r;
    for (size_t idx = 0; idx < 16; idx++) {
        std::vector<Elem> x = index_to_digits(2, 4, idx);
        // (|000> + |110> + |101> + |011>) / 2
        std::vector<Complex> amps(8, 0);
        for (size_t k : {0b000, 0b110, 0b101, 0b011}) {
            amps[k] = 0.5;
        }
        StateVector phi(kF2, 3, amps);
        std::vector<Elem> s{x[0], x[1], 0, x[2], x[3], 0};
        phi = weyl_apply(phi, s);
        phi = apply_sum(phi, 0, 1);
        phi = apply_local(phi, 0, hadamard);
        std::vector<size_t> keep{0, 1};
        DensityOp out = partial_trace(DensityOp::pure(phi), keep);
        Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(4, 4);
        size_t bit = x[2] ^ x[3];
        expect(2 * bit, 2 * bit) = 0.5;
        expect(2 * bit + 1, 2 * bit + 1) = 0.5;
        EXPECT_LT((out.matrix() - expect).cwiseAbs().maxCoeff(), 1e-9) << "input " << idx;
    }
}

TEST(DensityOp, Validity) {
    Field f = Field::make(2, 1);
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
    EXPECT_FALSE(DensityOp(f, 1, bad).is_valid());
    EXPECT_TRUE(DensityOp(f, 1, bad / 2.0).is_valid());
    Eigen::MatrixXcd neg(2, 2);
    neg << 1.5, 0, 0, -0.5;
    EXPECT_FALSE(DensityOp(f, 1, neg).is_valid());
}

}  // namespace
}  // namespace nsumbox
