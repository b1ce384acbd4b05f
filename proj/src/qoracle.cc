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

#include "nsumbox/qoracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "nsumbox/error.hpp"
#include "nsumbox/symplectic.hpp"

namespace nsumbox {

namespace {

constexpr size_t kWeylLimit = size_t{1} << 20;
constexpr size_t kStateLimit = size_t{1} << 12;
constexpr size_t kDensityLimit = size_t{1} << 10;
constexpr size_t kCertifyExhaustiveLimit = 4096;
constexpr size_t kBasisCacheLimit = 1024;
constexpr double kEigenTol = 1e-9;
constexpr double kDeterministicTol = 1e-6;

size_t checked_dim(std::uint32_t q, size_t n, size_t limit) {
    size_t dim = 1;
    for (size_t i = 0; i < n; i++) {
        dim *= q;
        if (dim > limit) {
            throw Error(ErrorCode::kTooLarge, "q^n exceeds " + std::to_string(limit));
        }
    }
    return dim;
}

Complex root_of_unity(std::uint32_t p, std::uint64_t k) {
    double angle = 2 * std::numbers::pi * static_cast<double>(k % p) / p;
    return {std::cos(angle), std::sin(angle)};
}

// W(s)|j> = ω^{phase[j]} |target[j]>.
struct Monomial {
    std::vector<size_t> target;
    std::vector<std::uint32_t> phase;
};

Monomial weyl_monomial(const Field &f, size_t n, std::span<const Elem> s) {
    if (s.size() != 2 * n) {
        throw Error(ErrorCode::kDimMismatch, "Weyl label must have length 2n");
    }
    for (auto v : s) {
        if (!f.contains(v)) {
            throw Error(ErrorCode::kInvalidSpec, "Weyl label entry not in field");
        }
    }
    std::uint32_t q = f.q(), p = f.p();
    size_t dim = checked_dim(q, n, kWeylLimit);
    std::vector<std::vector<Elem>> shift(n, std::vector<Elem>(q));
    std::vector<std::vector<std::uint32_t>> tr(n, std::vector<std::uint32_t>(q));
    for (size_t i = 0; i < n; i++) {
        for (Elem d = 0; d < q; d++) {
            shift[i][d] = f.add(d, s[i]);
            tr[i][d] = f.trace(f.mul(s[n + i], d)).value;
        }
    }
    Monomial out{std::vector<size_t>(dim), std::vector<std::uint32_t>(dim)};
    std::vector<Elem> digits(n, 0);
    for (size_t idx = 0; idx < dim; idx++) {
        size_t target = 0;
        std::uint64_t phase = 0;
        for (size_t i = 0; i < n; i++) {
            target = target * q + shift[i][digits[i]];
            phase += tr[i][digits[i]];
        }
        out.target[idx] = target;
        out.phase[idx] = static_cast<std::uint32_t>(phase % p);
        for (size_t i = n; i-- > 0;) {
            if (++digits[i] < q) {
                break;
            }
            digits[i] = 0;
        }
    }
    return out;
}

std::vector<Complex> apply_monomial(const Monomial &w, const std::vector<Complex> &omega, const std::vector<Complex> &v) {
    std::vector<Complex> out(v.size());
    for (size_t j = 0; j < v.size(); j++) {
        out[w.target[j]] = omega[w.phase[j]] * v[j];
    }
    return out;
}

std::vector<Complex> omega_table(std::uint32_t p) {
    std::vector<Complex> out(p);
    for (std::uint32_t k = 0; k < p; k++) {
        out[k] = root_of_unity(p, k);
    }
    return out;
}

double vec_norm(const std::vector<Complex> &v) {
    double acc = 0;
    for (const auto &a : v) {
        acc += std::norm(a);
    }
    return std::sqrt(acc);
}

Eigen::VectorXcd to_eigen(const StateVector &psi) {
    return Eigen::Map<const Eigen::VectorXcd>(psi.amps().data(), static_cast<Eigen::Index>(psi.dim()));
}

struct Measured {
    std::vector<Elem> digits;
    double defect;
};

Measured measure_deterministic(const CosetMeasurement &meas, const SumBoxSpec &spec, std::span<const Elem> x) {
    std::vector<double> probs = meas.probabilities(weyl_apply(meas.reference(), x));
    size_t best = static_cast<size_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
    return {index_to_digits(spec.field.q(), spec.n, best), std::abs(1 - probs[best])};
}

void require_maximal(const SumBoxSpec &spec) {
    if (spec.kappa != spec.n) {
        throw Error(ErrorCode::kInvalidSpec, "operation needs a maximal box (kappa == n)");
    }
}

}  // namespace

std::vector<Elem> index_to_digits(std::uint32_t q, size_t n, size_t index) {
    std::vector<Elem> out(n);
    for (size_t i = n; i-- > 0;) {
        out[i] = static_cast<Elem>(index % q);
        index /= q;
    }
    return out;
}

size_t digits_to_index(std::uint32_t q, std::span<const Elem> digits) {
    size_t idx = 0;
    for (auto d : digits) {
        idx = idx * q + d;
    }
    return idx;
}

StateVector::StateVector(Field field, size_t n, std::vector<Complex> amps)
    : field_(std::move(field)), n_(n), amps_(std::move(amps)) {
    if (amps_.size() != checked_dim(field_.q(), n_, kWeylLimit)) {
        throw Error(ErrorCode::kDimMismatch, "amplitude count must be q^n");
    }
}

StateVector StateVector::basis(const Field &field, size_t n, size_t index) {
    std::vector<Complex> amps(checked_dim(field.q(), n, kWeylLimit), 0);
    if (index >= amps.size()) {
        throw Error(ErrorCode::kIndexOutOfRange, "basis index out of range");
    }
    amps[index] = 1;
    return StateVector(field, n, std::move(amps));
}

StateVector StateVector::uniform(const Field &field, size_t n) {
    size_t dim = checked_dim(field.q(), n, kWeylLimit);
    return StateVector(field, n, std::vector<Complex>(dim, 1 / std::sqrt(static_cast<double>(dim))));
}

double StateVector::norm() const {
    return vec_norm(amps_);
}

Complex StateVector::inner(const StateVector &other) const {
    if (other.dim() != dim()) {
        throw Error(ErrorCode::kDimMismatch, "state dimensions differ");
    }
    Complex acc = 0;
    for (size_t i = 0; i < amps_.size(); i++) {
        acc += std::conj(amps_[i]) * other.amps_[i];
    }
    return acc;
}

DensityOp::DensityOp(Field field, size_t n, Eigen::MatrixXcd rho)
    : field_(std::move(field)), n_(n), rho_(std::move(rho)) {
    size_t dim = checked_dim(field_.q(), n_, kWeylLimit);
    if (static_cast<size_t>(rho_.rows()) != dim || static_cast<size_t>(rho_.cols()) != dim) {
        throw Error(ErrorCode::kDimMismatch, "density matrix must be q^n × q^n");
    }
}

DensityOp DensityOp::pure(const StateVector &psi) {
    Eigen::VectorXcd v = to_eigen(psi);
    return DensityOp(psi.field(), psi.n(), v * v.adjoint());
}

bool DensityOp::is_valid(double tol, double psd_tol) const {
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol) {
        return false;
    }
    if (std::abs(rho_.trace() - Complex(1, 0)) > tol) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -psd_tol;
}

DensityOp partial_trace(const DensityOp &rho, std::span<const size_t> keep) {
    size_t n = rho.n();
    std::uint32_t q = rho.field().q();
    std::vector<size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end() || (!kept.empty() && kept.back() >= n)) {
        throw Error(ErrorCode::kBadIndexSet, "keep must list distinct qudits in [0, n)");
    }
    std::vector<bool> is_kept(n, false);
    for (auto k : kept) {
        is_kept[k] = true;
    }
    size_t dim = rho.matrix().rows();
    size_t out_dim = checked_dim(q, kept.size(), kWeylLimit);
    std::vector<size_t> kept_index(dim), traced_index(dim);
    for (size_t idx = 0; idx < dim; idx++) {
        auto d = index_to_digits(q, n, idx);
        size_t a = 0, b = 0;
        for (size_t i = 0; i < n; i++) {
            if (is_kept[i]) {
                a = a * q + d[i];
            } else {
                b = b * q + d[i];
            }
        }
        kept_index[idx] = a;
        traced_index[idx] = b;
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_dim, out_dim);
    for (size_t i = 0; i < dim; i++) {
        for (size_t j = 0; j < dim; j++) {
            if (traced_index[i] == traced_index[j]) {
                out(kept_index[i], kept_index[j]) += rho.matrix()(i, j);
            }
        }
    }
    return DensityOp(rho.field(), kept.size(), std::move(out));
}

StateVector weyl_apply(const StateVector &psi, std::span<const Elem> s) {
    Monomial w = weyl_monomial(psi.field(), psi.n(), s);
    return StateVector(psi.field(), psi.n(), apply_monomial(w, omega_table(psi.field().p()), psi.amps()));
}

DensityOp weyl_conjugate(const DensityOp &rho, std::span<const Elem> s) {
    Monomial w = weyl_monomial(rho.field(), rho.n(), s);
    auto omega = omega_table(rho.field().p());
    const Eigen::MatrixXcd &in = rho.matrix();
    Eigen::MatrixXcd out(in.rows(), in.cols());
    for (Eigen::Index i = 0; i < in.rows(); i++) {
        for (Eigen::Index j = 0; j < in.cols(); j++) {
            out(w.target[i], w.target[j]) = omega[w.phase[i]] * std::conj(omega[w.phase[j]]) * in(i, j);
        }
    }
    return DensityOp(rho.field(), rho.n(), std::move(out));
}

Eigen::MatrixXcd weyl_matrix(const Field &field, size_t n, std::span<const Elem> s) {
    Monomial w = weyl_monomial(field, n, s);
    auto omega = omega_table(field.p());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(w.target.size(), w.target.size());
    for (size_t j = 0; j < w.target.size(); j++) {
        out(w.target[j], j) = omega[w.phase[j]];
    }
    return out;
}

bool weyl_commute(const Field &field, std::span<const Elem> s, std::span<const Elem> t) {
    return trace_symplectic_form(field, s, t).value == 0;
}

StateVector apply_local(const StateVector &psi, size_t qudit, const Eigen::MatrixXcd &u) {
    std::uint32_t q = psi.field().q();
    if (qudit >= psi.n()) {
        throw Error(ErrorCode::kBadIndexSet, "qudit out of range");
    }
    if (u.rows() != q || u.cols() != q) {
        throw Error(ErrorCode::kDimMismatch, "local operator must be q×q");
    }
    size_t stride = checked_dim(q, psi.n() - 1 - qudit, kWeylLimit);
    std::vector<Complex> out(psi.dim(), 0);
    for (size_t idx = 0; idx < psi.dim(); idx++) {
        size_t digit = (idx / stride) % q;
        size_t base = idx - digit * stride;
        for (size_t r = 0; r < q; r++) {
            out[base + r * stride] += u(r, digit) * psi[idx];
        }
    }
    return StateVector(psi.field(), psi.n(), std::move(out));
}

StateVector apply_sum(const StateVector &psi, size_t control, size_t target) {
    if (control >= psi.n() || target >= psi.n() || control == target) {
        throw Error(ErrorCode::kBadIndexSet, "sum gate needs distinct qudits in range");
    }
    const Field &f = psi.field();
    std::vector<Complex> out(psi.dim(), 0);
    for (size_t idx = 0; idx < psi.dim(); idx++) {
        auto d = index_to_digits(f.q(), psi.n(), idx);
        d[target] = f.add(d[target], d[control]);
        out[digits_to_index(f.q(), d)] = psi[idx];
    }
    return StateVector(f, psi.n(), std::move(out));
}

StateVector stabilized_state(const MatrixFq &g) {
    if (g.rows() == 0 || g.rows() % 2 != 0) {
        throw Error(ErrorCode::kBadShape, "generator must have 2n rows");
    }
    if (!is_self_orthogonal(g)) {
        throw Error(ErrorCode::kNotSelfOrthogonal, "gᵀJg != 0");
    }
    if (rank(g) != g.cols()) {
        throw Error(ErrorCode::kRankDeficient, "generator is rank deficient");
    }
    const Field &f = g.field();
    std::uint32_t p = f.p();
    size_t n = g.rows() / 2;
    checked_dim(f.q(), n, kStateLimit);
    auto omega = omega_table(p);
    std::vector<Monomial> ops;
    for (size_t j = 0; j < g.cols(); j++) {
        std::vector<Elem> col = g.col(j);
        for (std::uint32_t k = 0, c = 1; k < f.r(); k++, c *= p) {
            std::vector<Elem> s(col.size());
            for (size_t i = 0; i < s.size(); i++) {
                s[i] = f.mul(c, col[i]);
            }
            ops.push_back(weyl_monomial(f, n, s));
        }
    }
    std::vector<Complex> v = StateVector::uniform(f, n).amps();
    for (const Monomial &w : ops) {
        // W^p is the scalar ω^e; rescale W by a p-th root of it so that W'^p = I.
        std::uint64_t e = 0;
        size_t idx = 0;
        for (std::uint32_t c = 0; c < p; c++) {
            e += w.phase[idx];
            idx = w.target[idx];
        }
        Complex lambda0 = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(e % p) / (double(p) * p));
        std::vector<std::vector<Complex>> powers{v};
        for (std::uint32_t c = 1; c < p; c++) {
            auto next = apply_monomial(w, omega, powers.back());
            for (auto &a : next) {
                a /= lambda0;
            }
            powers.push_back(std::move(next));
        }
        std::vector<Complex> best;
        double best_norm = -1;
        for (std::uint32_t k = 0; k < p; k++) {
            std::vector<Complex> proj(v.size(), 0);
            for (std::uint32_t c = 0; c < p; c++) {
                Complex coef = std::conj(omega[(std::uint64_t{k} * c) % p]) / static_cast<double>(p);
                for (size_t i = 0; i < v.size(); i++) {
                    proj[i] += coef * powers[c][i];
                }
            }
            double nrm = vec_norm(proj);
            if (nrm > best_norm + kEigenTol) {
                best_norm = nrm;
                best = std::move(proj);
            }
        }
        if (best_norm < kEigenTol) {
            throw Error(ErrorCode::kNumericalDegeneracy, "all eigenprojections vanished");
        }
        for (auto &a : best) {
            a /= best_norm;
        }
        v = std::move(best);
    }
    for (const Monomial &w : ops) {
        auto wv = apply_monomial(w, omega, v);
        Complex lambda = 0;
        for (size_t i = 0; i < v.size(); i++) {
            lambda += std::conj(v[i]) * wv[i];
        }
        double residual = 0;
        for (size_t i = 0; i < v.size(); i++) {
            residual += std::norm(wv[i] - lambda * v[i]);
        }
        if (std::abs(std::abs(lambda) - 1) > kEigenTol || std::sqrt(residual) > kEigenTol) {
            throw Error(ErrorCode::kNumericalDegeneracy, "result is not a joint eigenvector");
        }
    }
    return StateVector(f, n, std::move(v));
}

CosetMeasurement::CosetMeasurement(const MatrixFq &g, const MatrixFq &h)
    : h_(h), psi0_(stabilized_state(g)) {
    size_t n = g.rows() / 2;
    if (g.cols() != n || h.rows() != g.rows() || h.cols() != n) {
        throw Error(ErrorCode::kDimMismatch, "coset measurement needs 2n×n generator and completion");
    }
    if (dim() <= kBasisCacheLimit) {
        basis_.resize(dim(), dim());
        for (size_t s = 0; s < dim(); s++) {
            basis_.col(s) = to_eigen(basis_state(s));
        }
    }
}

StateVector CosetMeasurement::basis_state(size_t outcome) const {
    auto s = index_to_digits(psi0_.field().q(), psi0_.n(), outcome);
    return weyl_apply(psi0_, h_.apply(s));
}

std::vector<double> CosetMeasurement::probabilities(const StateVector &phi) const {
    std::vector<double> out(dim());
    if (basis_.size() > 0) {
        Eigen::VectorXcd amps = basis_.adjoint() * to_eigen(phi);
        for (size_t s = 0; s < dim(); s++) {
            out[s] = std::norm(amps(s));
        }
        return out;
    }
    for (size_t s = 0; s < dim(); s++) {
        out[s] = std::norm(basis_state(s).inner(phi));
    }
    return out;
}

std::vector<double> CosetMeasurement::probabilities(const DensityOp &rho) const {
    std::vector<double> out(dim());
    for (size_t s = 0; s < dim(); s++) {
        Eigen::VectorXcd b = basis_.size() > 0 ? Eigen::VectorXcd(basis_.col(s)) : to_eigen(basis_state(s));
        out[s] = (b.adjoint() * rho.matrix() * b)(0, 0).real();
    }
    return out;
}

std::vector<Elem> simulate_box(const SumBoxSpec &spec, std::span<const Elem> x) {
    require_maximal(spec);
    checked_dim(spec.field.q(), spec.n, kStateLimit);
    CosetMeasurement meas(spec.g, spec.h);
    Measured m = measure_deterministic(meas, spec, x);
    if (m.defect > kDeterministicTol) {
        throw Error(ErrorCode::kNotDeterministic, "no coset basis state has overlap 1");
    }
    return m.digits;
}

CertifyReport certify(const SumBoxSpec &spec, const CertifyMode &mode) {
    require_maximal(spec);
    const Field &f = spec.field;
    size_t len = 2 * spec.n;
    if (mode.exhaustive) {
        checked_dim(f.q(), len, kCertifyExhaustiveLimit);
    }
    checked_dim(f.q(), spec.n, kStateLimit);
    CosetMeasurement meas(spec.g, spec.h);
    CertifyReport report;
    report.pass = true;
    std::vector<Elem> zero(len, 0);
    Measured base = measure_deterministic(meas, spec, zero);
    report.offset = base.digits;
    report.max_prob_defect = base.defect;
    auto check = [&](const std::vector<Elem> &x) {
        Measured got = measure_deterministic(meas, spec, x);
        report.max_prob_defect = std::max(report.max_prob_defect, got.defect);
        std::vector<Elem> expected = spec.m.apply(x);
        for (size_t i = 0; i < spec.n; i++) {
            if (f.sub(got.digits[i], report.offset[i]) != expected[i]) {
                report.pass = false;
            }
        }
        report.tested++;
    };
    if (mode.exhaustive) {
        size_t total = checked_dim(f.q(), len, kCertifyExhaustiveLimit);
        for (size_t idx = 0; idx < total; idx++) {
            check(index_to_digits(f.q(), len, idx));
        }
    } else {
        std::mt19937_64 rng(mode.seed);
        std::uniform_int_distribution<Elem> digit(0, f.q() - 1);
        for (size_t t = 0; t < mode.trials; t++) {
            std::vector<Elem> x(len);
            for (auto &v : x) {
                v = digit(rng);
            }
            check(x);
        }
    }
    if (report.max_prob_defect > kDeterministicTol) {
        report.pass = false;
    }
    return report;
}

NonmaxResult simulate_nonmax(const SumBoxSpec &spec, std::span<const Elem> x, size_t shots, std::uint64_t seed) {
    const Field &f = spec.field;
    size_t n = spec.n, kappa = spec.kappa;
    checked_dim(f.q(), n, kDensityLimit);
    if (x.size() != 2 * n) {
        throw Error(ErrorCode::kDimMismatch, "input must have length 2N");
    }
    MatrixFq full = symplectic_complete(spec.g);
    MatrixFq g_max = full.block(0, 0, 2 * n, n);
    MatrixFq h_extra = full.block(0, n + kappa, 2 * n, n - kappa);
    CosetMeasurement meas(g_max, hstack(spec.h, h_extra));

    // Uniform mixture over the joint eigenbasis of the non-maximal stabilizer.
    size_t mix = checked_dim(f.q(), n - kappa, kDensityLimit);
    Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(meas.dim(), meas.dim());
    for (size_t t = 0; t < mix; t++) {
        auto shift = h_extra.apply(index_to_digits(f.q(), n - kappa, t));
        Eigen::VectorXcd v = to_eigen(weyl_apply(meas.reference(), shift));
        rho0 += v * v.adjoint() / static_cast<double>(mix);
    }
    DensityOp initial(f, n, std::move(rho0));

    NonmaxResult out;
    std::vector<double> at_zero = meas.probabilities(initial);
    size_t zero_best = static_cast<size_t>(std::max_element(at_zero.begin(), at_zero.end()) - at_zero.begin());
    auto zero_digits = index_to_digits(f.q(), n, zero_best);
    out.offset.assign(zero_digits.begin(), zero_digits.begin() + static_cast<std::ptrdiff_t>(kappa));

    out.probabilities = meas.probabilities(weyl_conjugate(initial, x));
    for (auto &pr : out.probabilities) {
        pr = std::max(pr, 0.0);
    }
    out.counts.assign(out.probabilities.size(), 0);
    std::mt19937_64 rng(seed);
    std::discrete_distribution<size_t> sampler(out.probabilities.begin(), out.probabilities.end());
    for (size_t s = 0; s < shots; s++) {
        out.counts[sampler(rng)]++;
    }
    return out;
}

}  // namespace nsumbox
