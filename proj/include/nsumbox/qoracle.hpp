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

#ifndef NSUMBOX_QORACLE_HPP_
#define NSUMBOX_QORACLE_HPP_

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nsumbox/sumbox.hpp"

namespace nsumbox {

using Complex = std::complex<double>;

/// Basis index <-> digit vector, qudit 0 most significant.
std::vector<Elem> index_to_digits(std::uint32_t q, size_t n, size_t index);
size_t digits_to_index(std::uint32_t q, std::span<const Elem> digits);

/// Amplitudes over the q^n computational basis states.
class StateVector {
   public:
    StateVector(Field field, size_t n, std::vector<Complex> amps);
    static StateVector basis(const Field &field, size_t n, size_t index);
    static StateVector uniform(const Field &field, size_t n);

    const Field &field() const {
        return field_;
    }
    size_t n() const {
        return n_;
    }
    size_t dim() const {
        return amps_.size();
    }
    const std::vector<Complex> &amps() const {
        return amps_;
    }
    Complex operator[](size_t i) const {
        return amps_[i];
    }
    double norm() const;
    /// <this|other>.
    Complex inner(const StateVector &other) const;

   private:
    Field field_;
    size_t n_;
    std::vector<Complex> amps_;
};

class DensityOp {
   public:
    DensityOp(Field field, size_t n, Eigen::MatrixXcd rho);
    static DensityOp pure(const StateVector &psi);

    const Field &field() const {
        return field_;
    }
    size_t n() const {
        return n_;
    }
    const Eigen::MatrixXcd &matrix() const {
        return rho_;
    }
    /// Hermitian and unit trace within `tol`, smallest eigenvalue >= -psd_tol.
    bool is_valid(double tol = 1e-9, double psd_tol = 1e-7) const;

   private:
    Field field_;
    size_t n_;
    Eigen::MatrixXcd rho_;
};

/// Keeps the listed 0-based qudits (in increasing order) and traces out the rest.
DensityOp partial_trace(const DensityOp &rho, std::span<const size_t> keep);

/// W(s) = X(s_1)Z(s_{n+1}) ⊗ ... ⊗ X(s_n)Z(s_{2n}), with ω = exp(2πi/p) and Z(b)|j> = ω^{tr(bj)}|j>.
StateVector weyl_apply(const StateVector &psi, std::span<const Elem> s);
/// W(s) ρ W(s)†.
DensityOp weyl_conjugate(const DensityOp &rho, std::span<const Elem> s);
/// Dense W(s), for small operator-level checks.
Eigen::MatrixXcd weyl_matrix(const Field &field, size_t n, std::span<const Elem> s);
/// Whether W(s) and W(t) commute, via the trace-symplectic form.
bool weyl_commute(const Field &field, std::span<const Elem> s, std::span<const Elem> t);

/// Applies a q×q unitary to one qudit.
StateVector apply_local(const StateVector &psi, size_t qudit, const Eigen::MatrixXcd &u);
/// |a>|b> -> |a>|a+b> on (control, target); the CNOT for q = 2.
StateVector apply_sum(const StateVector &psi, size_t control, size_t target);

/// Joint eigenvector of W(c·g_j) for every column g_j and every c in the polynomial basis.
StateVector stabilized_state(const MatrixFq &g);

/// Coset basis {W(h·s) ψ0 : s ∈ F_q^n} for a maximal generator g (2n×n) and completion h.
class CosetMeasurement {
   public:
    CosetMeasurement(const MatrixFq &g, const MatrixFq &h);

    const StateVector &reference() const {
        return psi0_;
    }
    size_t dim() const {
        return psi0_.dim();
    }
    StateVector basis_state(size_t outcome) const;
    /// Outcome probabilities for a pure or mixed state.
    std::vector<double> probabilities(const StateVector &phi) const;
    std::vector<double> probabilities(const DensityOp &rho) const;

   private:
    MatrixFq h_;
    StateVector psi0_;
    Eigen::MatrixXcd basis_;  // columns are basis states; empty when too large to cache
};

/// Deterministic measured digits of the maximal box on input x.
std::vector<Elem> simulate_box(const SumBoxSpec &spec, std::span<const Elem> x);

struct CertifyMode {
    bool exhaustive = true;
    size_t trials = 0;
    std::uint64_t seed = 0;

    static CertifyMode all_inputs() {
        return {true, 0, 0};
    }
    static CertifyMode random(size_t trials, std::uint64_t seed) {
        return {false, trials, seed};
    }
};

struct CertifyReport {
    bool pass = false;
    size_t tested = 0;
    double max_prob_defect = 0;
    std::vector<Elem> offset;
};

/// Checks simulate_box(x) - simulate_box(0) == m·x over all or random inputs.
CertifyReport certify(const SumBoxSpec &spec, const CertifyMode &mode);

struct NonmaxResult {
    /// Indexed like basis states: outcome digits (informative κ first, then discarded).
    std::vector<double> probabilities;
    std::vector<std::uint64_t> counts;
    /// Informative digits measured at x = 0.
    std::vector<Elem> offset;
};

/// Density-operator simulation of a (κ,N)-box measured in a maximal-completion coset basis,
/// plus `shots` seeded samples.
NonmaxResult simulate_nonmax(const SumBoxSpec &spec, std::span<const Elem> x, size_t shots, std::uint64_t seed);

}  // namespace nsumbox

#endif  // NSUMBOX_QORACLE_HPP_
