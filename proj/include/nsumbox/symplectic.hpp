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

#ifndef NSUMBOX_SYMPLECTIC_HPP_
#define NSUMBOX_SYMPLECTIC_HPP_

#include <optional>

#include "nsumbox/matfq.hpp"

namespace nsumbox {

/// J = (0, -I; I, 0) of size 2n.
MatrixFq build_J(const Field &field, size_t n);

/// aᵀ J b; both must have the same even row count.
MatrixFq symplectic_gram(const MatrixFq &a, const MatrixFq &b);

/// Fᵀ J F == J, entrywise over GF(q).
bool is_symplectic(const MatrixFq &f);
/// Jᵀ Fᵀ J; throws NotSymplectic.
MatrixFq symplectic_inverse(const MatrixFq &f);

/// gᵀ J g == 0 for a matrix with an even row count.
bool is_self_orthogonal(const MatrixFq &g);
/// 2N×N, gᵀ J g == 0 and rank N.
bool is_sso(const MatrixFq &m);

/// Symplectic F whose leading columns are g. Partners and extra vectors are found by
/// symplectic Gram-Schmidt over the standard basis, in index order.
MatrixFq symplectic_complete(const MatrixFq &g);
/// (g | G2 | H2) from the completion: a full-rank basis of the symplectic complement of g.
MatrixFq gperp_extend(const MatrixFq &g);

/// Block matrix (L1, L2; L3, L4) with diagonal N×N blocks, invertible per transmitter.
class LitTransform {
   public:
    LitTransform(MatrixFq l1, MatrixFq l2, MatrixFq l3, MatrixFq l4);
    static LitTransform identity(const Field &field, size_t n);
    /// Reads the four blocks of a 2N×2N matrix; throws NotALit for anything off-diagonal.
    static LitTransform from_matrix(const MatrixFq &m);

    size_t n() const {
        return l1_.rows();
    }
    const MatrixFq &l1() const {
        return l1_;
    }
    const MatrixFq &l2() const {
        return l2_;
    }
    const MatrixFq &l3() const {
        return l3_;
    }
    const MatrixFq &l4() const {
        return l4_;
    }
    MatrixFq matrix() const;
    LitTransform inverse() const;

    friend bool operator==(const LitTransform &a, const LitTransform &b);

   private:
    MatrixFq l1_, l2_, l3_, l4_;
};

/// (I-Σ, Σ; -Σ, I-Σ) for a diagonal 0/1 matrix Σ.
LitTransform signed_swap_lit(const MatrixFq &sigma);

struct SignedSwap {
    MatrixFq m_out;
    MatrixFq sigma;
};

/// Makes the left half invertible by swapping (left_i, right_i) -> (-right_i, left_i) where
/// the left column is dependent. Requires mtᵀ SSO.
SignedSwap signed_column_swap(const MatrixFq &mt);

struct StandardForm {
    MatrixFq s;
    MatrixFq p;
    LitTransform lambda;
};

/// mt == p · (I | s) · lambda with s symmetric.
StandardForm to_standard_form(const MatrixFq &mt);

struct Feasibility {
    /// Invertible diagonal Δ with (M_l | M_r Δ)ᵀ SSO, if one was found.
    std::optional<MatrixFq> delta;
    /// False when the search fell back to random sampling and found nothing.
    bool exhaustive = true;
};

Feasibility lit_feasibility(const MatrixFq &mt);

/// p · mt · lam.
MatrixFq apply_lit(const MatrixFq &mt, const LitTransform &lam, const MatrixFq &p);

}  // namespace nsumbox

#endif  // NSUMBOX_SYMPLECTIC_HPP_
