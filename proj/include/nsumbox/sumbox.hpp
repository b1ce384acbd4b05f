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

#ifndef NSUMBOX_SUMBOX_HPP_
#define NSUMBOX_SUMBOX_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nsumbox/matfq.hpp"

namespace nsumbox {

/// A validated (κ,N)-sum box. With x = (x_1..x_N | x_{N+1}..x_{2N}) the informative
/// output is y = m·x; κ = N is the plain N-sum box.
struct SumBoxSpec {
    Field field;
    size_t n;
    size_t kappa;
    MatrixFq g;
    MatrixFq gperp;
    MatrixFq h;
    MatrixFq m;
};

/// Throws InvalidSpec describing the first violated invariant.
void validate_spec(const SumBoxSpec &spec);

/// gperp from gperp_extend; h, when omitted, is grown greedily from standard basis vectors.
SumBoxSpec build_box(const MatrixFq &g, const std::optional<MatrixFq> &h = std::nullopt);
/// Same, with a caller-supplied gperp whose leading κ columns are g.
SumBoxSpec build_box_with_gperp(const MatrixFq &g, const MatrixFq &gperp, const std::optional<MatrixFq> &h);

/// A spec whose transfer matrix is exactly mt (needs mt J mtᵀ = 0 and full row rank).
SumBoxSpec box_from_transfer(const MatrixFq &mt);

struct BoxOutput {
    std::vector<Elem> digits;
    std::vector<Elem> discarded;
    std::uint64_t seed_used;
};

/// Classical evaluation. `strict` drops the random discarded digits.
BoxOutput evaluate(const SumBoxSpec &spec, std::span<const Elem> x, std::uint64_t seed, bool strict = false);

/// Shared input vector filled one transmitter at a time; transmitter t (1-based) controls
/// positions t and N+t.
class InputAssembly {
   public:
    InputAssembly(Field field, size_t n);
    void transmit(size_t tx, Elem a, Elem b);
    bool complete() const;
    /// Throws InvalidSpec while some transmitter has not sent.
    std::vector<Elem> x() const;

   private:
    Field field_;
    size_t n_;
    std::vector<Elem> x_;
    std::vector<bool> sent_;
};

}  // namespace nsumbox

#endif  // NSUMBOX_SUMBOX_HPP_
