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

#ifndef NSUMBOX_GF_HPP_
#define NSUMBOX_GF_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace nsumbox {

/// Canonical integer encoding of a field element: enc(x) = sum_i c_i p^i over the
/// polynomial-basis coordinates c_i of x.
using Elem = std::uint32_t;

struct PrimeResidue {
    std::uint32_t value = 0;
    friend bool operator==(const PrimeResidue &, const PrimeResidue &) = default;
};

bool is_prime(std::uint64_t n);

/// True iff `monic` (low-to-high, leading coefficient 1) is irreducible over GF(p).
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic);

class FieldElement;

/// GF(p^r) arithmetic on canonical encodings. Cheap to copy; all copies share one
/// immutable table set.
class Field {
   public:
    /// Canonical field: the modulus is the lexicographically smallest monic irreducible of
    /// degree r, coefficients compared from the constant term upward.
    static Field make(std::uint32_t p, std::uint32_t r);
    /// `modulus` is low-to-high and must be monic and irreducible of degree >= 1.
    static Field with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus);

    std::uint32_t p() const;
    std::uint32_t r() const;
    std::uint32_t q() const;
    const std::vector<std::uint32_t> &modulus() const;
    bool contains(Elem a) const {
        return a < q();
    }
    std::string name() const;

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    /// Throws DivisionByZero on 0.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const;
    Elem pow(Elem a, std::uint64_t e) const;

    /// tr(x) = x + x^p + ... + x^(p^(r-1)).
    PrimeResidue trace(Elem a) const;
    /// Trace of the GF(p)-linear map y -> a*y in the polynomial basis.
    PrimeResidue multiplication_map_trace(Elem a) const;

    std::vector<std::uint32_t> coeffs(Elem a) const;
    Elem from_coeffs(std::span<const std::uint32_t> c) const;
    /// Element of the prime subfield with integer value c mod p.
    Elem from_prime(std::uint64_t c) const {
        return static_cast<Elem>(c % p());
    }

    FieldElement element(Elem a) const;

    friend bool operator==(const Field &a, const Field &b);

   private:
    struct Impl;
    explicit Field(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

/// Throws FieldMismatch unless `a == b`.
void require_same_field(const Field &a, const Field &b);

class FieldElement {
   public:
    FieldElement(Field field, Elem value);

    const Field &field() const {
        return field_;
    }
    Elem value() const {
        return value_;
    }
    std::vector<std::uint32_t> coeffs() const {
        return field_.coeffs(value_);
    }
    FieldElement inverse() const;
    PrimeResidue trace() const;

    friend FieldElement operator+(const FieldElement &a, const FieldElement &b);
    friend FieldElement operator-(const FieldElement &a, const FieldElement &b);
    friend FieldElement operator*(const FieldElement &a, const FieldElement &b);
    friend FieldElement operator-(const FieldElement &a);
    friend bool operator==(const FieldElement &a, const FieldElement &b);

   private:
    Field field_;
    Elem value_;
};

/// tr(sum_i x_i y_i).
PrimeResidue tracial_form(const Field &f, std::span<const Elem> x, std::span<const Elem> y);
/// <x, J y> with J = (0, -I; I, 0); needs even length.
PrimeResidue trace_symplectic_form(const Field &f, std::span<const Elem> x, std::span<const Elem> y);

struct FormValues {
    PrimeResidue tracial;
    PrimeResidue trace_symplectic;
};
FormValues bilinear_forms(const Field &f, std::span<const Elem> x, std::span<const Elem> y);

}  // namespace nsumbox

#endif  // NSUMBOX_GF_HPP_
