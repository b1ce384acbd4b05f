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

#include "nsumbox/gf.hpp"

#include <algorithm>
#include <sstream>

#include "nsumbox/error.hpp"

namespace nsumbox {

namespace {

using Poly = std::vector<std::uint32_t>;

constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 31;
constexpr std::uint32_t kBinaryTableLimit = 256;
constexpr std::uint32_t kUnaryTableLimit = 1u << 16;

void trim(Poly &a) {
    while (!a.empty() && a.back() == 0) {
        a.pop_back();
    }
}

std::uint32_t mod_inv_prime(std::uint32_t a, std::uint32_t p) {
    std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t t = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - t * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - t * s1);
    }
    std::int64_t v = s0 % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(v < 0 ? v + p : v);
}

// Remainder and quotient of a / b over GF(p); b must be nonzero after trimming.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly &b, std::uint32_t p) {
    trim(a);
    std::uint64_t lead_inv = mod_inv_prime(b.back(), p);
    if (a.size() < b.size()) {
        return {Poly{}, a};
    }
    Poly quo(a.size() - b.size() + 1, 0);
    for (size_t d = a.size(); d-- >= b.size();) {
        std::uint64_t c = a[d] * lead_inv % p;
        if (c == 0) {
            continue;
        }
        size_t shift = d - (b.size() - 1);
        quo[shift] = static_cast<std::uint32_t>(c);
        for (size_t i = 0; i < b.size(); i++) {
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c * b[i] % p)) % p);
        }
    }
    trim(a);
    trim(quo);
    return {quo, a};
}

Poly poly_mul(const Poly &a, const Poly &b, std::uint32_t p) {
    if (a.empty() || b.empty()) {
        return {};
    }
    Poly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); i++) {
        for (size_t j = 0; j < b.size(); j++) {
            out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t{a[i]} * b[j]) % p);
        }
    }
    trim(out);
    return out;
}

Poly poly_sub(Poly a, const Poly &b, std::uint32_t p) {
    a.resize(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < b.size(); i++) {
        a[i] = (a[i] + p - b[i]) % p;
    }
    trim(a);
    return a;
}

bool has_root(std::uint32_t p, std::span<const std::uint32_t> poly) {
    for (std::uint64_t x = 0; x < p; x++) {
        std::uint64_t acc = 0;
        for (size_t i = poly.size(); i-- > 0;) {
            acc = (acc * x + poly[i]) % p;
        }
        if (acc == 0) {
            return true;
        }
    }
    return false;
}

std::uint64_t checked_power(std::uint32_t p, std::uint32_t r) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < r; i++) {
        q *= p;
        if (q > kMaxFieldSize) {
            throw Error(ErrorCode::kFieldTooLarge, "p^r exceeds 2^31");
        }
    }
    return q;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; d++) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic) {
    if (monic.size() < 2 || monic.back() != 1) {
        return false;
    }
    size_t r = monic.size() - 1;
    if (r == 1) {
        return true;
    }
    if (r <= 3) {
        return !has_root(p, monic);
    }
    Poly target(monic.begin(), monic.end());
    for (size_t d = 1; d <= r / 2; d++) {
        std::uint64_t count = 1;
        for (size_t i = 0; i < d; i++) {
            count *= p;
        }
        Poly divisor(d + 1, 0);
        divisor[d] = 1;
        for (std::uint64_t idx = 0; idx < count; idx++) {
            std::uint64_t t = idx;
            for (size_t i = 0; i < d; i++) {
                divisor[i] = static_cast<std::uint32_t>(t % p);
                t /= p;
            }
            if (poly_divmod(target, divisor, p).second.empty()) {
                return false;
            }
        }
    }
    return true;
}

struct Field::Impl {
    std::uint32_t p = 0;
    std::uint32_t r = 0;
    std::uint32_t q = 0;
    Poly modulus;
    std::vector<std::uint32_t> pow_p;
    std::vector<Elem> add_table;
    std::vector<Elem> mul_table;
    std::vector<Elem> neg_table;
    std::vector<Elem> inv_table;
    std::vector<std::uint32_t> trace_table;

    Poly decode(Elem a) const {
        Poly c(r);
        for (std::uint32_t i = 0; i < r; i++) {
            c[i] = a % p;
            a /= p;
        }
        return c;
    }
    Elem encode(const Poly &c) const {
        Elem out = 0;
        for (size_t i = std::min<size_t>(c.size(), r); i-- > 0;) {
            out = out * p + c[i];
        }
        return out;
    }

    Elem add_slow(Elem a, Elem b) const {
        if (r == 1) {
            return static_cast<Elem>((std::uint64_t{a} + b) % p);
        }
        if (p == 2) {
            return a ^ b;
        }
        Elem out = 0;
        for (std::uint32_t i = 0; i < r; i++) {
            out += ((a % p + b % p) % p) * pow_p[i];
            a /= p;
            b /= p;
        }
        return out;
    }
    Elem neg_slow(Elem a) const {
        if (r == 1) {
            return a == 0 ? 0 : p - a;
        }
        Elem out = 0;
        for (std::uint32_t i = 0; i < r; i++) {
            out += ((p - a % p) % p) * pow_p[i];
            a /= p;
        }
        return out;
    }
    Elem mul_slow(Elem a, Elem b) const {
        if (r == 1) {
            return static_cast<Elem>(std::uint64_t{a} * b % p);
        }
        Poly prod = poly_mul(decode(a), decode(b), p);
        return encode(poly_divmod(prod, modulus, p).second);
    }
    Elem inv_slow(Elem a) const {
        if (r == 1) {
            return mod_inv_prime(a, p);
        }
        // Extended Euclid: s * a == gcd (mod modulus), gcd is a nonzero constant.
        Poly r0 = modulus, r1 = decode(a);
        trim(r1);
        Poly s0, s1{1};
        while (!r1.empty()) {
            auto [quo, rem] = poly_divmod(r0, r1, p);
            r0 = std::move(r1);
            r1 = std::move(rem);
            Poly next = poly_sub(s0, poly_mul(quo, s1, p), p);
            s0 = std::move(s1);
            s1 = std::move(next);
        }
        std::uint64_t scale = mod_inv_prime(r0[0], p);
        for (auto &c : s0) {
            c = static_cast<std::uint32_t>(c * scale % p);
        }
        return encode(poly_divmod(s0, modulus, p).second);
    }
    Elem pow_slow(Elem a, std::uint64_t e) const {
        Elem result = 1;
        while (e > 0) {
            if (e & 1) {
                result = mul_slow(result, a);
            }
            a = mul_slow(a, a);
            e >>= 1;
        }
        return result;
    }
    std::uint32_t trace_slow(Elem a) const {
        Elem y = a, sum = a;
        for (std::uint32_t i = 1; i < r; i++) {
            y = pow_slow(y, p);
            sum = add_slow(sum, y);
        }
        return sum;
    }
};

Field::Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {
}

Field Field::with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus) {
    if (!is_prime(p)) {
        throw Error(ErrorCode::kNonPrime, std::to_string(p) + " is not prime");
    }
    if (modulus.size() < 2) {
        throw Error(ErrorCode::kDegreeZero, "modulus must have degree >= 1");
    }
    for (auto c : modulus) {
        if (c >= p) {
            throw Error(ErrorCode::kInvalidSpec, "modulus coefficient out of range");
        }
    }
    if (!is_irreducible(p, modulus)) {
        throw Error(ErrorCode::kInvalidSpec, "modulus is not monic irreducible");
    }
    auto impl = std::make_shared<Impl>();
    impl->p = p;
    impl->r = static_cast<std::uint32_t>(modulus.size() - 1);
    impl->q = static_cast<std::uint32_t>(checked_power(p, impl->r));
    impl->modulus = std::move(modulus);
    impl->pow_p.resize(impl->r);
    for (std::uint32_t i = 0; i < impl->r; i++) {
        impl->pow_p[i] = i == 0 ? 1 : impl->pow_p[i - 1] * p;
    }
    std::uint32_t q = impl->q;
    if (q <= kUnaryTableLimit) {
        impl->neg_table.resize(q);
        impl->inv_table.resize(q, 0);
        impl->trace_table.resize(q);
        for (Elem a = 0; a < q; a++) {
            impl->neg_table[a] = impl->neg_slow(a);
            impl->inv_table[a] = a == 0 ? 0 : impl->inv_slow(a);
            impl->trace_table[a] = impl->trace_slow(a);
        }
    }
    if (q <= kBinaryTableLimit) {
        impl->add_table.resize(size_t{q} * q);
        impl->mul_table.resize(size_t{q} * q);
        for (Elem a = 0; a < q; a++) {
            for (Elem b = 0; b < q; b++) {
                impl->add_table[size_t{a} * q + b] = impl->add_slow(a, b);
                impl->mul_table[size_t{a} * q + b] = impl->mul_slow(a, b);
            }
        }
    }
    return Field(std::move(impl));
}

Field Field::make(std::uint32_t p, std::uint32_t r) {
    if (!is_prime(p)) {
        throw Error(ErrorCode::kNonPrime, std::to_string(p) + " is not prime");
    }
    if (r == 0) {
        throw Error(ErrorCode::kDegreeZero, "extension degree must be >= 1");
    }
    std::uint64_t count = checked_power(p, r);
    Poly candidate(r + 1, 0);
    candidate[r] = 1;
    for (std::uint64_t idx = 0; idx < count; idx++) {
        // c_0 is the most significant digit of idx, so idx order is lexicographic from c_0.
        std::uint64_t t = idx;
        for (std::uint32_t i = r; i-- > 0;) {
            candidate[i] = static_cast<std::uint32_t>(t % p);
            t /= p;
        }
        if (is_irreducible(p, candidate)) {
            return with_modulus(p, candidate);
        }
    }
    throw Error(ErrorCode::kInvalidSpec, "no irreducible polynomial found");
}

std::uint32_t Field::p() const {
    return impl_->p;
}
std::uint32_t Field::r() const {
    return impl_->r;
}
std::uint32_t Field::q() const {
    return impl_->q;
}
const std::vector<std::uint32_t> &Field::modulus() const {
    return impl_->modulus;
}

std::string Field::name() const {
    std::ostringstream out;
    out << "GF(" << impl_->p;
    if (impl_->r > 1) {
        out << "^" << impl_->r;
    }
    out << ")";
    return out.str();
}

Elem Field::add(Elem a, Elem b) const {
    const Impl &f = *impl_;
    if (!f.add_table.empty()) {
        return f.add_table[size_t{a} * f.q + b];
    }
    return f.add_slow(a, b);
}

Elem Field::neg(Elem a) const {
    const Impl &f = *impl_;
    if (!f.neg_table.empty()) {
        return f.neg_table[a];
    }
    return f.neg_slow(a);
}

Elem Field::sub(Elem a, Elem b) const {
    return add(a, neg(b));
}

Elem Field::mul(Elem a, Elem b) const {
    const Impl &f = *impl_;
    if (!f.mul_table.empty()) {
        return f.mul_table[size_t{a} * f.q + b];
    }
    return f.mul_slow(a, b);
}

Elem Field::inv(Elem a) const {
    if (a == 0) {
        throw Error(ErrorCode::kDivisionByZero, "inverse of zero");
    }
    const Impl &f = *impl_;
    if (!f.inv_table.empty()) {
        return f.inv_table[a];
    }
    return f.inv_slow(a);
}

Elem Field::div(Elem a, Elem b) const {
    return mul(a, inv(b));
}

Elem Field::pow(Elem a, std::uint64_t e) const {
    Elem result = 1, base = a;
    while (e > 0) {
        if (e & 1) {
            result = mul(result, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

PrimeResidue Field::trace(Elem a) const {
    const Impl &f = *impl_;
    if (!f.trace_table.empty()) {
        return {f.trace_table[a]};
    }
    return {f.trace_slow(a)};
}

PrimeResidue Field::multiplication_map_trace(Elem a) const {
    const Impl &f = *impl_;
    std::uint64_t acc = 0;
    for (std::uint32_t j = 0; j < f.r; j++) {
        // Column j of T_a is a * t^j; its diagonal entry is coefficient j.
        acc += f.decode(mul(a, f.pow_p[j]))[j];
    }
    return {static_cast<std::uint32_t>(acc % f.p)};
}

std::vector<std::uint32_t> Field::coeffs(Elem a) const {
    return impl_->decode(a);
}

Elem Field::from_coeffs(std::span<const std::uint32_t> c) const {
    if (c.size() != impl_->r) {
        throw Error(ErrorCode::kLengthMismatch, "coefficient count must equal r");
    }
    for (auto v : c) {
        if (v >= impl_->p) {
            throw Error(ErrorCode::kInvalidSpec, "coefficient out of range");
        }
    }
    return impl_->encode(Poly(c.begin(), c.end()));
}

FieldElement Field::element(Elem a) const {
    return FieldElement(*this, a);
}

bool operator==(const Field &a, const Field &b) {
    return a.impl_ == b.impl_ || (a.impl_->p == b.impl_->p && a.impl_->modulus == b.impl_->modulus);
}

void require_same_field(const Field &a, const Field &b) {
    if (!(a == b)) {
        throw Error(ErrorCode::kFieldMismatch, a.name() + " vs " + b.name());
    }
}

FieldElement::FieldElement(Field field, Elem value) : field_(std::move(field)), value_(value) {
    if (!field_.contains(value)) {
        throw Error(ErrorCode::kInvalidSpec, "element encoding out of range");
    }
}

FieldElement FieldElement::inverse() const {
    return {field_, field_.inv(value_)};
}

PrimeResidue FieldElement::trace() const {
    return field_.trace(value_);
}

FieldElement operator+(const FieldElement &a, const FieldElement &b) {
    require_same_field(a.field_, b.field_);
    return {a.field_, a.field_.add(a.value_, b.value_)};
}

FieldElement operator-(const FieldElement &a, const FieldElement &b) {
    require_same_field(a.field_, b.field_);
    return {a.field_, a.field_.sub(a.value_, b.value_)};
}

FieldElement operator*(const FieldElement &a, const FieldElement &b) {
    require_same_field(a.field_, b.field_);
    return {a.field_, a.field_.mul(a.value_, b.value_)};
}

FieldElement operator-(const FieldElement &a) {
    return {a.field_, a.field_.neg(a.value_)};
}

bool operator==(const FieldElement &a, const FieldElement &b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
}

PrimeResidue tracial_form(const Field &f, std::span<const Elem> x, std::span<const Elem> y) {
    if (x.size() != y.size()) {
        throw Error(ErrorCode::kLengthMismatch, "form arguments differ in length");
    }
    Elem acc = 0;
    for (size_t i = 0; i < x.size(); i++) {
        acc = f.add(acc, f.mul(x[i], y[i]));
    }
    return f.trace(acc);
}

PrimeResidue trace_symplectic_form(const Field &f, std::span<const Elem> x, std::span<const Elem> y) {
    if (x.size() != y.size()) {
        throw Error(ErrorCode::kLengthMismatch, "form arguments differ in length");
    }
    if (x.size() % 2 != 0) {
        throw Error(ErrorCode::kOddLength, "symplectic form needs even length");
    }
    size_t n = x.size() / 2;
    Elem acc = 0;
    for (size_t i = 0; i < n; i++) {
        acc = f.add(acc, f.sub(f.mul(x[n + i], y[i]), f.mul(x[i], y[n + i])));
    }
    return f.trace(acc);
}

FormValues bilinear_forms(const Field &f, std::span<const Elem> x, std::span<const Elem> y) {
    return {tracial_form(f, x, y), trace_symplectic_form(f, x, y)};
}

}  // namespace nsumbox
