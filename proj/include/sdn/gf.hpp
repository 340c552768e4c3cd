#pragma once

// Exact arithmetic over F2, F3 and F4 and fixed-length vectors over them.
//
// Vectors are stored as two 64-bit planes, one bit per coordinate
// (coordinate i is bit i). Element codes are `plane0 | plane1 << 1`:
//
//   F2:  0 = (0,0)  1 = (1,0)
//   F3:  0 = (0,0)  1 = (1,0)  2 = (0,1)
//   F4:  0 = (0,0)  1 = (1,0)  w = (0,1)  w2 = (1,1)    (basis {1, w}, w2 = 1 + w)
//
// so inner products, weights and scalar multiples reduce to word-wide boolean
// operations and popcounts.

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdn/bigint.hpp"
#include "sdn/errors.hpp"

namespace sdn {

enum class Field : std::uint8_t { F2, F3, F4 };

using FieldElement = std::uint8_t;

inline constexpr int kMaxLength = 64;

constexpr int field_order(Field f) noexcept {
    switch (f) {
        case Field::F2: return 2;
        case Field::F3: return 3;
        case Field::F4: return 4;
    }
    return 0;
}

std::string_view field_name(Field f) noexcept;
Field parse_field(std::string_view name);

namespace gf {

// Scalar arithmetic on element codes.
constexpr FieldElement add(Field f, FieldElement a, FieldElement b) noexcept {
    switch (f) {
        case Field::F2: return a ^ b;
        case Field::F3: return static_cast<FieldElement>((a + b) % 3);
        case Field::F4: return a ^ b;
    }
    return 0;
}

constexpr FieldElement neg(Field f, FieldElement a) noexcept {
    return f == Field::F3 ? static_cast<FieldElement>((3 - a) % 3) : a;
}

constexpr FieldElement sub(Field f, FieldElement a, FieldElement b) noexcept {
    return add(f, a, neg(f, b));
}

constexpr FieldElement mul(Field f, FieldElement a, FieldElement b) noexcept {
    switch (f) {
        case Field::F2: return a & b;
        case Field::F3: return static_cast<FieldElement>((a * b) % 3);
        case Field::F4: {
            const unsigned a0 = a & 1u, a1 = a >> 1, b0 = b & 1u, b1 = b >> 1;
            const unsigned p0 = (a0 & b0) ^ (a1 & b1);
            const unsigned p1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
            return static_cast<FieldElement>(p0 | (p1 << 1));
        }
    }
    return 0;
}

// Frobenius x -> x^2; the identity on F2 and F3.
constexpr FieldElement conj(Field f, FieldElement a) noexcept {
    if (f != Field::F4) return a;
    const unsigned a0 = a & 1u, a1 = a >> 1;
    return static_cast<FieldElement>((a0 ^ a1) | (a1 << 1));
}

// Multiplicative inverse of a nonzero element.
constexpr FieldElement inv(Field f, FieldElement a) noexcept {
    // F3: 1->1, 2->2. F4: 1->1, w->w2, w2->w. F4 inverse equals conjugate.
    return f == Field::F4 ? conj(f, a) : a;
}

std::string element_to_string(Field f, FieldElement a);

}  // namespace gf

// An immutable vector of length n <= 64 over F2, F3 or F4.
class GFVector {
public:
    GFVector() = default;

    // Zero vector.
    GFVector(Field field, int length);

    static GFVector from_planes(Field field, int length, std::uint64_t p0, std::uint64_t p1);
    static GFVector from_elements(Field field, std::span<const FieldElement> coords);
    static GFVector all_ones(Field field, int length);
    // Accepts digits for F2/F3 ("1021"), and {0,1,w,w2} for F4, optionally
    // separated by spaces or commas ("1 w 0 w2").
    static GFVector parse(Field field, std::string_view text);

    Field field() const noexcept { return field_; }
    int length() const noexcept { return length_; }
    std::uint64_t plane0() const noexcept { return p0_; }
    std::uint64_t plane1() const noexcept { return p1_; }
    std::uint64_t support() const noexcept { return p0_ | p1_; }

    FieldElement operator[](int i) const noexcept {
        return static_cast<FieldElement>(((p0_ >> i) & 1u) | (((p1_ >> i) & 1u) << 1));
    }
    GFVector with(int i, FieldElement value) const;

    int weight() const noexcept { return std::popcount(p0_ | p1_); }
    bool is_zero() const noexcept { return (p0_ | p1_) == 0; }

    std::vector<FieldElement> elements() const;
    std::string to_string() const;

    friend bool operator==(const GFVector&, const GFVector&) = default;
    friend auto operator<=>(const GFVector& a, const GFVector& b) noexcept {
        if (auto c = a.field_ <=> b.field_; c != 0) return c;
        if (auto c = a.length_ <=> b.length_; c != 0) return c;
        if (auto c = a.p1_ <=> b.p1_; c != 0) return c;
        return a.p0_ <=> b.p0_;
    }

private:
    Field field_ = Field::F2;
    std::uint8_t length_ = 0;
    std::uint64_t p0_ = 0;
    std::uint64_t p1_ = 0;

    friend GFVector add(const GFVector&, const GFVector&);
    friend GFVector scale(FieldElement, const GFVector&);
    friend GFVector negate(const GFVector&);
    friend GFVector conjugate(const GFVector&);
};

constexpr std::uint64_t length_mask(int n) noexcept {
    return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

[[noreturn]] void throw_incompatible(const GFVector& u, const GFVector& v);

inline void require_compatible(const GFVector& u, const GFVector& v) {
    if (u.field() != v.field() || u.length() != v.length()) [[unlikely]]
        throw_incompatible(u, v);
}

inline GFVector add(const GFVector& u, const GFVector& v) {
    require_compatible(u, v);
    GFVector r = u;
    if (u.field_ == Field::F3) {
        const std::uint64_t m = length_mask(u.length_);
        const std::uint64_t a1 = u.p0_, a2 = u.p1_, b1 = v.p0_, b2 = v.p1_;
        const std::uint64_t a0 = ~(a1 | a2) & m, b0 = ~(b1 | b2) & m;
        r.p0_ = (a0 & b1) | (a1 & b0) | (a2 & b2);
        r.p1_ = (a0 & b2) | (a2 & b0) | (a1 & b1);
    } else {
        r.p0_ ^= v.p0_;
        r.p1_ ^= v.p1_;
    }
    return r;
}

inline GFVector negate(const GFVector& v) {
    GFVector r = v;
    if (v.field_ == Field::F3) {
        r.p0_ = v.p1_;
        r.p1_ = v.p0_;
    }
    return r;
}

inline GFVector sub(const GFVector& u, const GFVector& v) { return add(u, negate(v)); }

inline GFVector scale(FieldElement alpha, const GFVector& v) {
    GFVector r = v;
    switch (v.field_) {
        case Field::F2:
            if (alpha == 0) r.p0_ = r.p1_ = 0;
            break;
        case Field::F3:
            if (alpha == 0) r.p0_ = r.p1_ = 0;
            else if (alpha == 2) r = negate(v);
            break;
        case Field::F4: {
            const std::uint64_t c = (alpha & 1u) ? ~std::uint64_t{0} : 0;
            const std::uint64_t d = (alpha & 2u) ? ~std::uint64_t{0} : 0;
            r.p0_ = (c & v.p0_) ^ (d & v.p1_);
            r.p1_ = (d & v.p0_) ^ (c & v.p1_) ^ (d & v.p1_);
            break;
        }
    }
    return r;
}

inline GFVector conjugate(const GFVector& v) {
    GFVector r = v;
    if (v.field_ == Field::F4) r.p0_ = v.p0_ ^ v.p1_;
    return r;
}

// u.v = sum u_i v_i over F2/F3 and the Hermitian form sum u_i v_i^2 over F4.
inline FieldElement inner_product(const GFVector& u, const GFVector& v) {
    require_compatible(u, v);
    switch (u.field()) {
        case Field::F2:
            return static_cast<FieldElement>(std::popcount(u.plane0() & v.plane0()) & 1);
        case Field::F3: {
            const int ones = std::popcount((u.plane0() & v.plane0()) | (u.plane1() & v.plane1()));
            const int twos = std::popcount((u.plane0() & v.plane1()) | (u.plane1() & v.plane0()));
            return static_cast<FieldElement>((ones + 2 * twos) % 3);
        }
        case Field::F4: {
            const std::uint64_t a = u.plane0(), b = u.plane1();
            const std::uint64_t c = v.plane0() ^ v.plane1(), d = v.plane1();
            const std::uint64_t q0 = (a & c) ^ (b & d);
            const std::uint64_t q1 = (a & d) ^ (b & c) ^ (b & d);
            return static_cast<FieldElement>((std::popcount(q0) & 1) | ((std::popcount(q1) & 1) << 1));
        }
    }
    return 0;
}

inline int weight(const GFVector& v) noexcept { return v.weight(); }

inline bool is_self_orthogonal(const GFVector& v) { return inner_product(v, v) == 0; }

enum class OnesConstraint { None, OrthogonalToAllOnes };

// Closed-form number of self-orthogonal vectors in F_q^n. Supported:
// (F3, n = 0 mod 4, None), (F3, n = 0 mod 12, OrthogonalToAllOnes), (F4, n even, None).
BigInt count_self_orthogonal(Field field, int n, OnesConstraint constraint = OnesConstraint::None);

}  // namespace sdn
