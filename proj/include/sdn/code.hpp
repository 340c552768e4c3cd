#pragma once

// Linear codes over F2/F3/F4 held in reduced row echelon form. The RREF is
// unique for a subspace, so code equality, hashing and ordering all go
// through it.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sdn/gf.hpp"
#include "sdn/parallel.hpp"

namespace sdn {

// Canonical identity of a code: a header word followed by the RREF rows' planes.
using CodeKey = std::vector<std::uint64_t>;

struct CodeKeyHash {
    std::size_t operator()(const CodeKey& key) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (std::uint64_t w : key) {
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
        }
        return static_cast<std::size_t>(h ^ (h >> 33));
    }
};

class LinearCode {
public:
    LinearCode() = default;

    // RREF span of `vectors`. All vectors must share field and length.
    static LinearCode from_generators(Field field, int length, std::span<const GFVector> vectors);
    static LinearCode from_generators(std::span<const GFVector> vectors);
    static LinearCode zero(Field field, int length);
    static LinearCode full_space(Field field, int length);

    Field field() const noexcept { return field_; }
    int length() const noexcept { return length_; }
    int dimension() const noexcept { return static_cast<int>(rows_.size()); }
    const std::vector<GFVector>& generators() const noexcept { return rows_; }
    const std::vector<int>& pivots() const noexcept { return pivots_; }

    // q^k; throws ResourceError when it does not fit in 64 bits.
    std::uint64_t size() const;

    CodeKey key() const;

    // Reduction of v against the RREF rows; zero iff v is a codeword.
    GFVector reduce(const GFVector& v) const;
    bool contains(const GFVector& v) const { return reduce(v).is_zero(); }

    // Codeword sum_i message[i] * row_i.
    GFVector encode(std::span<const FieldElement> message) const;

    friend bool operator==(const LinearCode& a, const LinearCode& b) {
        return a.field_ == b.field_ && a.length_ == b.length_ && a.rows_ == b.rows_;
    }
    friend bool operator<(const LinearCode& a, const LinearCode& b) { return a.key() < b.key(); }

private:
    Field field_ = Field::F2;
    int length_ = 0;
    std::vector<GFVector> rows_;
    std::vector<int> pivots_;
};

// Dual under the field's form (Euclidean for F2/F3, Hermitian for F4).
LinearCode dual(const LinearCode& c);

bool is_self_orthogonal(const LinearCode& c);
bool is_self_dual(const LinearCode& c);
bool is_type_II(const LinearCode& c);
bool is_type_III(const LinearCode& c);
bool is_type_IV(const LinearCode& c);
bool contains_all_ones(const LinearCode& c);

LinearCode span(const LinearCode& c, const LinearCode& d);
LinearCode intersection(const LinearCode& c, const LinearCode& d);
int intersection_dimension(const LinearCode& c, const LinearCode& d);
LinearCode direct_sum(const LinearCode& c, const LinearCode& d);
LinearCode direct_sum(std::span<const LinearCode> parts);

// Multiplies coordinate i by the nonzero scalar factors[i].
LinearCode scale_coordinates(const LinearCode& c, std::span<const FieldElement> factors);

enum class StandardCode { Dn, DnPlus, E8 };

// The binary codes d_n (pair-doubled even-weight code, n even >= 4),
// d_n^+ (d_n glued with 1010...10, n = 0 mod 8) and e_8 = d_8^+.
LinearCode standard_code(StandardCode name, int n = 8);
StandardCode parse_standard_code(std::string_view name);

// ---------------------------------------------------------------------------
// Codeword enumeration.
//
// A code is walked as an additive group: over F2/F3 the RREF rows with radix q,
// over F4 the rows and their w-multiples with radix 2. Codewords are visited in
// modular Gray order, so consecutive words differ by one basis vector.

unsigned additive_radix(Field f) noexcept;
std::vector<GFVector> additive_basis(const LinearCode& c);

// Gray-order codeword at position `index` in [0, q^k).
GFVector gray_codeword(const LinearCode& c, std::uint64_t index);

// Visits codewords at Gray positions [begin, end).
template <class Fn>
void for_each_codeword(const LinearCode& c, std::uint64_t begin, std::uint64_t end, Fn&& fn) {
    if (begin >= end) return;
    const std::uint64_t radix = additive_radix(c.field());
    const std::vector<GFVector> basis = additive_basis(c);
    GFVector w = gray_codeword(c, begin);
    for (std::uint64_t j = begin;;) {
        fn(w);
        if (++j == end) break;
        // The moving digit is the number of trailing (radix-1) digits of j-1.
        std::uint64_t x = j - 1;
        int t = 0;
        while (x % radix == radix - 1) {
            x /= radix;
            ++t;
        }
        w = add(w, basis[static_cast<std::size_t>(t)]);
    }
}

template <class Fn>
void for_each_codeword(const LinearCode& c, Fn&& fn) {
    for_each_codeword(c, 0, c.size(), std::forward<Fn>(fn));
}

// Weight distribution (entry w = number of codewords of weight w).
// Parallel chunked Gray enumeration; throws ResourceError above `budget` codewords.
std::vector<std::uint64_t> weight_distribution(const LinearCode& c, const ExecContext& ctx = {},
                                               std::uint64_t budget = std::uint64_t{1} << 26);

// Serial reference: every codeword built independently from its message.
std::vector<std::uint64_t> weight_distribution_reference(const LinearCode& c);

// Permutation-invariant summary used in place of equivalence testing.
struct CodeFingerprint {
    std::vector<std::uint64_t> genus1;
    std::optional<std::vector<std::int64_t>> genus2_signature;

    friend bool operator==(const CodeFingerprint&, const CodeFingerprint&) = default;
    friend auto operator<=>(const CodeFingerprint&, const CodeFingerprint&) = default;
};

CodeFingerprint fingerprint(const LinearCode& c, const ExecContext& ctx = {});

// JSON: {"field": "F3", "length": n, "generators": ["1011", ...]} in RREF.
nlohmann::json to_json(const LinearCode& c);
LinearCode code_from_json(const nlohmann::json& j);

std::string describe(const LinearCode& c);

}  // namespace sdn
