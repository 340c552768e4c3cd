#pragma once

// Genus-g joint weight enumerators of binary codes (g <= 3).
//
// Variables x_a are indexed by a in F2^g. The label of a is the bit string
// u_1 u_2 ... u_g, and its index is that string read as a binary number, so
// for g = 2 the variables in order are x_00, x_01, x_10, x_11. The coefficient
// of prod_a x_a^{e_a} counts g-tuples (u_1, ..., u_g) of codewords whose
// columns take the value a at exactly e_a coordinates.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sdn/bigint.hpp"
#include "sdn/code.hpp"

namespace sdn {

inline constexpr int kMaxGenus = 3;

// Exponent vector packed one byte per variable (byte a = e_a).
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::uint64_t packed) : packed_(packed) {}

    static Monomial from_exponents(int genus, std::span<const int> exponents);
    // "x00^20 x01^4" (unit exponents may be omitted; "1" is the empty monomial).
    static Monomial parse(int genus, std::string_view text);

    int exponent(unsigned a) const noexcept { return static_cast<int>((packed_ >> (8 * a)) & 0xffu); }
    int degree() const noexcept;
    std::uint64_t packed() const noexcept { return packed_; }
    std::string to_string(int genus) const;

    friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
    std::uint64_t packed_ = 0;
};

std::string variable_label(int genus, unsigned a);

struct GenusEnumerator {
    int genus = 1;
    int length = 0;
    std::map<Monomial, std::uint64_t> terms;

    std::uint64_t coefficient(const Monomial& m) const;
    BigInt coefficient_sum() const;
    bool operator==(const GenusEnumerator&) const = default;
};

// Coefficient of m; throws UsageError when m is not of degree W.length.
std::uint64_t coefficient(const GenusEnumerator& w, const Monomial& m);

// Sum over all r-dimensional subspaces (r <= g) of the message space; the
// work measure for genus_enumerator().
BigInt subspace_count(int k, int g);

// Every g-tuple of codewords spans a subspace S of C of dimension r <= g and is
// an injective image of F2^r into it, and its monomial depends only on the
// column-pattern counts of one basis of S. The kernel enumerates subspaces in
// RREF over the message space, histograms their pattern counts per thread and
// expands each histogram entry over the injective maps F2^r -> F2^g.
// Throws ResourceError when subspace_count exceeds `work_budget`.
GenusEnumerator genus_enumerator(const LinearCode& c, int g, const ExecContext& ctx = {},
                                 std::uint64_t work_budget = Budgets{}.tuples);

// Direct enumeration of all |C|^g tuples, split across threads by the first codeword.
GenusEnumerator genus_enumerator_bruteforce(const LinearCode& c, int g, const ExecContext& ctx = {},
                                            std::uint64_t tuple_budget = Budgets{}.tuples);

// Serial reference: each tuple encoded from its messages, columns read one coordinate at a time.
GenusEnumerator genus_enumerator_reference(const LinearCode& c, int g,
                                           std::uint64_t tuple_budget = std::uint64_t{1} << 24);

// x_0^0, the multiplicative identity at genus g.
GenusEnumerator unit_enumerator(int g);

// Polynomial product; equals the enumerator of the direct sum.
GenusEnumerator product(const GenusEnumerator& a, const GenusEnumerator& b);
GenusEnumerator product(std::span<const GenusEnumerator> factors);

// x_{(b,1)} -> 0, x_{(b,0)} -> y_b: restricts to tuples whose last codeword is 0.
GenusEnumerator specialize(const GenusEnumerator& w);

// Renames variables a -> perm[a].
GenusEnumerator permute_variables(const GenusEnumerator& w, std::span<const unsigned> perm);

nlohmann::json to_json(const GenusEnumerator& w);

// ---------------------------------------------------------------------------
// Glue codes. A code that is a union of cosets s + B of B = B_1 (+) ... (+) B_t,
// the blocks occupying consecutive coordinates.

struct CodeBlock {
    LinearCode code;
    // The block is d_m: pair-doubled vectors x (x) 11 with x of even weight.
    // Its enumerator is evaluated with parity characters,
    //   2^-g sum_chi prod_p sum_a (-1)^{chi.a} x_{a+sigma_p} x_{a+tau_p},
    // where sigma_p, tau_p are the shift's columns at the pair's two coordinates.
    bool doubled_even = false;
};

CodeBlock generic_block(const LinearCode& c);
CodeBlock doubled_even_block(int m);

// W = sum over g-tuples of shifts of prod_blocks W_block(shifted). `shifts` must
// hold one representative per coset and the union must be a code. When
// `targets` is non-empty only monomials dividing some target are kept.
GenusEnumerator coset_sum_enumerator(std::span<const CodeBlock> blocks, std::span<const GFVector> shifts, int g,
                                     std::span<const Monomial> targets = {},
                                     std::uint64_t tuple_budget = Budgets{}.tuples);

GenusEnumerator coset_sum_enumerator(const LinearCode& subcode, std::span<const GFVector> shifts, int g,
                                     std::span<const Monomial> targets = {},
                                     std::uint64_t tuple_budget = Budgets{}.tuples);

// ---------------------------------------------------------------------------
// Exact ranks and the degree-24 matrices.

int rank_over_rationals(const std::vector<std::vector<BigInt>>& rows);

enum class Provenance { Computed, Published };

struct RankMatrix {
    std::string name;
    int genus = 2;
    std::vector<std::string> row_labels;
    std::vector<Monomial> columns;
    std::vector<std::vector<BigInt>> entries;
    std::vector<std::vector<Provenance>> provenance;
    std::vector<std::vector<BigInt>> published;
    int rank = 0;            // of `entries`
    int published_rank = 0;  // of `published`

    bool matches_published() const { return entries == published; }
};

nlohmann::json to_json(const RankMatrix& m);

// Length-24 Type II codes used by the matrices.
struct Length24Codes {
    LinearCode e8_cubed;        // C_9
    LinearCode d24_plus;        // C_5
    LinearCode c1;              // neighbor of d_24^+ with 30 words of weight 4
    LinearCode c8;              // neighbor of d_24^+ with 42 words of weight 4
    LinearCode c1_glued;        // d_12 (+) d_12 with glue (s1|s2), (s2|s1)
    LinearCode d16_plus_e8;     // direct sum d_16^+ (+) e_8
};

// Runs the neighbor search from d_24^+ and picks class representatives.
Length24Codes length24_codes(const ExecContext& ctx = {});

// Genus-2 monomials x00^24, x00^20 x01^4, x00^16 x01^8 and rows e_8^3, d_24^+, C_1.
RankMatrix rank_matrix_L(const Length24Codes& codes, const ExecContext& ctx = {},
                         std::uint64_t work_budget = Budgets{}.tuples);

// Genus-3 monomials and rows e_8^3, d_24^+, C_8, C_1. Rows whose enumerator does
// not fit `work_budget` take the published entries.
RankMatrix rank_matrix_M(const Length24Codes& codes, const ExecContext& ctx = {},
                         std::uint64_t work_budget = Budgets{}.tuples);

// Rank of the coefficient vectors of the codes' genus-g enumerators.
int span_dimension(std::span<const LinearCode> codes, int g, const ExecContext& ctx = {},
                   std::uint64_t work_budget = Budgets{}.tuples);

// Fingerprint refined by the full genus-2 enumerator (coefficients in monomial order).
CodeFingerprint fingerprint_with_genus2(const LinearCode& c, const ExecContext& ctx = {});

}  // namespace sdn
