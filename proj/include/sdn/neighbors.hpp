#pragma once

// Neighbors of self-dual codes. For a self-dual C and a self-orthogonal v not
// in C, C_0 = {w in C : w.v = 0} has codimension one and N_C(v) = <C_0, v> is
// again self-dual. This header also carries the closed-form counts for the
// neighbor graphs of each family.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sdn/bigint.hpp"
#include "sdn/code.hpp"

namespace sdn {

// Which self-dual family a neighbor search stays inside.
enum class Family {
    TypeII,       // binary, doubly even, n = 0 mod 8
    TypeIII,      // ternary, n = 0 mod 4
    TypeIIIOnes,  // ternary containing the all-ones vector, n = 0 mod 12
    TypeIV,       // quaternary Hermitian, n even
};

std::string_view family_name(Family f) noexcept;  // "type2", "type3", "type3-ones", "type4"
Family parse_family(std::string_view name);
Field family_field(Family f) noexcept;
bool family_length_ok(Family f, int n) noexcept;
void require_family_length(Family f, int n);  // throws DomainError

// True iff `c` is a member of the family (self-dual of the right type, plus 1 in C
// for TypeIIIOnes).
bool in_family(const LinearCode& c, Family f);

// v may be fed to neighbor(C, .) within the family: self-orthogonal (doubly even
// for TypeII), not in C, and orthogonal to 1 for TypeIIIOnes.
bool is_eligible(const LinearCode& c, const GFVector& v, Family f);

// Pairing of a closed-form count with an exhaustively observed one.
struct CountReport {
    std::string label;
    std::optional<BigInt> predicted;
    std::optional<BigInt> observed;

    bool has_match() const { return predicted.has_value() && observed.has_value(); }
    bool match() const { return has_match() && *predicted == *observed; }
    // A report fails only when both sides exist and differ.
    bool ok() const { return !has_match() || match(); }
};

nlohmann::json to_json(const CountReport& r);
nlohmann::json big_to_json(const BigInt& v);

// C_0 = {w in C : w.v = 0}. Requires C self-dual, v self-orthogonal, v not in C.
LinearCode orthogonal_subcode(const LinearCode& c, const GFVector& v);

// N_C(v) = <C_0, v>.
LinearCode neighbor(const LinearCode& c, const GFVector& v);

// N_C(v1) == N_C(v2), decided by canonical forms.
bool same_neighbor(const LinearCode& c, const GFVector& v1, const GFVector& v2);

// The same question decided by the criterion: exists w in C with w.v1 = 0 and
// v2 = w + alpha v1 for some nonzero alpha.
bool same_neighbor_by_criterion(const LinearCode& c, const GFVector& v1, const GFVector& v2);

// All distinct neighbors of C inside the family, sorted by canonical key.
//
// Every neighbor D satisfies C cap D = H for a hyperplane H of C, and D/H is an
// isotropic line of H^perp/H other than C/H. The kernel walks the (q^k-1)/(q-1)
// hyperplanes and tests the q candidate lines of each, so no deduplication is
// needed; hyperplanes are processed in parallel.
std::vector<LinearCode> distinct_neighbors(const LinearCode& c, Family f, const ExecContext& ctx = {});

// Reference route: scan all q^n vectors, keep the eligible ones, build N_C(v)
// and deduplicate by canonical key. Throws ResourceError above `vector_budget`.
std::vector<LinearCode> distinct_neighbors_scan(const LinearCode& c, Family f, const ExecContext& ctx = {},
                                                std::uint64_t vector_budget = Budgets{}.vectors);

// Calls fn(v) for every vector of F_q^n (q^n must fit the budget), split across threads.
// fn must be safe to call concurrently; `thread` is the calling worker's index.
void for_each_vector(Field field, int n, const ExecContext& ctx, std::uint64_t vector_budget,
                     const std::function<void(const GFVector&, int thread)>& fn);

// Census of eligible vectors grouped by the neighbor they generate.
struct MultiplicityCensus {
    std::uint64_t eligible = 0;             // eligible vectors found by the scan
    std::uint64_t self_orthogonal = 0;      // all self-orthogonal vectors (ones-constrained if relevant)
    std::uint64_t self_orthogonal_in_code = 0;
    std::uint64_t neighbors = 0;            // distinct N_C(v)
    std::uint64_t min_multiplicity = 0;
    std::uint64_t max_multiplicity = 0;
};

MultiplicityCensus multiplicity_census(const LinearCode& c, Family f, const ExecContext& ctx = {},
                                       std::uint64_t vector_budget = Budgets{}.vectors);

// Closed forms. All throw DomainError for TypeII (no formulas) or a bad length.
BigInt degree_formula(Family f, int n);
BigInt vertex_count_formula(Family f, int n);
BigInt edge_count_formula(Family f, int n);
// Number of codes at distance k from a fixed code; k = 0 gives 1.
BigInt k_neighbor_count_formula(Family f, int n, int k);
// Largest k with a nonzero count: n/2, or n/2 - 1 for TypeIIIOnes.
int max_distance(Family f, int n);
// Eligible vectors for any C in the family.
BigInt eligible_count_formula(Family f, int n);
// (q-1) q^{n/2-1}: eligible vectors generating one given neighbor.
BigInt multiplicity_formula(Family f, int n);

// predicted = vertex count, observed = sum_k L_k.
CountReport census_identity(Family f, int n);

// A family member to start searches from: direct sums of small codes for
// TypeIII/TypeIV, a rescaled extended ternary Golay sum for TypeIIIOnes and d_n^+
// for TypeII.
LinearCode seed_code(Family f, int n);

// Pair (C, D) with C cap D = {0}, built as direct sums of the length-4 (TypeIII)
// or length-2 (TypeIV) witness pairs. Other families throw DomainError.
std::pair<LinearCode, LinearCode> far_pair(Family f, int n);

}  // namespace sdn
