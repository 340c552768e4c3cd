#pragma once

// Neighbor graphs built by BFS closure from a seed code. Vertices are
// canonical codes numbered in discovery order; edges are stored CSR-style.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "sdn/code.hpp"
#include "sdn/neighbors.hpp"

namespace sdn {

using VertexId = std::uint32_t;

// Compressed adjacency: targets of v are targets[offsets[v] .. offsets[v+1]), sorted.
struct Adjacency {
    std::vector<std::uint64_t> offsets{0};
    std::vector<VertexId> targets;

    std::size_t vertex_count() const noexcept { return offsets.size() - 1; }
    std::span<const VertexId> neighbors(VertexId v) const {
        return {targets.data() + offsets[v], targets.data() + offsets[v + 1]};
    }
    std::uint64_t degree(VertexId v) const { return offsets[v + 1] - offsets[v]; }
    std::uint64_t edge_count() const noexcept { return targets.size() / 2; }
    bool operator==(const Adjacency&) const = default;
};

struct NeighborGraph {
    Family family = Family::TypeIII;
    int n = 0;
    std::vector<LinearCode> vertices;  // vertex 0 is the seed
    Adjacency adj;
    std::unordered_map<CodeKey, VertexId, CodeKeyHash> index;

    std::size_t vertex_count() const noexcept { return vertices.size(); }
    std::uint64_t edge_count() const noexcept { return adj.edge_count(); }
    std::optional<VertexId> find(const LinearCode& c) const;
};

struct BuildOptions {
    std::uint64_t vertex_budget = Budgets{}.vertices;
    // When set, the BFS state is written here every `checkpoint_every` expanded
    // vertices and on budget exhaustion.
    std::string checkpoint_path;
    std::uint64_t checkpoint_every = 1u << 16;
    // Continue from this checkpoint instead of starting at the seed.
    std::string resume_path;
    // Vertices expanded per parallel batch.
    std::size_t batch = 2048;
};

// Connected component of `seed` under distinct_neighbors. Throws ResourceError
// (with a progress string) once more than opts.vertex_budget vertices appear,
// or up front when the family's vertex-count formula already exceeds it.
NeighborGraph build_graph(const LinearCode& seed, Family f, const ExecContext& ctx = {},
                          const BuildOptions& opts = {});

// BFS distances from `source` over an adjacency (-1 for unreachable).
std::vector<int> bfs_distances(const Adjacency& adj, VertexId source);

struct DistanceCensus {
    VertexId source = 0;
    std::vector<std::uint64_t> counts;  // counts[k] = vertices at distance k

    int eccentricity() const { return static_cast<int>(counts.size()) - 1; }
};

DistanceCensus distance_census(const NeighborGraph& g, VertexId source = 0);

// Structural checks on a built graph: loop-free, symmetric, regular.
struct GraphShape {
    bool simple = true;        // no loops, no repeated targets
    bool symmetric = true;
    std::uint64_t min_degree = 0;
    std::uint64_t max_degree = 0;
    bool connected = true;
};

GraphShape graph_shape(const Adjacency& adj);

// Counts comparing a built graph to the closed forms. TypeII graphs get
// observed-only reports.
std::vector<CountReport> graph_reports(const NeighborGraph& g, const DistanceCensus& census);

// Distance vs codimension: for checked pairs (C, D), dist(C, D) = n/2 - dim(C cap D).
struct CodimensionReport {
    std::uint64_t pairs = 0;
    std::uint64_t violations = 0;
    std::uint64_t sources = 0;
    bool sampled = false;

    bool ok() const { return violations == 0; }
};

// Every unordered pair (throws ResourceError when |V|(|V|-1)/2 > pair_budget).
CodimensionReport verify_distance_codimension(const NeighborGraph& g, const ExecContext& ctx = {},
                                              std::uint64_t pair_budget = Budgets{}.pairs);

// `sources` distinct sources drawn with a fixed seed, each paired with every other vertex.
CodimensionReport verify_distance_codimension_sampled(const NeighborGraph& g, std::uint64_t sources,
                                                      std::uint64_t rng_seed, const ExecContext& ctx = {});

// Edges join pairs at distance exactly k. Costs one BFS per vertex; throws
// ResourceError when |V|^2 > pair_budget.
Adjacency k_neighbor_graph(const NeighborGraph& g, int k, const ExecContext& ctx = {},
                           std::uint64_t pair_budget = Budgets{}.pairs);

using FingerprintFn = std::function<CodeFingerprint(const LinearCode&)>;

// Vertices grouped by fingerprint (genus-1 distribution unless fp is given).
std::map<CodeFingerprint, std::vector<VertexId>> classify_vertices(const NeighborGraph& g,
                                                                   const ExecContext& ctx = {},
                                                                   const FingerprintFn& fp = {});

struct NeighborClass {
    CodeFingerprint fingerprint;
    LinearCode representative;  // smallest canonical key in the class
    std::uint64_t count = 0;
};

std::vector<NeighborClass> neighbor_classes(const LinearCode& c, Family f, const ExecContext& ctx = {},
                                            const FingerprintFn& fp = {});

// Exports. DOT and CSV list each undirected edge once with u < v.
std::string to_dot(const Adjacency& adj, const std::vector<std::uint64_t>* weight4 = nullptr);
std::string to_csv(const Adjacency& adj);

// {family, n, vertices, edges, degree, census, formulas_matched, checks}
nlohmann::json census_report(const NeighborGraph& g, const DistanceCensus& census);

}  // namespace sdn
