#include "sdn/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace sdn {

std::optional<VertexId> NeighborGraph::find(const LinearCode& c) const {
    const auto it = index.find(c.key());
    if (it == index.end()) return std::nullopt;
    return it->second;
}

namespace {

constexpr char kMagic[8] = {'S', 'D', 'N', 'C', 'K', 'P', 'T', '1'};

struct BfsState {
    std::vector<LinearCode> vertices;
    std::unordered_map<CodeKey, VertexId, CodeKeyHash> index;
    std::vector<std::vector<VertexId>> lists;  // one per expanded vertex
};

template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!is) throw UsageError("checkpoint file is truncated");
    return v;
}

void save_checkpoint(const std::string& path, Family f, int n, const BfsState& st) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw ResourceError("cannot write checkpoint " + tmp);
        os.write(kMagic, sizeof kMagic);
        put<std::uint8_t>(os, static_cast<std::uint8_t>(f));
        put<std::uint8_t>(os, static_cast<std::uint8_t>(n));
        put<std::uint64_t>(os, st.vertices.size());
        put<std::uint64_t>(os, st.lists.size());
        for (const auto& c : st.vertices) {
            put<std::uint8_t>(os, static_cast<std::uint8_t>(c.dimension()));
            for (const auto& r : c.generators()) {
                put<std::uint64_t>(os, r.plane0());
                put<std::uint64_t>(os, r.plane1());
            }
        }
        for (const auto& l : st.lists) {
            put<std::uint32_t>(os, static_cast<std::uint32_t>(l.size()));
            os.write(reinterpret_cast<const char*>(l.data()), static_cast<std::streamsize>(l.size() * sizeof(VertexId)));
        }
        if (!os) throw ResourceError("failed writing checkpoint " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw ResourceError("cannot move checkpoint into " + path);
}

BfsState load_checkpoint(const std::string& path, Family f, int n, const LinearCode& seed) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw UsageError("cannot open checkpoint " + path);
    char magic[sizeof kMagic];
    is.read(magic, sizeof magic);
    if (!is || !std::equal(magic, magic + sizeof magic, kMagic)) throw UsageError(path + " is not a checkpoint file");
    if (get<std::uint8_t>(is) != static_cast<std::uint8_t>(f) || get<std::uint8_t>(is) != n)
        throw UsageError("checkpoint " + path + " belongs to a different family or length");
    const auto nv = get<std::uint64_t>(is);
    const auto ne = get<std::uint64_t>(is);
    if (ne > nv) throw UsageError("corrupt checkpoint " + path);
    BfsState st;
    const Field field = family_field(f);
    st.vertices.reserve(nv);
    for (std::uint64_t i = 0; i < nv; ++i) {
        const int k = get<std::uint8_t>(is);
        std::vector<GFVector> rows;
        for (int r = 0; r < k; ++r) {
            const auto p0 = get<std::uint64_t>(is);
            const auto p1 = get<std::uint64_t>(is);
            rows.push_back(GFVector::from_planes(field, n, p0, p1));
        }
        st.vertices.push_back(LinearCode::from_generators(field, n, rows));
        st.index.emplace(st.vertices.back().key(), static_cast<VertexId>(i));
    }
    for (std::uint64_t i = 0; i < ne; ++i) {
        std::vector<VertexId> l(get<std::uint32_t>(is));
        is.read(reinterpret_cast<char*>(l.data()), static_cast<std::streamsize>(l.size() * sizeof(VertexId)));
        if (!is) throw UsageError("checkpoint file is truncated");
        st.lists.push_back(std::move(l));
    }
    if (st.vertices.empty() || !(st.vertices.front() == seed))
        throw UsageError("checkpoint " + path + " was started from a different seed");
    return st;
}

std::string progress(const BfsState& st) {
    return "discovered " + std::to_string(st.vertices.size()) + " vertices, expanded " +
           std::to_string(st.lists.size());
}

}  // namespace

NeighborGraph build_graph(const LinearCode& seed, Family f, const ExecContext& ctx, const BuildOptions& opts) {
    if (seed.field() != family_field(f)) throw UsageError("seed field does not match the family");
    require_family_length(f, seed.length());
    if (!in_family(seed, f)) throw PreconditionError("seed is not a member of " + std::string(family_name(f)));
    const int n = seed.length();
    if (f != Family::TypeII) {
        const BigInt projected = vertex_count_formula(f, n);
        if (projected > BigInt(std::to_string(opts.vertex_budget)))
            throw ResourceError("graph has " + to_string(projected) + " vertices, vertex budget is " +
                                std::to_string(opts.vertex_budget));
    }

    BfsState st;
    if (!opts.resume_path.empty()) {
        st = load_checkpoint(opts.resume_path, f, n, seed);
    } else {
        st.vertices.push_back(seed);
        st.index.emplace(seed.key(), 0);
    }

    const int threads = std::max(1, ctx.threads);
    const std::size_t batch = std::max<std::size_t>(1, opts.batch);
    std::uint64_t since_checkpoint = 0;
    while (st.lists.size() < st.vertices.size()) {
        const std::size_t begin = st.lists.size();
        const std::size_t end = std::min(st.vertices.size(), begin + batch);
        std::vector<std::vector<LinearCode>> found(end - begin);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(end - begin); ++i)
            found[static_cast<std::size_t>(i)] =
                distinct_neighbors(st.vertices[begin + static_cast<std::size_t>(i)], f, ExecContext::serial());

        // New vertices are numbered in (expanded vertex, neighbor key) order, so the
        // numbering does not depend on the thread count.
        for (auto& part : found) {
            std::vector<VertexId> ids;
            ids.reserve(part.size());
            for (auto& d : part) {
                CodeKey key = d.key();
                auto [it, inserted] = st.index.try_emplace(std::move(key), static_cast<VertexId>(st.vertices.size()));
                if (inserted) {
                    st.vertices.push_back(std::move(d));
                    if (st.vertices.size() > opts.vertex_budget) {
                        st.vertices.pop_back();
                        st.index.erase(it);
                        if (!opts.checkpoint_path.empty()) save_checkpoint(opts.checkpoint_path, f, n, st);
                        throw ResourceError("vertex budget of " + std::to_string(opts.vertex_budget) + " exceeded",
                                            progress(st));
                    }
                }
                ids.push_back(it->second);
            }
            std::sort(ids.begin(), ids.end());
            st.lists.push_back(std::move(ids));
        }
        since_checkpoint += end - begin;
        if (!opts.checkpoint_path.empty() && since_checkpoint >= opts.checkpoint_every) {
            save_checkpoint(opts.checkpoint_path, f, n, st);
            since_checkpoint = 0;
        }
    }
    if (!opts.checkpoint_path.empty()) save_checkpoint(opts.checkpoint_path, f, n, st);

    NeighborGraph g;
    g.family = f;
    g.n = n;
    g.adj.offsets.reserve(st.lists.size() + 1);
    std::uint64_t total = 0;
    for (const auto& l : st.lists) total += l.size();
    g.adj.targets.reserve(total);
    for (const auto& l : st.lists) {
        g.adj.targets.insert(g.adj.targets.end(), l.begin(), l.end());
        g.adj.offsets.push_back(g.adj.targets.size());
    }
    g.vertices = std::move(st.vertices);
    g.index = std::move(st.index);
    return g;
}

std::vector<int> bfs_distances(const Adjacency& adj, VertexId source) {
    std::vector<int> dist(adj.vertex_count(), -1);
    std::vector<VertexId> queue;
    queue.reserve(adj.vertex_count());
    dist[source] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const VertexId u = queue[head];
        for (VertexId v : adj.neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

DistanceCensus distance_census(const NeighborGraph& g, VertexId source) {
    if (source >= g.vertex_count()) throw UsageError("source vertex out of range");
    DistanceCensus c;
    c.source = source;
    for (int d : bfs_distances(g.adj, source)) {
        if (d < 0) continue;
        if (static_cast<std::size_t>(d) >= c.counts.size()) c.counts.resize(static_cast<std::size_t>(d) + 1, 0);
        ++c.counts[static_cast<std::size_t>(d)];
    }
    return c;
}

GraphShape graph_shape(const Adjacency& adj) {
    GraphShape s;
    const auto nv = static_cast<VertexId>(adj.vertex_count());
    if (nv == 0) return s;
    s.min_degree = ~std::uint64_t{0};
    for (VertexId u = 0; u < nv; ++u) {
        const auto nb = adj.neighbors(u);
        s.min_degree = std::min<std::uint64_t>(s.min_degree, nb.size());
        s.max_degree = std::max<std::uint64_t>(s.max_degree, nb.size());
        for (std::size_t i = 0; i < nb.size(); ++i) {
            if (nb[i] == u || (i > 0 && nb[i] <= nb[i - 1])) s.simple = false;
            const auto back = adj.neighbors(nb[i]);
            if (!std::binary_search(back.begin(), back.end(), u)) s.symmetric = false;
        }
    }
    const auto dist = bfs_distances(adj, 0);
    s.connected = std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
    return s;
}

std::vector<CountReport> graph_reports(const NeighborGraph& g, const DistanceCensus& census) {
    const bool formulas = g.family != Family::TypeII;
    const GraphShape shape = graph_shape(g.adj);
    std::vector<CountReport> out;
    auto add = [&](std::string label, std::optional<BigInt> predicted, BigInt observed) {
        out.push_back(CountReport{std::move(label), std::move(predicted), std::move(observed)});
    };
    auto big = [](std::uint64_t v) { return BigInt(std::to_string(v)); };
    add("vertices", formulas ? std::optional(vertex_count_formula(g.family, g.n)) : std::nullopt,
        big(g.vertex_count()));
    add("edges", formulas ? std::optional(edge_count_formula(g.family, g.n)) : std::nullopt, big(g.edge_count()));
    const auto degree = formulas ? std::optional(degree_formula(g.family, g.n)) : std::nullopt;
    add("min degree", degree, big(shape.min_degree));
    add("max degree", degree, big(shape.max_degree));
    for (std::size_t k = 0; k < census.counts.size(); ++k) {
        std::optional<BigInt> predicted;
        if (formulas) {
            const int kk = static_cast<int>(k);
            predicted = kk <= max_distance(g.family, g.n) ? k_neighbor_count_formula(g.family, g.n, kk) : BigInt(0);
        }
        add("distance " + std::to_string(k), predicted, big(census.counts[k]));
    }
    add("eccentricity", formulas ? std::optional(BigInt(max_distance(g.family, g.n))) : std::nullopt,
        BigInt(census.eccentricity()));
    add("simple and symmetric", BigInt(1), BigInt(shape.simple && shape.symmetric ? 1 : 0));
    add("connected", BigInt(1), BigInt(shape.connected ? 1 : 0));
    return out;
}

namespace {

void check_from_source(const NeighborGraph& g, VertexId s, const std::vector<int>& dist, bool later_only,
                       std::uint64_t& pairs, std::uint64_t& bad) {
    const int half = g.n / 2;
    for (VertexId t = later_only ? s + 1 : 0; t < g.vertex_count(); ++t) {
        if (t == s) continue;
        ++pairs;
        if (dist[t] != half - intersection_dimension(g.vertices[s], g.vertices[t])) ++bad;
    }
}

}  // namespace

CodimensionReport verify_distance_codimension(const NeighborGraph& g, const ExecContext& ctx,
                                              std::uint64_t pair_budget) {
    const std::uint64_t nv = g.vertex_count();
    const std::uint64_t total = nv * (nv - 1) / 2;
    if (total > pair_budget)
        throw ResourceError(std::to_string(total) + " vertex pairs exceed the pair budget of " +
                            std::to_string(pair_budget));
    CodimensionReport r;
    r.sources = nv;
    std::uint64_t pairs = 0, bad = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : pairs, bad) num_threads(std::max(1, ctx.threads))
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(nv); ++s) {
        const auto dist = bfs_distances(g.adj, static_cast<VertexId>(s));
        check_from_source(g, static_cast<VertexId>(s), dist, true, pairs, bad);
    }
    r.pairs = pairs;
    r.violations = bad;
    return r;
}

CodimensionReport verify_distance_codimension_sampled(const NeighborGraph& g, std::uint64_t sources,
                                                      std::uint64_t rng_seed, const ExecContext& ctx) {
    std::vector<VertexId> all(g.vertex_count());
    std::iota(all.begin(), all.end(), VertexId{0});
    std::mt19937_64 rng(rng_seed);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min<std::size_t>(all.size(), sources));
    CodimensionReport r;
    r.sampled = true;
    r.sources = all.size();
    std::uint64_t pairs = 0, bad = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : pairs, bad) num_threads(std::max(1, ctx.threads))
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(all.size()); ++i) {
        const VertexId s = all[static_cast<std::size_t>(i)];
        check_from_source(g, s, bfs_distances(g.adj, s), false, pairs, bad);
    }
    r.pairs = pairs;
    r.violations = bad;
    return r;
}

Adjacency k_neighbor_graph(const NeighborGraph& g, int k, const ExecContext& ctx, std::uint64_t pair_budget) {
    const std::uint64_t nv = g.vertex_count();
    if (k < 1) throw DomainError("k must be at least 1");
    if (nv * nv > pair_budget)
        throw ResourceError("k-neighbor graph needs " + std::to_string(nv * nv) + " distance entries, budget is " +
                            std::to_string(pair_budget));
    std::vector<std::vector<VertexId>> lists(nv);
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, ctx.threads))
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(nv); ++s) {
        const auto dist = bfs_distances(g.adj, static_cast<VertexId>(s));
        auto& l = lists[static_cast<std::size_t>(s)];
        for (VertexId t = 0; t < nv; ++t)
            if (dist[t] == k) l.push_back(t);
    }
    Adjacency a;
    for (const auto& l : lists) {
        a.targets.insert(a.targets.end(), l.begin(), l.end());
        a.offsets.push_back(a.targets.size());
    }
    return a;
}

std::map<CodeFingerprint, std::vector<VertexId>> classify_vertices(const NeighborGraph& g, const ExecContext& ctx,
                                                                   const FingerprintFn& fp) {
    std::vector<CodeFingerprint> prints(g.vertex_count());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, ctx.threads))
    for (std::int64_t v = 0; v < static_cast<std::int64_t>(g.vertex_count()); ++v) {
        const auto& c = g.vertices[static_cast<std::size_t>(v)];
        prints[static_cast<std::size_t>(v)] = fp ? fp(c) : fingerprint(c);
    }
    std::map<CodeFingerprint, std::vector<VertexId>> classes;
    for (VertexId v = 0; v < g.vertex_count(); ++v) classes[prints[v]].push_back(v);
    return classes;
}

std::vector<NeighborClass> neighbor_classes(const LinearCode& c, Family f, const ExecContext& ctx,
                                            const FingerprintFn& fp) {
    const auto nbrs = distinct_neighbors(c, f, ctx);
    std::vector<CodeFingerprint> prints(nbrs.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, ctx.threads))
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(nbrs.size()); ++i) {
        const auto& d = nbrs[static_cast<std::size_t>(i)];
        prints[static_cast<std::size_t>(i)] = fp ? fp(d) : fingerprint(d);
    }
    std::map<CodeFingerprint, NeighborClass> classes;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        auto [it, inserted] = classes.try_emplace(prints[i], NeighborClass{prints[i], nbrs[i], 0});
        ++it->second.count;
    }
    std::vector<NeighborClass> out;
    for (auto& [key, cls] : classes) out.push_back(std::move(cls));
    return out;
}

std::string to_dot(const Adjacency& adj, const std::vector<std::uint64_t>* weight4) {
    std::ostringstream os;
    os << "graph G {\n";
    for (VertexId u = 0; u < adj.vertex_count(); ++u) {
        os << "  " << u << " [label=\"" << u << "\"";
        if (weight4) os << ", weight4count=" << (*weight4)[u];
        os << "];\n";
    }
    for (VertexId u = 0; u < adj.vertex_count(); ++u)
        for (VertexId v : adj.neighbors(u))
            if (u < v) os << "  " << u << " -- " << v << ";\n";
    os << "}\n";
    return os.str();
}

std::string to_csv(const Adjacency& adj) {
    std::ostringstream os;
    os << "u,v\n";
    for (VertexId u = 0; u < adj.vertex_count(); ++u)
        for (VertexId v : adj.neighbors(u))
            if (u < v) os << u << ',' << v << '\n';
    return os.str();
}

nlohmann::json census_report(const NeighborGraph& g, const DistanceCensus& census) {
    const auto reports = graph_reports(g, census);
    const GraphShape shape = graph_shape(g.adj);
    nlohmann::json j;
    j["family"] = std::string(family_name(g.family));
    j["n"] = g.n;
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
    j["degree"] = shape.min_degree == shape.max_degree ? nlohmann::json(shape.min_degree) : nlohmann::json(nullptr);
    j["census"] = census.counts;
    if (g.family == Family::TypeII) {
        j["formulas_matched"] = nullptr;
    } else {
        j["formulas_matched"] = std::all_of(reports.begin(), reports.end(), [](const CountReport& r) { return r.ok(); });
    }
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : reports) checks.push_back(to_json(r));
    j["checks"] = checks;
    return j;
}

}  // namespace sdn
