#include "sdn/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sdn/errors.hpp"
#include "sdn/graph.hpp"
#include "sdn/wenum.hpp"

namespace sdn::cli {

using nlohmann::json;

Format parse_format(std::string_view name) {
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    if (name == "dot") return Format::Dot;
    if (name == "text") return Format::Text;
    throw UsageError("unknown format '" + std::string(name) + "' (json, csv, dot, text)");
}

namespace {

BigInt big(std::uint64_t v) { return BigInt(std::to_string(v)); }

bool all_ok(const std::vector<CountReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const CountReport& r) { return r.ok(); });
}

json reports_json(const std::vector<CountReport>& reports) {
    json a = json::array();
    for (const auto& r : reports) a.push_back(to_json(r));
    return a;
}

BuildOptions build_options(const RunConfig& cfg) {
    BuildOptions o;
    o.vertex_budget = cfg.budgets.vertices;
    o.resume_path = cfg.resume;
    return o;
}

std::uint64_t weight4(const LinearCode& c) {
    if (c.length() < 4) return 0;
    return weight_distribution(c)[4];
}

}  // namespace

CommandResult cmd_verify(Family f, int n, const RunConfig& cfg) {
    if (f == Family::TypeII) throw UsageError("verify covers type3, type3-ones and type4 (type2 has no closed forms)");
    require_family_length(f, n);
    const ExecContext ctx = cfg.ctx();
    const LinearCode seed = seed_code(f, n);

    const MultiplicityCensus mc = multiplicity_census(seed, f, ctx, cfg.budgets.vectors);
    const NeighborGraph g = build_graph(seed, f, ctx, build_options(cfg));
    const DistanceCensus census = distance_census(g);

    std::vector<CountReport> reports = graph_reports(g, census);
    reports.push_back(census_identity(f, n));
    const auto ones = f == Family::TypeIIIOnes ? OnesConstraint::OrthogonalToAllOnes : OnesConstraint::None;
    reports.push_back({"self-orthogonal vectors", count_self_orthogonal(family_field(f), n, ones),
                       big(mc.self_orthogonal)});
    reports.push_back({"eligible vectors", eligible_count_formula(f, n), big(mc.eligible)});
    reports.push_back({"distinct neighbors of seed", degree_formula(f, n), big(mc.neighbors)});
    reports.push_back({"min multiplicity", multiplicity_formula(f, n), big(mc.min_multiplicity)});
    reports.push_back({"max multiplicity", multiplicity_formula(f, n), big(mc.max_multiplicity)});

    CommandResult r;
    const bool ok = all_ok(reports);
    r.report = {{"command", "verify"},
                {"family", std::string(family_name(f))},
                {"n", n},
                {"vertices", g.vertex_count()},
                {"edges", g.edge_count()},
                {"census", census.counts},
                {"checks", reports_json(reports)},
                {"all_matched", ok}};
    r.exit_code = ok ? kOk : kClaimFailed;
    return r;
}

CommandResult cmd_graph(const GraphArgs& args, const RunConfig& cfg) {
    require_family_length(args.family, args.n);
    const ExecContext ctx = cfg.ctx();
    BuildOptions opts = build_options(cfg);
    opts.checkpoint_path = args.checkpoint;
    opts.checkpoint_every = args.checkpoint_every;
    const NeighborGraph g = build_graph(seed_code(args.family, args.n), args.family, ctx, opts);

    CommandResult r;
    bool ok = true;
    json& rep = r.report;
    if (args.census) {
        const DistanceCensus census = distance_census(g);
        rep = census_report(g, census);
        ok = ok && all_ok(graph_reports(g, census));
    } else {
        const GraphShape shape = graph_shape(g.adj);
        rep = {{"family", std::string(family_name(g.family))},
               {"n", g.n},
               {"vertices", g.vertex_count()},
               {"edges", g.edge_count()},
               {"degree", shape.min_degree == shape.max_degree ? json(shape.min_degree) : json(nullptr)}};
    }
    rep["command"] = "graph";

    if (args.check_codim) {
        CodimensionReport cr;
        const std::uint64_t nv = g.vertex_count();
        if (nv * (nv - 1) / 2 <= cfg.budgets.pairs) {
            cr = verify_distance_codimension(g, ctx, cfg.budgets.pairs);
        } else {
            // Enough sources for at least 10^5 pairs.
            const std::uint64_t sources = std::min<std::uint64_t>(nv, (100000 + nv - 2) / (nv - 1));
            cr = verify_distance_codimension_sampled(g, sources, 1, ctx);
        }
        rep["codimension"] = {{"pairs", cr.pairs},
                              {"violations", cr.violations},
                              {"sources", cr.sources},
                              {"sampled", cr.sampled}};
        ok = ok && cr.ok();
    }

    Adjacency kadj;
    if (args.k) {
        kadj = k_neighbor_graph(g, *args.k, ctx, cfg.budgets.pairs);
        const GraphShape shape = graph_shape(kadj);
        std::optional<BigInt> predicted;
        if (g.family != Family::TypeII)
            predicted = (*args.k >= 0 && *args.k <= max_distance(g.family, g.n))
                            ? k_neighbor_count_formula(g.family, g.n, *args.k)
                            : BigInt(0);
        std::vector<CountReport> kr{{"min degree", predicted, big(shape.min_degree)},
                                    {"max degree", predicted, big(shape.max_degree)}};
        rep["k_graph"] = {{"k", *args.k},
                          {"vertices", kadj.vertex_count()},
                          {"edges", kadj.edge_count()},
                          {"degree", shape.min_degree == shape.max_degree ? json(shape.min_degree) : json(nullptr)},
                          {"checks", reports_json(kr)}};
        ok = ok && all_ok(kr);
    }

    if (args.export_format) {
        const Adjacency& adj = args.k ? kadj : g.adj;
        if (*args.export_format == Format::Dot) {
            std::vector<std::uint64_t> w4(g.vertex_count());
#pragma omp parallel for schedule(dynamic, 64) num_threads(std::max(1, ctx.threads))
            for (std::int64_t v = 0; v < static_cast<std::int64_t>(w4.size()); ++v)
                w4[static_cast<std::size_t>(v)] = weight4(g.vertices[static_cast<std::size_t>(v)]);
            r.document = to_dot(adj, &w4);
        } else {
            r.document = to_csv(adj);
        }
    }
    rep["all_matched"] = ok;
    r.exit_code = ok ? kOk : kClaimFailed;
    return r;
}

CommandResult cmd_neighbors(const NeighborsArgs& args, const RunConfig& cfg) {
    std::ifstream is(args.code_file);
    if (!is) throw UsageError("cannot open code file " + args.code_file);
    json j;
    try {
        j = json::parse(is);
    } catch (const json::exception& e) {
        throw UsageError("code file " + args.code_file + " is not JSON: " + e.what());
    }
    const LinearCode c = code_from_json(j);
    if (!in_family(c, args.constraint))
        throw UsageError(describe(c) + " is not a " + std::string(family_name(args.constraint)) + " code");

    const ExecContext ctx = cfg.ctx();
    CommandResult r;
    r.report = {{"command", "neighbors"},
                {"code", describe(c)},
                {"constraint", std::string(family_name(args.constraint))}};
    if (args.classify) {
        const auto classes = neighbor_classes(c, args.constraint, ctx);
        std::uint64_t total = 0;
        json cls = json::array();
        for (const auto& k : classes) {
            total += k.count;
            json e = {{"count", k.count},
                      {"weight_distribution", k.fingerprint.genus1},
                      {"representative", to_json(k.representative)}};
            if (k.fingerprint.genus1.size() > 4) e["weight4"] = k.fingerprint.genus1[4];
            cls.push_back(e);
        }
        r.report["neighbors"] = total;
        r.report["classes"] = cls;
        r.report["class_count"] = classes.size();
    } else {
        const auto nbrs = distinct_neighbors(c, args.constraint, ctx);
        r.report["neighbors"] = nbrs.size();
        json codes = json::array();
        for (const auto& d : nbrs) codes.push_back(to_json(d));
        r.report["codes"] = codes;
    }
    return r;
}

namespace {

json matrix_report(const RankMatrix& m, int claimed) {
    json j = to_json(m);
    json mismatches = json::array();
    for (std::size_t i = 0; i < m.entries.size(); ++i)
        for (std::size_t c = 0; c < m.entries[i].size(); ++c)
            if (m.entries[i][c] != m.published[i][c])
                mismatches.push_back({{"row", m.row_labels[i]},
                                      {"column", m.columns[c].to_string(m.genus)},
                                      {"computed", big_to_json(m.entries[i][c])},
                                      {"published", big_to_json(m.published[i][c])}});
    j["claimed_rank"] = claimed;
    j["entry_mismatches"] = mismatches;
    j["rank_matches_claim"] = m.rank == claimed;
    j["published_rank_matches_claim"] = m.published_rank == claimed;
    return j;
}

void require_genus(int genus, int want, std::string_view check) {
    if (genus != want)
        throw UsageError("--check " + std::string(check) + " is a genus-" + std::to_string(want) + " check");
}

}  // namespace

CommandResult cmd_invariants(int genus, std::string_view check, const RunConfig& cfg) {
    if (genus < 1 || genus > kMaxGenus) throw UsageError("genus must be 1, 2 or 3");
    const ExecContext ctx = cfg.ctx();
    const std::uint64_t budget = cfg.budgets.tuples;
    CommandResult r;
    if (check == "L" || check == "M") {
        require_genus(genus, check == "L" ? 2 : 3, check);
        const Length24Codes codes = length24_codes(ctx);
        const RankMatrix m = check == "L" ? rank_matrix_L(codes, ctx, budget) : rank_matrix_M(codes, ctx, budget);
        const int claimed = check == "L" ? 3 : 4;
        r.report = matrix_report(m, claimed);
        r.exit_code = m.rank == claimed ? kOk : kClaimFailed;
    } else if (check == "span") {
        const Length24Codes codes = length24_codes(ctx);
        std::vector<std::string> labels;
        std::vector<LinearCode> set;
        int claimed = 0;
        switch (genus) {
            case 1:
                labels = {"e_8^3", "d_24^+", "C_1", "C_8"};
                set = {codes.e8_cubed, codes.d24_plus, codes.c1, codes.c8};
                claimed = 2;
                break;
            case 2:
                labels = {"e_8^3", "d_24^+", "C_1"};
                set = {codes.e8_cubed, codes.d24_plus, codes.c1};
                claimed = 3;
                break;
            default:
                labels = {"e_8^3", "d_24^+", "C_8", "C_1"};
                set = {codes.e8_cubed, codes.d24_plus, codes.c8, codes.c1};
                claimed = 4;
        }
        const int dim = span_dimension(set, genus, ctx, budget);
        r.report = {{"genus", genus}, {"degree", 24}, {"codes", labels}, {"dimension", dim}, {"claimed", claimed},
                    {"match", dim == claimed}};
        r.exit_code = dim == claimed ? kOk : kClaimFailed;
    } else if (check == "table6") {
        require_genus(genus, 3, check);
        const Length24Codes codes = length24_codes(ctx);
        const LinearCode e8 = standard_code(StandardCode::E8);
        struct Row {
            int degree;
            std::vector<std::string> labels;
            std::vector<LinearCode> set;
            int claimed;
        };
        const std::vector<Row> rows{
            {8, {"e_8"}, {e8}, 1},
            {16, {"e_8^2", "d_16^+"}, {direct_sum(e8, e8), standard_code(StandardCode::DnPlus, 16)}, 2},
            {24, {"C_9", "C_5", "C_8"}, {codes.e8_cubed, codes.d24_plus, codes.c8}, 3},
        };
        json out = json::array();
        bool ok = true;
        for (const auto& row : rows) {
            const int dim = span_dimension(row.set, 3, ctx, budget);
            ok = ok && dim == row.claimed;
            out.push_back({{"degree", row.degree}, {"codes", row.labels}, {"dimension", dim},
                           {"claimed", row.claimed}, {"match", dim == row.claimed}});
        }
        const bool same = genus_enumerator(codes.c8, 3, ctx, budget) ==
                          genus_enumerator(codes.d16_plus_e8, 3, ctx, budget);
        r.report = {{"genus", 3}, {"rows", out}, {"c8_enumerator_equals_d16_plus_e8", same}, {"match", ok}};
        r.exit_code = ok ? kOk : kClaimFailed;
    } else {
        throw UsageError("unknown check '" + std::string(check) + "' (L, M, span, table6)");
    }
    r.report["command"] = "invariants";
    r.report["check"] = std::string(check);
    return r;
}

CommandResult cmd_standard(std::string_view name, int n) {
    CommandResult r;
    r.report = to_json(standard_code(parse_standard_code(name), n));
    return r;
}

namespace {

bool scalar(const json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render(const json& j, int indent, std::ostringstream& os);

void render_value(const std::string& prefix, const json& v, int indent, std::ostringstream& os) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (scalar(v)) {
        os << pad << prefix << scalar_text(v) << '\n';
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), scalar)) {
        std::string line;
        for (const auto& e : v) line += (line.empty() ? "" : ", ") + scalar_text(e);
        os << pad << prefix << line << '\n';
    } else {
        std::string head = prefix;
        while (!head.empty() && head.back() == ' ') head.pop_back();
        os << pad << head << '\n';
        render(v, indent + 2, os);
    }
}

void render(const json& j, int indent, std::ostringstream& os) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) render_value(k + ": ", v, indent, os);
    } else if (j.is_array()) {
        for (const auto& e : j) {
            if (e.is_object()) {
                os << std::string(static_cast<std::size_t>(indent), ' ') << "-\n";
                render(e, indent + 2, os);
            } else {
                render_value("- ", e, indent, os);
            }
        }
    } else {
        render_value("", j, indent, os);
    }
}

json error_json(std::string_view kind, const std::string& what) { return {{"kind", kind}, {"error", what}}; }

}  // namespace

std::string render_text(const json& report) {
    std::ostringstream os;
    render(report, 0, os);
    return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Self-dual code neighbor graphs and joint weight enumerators"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    cfg.threads = ExecContext::hardware().threads;
    std::string format = "json";
    app.add_option("--threads", cfg.threads, "Worker threads")->envname("SDN_THREADS");
    app.add_option("--budget-vectors", cfg.budgets.vectors, "Vectors per exhaustive scan")
        ->envname("SDN_BUDGET_VECTORS");
    app.add_option("--budget-vertices", cfg.budgets.vertices, "Graph vertices")
        ->envname("SDN_BUDGET_VERTICES");
    app.add_option("--budget-tuples", cfg.budgets.tuples, "Enumerator work (subspaces or tuples)")
        ->envname("SDN_BUDGET_TUPLES");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "dot", "text"}));
    app.add_option("--out", cfg.out, "Write output here instead of stdout");
    app.add_option("--resume", cfg.resume, "Resume a graph build from a checkpoint");

    std::string family_arg;
    int n = 0;

    auto* verify = app.add_subcommand("verify", "Closed forms against exhaustive graph builds");
    verify->add_option("family", family_arg, "type3, type3-ones or type4")->required();
    verify->add_option("n", n, "Length")->required();

    GraphArgs gargs;
    std::string export_arg;
    auto* graph = app.add_subcommand("graph", "Build a neighbor graph");
    graph->add_option("family", family_arg, "type2, type3, type3-ones or type4")->required();
    graph->add_option("n", n, "Length")->required();
    graph->add_option("--export", export_arg, "Emit the graph as dot or csv")->check(CLI::IsMember({"dot", "csv"}));
    graph->add_flag("--census", gargs.census, "Distance census from the seed");
    graph->add_flag("--check-codim", gargs.check_codim, "Check distance = n/2 - dim(C cap D)");
    graph->add_option("--k", gargs.k, "Use the distance-k graph")->check(CLI::NonNegativeNumber);
    graph->add_option("--checkpoint", gargs.checkpoint, "Periodic checkpoint file");
    graph->add_option("--checkpoint-every", gargs.checkpoint_every, "Expanded vertices between checkpoints")
        ->check(CLI::PositiveNumber);

    NeighborsArgs nargs;
    std::string constraint = "type2";
    auto* neighbors = app.add_subcommand("neighbors", "Distinct neighbors of a code");
    neighbors->add_option("code", nargs.code_file, "Code JSON file")->required();
    neighbors->add_option("--constraint", constraint, "Family to stay in");
    neighbors->add_flag("--classify", nargs.classify, "Group neighbors by weight distribution");

    int genus = 2;
    std::string check;
    auto* inv = app.add_subcommand("invariants", "Degree-24 enumerator ranks and span dimensions");
    inv->add_option("--genus", genus, "Genus (1-3)");
    inv->add_option("--check", check, "L, M, span or table6")->required();

    std::string std_name;
    int std_n = 8;
    auto* standard = app.add_subcommand("standard", "Print a standard binary code as JSON");
    standard->add_option("name", std_name, "dn, dn+ or e8")->required();
    standard->add_option("n", std_n, "Length");

    auto fail = [&](std::string_view kind, const std::string& what, int code) {
        err << error_json(kind, what).dump() << '\n';
        return code;
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), kUsage);
    }

    try {
        // Checked here rather than with CLI11 validators, which skip invalid
        // environment values silently instead of rejecting them.
        if (cfg.threads < 1) throw UsageError("thread count must be positive");
        if (cfg.budgets.vectors == 0 || cfg.budgets.vertices == 0 || cfg.budgets.tuples == 0)
            throw UsageError("budgets must be positive");
        cfg.format = parse_format(format);
        if (!export_arg.empty()) {
            const Format ef = parse_format(export_arg);
            if (format != "json" && cfg.format != ef) throw UsageError("--export and --format disagree");
            cfg.format = ef;
        }
        const bool exporting = cfg.format == Format::Dot || cfg.format == Format::Csv;
        if (exporting && !graph->parsed()) throw UsageError("dot and csv output apply to the graph command only");
        if (!cfg.resume.empty() && !graph->parsed() && !verify->parsed())
            throw UsageError("--resume applies to graph builds only");

        CommandResult res;
        if (verify->parsed()) {
            res = cmd_verify(parse_family(family_arg), n, cfg);
        } else if (graph->parsed()) {
            gargs.family = parse_family(family_arg);
            gargs.n = n;
            if (exporting) gargs.export_format = cfg.format;
            res = cmd_graph(gargs, cfg);
        } else if (neighbors->parsed()) {
            nargs.constraint = parse_family(constraint);
            res = cmd_neighbors(nargs, cfg);
        } else if (inv->parsed()) {
            res = cmd_invariants(genus, check, cfg);
        } else {
            res = cmd_standard(std_name, std_n);
        }

        std::string doc;
        if (res.document)
            doc = *res.document;
        else if (cfg.format == Format::Text)
            doc = render_text(res.report);
        else
            doc = res.report.dump(2) + "\n";

        if (cfg.out.empty()) {
            out << doc;
        } else {
            std::ofstream os(cfg.out, std::ios::binary);
            if (!os || !(os << doc)) throw UsageError("cannot write " + cfg.out);
            // An export goes to the file; the report still reaches stdout.
            if (res.document) out << res.report.dump(2) << '\n';
        }
        return res.exit_code;
    } catch (const ResourceError& e) {
        json j = error_json("resource", e.what());
        if (!e.progress().empty()) j["progress"] = e.progress();
        err << j.dump() << '\n';
        return kUsage;
    } catch (const UsageError& e) {
        return fail("usage", e.what(), kUsage);
    } catch (const DomainError& e) {
        return fail("domain", e.what(), kUsage);
    } catch (const PreconditionError& e) {
        return fail("precondition", e.what(), kUsage);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), kUsage);
    }
}

}  // namespace sdn::cli
