#pragma once

// Subcommands behind the `sdn` binary. Each command produces a JSON report and
// an exit status; the text format is a rendering of that report. Graph exports
// (DOT, CSV) replace the report as the command's document.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "sdn/neighbors.hpp"
#include "sdn/parallel.hpp"

namespace sdn::cli {

enum ExitCode : int { kOk = 0, kClaimFailed = 1, kUsage = 2 };

enum class Format { Json, Csv, Dot, Text };

Format parse_format(std::string_view name);

struct RunConfig {
    int threads = 1;
    Budgets budgets;
    Format format = Format::Json;
    std::string out;      // empty: stdout
    std::string resume;   // graph builds only

    ExecContext ctx() const { return ExecContext{threads}; }
};

struct CommandResult {
    nlohmann::json report;
    int exit_code = kOk;
    // DOT or CSV text for graph exports.
    std::optional<std::string> document;
};

CommandResult cmd_verify(Family f, int n, const RunConfig& cfg);

struct GraphArgs {
    Family family = Family::TypeIII;
    int n = 0;
    std::optional<Format> export_format;
    bool census = false;
    bool check_codim = false;
    std::optional<int> k;
    std::string checkpoint;
    std::uint64_t checkpoint_every = 1u << 16;
};

CommandResult cmd_graph(const GraphArgs& args, const RunConfig& cfg);

struct NeighborsArgs {
    std::string code_file;
    Family constraint = Family::TypeII;
    bool classify = false;
};

CommandResult cmd_neighbors(const NeighborsArgs& args, const RunConfig& cfg);

// check is one of L, M, span, table6.
CommandResult cmd_invariants(int genus, std::string_view check, const RunConfig& cfg);

// JSON serialization of a named standard code (d_n, d_n^+, e_8).
CommandResult cmd_standard(std::string_view name, int n);

// Indented "key: value" rendering of a report.
std::string render_text(const nlohmann::json& report);

// Parses argv, runs the command, writes the document to --out or `out`.
// Errors go to `err` as a JSON object {"error", "kind"[, "progress"]}.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sdn::cli
