#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sdn/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
    json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "sdn");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = sdn::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("verify reports and exit codes") {
    const Run r = run({"verify", "type3", "8", "--threads", "2"});
    CHECK(r.code == 0);
    const json j = r.report();
    CHECK(j["census"] == json({1, 40, 390, 1080, 729}));
    CHECK(j["all_matched"] == true);
    CHECK(run({"verify", "type4", "6"}).report()["census"] == json({1, 42, 336, 512}));

    const Run bad = run({"verify", "type3", "10"});
    CHECK(bad.code == 2);
    CHECK(json::parse(bad.err)["kind"] == "domain");
    CHECK(run({"verify", "type2", "8"}).code == 2);
    CHECK(run({"verify", "type3", "12"}).code == 2);  // vertex budget
    CHECK(run({"verify", "type3", "4", "--bogus"}).code == 2);
    CHECK(run({"verify", "type3", "4", "--format", "csv"}).code == 2);
}

TEST_CASE("graph command") {
    const Run dot = run({"graph", "type3", "4", "--export", "dot"});
    CHECK(dot.code == 0);
    CHECK(dot.out.rfind("graph G {", 0) == 0);
    CHECK(dot.out.find("weight4count") != std::string::npos);

    const json census = run({"graph", "type4", "4", "--census"}).report();
    CHECK(census["census"] == json({1, 10, 16}));
    CHECK(census["formulas_matched"] == true);

    const json k = run({"graph", "type3", "4", "--k", "2"}).report();
    CHECK(k["k_graph"]["vertices"] == 8);
    CHECK(k["k_graph"]["degree"] == 3);

    const json codim = run({"graph", "type4", "6", "--check-codim"}).report();
    CHECK(codim["codimension"]["violations"] == 0);

    const auto path = temp_path("sdn_cli_edges.csv");
    const Run csv = run({"graph", "type3", "4", "--format", "csv", "--out", path});
    CHECK(csv.code == 0);
    std::ifstream is(path);
    std::string first;
    std::getline(is, first);
    CHECK(first == "u,v");
    CHECK(run({"graph", "type3", "4", "--export", "dot", "--format", "csv"}).code == 2);
    std::filesystem::remove(path);
}

TEST_CASE("reports do not depend on the thread count") {
    for (const std::vector<std::string> cmd : {std::vector<std::string>{"verify", "type4", "6"},
                                               std::vector<std::string>{"graph", "type3", "8", "--census", "--check-codim"},
                                               std::vector<std::string>{"graph", "type4", "4", "--export", "csv"}}) {
        auto one = cmd, eight = cmd;
        one.insert(one.end(), {"--threads", "1"});
        eight.insert(eight.end(), {"--threads", "8"});
        CHECK(run(one).out == run(eight).out);
    }
}

TEST_CASE("budget precedence: flag over environment over default") {
    ::setenv("SDN_BUDGET_VERTICES", "5", 1);
    CHECK(run({"graph", "type3", "4"}).code == 2);
    CHECK(run({"graph", "type3", "4", "--budget-vertices", "100"}).code == 0);
    ::unsetenv("SDN_BUDGET_VERTICES");
    CHECK(run({"graph", "type3", "4"}).code == 0);
    ::setenv("SDN_THREADS", "0", 1);
    CHECK(run({"graph", "type3", "4"}).code == 2);  // budgets and threads must be positive
    ::unsetenv("SDN_THREADS");
}

TEST_CASE("neighbors command") {
    const auto e8 = temp_path("sdn_cli_e8.json");
    const auto d24 = temp_path("sdn_cli_d24.json");
    CHECK(run({"standard", "e8", "--out", e8}).code == 0);
    CHECK(run({"standard", "dn+", "24", "--out", d24}).code == 0);
    CHECK(run({"neighbors", e8, "--constraint", "type2", "--classify"}).report()["class_count"] == 1);
    const json j = run({"neighbors", d24, "--constraint", "type2", "--classify"}).report();
    CHECK(j["class_count"] == 3);
    // e_8 is not ternary, and a missing file is a usage error.
    CHECK(run({"neighbors", e8, "--constraint", "type3"}).code == 2);
    CHECK(run({"neighbors", temp_path("sdn_cli_missing.json")}).code == 2);
    std::filesystem::remove(e8);
    std::filesystem::remove(d24);
}

TEST_CASE("text output renders the report") {
    const Run t = run({"graph", "type3", "4", "--census", "--format", "text"});
    CHECK(t.code == 0);
    CHECK(t.out.find("census: 1, 4, 3") != std::string::npos);
    CHECK(sdn::cli::render_text(json{{"a", {{"b", 1}}}}) == "a:\n  b: 1\n");
}

TEST_CASE("invariants reports the computed rank of L") {
    const Run r = run({"invariants", "--genus", "2", "--check", "L"});
    const json j = r.report();
    CHECK(j["rank"] == 2);
    CHECK(j["claimed_rank"] == 3);
    CHECK(j["entry_mismatches"].empty());
    CHECK(r.code == 1);
    CHECK(run({"invariants", "--genus", "3", "--check", "L"}).code == 2);
    CHECK(run({"invariants", "--genus", "2", "--check", "Q"}).code == 2);
}
