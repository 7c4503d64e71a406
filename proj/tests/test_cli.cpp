#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "kgws/app.hpp"
#include "kgws/errors.hpp"

using namespace kgws;
using namespace kgws::app;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr)
{
    args.insert(args.begin(), "kgws");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return rc;
}

fs::path scratch_dir()
{
    const fs::path d = fs::temp_directory_path() / "kgws_cli_test";
    fs::create_directories(d);
    return d;
}

std::string write_file(const std::string& name, const std::string& text)
{
    const fs::path p = scratch_dir() / name;
    std::ofstream(p) << text;
    return p.string();
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t column(const Table& t, const std::string& name)
{
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i] == name) return i;
    FAIL("missing column " << name);
    return 0;
}

} // namespace

TEST_CASE("config parsing")
{
    const RunConfig c = config_from_json(nlohmann::json::parse(
        R"({"V0": 50, "a": 0.7, "m1_list": [0.002], "quantum_grid": {"n": [0, 1], "l": [2, 2]},
            "branches": ["+"], "format": "json", "oracles": false, "grid_points": 2001})"));
    CHECK(c.system.V0 == 50.0);
    CHECK(c.system.a == 0.7);
    CHECK(c.m1_list == std::vector<double>{0.002});
    CHECK(c.quantum_grid == std::vector<std::pair<int, int>>{{0, 2}, {1, 2}});
    CHECK(c.branches == std::vector<Branch>{Branch::particle});
    CHECK(c.format == "json");
    CHECK_FALSE(c.oracles);
    CHECK(c.grid_points == 2001);

    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"V0": 50, "depth": 3})")), ValidationError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"V0": "deep"})")), ValidationError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"quantum_grid": [[0]]})")), ValidationError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"branches": ["up"]})")), ValidationError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse("[1, 2]")), ValidationError);
}

TEST_CASE("validation runs before any computation")
{
    RunConfig c;
    c.system.V0 = -1.0;
    CHECK_THROWS_AS(validate(c), ValidationError);
    c = RunConfig{};
    c.m1_list = {2.0};
    CHECK_THROWS_AS(cmd_spectrum(c), ValidationError);
    c = RunConfig{};
    c.grid_extent = 10.0;
    CHECK_THROWS_AS(validate(c), ValidationError);
}

TEST_CASE("empty quantum grid gives an empty table")
{
    const std::string cfg = write_file("empty.json", R"({"quantum_grid": []})");
    std::string out;
    CHECK(run({"spectrum", "--config", cfg}, &out) == exit_ok);
    RunConfig c;
    c.quantum_grid.clear();
    CHECK(cmd_spectrum(c).rows.empty());
    CHECK(out.find("m1_amu,n,l,branch") != std::string::npos);
}

TEST_CASE("spectrum rows")
{
    RunConfig c;
    c.calibrate = true;
    c.quantum_grid = {{0, 0}, {1, 0}};
    c.m1_list = {0.0, 0.001};
    const Table t = cmd_spectrum(c);
    REQUIRE(t.rows.size() == 8u);
    CHECK(t.metadata["a_fm"].get<double>() == doctest::Approx(0.6432768).epsilon(1e-6));

    const auto& first = t.rows.front();
    CHECK(std::get<double>(first[column(t, "m1_amu")]) == 0.0);
    CHECK(std::get<long long>(first[column(t, "n")]) == 0);
    CHECK(std::get<std::string>(first[column(t, "branch")]) == "particle");
    CHECK(std::get<double>(first[column(t, "abs_E_closed")]) == doctest::Approx(171.920).epsilon(1e-3));
    CHECK(std::get<double>(first[column(t, "E_root")]) ==
          doctest::Approx(std::get<double>(first[column(t, "E_closed")])).epsilon(1e-12));

    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        const auto key = [&](const std::vector<Cell>& r) {
            return std::tuple(std::get<double>(r[0]), std::get<long long>(r[1]), std::get<long long>(r[2]));
        };
        CHECK(key(t.rows[i - 1]) <= key(t.rows[i]));
    }

    const SystemParams p = reference_system(0.0, t.metadata["a_fm"].get<double>());
    for (const auto& row : t.rows) {
        if (std::get<double>(row[0]) != 0.0 || std::holds_alternative<std::monostate>(row[column(t, "E_closed")]))
            continue;
        const int n = static_cast<int>(std::get<long long>(row[1]));
        const Branch b = std::get<std::string>(row[3]) == "particle" ? Branch::particle : Branch::antiparticle;
        CHECK(std::get<double>(row[column(t, "E_closed")]) ==
              energy_constant_mass(n, 0, b, p, pekeris_coefficients(p)));
    }
}

TEST_CASE("oracle columns can be disabled")
{
    std::string out;
    CHECK(run({"spectrum", "--no-oracle", "--m1", "0"}, &out) == exit_ok);
    CHECK(out.find("disabled") != std::string::npos);
    CHECK(out.find("# oracles=false") != std::string::npos);
}

TEST_CASE("metadata header and number format")
{
    std::string out;
    CHECK(run({"spectrum", "--no-oracle", "--m1", "0.001", "--a", "0.7"}, &out) == exit_ok);
    CHECK(out.rfind("# command=spectrum\n", 0) == 0);
    CHECK(out.find("# hbar_c_MeV_fm=197.3269804\n") != std::string::npos);
    CHECK(out.find("# amu_MeV=931.49410242\n") != std::string::npos);
    CHECK(out.find("# a_fm=0.7\n") != std::string::npos);
    CHECK(out.find("# version=") != std::string::npos);

    const SystemParams p = reference_system(0.001, 0.7);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", energy_closed_form(0, 0, Branch::particle, p, pekeris_coefficients(p)));
    CHECK(out.find(std::string(",") + buf + ",") != std::string::npos);
}

TEST_CASE("json output")
{
    std::string out;
    CHECK(run({"spectrum", "--no-oracle", "--m1", "0", "--format", "json"}, &out) == exit_ok);
    const auto j = nlohmann::json::parse(out);
    CHECK(j["metadata"]["hbar_c_MeV_fm"] == 197.3269804);
    CHECK(j["rows"].size() == 18u);
    CHECK(j["rows"][0]["branch"] == "particle");
}

TEST_CASE("identical runs are byte-identical")
{
    const fs::path d = scratch_dir();
    const std::string a = (d / "run_a.csv").string(), b = (d / "run_b.csv").string();
    CHECK(run({"spectrum", "--m1", "0,0.01", "--out", a}) == exit_ok);
    CHECK(run({"spectrum", "--m1", "0,0.01", "--out", b}) == exit_ok);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());
}

TEST_CASE("executable end to end")
{
    const fs::path d = scratch_dir();
    const std::string exe = KGWS_CLI_PATH;
    const std::string a = (d / "exe_a.json").string(), b = (d / "exe_b.json").string();
    CHECK(std::system((exe + " table1 --format json --out " + a).c_str()) == 0);
    CHECK(std::system((exe + " table1 --format json --out " + b).c_str()) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(WEXITSTATUS(std::system((exe + " spectrum --bogus > /dev/null 2>&1").c_str())) == exit_validation);
}

TEST_CASE("exit codes")
{
    std::string err;
    CHECK(run({"spectrum", "--format", "xml"}, nullptr, &err) == exit_validation);
    CHECK(run({}, nullptr, &err) == exit_validation);
    CHECK(run({"spectrum", "--m1", "5"}, nullptr, &err) == exit_validation);
    CHECK(err.find("validation error") != std::string::npos);
    const std::string bad = write_file("bad.json", R"({"V0": 47.78, "colour": "red"})");
    CHECK(run({"spectrum", "--config", bad}) == exit_validation);
    const std::string broken = write_file("broken.json", "{ not json");
    CHECK(run({"spectrum", "--config", broken}) == exit_validation);
    CHECK(run({"wavefunction", "--n", "0", "--l", "0", "--branch", "antiparticle"}, nullptr, &err) ==
          exit_computation);
    CHECK(err.find("no-bound-state") != std::string::npos);
    std::string help;
    CHECK(run({"--help"}, &help) == exit_ok);
    CHECK(help.find("compare-centrifugal") != std::string::npos);
}

TEST_CASE("table1 report")
{
    RunConfig c;
    const Table1Report rep = cmd_table1(c);
    CHECK(rep.calibration.within_tolerance);
    CHECK(rep.calibration.a == doctest::Approx(0.6432768).epsilon(1e-6));
    CHECK(rep.table.rows.size() == 18u);
    CHECK(rep.table.metadata["calibrated_a_fm"].get<double>() == rep.calibration.a);
    int labelled = 0;
    for (const auto& row : rep.table.rows)
        if (std::get<std::string>(row[column(rep.table, "match")]) == "labelled") {
            ++labelled;
            CHECK(std::holds_alternative<double>(row[column(rep.table, "E_computed")]));
            CHECK(std::holds_alternative<double>(row[column(rep.table, "E_printed_mass_term")]));
        } else {
            CHECK(std::get<std::string>(row[column(rep.table, "status")]).find("flagged") != std::string::npos);
        }
    CHECK(labelled == 3);
    const auto& anchor = rep.table.rows.front();
    CHECK(std::get<double>(anchor[column(rep.table, "paper_abs_E")]) == 171.920);
    CHECK(std::abs(std::get<double>(anchor[column(rep.table, "rel_dev")])) < 1e-3);
}

TEST_CASE("wavefunction export")
{
    const fs::path d = scratch_dir();
    const std::string out = (d / "wf.csv").string();
    CHECK(run({"wavefunction", "--n", "0", "--l", "1", "--m1", "0.001", "--points", "1001", "--out", out}) == exit_ok);
    const auto report = nlohmann::json::parse(slurp(out + ".json"));
    CHECK(report["norm"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(report["node_count"] == 0);
    CHECK(report["ode_residual"].get<double>() < 1e-6);
    CHECK(report.contains("phi_at_origin"));
    CHECK(report["closed_form_norm"].contains("status"));
    CHECK(report["metadata"]["version"].is_string());

    const std::string csv = slurp(out);
    std::istringstream lines(csv);
    std::string line;
    int data = 0;
    while (std::getline(lines, line))
        if (!line.empty() && line[0] != '#' && line != "r_fm,phi") ++data;
    CHECK(data == 1001);

    std::string json_out;
    CHECK(run({"wavefunction", "--format", "json", "--points", "1001"}, &json_out) == exit_ok);
    const auto j = nlohmann::json::parse(json_out);
    CHECK(j["samples"].size() == 1001u);
    CHECK(j["samples"][0][0] == 0.0);
}

TEST_CASE("centrifugal comparison")
{
    RunConfig c;
    c.quantum_grid = {{0, 0}, {0, 1}, {0, 2}};
    c.m1_list = {0.0};
    c.branches = {Branch::particle, Branch::antiparticle};
    const Table t = cmd_compare_centrifugal(c);
    REQUIRE(t.rows.size() == 6u);
    for (const auto& row : t.rows) {
        CHECK(std::holds_alternative<double>(row[column(t, "D0")]));
        CHECK(std::holds_alternative<double>(row[column(t, "D2")]));
        const bool particle = std::get<std::string>(row[column(t, "branch")]) == "particle";
        if (!particle) {
            CHECK(std::get<std::string>(row[column(t, "status")]).find("no-bound-state") != std::string::npos);
            continue;
        }
        const double de = std::get<double>(row[column(t, "abs_dE")]);
        if (std::get<long long>(row[column(t, "l")]) == 0) CHECK(de <= 1e-4);
        else CHECK(std::isfinite(de));
    }
}
