#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kgws/calibration.hpp"
#include "kgws/nu_spectrum.hpp"

namespace kgws::app {

struct RunConfig {
    SystemParams system = reference_system();
    std::vector<std::pair<int, int>> quantum_grid = {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1},
                                                     {1, 2}, {2, 0}, {2, 1}, {2, 2}};
    std::vector<double> m1_list = {0.0, 0.001, 0.01};
    std::vector<Branch> branches = {Branch::particle, Branch::antiparticle};
    std::string format = "csv";
    std::string out;
    bool oracles = true;
    bool calibrate = false;
    int grid_points = 4001;
    double grid_extent = 25.0;  ///< r_max = r0 + grid_extent * a
    int n = 0;
    int l = 0;
    Branch branch = Branch::particle;
};

/// Flat JSON schema; unknown keys and wrong types raise ValidationError.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config(const std::string& path);
void validate(const RunConfig& cfg);

using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
    std::string command;
    nlohmann::ordered_json metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// '#'-prefixed metadata lines, a header row, 12 significant digits.
std::string render_csv(const Table& t);
std::string render_json(const Table& t);
std::string render(const Table& t, const std::string& format);

nlohmann::ordered_json base_metadata(const RunConfig& cfg, const std::string& command);

Table cmd_spectrum(const RunConfig& cfg);

struct Table1Report {
    Table table;
    CalibrationResult calibration;
};

/// Calibrates a on the anchor row, then compares every tabulated value.
Table1Report cmd_table1(const RunConfig& cfg);

struct WavefunctionReport {
    Table samples;
    nlohmann::ordered_json report;
};

WavefunctionReport cmd_wavefunction(const RunConfig& cfg);

Table cmd_compare_centrifugal(const RunConfig& cfg);

inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 1;
inline constexpr int exit_computation = 2;

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace kgws::app
