#include "kgws/app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>

#include "kgws/errors.hpp"
#include "kgws/oracle.hpp"
#include "kgws/wavefunction.hpp"

namespace kgws::app {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

Branch parse_branch(const std::string& s)
{
    if (s == "particle" || s == "+") return Branch::particle;
    if (s == "antiparticle" || s == "-") return Branch::antiparticle;
    throw ValidationError("unknown branch '" + s + "' (expected particle, antiparticle, + or -)");
}

template <class T>
T get_as(const json& j, const std::string& key)
{
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw ValidationError("config key '" + key + "' has the wrong type");
    }
}

std::pair<int, int> get_range(const json& j, const std::string& key)
{
    const auto v = get_as<std::vector<int>>(j, key);
    if (v.size() != 2 || v[0] > v[1]) throw ValidationError("config key '" + key + "' must be [lo, hi] with lo <= hi");
    return {v[0], v[1]};
}

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_cell(const Cell& c)
{
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(const std::string& s) const
        {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string q = "\"";
            for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            return q + "\"";
        }
    };
    return std::visit(Visitor{}, c);
}

ojson json_cell(const Cell& c)
{
    struct Visitor {
        ojson operator()(std::monostate) const { return nullptr; }
        ojson operator()(long long v) const { return v; }
        ojson operator()(double v) const { return std::isfinite(v) ? ojson(v) : ojson(format_double(v)); }
        ojson operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

Cell opt_cell(const std::optional<double>& v)
{
    if (v) return *v;
    return std::monostate{};
}

std::string error_status(const std::exception& e)
{
    if (dynamic_cast<const NoBoundState*>(&e)) return std::string("no-bound-state: ") + e.what();
    if (const auto* a = dynamic_cast<const AmbiguousRoot*>(&e))
        return "ambiguous-root (" + std::to_string(a->candidates().size()) + " candidates)";
    if (const auto* m = dynamic_cast<const NodeCountMismatch*>(&e))
        return "node-count-mismatch (found " + std::to_string(m->found()) + ")";
    if (dynamic_cast<const DomainError*>(&e)) return std::string("domain-error: ") + e.what();
    return std::string("error: ") + e.what();
}

SystemParams system_for(const RunConfig& cfg, double m1)
{
    SystemParams p = cfg.system;
    p.m1 = m1;
    return p;
}

RadialGrid grid_for(const RunConfig& cfg, const SystemParams& p)
{
    return RadialGrid::for_system(p, cfg.grid_points, cfg.grid_extent);
}

// Applies calibration when requested; returns the config actually used.
RunConfig resolved(const RunConfig& cfg, std::optional<CalibrationResult>* cal = nullptr)
{
    RunConfig r = cfg;
    if (cfg.calibrate) {
        const CalibrationResult c = calibrate_diffuseness(system_for(cfg, 0.0));
        r.system.a = c.a;
        if (cal) *cal = c;
    }
    return r;
}

template <class Row, class Fn>
std::vector<Row> parallel_rows(std::size_t count, Fn fn)
{
    std::vector<std::future<Row>> jobs;
    jobs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) jobs.push_back(std::async(std::launch::async, fn, i));
    std::vector<Row> rows;
    rows.reserve(count);
    for (auto& j : jobs) rows.push_back(j.get());
    return rows;
}

struct StateKey {
    double m1;
    int n;
    int l;
    Branch branch;
};

std::vector<StateKey> state_keys(const RunConfig& cfg)
{
    std::vector<StateKey> keys;
    for (double m1 : cfg.m1_list)
        for (const auto& [n, l] : cfg.quantum_grid)
            for (Branch b : cfg.branches) keys.push_back({m1, n, l, b});
    std::sort(keys.begin(), keys.end(), [](const StateKey& x, const StateKey& y) {
        return std::tuple(x.m1, x.n, x.l, static_cast<int>(x.branch)) <
               std::tuple(y.m1, y.n, y.l, static_cast<int>(y.branch));
    });
    return keys;
}

} // namespace

RunConfig config_from_json(const json& j, RunConfig cfg)
{
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
        if (key == "V0") cfg.system.V0 = get_as<double>(v, key);
        else if (key == "q") cfg.system.q = get_as<double>(v, key);
        else if (key == "r0") cfg.system.r0 = get_as<double>(v, key);
        else if (key == "a") cfg.system.a = get_as<double>(v, key);
        else if (key == "m0") cfg.system.m0 = get_as<double>(v, key);
        else if (key == "m1_list") cfg.m1_list = get_as<std::vector<double>>(v, key);
        else if (key == "quantum_grid") {
            cfg.quantum_grid.clear();
            if (v.is_object()) {
                for (const auto& [k2, v2] : v.items())
                    if (k2 != "n" && k2 != "l") throw ValidationError("unknown quantum_grid key '" + k2 + "'");
                if (!v.contains("n") || !v.contains("l"))
                    throw ValidationError("quantum_grid ranges need both 'n' and 'l'");
                const auto [n0, n1] = get_range(v["n"], "quantum_grid.n");
                const auto [l0, l1] = get_range(v["l"], "quantum_grid.l");
                for (int n = n0; n <= n1; ++n)
                    for (int l = l0; l <= l1; ++l) cfg.quantum_grid.emplace_back(n, l);
            } else {
                for (const auto& pair : get_as<std::vector<std::vector<int>>>(v, key)) {
                    if (pair.size() != 2) throw ValidationError("quantum_grid entries must be [n, l]");
                    cfg.quantum_grid.emplace_back(pair[0], pair[1]);
                }
            }
        }
        else if (key == "branches") {
            cfg.branches.clear();
            for (const auto& s : get_as<std::vector<std::string>>(v, key)) cfg.branches.push_back(parse_branch(s));
        }
        else if (key == "format") cfg.format = get_as<std::string>(v, key);
        else if (key == "out") cfg.out = get_as<std::string>(v, key);
        else if (key == "oracles") cfg.oracles = get_as<bool>(v, key);
        else if (key == "calibrate") cfg.calibrate = get_as<bool>(v, key);
        else if (key == "grid_points") cfg.grid_points = get_as<int>(v, key);
        else if (key == "grid_extent") cfg.grid_extent = get_as<double>(v, key);
        else if (key == "n") cfg.n = get_as<int>(v, key);
        else if (key == "l") cfg.l = get_as<int>(v, key);
        else if (key == "branch") cfg.branch = parse_branch(get_as<std::string>(v, key));
        else throw ValidationError("unknown config key '" + key + "'");
    }
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

void validate(const RunConfig& cfg)
{
    if (cfg.m1_list.empty()) cfg.system.validate();
    for (double m1 : cfg.m1_list) system_for(cfg, m1).validate();
    for (const auto& [n, l] : cfg.quantum_grid)
        if (n < 0 || l < 0) throw ValidationError("quantum numbers must be non-negative");
    if (cfg.format != "csv" && cfg.format != "json") throw ValidationError("format must be csv or json");
    if (cfg.grid_points < 100) throw ValidationError("grid_points must be at least 100");
    if (!(cfg.grid_extent >= 20.0)) throw ValidationError("grid_extent must be at least 20 diffuseness lengths");
    if (cfg.n < 0 || cfg.l < 0) throw ValidationError("n and l must be non-negative");
}

std::string render_csv(const Table& t)
{
    std::ostringstream os;
    for (const auto& [k, v] : t.metadata.items()) {
        if (v.is_number_float()) os << "# " << k << '=' << format_double(v.get<double>()) << '\n';
        else if (v.is_string()) os << "# " << k << '=' << v.get<std::string>() << '\n';
        else os << "# " << k << '=' << v.dump() << '\n';
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
        os << '\n';
    }
    return os.str();
}

std::string render_json(const Table& t)
{
    ojson j;
    j["command"] = t.command;
    j["metadata"] = t.metadata;
    j["columns"] = t.columns;
    ojson rows = ojson::array();
    for (const auto& row : t.rows) {
        ojson r;
        for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = json_cell(row[i]);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string render(const Table& t, const std::string& format)
{
    return format == "json" ? render_json(t) : render_csv(t);
}

ojson base_metadata(const RunConfig& cfg, const std::string& command)
{
    ojson m;
    m["command"] = command;
    m["version"] = KGWS_VERSION;
    m["hbar_c_MeV_fm"] = cfg.system.hbar_c;
    m["amu_MeV"] = cfg.system.amu_to_mev;
    m["V0_MeV"] = cfg.system.V0;
    m["q"] = cfg.system.q;
    m["r0_fm"] = cfg.system.r0;
    m["a_fm"] = cfg.system.a;
    m["m0_amu"] = cfg.system.m0;
    m["grid_points"] = cfg.grid_points;
    m["grid_extent_a"] = cfg.grid_extent;
    return m;
}

Table cmd_spectrum(const RunConfig& in)
{
    validate(in);
    std::optional<CalibrationResult> cal;
    const RunConfig cfg = resolved(in, &cal);

    Table t;
    t.command = "spectrum";
    t.metadata = base_metadata(cfg, t.command);
    t.metadata["oracles"] = cfg.oracles;
    if (cal) t.metadata["calibration_deviation"] = cal->relative_deviation;
    t.columns = {"m1_amu", "n", "l", "branch", "status", "E_closed", "abs_E_closed", "E_root", "E_shoot",
                 "dE_root", "rel_dE_shoot", "root_status", "shoot_status", "quantization_residual"};

    const std::vector<StateKey> keys = state_keys(cfg);
    t.rows = parallel_rows<std::vector<Cell>>(keys.size(), [&](std::size_t i) {
        const StateKey k = keys[i];
        const SystemParams p = system_for(cfg, k.m1);
        const PekerisCoefficients d = pekeris_coefficients(p);

        std::optional<double> closed, root, shoot, residual;
        std::string status = "bound";
        std::string root_status = cfg.oracles ? "" : "disabled";
        std::string shoot_status = cfg.oracles ? "" : "disabled";
        try {
            closed = energy_closed_form(k.n, k.l, k.branch, p, d);
            const BoundState s = solve_bound_state(k.n, k.l, k.branch, p, d);
            residual = s.residual;
        } catch (const std::exception& e) {
            status = error_status(e);
        }
        if (cfg.oracles) {
            try {
                root = solve_energy_by_root(k.n, k.l, k.branch, p, d).energy;
                root_status = "bound";
            } catch (const std::exception& e) {
                root_status = error_status(e);
            }
            try {
                ShootOptions opts;
                opts.guess = closed;
                opts.estimate_convergence = false;
                shoot = shoot_approximated(k.n, k.l, k.branch, p, d, grid_for(cfg, p), opts).energy;
                shoot_status = "bound";
            } catch (const std::exception& e) {
                shoot_status = error_status(e);
            }
        }
        std::optional<double> d_root, rel_shoot;
        if (closed && root) d_root = *closed - *root;
        if (closed && shoot) rel_shoot = std::abs(*closed - *shoot) / std::abs(*closed);
        return std::vector<Cell>{k.m1,
                                 static_cast<long long>(k.n),
                                 static_cast<long long>(k.l),
                                 std::string(to_string(k.branch)),
                                 status,
                                 opt_cell(closed),
                                 closed ? Cell(std::abs(*closed)) : Cell(std::monostate{}),
                                 opt_cell(root),
                                 opt_cell(shoot),
                                 opt_cell(d_root),
                                 opt_cell(rel_shoot),
                                 root_status,
                                 shoot_status,
                                 opt_cell(residual)};
    });
    return t;
}

namespace {

struct PaperRow {
    double m1;
    std::string n_label;
    std::string l_label;
    double value;
};

// Row labels as printed; blank cells are kept blank.
const std::vector<PaperRow>& paper_table()
{
    static const std::vector<PaperRow> rows = {
        {0.0, "0", "0", 171.920},   {0.0, "", "1", 922.962},   {0.0, "2", "1", 924.286},
        {0.0, "", "0", 891.947},    {0.0, "", "1", 895.473},   {0.0, "", "2", 902.084},
        {0.01, "0", "0", 270.028},  {0.01, "", "1", 842.200},  {0.01, "", "1", 846.735},
        {0.01, "2", "0", 808.765},  {0.01, "", "1", 813.490},  {0.01, "", "2", 822.663},
        {0.001, "0", "0", 187.762}, {0.001, "", "1", 915.806}, {0.001, "", "1", 917.461},
        {0.001, "2", "0", 844.123}, {0.001, "", "1", 887.762}, {0.001, "", "2", 894.605},
    };
    return rows;
}

} // namespace

Table1Report cmd_table1(const RunConfig& in)
{
    validate(in);
    Table1Report rep;
    RunConfig cfg = in;
    rep.calibration = calibrate_diffuseness(system_for(cfg, 0.0));
    cfg.system.a = rep.calibration.a;

    Table& t = rep.table;
    t.command = "table1";
    t.metadata = base_metadata(cfg, t.command);
    t.metadata["calibrated_a_fm"] = rep.calibration.a;
    t.metadata["calibration_energy_MeV"] = rep.calibration.energy;
    t.metadata["calibration_deviation"] = rep.calibration.relative_deviation;
    t.metadata["calibration_ok"] = rep.calibration.within_tolerance;
    t.columns = {"m1_amu", "n_label", "l_label", "paper_abs_E", "match", "n", "l", "branch", "E_computed",
                 "rel_dev", "E_printed_mass_term", "rel_dev_printed", "status"};

    const auto& paper = paper_table();
    t.rows = parallel_rows<std::vector<Cell>>(paper.size(), [&](std::size_t i) {
        const PaperRow& row = paper[i];
        const SystemParams p = system_for(cfg, row.m1);
        const PekerisCoefficients d = pekeris_coefficients(p);
        const bool anchor = row.n_label == "0" && row.l_label == "0";

        int n = 0, l = 0;
        Branch branch = Branch::particle;
        std::optional<double> e, e_printed;
        std::string status = "ok";
        if (anchor) {
            try {
                e = energy_closed_form(0, 0, branch, p, d);
            } catch (const std::exception& ex) {
                status = error_status(ex);
            }
            try {
                e_printed = energy_closed_form(0, 0, branch, p, d, MassShiftForm::printed);
            } catch (const std::exception&) {
            }
        } else {
            // Nearest |E| among every closed-form level with n, l <= 2.
            double best = std::numeric_limits<double>::infinity();
            for (int nn = 0; nn <= 2; ++nn)
                for (int ll = 0; ll <= 2; ++ll)
                    for (Branch b : {Branch::particle, Branch::antiparticle}) {
                        try {
                            const double v = energy_closed_form(nn, ll, b, p, d);
                            if (std::abs(std::abs(v) - row.value) < best) {
                                best = std::abs(std::abs(v) - row.value);
                                e = v;
                                n = nn;
                                l = ll;
                                branch = b;
                            }
                        } catch (const std::exception&) {
                        }
                    }
            status = e ? "best-match, flagged" : "no closed-form level";
        }
        std::optional<double> dev, dev_printed;
        if (e) dev = (std::abs(*e) - row.value) / row.value;
        if (e_printed) dev_printed = (std::abs(*e_printed) - row.value) / row.value;
        const bool matched = e.has_value();
        return std::vector<Cell>{row.m1,
                                 row.n_label,
                                 row.l_label,
                                 row.value,
                                 std::string(anchor ? "labelled" : "best-match"),
                                 matched ? Cell(static_cast<long long>(n)) : Cell(std::monostate{}),
                                 matched ? Cell(static_cast<long long>(l)) : Cell(std::monostate{}),
                                 matched ? Cell(std::string(to_string(branch))) : Cell(std::monostate{}),
                                 opt_cell(e),
                                 opt_cell(dev),
                                 opt_cell(e_printed),
                                 opt_cell(dev_printed),
                                 status};
    });
    return rep;
}

WavefunctionReport cmd_wavefunction(const RunConfig& in)
{
    validate(in);
    std::optional<CalibrationResult> cal;
    const RunConfig cfg = resolved(in, &cal);
    const double m1 = cfg.m1_list.empty() ? cfg.system.m1 : cfg.m1_list.front();
    const SystemParams p = system_for(cfg, m1);

    const BoundState s = solve_bound_state(cfg.n, cfg.l, cfg.branch, p);
    const Eigenfunction phi = normalize(s);
    const RadialGrid grid = grid_for(cfg, p);
    const ResidualReport res = verify_state(phi, grid);
    const ClosedFormNormDiagnostic diag = closed_form_norm_diagnostic(phi);

    WavefunctionReport rep;
    Table& t = rep.samples;
    t.command = "wavefunction";
    t.metadata = base_metadata(cfg, t.command);
    t.metadata["m1_amu"] = m1;
    t.metadata["n"] = cfg.n;
    t.metadata["l"] = cfg.l;
    t.metadata["branch"] = std::string(to_string(cfg.branch));
    t.columns = {"r_fm", "phi"};
    for (const auto& [r, v] : sample_on_r_grid(phi, grid)) t.rows.push_back({r, v});

    ojson& j = rep.report;
    j["metadata"] = t.metadata;
    j["energy_MeV"] = s.energy;
    j["N"] = s.N;
    j["jacobi_a3"] = s.jacobi_a3;
    j["jacobi_A"] = s.jacobi_A;
    j["root_signs"] = {s.signs.A, s.signs.a3};
    j["norm_constant"] = phi.norm_constant;
    j["norm"] = phi.report.norm;
    j["norm_error_estimate"] = phi.report.error_estimate / phi.report.integral;
    j["node_count"] = count_nodes(phi);
    j["fraction_beyond_z1"] = phi.report.fraction_beyond_z1;
    j["alt_measure_integral"] = phi.report.alt_measure_integral;
    j["phi_at_origin"] = phi(0.0);
    j["ode_residual"] = res.relative;
    ojson cf;
    cf["b_sq_exact_terms"] = diag.b_sq_exact_terms;
    cf["b_sq_closed_form"] = diag.b_sq_closed_form;
    cf["ratio_exact_terms"] = json_cell(diag.ratio_exact_terms);
    cf["ratio_closed_form"] = json_cell(diag.ratio_closed_form);
    cf["terms"] = diag.terms;
    cf["terms_condition_held"] = diag.terms_condition_held;
    cf["condition_held"] = diag.condition_held;
    cf["status"] = diag.status;
    j["closed_form_norm"] = std::move(cf);
    return rep;
}

Table cmd_compare_centrifugal(const RunConfig& in)
{
    validate(in);
    std::optional<CalibrationResult> cal;
    const RunConfig cfg = resolved(in, &cal);

    Table t;
    t.command = "compare-centrifugal";
    t.metadata = base_metadata(cfg, t.command);
    t.columns = {"m1_amu", "n", "l", "branch", "D0", "D1", "D2", "E_approx", "E_exact", "abs_dE", "rel_dE",
                 "status"};

    const std::vector<StateKey> keys = state_keys(cfg);
    t.rows = parallel_rows<std::vector<Cell>>(keys.size(), [&](std::size_t i) {
        const StateKey k = keys[i];
        const SystemParams p = system_for(cfg, k.m1);
        const PekerisCoefficients d = pekeris_coefficients(p);
        const RadialGrid grid = grid_for(cfg, p);
        ShootOptions opts;
        opts.estimate_convergence = false;

        std::optional<double> approx, exact;
        std::string status = "ok";
        try {
            approx = shoot_approximated(k.n, k.l, k.branch, p, d, grid, opts).energy;
            opts.guess = approx;
            exact = shoot_exact_centrifugal(k.n, k.l, k.branch, p, grid, opts).energy;
        } catch (const std::exception& e) {
            status = error_status(e);
        }
        std::optional<double> de, rel;
        if (approx && exact) {
            de = std::abs(*exact - *approx);
            rel = *de / std::abs(*exact);
        }
        return std::vector<Cell>{k.m1,
                                 static_cast<long long>(k.n),
                                 static_cast<long long>(k.l),
                                 std::string(to_string(k.branch)),
                                 d.D0,
                                 d.D1,
                                 d.D2,
                                 opt_cell(approx),
                                 opt_cell(exact),
                                 opt_cell(de),
                                 opt_cell(rel),
                                 status};
    });
    return t;
}

namespace {

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write output file '" + path + "'");
    f << text;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App cli{"Klein-Gordon bound states in a generalized Woods-Saxon well with position-dependent mass", "kgws"};
    cli.require_subcommand(1);
    cli.fallthrough();

    std::string config_path, out_path, format, branch = "particle";
    std::vector<double> m1;
    std::optional<double> a;
    std::optional<int> n, l, points;
    bool no_oracle = false, calibrate = false;

    cli.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    cli.add_option("--out", out_path, "output file (default: stdout)");
    cli.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cli.add_flag("--no-oracle", no_oracle, "skip the root and shooting oracles");
    cli.add_option("--a", a, "diffuseness a in fm");
    cli.add_option("--m1", m1, "comma-separated m1 values in amu")->delimiter(',');
    cli.add_flag("--calibrate", calibrate, "calibrate a on the 171.920 MeV anchor");
    cli.add_option("--points", points, "radial grid points");

    auto* spectrum = cli.add_subcommand("spectrum", "closed-form spectrum with oracle columns");
    auto* table1 = cli.add_subcommand("table1", "reproduce the reference energy table");
    auto* wave = cli.add_subcommand("wavefunction", "sample a normalized eigenfunction");
    wave->add_option("--n", n, "radial quantum number");
    wave->add_option("--l", l, "orbital quantum number");
    wave->add_option("--branch", branch, "particle or antiparticle");
    auto* compare = cli.add_subcommand("compare-centrifugal", "replaced vs exact centrifugal term");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << cli.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return exit_validation;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = load_config(config_path);
        if (!out_path.empty()) cfg.out = out_path;
        if (!format.empty()) cfg.format = format;
        if (no_oracle) cfg.oracles = false;
        if (calibrate) cfg.calibrate = true;
        if (a) {
            cfg.system.a = *a;
            cfg.calibrate = false;
        }
        if (!m1.empty()) cfg.m1_list = m1;
        if (points) cfg.grid_points = *points;
        if (n) cfg.n = *n;
        if (l) cfg.l = *l;
        if (wave->parsed()) cfg.branch = parse_branch(branch);
        validate(cfg);
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return exit_validation;
    }

    try {
        if (spectrum->parsed()) {
            emit(render(cmd_spectrum(cfg), cfg.format), cfg.out, out);
        } else if (table1->parsed()) {
            const Table1Report rep = cmd_table1(cfg);
            emit(render(rep.table, cfg.format), cfg.out, out);
            if (!rep.calibration.within_tolerance) {
                err << "calibration failure: best a = " << format_double(rep.calibration.a)
                    << " fm, deviation " << format_double(rep.calibration.relative_deviation) << '\n';
                return exit_computation;
            }
        } else if (wave->parsed()) {
            const WavefunctionReport rep = cmd_wavefunction(cfg);
            if (cfg.format == "json") {
                ojson j = rep.report;
                ojson samples = ojson::array();
                for (const auto& row : rep.samples.rows) samples.push_back({json_cell(row[0]), json_cell(row[1])});
                j["samples"] = std::move(samples);
                emit(j.dump(2) + "\n", cfg.out, out);
            } else {
                emit(render_csv(rep.samples), cfg.out, out);
                const std::string sidecar = rep.report.dump(2) + "\n";
                if (cfg.out.empty()) err << sidecar;
                else emit(sidecar, cfg.out + ".json", out);
            }
        } else if (compare->parsed()) {
            emit(render(cmd_compare_centrifugal(cfg), cfg.format), cfg.out, out);
        }
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::exception& e) {
        err << "computation failure: " << error_status(e) << '\n';
        return exit_computation;
    }
    return exit_ok;
}

} // namespace kgws::app
