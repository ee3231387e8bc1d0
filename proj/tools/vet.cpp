// vet: evaluations, scans, maximization, bound certification and lattice
// comparisons for two-box separability on the thermal cylinder.
//
// Exit codes: 0 computed, 1 certification failed, 2 usage error,
// 3 computation failed.

#include "vet/collective_variance.hpp"
#include "vet/errors.hpp"
#include "vet/gaussian_two_mode.hpp"
#include "vet/greens_cylinder.hpp"
#include "vet/lattice_oracle.hpp"
#include "vet/separability_scan.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace {

using Value = std::variant<std::monostate, double, long long, bool, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
    bool single = false; // one row, serialized as a JSON object
};

struct RunConfig {
    std::string format = "csv";
    std::string out;
    unsigned threads = 0;
    unsigned long long seed = 0; // reserved, every algorithm is deterministic
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::string csv_cell(const Value& v)
{
    struct {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(double x) const { return format_double(x); }
        std::string operator()(long long x) const { return std::to_string(x); }
        std::string operator()(bool x) const { return x ? "true" : "false"; }
        std::string operator()(const std::string& s) const { return s; }
    } visit;
    return std::visit(visit, v);
}

nlohmann::ordered_json json_cell(const Value& v)
{
    struct {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(double x) const
        {
            return std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(format_double(x));
        }
        nlohmann::ordered_json operator()(long long x) const { return x; }
        nlohmann::ordered_json operator()(bool x) const { return x; }
        nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    } visit;
    return std::visit(visit, v);
}

void write_csv(std::ostream& os, const std::vector<Table>& tables)
{
    for (std::size_t t = 0; t < tables.size(); ++t) {
        const Table& table = tables[t];
        if (tables.size() > 1) {
            if (t > 0)
                os << '\n';
            os << "# " << table.name << '\n';
        }
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            os << (c ? "," : "") << table.columns[c];
        os << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                os << (c ? "," : "") << csv_cell(row[c]);
            os << '\n';
        }
    }
}

nlohmann::ordered_json table_json(const Table& table)
{
    auto row_object = [&](const std::vector<Value>& row) {
        nlohmann::ordered_json o;
        for (std::size_t c = 0; c < row.size(); ++c)
            o[table.columns[c]] = json_cell(row[c]);
        return o;
    };
    if (table.single)
        return row_object(table.rows.at(0));
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& row : table.rows)
        a.push_back(row_object(row));
    return a;
}

void write_json(std::ostream& os, const std::vector<Table>& tables)
{
    if (tables.size() == 1) {
        os << table_json(tables[0]).dump(2) << '\n';
        return;
    }
    nlohmann::ordered_json o;
    for (const Table& t : tables)
        o[t.name] = table_json(t);
    os << o.dump(2) << '\n';
}

void emit(const RunConfig& cfg, const std::vector<Table>& tables)
{
    std::ostringstream buffer;
    if (cfg.format == "json")
        write_json(buffer, tables);
    else
        write_csv(buffer, tables);
    if (cfg.out.empty()) {
        std::cout << buffer.str();
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file)
        throw UsageError("cannot open output file " + cfg.out);
    file << buffer.str();
}

Value optional_value(const std::optional<double>& x)
{
    return x ? Value(*x) : Value();
}

unsigned threads_from_env()
{
    const char* env = std::getenv("VET_THREADS");
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (!env || !*env)
        return hw;
    unsigned cap = 0;
    const std::string s(env);
    const auto r = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw UsageError("VET_THREADS must be a non-negative integer, got '" + s + "'");
    return cap == 0 ? hw : std::min(cap, hw);
}

// ---- eval

struct EvalArgs {
    double dx = 0.5, big_m = 0.0, box = 0.01;
    int dim = 1;
};

std::vector<Table> run_eval(const EvalArgs& a)
{
    if (!(a.dx > 0.0 && a.dx < 1.0))
        throw UsageError("--dx must lie in (0, 1), got " + format_double(a.dx));
    if (!(a.big_m >= 0.0) || !std::isfinite(a.big_m))
        throw UsageError("--bigm must be finite and non-negative, got " + format_double(a.big_m));
    if (!(a.box >= 0.0 && a.box < 0.5))
        throw UsageError("--boxl must lie in [0, 1/2), got " + format_double(a.box));
    if (a.dim < 1)
        throw UsageError("--dim must be at least 1");

    const vet::CovarianceComponents k = vet::components_closed_form(a.dx, a.big_m);
    const vet::TwoModeCovariance v = a.box > 0.0
        ? vet::build_v_tilde(vet::cylinder_collective_spec(a.box, 0.0, a.dx, a.big_m, 1.0, a.dim))
        : vet::TwoModeCovariance::from_components(k, 0.0, a.dim);
    const vet::SeparabilityReport r = vet::analyze(v);

    Table t{"eval",
            {"dx", "M", "L", "D", "F", "F_closed", "F_expansion", "a", "b", "c", "d", "det_v",
             "sigma_tilde", "nu_minus", "nu_plus", "nu_minus_magnitude", "nu_plus_magnitude",
             "negativity_blocks", "negativity_standard", "min_eigenvalue", "physical", "verdict"},
            {},
            true};
    t.rows.push_back({a.dx, a.big_m, a.box, static_cast<long long>(a.dim), r.f_value,
                      vet::simon_f_closed(k, a.box, a.dim),
                      a.dim == 1 ? Value(vet::f_expansion(a.dx, a.big_m, a.box)) : Value(), k.a, k.b, k.c,
                      k.d, r.det_v, r.sigma_tilde,
                      r.spectrum ? Value(r.spectrum->nu_minus) : Value(),
                      r.spectrum ? Value(r.spectrum->nu_plus) : Value(), r.nu_minus_magnitude,
                      r.nu_plus_magnitude, optional_value(r.negativity_blocks),
                      optional_value(r.negativity_standard), r.physicality.min_eigenvalue,
                      r.physicality.physical, std::string(vet::to_string(r.verdict))});
    return {t};
}

// ---- scan / certify grid

struct GridArgs {
    vet::ScanGrid grid;

    void add(CLI::App* cmd)
    {
        cmd->add_option("--dx-lo", grid.delta_x.lo, "Lowest dx")->capture_default_str();
        cmd->add_option("--dx-hi", grid.delta_x.hi, "Highest dx")->capture_default_str();
        cmd->add_option("--dx-count", grid.delta_x.count, "Number of dx points")->capture_default_str();
        cmd->add_option("--m-lo", grid.big_m.lo, "Lowest M")->capture_default_str();
        cmd->add_option("--m-hi", grid.big_m.hi, "Highest M")->capture_default_str();
        cmd->add_option("--m-count", grid.big_m.count, "Number of M points")->capture_default_str();
    }
};

void validate_grid(const vet::ScanGrid& g)
{
    try {
        g.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::vector<Table> run_scan(vet::ScanGrid grid, const std::vector<double>& boxes, unsigned threads)
{
    grid.l_values = boxes;
    validate_grid(grid);
    Table t{"scan", {"dx", "M", "L", "F", "f2", "f4", "negativity"}, {}, false};
    for (const vet::ScanRow& r : vet::scan_surface(grid, threads))
        t.rows.push_back({r.delta_x, r.big_m, r.box_size, r.f_value, r.f2, r.f4, r.negativity});
    return {t};
}

// ---- maximize

std::vector<Table> run_maximize(const std::string& target, int refinements)
{
    if (refinements < 0)
        throw UsageError("--refinements must be non-negative");
    const vet::Target tg = target == "f2" ? vet::Target::f2 : vet::Target::f4;
    const vet::MaximumReport r = vet::maximize(tg, vet::ScanGrid::maximization_default(), refinements);
    Table best{"maximum", {"target", "dx", "M", "value", "plateau"}, {}, true};
    best.rows.push_back({target, r.delta_x, r.big_m, r.value, r.plateau});
    Table hist{"history", {"round", "step_dx", "step_m", "best"}, {}, false};
    for (std::size_t i = 0; i < r.history.size(); ++i)
        hist.rows.push_back({static_cast<long long>(i), r.history[i].step_dx, r.history[i].step_m,
                             r.history[i].best});
    return {best, hist};
}

// ---- certify

std::vector<Table> certificate_tables(const vet::BoundCertificate& c,
                                      const std::vector<vet::BoundViolation>* violations)
{
    Table coef{"coefficients", {"f2_max", "f4_max", "holds", "rounded_holds"}, {}, true};
    coef.rows.push_back({c.coefficient_f2, c.coefficient_f4, c.holds, c.literal_holds});
    Table rows{"bounds",
               {"L", "bound", "worst_margin", "worst_dx", "worst_M", "rounded_bound", "rounded_worst_margin"},
               {},
               false};
    for (const vet::BoundRow& r : c.rows)
        rows.rows.push_back({r.box_size, r.bound, r.worst_margin, r.worst_dx, r.worst_m, r.literal_bound,
                             r.literal_worst_margin});
    std::vector<Table> out{coef, rows};
    if (violations) {
        Table v{"violations", {"L", "dx", "M", "F", "bound"}, {}, false};
        for (const vet::BoundViolation& x : *violations)
            v.rows.push_back({x.box_size, x.delta_x, x.big_m, x.f_value, x.bound});
        out.push_back(v);
    }
    return out;
}

// ---- oracle

struct OracleArgs {
    int sites = 1024;
    double mass = 1.0;
    double radius = 1.0;
    std::optional<double> beta;
    std::vector<double> separations{0.1, 0.2, 0.3, 0.4, 0.5};
};

std::vector<Table> run_oracle(const OracleArgs& a)
{
    const vet::LatticeSpec spec{a.sites, a.radius, a.mass, a.beta};
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const vet::DiscrepancyReport r = vet::compare_continuum(spec, a.separations);

    Table summary{"summary", {"sites", "M", "max_relative_discrepancy", "max_refined_discrepancy"}, {}, true};
    summary.rows.push_back({static_cast<long long>(r.sites), r.big_m, r.max_relative_discrepancy,
                            r.max_refined_discrepancy});
    Table pairs{"pairs",
                {"dx1", "dx2", "sites1", "sites2", "lattice", "continuum", "relative_discrepancy",
                 "refined_discrepancy", "convergence_ratio", "continuum_thermal", "thermal_discrepancy"},
                {},
                false};
    for (const vet::SeparationPair& p : r.pairs)
        pairs.rows.push_back({p.delta_x_1, p.delta_x_2, static_cast<long long>(p.sites_1),
                              static_cast<long long>(p.sites_2), p.lattice_difference, p.continuum_massless,
                              p.relative_discrepancy, p.refined_discrepancy, p.convergence_ratio,
                              p.continuum_thermal, p.thermal_discrepancy});
    Table mom{"momentum", {"dx", "sites", "lattice", "continuum", "relative_discrepancy"}, {}, false};
    for (const vet::MomentumPoint& m : r.momentum)
        mom.rows.push_back({m.delta_x, static_cast<long long>(m.sites), m.lattice, m.continuum,
                            m.relative_discrepancy});
    return {summary, pairs, mom};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Separability of box-averaged field modes on the thermal cylinder"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", cfg.out, "Write output to this file instead of stdout");

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "Evaluate F and diagnostics at one point");
    eval->add_option("--dx", eval_args.dx, "Box separation in (0, 1)")->required();
    eval->add_option("--bigm", eval_args.big_m, "Thermal parameter M = m beta")->required();
    eval->add_option("--boxl", eval_args.box, "Box size L in [0, 1/2)")->required();
    eval->add_option("--dim", eval_args.dim, "Box dimension D")->capture_default_str();

    GridArgs scan_grid;
    std::vector<double> scan_boxes{0.01};
    auto* scan = app.add_subcommand("scan", "Tabulate F over a (dx, M) grid");
    scan_grid.add(scan);
    scan->add_option("--boxl", scan_boxes, "Box sizes, comma separated")->delimiter(',')->capture_default_str();

    std::string target = "f2";
    int refinements = 6;
    auto* maxi = app.add_subcommand("maximize", "Maximize an expansion coefficient");
    maxi->add_option("--target", target, "Coefficient")->check(CLI::IsMember({"f2", "f4"}))->capture_default_str();
    maxi->add_option("--refinements", refinements, "Refinement rounds")->capture_default_str();

    GridArgs cert_grid;
    std::vector<double> cert_boxes;
    auto* cert = app.add_subcommand("certify", "Check the global small-box bound");
    cert_grid.add(cert);
    cert->add_option("--boxl", cert_boxes, "Box sizes in (0, 1/2), comma separated")->delimiter(',')->required();

    OracleArgs oracle_args;
    auto* oracle = app.add_subcommand("oracle", "Compare lattice correlators with the continuum");
    oracle->add_option("--sites", oracle_args.sites, "Ring sites")->capture_default_str();
    oracle->add_option("--mass", oracle_args.mass, "Field mass")->capture_default_str();
    oracle->add_option("--radius", oracle_args.radius, "Circumference")->capture_default_str();
    oracle->add_option("--beta", oracle_args.beta, "Inverse temperature (omit for the ground state)");
    oracle->add_option("--dx", oracle_args.separations, "Separations, comma separated")->delimiter(',')->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        cfg.threads = threads_from_env();
        if (*eval) {
            emit(cfg, run_eval(eval_args));
        } else if (*scan) {
            emit(cfg, run_scan(scan_grid.grid, scan_boxes, cfg.threads));
        } else if (*maxi) {
            emit(cfg, run_maximize(target, refinements));
        } else if (*cert) {
            for (double l : cert_boxes)
                if (!(l > 0.0 && l < 0.5))
                    throw UsageError("--boxl values must lie in (0, 1/2), got " + format_double(l));
            vet::ScanGrid g = cert_grid.grid;
            g.l_values = cert_boxes;
            validate_grid(g);
            try {
                emit(cfg, certificate_tables(vet::bound_certificate(cert_boxes, g, cfg.threads), nullptr));
            } catch (const vet::CertificateError& e) {
                std::cerr << "vet: " << e.what() << '\n';
                emit(cfg, certificate_tables(e.certificate(), &e.violations()));
                return 1;
            }
        } else if (*oracle) {
            emit(cfg, run_oracle(oracle_args));
        }
    } catch (const UsageError& e) {
        std::cerr << "vet: " << e.what() << '\n';
        return 2;
    } catch (const vet::ResolutionError& e) {
        std::cerr << "vet: " << e.what() << '\n';
        return 2;
    } catch (const vet::OverlapError& e) {
        std::cerr << "vet: " << e.what() << '\n';
        return 2;
    } catch (const vet::DomainError& e) {
        std::cerr << "vet: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "vet: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "vet: computation failed: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
