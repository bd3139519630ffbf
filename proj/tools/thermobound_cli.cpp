#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cli_support.hpp"
#include "thermobound/error.hpp"
#include "thermobound/franck_condon.hpp"
#include "thermobound/io.hpp"
#include "thermobound/oscillator.hpp"
#include "thermobound/qubit.hpp"
#include "thermobound/random.hpp"
#include "thermobound/thermal.hpp"

using namespace thermobound;
using namespace thermobound::cli;

namespace {

constexpr int exit_violation = 1;
constexpr int exit_usage = 2;
constexpr int exit_domain = 3;
constexpr int exit_numerical = 4;

struct Common {
    std::string out;
    std::string format = "csv";
    std::uint64_t seed = 1;
    int jobs = 1;
    bool gnuplot = false;

    [[nodiscard]] Format fmt() const { return format == "json" ? Format::json : Format::csv; }
};

void add_common(CLI::App *sub, Common &c, bool plots) {
    sub->add_option("--out", c.out, "Output file (stdout when omitted)");
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--seed", c.seed, "Seed for randomized inputs")->capture_default_str();
    sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    if(plots) sub->add_flag("--gnuplot", c.gnuplot, "Also write <out>.gp, a gnuplot script for the CSV");
}

void maybe_plot(const Common &c, const std::string &header, const std::string &plot) {
    if(!c.gnuplot) return;
    if(c.out.empty() || c.fmt() != Format::csv) throw UsageError("--gnuplot needs --out and --format csv");
    write_gnuplot(c.out, header, plot);
}

const std::string bounds_plot = "plot data using 1:2 with lines lc 'red', '' using 1:3 with lines lc 'gray', '' using 1:4 with lines lc "
                                "'blue'\n";

// generic

struct GenericArgs {
    Common common;
    std::string s1, s2;
    std::optional<int> random_dim;
    double T1 = 1.0, T2 = 1.0;
    bool grand = false;
    std::string bound = "delta-s";
    std::string save_inputs;
};

int run_generic(const CLI::App &sub, const GenericArgs &a) {
    if(a.random_dim && (!a.s1.empty() || !a.s2.empty())) throw UsageError("--random excludes --s1/--s2");
    if(!a.random_dim && (a.s1.empty() || a.s2.empty())) throw UsageError("generic needs --s1 and --s2, or --random");
    if(a.grand && a.random_dim) throw UsageError("--grand reads its specs from --s1/--s2");
    if(a.grand && a.bound == "helmholtz") throw UsageError("--bound helmholtz has no grand-canonical form");
    const Sink sink(a.common.out, a.common.fmt());

    BoundsResult result;
    if(a.grand) {
        const GrandThermalSpec g1 = io::grand_spec_from_json(io::read_json_file(a.s1));
        const GrandThermalSpec g2 = io::grand_spec_from_json(io::read_json_file(a.s2));
        result = a.bound == "log-z" ? grand_log_z_ratio_bounds(g1, g2) : grand_delta_s_bounds(g1, g2).bounds;
    } else {
        std::optional<ThermalSpec> s1, s2;
        if(a.random_dim) {
            if(*a.random_dim < 1) throw DomainError(fmt::format("--random needs a dimension >= 1, got {}", *a.random_dim));
            std::mt19937_64 rng(a.common.seed);
            s1.emplace(random_hermitian(*a.random_dim, rng), a.T1);
            s2.emplace(random_hermitian(*a.random_dim, rng), a.T2);
        } else {
            s1.emplace(io::thermal_spec_from_json(io::read_json_file(a.s1)));
            s2.emplace(io::thermal_spec_from_json(io::read_json_file(a.s2)));
        }
        if(!a.save_inputs.empty()) {
            for(const auto &[suffix, spec] : {std::pair{"1", &*s1}, std::pair{"2", &*s2}}) {
                const std::string path = a.save_inputs + suffix + ".json";
                std::ofstream f(path, std::ios::trunc);
                if(!f) throw DomainError(fmt::format("cannot write '{}'", path));
                f << io::thermal_spec_to_json(*spec).dump() << '\n';
            }
        }
        if(a.bound == "helmholtz") result = helmholtz_bounds(*s1, *s2);
        else if(a.bound == "log-z") result = log_z_ratio_bounds(*s1, *s2);
        else result = delta_s_bounds(*s1, *s2);
    }
    sink.write(config_header(sub), {bounds_columns, {bounds_cells(result)}});
    return 0;
}

// qubit-sweep

struct QubitArgs {
    Common common;
    double h0 = 0, hx = 0, hy = 0, hz = 0, g0 = 0, gx = 0, gy = 0, gz = 0;
    std::optional<double> hnorm, theta, T1;
    double T2 = 0.0;
    std::string sweep = "theta";
    int points = 200;
    double T1min = 1.0, T1max = 30.0;
};

int run_qubit(const CLI::App &sub, const QubitArgs &a) {
    const qubit::BlochHamiltonian b1{a.h0, {a.hx, a.hy, a.hz}};
    const qubit::BlochHamiltonian b2{a.g0, {a.gx, a.gy, a.gz}};
    const double norm1 = a.hnorm.value_or(b1.norm());
    const double norm2 = b2.norm();
    if(a.hnorm && *a.hnorm < 0.0) throw DomainError(fmt::format("--hnorm must be >= 0, got {}", *a.hnorm));

    std::vector<double> grid;
    std::function<BoundsResult(double)> eval;
    if(a.sweep == "theta") {
        if(a.theta) throw UsageError("--theta conflicts with --sweep theta");
        if(!a.T1) throw UsageError("--sweep theta needs --T1");
        grid = linspace(0.0, M_PI, a.points);
        const double T1 = *a.T1;
        eval = [=, &a](double theta) { return qubit::delta_s_bounds_qubit(norm1, norm2, theta, T1, a.T2); };
    } else {
        if(a.T1) throw UsageError("--T1 conflicts with --sweep T1; use --T1min/--T1max");
        if(a.hnorm && !a.theta) throw UsageError("--hnorm needs --theta when the angle is not swept");
        const double theta = a.theta.value_or(qubit::bloch_angle(b1, b2));
        require_temperature(a.T1min, "qubit-sweep --T1min");
        require_temperature(a.T1max, "qubit-sweep --T1max");
        grid = linspace(a.T1min, a.T1max, a.points);
        eval = [=, &a](double T1) { return qubit::delta_s_bounds_qubit(norm1, norm2, theta, T1, a.T2); };
    }
    require_temperature(a.T2, "qubit-sweep --T2");
    if(a.T1) require_temperature(*a.T1, "qubit-sweep --T1");
    const Sink sink(a.common.out, a.common.fmt());

    const std::vector<BoundsResult> rows = parallel_map(grid.size(), a.common.jobs, [&](std::size_t i) { return eval(grid[i]); });
    Table table{{a.sweep, "lower", "exact", "upper"}, {}};
    for(std::size_t i = 0; i < rows.size(); ++i) table.rows.push_back({grid[i], rows[i].lower, *rows[i].exact, rows[i].upper});
    const std::string header = config_header(sub);
    sink.write(header, table);
    maybe_plot(a.common, header, fmt::format("set xlabel '{}'\nset ylabel 'Delta S'\n{}", a.sweep, bounds_plot));
    return 0;
}

// fc

struct FcArgs {
    Common common;
    std::string levels1, levels2, overlap;
    double T1 = 0.0, T2 = 0.0;
};

int run_fc(const CLI::App &sub, const FcArgs &a) {
    const RealVector l1 = io::read_levels_csv(a.levels1);
    const RealVector l2 = io::read_levels_csv(a.levels2);
    const Sink sink(a.common.out, a.common.fmt());

    BoundsResult ds, hf;
    if(a.overlap.empty()) {
        ds = fc::delta_s_bounds_same_basis(l1, l2, a.T1, a.T2);
        hf = fc::helmholtz_bounds_same_basis(l1, l2, a.T1, a.T2);
    } else {
        const fc::OverlapMatrix k = fc::OverlapMatrix::from_data(io::read_matrix_csv(a.overlap));
        const fc::SpectralSystem s1(l1), s2(l2);
        ds = fc::delta_s_bounds_fc(s1, s2, a.T1, a.T2, k);
        hf = fc::helmholtz_bounds_fc(s1, s2, a.T1, a.T2, k);
    }
    Table table{{"quantity"}, {}};
    table.columns.insert(table.columns.end(), bounds_columns.begin(), bounds_columns.end());
    table.columns.push_back("guaranteed");
    for(const auto &[name, b] : {std::pair{"delta_s", &ds}, std::pair{"helmholtz", &hf}}) {
        Row row{std::string(name)};
        const Row cells = bounds_cells(*b);
        row.insert(row.end(), cells.begin(), cells.end());
        row.emplace_back(b->guaranteed);
        table.rows.push_back(std::move(row));
    }
    sink.write(config_header(sub), table);
    return 0;
}

// oscillator profiles

struct ProfileArgs {
    std::string profile = "sqrt_linear";
    double omega0 = 1.0;
    std::optional<double> eta, offset;
    double big_omega = 2.0;
    std::string table;
};

void add_profile(CLI::App *sub, ProfileArgs &p) {
    sub->add_option("--profile", p.profile, "Frequency profile")
        ->check(CLI::IsMember({"sqrt_linear", "paul_trap", "constant", "tabulated"}))
        ->capture_default_str();
    sub->add_option("--omega0", p.omega0, "Frequency scale")->capture_default_str();
    sub->add_option("--eta", p.eta, "sqrt_linear slope (default 1) or paul_trap depth (default 0.5)");
    sub->add_option("--offset", p.offset, "sqrt_linear offset (default 0, giving omega0 sqrt(eta t))");
    sub->add_option("--Omega", p.big_omega, "paul_trap drive frequency")->capture_default_str();
    sub->add_option("--table", p.table, "tabulated profile: CSV rows t,omega");
}

oscillator::FrequencyProfile make_profile(const ProfileArgs &p) {
    using oscillator::FrequencyProfile;
    if(p.profile == "sqrt_linear") return FrequencyProfile::sqrt_linear(p.omega0, p.eta.value_or(1.0), p.offset.value_or(0.0));
    if(p.profile == "paul_trap") return FrequencyProfile::paul_trap(p.omega0, p.eta.value_or(0.5), p.big_omega);
    if(p.profile == "constant") return FrequencyProfile::constant(p.omega0);
    if(p.table.empty()) throw UsageError("--profile tabulated needs --table");
    const RealMatrix m = io::read_matrix_csv(p.table);
    if(m.cols() != 2) throw DomainError(fmt::format("--table needs two columns t,omega; got {}", m.cols()));
    std::vector<double> times(m.col(0).begin(), m.col(0).end());
    std::vector<double> omegas(m.col(1).begin(), m.col(1).end());
    return FrequencyProfile::tabulated(std::move(times), std::move(omegas));
}

const std::vector<std::string> physical_columns{"lower", "exact", "upper", "omega_t", "omega_tprime"};

// osc-physical

struct PhysicalArgs {
    Common common;
    ProfileArgs profile;
    double T1 = 0.0, T2 = 0.0, tprime = 0.0, tmin = 0.1, tmax = 0.0;
    int points = 200;
};

int run_physical(const CLI::App &sub, const PhysicalArgs &a) {
    const oscillator::FrequencyProfile profile = make_profile(a.profile);
    if(!(a.tmin >= 0.0 && a.tmax >= a.tmin)) throw DomainError(fmt::format("need 0 <= --tmin <= --tmax, got {} and {}", a.tmin, a.tmax));
    if(a.tprime < 0.0) throw DomainError(fmt::format("--tprime must be >= 0, got {}", a.tprime));
    profile.validate_window(std::max(a.tmax, a.tprime));
    require_temperature(a.T1, "osc-physical --T1");
    require_temperature(a.T2, "osc-physical --T2");
    const Sink sink(a.common.out, a.common.fmt());

    const std::vector<double> grid = linspace(a.tmin, a.tmax, a.points);
    const std::vector<BoundsResult> rows = parallel_map(grid.size(), a.common.jobs, [&](std::size_t i) {
        return oscillator::delta_s_bounds_physical(profile, grid[i], a.tprime, a.T1, a.T2);
    });
    Table table{{"t"}, {}};
    table.columns.insert(table.columns.end(), physical_columns.begin(), physical_columns.end());
    const double omega_tp = profile.omega(a.tprime);
    for(std::size_t i = 0; i < rows.size(); ++i)
        table.rows.push_back({grid[i], rows[i].lower, *rows[i].exact, rows[i].upper, profile.omega(grid[i]), omega_tp});
    const std::string header = config_header(sub);
    sink.write(header, table);
    maybe_plot(a.common, header, fmt::format("set xlabel 't'\nset ylabel 'Delta S'\n{}", bounds_plot));
    return 0;
}

// paul-trap

struct TrapArgs {
    Common common;
    double omega0 = 1.0, eta = 0.0, big_omega = 0.0, t = 0.0, T1 = 0.0, T2 = 0.0;
    double tpmin = 0.0, tpmax = 4.0 * M_PI;
    int points = 400;
};

int run_trap(const CLI::App &sub, const TrapArgs &a) {
    const oscillator::FrequencyProfile profile = oscillator::FrequencyProfile::paul_trap(a.omega0, a.eta, a.big_omega);
    if(!(a.tpmin >= 0.0 && a.tpmax >= a.tpmin))
        throw DomainError(fmt::format("need 0 <= --tpmin <= --tpmax, got {} and {}", a.tpmin, a.tpmax));
    if(a.t < 0.0) throw DomainError(fmt::format("--t must be >= 0, got {}", a.t));
    require_temperature(a.T1, "paul-trap --T1");
    require_temperature(a.T2, "paul-trap --T2");
    const Sink sink(a.common.out, a.common.fmt());

    const std::vector<double> grid = linspace(a.tpmin, a.tpmax, a.points);
    const std::vector<BoundsResult> rows = parallel_map(grid.size(), a.common.jobs, [&](std::size_t i) {
        return oscillator::delta_s_bounds_physical(profile, a.t, grid[i], a.T1, a.T2);
    });
    Table table{{"tprime"}, {}};
    table.columns.insert(table.columns.end(), physical_columns.begin(), physical_columns.end());
    const double omega_t = profile.omega(a.t);
    for(std::size_t i = 0; i < rows.size(); ++i)
        table.rows.push_back({grid[i], rows[i].lower, *rows[i].exact, rows[i].upper, omega_t, profile.omega(grid[i])});
    const std::string header = config_header(sub);
    sink.write(header, table);
    maybe_plot(a.common, header,
               fmt::format("set xlabel \"t'\"\nset ylabel 'Delta S'\nset y2label 'omega'\nset y2tics\n"
                           "plot data using 1:2 with lines lc 'red', '' using 1:3 with lines lc 'gray', '' using 1:4 with lines lc 'blue', "
                           "'' using 1:6 axes x1y2 with lines dt 2 lc 'black'\n"));
    return 0;
}

// osc-invariant

struct InvariantArgs {
    Common common;
    ProfileArgs profile;
    std::optional<double> t, tprime, T1, T2;
    std::string tgrid, tpgrid, T1grid, T2grid;
    double tol = oscillator::default_tolerance;
};

std::vector<double> axis(const std::optional<double> &value, const std::string &grid, const char *name, const char *grid_name) {
    if(value && !grid.empty()) throw UsageError(fmt::format("{} excludes {}", name, grid_name));
    if(value) return {*value};
    if(grid.empty()) throw UsageError(fmt::format("osc-invariant needs {} or {}", name, grid_name));
    return parse_grid(grid, grid_name);
}

int run_invariant(const CLI::App &sub, const InvariantArgs &a) {
    const std::vector<double> ts = axis(a.t, a.tgrid, "--t", "--tgrid");
    const std::vector<double> tps = axis(a.tprime, a.tpgrid, "--tprime", "--tpgrid");
    const std::vector<double> T1s = axis(a.T1, a.T1grid, "--T1", "--T1grid");
    const std::vector<double> T2s = axis(a.T2, a.T2grid, "--T2", "--T2grid");
    for(double T : T1s) require_temperature(T, "osc-invariant T1");
    for(double T : T2s) require_temperature(T, "osc-invariant T2");
    for(const std::vector<double> *times : {&ts, &tps})
        for(double t : *times)
            if(t < 0.0) throw DomainError(fmt::format("osc-invariant: times must be >= 0, got {}", t));
    const oscillator::FrequencyProfile profile = make_profile(a.profile);
    const double t_max = std::max(*std::max_element(ts.begin(), ts.end()), *std::max_element(tps.begin(), tps.end()));
    const Sink sink(a.common.out, a.common.fmt());

    const oscillator::ClassicalSolution sol = oscillator::solve_classical(profile, std::max(t_max, 1e-6), a.tol);
    struct Point {
        double t, tp, T1, T2;
    };
    std::vector<Point> points;
    for(double t : ts)
        for(double tp : tps)
            for(double T1 : T1s)
                for(double T2 : T2s) points.push_back({t, tp, T1, T2});
    const std::vector<BoundsResult> rows = parallel_map(points.size(), a.common.jobs, [&](std::size_t i) {
        const Point &p = points[i];
        return oscillator::delta_s_bounds_invariant(sol, p.t, p.tp, p.T1, p.T2);
    });
    Table table{{"t", "tprime", "T1", "T2"}, {}};
    table.columns.insert(table.columns.end(), physical_columns.begin(), physical_columns.end());
    for(std::size_t i = 0; i < rows.size(); ++i) {
        const Point &p = points[i];
        table.rows.push_back({p.t, p.tp, p.T1, p.T2, rows[i].lower, *rows[i].exact, rows[i].upper, profile.omega(p.t), profile.omega(p.tp)});
    }
    const std::string header = config_header(sub);
    sink.write(header, table);
    maybe_plot(a.common, header,
               "set xlabel 'T1'\nset ylabel 'T2'\nset zlabel 'Delta S'\n"
               "splot data using 3:4:5 with points pt 7 ps 0.4 lc 'red', '' using 3:4:6 with points pt 7 ps 0.4 lc 'gray', "
               "'' using 3:4:7 with points pt 7 ps 0.4 lc 'blue'\n");
    return 0;
}

// oracle

struct OracleArgs {
    Common common;
    double omega_t = 0.0, omega_tp = 0.0, T = 0.0;
    int N = 400;
};

int run_oracle(const CLI::App &sub, const OracleArgs &a) {
    const Sink sink(a.common.out, a.common.fmt());
    const double closed = oscillator::cross_mean_physical(a.omega_t, a.omega_tp, a.T);
    const oscillator::FockOracleResult fock = oscillator::fock_truncated_oracle(a.omega_t, a.omega_tp, a.T, a.N);
    Table table{{"omega_t", "omega_tp", "T", "N", "closed", "fock", "abs_diff", "tail_weight"}, {}};
    table.rows.push_back(
        {a.omega_t, a.omega_tp, a.T, static_cast<double>(a.N), closed, fock.cross_mean, std::abs(fock.cross_mean - closed), fock.tail_weight});
    sink.write(config_header(sub), table);
    return 0;
}

// sweep-check

struct SweepArgs {
    Common common;
    int trials = 1000;
    double tol = sandwich_tolerance;
};

struct Trial {
    double violation = 0.0;
    std::string params;
};

double violation_of(const BoundsResult &b) {
    return std::max({0.0, b.lower - *b.exact, *b.exact - b.upper, b.lower - b.upper});
}

double log_uniform(std::mt19937_64 &rng, double lo, double hi) {
    return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng));
}

// Each trial draws from its own generator, so results do not depend on scheduling.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t family, std::size_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(family),
                      static_cast<std::uint32_t>(trial)};
    return std::mt19937_64(seq);
}

Trial worst_of(std::initializer_list<std::pair<const char *, BoundsResult>> results, const std::string &params) {
    Trial t;
    for(const auto &[name, b] : results) {
        const double v = violation_of(b);
        if(v > t.violation || t.params.empty()) t = {v, fmt::format("{} bound={}", params, name)};
    }
    return t;
}

Trial canonical_trial(std::mt19937_64 rng) {
    const Eigen::Index d = std::uniform_int_distribution<int>(2, 8)(rng);
    const double T1 = log_uniform(rng, 0.1, 100.0), T2 = log_uniform(rng, 0.1, 100.0);
    const ThermalSpec s1{random_hermitian(d, rng), T1};
    const ThermalSpec s2{random_hermitian(d, rng), T2};
    return worst_of({{"delta_s", delta_s_bounds(s1, s2)}, {"helmholtz", helmholtz_bounds(s1, s2)}, {"log_z", log_z_ratio_bounds(s1, s2)}},
                    fmt::format("dim={} T1={} T2={}", d, io::format_double(T1), io::format_double(T2)));
}

Trial grand_trial(std::mt19937_64 rng) {
    const Eigen::Index d = std::uniform_int_distribution<int>(2, 6)(rng);
    std::uniform_real_distribution<double> chem(-3.0, 3.0);
    const double T1 = log_uniform(rng, 0.1, 100.0), T2 = log_uniform(rng, 0.1, 100.0);
    const double mu1 = chem(rng), mu2 = chem(rng);
    const GrandThermalSpec g1{random_hermitian(d, rng), random_hermitian(d, rng), T1, mu1};
    const GrandThermalSpec g2{random_hermitian(d, rng), random_hermitian(d, rng), T2, mu2};
    return worst_of({{"grand_delta_s", grand_delta_s_bounds(g1, g2).bounds}, {"grand_log_z", grand_log_z_ratio_bounds(g1, g2)}},
                    fmt::format("dim={} T1={} T2={} mu1={} mu2={}", d, io::format_double(T1), io::format_double(T2),
                                io::format_double(mu1), io::format_double(mu2)));
}

Trial qubit_trial(std::mt19937_64 rng) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    const qubit::BlochHamiltonian b1{u(rng), {u(rng), u(rng), u(rng)}};
    const qubit::BlochHamiltonian b2{u(rng), {u(rng), u(rng), u(rng)}};
    const double T1 = log_uniform(rng, 0.1, 100.0), T2 = log_uniform(rng, 0.1, 100.0);
    return worst_of({{"qubit_delta_s", qubit::delta_s_bounds_qubit(b1, b2, T1, T2)}},
                    fmt::format("h=({},{},{},{}) g=({},{},{},{}) T1={} T2={}", io::format_double(b1.h0), io::format_double(b1.h.x()),
                                io::format_double(b1.h.y()), io::format_double(b1.h.z()), io::format_double(b2.h0),
                                io::format_double(b2.h.x()), io::format_double(b2.h.y()), io::format_double(b2.h.z()),
                                io::format_double(T1), io::format_double(T2)));
}

Trial fc_trial(std::mt19937_64 rng) {
    const Eigen::Index d = std::uniform_int_distribution<int>(2, 16)(rng);
    std::uniform_real_distribution<double> level(-3.0, 3.0);
    RealVector l1(d), l2(d);
    for(auto &x : l1) x = level(rng);
    for(auto &x : l2) x = level(rng);
    const fc::SpectralSystem s1(l1, random_unitary(d, rng));
    const fc::SpectralSystem s2(l2, random_unitary(d, rng));
    const double T1 = log_uniform(rng, 0.1, 100.0), T2 = log_uniform(rng, 0.1, 100.0);
    const fc::OverlapMatrix k = fc::overlap_matrix(s1, s2);
    return worst_of({{"fc_delta_s", fc::delta_s_bounds_fc(s1, s2, T1, T2, k)}, {"fc_helmholtz", fc::helmholtz_bounds_fc(s1, s2, T1, T2, k)}},
                    fmt::format("dim={} T1={} T2={}", d, io::format_double(T1), io::format_double(T2)));
}

int run_sweep(const CLI::App &sub, const SweepArgs &a) {
    if(a.trials < 1) throw DomainError(fmt::format("--trials must be >= 1, got {}", a.trials));
    if(!(a.tol >= 0.0)) throw DomainError(fmt::format("--tol must be >= 0, got {}", a.tol));
    const Sink sink(a.common.out, a.common.fmt());

    struct Family {
        const char *name;
        Trial (*run)(std::mt19937_64);
    };
    const std::vector<Family> families{{"canonical", canonical_trial}, {"grand", grand_trial}, {"qubit", qubit_trial}, {"franck_condon", fc_trial}};

    Table table{{"family", "trials", "max_violation", "worst_trial", "status"}, {}};
    bool failed = false;
    for(std::size_t f = 0; f < families.size(); ++f) {
        const std::vector<Trial> trials = parallel_map(static_cast<std::size_t>(a.trials), a.common.jobs,
                                                       [&](std::size_t i) { return families[f].run(trial_rng(a.common.seed, f, i)); });
        std::size_t worst = 0;
        for(std::size_t i = 1; i < trials.size(); ++i)
            if(trials[i].violation > trials[worst].violation) worst = i;
        const bool ok = trials[worst].violation <= a.tol;
        for(std::size_t i = 0; i < trials.size(); ++i)
            if(trials[i].violation > a.tol)
                std::cerr << fmt::format("thermobound: violation family={} trial={} {} amount={}\n", families[f].name, i, trials[i].params,
                                         io::format_double(trials[i].violation));
        failed = failed || !ok;
        table.rows.push_back({std::string(families[f].name), static_cast<double>(a.trials), trials[worst].violation,
                              static_cast<double>(worst), std::string(ok ? "pass" : "fail")});
    }
    sink.write(config_header(sub), table);
    return failed ? exit_violation : 0;
}

std::string one_line(std::string text) {
    for(char &c : text)
        if(c == '\n' || c == '\r') c = ' ';
        else if(c == '"') c = '\'';
    while(!text.empty() && text.back() == ' ') text.pop_back();
    return text;
}

int report(const char *kind, int code, const std::string &message) {
    std::cerr << fmt::format("thermobound: error={} exit={} message=\"{}\"\n", kind, code, one_line(message));
    return code;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Thermodynamic bounds between equilibrium states"};
    app.require_subcommand(1);

    GenericArgs generic;
    CLI::App *generic_cmd = app.add_subcommand("generic", "Bounds between two thermal specs given as JSON");
    generic_cmd->add_option("--s1", generic.s1, "First spec {\"H\": ..., \"T\": ...}");
    generic_cmd->add_option("--s2", generic.s2, "Second spec");
    generic_cmd->add_option("--random", generic.random_dim, "Draw both Hamiltonians at random with this dimension");
    generic_cmd->add_option("--T1", generic.T1, "Temperature of the first random spec")->capture_default_str();
    generic_cmd->add_option("--T2", generic.T2, "Temperature of the second random spec")->capture_default_str();
    generic_cmd->add_flag("--grand", generic.grand, "Specs are grand-canonical {\"H\", \"N\", \"T\", \"mu\"}");
    generic_cmd->add_option("--bound", generic.bound, "Quantity to bound")
        ->check(CLI::IsMember({"delta-s", "helmholtz", "log-z"}))
        ->capture_default_str();
    generic_cmd->add_option("--save-inputs", generic.save_inputs, "Write the specs used to <prefix>1.json and <prefix>2.json");
    add_common(generic_cmd, generic.common, false);

    QubitArgs qubit;
    CLI::App *qubit_cmd = app.add_subcommand("qubit-sweep", "Entropy-difference bounds for two qubits over theta or T1");
    for(auto [name, target] : {std::pair{"--h0", &qubit.h0}, std::pair{"--hx", &qubit.hx}, std::pair{"--hy", &qubit.hy},
                               std::pair{"--hz", &qubit.hz}, std::pair{"--g0", &qubit.g0}, std::pair{"--gx", &qubit.gx},
                               std::pair{"--gy", &qubit.gy}, std::pair{"--gz", &qubit.gz}})
        qubit_cmd->add_option(name, *target, "Bloch component")->capture_default_str();
    CLI::Option *hnorm = qubit_cmd->add_option("--hnorm", qubit.hnorm, "|h|, replacing --hx/--hy/--hz");
    for(const char *name : {"--hx", "--hy", "--hz"}) hnorm->excludes(qubit_cmd->get_option(name));
    qubit_cmd->add_option("--theta", qubit.theta, "Angle between the Bloch vectors");
    qubit_cmd->add_option("--T1", qubit.T1, "Temperature of the first state");
    qubit_cmd->add_option("--T2", qubit.T2, "Temperature of the second state")->required();
    qubit_cmd->add_option("--sweep", qubit.sweep, "Swept variable")->check(CLI::IsMember({"theta", "T1"}))->capture_default_str();
    qubit_cmd->add_option("--points", qubit.points, "Grid points")->check(CLI::Range(2, 1000000))->capture_default_str();
    qubit_cmd->add_option("--T1min", qubit.T1min, "T1 sweep start")->capture_default_str();
    qubit_cmd->add_option("--T1max", qubit.T1max, "T1 sweep end")->capture_default_str();
    add_common(qubit_cmd, qubit.common, true);

    FcArgs fcargs;
    CLI::App *fc_cmd = app.add_subcommand("fc", "Franck-Condon bounds from level files and an overlap matrix");
    fc_cmd->add_option("--levels1", fcargs.levels1, "Levels of system 1, one per line")->required();
    fc_cmd->add_option("--levels2", fcargs.levels2, "Levels of system 2, one per line")->required();
    fc_cmd->add_option("--overlap", fcargs.overlap, "Overlap matrix k[j][l] as dense CSV rows (identity when omitted)");
    fc_cmd->add_option("--T1", fcargs.T1, "Temperature of system 1")->required();
    fc_cmd->add_option("--T2", fcargs.T2, "Temperature of system 2")->required();
    add_common(fc_cmd, fcargs.common, false);

    PhysicalArgs physical;
    CLI::App *physical_cmd = app.add_subcommand("osc-physical", "Oscillator bounds over t at fixed t'");
    add_profile(physical_cmd, physical.profile);
    physical_cmd->add_option("--T1", physical.T1, "Temperature at t")->required();
    physical_cmd->add_option("--T2", physical.T2, "Temperature at t'")->required();
    physical_cmd->add_option("--tprime", physical.tprime, "Fixed time t'")->required();
    physical_cmd->add_option("--tmin", physical.tmin, "Sweep start")->capture_default_str();
    physical_cmd->add_option("--tmax", physical.tmax, "Sweep end")->required();
    physical_cmd->add_option("--points", physical.points, "Grid points")->check(CLI::Range(2, 1000000))->capture_default_str();
    add_common(physical_cmd, physical.common, true);

    TrapArgs trap;
    CLI::App *trap_cmd = app.add_subcommand("paul-trap", "Paul-trap oscillator bounds over t' at fixed t");
    trap_cmd->add_option("--omega0", trap.omega0, "Frequency scale")->capture_default_str();
    trap_cmd->add_option("--eta", trap.eta, "Modulation depth, |eta| < 1")->required();
    trap_cmd->add_option("--Omega", trap.big_omega, "Drive frequency")->required();
    trap_cmd->add_option("--t", trap.t, "Fixed time t")->required();
    trap_cmd->add_option("--T1", trap.T1, "Temperature at t")->required();
    trap_cmd->add_option("--T2", trap.T2, "Temperature at t'")->required();
    trap_cmd->add_option("--tpmin", trap.tpmin, "Sweep start")->capture_default_str();
    trap_cmd->add_option("--tpmax", trap.tpmax, "Sweep end")->default_str(io::format_double(trap.tpmax));
    trap_cmd->add_option("--points", trap.points, "Grid points")->check(CLI::Range(2, 1000000))->capture_default_str();
    add_common(trap_cmd, trap.common, true);

    InvariantArgs invariant;
    CLI::App *invariant_cmd = app.add_subcommand("osc-invariant", "Bounds for the invariant-built oscillator Hamiltonian");
    add_profile(invariant_cmd, invariant.profile);
    invariant_cmd->add_option("--t", invariant.t, "Time t");
    invariant_cmd->add_option("--tgrid", invariant.tgrid, "t grid start:stop:count");
    invariant_cmd->add_option("--tprime", invariant.tprime, "Time t'");
    invariant_cmd->add_option("--tpgrid", invariant.tpgrid, "t' grid start:stop:count");
    invariant_cmd->add_option("--T1", invariant.T1, "Temperature at t");
    invariant_cmd->add_option("--T1grid", invariant.T1grid, "T1 grid start:stop:count");
    invariant_cmd->add_option("--T2", invariant.T2, "Temperature at t'");
    invariant_cmd->add_option("--T2grid", invariant.T2grid, "T2 grid start:stop:count");
    invariant_cmd->add_option("--tol", invariant.tol, "ODE tolerance")->capture_default_str();
    add_common(invariant_cmd, invariant.common, true);

    OracleArgs oracle;
    CLI::App *oracle_cmd = app.add_subcommand("oracle", "Closed-form cross mean against the truncated Fock oracle");
    oracle_cmd->add_option("--omega-t", oracle.omega_t, "omega(t)")->required();
    oracle_cmd->add_option("--omega-tp", oracle.omega_tp, "omega(t')")->required();
    oracle_cmd->add_option("--T", oracle.T, "Temperature")->required();
    oracle_cmd->add_option("--N", oracle.N, "Fock dimension")->capture_default_str();
    add_common(oracle_cmd, oracle.common, false);

    SweepArgs sweep;
    CLI::App *sweep_cmd = app.add_subcommand("sweep-check", "Randomized sandwich sweeps; exits 1 on any violation");
    sweep_cmd->add_option("--trials", sweep.trials, "Trials per family")->capture_default_str();
    sweep_cmd->add_option("--tol", sweep.tol, "Allowed violation")->capture_default_str();
    add_common(sweep_cmd, sweep.common, false);

    try {
        app.parse(argc, argv);
    } catch(const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch(const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch(const CLI::ParseError &e) {
        return report("usage", exit_usage, e.what());
    }

    try {
        if(*generic_cmd) return run_generic(*generic_cmd, generic);
        if(*qubit_cmd) return run_qubit(*qubit_cmd, qubit);
        if(*fc_cmd) return run_fc(*fc_cmd, fcargs);
        if(*physical_cmd) return run_physical(*physical_cmd, physical);
        if(*trap_cmd) return run_trap(*trap_cmd, trap);
        if(*invariant_cmd) return run_invariant(*invariant_cmd, invariant);
        if(*oracle_cmd) return run_oracle(*oracle_cmd, oracle);
        return run_sweep(*sweep_cmd, sweep);
    } catch(const UsageError &e) {
        return report("usage", exit_usage, e.what());
    } catch(const DomainError &e) {
        return report("domain", exit_domain, e.what());
    } catch(const DimensionError &e) {
        return report("dimension", exit_domain, e.what());
    } catch(const NumericalError &e) {
        return report("numerical", exit_numerical, e.what());
    } catch(const std::exception &e) {
        return report("internal", exit_numerical, e.what());
    }
}
