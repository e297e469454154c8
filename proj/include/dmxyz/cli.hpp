#pragma once

// Command-line frontend: eval, sweep, critical, figure, verify.
//
// Exit codes: 0 success, 2 usage error, 3 numeric overflow, 4 root-finder
// non-convergence, 5 verification/regression failure.
//
// All numeric output uses %.17g with '.' decimal separator and '\n' line
// endings; identical invocations produce byte-identical output. The sweep
// engine may parallelize internally (see DMXYZ_THREADS), but rows are
// assembled in grid order, so results never depend on scheduling.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dmxyz/analysis.hpp"
#include "dmxyz/entanglement.hpp"
#include "dmxyz/errors.hpp"
#include "dmxyz/model.hpp"
#include "dmxyz/thermal.hpp"

namespace dmxyz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitOverflow = 3;
inline constexpr int kExitNoConvergence = 4;
inline constexpr int kExitVerifyFailed = 5;

/// 17-significant-digit formatting used for every numeric field.
inline std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline DmAxis parse_axis(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "x") return DmAxis::X;
    if (s == "y") return DmAxis::Y;
    if (s == "z") return DmAxis::Z;
    throw std::invalid_argument("--axis must be one of x, y, z");
}

namespace detail {

struct EvalArgs {
    double jx = 0, jy = 0, jz = 0, d = 0, t = 0;
    std::string axis;
};

struct SweepArgs {
    double jx = 0, jy = 0, jz = 0;
    std::string axis;
    std::string var;
    double from = 0, to = 0;
    int steps = 201;
    std::optional<double> fixed_t, fixed_d;
    std::string out_path;
};

struct CriticalArgs {
    double jx = 0, jy = 0, jz = 0;
    std::string axis;
    std::string kind;
    std::optional<double> d, t, lo, hi;
    double tol = 1e-8;
};

struct FigureArgs {
    int figure = 0;
    std::string out_dir = ".";
};

struct VerifyArgs {
    int samples = 1000;
    std::uint64_t seed = 42;
    double tol = 1e-9;
};

inline void add_coupling_flags(CLI::App* cmd, double& jx, double& jy, double& jz) {
    cmd->add_option("--jx", jx, "coupling J_x")->required();
    cmd->add_option("--jy", jy, "coupling J_y")->required();
    cmd->add_option("--jz", jz, "coupling J_z")->required();
}

inline std::ostream& open_output(const std::string& path, std::ofstream& file,
                                 std::ostream& fallback) {
    if (path.empty()) return fallback;
    file.open(path, std::ios::binary);
    if (!file) throw std::invalid_argument("--out: cannot open '" + path + "'");
    return file;
}

inline int run_eval(const EvalArgs& a, std::ostream& out) {
    const ModelSpec spec{{a.jx, a.jy, a.jz}, {parse_axis(a.axis), a.d}};
    const ConcurrenceResult r = concurrence_closed_form(spec, Temperature(a.t));
    out << "axis,jx,jy,jz,d,t,concurrence,l1,l2,l3,l4,path\n";
    out << axis_name(spec.dm.axis) << ',' << fmt17(a.jx) << ',' << fmt17(a.jy) << ','
        << fmt17(a.jz) << ',' << fmt17(a.d) << ',' << fmt17(a.t) << ','
        << fmt17(r.value) << ',' << fmt17(r.lambdas[0]) << ',' << fmt17(r.lambdas[1])
        << ',' << fmt17(r.lambdas[2]) << ',' << fmt17(r.lambdas[3])
        << ",closed_form\n";
    return kExitOk;
}

inline void write_sweep_rows(std::ostream& out, const std::string& var_name,
                             const std::vector<SweepRow>& rows) {
    out << "variable,value,concurrence,l1,l2,l3,l4\n";
    for (const SweepRow& row : rows) {
        out << var_name << ',' << fmt17(row.variable_value) << ','
            << fmt17(row.concurrence) << ',' << fmt17(row.lambdas[0]) << ','
            << fmt17(row.lambdas[1]) << ',' << fmt17(row.lambdas[2]) << ','
            << fmt17(row.lambdas[3]) << '\n';
    }
}

inline int run_sweep(const SweepArgs& a, std::ostream& fallback) {
    const DmAxis axis = parse_axis(a.axis);
    SweepSpec s;
    s.base = ModelSpec{{a.jx, a.jy, a.jz}, {axis, 0.0}};
    s.start = a.from;
    s.stop = a.to;
    s.steps = a.steps;
    if (a.var == "d") {
        if (!a.fixed_t)
            throw std::invalid_argument("--t is required when sweeping --var d");
        s.variable = SweepVariable::DmStrength;
        s.fixed_t = *a.fixed_t;
        if (!(s.fixed_t > 0.0))
            throw std::invalid_argument("--t must be positive");
    } else {
        if (!a.fixed_d)
            throw std::invalid_argument("--d is required when sweeping --var t");
        s.variable = SweepVariable::Temperature;
        s.fixed_d = *a.fixed_d;
        s.base.dm.strength = *a.fixed_d;
        if (!(s.start > 0.0))
            throw std::invalid_argument("--from must be positive when sweeping --var t");
    }
    if (!(s.start < s.stop))
        throw std::invalid_argument("--from must be smaller than --to");

    const std::vector<SweepRow> rows = sweep(s);
    std::ofstream file;
    std::ostream& out = open_output(a.out_path, file, fallback);
    write_sweep_rows(out, a.var, rows);
    return kExitOk;
}

inline int run_critical(const CriticalArgs& a, std::ostream& out) {
    const DmAxis axis = parse_axis(a.axis);
    const CouplingParams j{a.jx, a.jy, a.jz};
    if (!(a.tol > 0.0)) throw std::invalid_argument("--tol must be positive");

    CriticalResult r;
    std::string kind_name;
    if (a.kind == "temp") {
        if (!a.d)
            throw std::invalid_argument("--d is required for --kind temp");
        const double lo = a.lo.value_or(0.05);
        const double hi = a.hi.value_or(50.0);
        r = critical_temperature(ModelSpec{j, {axis, *a.d}}, lo, hi, a.tol);
        kind_name = "temp";
    } else {
        if (!a.t)
            throw std::invalid_argument("--t is required for --kind dm");
        if (!(*a.t > 0.0)) throw std::invalid_argument("--t must be positive");
        const double lo = a.lo.value_or(0.0);
        const double hi = a.hi.value_or(10.0);
        r = critical_dm(j, axis, Temperature(*a.t), lo, hi, a.tol);
        kind_name = "dm";
    }

    out << "kind,value,bracket_lo,bracket_hi,residual_width,status\n";
    if (r.status == SearchStatus::Converged) {
        out << kind_name << ',' << fmt17(r.value) << ',' << fmt17(r.bracket.first)
            << ',' << fmt17(r.bracket.second) << ',' << fmt17(r.residual_width)
            << ',' << status_name(r.status) << '\n';
        return kExitOk;
    }
    out << kind_name << ",,,,," << status_name(r.status) << '\n';
    return kExitNoConvergence;
}

inline int run_figure(const FigureArgs& a, std::ostream& out) {
    const FigurePreset p = figure_preset(a.figure);
    namespace fs = std::filesystem;
    fs::create_directories(a.out_dir);

    const std::string n0 = axis_name(p.axes[0]);
    const std::string n1 = axis_name(p.axes[1]);

    std::array<std::vector<SweepRow>, 2> panel_a_rows, panel_b_rows;
    for (int i = 0; i < 2; ++i) {
        SweepSpec sa = p.panel_a;
        SweepSpec sb = p.panel_b;
        sa.base.dm.axis = p.axes[static_cast<std::size_t>(i)];
        sb.base.dm.axis = p.axes[static_cast<std::size_t>(i)];
        panel_a_rows[static_cast<std::size_t>(i)] = sweep(sa);
        panel_b_rows[static_cast<std::size_t>(i)] = sweep(sb);
    }

    auto write_panel = [&](const std::string& path, const char* var_name,
                           const std::array<std::vector<SweepRow>, 2>& rows) {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::invalid_argument("--out: cannot open '" + path + "'");
        f << "variable,value,concurrence_" << n0 << ",concurrence_" << n1 << "\n";
        for (std::size_t i = 0; i < rows[0].size(); ++i) {
            f << var_name << ',' << fmt17(rows[0][i].variable_value) << ','
              << fmt17(rows[0][i].concurrence) << ',' << fmt17(rows[1][i].concurrence)
              << '\n';
        }
    };
    const std::string base =
        (fs::path(a.out_dir) / ("fig" + std::to_string(p.id))).string();
    write_panel(base + "a.csv", "d", panel_a_rows);
    write_panel(base + "b.csv", "t", panel_b_rows);

    // Critical values per compared axis, printed and used for the verdict.
    std::array<CriticalResult, 2> dc, tc;
    for (int i = 0; i < 2; ++i) {
        const DmAxis axis = p.axes[static_cast<std::size_t>(i)];
        dc[static_cast<std::size_t>(i)] =
            critical_dm(p.coupling, axis, Temperature(p.panel_a.fixed_t),
                        p.panel_a.start, p.panel_a.stop, 1e-8);
        tc[static_cast<std::size_t>(i)] = critical_temperature(
            ModelSpec{p.coupling, {axis, p.panel_b.fixed_d}}, p.panel_b.start,
            p.panel_b.stop, 1e-8);
        out << "axis " << axis_name(axis)
            << ": critical_d(T=" << fmt17(p.panel_a.fixed_t)
            << ") = " << fmt17(dc[static_cast<std::size_t>(i)].value)
            << ", critical_t(D=" << fmt17(p.panel_b.fixed_d)
            << ") = " << fmt17(tc[static_cast<std::size_t>(i)].value) << '\n';
    }

    const std::size_t fav = (p.favored == p.axes[0]) ? 0 : 1;
    const std::size_t oth = 1 - fav;
    bool ok = dc[fav].status == SearchStatus::Converged &&
              dc[oth].status == SearchStatus::Converged &&
              tc[fav].status == SearchStatus::Converged &&
              tc[oth].status == SearchStatus::Converged;
    const bool dc_ok = ok && dc[fav].value < dc[oth].value;
    const bool tc_ok = ok && tc[fav].value > tc[oth].value;
    bool pointwise_ok = true;
    for (std::size_t i = 0; i < panel_a_rows[0].size(); ++i) {
        const double cf = panel_a_rows[fav][i].concurrence;
        const double co = panel_a_rows[oth][i].concurrence;
        if (cf > 0.0 && co > 0.0 && cf < co - 1e-12) pointwise_ok = false;
    }

    if (ok && dc_ok && tc_ok && pointwise_ok) {
        out << "verdict: D" << axis_name(p.favored)
            << " dominates (smaller critical D, higher critical T, pointwise >=)\n";
        return kExitOk;
    }
    out << "verdict: FAILED (expected D" << axis_name(p.favored)
        << " to dominate; smaller-critical-D " << (dc_ok ? "ok" : "violated")
        << ", higher-critical-T " << (tc_ok ? "ok" : "violated")
        << ", pointwise " << (pointwise_ok ? "ok" : "violated") << ")\n";
    return kExitVerifyFailed;
}

inline int run_verify(const VerifyArgs& a, std::ostream& out) {
    std::mt19937_64 eng(a.seed);
    auto uniform = [&eng](double lo, double hi) {
        const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    };

    out << "verify: samples per axis = " << a.samples << ", seed = " << a.seed
        << '\n';
    double overall = 0.0;
    for (DmAxis axis : {DmAxis::X, DmAxis::Y, DmAxis::Z}) {
        double worst = 0.0;
        for (int i = 0; i < a.samples; ++i) {
            const CouplingParams j{uniform(-3.0, 3.0), uniform(-3.0, 3.0),
                                   uniform(-3.0, 3.0)};
            const double d = uniform(-3.0, 3.0);
            const double t = uniform(0.1, 20.0);
            const ModelSpec spec{j, {axis, d}};
            try {
                const double closed =
                    concurrence_closed_form(spec, Temperature(t)).value;
                const double oracle =
                    concurrence_oracle(gibbs_state(spec, Temperature(t))).value;
                worst = std::max(worst, std::abs(closed - oracle));
            } catch (const Overflow& e) {
                std::ostringstream os;
                os << e.what() << " [at axis " << axis_name(axis) << ", jx "
                   << fmt17(j.jx) << ", jy " << fmt17(j.jy) << ", jz "
                   << fmt17(j.jz) << ", d " << fmt17(d) << ", t " << fmt17(t)
                   << "]";
                throw Overflow(os.str());
            }
        }
        out << "axis " << axis_name(axis) << ": max|closed-oracle| = "
            << fmt17(worst) << '\n';
        overall = std::max(overall, worst);
    }
    out << "overall: max|closed-oracle| = " << fmt17(overall) << '\n';
    out << "tolerance: " << fmt17(a.tol) << '\n';
    const bool pass = overall <= a.tol;
    out << "verdict: " << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace detail

/// Parse and dispatch. Streams default to std::cout / std::cerr; tests may
/// substitute their own.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{
        "dmxyz: thermal entanglement (Wootters concurrence) of a two-qubit "
        "Heisenberg XYZ chain with a Dzyaloshinskii-Moriya interaction"};
    app.require_subcommand(1);

    detail::EvalArgs ev;
    detail::SweepArgs sw;
    detail::CriticalArgs cr;
    detail::FigureArgs fg;
    detail::VerifyArgs vf;

    const std::vector<std::string> axis_values{"x", "y", "z"};

    CLI::App* c_eval =
        app.add_subcommand("eval", "single-point concurrence (closed form)");
    c_eval->set_config("--config");
    detail::add_coupling_flags(c_eval, ev.jx, ev.jy, ev.jz);
    c_eval->add_option("--axis", ev.axis, "DM axis (x|y|z)")
        ->required()
        ->check(CLI::IsMember(axis_values, CLI::ignore_case));
    c_eval->add_option("--d", ev.d, "DM strength D")->required();
    c_eval->add_option("--t", ev.t, "temperature T > 0")
        ->required()
        ->check(CLI::PositiveNumber);

    CLI::App* c_sweep =
        app.add_subcommand("sweep", "concurrence over a D or T grid (CSV)");
    c_sweep->set_config("--config");
    detail::add_coupling_flags(c_sweep, sw.jx, sw.jy, sw.jz);
    c_sweep->add_option("--axis", sw.axis, "DM axis (x|y|z)")
        ->required()
        ->check(CLI::IsMember(axis_values, CLI::ignore_case));
    c_sweep->add_option("--var", sw.var, "sweep variable (d|t)")
        ->required()
        ->check(CLI::IsMember(std::vector<std::string>{"d", "t"}));
    c_sweep->add_option("--from", sw.from, "grid start")->required();
    c_sweep->add_option("--to", sw.to, "grid stop")->required();
    c_sweep->add_option("--steps", sw.steps, "grid points (>= 2, default 201)")
        ->check(CLI::Range(2, 1000000));
    double sweep_t = 0.0, sweep_d = 0.0;
    CLI::Option* opt_sweep_t =
        c_sweep->add_option("--t", sweep_t, "fixed temperature for --var d");
    CLI::Option* opt_sweep_d =
        c_sweep->add_option("--d", sweep_d, "fixed DM strength for --var t");
    c_sweep->add_option("--out", sw.out_path, "output CSV path (default stdout)");

    CLI::App* c_critical = app.add_subcommand(
        "critical", "bisection for the critical temperature or DM strength");
    c_critical->set_config("--config");
    detail::add_coupling_flags(c_critical, cr.jx, cr.jy, cr.jz);
    c_critical->add_option("--axis", cr.axis, "DM axis (x|y|z)")
        ->required()
        ->check(CLI::IsMember(axis_values, CLI::ignore_case));
    c_critical->add_option("--kind", cr.kind, "search kind (temp|dm)")
        ->required()
        ->check(CLI::IsMember(std::vector<std::string>{"temp", "dm"}));
    double crit_d = 0.0, crit_t = 0.0, crit_lo = 0.0, crit_hi = 0.0;
    CLI::Option* opt_crit_d =
        c_critical->add_option("--d", crit_d, "fixed DM strength (kind temp)");
    CLI::Option* opt_crit_t =
        c_critical->add_option("--t", crit_t, "fixed temperature (kind dm)");
    CLI::Option* opt_crit_lo = c_critical->add_option(
        "--lo", crit_lo, "bracket low end (defaults: temp 0.05, dm 0)");
    CLI::Option* opt_crit_hi = c_critical->add_option(
        "--hi", crit_hi, "bracket high end (defaults: temp 50, dm 10)");
    c_critical->add_option("--tol", cr.tol, "bracket tolerance (default 1e-8)")
        ->check(CLI::PositiveNumber);

    CLI::App* c_figure = app.add_subcommand(
        "figure", "write one of the six predefined comparison figures (two CSV files)");
    c_figure->set_config("--config");
    c_figure->add_option("--figure", fg.figure, "figure id (1..6)")
        ->required()
        ->check(CLI::Range(1, 6));
    c_figure->add_option("--out", fg.out_dir, "output directory (default .)");

    CLI::App* c_verify = app.add_subcommand(
        "verify", "closed form vs brute-force oracle on a seeded random grid");
    c_verify->set_config("--config");
    c_verify->add_option("--samples", vf.samples, "samples per axis (default 1000)")
        ->check(CLI::PositiveNumber);
    c_verify->add_option("--seed", vf.seed, "RNG seed (default 42)");
    c_verify->add_option("--tol", vf.tol, "max allowed discrepancy (default 1e-9)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11 handles --help via this path with exit code 0.
        std::ostringstream os;
        const int code = app.exit(e, out, os);
        err << os.str();
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (c_eval->parsed()) return detail::run_eval(ev, out);
        if (c_sweep->parsed()) {
            if (*opt_sweep_t) sw.fixed_t = sweep_t;
            if (*opt_sweep_d) sw.fixed_d = sweep_d;
            return detail::run_sweep(sw, out);
        }
        if (c_critical->parsed()) {
            if (*opt_crit_d) cr.d = crit_d;
            if (*opt_crit_t) cr.t = crit_t;
            if (*opt_crit_lo) cr.lo = crit_lo;
            if (*opt_crit_hi) cr.hi = crit_hi;
            return detail::run_critical(cr, out);
        }
        if (c_figure->parsed()) return detail::run_figure(fg, out);
        if (c_verify->parsed()) return detail::run_verify(vf, out);
        err << "error: no subcommand selected\n";
        return kExitUsage;
    } catch (const Overflow& e) {
        err << "error (overflow): " << e.what() << '\n';
        return kExitOverflow;
    } catch (const UnknownFigure& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace dmxyz::cli
