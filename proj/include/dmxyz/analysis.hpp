#pragma once

// Parameter sweeps (optionally threaded), critical-temperature / critical-D
// bisection, figure presets, and the axis-dominance report.
//
// Critical points are located by bisection on the boolean indicator
// C > 1e-12 rather than by sign-change root finding on C itself: the
// concurrence is exactly zero on a whole region because of the max{.,0}
// clamp, so the indicator transition is the well-defined object.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "dmxyz/entanglement.hpp"
#include "dmxyz/errors.hpp"
#include "dmxyz/model.hpp"
#include "dmxyz/thermal.hpp"

namespace dmxyz {

enum class SweepVariable { DmStrength, Temperature };

/// One sweep request: vary D at fixed T, or vary T at fixed D. The axis and
/// couplings come from `base`; the fixed counterpart comes from fixed_t /
/// fixed_d (whichever applies).
struct SweepSpec {
    ModelSpec base;
    SweepVariable variable = SweepVariable::DmStrength;
    double start = 0.0;
    double stop = 1.0;
    int steps = 201;
    double fixed_t = 1.0;
    double fixed_d = 0.0;
};

struct SweepRow {
    double variable_value = 0.0;
    double concurrence = 0.0;
    std::array<double, 4> lambdas{};  // descending
    EvalPath path = EvalPath::ClosedForm;
};

enum class CriticalKind { CriticalTemperature, CriticalDm };
enum class SearchStatus { Converged, NoSignChange, AlwaysZero, AlwaysPositive };

inline const char* status_name(SearchStatus s) {
    switch (s) {
        case SearchStatus::Converged: return "Converged";
        case SearchStatus::NoSignChange: return "NoSignChange";
        case SearchStatus::AlwaysZero: return "AlwaysZero";
        default: return "AlwaysPositive";
    }
}

struct CriticalResult {
    CriticalKind kind = CriticalKind::CriticalTemperature;
    double value = 0.0;
    std::pair<double, double> bracket{0.0, 0.0};
    double residual_width = 0.0;
    SearchStatus status = SearchStatus::Converged;
};

namespace detail {

inline constexpr double kIndicatorEps = 1e-12;

inline bool entangled(const ModelSpec& spec, double t) {
    return concurrence_closed_form(spec, Temperature(t)).value > kIndicatorEps;
}

inline int sweep_thread_count(int rows) {
    unsigned n = 0;
    if (const char* env = std::getenv("DMXYZ_THREADS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) n = static_cast<unsigned>(v);
    }
    if (n == 0) {
        n = std::thread::hardware_concurrency();
        if (n == 0) n = 1;
        n = std::min(n, 8u);
    }
    return static_cast<int>(std::min<unsigned>(n, static_cast<unsigned>(rows)));
}

}  // namespace detail

/// Evaluate the closed-form concurrence over a uniform grid including both
/// endpoints. Rows may be computed on several threads (DMXYZ_THREADS caps
/// the count); assembly is by grid index, so output order is deterministic.
inline std::vector<SweepRow> sweep(const SweepSpec& s) {
    if (s.steps < 2) throw std::invalid_argument("sweep: steps must be >= 2");
    if (!(s.start < s.stop))
        throw std::invalid_argument("sweep: start must be < stop");
    if (s.variable == SweepVariable::Temperature && !(s.start > 0.0))
        throw std::invalid_argument("sweep: temperature grid must start > 0");
    if (s.variable == SweepVariable::DmStrength && !(s.fixed_t > 0.0))
        throw std::invalid_argument("sweep: fixed_t must be > 0");

    const int n = s.steps;
    std::vector<SweepRow> rows(static_cast<std::size_t>(n));
    // (index, is_overflow, message) of the earliest failed grid point.
    std::vector<std::optional<std::pair<bool, std::string>>> failures(
        static_cast<std::size_t>(n));

    auto eval_row = [&](int i) {
        const double x = s.start + (s.stop - s.start) *
                                       static_cast<double>(i) /
                                       static_cast<double>(n - 1);
        ModelSpec m = s.base;
        double t = 0.0;
        if (s.variable == SweepVariable::DmStrength) {
            m.dm.strength = x;
            t = s.fixed_t;
        } else {
            m.dm.strength = s.fixed_d;
            t = x;
        }
        try {
            const ConcurrenceResult r = concurrence_closed_form(m, Temperature(t));
            SweepRow row;
            row.variable_value = x;
            row.concurrence = r.value;
            row.lambdas = r.lambdas;
            row.path = r.path;
            rows[static_cast<std::size_t>(i)] = row;
        } catch (const Overflow& e) {
            failures[static_cast<std::size_t>(i)] = {true, e.what()};
        } catch (const std::exception& e) {
            failures[static_cast<std::size_t>(i)] = {false, e.what()};
        }
    };

    const int nthreads = detail::sweep_thread_count(n);
    if (nthreads <= 1) {
        for (int i = 0; i < n; ++i) eval_row(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int w = 0; w < nthreads; ++w) {
            pool.emplace_back([&, w]() {
                for (int i = w; i < n; i += nthreads) eval_row(i);
            });
        }
        for (std::thread& th : pool) th.join();
    }

    for (int i = 0; i < n; ++i) {
        if (!failures[static_cast<std::size_t>(i)]) continue;
        const auto& [is_overflow, msg] = *failures[static_cast<std::size_t>(i)];
        const double x = s.start + (s.stop - s.start) * static_cast<double>(i) /
                                       static_cast<double>(n - 1);
        std::ostringstream os;
        os << "sweep: failure at grid point "
           << (s.variable == SweepVariable::DmStrength ? "d" : "t") << " = " << x
           << ": " << msg;
        if (is_overflow) throw Overflow(os.str());
        throw Error(os.str());
    }
    return rows;
}

/// Bisection for the temperature above which C vanishes. Expects C > 0 at
/// t_lo and C = 0 at t_hi; other indicator patterns are reported via status.
inline CriticalResult critical_temperature(const ModelSpec& spec, double t_lo,
                                           double t_hi, double tol) {
    if (!(0.0 < t_lo && t_lo < t_hi))
        throw std::invalid_argument("critical_temperature: need 0 < t_lo < t_hi");
    if (!(tol > 0.0))
        throw std::invalid_argument("critical_temperature: tol must be > 0");

    CriticalResult r;
    r.kind = CriticalKind::CriticalTemperature;
    r.bracket = {t_lo, t_hi};

    const bool lo = detail::entangled(spec, t_lo);
    const bool hi = detail::entangled(spec, t_hi);
    if (!lo && !hi) {
        r.status = SearchStatus::AlwaysZero;
        return r;
    }
    if (lo && hi) {
        r.status = SearchStatus::AlwaysPositive;
        return r;
    }
    if (!lo) {  // inverted orientation
        r.status = SearchStatus::NoSignChange;
        return r;
    }

    double a = t_lo, b = t_hi;
    for (int iter = 0; iter < 200 && (b - a) > tol; ++iter) {
        const double mid = 0.5 * (a + b);
        if (detail::entangled(spec, mid))
            a = mid;
        else
            b = mid;
    }
    r.value = 0.5 * (a + b);
    r.bracket = {a, b};
    r.residual_width = b - a;
    r.status = SearchStatus::Converged;
    return r;
}

/// Bisection for the DM strength below which C vanishes at fixed T. Expects
/// C = 0 at d_lo and C > 0 at d_hi.
inline CriticalResult critical_dm(const CouplingParams& coupling, DmAxis axis,
                                  Temperature t, double d_lo, double d_hi,
                                  double tol) {
    if (!(0.0 <= d_lo && d_lo < d_hi))
        throw std::invalid_argument("critical_dm: need 0 <= d_lo < d_hi");
    if (!(tol > 0.0)) throw std::invalid_argument("critical_dm: tol must be > 0");

    CriticalResult r;
    r.kind = CriticalKind::CriticalDm;
    r.bracket = {d_lo, d_hi};

    auto entangled_at = [&](double d) {
        const ModelSpec spec{coupling, {axis, d}};
        return concurrence_closed_form(spec, t).value > detail::kIndicatorEps;
    };

    const bool lo = entangled_at(d_lo);
    const bool hi = entangled_at(d_hi);
    if (!lo && !hi) {
        r.status = SearchStatus::AlwaysZero;
        return r;
    }
    if (lo && hi) {
        r.status = SearchStatus::AlwaysPositive;
        return r;
    }
    if (lo) {  // inverted orientation
        r.status = SearchStatus::NoSignChange;
        return r;
    }

    double a = d_lo, b = d_hi;
    for (int iter = 0; iter < 200 && (b - a) > tol; ++iter) {
        const double mid = 0.5 * (a + b);
        if (entangled_at(mid))
            b = mid;
        else
            a = mid;
    }
    r.value = 0.5 * (a + b);
    r.bracket = {a, b};
    r.residual_width = b - a;
    r.status = SearchStatus::Converged;
    return r;
}

/// One of six predefined axis-comparison figures: a D-sweep panel at T = 3
/// and a T-sweep panel at D = 3, with the figure's couplings and the two
/// compared DM axes.
struct FigurePreset {
    int id = 1;
    CouplingParams coupling;
    std::array<DmAxis, 2> axes{DmAxis::X, DmAxis::Y};
    DmAxis favored = DmAxis::X;  // axis of the larger compared coupling
    SweepSpec panel_a;           // D in [0, 6] at T = 3
    SweepSpec panel_b;           // T in [0.1, 10] at D = 3
};

inline double coupling_along(const CouplingParams& c, DmAxis axis) {
    switch (axis) {
        case DmAxis::X: return c.jx;
        case DmAxis::Y: return c.jy;
        default: return c.jz;
    }
}

inline FigurePreset figure_preset(int figure_id) {
    CouplingParams j;
    std::array<DmAxis, 2> axes{};
    switch (figure_id) {
        case 1: j = {0.2, -1.0, -0.5}; axes = {DmAxis::X, DmAxis::Y}; break;
        case 2: j = {-1.0, 0.2, -0.5}; axes = {DmAxis::X, DmAxis::Y}; break;
        case 3: j = {-0.5, 1.0, 0.2};  axes = {DmAxis::Y, DmAxis::Z}; break;
        case 4: j = {-0.5, 0.2, 1.0};  axes = {DmAxis::Y, DmAxis::Z}; break;
        case 5: j = {-0.2, 0.3, -1.0}; axes = {DmAxis::X, DmAxis::Z}; break;
        case 6: j = {-1.0, 0.3, -0.2}; axes = {DmAxis::X, DmAxis::Z}; break;
        default: {
            std::ostringstream os;
            os << "figure_preset: unknown figure id " << figure_id
               << " (expected 1..6)";
            throw UnknownFigure(os.str());
        }
    }

    FigurePreset p;
    p.id = figure_id;
    p.coupling = j;
    p.axes = axes;
    p.favored = (coupling_along(j, axes[0]) >= coupling_along(j, axes[1]))
                    ? axes[0]
                    : axes[1];

    const ModelSpec base{j, {axes[0], 3.0}};
    p.panel_a = SweepSpec{base, SweepVariable::DmStrength, 0.0, 6.0, 201, 3.0, 3.0};
    p.panel_b = SweepSpec{base, SweepVariable::Temperature, 0.1, 10.0, 201, 3.0, 3.0};
    return p;
}

/// Per-axis findings at one (coupling, T, D) point.
struct AxisReportEntry {
    DmAxis axis = DmAxis::X;
    double concurrence = 0.0;
    CriticalResult critical_d;  // at the report's T, bracket [0, 10]
    CriticalResult critical_t;  // at the report's D, bracket [0.05, 50]
};

/// Ranking of the three DM axes by concurrence, plus the "largest coupling
/// wins" rule check: the axis of the strictly largest J should show the
/// smallest critical D, the highest critical T, and the most entanglement.
struct DominanceReport {
    std::array<AxisReportEntry, 3> ranked{};  // by concurrence, descending
    bool has_unique_largest = false;
    DmAxis largest_axis = DmAxis::X;
    bool rule_holds = false;  // meaningful only if has_unique_largest
};

namespace detail {

inline double effective_critical_d(const CriticalResult& r) {
    switch (r.status) {
        case SearchStatus::Converged: return r.value;
        case SearchStatus::AlwaysPositive: return r.bracket.first;
        case SearchStatus::AlwaysZero: return std::numeric_limits<double>::infinity();
        default: return std::numeric_limits<double>::quiet_NaN();
    }
}

inline double effective_critical_t(const CriticalResult& r) {
    switch (r.status) {
        case SearchStatus::Converged: return r.value;
        case SearchStatus::AlwaysPositive: return std::numeric_limits<double>::infinity();
        case SearchStatus::AlwaysZero: return 0.0;
        default: return std::numeric_limits<double>::quiet_NaN();
    }
}

}  // namespace detail

inline DominanceReport dominance_report(const CouplingParams& coupling,
                                        Temperature t, double d) {
    DominanceReport rep;
    const std::array<DmAxis, 3> axes{DmAxis::X, DmAxis::Y, DmAxis::Z};
    for (std::size_t i = 0; i < 3; ++i) {
        AxisReportEntry e;
        e.axis = axes[i];
        const ModelSpec spec{coupling, {axes[i], d}};
        e.concurrence = concurrence_closed_form(spec, t).value;
        e.critical_d = critical_dm(coupling, axes[i], t, 0.0, 10.0, 1e-8);
        e.critical_t = critical_temperature(spec, 0.05, 50.0, 1e-8);
        rep.ranked[i] = e;
    }
    std::stable_sort(rep.ranked.begin(), rep.ranked.end(),
                     [](const AxisReportEntry& a, const AxisReportEntry& b) {
                         return a.concurrence > b.concurrence;
                     });

    const double jx = coupling.jx, jy = coupling.jy, jz = coupling.jz;
    if (jx > jy && jx > jz) {
        rep.has_unique_largest = true;
        rep.largest_axis = DmAxis::X;
    } else if (jy > jx && jy > jz) {
        rep.has_unique_largest = true;
        rep.largest_axis = DmAxis::Y;
    } else if (jz > jx && jz > jy) {
        rep.has_unique_largest = true;
        rep.largest_axis = DmAxis::Z;
    }

    if (rep.has_unique_largest) {
        const AxisReportEntry* largest = nullptr;
        for (const AxisReportEntry& e : rep.ranked)
            if (e.axis == rep.largest_axis) largest = &e;
        bool ok = true;
        for (const AxisReportEntry& e : rep.ranked) {
            if (e.axis == rep.largest_axis) continue;
            if (e.concurrence > largest->concurrence + 1e-12) ok = false;
            const double dc_l = detail::effective_critical_d(largest->critical_d);
            const double dc_o = detail::effective_critical_d(e.critical_d);
            if (!std::isnan(dc_l) && !std::isnan(dc_o) && dc_l > dc_o + 1e-12)
                ok = false;
            const double tc_l = detail::effective_critical_t(largest->critical_t);
            const double tc_o = detail::effective_critical_t(e.critical_t);
            if (!std::isnan(tc_l) && !std::isnan(tc_o) && tc_l < tc_o - 1e-12)
                ok = false;
        }
        rep.rule_holds = ok;
    }
    return rep;
}

}  // namespace dmxyz
