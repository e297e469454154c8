// Acceptance harness: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Each criterion is self-contained and uses
// frozen seeds so reruns are bit-reproducible.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <dmxyz/dmxyz.hpp>

#ifndef DMXYZ_CLI_PATH
#error "DMXYZ_CLI_PATH must point at the built command-line binary"
#endif

namespace {

namespace fs = std::filesystem;
using dmxyz::Complex;
using dmxyz::ComplexMatrix4;
using dmxyz::CouplingParams;
using dmxyz::DmAxis;
using dmxyz::ModelSpec;
using dmxyz::Temperature;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

private:
    std::mt19937_64 eng_;
};

ModelSpec random_point(Rng& rng, DmAxis axis, double& t) {
    const ModelSpec spec{{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)},
                         {axis, rng.uniform(-3, 3)}};
    t = rng.uniform(0.1, 20.0);
    return spec;
}

struct Shell {
    int exit_code = -1;
    std::string out;
};

Shell run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out =
        fs::temp_directory_path() / ("dmxyz_acc_" + std::to_string(++counter) + ".txt");
    const std::string cmd =
        std::string("\"") + DMXYZ_CLI_PATH + "\" " + args + " > " + out.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    Shell r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream f(out, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    r.out = os.str();
    fs::remove(out);
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

// --- criteria ---------------------------------------------------------------

bool criterion_oracle_equivalence(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(42);
    double worst = 0.0;
    for (DmAxis axis : {DmAxis::X, DmAxis::Y, DmAxis::Z}) {
        for (int i = 0; i < 1000; ++i) {
            double t = 0.0;
            const ModelSpec spec = random_point(rng, axis, t);
            const double closed =
                dmxyz::concurrence_closed_form(spec, Temperature(t)).value;
            const double oracle =
                dmxyz::concurrence_oracle(dmxyz::gibbs_state(spec, Temperature(t))).value;
            worst = std::max(worst, std::abs(closed - oracle));
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream os;
    os << "max|closed-oracle| = " << worst << " over 3000 points in " << seconds << " s";
    detail = os.str();
    return worst <= 1e-9 && seconds < 5.0;
}

bool criterion_spectrum_equivalence(std::string& detail) {
    Rng rng(42);
    double worst_e = 0.0, worst_z = 0.0;
    for (DmAxis axis : {DmAxis::X, DmAxis::Y, DmAxis::Z}) {
        for (int i = 0; i < 1000; ++i) {
            double t = 0.0;
            const ModelSpec spec = random_point(rng, axis, t);
            std::array<double, 4> analytic = dmxyz::analytic_spectrum(spec).energies();
            std::sort(analytic.begin(), analytic.end());
            const dmxyz::HermitianEigenSystem es =
                dmxyz::hermitian_eigensystem(dmxyz::build_hamiltonian(spec));
            for (std::size_t k = 0; k < 4; ++k)
                worst_e = std::max(worst_e, std::abs(analytic[k] - es.eigenvalues[k]));

            double brute = 0.0;
            for (double e : es.eigenvalues) brute += std::exp(-e / t);
            const double closed = dmxyz::partition_function(spec, Temperature(t));
            worst_z = std::max(worst_z, std::abs(closed - brute) / brute);
        }
    }
    std::ostringstream os;
    os << "max energy diff = " << worst_e << ", max relative Z diff = " << worst_z;
    detail = os.str();
    return worst_e <= 1e-10 && worst_z <= 1e-10;
}

bool criterion_isotropic_anchor(std::string& detail) {
    const ModelSpec spec{{1.0, 1.0, 1.0}, {DmAxis::X, 0.0}};
    double worst = 0.0;
    for (double t : {0.5, 1.0, 2.0, 3.0}) {
        const double x = std::exp(4.0 / t);
        const double expected = (x - 3.0) / (x + 3.0);
        const double got = dmxyz::concurrence_closed_form(spec, Temperature(t)).value;
        worst = std::max(worst, std::abs(got - expected));
    }
    const dmxyz::CriticalResult tc = dmxyz::critical_temperature(spec, 0.5, 10.0, 1e-8);
    const double tc_err = std::abs(tc.value - 3.6409569065073493);
    std::ostringstream os;
    os << "max pointwise diff = " << worst << ", |Tc - 4/ln3| = " << tc_err;
    detail = os.str();
    return worst <= 1e-10 && tc.status == dmxyz::SearchStatus::Converged &&
           tc_err <= 1e-7;
}

bool criterion_figure_orderings(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    for (int fig = 1; fig <= 6; ++fig) {
        const dmxyz::FigurePreset p = dmxyz::figure_preset(fig);
        const DmAxis fav = p.favored;
        const DmAxis oth = (p.axes[0] == fav) ? p.axes[1] : p.axes[0];

        const dmxyz::CriticalResult dc_f =
            dmxyz::critical_dm(p.coupling, fav, Temperature(3.0), 0.0, 6.0, 1e-8);
        const dmxyz::CriticalResult dc_o =
            dmxyz::critical_dm(p.coupling, oth, Temperature(3.0), 0.0, 6.0, 1e-8);
        const dmxyz::CriticalResult tc_f = dmxyz::critical_temperature(
            ModelSpec{p.coupling, {fav, 3.0}}, 0.1, 10.0, 1e-8);
        const dmxyz::CriticalResult tc_o = dmxyz::critical_temperature(
            ModelSpec{p.coupling, {oth, 3.0}}, 0.1, 10.0, 1e-8);

        bool fig_ok = dc_f.status == dmxyz::SearchStatus::Converged &&
                      dc_o.status == dmxyz::SearchStatus::Converged &&
                      tc_f.status == dmxyz::SearchStatus::Converged &&
                      tc_o.status == dmxyz::SearchStatus::Converged &&
                      dc_f.value + 1e-6 <= dc_o.value && tc_f.value >= tc_o.value + 1e-6;

        // Pointwise dominance on the panel-(a) grid where both curves are
        // strictly positive.
        for (int i = 0; i < 201 && fig_ok; ++i) {
            const double d = 6.0 * i / 200.0;
            const double cf =
                dmxyz::concurrence_closed_form(ModelSpec{p.coupling, {fav, d}},
                                               Temperature(3.0))
                    .value;
            const double co =
                dmxyz::concurrence_closed_form(ModelSpec{p.coupling, {oth, d}},
                                               Temperature(3.0))
                    .value;
            if (cf > 0.0 && co > 0.0 && cf < co) fig_ok = false;
        }
        if (!fig_ok) {
            ok = false;
            os << " fig" << fig << ": VIOLATED;";
        }
    }
    detail = ok ? "all six favored-axis orderings hold with margin 1e-6"
                : ("orderings failed:" + os.str());
    return ok;
}

bool criterion_symmetry(std::string& detail) {
    Rng rng(1005);
    double worst = 0.0;
    const auto concurrence = [](CouplingParams j, DmAxis axis, double d, double t) {
        return dmxyz::concurrence_closed_form(ModelSpec{j, {axis, d}}, Temperature(t))
            .value;
    };
    for (int i = 0; i < 100; ++i) {
        const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
        const double d = rng.uniform(-3, 3), t = rng.uniform(0.1, 20.0);
        // jx = jy: the x- and y-axis problems coincide.
        worst = std::max(worst, std::abs(concurrence({a, a, b}, DmAxis::X, d, t) -
                                         concurrence({a, a, b}, DmAxis::Y, d, t)));
        // jy = jz and jx = jz pairings.
        worst = std::max(worst, std::abs(concurrence({b, a, a}, DmAxis::Y, d, t) -
                                         concurrence({b, a, a}, DmAxis::Z, d, t)));
        worst = std::max(worst, std::abs(concurrence({a, b, a}, DmAxis::X, d, t) -
                                         concurrence({a, b, a}, DmAxis::Z, d, t)));
        // Full three-way equality at jx = jy = jz.
        const double cx = concurrence({a, a, a}, DmAxis::X, d, t);
        worst = std::max(worst, std::abs(cx - concurrence({a, a, a}, DmAxis::Y, d, t)));
        worst = std::max(worst, std::abs(cx - concurrence({a, a, a}, DmAxis::Z, d, t)));
    }
    std::ostringstream os;
    os << "max pairing mismatch = " << worst;
    detail = os.str();
    return worst <= 1e-12;
}

bool criterion_density_closed_form(std::string& detail) {
    Rng rng(1006);
    double worst_entry = 0.0, worst_trace = 0.0, worst_herm = 0.0, worst_eig = 0.0;
    for (int i = 0; i < 200; ++i) {
        const DmAxis axis = (i % 2 == 0) ? DmAxis::X : DmAxis::Y;
        const ModelSpec spec{{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)},
                             {axis, rng.uniform(-3, 3)}};
        const double t = rng.uniform(0.05, 50.0);
        const ComplexMatrix4 closed = dmxyz::closed_form_density(spec, Temperature(t));
        const dmxyz::ThermalState state = dmxyz::gibbs_state(spec, Temperature(t));
        worst_entry = std::max(worst_entry, (closed - state.rho).max_abs());
        worst_trace =
            std::max(worst_trace, std::abs(state.rho.trace() - Complex{1.0, 0.0}));
        worst_herm = std::max(worst_herm, state.rho.hermiticity_defect());
        const dmxyz::HermitianEigenSystem es = dmxyz::hermitian_eigensystem(state.rho);
        worst_eig = std::min(worst_eig, es.eigenvalues[0]);
    }
    std::ostringstream os;
    os << "max entry diff = " << worst_entry << ", worst trace defect = " << worst_trace
       << ", worst hermiticity = " << worst_herm << ", min eigenvalue = " << worst_eig;
    detail = os.str();
    return worst_entry <= 1e-10 && worst_trace <= 1e-12 && worst_herm <= 1e-12 &&
           worst_eig >= -1e-12;
}

bool criterion_limits(std::string& detail) {
    double worst_hot = 0.0;
    for (int fig = 1; fig <= 6; ++fig) {
        const dmxyz::FigurePreset p = dmxyz::figure_preset(fig);
        for (DmAxis axis : p.axes) {
            const ModelSpec spec{p.coupling, {axis, 3.0}};
            worst_hot = std::max(
                worst_hot,
                dmxyz::concurrence_closed_form(spec, Temperature(1e6)).value);
        }
    }
    const double cold =
        dmxyz::concurrence_closed_form(ModelSpec{{1.0, 1.0, 1.0}, {DmAxis::X, 0.0}},
                                       Temperature(0.05))
            .value;
    std::ostringstream os;
    os << "max C at T=1e6 = " << worst_hot << ", C at T=0.05 (isotropic) = " << cold;
    detail = os.str();
    return worst_hot <= 1e-5 && cold >= 1.0 - 1e-8;
}

bool criterion_d_sign(std::string& detail) {
    Rng rng(1008);
    double worst = 0.0;
    for (DmAxis axis : {DmAxis::X, DmAxis::Y, DmAxis::Z}) {
        for (int i = 0; i < 100; ++i) {
            double t = 0.0;
            ModelSpec spec = random_point(rng, axis, t);
            const double plus = dmxyz::concurrence_closed_form(spec, Temperature(t)).value;
            spec.dm.strength = -spec.dm.strength;
            const double minus =
                dmxyz::concurrence_closed_form(spec, Temperature(t)).value;
            worst = std::max(worst, std::abs(plus - minus));
        }
    }
    std::ostringstream os;
    os << "max |C(D) - C(-D)| = " << worst;
    detail = os.str();
    return worst <= 1e-12;
}

bool criterion_cli_determinism(std::string& detail) {
    const Shell v1 = run_cli("verify --samples 100 --seed 7");
    const Shell v2 = run_cli("verify --samples 100 --seed 7");
    bool ok = v1.exit_code == 0 && v2.exit_code == 0 && v1.out == v2.out &&
              !v1.out.empty();

    const fs::path dir1 = fs::temp_directory_path() / "dmxyz_acc_fig_run1";
    const fs::path dir2 = fs::temp_directory_path() / "dmxyz_acc_fig_run2";
    fs::remove_all(dir1);
    fs::remove_all(dir2);
    const Shell f1 = run_cli("figure --figure 1 --out " + dir1.string());
    const Shell f2 = run_cli("figure --figure 1 --out " + dir2.string());
    ok = ok && f1.exit_code == 0 && f2.exit_code == 0 && f1.out == f2.out;
    for (const char* name : {"fig1a.csv", "fig1b.csv"}) {
        const std::string c1 = slurp(dir1 / name);
        const std::string c2 = slurp(dir2 / name);
        ok = ok && !c1.empty() && c1 == c2;
    }
    fs::remove_all(dir1);
    fs::remove_all(dir2);
    detail = ok ? "verify and figure outputs byte-identical across reruns"
                : "outputs differed between identical invocations";
    return ok;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<bool(std::string&)> fn;
    };
    const std::vector<Criterion> criteria{
        {"criterion 1: closed form matches the brute-force oracle (3000 seeded points, "
         "tol 1e-9, < 5 s)",
         criterion_oracle_equivalence},
        {"criterion 2: analytic spectrum and partition function match numeric "
         "diagonalization (tol 1e-10)",
         criterion_spectrum_equivalence},
        {"criterion 3: isotropic-chain concurrence anchors and critical temperature "
         "4/ln(3)",
         criterion_isotropic_anchor},
        {"criterion 4: favored-axis orderings for all six figure presets",
         criterion_figure_orderings},
        {"criterion 5: coupling-swap symmetries of the concurrence (tol 1e-12)",
         criterion_symmetry},
        {"criterion 6: closed-form densities match numeric Gibbs states; state "
         "invariants hold",
         criterion_density_closed_form},
        {"criterion 7: high-temperature decay and low-temperature saturation limits",
         criterion_limits},
        {"criterion 8: concurrence is invariant under DM sign flip (tol 1e-12)",
         criterion_d_sign},
        {"criterion 9: CLI byte-determinism for verify and figure",
         criterion_cli_determinism},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::cout << (ok ? "PASS" : "FAIL") << ": " << c.name << " [" << detail << "]\n";
    }
    if (failures != 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all 9 criteria passed\n";
    return 0;
}
