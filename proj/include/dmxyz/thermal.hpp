#pragma once

// Gibbs states rho(T) = exp(-H/T)/Z with k_B = 1, via both the numeric
// eigendecomposition path and the closed-form density-matrix entries
// available for the X and Y DM axes. All Boltzmann weights are computed with
// max-shifted exponents, exp(-(E_k - E_min)/T), so low temperatures stay
// finite; the shift cancels in rho and is restored analytically in Z.

#include <array>
#include <cmath>
#include <sstream>

#include "dmxyz/errors.hpp"
#include "dmxyz/linalg4.hpp"
#include "dmxyz/model.hpp"

namespace dmxyz {

/// Strictly positive, finite temperature in energy units (k_B = 1). T = 0 is
/// deliberately unrepresentable; probe limits with small positive values.
class Temperature {
public:
    explicit Temperature(double t) : t_(t) {
        if (!(std::isfinite(t) && t > 0.0)) {
            std::ostringstream os;
            os << "Temperature must be finite and > 0, got " << t;
            throw std::invalid_argument(os.str());
        }
    }
    double value() const { return t_; }

private:
    double t_;
};

/// Validated two-qubit Gibbs state plus the inputs that produced it.
struct ThermalState {
    ComplexMatrix4 rho;
    double z = 0.0;  // partition function (unshifted)
    ModelSpec spec;
    Temperature temperature;
};

namespace detail {

/// Exponent budget after max-shift normalization. The spread bound keeps the
/// shifted weights finite; the |E_min| bound keeps the unshifted Z
/// representable in a double.
inline constexpr double kExpBudget = 700.0;

inline void check_exponent_budget(const std::array<double, 4>& energies, double t,
                                  const char* where) {
    double emin = energies[0], emax = energies[0];
    for (double e : energies) {
        emin = std::min(emin, e);
        emax = std::max(emax, e);
    }
    if ((emax - emin) / t > kExpBudget || std::abs(emin) / t > kExpBudget) {
        std::ostringstream os;
        os << where << ": Boltzmann exponent budget exceeded (spread "
           << (emax - emin) / t << ", |E_min|/T " << std::abs(emin) / t
           << ", budget " << kExpBudget << ")";
        throw Overflow(os.str());
    }
}

/// Max-shifted Boltzmann populations p_k = exp(-(E_k - E_min)/T) / sum.
inline std::array<double, 4> populations(const std::array<double, 4>& energies,
                                         double t) {
    double emin = energies[0];
    for (double e : energies) emin = std::min(emin, e);
    std::array<double, 4> u{};
    double s = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        u[k] = std::exp(-(energies[k] - emin) / t);
        s += u[k];
    }
    for (double& x : u) x /= s;
    return u;
}

}  // namespace detail

/// Closed-form partition function for the model's DM axis:
///   Z = 2 e^{-Jp/T} cosh((Ja - Jb)/T) + 2 e^{Jp/T} cosh(w/T)
/// where Jp is the coupling along the DM axis and Ja, Jb the other two.
inline double partition_function(const ModelSpec& spec, Temperature t) {
    const AnalyticSpectrum sp = analytic_spectrum(spec);
    detail::check_exponent_budget(sp.energies(), t.value(), "partition_function");

    const double jx = spec.coupling.jx;
    const double jy = spec.coupling.jy;
    const double jz = spec.coupling.jz;
    const double tv = t.value();
    double jp = 0.0, diff = 0.0;
    switch (spec.dm.axis) {
        case DmAxis::X: jp = jx; diff = jy - jz; break;
        case DmAxis::Y: jp = jy; diff = jx - jz; break;
        case DmAxis::Z: jp = jz; diff = jx - jy; break;
    }
    return 2.0 * std::exp(-jp / tv) * std::cosh(diff / tv) +
           2.0 * std::exp(jp / tv) * std::cosh(sp.w / tv);
}

/// Numeric Gibbs state exp(-H/T)/Z from the eigendecomposition of
/// build_hamiltonian(spec).
inline ThermalState gibbs_state(const ModelSpec& spec, Temperature t) {
    const ComplexMatrix4 h = build_hamiltonian(spec);
    const HermitianEigenSystem es = hermitian_eigensystem(h);
    detail::check_exponent_budget(es.eigenvalues, t.value(), "gibbs_state");

    const double emin = es.eigenvalues[0];  // ascending order
    const double tv = t.value();
    double shifted_sum = 0.0;
    for (double e : es.eigenvalues) shifted_sum += std::exp(-(e - emin) / tv);

    const ComplexMatrix4 rho = matrix_function_hermitian(
        h, [&](double e) { return std::exp(-(e - emin) / tv) / shifted_sum; });

    ThermalState state{rho, std::exp(-emin / tv) * shifted_sum, spec, t};

    // Defensive validation of the ThermalState invariants.
    const double tr_err = std::abs(state.rho.trace() - Complex{1.0, 0.0});
    if (tr_err > 1e-12 || state.rho.hermiticity_defect() > 1e-12) {
        std::ostringstream os;
        os << "gibbs_state: constructed state violates invariants (trace defect "
           << tr_err << ", hermiticity defect " << state.rho.hermiticity_defect()
           << ")";
        throw InvalidDensityMatrix(os.str());
    }
    return state;
}

/// Closed-form density-matrix entries (axes X and Y only; the z-axis closed
/// form is not available and callers should use gibbs_state instead).
inline ComplexMatrix4 closed_form_density(const ModelSpec& spec, Temperature t) {
    if (spec.dm.axis == DmAxis::Z) {
        throw UnsupportedAxis(
            "closed_form_density: no closed form for the z axis; use gibbs_state");
    }

    const AnalyticSpectrum sp = analytic_spectrum(spec);
    detail::check_exponent_budget(sp.energies(), t.value(), "closed_form_density");
    const std::array<double, 4> p = detail::populations(sp.energies(), t.value());

    const double s1 = std::sin(sp.mix1), c1 = std::cos(sp.mix1);
    const double s2 = std::sin(sp.mix2), c2 = std::cos(sp.mix2);

    ComplexMatrix4 rho;
    if (spec.dm.axis == DmAxis::X) {
        const double m1 = 0.5 * (p[1] + p[2] * s1 * s1 + p[3] * s2 * s2);
        const double m2 = 0.5 * (p[1] - p[2] * s1 * s1 - p[3] * s2 * s2);
        const double n1 = 0.5 * (p[0] + p[2] * c1 * c1 + p[3] * c2 * c2);
        const double n2 = 0.5 * (p[0] - p[2] * c1 * c1 - p[3] * c2 * c2);
        const Complex q{0.0, 0.5 * (p[2] * s1 * c1 - p[3] * s2 * c2)};
        const Complex qc = std::conj(q);
        rho(0, 0) = m1;  rho(0, 1) = q;   rho(0, 2) = qc;  rho(0, 3) = m2;
        rho(1, 0) = qc;  rho(1, 1) = n1;  rho(1, 2) = n2;  rho(1, 3) = q;
        rho(2, 0) = q;   rho(2, 1) = n2;  rho(2, 2) = n1;  rho(2, 3) = qc;
        rho(3, 0) = m2;  rho(3, 1) = qc;  rho(3, 2) = q;   rho(3, 3) = m1;
    } else {
        const double m1 = 0.5 * (p[1] + p[2] * s1 * s1 + p[3] * s2 * s2);
        const double m2 = 0.5 * (-p[1] + p[2] * s1 * s1 + p[3] * s2 * s2);
        const double n1 = 0.5 * (p[0] + p[2] * c1 * c1 + p[3] * c2 * c2);
        const double n2 = 0.5 * (p[0] - p[2] * c1 * c1 - p[3] * c2 * c2);
        const double q = 0.5 * (p[2] * s1 * c1 + p[3] * s2 * c2);  // purely real
        rho(0, 0) = m1;  rho(0, 1) = -q;  rho(0, 2) = q;   rho(0, 3) = m2;
        rho(1, 0) = -q;  rho(1, 1) = n1;  rho(1, 2) = n2;  rho(1, 3) = -q;
        rho(2, 0) = q;   rho(2, 1) = n2;  rho(2, 2) = n1;  rho(2, 3) = q;
        rho(3, 0) = m2;  rho(3, 1) = -q;  rho(3, 2) = q;   rho(3, 3) = m1;
    }
    return rho;
}

}  // namespace dmxyz
