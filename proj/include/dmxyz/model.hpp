#pragma once

// Parameter types for the two-qubit Heisenberg XYZ chain with a single-axis
// Dzyaloshinskii-Moriya (DM) interaction, the three Hamiltonian variants in
// the standard basis |00>,|01>,|10>,|11>, and their closed-form spectra and
// eigenstates.
//
// Axis X:  H = Jx XX + Jy YY + Jz ZZ + D (YZ - ZY)
// Axis Y:  H = Jx XX + Jy YY + Jz ZZ + D (ZX - XZ)
// Axis Z:  H = Jx XX + Jy YY + Jz ZZ + D (XY - YX)
// (AB is shorthand for the tensor product sigma^a x sigma^b.)

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "dmxyz/errors.hpp"
#include "dmxyz/linalg4.hpp"

namespace dmxyz {

/// Real exchange couplings; positive = antiferromagnetic.
struct CouplingParams {
    double jx = 0.0;
    double jy = 0.0;
    double jz = 0.0;
};

enum class DmAxis { X, Y, Z };

inline const char* axis_name(DmAxis a) {
    switch (a) {
        case DmAxis::X: return "x";
        case DmAxis::Y: return "y";
        default: return "z";
    }
}

/// DM interaction restricted to one Cartesian component.
struct DmCoupling {
    DmAxis axis = DmAxis::X;
    double strength = 0.0;  // the dimensionless D
};

/// Full parameter set of one model instance.
struct ModelSpec {
    CouplingParams coupling;
    DmCoupling dm;
};

/// Closed-form spectrum in the source index order (e1..e4 are NOT sorted;
/// they follow the eigenstate labels Psi_1..Psi_4 below).
///
/// Axis X: e1 = Jx+Jy-Jz, e2 = Jx-Jy+Jz, e3 = -Jx+w, e4 = -Jx-w,
///         w = sqrt(4D^2 + (Jy+Jz)^2), mixing angles theta_1, theta_2.
/// Axis Y: e1 = Jy+Jx-Jz, e2 = Jy-Jx+Jz, e3 = -Jy+w, e4 = -Jy-w,
///         w = sqrt(4D^2 + (Jx+Jz)^2), mixing angles phi_1, phi_2.
/// Axis Z: e1 = Jz+Jx-Jy, e2 = Jz-Jx+Jy, e3 = -Jz+w, e4 = -Jz-w,
///         w = sqrt(4D^2 + (Jx+Jy)^2), unit-modulus chi = (Jx+Jy-2iD)/w.
struct AnalyticSpectrum {
    double e1 = 0.0, e2 = 0.0, e3 = 0.0, e4 = 0.0;
    double w = 0.0;
    double mix1 = 0.0, mix2 = 0.0;  // axes X/Y only
    Complex chi{1.0, 0.0};          // axis Z only

    std::array<double, 4> energies() const { return {e1, e2, e3, e4}; }
};

namespace detail {

/// Two-argument angle mapped into (-pi/2, pi/2]; both denominators used by
/// the mixing angles satisfy den >= 0 (w >= |coupling sum|), so only the
/// den = 0 ray needs the closing value pi/2.
inline double half_open_angle(double den, double num) {
    if (den > 0.0) return std::atan(num / den);
    return std::acos(-1.0) / 2.0;  // pi/2
}

}  // namespace detail

/// Assemble the 4x4 Hamiltonian for the given axis (exact construction).
inline ComplexMatrix4 build_hamiltonian(const ModelSpec& spec) {
    const double jx = spec.coupling.jx;
    const double jy = spec.coupling.jy;
    const double jz = spec.coupling.jz;
    const double d = spec.dm.strength;

    ComplexMatrix4 h;
    // Common XYZ part.
    h(0, 0) = jz;
    h(1, 1) = -jz;
    h(2, 2) = -jz;
    h(3, 3) = jz;
    h(0, 3) = jx - jy;
    h(3, 0) = jx - jy;
    h(1, 2) = jx + jy;
    h(2, 1) = jx + jy;

    switch (spec.dm.axis) {
        case DmAxis::X: {
            const Complex id{0.0, d};
            h(0, 1) = id;
            h(1, 0) = -id;
            h(0, 2) = -id;
            h(2, 0) = id;
            h(1, 3) = id;
            h(3, 1) = -id;
            h(2, 3) = -id;
            h(3, 2) = id;
            break;
        }
        case DmAxis::Y: {
            h(0, 1) = d;
            h(1, 0) = d;
            h(0, 2) = -d;
            h(2, 0) = -d;
            h(1, 3) = d;
            h(3, 1) = d;
            h(2, 3) = -d;
            h(3, 2) = -d;
            break;
        }
        case DmAxis::Z: {
            const Complex twoid{0.0, 2.0 * d};
            h(1, 2) += twoid;
            h(2, 1) -= twoid;
            break;
        }
    }
    return h;
}

/// Closed-form energies and mixing parameters in source index order.
inline AnalyticSpectrum analytic_spectrum(const ModelSpec& spec) {
    const double jx = spec.coupling.jx;
    const double jy = spec.coupling.jy;
    const double jz = spec.coupling.jz;
    const double d = spec.dm.strength;

    AnalyticSpectrum sp;
    switch (spec.dm.axis) {
        case DmAxis::X: {
            const double s = jy + jz;
            sp.w = std::hypot(2.0 * d, s);
            sp.e1 = jx + jy - jz;
            sp.e2 = jx - jy + jz;
            sp.e3 = -jx + sp.w;
            sp.e4 = -jx - sp.w;
            // tan(theta1) = 2D/(w - s), tan(theta2) = 2D/(w + s).
            sp.mix1 = detail::half_open_angle(sp.w - s, 2.0 * d);
            sp.mix2 = (sp.w == 0.0) ? 0.0 : detail::half_open_angle(sp.w + s, 2.0 * d);
            break;
        }
        case DmAxis::Y: {
            const double s = jx + jz;
            sp.w = std::hypot(2.0 * d, s);
            sp.e1 = jy + jx - jz;
            sp.e2 = jy - jx + jz;
            sp.e3 = -jy + sp.w;
            sp.e4 = -jy - sp.w;
            // tan(phi1) = -2D/(w - s), tan(phi2) = 2D/(w + s).
            sp.mix1 = detail::half_open_angle(sp.w - s, -2.0 * d);
            sp.mix2 = (sp.w == 0.0) ? 0.0 : detail::half_open_angle(sp.w + s, 2.0 * d);
            break;
        }
        case DmAxis::Z: {
            const double s = jx + jy;
            sp.w = std::hypot(2.0 * d, s);
            sp.e1 = jz + jx - jy;
            sp.e2 = jz - jx + jy;
            sp.e3 = -jz + sp.w;
            sp.e4 = -jz - sp.w;
            sp.chi = (sp.w == 0.0) ? Complex{1.0, 0.0}
                                   : Complex{s, -2.0 * d} / sp.w;
            break;
        }
    }
    return sp;
}

/// Closed-form eigenstates Psi_1..Psi_4 (paired with e1..e4 of
/// analytic_spectrum). Degenerate parameter sets fall back to fixed Bell
/// combinations via the angle conventions above.
inline std::array<Vector4, 4> analytic_eigenstates(const ModelSpec& spec) {
    const AnalyticSpectrum sp = analytic_spectrum(spec);
    const double isq = 1.0 / std::sqrt(2.0);
    std::array<Vector4, 4> v{};

    switch (spec.dm.axis) {
        case DmAxis::X: {
            const double s1 = std::sin(sp.mix1), c1 = std::cos(sp.mix1);
            const double s2 = std::sin(sp.mix2), c2 = std::cos(sp.mix2);
            v[0] = {0.0, isq, isq, 0.0};
            v[1] = {isq, 0.0, 0.0, isq};
            v[2] = {isq * s1, Complex{0.0, -isq * c1}, Complex{0.0, isq * c1},
                    -isq * s1};
            v[3] = {isq * s2, Complex{0.0, isq * c2}, Complex{0.0, -isq * c2},
                    -isq * s2};
            break;
        }
        case DmAxis::Y: {
            const double s1 = std::sin(sp.mix1), c1 = std::cos(sp.mix1);
            const double s2 = std::sin(sp.mix2), c2 = std::cos(sp.mix2);
            v[0] = {0.0, isq, isq, 0.0};
            v[1] = {isq, 0.0, 0.0, -isq};
            v[2] = {isq * s1, -isq * c1, isq * c1, isq * s1};
            v[3] = {isq * s2, -isq * c2, isq * c2, isq * s2};
            break;
        }
        case DmAxis::Z: {
            v[0] = {isq, 0.0, 0.0, isq};
            v[1] = {isq, 0.0, 0.0, -isq};
            v[2] = {0.0, isq, isq * sp.chi, 0.0};
            v[3] = {0.0, isq, -isq * sp.chi, 0.0};
            break;
        }
    }
    return v;
}

}  // namespace dmxyz
