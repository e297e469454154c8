#pragma once

// Wootters concurrence C = max{2*lambda_max - sum(lambda), 0}, where the
// lambda_i are the positive square roots of the eigenvalues of
// R = rho * (sy x sy) * conj(rho) * (sy x sy). Two independent routes:
//
//  * concurrence_oracle: brute force from any density matrix. The spectrum of
//    R equals that of the Hermitian sandwich sqrt(rho) S conj(rho) S sqrt(rho)
//    (S = sy x sy); it is extracted here from the sandwich's graded square
//    root factor B = diag(sqrt q) (V^dag S conj(V)) diag(sqrt q), with
//    (q, V) the eigensystem of rho, since sigma(B)^2 = eig(sandwich). The
//    factored form keeps the tiny lambdas at full relative accuracy, where a
//    direct eigensolve of the sandwich would floor out near sqrt(eps).
//
//  * concurrence_closed_form / lambda_closed_form: the model's closed-form
//    lambdas (Boltzmann populations in a fixed source ordering) plus the
//    per-axis case-split expression; the case split is a rewriting of the
//    generic formula and both evaluations are required to agree.

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "dmxyz/errors.hpp"
#include "dmxyz/linalg4.hpp"
#include "dmxyz/model.hpp"
#include "dmxyz/thermal.hpp"

namespace dmxyz {

enum class EvalPath { ClosedForm, Oracle };

/// Concurrence value plus the four lambda square roots that produced it,
/// sorted descending.
struct ConcurrenceResult {
    double value = 0.0;
    std::array<double, 4> lambdas{};
    EvalPath path = EvalPath::ClosedForm;
};

/// The spin-flip conjugation matrix sy x sy (real, symmetric, involutory).
inline ComplexMatrix4 spin_flip_matrix() {
    ComplexMatrix4 s;
    s(0, 3) = -1.0;
    s(1, 2) = 1.0;
    s(2, 1) = 1.0;
    s(3, 0) = -1.0;
    return s;
}

namespace detail {

inline double clamp_concurrence(double raw) {
    return std::min(1.0, std::max(0.0, raw));
}

}  // namespace detail

/// Brute-force concurrence of an arbitrary two-qubit density matrix.
inline ConcurrenceResult concurrence_oracle(const ComplexMatrix4& rho) {
    const double tr_err = std::abs(rho.trace() - Complex{1.0, 0.0});
    if (tr_err > 1e-10) {
        std::ostringstream os;
        os << "concurrence_oracle: trace deviates from 1 by " << tr_err;
        throw InvalidDensityMatrix(os.str());
    }
    if (rho.hermiticity_defect() > 1e-10) {
        std::ostringstream os;
        os << "concurrence_oracle: matrix not Hermitian (defect "
           << rho.hermiticity_defect() << ")";
        throw InvalidDensityMatrix(os.str());
    }

    // Symmetrize before eigensolving (defect may sit between the density
    // tolerance 1e-10 and the eigensolver's 1e-12 gate).
    ComplexMatrix4 h = rho;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            h(r, c) = 0.5 * (rho(r, c) + std::conj(rho(c, r)));

    const HermitianEigenSystem es = hermitian_eigensystem(h);
    if (es.eigenvalues[0] < -1e-12) {
        std::ostringstream os;
        os << "concurrence_oracle: eigenvalue " << es.eigenvalues[0]
           << " below the PSD clamp floor";
        throw InvalidDensityMatrix(os.str());
    }

    // B = diag(sqrt q) (V^dag S conj(V)) diag(sqrt q); lambdas = sigma(B).
    const ComplexMatrix4 w =
        es.eigenvectors.adjoint() * spin_flip_matrix() * es.eigenvectors.conjugate();
    std::array<double, 4> sq{};
    for (std::size_t k = 0; k < 4; ++k)
        sq[k] = std::sqrt(std::max(0.0, es.eigenvalues[k]));
    ComplexMatrix4 b;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            b(r, c) = sq[static_cast<std::size_t>(r)] * w(r, c) *
                      sq[static_cast<std::size_t>(c)];

    ConcurrenceResult res;
    res.lambdas = singular_values_4(b);
    res.value = detail::clamp_concurrence(
        2.0 * res.lambdas[0] - (res.lambdas[0] + res.lambdas[1] + res.lambdas[2] +
                                res.lambdas[3]));
    res.path = EvalPath::Oracle;
    return res;
}

inline ConcurrenceResult concurrence_oracle(const ThermalState& state) {
    return concurrence_oracle(state.rho);
}

/// Closed-form lambdas in the source index order (lambda_1..lambda_4 of the
/// per-axis case-split formulas; NOT sorted). They are Boltzmann populations:
///   axis X: {e^{(Jx+w)/T}, e^{(Jx-w)/T}, e^{(-Jx+Jy-Jz)/T}, e^{(-Jx-Jy+Jz)/T}}/Z
///   axis Y: {e^{(-Jy+Jx-Jz)/T}, e^{(-Jy-Jx+Jz)/T}, e^{(Jy+w)/T}, e^{(Jy-w)/T}}/Z
///   axis Z: {e^{(Jz+w)/T}, e^{(Jz-w)/T}, e^{(-Jz+Jx-Jy)/T}, e^{(-Jz-Jx+Jy)/T}}/Z
inline std::array<double, 4> lambda_closed_form(const ModelSpec& spec, Temperature t) {
    const AnalyticSpectrum sp = analytic_spectrum(spec);
    detail::check_exponent_budget(sp.energies(), t.value(), "lambda_closed_form");
    const std::array<double, 4> p = detail::populations(sp.energies(), t.value());

    // Map source energy order e1..e4 onto the lambda index order above
    // (each lambda_k is the population of the energy level -a_k).
    switch (spec.dm.axis) {
        case DmAxis::X: return {p[3], p[2], p[1], p[0]};
        case DmAxis::Y: return {p[1], p[0], p[3], p[2]};
        default:        return {p[3], p[2], p[1], p[0]};
    }
}

/// Both evaluations of the closed-form concurrence: the per-axis case split
/// and the generic max{2 lambda_max - sum, 0}. Exposed for validation.
struct ClosedFormParts {
    double branch = 0.0;
    double generic = 0.0;
    std::array<double, 4> lambdas{};  // source order
};

inline ClosedFormParts closed_form_concurrence_parts(const ModelSpec& spec,
                                                     Temperature t) {
    const std::array<double, 4> lam = lambda_closed_form(spec, t);
    const double sum = lam[0] + lam[1] + lam[2] + lam[3];
    const double lmax = std::max(std::max(lam[0], lam[1]), std::max(lam[2], lam[3]));

    const double jx = spec.coupling.jx;
    const double jy = spec.coupling.jy;
    const double jz = spec.coupling.jz;
    double branch = 0.0;
    switch (spec.dm.axis) {
        case DmAxis::X:
            branch = (jy > jz) ? std::abs(lam[0] - lam[2]) - lam[1] - lam[3]
                               : std::abs(lam[0] - lam[3]) - lam[1] - lam[2];
            break;
        case DmAxis::Y:
            branch = (jx > jz) ? std::abs(lam[0] - lam[2]) - lam[1] - lam[3]
                               : std::abs(lam[1] - lam[2]) - lam[0] - lam[3];
            break;
        case DmAxis::Z:
            branch = (jx > jy) ? std::abs(lam[0] - lam[2]) - lam[1] - lam[3]
                               : std::abs(lam[0] - lam[3]) - lam[1] - lam[2];
            break;
    }

    ClosedFormParts parts;
    parts.branch = std::max(branch, 0.0);
    parts.generic = std::max(2.0 * lmax - sum, 0.0);
    parts.lambdas = lam;
    return parts;
}

/// Closed-form concurrence. Evaluates both the case-split and the generic
/// formula and insists they agree; returns the generic value.
inline ConcurrenceResult concurrence_closed_form(const ModelSpec& spec,
                                                 Temperature t) {
    const ClosedFormParts parts = closed_form_concurrence_parts(spec, t);
    if (std::abs(parts.branch - parts.generic) > 1e-12) {
        std::ostringstream os;
        os << "concurrence_closed_form: case-split value " << parts.branch
           << " disagrees with the generic formula " << parts.generic;
        throw Error(os.str());
    }
    ConcurrenceResult res;
    res.lambdas = parts.lambdas;
    std::sort(res.lambdas.begin(), res.lambdas.end(), std::greater<double>());
    res.value = detail::clamp_concurrence(parts.generic);
    res.path = EvalPath::ClosedForm;
    return res;
}

}  // namespace dmxyz
