#pragma once

// Minimal dense complex linear algebra for 4x4 matrices: arithmetic,
// Hermitian eigendecomposition via cyclic complex Jacobi rotations, matrix
// functions, Hermitian square roots, and singular values (used by the
// concurrence oracle). Fixed size keeps everything allocation-free and
// unconditionally stable.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <sstream>

#include "dmxyz/errors.hpp"

namespace dmxyz {

using Complex = std::complex<double>;

/// Dense 4x4 complex matrix, row-major, basis order |00>,|01>,|10>,|11>.
struct ComplexMatrix4 {
    std::array<Complex, 16> m{};

    Complex& operator()(int r, int c) { return m[static_cast<std::size_t>(4 * r + c)]; }
    const Complex& operator()(int r, int c) const {
        return m[static_cast<std::size_t>(4 * r + c)];
    }

    static ComplexMatrix4 zero() { return ComplexMatrix4{}; }

    static ComplexMatrix4 identity() {
        ComplexMatrix4 a;
        for (int i = 0; i < 4; ++i) a(i, i) = 1.0;
        return a;
    }

    ComplexMatrix4 adjoint() const {
        ComplexMatrix4 a;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) a(r, c) = std::conj((*this)(c, r));
        return a;
    }

    ComplexMatrix4 conjugate() const {
        ComplexMatrix4 a;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) a(r, c) = std::conj((*this)(r, c));
        return a;
    }

    Complex trace() const {
        return (*this)(0, 0) + (*this)(1, 1) + (*this)(2, 2) + (*this)(3, 3);
    }

    /// Max entrywise modulus (infinity norm of the flattened entries).
    double max_abs() const {
        double v = 0.0;
        for (const Complex& e : m) v = std::max(v, std::abs(e));
        return v;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const Complex& e : m) s += std::norm(e);
        return std::sqrt(s);
    }

    /// Max entrywise modulus of (A - A^dagger).
    double hermiticity_defect() const {
        double v = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                v = std::max(v, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        return v;
    }

    friend ComplexMatrix4 operator+(const ComplexMatrix4& a, const ComplexMatrix4& b) {
        ComplexMatrix4 r;
        for (std::size_t i = 0; i < 16; ++i) r.m[i] = a.m[i] + b.m[i];
        return r;
    }

    friend ComplexMatrix4 operator-(const ComplexMatrix4& a, const ComplexMatrix4& b) {
        ComplexMatrix4 r;
        for (std::size_t i = 0; i < 16; ++i) r.m[i] = a.m[i] - b.m[i];
        return r;
    }

    friend ComplexMatrix4 operator*(const ComplexMatrix4& a, const ComplexMatrix4& b) {
        ComplexMatrix4 r;
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{}) continue;
                for (int j = 0; j < 4; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend ComplexMatrix4 operator*(const Complex& s, const ComplexMatrix4& a) {
        ComplexMatrix4 r;
        for (std::size_t i = 0; i < 16; ++i) r.m[i] = s * a.m[i];
        return r;
    }
};

using Vector4 = std::array<Complex, 4>;

/// Result of a Hermitian eigendecomposition: eigenvalues ascending (ties kept
/// in pivot order), eigenvector k stored as column k of `eigenvectors`.
struct HermitianEigenSystem {
    std::array<double, 4> eigenvalues{};
    ComplexMatrix4 eigenvectors;

    Vector4 eigenvector(int k) const {
        return {eigenvectors(0, k), eigenvectors(1, k), eigenvectors(2, k),
                eigenvectors(3, k)};
    }
};

namespace detail {

inline constexpr double kHermTol = 1e-12;
inline constexpr double kJacobiTol = 1e-14;
inline constexpr int kJacobiMaxSweeps = 60;

/// Frobenius norm of the strict upper triangle, doubled for Hermitian A.
inline double off_diagonal_norm(const ComplexMatrix4& a) {
    double s = 0.0;
    for (int p = 0; p < 4; ++p)
        for (int q = p + 1; q < 4; ++q) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
}

/// 2x2 unitary annihilating the (p,q) entry of a Hermitian pivot block
/// [[app, apq], [conj(apq), aqq]]. Writes the four entries c, mns (= -s),
/// spc (= s*conj(phase)), cpc (= c*conj(phase)) of
///   G = [[c, -s], [s*conj(phase), c*conj(phase)]],  phase = apq/|apq|,
/// so that G^dagger * block * G is diagonal.
struct JacobiRotation {
    Complex gpp, gpq, gqp, gqq;
};

inline JacobiRotation make_rotation(double app, double aqq, Complex apq) {
    const double ab = std::abs(apq);
    const Complex phase = apq / ab;
    const double tau = (aqq - app) / (2.0 * ab);
    const double sign = (tau >= 0.0) ? 1.0 : -1.0;
    const double t = -sign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    return {Complex{c, 0.0}, Complex{-s, 0.0}, s * std::conj(phase),
            c * std::conj(phase)};
}

/// Cyclic complex Jacobi on a Hermitian copy of `a`. Returns (diagonal,
/// accumulated unitary). Throws NoConvergence past the sweep budget.
inline void jacobi(const ComplexMatrix4& a, std::array<double, 4>& d,
                   ComplexMatrix4& v) {
    ComplexMatrix4 w = a;
    v = ComplexMatrix4::identity();
    const double thr = kJacobiTol * std::max(1.0, a.frobenius_norm());

    int sweep = 0;
    for (; sweep < kJacobiMaxSweeps; ++sweep) {
        if (off_diagonal_norm(w) <= thr) break;
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                const Complex apq = w(p, q);
                if (std::abs(apq) == 0.0) continue;
                const JacobiRotation g =
                    make_rotation(w(p, p).real(), w(q, q).real(), apq);

                // w <- G^dagger w G applied as column then row updates.
                for (int r = 0; r < 4; ++r) {
                    const Complex wp = w(r, p), wq = w(r, q);
                    w(r, p) = wp * g.gpp + wq * g.gqp;
                    w(r, q) = wp * g.gpq + wq * g.gqq;
                }
                for (int cidx = 0; cidx < 4; ++cidx) {
                    const Complex wp = w(p, cidx), wq = w(q, cidx);
                    w(p, cidx) = std::conj(g.gpp) * wp + std::conj(g.gqp) * wq;
                    w(q, cidx) = std::conj(g.gpq) * wp + std::conj(g.gqq) * wq;
                }
                w(p, q) = 0.0;
                w(q, p) = 0.0;
                w(p, p) = Complex{w(p, p).real(), 0.0};
                w(q, q) = Complex{w(q, q).real(), 0.0};

                for (int r = 0; r < 4; ++r) {
                    const Complex vp = v(r, p), vq = v(r, q);
                    v(r, p) = vp * g.gpp + vq * g.gqp;
                    v(r, q) = vp * g.gpq + vq * g.gqq;
                }
            }
        }
    }
    if (sweep == kJacobiMaxSweeps && off_diagonal_norm(w) > thr) {
        throw NoConvergence("hermitian_eigensystem: Jacobi sweep budget exhausted");
    }
    for (int i = 0; i < 4; ++i) d[static_cast<std::size_t>(i)] = w(i, i).real();
}

}  // namespace detail

/// Eigendecomposition of a Hermitian 4x4 matrix. Eigenvalues ascending with
/// ties broken by pre-sort (pivot) index; each eigenvector's first component
/// of magnitude > 1e-12 is rotated to be real nonnegative.
inline HermitianEigenSystem hermitian_eigensystem(const ComplexMatrix4& a) {
    if (a.hermiticity_defect() > detail::kHermTol) {
        std::ostringstream os;
        os << "hermitian_eigensystem: matrix is not Hermitian (defect "
           << a.hermiticity_defect() << ")";
        throw NotHermitian(os.str());
    }

    std::array<double, 4> d{};
    ComplexMatrix4 v;
    detail::jacobi(a, d, v);

    std::array<int, 4> idx{0, 1, 2, 3};
    std::stable_sort(idx.begin(), idx.end(),
                     [&d](int i, int j) { return d[static_cast<std::size_t>(i)] <
                                                 d[static_cast<std::size_t>(j)]; });

    HermitianEigenSystem es;
    for (int k = 0; k < 4; ++k) {
        const int j = idx[static_cast<std::size_t>(k)];
        es.eigenvalues[static_cast<std::size_t>(k)] = d[static_cast<std::size_t>(j)];
        for (int r = 0; r < 4; ++r) es.eigenvectors(r, k) = v(r, j);
        for (int r = 0; r < 4; ++r) {
            const Complex lead = es.eigenvectors(r, k);
            if (std::abs(lead) > 1e-12) {
                const Complex u = std::conj(lead) / std::abs(lead);
                for (int rr = 0; rr < 4; ++rr) es.eigenvectors(rr, k) *= u;
                break;
            }
        }
    }
    return es;
}

/// V f(diag) V^dagger for Hermitian input; f must be finite on the spectrum.
inline ComplexMatrix4 matrix_function_hermitian(const ComplexMatrix4& a,
                                                const std::function<double(double)>& f) {
    const HermitianEigenSystem es = hermitian_eigensystem(a);
    std::array<double, 4> fd{};
    for (std::size_t k = 0; k < 4; ++k) {
        fd[k] = f(es.eigenvalues[k]);
        if (!std::isfinite(fd[k])) {
            std::ostringstream os;
            os << "matrix_function_hermitian: f(" << es.eigenvalues[k]
               << ") is not finite";
            throw Overflow(os.str());
        }
    }
    ComplexMatrix4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Complex s{};
            for (int k = 0; k < 4; ++k)
                s += es.eigenvectors(i, k) * fd[static_cast<std::size_t>(k)] *
                     std::conj(es.eigenvectors(j, k));
            r(i, j) = s;
        }
    return r;
}

/// Principal square root of a PSD Hermitian matrix. Eigenvalues in
/// [-1e-12, 0) are clamped to 0; below the floor raises
/// NotPositiveSemidefinite.
inline ComplexMatrix4 hermitian_sqrt(const ComplexMatrix4& a) {
    const HermitianEigenSystem es = hermitian_eigensystem(a);
    if (es.eigenvalues[0] < -1e-12) {
        std::ostringstream os;
        os << "hermitian_sqrt: eigenvalue " << es.eigenvalues[0]
           << " below the PSD clamp floor";
        throw NotPositiveSemidefinite(os.str());
    }
    ComplexMatrix4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Complex s{};
            for (int k = 0; k < 4; ++k) {
                const double lam = std::max(0.0, es.eigenvalues[static_cast<std::size_t>(k)]);
                s += es.eigenvectors(i, k) * std::sqrt(lam) *
                     std::conj(es.eigenvectors(j, k));
            }
            r(i, j) = s;
        }
    return r;
}

/// Singular values of a 4x4 complex matrix, descending, via one-sided Jacobi
/// (column orthogonalization). The relative pair-skip criterion preserves the
/// high relative accuracy of small singular values of graded matrices, which
/// the concurrence oracle depends on at low temperature.
inline std::array<double, 4> singular_values_4(const ComplexMatrix4& b) {
    ComplexMatrix4 a = b;
    for (int sweep = 0; sweep < detail::kJacobiMaxSweeps; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                double g11 = 0.0, g22 = 0.0;
                Complex g12{};
                for (int r = 0; r < 4; ++r) {
                    g11 += std::norm(a(r, p));
                    g22 += std::norm(a(r, q));
                    g12 += std::conj(a(r, p)) * a(r, q);
                }
                const double ab = std::abs(g12);
                if (ab == 0.0 || ab <= 1e-15 * std::sqrt(g11 * g22)) continue;
                rotated = true;
                const detail::JacobiRotation g = detail::make_rotation(g11, g22, g12);
                for (int r = 0; r < 4; ++r) {
                    const Complex ap = a(r, p), aq = a(r, q);
                    a(r, p) = ap * g.gpp + aq * g.gqp;
                    a(r, q) = ap * g.gpq + aq * g.gqq;
                }
            }
        }
        if (!rotated) break;
    }
    std::array<double, 4> sv{};
    for (int c = 0; c < 4; ++c) {
        double s = 0.0;
        for (int r = 0; r < 4; ++r) s += std::norm(a(r, c));
        sv[static_cast<std::size_t>(c)] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

}  // namespace dmxyz
