#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <stdexcept>

#include <dmxyz/errors.hpp>
#include <dmxyz/linalg4.hpp>
#include <dmxyz/model.hpp>
#include <dmxyz/thermal.hpp>

#include "test_support.hpp"

using dmxyz::Complex;
using dmxyz::ComplexMatrix4;
using dmxyz::DmAxis;
using dmxyz::ModelSpec;
using dmxyz::Temperature;
using dmxyz::ThermalState;
using dmxyz::testing::TestRng;

namespace {

double brute_partition_function(const ModelSpec& spec, double t) {
    const dmxyz::HermitianEigenSystem es =
        dmxyz::hermitian_eigensystem(dmxyz::build_hamiltonian(spec));
    double z = 0.0;
    for (double e : es.eigenvalues) z += std::exp(-e / t);
    return z;
}

void require_state_invariants(const ThermalState& state) {
    REQUIRE(std::abs(state.rho.trace() - Complex{1.0, 0.0}) <= 1e-12);
    REQUIRE(state.rho.hermiticity_defect() <= 1e-12);
    const dmxyz::HermitianEigenSystem es = dmxyz::hermitian_eigensystem(state.rho);
    REQUIRE(es.eigenvalues[0] >= -1e-12);
    REQUIRE(state.z > 0.0);
}

}  // namespace

TEST_CASE("temperature: rejects non-positive and non-finite values") {
    REQUIRE_THROWS_AS(Temperature(0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(Temperature(-1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(Temperature(std::nan("")), std::invalid_argument);
    REQUIRE_THROWS_AS(Temperature(std::numeric_limits<double>::infinity()),
                      std::invalid_argument);
    REQUIRE(Temperature(2.5).value() == 2.5);
}

TEST_CASE("partition function: frozen isotropic anchor") {
    const ModelSpec spec{{1.0, 1.0, 1.0}, {DmAxis::X, 0.0}};
    const double z = dmxyz::partition_function(spec, Temperature(2.0));
    REQUIRE(z == Catch::Approx(6.301281049475965).epsilon(1e-14));
}

TEST_CASE("partition function: matches the numeric trace on random points") {
    TestRng rng(301);
    for (DmAxis axis : {DmAxis::X, DmAxis::Y, DmAxis::Z}) {
        for (int trial = 0; trial < 100; ++trial) {
            const ModelSpec spec{{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)},
                                 {axis, rng.uniform(-3, 3)}};
            const double t = rng.uniform(0.1, 20.0);
            const double closed = dmxyz::partition_function(spec, Temperature(t));
            const double brute = brute_partition_function(spec, t);
            REQUIRE(closed == Catch::Approx(brute).epsilon(1e-10));
        }
    }
}

TEST_CASE("gibbs_state: invariants and partition function on random points") {
    TestRng rng(302);
    for (DmAxis axis : {DmAxis::X, DmAxis::Y, DmAxis::Z}) {
        for (int trial = 0; trial < 50; ++trial) {
            const ModelSpec spec{{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)},
                                 {axis, rng.uniform(-3, 3)}};
            const double t = rng.uniform(0.1, 20.0);
            const ThermalState state = dmxyz::gibbs_state(spec, Temperature(t));
            require_state_invariants(state);
            REQUIRE(state.temperature.value() == t);
            REQUIRE(state.z == Catch::Approx(brute_partition_function(spec, t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("gibbs_state: infinite-temperature limit is maximally mixed") {
    const ModelSpec spec{{0.2, -1.0, -0.5}, {DmAxis::X, 3.0}};
    const ThermalState state = dmxyz::gibbs_state(spec, Temperature(1e6));
    for (int i = 0; i < 4; ++i)
        REQUIRE(std::abs(state.rho(i, i) - Complex{0.25, 0.0}) < 1e-5);
}

TEST_CASE("gibbs_state: ground-state projector at very low temperature") {
    // Isotropic antiferromagnet: unique singlet ground state at E = -3.
    const ModelSpec spec{{1.0, 1.0, 1.0}, {DmAxis::X, 0.0}};
    const ThermalState state = dmxyz::gibbs_state(spec, Temperature(0.05));
    REQUIRE(std::abs(state.rho(1, 1) - Complex{0.5, 0.0}) < 1e-8);
    REQUIRE(std::abs(state.rho(1, 2) - Complex{-0.5, 0.0}) < 1e-8);
    REQUIRE(std::abs(state.rho(0, 0)) < 1e-8);
}

TEST_CASE("closed-form density: matches the numeric Gibbs state for axes x and y") {
    TestRng rng(303);
    for (DmAxis axis : {DmAxis::X, DmAxis::Y}) {
        for (int trial = 0; trial < 100; ++trial) {
            const ModelSpec spec{{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)},
                                 {axis, rng.uniform(-3, 3)}};
            const double t = rng.uniform(0.1, 20.0);
            const ComplexMatrix4 closed = dmxyz::closed_form_density(spec, Temperature(t));
            const ThermalState state = dmxyz::gibbs_state(spec, Temperature(t));
            REQUIRE((closed - state.rho).max_abs() <= 1e-10);
        }
        // Degenerate corners.
        for (const ModelSpec& spec :
             {ModelSpec{{0.4, 0.9, -0.9}, {axis, 0.0}},
              ModelSpec{{1.0, 1.0, 1.0}, {axis, 0.0}},
              ModelSpec{{0.0, 0.0, 0.0}, {axis, 0.0}}}) {
            const ComplexMatrix4 closed = dmxyz::closed_form_density(spec, Temperature(0.7));
            const ThermalState state = dmxyz::gibbs_state(spec, Temperature(0.7));
            REQUIRE((closed - state.rho).max_abs() <= 1e-10);
        }
    }
}

TEST_CASE("closed-form density: z axis is not covered by the published entries") {
    const ModelSpec spec{{0.2, -1.0, -0.5}, {DmAxis::Z, 1.0}};
    REQUIRE_THROWS_AS(dmxyz::closed_form_density(spec, Temperature(1.0)),
                      dmxyz::UnsupportedAxis);
}

TEST_CASE("overflow guard: tiny temperatures with wide spectra raise Overflow") {
    const ModelSpec spec{{3.0, -3.0, 3.0}, {DmAxis::Y, 3.0}};
    REQUIRE_THROWS_AS(dmxyz::gibbs_state(spec, Temperature(0.001)), dmxyz::Overflow);
    REQUIRE_THROWS_AS(dmxyz::partition_function(spec, Temperature(0.001)), dmxyz::Overflow);
    REQUIRE_THROWS_AS(dmxyz::closed_form_density(spec, Temperature(0.001)), dmxyz::Overflow);

    // The same spectrum is fine at moderate temperature.
    REQUIRE_NOTHROW(dmxyz::gibbs_state(spec, Temperature(0.1)));
}
