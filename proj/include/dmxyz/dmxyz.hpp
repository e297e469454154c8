#pragma once

// Umbrella header for the dmxyz library.
//
// dmxyz computes the thermal entanglement (Wootters concurrence) of a
// two-qubit Heisenberg XYZ chain with a Dzyaloshinskii-Moriya interaction
// oriented along x, y, or z, both from closed-form expressions and from a
// brute-force diagonalization oracle, and locates critical DM strengths and
// critical temperatures.

#include "dmxyz/analysis.hpp"
#include "dmxyz/entanglement.hpp"
#include "dmxyz/errors.hpp"
#include "dmxyz/linalg4.hpp"
#include "dmxyz/model.hpp"
#include "dmxyz/thermal.hpp"

namespace dmxyz {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace dmxyz
