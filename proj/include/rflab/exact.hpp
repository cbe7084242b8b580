#pragma once

#include <cstdint>

#include "rflab/hamiltonian.hpp"

namespace rflab {

// Lowest eigenvalue of H including its constant offset.  Dense symmetric
// diagonalization up to kDenseCap qubits, matrix-free Lanczos with full
// reorthogonalization up to kLanczosCap; beyond that throws CapError.
double ground_energy(const Hamiltonian& h);

inline constexpr uint32_t kDenseGroundCap = 10;
inline constexpr uint32_t kLanczosGroundCap = 16;

}  // namespace rflab
