#pragma once

#include <cstdint>
#include <vector>

#include "rflab/circuit.hpp"
#include "rflab/rng.hpp"

namespace rflab {

// Draws an exactly uniform element of the k-qubit Clifford group and returns
// it as a sequence of elementary gates (H, S, Sdg, X, Y, Z, CX, Swap) on
// local qubits 0..k-1.
//
// Construction: for each sweep stage t the sampler draws a uniform random
// signed non-identity Pauli p1 on qubits t..k-1 and a uniform random signed
// Pauli p2 anticommuting with p1, then emits gates conjugating (p1, p2) to
// (X_t, Z_t).  Stage choice counts multiply to the exact group orders
// (24 for k=1, 11520 for k=2), and each choice sequence yields a distinct
// element, so the distribution is uniform -- no approximation involved.
std::vector<Gate> sample_clifford_gates(uint32_t k, SplitRng& rng);

// Rewrites local qubit ids through `support` and appends to `out`.
void append_remapped_gates(std::vector<Gate>& out, const std::vector<Gate>& local,
                           const std::vector<uint32_t>& support);

}  // namespace rflab
