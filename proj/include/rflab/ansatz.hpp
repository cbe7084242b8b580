#pragma once

#include <string>

#include "rflab/circuit.hpp"

namespace rflab {

// Two-qubit block contents for brickwall/ladder ansatzes.
//
// SU4 is the 15-parameter Cartan template: R_z R_y R_z on each qubit, then
// R_xx R_yy R_zz, then R_z R_y R_z on each qubit again.  Its blocks are
// flagged `haar` (fully parametrized), but samplers still discretize each
// angle individually: the uniform-angle ensemble of this template is not an
// exact 2-design, so replacing a block with one uniform random Clifford
// would shift the landscape variance measurably.
// RyCZ/RyCX/RxCX are two single-qubit rotations followed by one entangling
// gate.  Clifford is the non-parametrized scrambling ansatz: one fresh
// uniform random Clifford per block, redrawn every shot.
enum class BlockTemplate : uint8_t { SU4, RyCZ, RyCX, RxCX, Clifford };

const char* block_template_name(BlockTemplate t);
BlockTemplate block_template_from_name(const std::string& name);

// 1D open-boundary brickwall: depth 0 is a single layer of R_y rotations
// (one single-qubit random Clifford per qubit for the Clifford template);
// depth >= 1 alternates even-aligned and odd-aligned nearest-neighbor block
// layers (depth counts single layers).
Circuit build_brickwall_1d(uint32_t n_qubits, uint32_t depth, BlockTemplate tmpl);

// Staircase of SU4 blocks (0,1), (1,2), ..., (n-2, n-1), repeated `layers` times.
Circuit build_ladder(uint32_t n_qubits, uint32_t layers);

// Hamiltonian-variational ansatz for the transverse-field Ising chain: each of
// the `depth` layers applies all R_zz(j,j+1) rotations sharing one angle, then
// all R_x(j) rotations sharing another; the initial state is |+>^n.
// Parameter count is 2 * depth.
Circuit build_hva_tfi(uint32_t n_qubits, uint32_t depth);

}  // namespace rflab
