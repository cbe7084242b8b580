#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rflab/pauli.hpp"

namespace rflab {

enum class GateKind : uint8_t {
  H, S, Sdg, X, Y, Z, CX, CZ, Swap,
  Rotation,        // exp(-i theta/2 * generator), theta = params[param]
  RandomClifford,  // fresh uniform random Clifford on `qubits`, resampled per shot
};

const char* gate_kind_name(GateKind k);
GateKind gate_kind_from_name(const std::string& name);

struct Gate {
  GateKind kind;
  std::vector<uint32_t> qubits;  // for Rotation this equals generator.support()
  PauliString generator;         // Rotation only
  int32_t param = -1;            // Rotation only

  static Gate fixed(GateKind k, std::vector<uint32_t> qs);
  static Gate rotation(PauliString generator, int32_t param);
  static Gate random_clifford(std::vector<uint32_t> qs);
};

// Contiguous run of gates forming one logical block of the ansatz.  `haar`
// marks blocks whose template parametrizes the full local unitary group
// (15-parameter two-qubit blocks, random-Clifford blocks).  Samplers still
// draw every rotation angle individually: the uniform-angle ensemble of the
// 15-parameter template is not an exact 2-design, so swapping such a block
// for one uniform random Clifford would shift the landscape variance.
struct Block {
  uint32_t begin = 0, end = 0;  // gate index range [begin, end)
  std::vector<uint32_t> support;
  bool haar = false;
};

enum class InitialState : uint8_t { AllZero, AllPlus };

struct Circuit {
  uint32_t n_qubits = 0;
  InitialState initial_state = InitialState::AllZero;
  uint32_t n_params = 0;
  std::vector<Gate> gates;
  std::vector<Block> blocks;

  // Throws UsageError when structural invariants are broken (param ids not
  // dense, overlapping blocks, block support not matching its gates, ...).
  void validate() const;

  bool has_shared_params() const;     // some param id drives more than one gate
  bool has_random_clifford() const;

  std::string to_json() const;
  static Circuit from_json(const std::string& json_text);
};

// --- structural analyses -----------------------------------------------------

// chi: maximum over qubits of the number of annotated blocks touching it.
uint32_t local_depth(const Circuit& c);

// beta: maximum block support size (0 when there are no blocks).
uint32_t max_block_size(const Circuit& c);

struct CausalCone {
  std::vector<uint32_t> gate_indices;  // ascending
  std::vector<uint32_t> qubits;        // ascending
};

// Gates that can influence an observable supported on `observable_support`,
// found by a backward sweep over the gate list.
CausalCone causal_cone(const Circuit& c, const std::vector<uint32_t>& observable_support);

struct LocalOverparamRatio {
  double gamma = 0.0;
  uint32_t m_cone = 0;       // distinct param ids inside the cone
  uint32_t cone_qubits = 0;  // qubit count of the cone
  bool underflow = false;    // cone too wide for the 2^k denominator; gamma reported as 0
};

// gamma = M_cone / (2 * 2^{cone qubits}); values >= 1 indicate a locally
// overparametrized (trainable) light cone.
LocalOverparamRatio local_overparam_ratio(const Circuit& c,
                                          const std::vector<uint32_t>& observable_support);

// Closed-form rough estimate of gamma for a 1D brickwall of depth D with
// block size beta on qudits of dimension d: D(2D+1)(d^{2 beta} - 1) / (2 d^{2 D beta}).
double brickwall_gamma_estimate(uint32_t depth, uint32_t beta, double local_dim = 2.0);

// Appends the fixed Clifford circuit `v` after `ansatz` (used to evaluate a
// back-evolved Hamiltonian V^dagger H V with the original H).  `v` must be
// all-Clifford; parameter ids and count are taken from the ansatz alone.
Circuit fold_back_evolution(const Circuit& ansatz, const Circuit& v);

}  // namespace rflab
