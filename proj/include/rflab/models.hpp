#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rflab/circuit.hpp"
#include "rflab/hamiltonian.hpp"

namespace rflab {

enum class ModelFamily : uint8_t {
  ClusterZXZ,        // -sum Z X Z (open ends truncate) - h sum X
  TFI,               // -sum Z Z - h sum X, open chain
  PolarizationZ,     // -sum Z
  PolarizationX,     // -sum X
  RandomBackEvolved, // V^dag (-sum Z) V for a random Clifford brickwall V
};

const char* model_family_name(ModelFamily f);
ModelFamily model_family_from_name(const std::string& name);

// Open boundary conditions throughout.
struct ModelSpec {
  ModelFamily family = ModelFamily::ClusterZXZ;
  uint32_t n_qubits = 0;
  double h = 0.0;      // transverse field (cluster / tfi)
  uint32_t depth = 1;  // random-back-evolved: brickwall depth of V
  uint64_t seed = 0;   // random-back-evolved: draw of V
};

struct BuiltModel {
  Hamiltonian ham;
  // random-back-evolved only: the materialized Clifford circuit V.  Appending
  // V after an ansatz and measuring -sum Z reproduces the cost of `ham`.
  std::optional<Circuit> v;
};

BuiltModel build_model(const ModelSpec& spec);

// V^dag H V for an all-Clifford, parameter-free circuit v.
Hamiltonian back_evolved_hamiltonian(const Hamiltonian& h, const Circuit& v);

// Circuit preparing a known exact ground state.  Defined for cluster and tfi
// at h = 0, both polarization families, and random-back-evolved; throws
// UsageError otherwise.
Circuit exact_solution_circuit(const ModelSpec& spec);

// Ground energy when it is known in closed form at the spec's parameters.
std::optional<double> closed_form_ground_energy(const ModelSpec& spec);

}  // namespace rflab
