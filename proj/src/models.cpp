#include "rflab/models.hpp"

#include <algorithm>

#include "rflab/errors.hpp"
#include "rflab/random_clifford.hpp"
#include "rflab/rng.hpp"

namespace rflab {

namespace {

constexpr const char* kFamilyNames[] = {"cluster", "tfi", "polarization-z",
                                        "polarization-x", "random-back-evolved"};

// P -> g^dagger P g for a fixed Clifford gate.
void conj_by_inverse(PauliString& p, const Gate& g) {
  switch (g.kind) {
    case GateKind::H: p.conj_h(g.qubits[0]); break;
    case GateKind::S: p.conj_sdg(g.qubits[0]); break;
    case GateKind::Sdg: p.conj_s(g.qubits[0]); break;
    case GateKind::X: p.conj_x(g.qubits[0]); break;
    case GateKind::Y: p.conj_y(g.qubits[0]); break;
    case GateKind::Z: p.conj_z(g.qubits[0]); break;
    case GateKind::CX: p.conj_cx(g.qubits[0], g.qubits[1]); break;
    case GateKind::CZ: p.conj_cz(g.qubits[0], g.qubits[1]); break;
    case GateKind::Swap: p.conj_swap(g.qubits[0], g.qubits[1]); break;
    default:
      throw UsageError("back evolution requires an all-Clifford circuit");
  }
}

std::vector<HamTerm> polarization_terms(uint32_t n, char axis) {
  std::vector<HamTerm> terms;
  for (uint32_t j = 0; j < n; ++j)
    terms.push_back({-1.0, PauliString::single(n, axis, j)});
  return terms;
}

// Reversed brickwall of uniform 2-qubit Cliffords: layer parities run
// (depth-1)%2, ..., 1, 0 so that the layer adjacent to an equally deep
// ansatz brickwall has matching parity.  Per-block RNG streams keep the
// circuit independent of assembly order.
Circuit build_reversed_brickwall_v(uint32_t n, uint32_t depth, uint64_t seed) {
  Circuit c;
  c.n_qubits = n;
  uint64_t block = 0;
  for (uint32_t layer = 0; layer < depth; ++layer) {
    uint32_t start = (depth - 1 - layer) % 2;
    for (uint32_t a = start; a + 1 < n; a += 2) {
      SplitRng rng(seed, block++);
      append_remapped_gates(c.gates, sample_clifford_gates(2, rng), {a, a + 1});
    }
  }
  c.validate();
  return c;
}

}  // namespace

const char* model_family_name(ModelFamily f) {
  return kFamilyNames[static_cast<size_t>(f)];
}

ModelFamily model_family_from_name(const std::string& name) {
  for (size_t i = 0; i < std::size(kFamilyNames); ++i)
    if (name == kFamilyNames[i]) return static_cast<ModelFamily>(i);
  throw UsageError("unknown model family: " + name);
}

BuiltModel build_model(const ModelSpec& spec) {
  uint32_t n = spec.n_qubits;
  switch (spec.family) {
    case ModelFamily::ClusterZXZ: {
      if (n < 3) throw UsageError("cluster model requires n >= 3");
      std::vector<HamTerm> terms;
      PauliString left(n);  // X0 Z1
      left.set(0, 'X');
      left.set(1, 'Z');
      terms.push_back({-1.0, left});
      for (uint32_t j = 1; j + 1 < n; ++j) {
        PauliString p(n);
        p.set(j - 1, 'Z');
        p.set(j, 'X');
        p.set(j + 1, 'Z');
        terms.push_back({-1.0, p});
      }
      PauliString right(n);  // Z_{n-2} X_{n-1}
      right.set(n - 2, 'Z');
      right.set(n - 1, 'X');
      terms.push_back({-1.0, right});
      if (spec.h != 0.0)
        for (uint32_t j = 0; j < n; ++j)
          terms.push_back({-spec.h, PauliString::single(n, 'X', j)});
      return {Hamiltonian(n, std::move(terms)), std::nullopt};
    }
    case ModelFamily::TFI: {
      if (n < 2) throw UsageError("tfi model requires n >= 2");
      std::vector<HamTerm> terms;
      for (uint32_t j = 0; j + 1 < n; ++j) {
        PauliString p(n);
        p.set(j, 'Z');
        p.set(j + 1, 'Z');
        terms.push_back({-1.0, p});
      }
      if (spec.h != 0.0)
        for (uint32_t j = 0; j < n; ++j)
          terms.push_back({-spec.h, PauliString::single(n, 'X', j)});
      return {Hamiltonian(n, std::move(terms)), std::nullopt};
    }
    case ModelFamily::PolarizationZ:
      if (n < 1) throw UsageError("polarization model requires n >= 1");
      return {Hamiltonian(n, polarization_terms(n, 'Z')), std::nullopt};
    case ModelFamily::PolarizationX:
      if (n < 1) throw UsageError("polarization model requires n >= 1");
      return {Hamiltonian(n, polarization_terms(n, 'X')), std::nullopt};
    case ModelFamily::RandomBackEvolved: {
      if (n < 2) throw UsageError("random-back-evolved model requires n >= 2");
      if (spec.depth < 1) throw UsageError("random-back-evolved model requires depth >= 1");
      Circuit v = build_reversed_brickwall_v(n, spec.depth, spec.seed);
      Hamiltonian hz(n, polarization_terms(n, 'Z'));
      return {back_evolved_hamiltonian(hz, v), std::move(v)};
    }
  }
  throw UsageError("unknown model family");
}

Hamiltonian back_evolved_hamiltonian(const Hamiltonian& h, const Circuit& v) {
  std::vector<HamTerm> terms;
  for (const HamTerm& t : h.terms()) {
    PauliString p = t.op;
    for (auto it = v.gates.rbegin(); it != v.gates.rend(); ++it) conj_by_inverse(p, *it);
    terms.push_back({t.coeff, std::move(p)});
  }
  if (h.offset() != 0.0) terms.push_back({h.offset(), PauliString(h.num_qubits())});
  return Hamiltonian(h.num_qubits(), std::move(terms));
}

Circuit exact_solution_circuit(const ModelSpec& spec) {
  uint32_t n = spec.n_qubits;
  Circuit c;
  c.n_qubits = n;
  switch (spec.family) {
    case ModelFamily::ClusterZXZ:
      if (spec.h != 0.0) throw UsageError("cluster solution circuit requires h = 0");
      if (n < 3) throw UsageError("cluster model requires n >= 3");
      for (uint32_t j = 0; j < n; ++j) c.gates.push_back(Gate::fixed(GateKind::H, {j}));
      for (uint32_t j = 0; j + 1 < n; ++j)
        c.gates.push_back(Gate::fixed(GateKind::CZ, {j, j + 1}));
      break;
    case ModelFamily::TFI:
      if (spec.h != 0.0) throw UsageError("tfi solution circuit requires h = 0");
      if (n < 2) throw UsageError("tfi model requires n >= 2");
      // GHZ: either Z-basis product ground state works; pick the symmetric one.
      c.gates.push_back(Gate::fixed(GateKind::H, {0}));
      for (uint32_t j = 0; j + 1 < n; ++j)
        c.gates.push_back(Gate::fixed(GateKind::CX, {j, j + 1}));
      break;
    case ModelFamily::PolarizationZ:
      break;  // |0...0> is already the ground state
    case ModelFamily::PolarizationX:
      for (uint32_t j = 0; j < n; ++j) c.gates.push_back(Gate::fixed(GateKind::H, {j}));
      break;
    case ModelFamily::RandomBackEvolved: {
      // Ground state is V^dag |0...0>: reverse V and invert each gate.
      Circuit v = build_reversed_brickwall_v(n, spec.depth, spec.seed);
      for (auto it = v.gates.rbegin(); it != v.gates.rend(); ++it) {
        Gate g = *it;
        if (g.kind == GateKind::S) g.kind = GateKind::Sdg;
        else if (g.kind == GateKind::Sdg) g.kind = GateKind::S;
        c.gates.push_back(std::move(g));
      }
      break;
    }
  }
  c.validate();
  return c;
}

std::optional<double> closed_form_ground_energy(const ModelSpec& spec) {
  double n = spec.n_qubits;
  switch (spec.family) {
    case ModelFamily::ClusterZXZ:
      return spec.h == 0.0 ? std::optional<double>(-n) : std::nullopt;
    case ModelFamily::TFI:
      return spec.h == 0.0 ? std::optional<double>(-(n - 1.0)) : std::nullopt;
    case ModelFamily::PolarizationZ:
    case ModelFamily::PolarizationX:
    case ModelFamily::RandomBackEvolved:
      return -n;
  }
  return std::nullopt;
}

}  // namespace rflab
