#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "rflab/circuit.hpp"
#include "rflab/hamiltonian.hpp"

namespace rflab {

// Dense statevector simulator.  Hard cap keeps accidental exponential blowups
// from taking the process down; callers that outgrow it should switch to the
// stabilizer engine.
class DenseState {
 public:
  static constexpr uint32_t kMaxQubits = 20;

  explicit DenseState(uint32_t n_qubits, InitialState init = InitialState::AllZero);

  uint32_t num_qubits() const { return n_; }
  size_t dim() const { return amps_.size(); }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
  std::vector<std::complex<double>>& amplitudes() { return amps_; }

  void apply_fixed(GateKind kind, const std::vector<uint32_t>& qubits);
  // exp(-i theta/2 * p)
  void apply_rotation(const PauliString& p, double theta);
  // Applies one IR gate; Rotation reads params[gate.param]; RandomClifford
  // raises EngineError (per-shot randomness has no dense meaning).
  void apply_gate(const Gate& g, const std::vector<double>& params);

  double norm() const;
  std::complex<double> inner(const DenseState& other) const;  // <this|other>
  double expectation(const PauliString& p) const;
  double expectation(const Hamiltonian& h) const;  // traceless part only

 private:
  uint32_t n_;
  std::vector<std::complex<double>> amps_;
};

// w = p * v (both of dimension 2^n); used by derivative-state builders.
void apply_pauli(const PauliString& p, const std::vector<std::complex<double>>& v,
                 std::vector<std::complex<double>>& w);

DenseState evolve(const Circuit& c, const std::vector<double>& params);

// <psi(params)| H |psi(params)> over the traceless part of H.
double cost(const Circuit& c, const std::vector<double>& params, const Hamiltonian& h);

// dC/d params via the two-point parameter-shift rule (shift pi/2), summed over
// all gates sharing each param id.  Exact for Pauli rotations.
std::vector<double> gradient(const Circuit& c, const std::vector<double>& params,
                             const Hamiltonian& h);

}  // namespace rflab
