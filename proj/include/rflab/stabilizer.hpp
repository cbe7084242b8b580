#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rflab/circuit.hpp"
#include "rflab/hamiltonian.hpp"
#include "rflab/pauli.hpp"

namespace rflab {

// Stabilizer state on n qubits in the Aaronson-Gottesman tableau form with
// destabilizers.  Storage is qubit-major: for each qubit there is one x and
// one z bitvector across all 2n generator rows (destabilizers first, then
// stabilizers), so single- and two-qubit gates are word-parallel over rows.
// Row signs live in one extra bitvector (bit set <=> sign -1).
class StabilizerState {
 public:
  explicit StabilizerState(uint32_t n_qubits, InitialState init = InitialState::AllZero);

  uint32_t num_qubits() const { return n_; }

  void apply_h(uint32_t q);
  void apply_s(uint32_t q);
  void apply_sdg(uint32_t q);
  void apply_x(uint32_t q);
  void apply_y(uint32_t q);
  void apply_z(uint32_t q);
  void apply_cx(uint32_t control, uint32_t target);
  void apply_cz(uint32_t a, uint32_t b);
  void apply_swap(uint32_t a, uint32_t b);
  void apply_fixed(GateKind kind, const std::vector<uint32_t>& qubits);

  // exp(-i (k pi/2) p / 2), i.e. a Pauli rotation frozen at a quarter-turn
  // angle k * pi/2.  k is taken mod 4; every value maps Cliffords to Cliffords.
  void apply_discrete_rotation(const PauliString& p, int k);

  // <p> for a signed Pauli string: exactly -1, 0, or +1.
  double expectation(const PauliString& p) const;
  // sum_j coeff_j <op_j> over the traceless part.
  double expectation(const Hamiltonian& h) const;

  PauliString destabilizer_row(uint32_t i) const;
  PauliString stabilizer_row(uint32_t i) const;

  // Verifies the symplectic pairing of the tableau (all stabilizers commute,
  // destabilizer i anticommutes exactly with stabilizer i, ...).
  bool check_invariants() const;

  // Canonical description of the stabilizer group including signs; two states
  // are equal iff their keys are equal.
  std::string canonical_key() const;

 private:
  uint64_t anti_mask_word(const PauliString& p, size_t w) const;
  void rotate_row(const PauliString& p, uint32_t row, int i_exponent);

  uint32_t n_;
  size_t words_;                // words per row-indexed bitvector (2n rows)
  std::vector<uint64_t> x_, z_; // [qubit * words_ + w]
  std::vector<uint64_t> phase_;
};

}  // namespace rflab
