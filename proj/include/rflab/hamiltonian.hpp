#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rflab/pauli.hpp"

namespace rflab {

struct HamTerm {
  double coeff = 0.0;
  PauliString op;  // sign always +1; any sign is folded into coeff
};

// Weighted sum of Pauli strings H = sum_j coeff_j * op_j (+ constant offset).
//
// Construction merges duplicate strings, drops terms whose merged coefficient
// is exactly zero, and strips any identity component into `offset` so the
// stored operator is traceless.  Norms are over the stored (traceless) part.
class Hamiltonian {
 public:
  Hamiltonian() = default;
  Hamiltonian(uint32_t n_qubits, std::vector<HamTerm> terms);

  uint32_t num_qubits() const { return n_; }
  const std::vector<HamTerm>& terms() const { return terms_; }
  size_t num_terms() const { return terms_.size(); }
  double offset() const { return offset_; }

  double norm_l1() const { return l1_; }      // sum |coeff|
  double norm_l2() const { return l2_; }      // sqrt(sum coeff^2)
  uint32_t locality() const { return locality_; }  // max term weight

  // --- text format: one "<coeff> <pauli-word>" per line, '#' comments -------
  std::string to_text() const;
  static Hamiltonian from_text(const std::string& text);

  // --- JSON format ----------------------------------------------------------
  std::string to_json() const;
  static Hamiltonian from_json(const std::string& json_text);

 private:
  uint32_t n_ = 0;
  std::vector<HamTerm> terms_;
  double offset_ = 0.0;
  double l1_ = 0.0, l2_ = 0.0;
  uint32_t locality_ = 0;
};

}  // namespace rflab
