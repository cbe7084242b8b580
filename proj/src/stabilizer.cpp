#include "rflab/stabilizer.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "rflab/errors.hpp"

namespace rflab {

namespace {

// i-exponent of sigma_a * sigma_b indexed by (x_a z_a x_b z_b); see pauli.cpp.
constexpr int kMulPhase[16] = {0, 0, 0, 0, 0, 0, 1, 3, 0, 3, 0, 1, 0, 1, 3, 0};

}  // namespace

StabilizerState::StabilizerState(uint32_t n_qubits, InitialState init) : n_(n_qubits) {
  if (n_qubits == 0) throw UsageError("stabilizer state needs at least 1 qubit");
  words_ = (2 * static_cast<size_t>(n_) + 63) / 64;
  x_.assign(static_cast<size_t>(n_) * words_, 0);
  z_.assign(static_cast<size_t>(n_) * words_, 0);
  phase_.assign(words_, 0);
  for (uint32_t q = 0; q < n_; ++q) {
    uint32_t destab = q, stab = n_ + q;
    if (init == InitialState::AllZero) {
      // destabilizer X_q, stabilizer Z_q
      x_[q * words_ + destab / 64] |= 1ULL << (destab % 64);
      z_[q * words_ + stab / 64] |= 1ULL << (stab % 64);
    } else {
      // |+>^n: destabilizer Z_q, stabilizer X_q
      z_[q * words_ + destab / 64] |= 1ULL << (destab % 64);
      x_[q * words_ + stab / 64] |= 1ULL << (stab % 64);
    }
  }
}

void StabilizerState::apply_h(uint32_t q) {
  uint64_t* x = &x_[q * words_];
  uint64_t* z = &z_[q * words_];
  for (size_t w = 0; w < words_; ++w) {
    phase_[w] ^= x[w] & z[w];
    std::swap(x[w], z[w]);
  }
}

void StabilizerState::apply_s(uint32_t q) {
  uint64_t* x = &x_[q * words_];
  uint64_t* z = &z_[q * words_];
  for (size_t w = 0; w < words_; ++w) {
    phase_[w] ^= x[w] & z[w];
    z[w] ^= x[w];
  }
}

void StabilizerState::apply_sdg(uint32_t q) {
  uint64_t* x = &x_[q * words_];
  uint64_t* z = &z_[q * words_];
  for (size_t w = 0; w < words_; ++w) {
    phase_[w] ^= x[w] & ~z[w];
    z[w] ^= x[w];
  }
}

void StabilizerState::apply_x(uint32_t q) {
  uint64_t* z = &z_[q * words_];
  for (size_t w = 0; w < words_; ++w) phase_[w] ^= z[w];
}

void StabilizerState::apply_y(uint32_t q) {
  uint64_t* x = &x_[q * words_];
  uint64_t* z = &z_[q * words_];
  for (size_t w = 0; w < words_; ++w) phase_[w] ^= x[w] ^ z[w];
}

void StabilizerState::apply_z(uint32_t q) {
  uint64_t* x = &x_[q * words_];
  for (size_t w = 0; w < words_; ++w) phase_[w] ^= x[w];
}

void StabilizerState::apply_cx(uint32_t control, uint32_t target) {
  uint64_t* xc = &x_[control * words_];
  uint64_t* zc = &z_[control * words_];
  uint64_t* xt = &x_[target * words_];
  uint64_t* zt = &z_[target * words_];
  for (size_t w = 0; w < words_; ++w) {
    phase_[w] ^= xc[w] & zt[w] & ~(xt[w] ^ zc[w]);
    xt[w] ^= xc[w];
    zc[w] ^= zt[w];
  }
}

void StabilizerState::apply_cz(uint32_t a, uint32_t b) {
  uint64_t* xa = &x_[a * words_];
  uint64_t* za = &z_[a * words_];
  uint64_t* xb = &x_[b * words_];
  uint64_t* zb = &z_[b * words_];
  for (size_t w = 0; w < words_; ++w) {
    phase_[w] ^= xa[w] & xb[w] & (za[w] ^ zb[w]);
    za[w] ^= xb[w];
    zb[w] ^= xa[w];
  }
}

void StabilizerState::apply_swap(uint32_t a, uint32_t b) {
  for (size_t w = 0; w < words_; ++w) {
    std::swap(x_[a * words_ + w], x_[b * words_ + w]);
    std::swap(z_[a * words_ + w], z_[b * words_ + w]);
  }
}

void StabilizerState::apply_fixed(GateKind kind, const std::vector<uint32_t>& qubits) {
  switch (kind) {
    case GateKind::H: apply_h(qubits[0]); break;
    case GateKind::S: apply_s(qubits[0]); break;
    case GateKind::Sdg: apply_sdg(qubits[0]); break;
    case GateKind::X: apply_x(qubits[0]); break;
    case GateKind::Y: apply_y(qubits[0]); break;
    case GateKind::Z: apply_z(qubits[0]); break;
    case GateKind::CX: apply_cx(qubits[0], qubits[1]); break;
    case GateKind::CZ: apply_cz(qubits[0], qubits[1]); break;
    case GateKind::Swap: apply_swap(qubits[0], qubits[1]); break;
    default: throw EngineError("gate kind is not a fixed Clifford");
  }
}

// Word w of the "anticommutes with p" row mask.
uint64_t StabilizerState::anti_mask_word(const PauliString& p, size_t w) const {
  uint64_t acc = 0;
  for (uint32_t q : p.support()) {
    if (p.x(q)) acc ^= z_[q * words_ + w];
    if (p.z(q)) acc ^= x_[q * words_ + w];
  }
  return acc;
}

// row <- i^{i_exponent} * row * p, valid only when the result is Hermitian
// with a real sign (guaranteed for quarter-turn conjugations).
void StabilizerState::rotate_row(const PauliString& p, uint32_t row, int i_exponent) {
  size_t w = row / 64;
  uint64_t bit = 1ULL << (row % 64);
  int e = i_exponent;
  if (p.sign() < 0) e += 2;
  for (uint32_t q : p.support()) {
    uint64_t& xq = x_[q * words_ + w];
    uint64_t& zq = z_[q * words_ + w];
    int idx = (((xq & bit) ? 8 : 0) | ((zq & bit) ? 4 : 0) |
               (p.x(q) ? 2 : 0) | (p.z(q) ? 1 : 0));
    e += kMulPhase[idx];
    if (p.x(q)) xq ^= bit;
    if (p.z(q)) zq ^= bit;
  }
  e &= 3;
  if (e == 2) phase_[w] ^= bit;
  else if (e != 0) throw EngineError("internal: non-real phase in discrete rotation");
}

void StabilizerState::apply_discrete_rotation(const PauliString& p, int k) {
  if (p.num_qubits() != n_) throw UsageError("rotation generator width mismatch");
  if (p.is_identity()) throw UsageError("rotation generator is identity");
  k &= 3;
  if (k == 0) return;
  if (k == 2) {
    // exp(-i pi p / 2) = -i p up to phase: rows anticommuting with p flip sign.
    for (size_t w = 0; w < words_; ++w) phase_[w] ^= anti_mask_word(p, w);
    return;
  }
  // k == 1: anticommuting rows map to  i * row * p;  k == 3: to -i * row * p.
  int e = (k == 1) ? 1 : 3;
  for (size_t w = 0; w < words_; ++w) {
    uint64_t anti = anti_mask_word(p, w);
    while (anti) {
      int b = std::countr_zero(anti);
      anti &= anti - 1;
      rotate_row(p, static_cast<uint32_t>(w * 64 + b), e);
    }
  }
}

PauliString StabilizerState::destabilizer_row(uint32_t i) const {
  size_t w = i / 64;
  uint64_t bit = 1ULL << (i % 64);
  PauliString p(n_);
  for (uint32_t q = 0; q < n_; ++q) {
    bool xb = x_[q * words_ + w] & bit;
    bool zb = z_[q * words_ + w] & bit;
    if (xb || zb) p.set(q, xb ? (zb ? 'Y' : 'X') : 'Z');
  }
  p.set_sign((phase_[w] & bit) ? -1 : 1);
  return p;
}

PauliString StabilizerState::stabilizer_row(uint32_t i) const { return destabilizer_row(n_ + i); }

double StabilizerState::expectation(const PauliString& p) const {
  if (p.num_qubits() != n_) throw UsageError("observable width mismatch");
  if (p.is_identity()) return p.sign();
  // If p anticommutes with any stabilizer, the expectation vanishes.
  // Otherwise p is (up to sign) the product of the stabilizer rows whose
  // destabilizer partners anticommute with p; multiplying those rows with
  // exact phase tracking recovers the sign.
  std::vector<uint32_t> selected;
  for (size_t w = 0; w < words_; ++w) {
    uint64_t anti = anti_mask_word(p, w);
    uint64_t row0 = w * 64;
    while (anti) {
      int b = std::countr_zero(anti);
      anti &= anti - 1;
      uint64_t row = row0 + b;
      if (row >= n_) return 0.0;  // a stabilizer anticommutes
      selected.push_back(static_cast<uint32_t>(row));
    }
  }
  PauliString acc(n_);
  int e = 0;
  for (uint32_t i : selected) {
    auto [ph, prod] = pauli_mul(acc, stabilizer_row(i));
    e += ph;
    acc = std::move(prod);
  }
  if (!acc.same_bits(p))
    throw EngineError("internal: stabilizer product does not reproduce observable");
  if (p.sign() < 0) e += 2;
  return (e & 3) == 0 ? 1.0 : -1.0;
}

double StabilizerState::expectation(const Hamiltonian& h) const {
  if (h.num_qubits() != n_) throw UsageError("hamiltonian width mismatch");
  double sum = 0;
  for (const auto& t : h.terms()) sum += t.coeff * expectation(t.op);
  return sum;
}

bool StabilizerState::check_invariants() const {
  std::vector<PauliString> destab(n_, PauliString(0)), stab(n_, PauliString(0));
  for (uint32_t i = 0; i < n_; ++i) {
    destab[i] = destabilizer_row(i);
    stab[i] = stabilizer_row(i);
  }
  for (uint32_t i = 0; i < n_; ++i) {
    for (uint32_t j = 0; j < n_; ++j) {
      if (!stab[i].commutes(stab[j])) return false;
      if (!destab[i].commutes(destab[j])) return false;
      bool want_anti = (i == j);
      if (destab[i].commutes(stab[j]) != !want_anti) return false;
    }
  }
  return true;
}

std::string StabilizerState::canonical_key() const {
  std::vector<PauliString> rows(n_, PauliString(0));
  for (uint32_t i = 0; i < n_; ++i) rows[i] = stabilizer_row(i);
  auto eliminate = [&](uint32_t pivot_row, uint32_t col, bool use_x) {
    for (uint32_t j = 0; j < n_; ++j) {
      if (j == pivot_row) continue;
      bool hit = use_x ? rows[j].x(col) : rows[j].z(col);
      if (!hit) continue;
      // pauli_mul folds both operand signs into the returned phase.
      auto [ph, prod] = pauli_mul(rows[j], rows[pivot_row]);
      int e = ph & 3;
      if (e == 2) prod.negate();
      else if (e != 0) throw EngineError("internal: non-real phase in canonicalization");
      rows[j] = std::move(prod);
    }
  };
  uint32_t r = 0;
  for (uint32_t q = 0; q < n_ && r < n_; ++q) {
    for (uint32_t i = r; i < n_; ++i) {
      if (rows[i].x(q)) {
        std::swap(rows[r], rows[i]);
        eliminate(r, q, true);
        ++r;
        break;
      }
    }
  }
  for (uint32_t q = 0; q < n_ && r < n_; ++q) {
    for (uint32_t i = r; i < n_; ++i) {
      if (rows[i].z(q)) {
        std::swap(rows[r], rows[i]);
        eliminate(r, q, false);
        ++r;
        break;
      }
    }
  }
  std::ostringstream out;
  for (const auto& row : rows) out << (row.sign() < 0 ? '-' : '+') << row.word() << ';';
  return out.str();
}

}  // namespace rflab
