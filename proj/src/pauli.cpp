#include "rflab/pauli.hpp"

#include <bit>
#include <sstream>

#include "rflab/errors.hpp"
#include "rflab/rng.hpp"

namespace rflab {

namespace {

// i-exponent of sigma_a * sigma_b indexed by (x_a z_a x_b z_b):
// X*Y == i Z -> 1, X*Z == -i Y -> 3, etc.
constexpr int kMulPhase[16] = {0, 0, 0, 0,   // a = I
                               0, 0, 1, 3,   // a = Z
                               0, 3, 0, 1,   // a = X
                               0, 1, 3, 0};  // a = Y

size_t words_for(uint32_t n) { return (static_cast<size_t>(n) + 63) / 64; }

}  // namespace

PauliString::PauliString(uint32_t n_qubits)
    : n_(n_qubits), x_(words_for(n_qubits), 0), z_(words_for(n_qubits), 0) {}

PauliString PauliString::single(uint32_t n_qubits, char axis, uint32_t qubit) {
  PauliString p(n_qubits);
  p.set(qubit, axis);
  return p;
}

PauliString PauliString::from_word(uint32_t n_qubits, const std::string& word) {
  PauliString p(n_qubits);
  std::istringstream in(word);
  std::string tok;
  while (in >> tok) {
    if (tok == "I") continue;
    if (tok.size() < 2) throw UsageError("bad pauli token '" + tok + "' in word '" + word + "'");
    char axis = tok[0];
    if (axis != 'X' && axis != 'Y' && axis != 'Z')
      throw UsageError("bad pauli axis '" + tok + "' in word '" + word + "'");
    uint32_t q = 0;
    try {
      size_t pos = 0;
      long v = std::stol(tok.substr(1), &pos);
      if (pos != tok.size() - 1 || v < 0) throw std::invalid_argument("");
      q = static_cast<uint32_t>(v);
    } catch (const std::exception&) {
      throw UsageError("bad qubit index in pauli token '" + tok + "'");
    }
    if (q >= n_qubits)
      throw UsageError("qubit index " + std::to_string(q) + " out of range in word '" + word + "'");
    if (p.axis(q) != 'I')
      throw UsageError("qubit " + std::to_string(q) + " listed twice in word '" + word + "'");
    p.set(q, axis);
  }
  return p;
}

char PauliString::axis(uint32_t q) const {
  bool xb = x(q), zb = z(q);
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

void PauliString::set(uint32_t qubit, char axis) {
  if (qubit >= n_) throw UsageError("qubit index out of range");
  switch (axis) {
    case 'I': assign(x_, qubit, false); assign(z_, qubit, false); break;
    case 'X': assign(x_, qubit, true);  assign(z_, qubit, false); break;
    case 'Y': assign(x_, qubit, true);  assign(z_, qubit, true);  break;
    case 'Z': assign(x_, qubit, false); assign(z_, qubit, true);  break;
    default: throw UsageError(std::string("bad pauli axis '") + axis + "'");
  }
}

bool PauliString::is_identity() const {
  for (size_t w = 0; w < x_.size(); ++w)
    if (x_[w] | z_[w]) return false;
  return true;
}

uint32_t PauliString::weight() const {
  uint32_t count = 0;
  for (size_t w = 0; w < x_.size(); ++w) count += std::popcount(x_[w] | z_[w]);
  return count;
}

std::vector<uint32_t> PauliString::support() const {
  std::vector<uint32_t> qs;
  for (size_t w = 0; w < x_.size(); ++w) {
    uint64_t m = x_[w] | z_[w];
    while (m) {
      qs.push_back(static_cast<uint32_t>(w * 64 + std::countr_zero(m)));
      m &= m - 1;
    }
  }
  return qs;
}

bool PauliString::commutes(const PauliString& other) const {
  if (n_ != other.n_) throw UsageError("pauli strings act on different qubit counts");
  // Symplectic form: parity of (a.x & b.z) ^ (a.z & b.x).
  uint64_t parity = 0;
  for (size_t w = 0; w < x_.size(); ++w)
    parity ^= (x_[w] & other.z_[w]) ^ (z_[w] & other.x_[w]);
  return (std::popcount(parity) & 1) == 0;
}

std::string PauliString::word() const {
  std::ostringstream out;
  bool first = true;
  for (uint32_t q = 0; q < n_; ++q) {
    char a = axis(q);
    if (a == 'I') continue;
    if (!first) out << ' ';
    out << a << q;
    first = false;
  }
  if (first) return "I";
  return out.str();
}

uint64_t PauliString::bits_hash() const {
  uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv1a(x_.data(), x_.size() * 8, h);
  h = fnv1a(z_.data(), z_.size() * 8, h);
  return h;
}

std::pair<int, PauliString> pauli_mul(const PauliString& a, const PauliString& b) {
  if (a.n_ != b.n_) throw UsageError("pauli strings act on different qubit counts");
  PauliString out(a.n_);
  int phase = 0;
  for (size_t w = 0; w < a.x_.size(); ++w) {
    out.x_[w] = a.x_[w] ^ b.x_[w];
    out.z_[w] = a.z_[w] ^ b.z_[w];
    uint64_t busy = a.x_[w] | a.z_[w] | b.x_[w] | b.z_[w];
    while (busy) {
      int q = std::countr_zero(busy);
      busy &= busy - 1;
      int idx = (((a.x_[w] >> q) & 1) << 3) | (((a.z_[w] >> q) & 1) << 2) |
                (((b.x_[w] >> q) & 1) << 1) | ((b.z_[w] >> q) & 1);
      phase += kMulPhase[idx];
    }
  }
  if (a.sign_ < 0) phase += 2;
  if (b.sign_ < 0) phase += 2;
  return {phase & 3, out};
}

// --- Clifford conjugations ---------------------------------------------------

void PauliString::conj_h(uint32_t q) {
  bool xb = bit(x_, q), zb = bit(z_, q);
  if (xb && zb) negate();  // Y -> -Y
  assign(x_, q, zb);
  assign(z_, q, xb);
}

void PauliString::conj_s(uint32_t q) {
  bool xb = bit(x_, q), zb = bit(z_, q);
  if (xb && zb) negate();  // Y -> -X
  assign(z_, q, zb ^ xb);
}

void PauliString::conj_sdg(uint32_t q) {
  bool xb = bit(x_, q), zb = bit(z_, q);
  if (xb && !zb) negate();  // X -> -Y
  assign(z_, q, zb ^ xb);
}

void PauliString::conj_x(uint32_t q) {
  if (bit(z_, q)) negate();
}

void PauliString::conj_y(uint32_t q) {
  if (bit(z_, q) ^ bit(x_, q)) negate();
}

void PauliString::conj_z(uint32_t q) {
  if (bit(x_, q)) negate();
}

void PauliString::conj_cx(uint32_t control, uint32_t target) {
  bool xa = bit(x_, control), za = bit(z_, control);
  bool xb = bit(x_, target), zb = bit(z_, target);
  if (xa && zb && !(xb ^ za)) negate();
  assign(x_, target, xb ^ xa);
  assign(z_, control, za ^ zb);
}

void PauliString::conj_cz(uint32_t a, uint32_t b) {
  bool xa = bit(x_, a), za = bit(z_, a);
  bool xb = bit(x_, b), zb = bit(z_, b);
  if (xa && xb && (za ^ zb)) negate();
  assign(z_, a, za ^ xb);
  assign(z_, b, zb ^ xa);
}

void PauliString::conj_swap(uint32_t a, uint32_t b) {
  bool xa = bit(x_, a), za = bit(z_, a);
  bool xb = bit(x_, b), zb = bit(z_, b);
  assign(x_, a, xb); assign(z_, a, zb);
  assign(x_, b, xa); assign(z_, b, za);
}

}  // namespace rflab
