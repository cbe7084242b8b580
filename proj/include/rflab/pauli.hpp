#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rflab {

// Hermitian Pauli string sign * P_0 P_1 ... P_{n-1} on n qubits, stored in the
// symplectic representation: one x bit and one z bit per qubit, bit-packed
// into 64-bit words.  (x,z) encodes I=(0,0), X=(1,0), Y=(1,1), Z=(0,1).
class PauliString {
 public:
  PauliString() : PauliString(0) {}
  explicit PauliString(uint32_t n_qubits);

  // Single-qubit Pauli embedded in n qubits, e.g. single(4, 'Z', 2) == Z2.
  static PauliString single(uint32_t n_qubits, char axis, uint32_t qubit);
  // Parse a text word such as "Z0 X1 Z2"; "I" (or empty) is the identity.
  static PauliString from_word(uint32_t n_qubits, const std::string& word);

  uint32_t num_qubits() const { return n_; }
  int sign() const { return sign_; }
  void set_sign(int s) { sign_ = static_cast<int8_t>(s); }
  void negate() { sign_ = static_cast<int8_t>(-sign_); }

  bool x(uint32_t q) const { return (x_[q >> 6] >> (q & 63)) & 1ULL; }
  bool z(uint32_t q) const { return (z_[q >> 6] >> (q & 63)) & 1ULL; }
  char axis(uint32_t q) const;
  void set(uint32_t qubit, char axis);

  bool is_identity() const;  // ignores sign
  uint32_t weight() const;
  std::vector<uint32_t> support() const;

  bool commutes(const PauliString& other) const;

  // Pauli word without the sign, e.g. "Z0 X1 Z2"; identity prints as "I".
  std::string word() const;

  bool operator==(const PauliString& other) const {
    return n_ == other.n_ && sign_ == other.sign_ && x_ == other.x_ && z_ == other.z_;
  }
  bool same_bits(const PauliString& other) const {
    return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
  }
  uint64_t bits_hash() const;

  // --- Clifford conjugation, P -> U P U^dagger -------------------------------
  void conj_h(uint32_t q);
  void conj_s(uint32_t q);
  void conj_sdg(uint32_t q);
  void conj_x(uint32_t q);
  void conj_y(uint32_t q);
  void conj_z(uint32_t q);
  void conj_cx(uint32_t control, uint32_t target);
  void conj_cz(uint32_t a, uint32_t b);
  void conj_swap(uint32_t a, uint32_t b);

  const std::vector<uint64_t>& x_words() const { return x_; }
  const std::vector<uint64_t>& z_words() const { return z_; }

 private:
  friend std::pair<int, PauliString> pauli_mul(const PauliString&, const PauliString&);

  bool bit(const std::vector<uint64_t>& w, uint32_t q) const {
    return (w[q >> 6] >> (q & 63)) & 1ULL;
  }
  static void flip(std::vector<uint64_t>& w, uint32_t q) { w[q >> 6] ^= 1ULL << (q & 63); }
  static void assign(std::vector<uint64_t>& w, uint32_t q, bool v) {
    uint64_t m = 1ULL << (q & 63);
    w[q >> 6] = v ? (w[q >> 6] | m) : (w[q >> 6] & ~m);
  }

  uint32_t n_;
  int8_t sign_ = 1;
  std::vector<uint64_t> x_, z_;
};

// Exact operator product: a * b == i^phase * product, where the returned
// string carries sign +1 and phase is in {0,1,2,3} (i^0..i^3).
std::pair<int, PauliString> pauli_mul(const PauliString& a, const PauliString& b);

inline bool commutes(const PauliString& a, const PauliString& b) { return a.commutes(b); }

}  // namespace rflab
