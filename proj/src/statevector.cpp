#include "rflab/statevector.hpp"

#include <bit>
#include <cmath>

#include "rflab/errors.hpp"

namespace rflab {

namespace {

using cplx = std::complex<double>;

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Low 64-bit masks of a Pauli string (dense engine is capped well below 64 qubits).
struct Masks {
  uint64_t x = 0, z = 0;
  int ny = 0;
  int sign = 1;
};

Masks masks_of(const PauliString& p) {
  Masks m;
  m.x = p.x_words().empty() ? 0 : p.x_words()[0];
  m.z = p.z_words().empty() ? 0 : p.z_words()[0];
  m.ny = std::popcount(m.x & m.z);
  m.sign = p.sign();
  return m;
}

// Phase factor c_b in P|b> == c_b |b ^ x>.
inline cplx pauli_phase(const Masks& m, uint64_t b) {
  static const cplx kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  int e = m.ny & 3;
  if (std::popcount(b & m.z) & 1) e ^= 2;  // times -1
  cplx c = kI[e];
  return m.sign < 0 ? -c : c;
}

}  // namespace

DenseState::DenseState(uint32_t n_qubits, InitialState init) : n_(n_qubits) {
  if (n_qubits == 0) throw UsageError("statevector needs at least 1 qubit");
  if (n_qubits > kMaxQubits)
    throw CapError("statevector capped at " + std::to_string(kMaxQubits) + " qubits (asked for " +
                   std::to_string(n_qubits) + ")");
  amps_.assign(size_t{1} << n_qubits, cplx(0, 0));
  if (init == InitialState::AllZero) {
    amps_[0] = 1.0;
  } else {
    double a = std::pow(kInvSqrt2, n_qubits);
    for (auto& v : amps_) v = a;
  }
}

void DenseState::apply_fixed(GateKind kind, const std::vector<uint32_t>& qubits) {
  const size_t dim = amps_.size();
  switch (kind) {
    case GateKind::H: {
      uint64_t m = 1ULL << qubits[0];
      for (uint64_t b = 0; b < dim; ++b) {
        if (b & m) continue;
        cplx a0 = amps_[b], a1 = amps_[b | m];
        amps_[b] = (a0 + a1) * kInvSqrt2;
        amps_[b | m] = (a0 - a1) * kInvSqrt2;
      }
      break;
    }
    case GateKind::S: {
      uint64_t m = 1ULL << qubits[0];
      for (uint64_t b = 0; b < dim; ++b)
        if (b & m) amps_[b] *= cplx(0, 1);
      break;
    }
    case GateKind::Sdg: {
      uint64_t m = 1ULL << qubits[0];
      for (uint64_t b = 0; b < dim; ++b)
        if (b & m) amps_[b] *= cplx(0, -1);
      break;
    }
    case GateKind::X: {
      uint64_t m = 1ULL << qubits[0];
      for (uint64_t b = 0; b < dim; ++b)
        if (!(b & m)) std::swap(amps_[b], amps_[b | m]);
      break;
    }
    case GateKind::Y: {
      uint64_t m = 1ULL << qubits[0];
      for (uint64_t b = 0; b < dim; ++b) {
        if (b & m) continue;
        cplx a0 = amps_[b], a1 = amps_[b | m];
        amps_[b] = cplx(0, -1) * a1;
        amps_[b | m] = cplx(0, 1) * a0;
      }
      break;
    }
    case GateKind::Z: {
      uint64_t m = 1ULL << qubits[0];
      for (uint64_t b = 0; b < dim; ++b)
        if (b & m) amps_[b] = -amps_[b];
      break;
    }
    case GateKind::CX: {
      uint64_t mc = 1ULL << qubits[0], mt = 1ULL << qubits[1];
      for (uint64_t b = 0; b < dim; ++b)
        if ((b & mc) && !(b & mt)) std::swap(amps_[b], amps_[b | mt]);
      break;
    }
    case GateKind::CZ: {
      uint64_t m = (1ULL << qubits[0]) | (1ULL << qubits[1]);
      for (uint64_t b = 0; b < dim; ++b)
        if ((b & m) == m) amps_[b] = -amps_[b];
      break;
    }
    case GateKind::Swap: {
      uint64_t ma = 1ULL << qubits[0], mb = 1ULL << qubits[1];
      for (uint64_t b = 0; b < dim; ++b)
        if ((b & ma) && !(b & mb)) std::swap(amps_[b ^ ma ^ mb], amps_[b]);
      break;
    }
    default:
      throw EngineError("gate kind is not a fixed Clifford");
  }
}

void DenseState::apply_rotation(const PauliString& p, double theta) {
  if (p.num_qubits() != n_) throw UsageError("rotation generator width mismatch");
  Masks m = masks_of(p);
  cplx c = std::cos(theta / 2);
  cplx mis(0, -std::sin(theta / 2));
  const size_t dim = amps_.size();
  if (m.x == 0) {
    // Diagonal generator: amplitudes pick up exp(-i theta/2 * lambda_b).
    cplx f_plus = c + mis, f_minus = c - mis;
    for (uint64_t b = 0; b < dim; ++b) {
      bool minus = (std::popcount(b & m.z) & 1) != 0;
      if (m.sign < 0) minus = !minus;
      amps_[b] *= minus ? f_minus : f_plus;
    }
    return;
  }
  uint64_t low = m.x & (~m.x + 1);  // pair selector bit
  for (uint64_t b = 0; b < dim; ++b) {
    if (b & low) continue;
    uint64_t b2 = b ^ m.x;
    cplx cb = pauli_phase(m, b);  // P|b> = cb |b2>;  P|b2> = conj(cb) |b>
    cplx a0 = amps_[b], a1 = amps_[b2];
    amps_[b] = c * a0 + mis * std::conj(cb) * a1;
    amps_[b2] = c * a1 + mis * cb * a0;
  }
}

void DenseState::apply_gate(const Gate& g, const std::vector<double>& params) {
  if (g.kind == GateKind::Rotation) {
    apply_rotation(g.generator, params.at(g.param));
  } else if (g.kind == GateKind::RandomClifford) {
    throw EngineError(
        "circuit contains per-shot random Clifford gates; use the stabilizer engine");
  } else {
    apply_fixed(g.kind, g.qubits);
  }
}

double DenseState::norm() const {
  double s = 0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

std::complex<double> DenseState::inner(const DenseState& other) const {
  cplx s(0, 0);
  for (size_t b = 0; b < amps_.size(); ++b) s += std::conj(amps_[b]) * other.amps_[b];
  return s;
}

double DenseState::expectation(const PauliString& p) const {
  if (p.num_qubits() != n_) throw UsageError("observable width mismatch");
  Masks m = masks_of(p);
  cplx s(0, 0);
  for (uint64_t b = 0; b < amps_.size(); ++b)
    s += std::conj(amps_[b ^ m.x]) * pauli_phase(m, b) * amps_[b];
  return s.real();
}

double DenseState::expectation(const Hamiltonian& h) const {
  if (h.num_qubits() != n_) throw UsageError("hamiltonian width mismatch");
  double e = 0;
  for (const auto& t : h.terms()) e += t.coeff * expectation(t.op);
  return e;
}

void apply_pauli(const PauliString& p, const std::vector<cplx>& v, std::vector<cplx>& w) {
  Masks m = masks_of(p);
  w.resize(v.size());
  for (uint64_t b = 0; b < v.size(); ++b) w[b ^ m.x] = pauli_phase(m, b) * v[b];
}

DenseState evolve(const Circuit& c, const std::vector<double>& params) {
  if (params.size() != c.n_params)
    throw UsageError("parameter vector length does not match circuit");
  DenseState psi(c.n_qubits, c.initial_state);
  for (const Gate& g : c.gates) psi.apply_gate(g, params);
  return psi;
}

double cost(const Circuit& c, const std::vector<double>& params, const Hamiltonian& h) {
  if (h.num_qubits() != c.n_qubits)
    throw UsageError("hamiltonian and circuit qubit counts differ");
  return evolve(c, params).expectation(h);
}

std::vector<double> gradient(const Circuit& c, const std::vector<double>& params,
                             const Hamiltonian& h) {
  if (params.size() != c.n_params)
    throw UsageError("parameter vector length does not match circuit");
  if (h.num_qubits() != c.n_qubits)
    throw UsageError("hamiltonian and circuit qubit counts differ");
  std::vector<double> grad(c.n_params, 0.0);
  DenseState prefix(c.n_qubits, c.initial_state);
  constexpr double kShift = 1.5707963267948966;  // pi/2
  for (size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    if (g.kind == GateKind::Rotation) {
      double e[2];
      for (int s = 0; s < 2; ++s) {
        DenseState t = prefix;
        t.apply_rotation(g.generator, params[g.param] + (s == 0 ? kShift : -kShift));
        for (size_t k = i + 1; k < c.gates.size(); ++k) t.apply_gate(c.gates[k], params);
        e[s] = t.expectation(h);
      }
      grad[g.param] += (e[0] - e[1]) / 2.0;
    }
    prefix.apply_gate(g, params);
  }
  return grad;
}

}  // namespace rflab
