#include "rflab/random_clifford.hpp"

#include "rflab/errors.hpp"

namespace rflab {

namespace {

// Emits `g` with local qubit ids shifted by `off` and conjugates the tracked
// pair through it (p -> g p g^dagger).
void emit(std::vector<Gate>& out, GateKind kind, uint32_t a, uint32_t b, uint32_t off,
          PauliString& p1, PauliString& p2) {
  for (PauliString* p : {&p1, &p2}) {
    switch (kind) {
      case GateKind::H: p->conj_h(a); break;
      case GateKind::Sdg: p->conj_sdg(a); break;
      case GateKind::X: p->conj_x(a); break;
      case GateKind::Y: p->conj_y(a); break;
      case GateKind::Z: p->conj_z(a); break;
      case GateKind::CX: p->conj_cx(a, b); break;
      case GateKind::Swap: p->conj_swap(a, b); break;
      default: throw EngineError("internal: unexpected gate in clifford sweep");
    }
  }
  if (kind == GateKind::CX || kind == GateKind::Swap)
    out.push_back(Gate::fixed(kind, {a + off, b + off}));
  else
    out.push_back(Gate::fixed(kind, {a + off}));
}

// Sweeps an X-only Pauli down to X_0 with CX pairing; assumes every support
// qubit carries an X after the single-qubit cleanup.
void pair_down(std::vector<Gate>& out, PauliString& p, PauliString& other, uint32_t off) {
  std::vector<uint32_t> supp = p.support();
  while (supp.size() > 1) {
    std::vector<uint32_t> next;
    for (size_t j = 0; j + 1 < supp.size(); j += 2) {
      emit(out, GateKind::CX, supp[j], supp[j + 1], off, p, other);
      next.push_back(supp[j]);
    }
    if (supp.size() % 2 == 1) next.push_back(supp.back());
    supp = std::move(next);
  }
  if (supp[0] != 0) emit(out, GateKind::Swap, 0, supp[0], off, p, other);
}

void single_qubit_cleanup(std::vector<Gate>& out, PauliString& p, PauliString& other,
                          uint32_t off) {
  for (uint32_t q : p.support()) {
    if (!p.z(q)) continue;
    if (p.x(q)) emit(out, GateKind::Sdg, q, 0, off, p, other);  // Y -> X
    else emit(out, GateKind::H, q, 0, off, p, other);           // Z -> X
  }
}

PauliString draw_pauli(uint32_t m, SplitRng& rng, bool reject_identity) {
  for (;;) {
    uint64_t bits = rng.next_below(uint64_t{1} << (2 * m));
    uint64_t sign = rng.next_below(2);
    if (reject_identity && bits == 0) continue;
    PauliString p(m);
    for (uint32_t q = 0; q < m; ++q) {
      bool xb = (bits >> (2 * q)) & 1, zb = (bits >> (2 * q + 1)) & 1;
      if (xb || zb) p.set(q, xb ? (zb ? 'Y' : 'X') : 'Z');
    }
    if (sign) p.negate();
    return p;
  }
}

}  // namespace

std::vector<Gate> sample_clifford_gates(uint32_t k, SplitRng& rng) {
  if (k == 0 || k > 16) throw UsageError("random clifford supports 1..16 qubits");
  std::vector<Gate> out;
  for (uint32_t t = 0; t < k; ++t) {
    uint32_t m = k - t;
    PauliString p1 = draw_pauli(m, rng, /*reject_identity=*/true);
    PauliString p2(m);
    do {
      p2 = draw_pauli(m, rng, /*reject_identity=*/false);
    } while (p1.commutes(p2));

    // Reduce p1 to +-X_0 (all indices are offset by t on emission).
    single_qubit_cleanup(out, p1, p2, t);
    pair_down(out, p1, p2, t);

    // Reduce p2 to +-Z_0 while keeping p1 fixed.  p2 anticommutes with X_0,
    // so it has a z component on qubit 0; in the H-conjugated frame it gets
    // an x there, qubit 0 survives the pairing in place, and p1 = Z_0 is
    // untouched by Sdg(0), H(i>0) and CX(0, *).
    bool p2_is_z0 = !p2.x(0) && p2.z(0) && p2.weight() == 1;
    if (!p2_is_z0) {
      emit(out, GateKind::H, 0, 0, t, p1, p2);
      single_qubit_cleanup(out, p2, p1, t);
      pair_down(out, p2, p1, t);
      emit(out, GateKind::H, 0, 0, t, p1, p2);
    }

    // Sign correction.
    bool n1 = p1.sign() < 0, n2 = p2.sign() < 0;
    if (n1 && n2) emit(out, GateKind::Y, 0, 0, t, p1, p2);
    else if (n1) emit(out, GateKind::Z, 0, 0, t, p1, p2);
    else if (n2) emit(out, GateKind::X, 0, 0, t, p1, p2);

    if (!(p1 == PauliString::single(m, 'X', 0) && p2 == PauliString::single(m, 'Z', 0)))
      throw EngineError("internal: clifford sweep failed to canonicalize pair");
  }
  return out;
}

void append_remapped_gates(std::vector<Gate>& out, const std::vector<Gate>& local,
                           const std::vector<uint32_t>& support) {
  for (const Gate& g : local) {
    Gate r = g;
    for (auto& q : r.qubits) q = support.at(q);
    out.push_back(std::move(r));
  }
}

}  // namespace rflab
