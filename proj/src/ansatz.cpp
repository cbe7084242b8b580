#include "rflab/ansatz.hpp"

#include "rflab/errors.hpp"

namespace rflab {

namespace {

PauliString two_qubit_gen(uint32_t n, char axis, uint32_t a, uint32_t b) {
  PauliString p(n);
  p.set(a, axis);
  p.set(b, axis);
  return p;
}

void append_r3(Circuit& c, uint32_t q, uint32_t& param) {
  c.gates.push_back(Gate::rotation(PauliString::single(c.n_qubits, 'Z', q), param++));
  c.gates.push_back(Gate::rotation(PauliString::single(c.n_qubits, 'Y', q), param++));
  c.gates.push_back(Gate::rotation(PauliString::single(c.n_qubits, 'Z', q), param++));
}

// Appends one two-qubit block on (a, b) and its block annotation.
void append_block(Circuit& c, BlockTemplate tmpl, uint32_t a, uint32_t b, uint32_t& param) {
  Block blk;
  blk.begin = static_cast<uint32_t>(c.gates.size());
  blk.support = {a, b};
  switch (tmpl) {
    case BlockTemplate::SU4:
      append_r3(c, a, param);
      append_r3(c, b, param);
      c.gates.push_back(Gate::rotation(two_qubit_gen(c.n_qubits, 'X', a, b), param++));
      c.gates.push_back(Gate::rotation(two_qubit_gen(c.n_qubits, 'Y', a, b), param++));
      c.gates.push_back(Gate::rotation(two_qubit_gen(c.n_qubits, 'Z', a, b), param++));
      append_r3(c, a, param);
      append_r3(c, b, param);
      blk.haar = true;
      break;
    case BlockTemplate::RyCZ:
      c.gates.push_back(Gate::rotation(PauliString::single(c.n_qubits, 'Y', a), param++));
      c.gates.push_back(Gate::rotation(PauliString::single(c.n_qubits, 'Y', b), param++));
      c.gates.push_back(Gate::fixed(GateKind::CZ, {a, b}));
      break;
    case BlockTemplate::RyCX:
      c.gates.push_back(Gate::rotation(PauliString::single(c.n_qubits, 'Y', a), param++));
      c.gates.push_back(Gate::rotation(PauliString::single(c.n_qubits, 'Y', b), param++));
      c.gates.push_back(Gate::fixed(GateKind::CX, {a, b}));
      break;
    case BlockTemplate::RxCX:
      c.gates.push_back(Gate::rotation(PauliString::single(c.n_qubits, 'X', a), param++));
      c.gates.push_back(Gate::rotation(PauliString::single(c.n_qubits, 'X', b), param++));
      c.gates.push_back(Gate::fixed(GateKind::CX, {a, b}));
      break;
    case BlockTemplate::Clifford:
      c.gates.push_back(Gate::random_clifford({a, b}));
      blk.haar = true;
      break;
  }
  blk.end = static_cast<uint32_t>(c.gates.size());
  c.blocks.push_back(std::move(blk));
}

}  // namespace

const char* block_template_name(BlockTemplate t) {
  switch (t) {
    case BlockTemplate::SU4: return "su4";
    case BlockTemplate::RyCZ: return "ry-cz";
    case BlockTemplate::RyCX: return "ry-cx";
    case BlockTemplate::RxCX: return "rx-cx";
    case BlockTemplate::Clifford: return "clifford";
  }
  return "?";
}

BlockTemplate block_template_from_name(const std::string& name) {
  if (name == "su4") return BlockTemplate::SU4;
  if (name == "ry-cz" || name == "rycz") return BlockTemplate::RyCZ;
  if (name == "ry-cx" || name == "rycx") return BlockTemplate::RyCX;
  if (name == "rx-cx" || name == "rxcx") return BlockTemplate::RxCX;
  if (name == "clifford") return BlockTemplate::Clifford;
  throw UsageError("unknown block template '" + name +
                   "' (su4, ry-cz, ry-cx, rx-cx, clifford)");
}

Circuit build_brickwall_1d(uint32_t n_qubits, uint32_t depth, BlockTemplate tmpl) {
  if (n_qubits < 2) throw UsageError("brickwall needs at least 2 qubits");
  Circuit c;
  c.n_qubits = n_qubits;
  uint32_t param = 0;
  if (depth == 0) {
    // Degenerate depth: one layer of independent single-qubit gates.
    for (uint32_t q = 0; q < n_qubits; ++q) {
      Block blk;
      blk.begin = static_cast<uint32_t>(c.gates.size());
      if (tmpl == BlockTemplate::Clifford) {
        c.gates.push_back(Gate::random_clifford({q}));
        blk.haar = true;
      } else {
        c.gates.push_back(Gate::rotation(PauliString::single(n_qubits, 'Y', q), param++));
      }
      blk.end = static_cast<uint32_t>(c.gates.size());
      blk.support = {q};
      c.blocks.push_back(std::move(blk));
    }
  } else {
    for (uint32_t layer = 0; layer < depth; ++layer) {
      uint32_t start = layer % 2;
      for (uint32_t a = start; a + 1 < n_qubits; a += 2)
        append_block(c, tmpl, a, a + 1, param);
    }
  }
  c.n_params = param;
  c.validate();
  return c;
}

Circuit build_ladder(uint32_t n_qubits, uint32_t layers) {
  if (n_qubits < 2) throw UsageError("ladder needs at least 2 qubits");
  if (layers < 1) throw UsageError("ladder needs at least 1 layer");
  Circuit c;
  c.n_qubits = n_qubits;
  uint32_t param = 0;
  for (uint32_t layer = 0; layer < layers; ++layer)
    for (uint32_t a = 0; a + 1 < n_qubits; ++a)
      append_block(c, BlockTemplate::SU4, a, a + 1, param);
  c.n_params = param;
  c.validate();
  return c;
}

Circuit build_hva_tfi(uint32_t n_qubits, uint32_t depth) {
  if (n_qubits < 2) throw UsageError("hva ansatz needs at least 2 qubits");
  if (depth < 1) throw UsageError("hva ansatz needs at least 1 layer");
  Circuit c;
  c.n_qubits = n_qubits;
  c.initial_state = InitialState::AllPlus;
  for (uint32_t layer = 0; layer < depth; ++layer) {
    int32_t p_zz = static_cast<int32_t>(2 * layer);
    int32_t p_x = p_zz + 1;
    for (uint32_t j = 0; j + 1 < n_qubits; ++j) {
      Block blk;
      blk.begin = static_cast<uint32_t>(c.gates.size());
      c.gates.push_back(Gate::rotation(two_qubit_gen(n_qubits, 'Z', j, j + 1), p_zz));
      blk.end = static_cast<uint32_t>(c.gates.size());
      blk.support = {j, j + 1};
      c.blocks.push_back(std::move(blk));
    }
    for (uint32_t j = 0; j < n_qubits; ++j) {
      Block blk;
      blk.begin = static_cast<uint32_t>(c.gates.size());
      c.gates.push_back(Gate::rotation(PauliString::single(n_qubits, 'X', j), p_x));
      blk.end = static_cast<uint32_t>(c.gates.size());
      blk.support = {j};
      c.blocks.push_back(std::move(blk));
    }
  }
  c.n_params = 2 * depth;
  c.validate();
  return c;
}

}  // namespace rflab
