#include "rflab/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "rflab/errors.hpp"

namespace rflab {

namespace {

constexpr const char* kKindNames[] = {"h", "s", "sdg", "x", "y", "z",
                                      "cx", "cz", "swap", "rot", "random_clifford"};

uint32_t fixed_gate_arity(GateKind k) {
  switch (k) {
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::Swap:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

const char* gate_kind_name(GateKind k) { return kKindNames[static_cast<int>(k)]; }

GateKind gate_kind_from_name(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(GateKind::RandomClifford); ++i)
    if (name == kKindNames[i]) return static_cast<GateKind>(i);
  throw UsageError("unknown gate kind '" + name + "'");
}

Gate Gate::fixed(GateKind k, std::vector<uint32_t> qs) {
  Gate g;
  g.kind = k;
  g.qubits = std::move(qs);
  return g;
}

Gate Gate::rotation(PauliString generator, int32_t param) {
  Gate g;
  g.kind = GateKind::Rotation;
  g.qubits = generator.support();
  g.generator = std::move(generator);
  g.param = param;
  return g;
}

Gate Gate::random_clifford(std::vector<uint32_t> qs) {
  Gate g;
  g.kind = GateKind::RandomClifford;
  g.qubits = std::move(qs);
  return g;
}

void Circuit::validate() const {
  std::vector<uint32_t> param_uses(n_params, 0);
  for (size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    for (uint32_t q : g.qubits)
      if (q >= n_qubits) throw UsageError("gate qubit index out of range");
    std::set<uint32_t> uniq(g.qubits.begin(), g.qubits.end());
    if (uniq.size() != g.qubits.size()) throw UsageError("gate lists a qubit twice");
    if (g.kind == GateKind::Rotation) {
      if (g.generator.num_qubits() != n_qubits)
        throw UsageError("rotation generator width does not match circuit");
      if (g.generator.is_identity()) throw UsageError("rotation generator is identity");
      if (g.generator.sign() != 1) throw UsageError("rotation generator must carry sign +1");
      if (g.qubits != g.generator.support())
        throw UsageError("rotation qubit list does not match generator support");
      if (g.param < 0 || static_cast<uint32_t>(g.param) >= n_params)
        throw UsageError("rotation param id out of range");
      ++param_uses[g.param];
    } else if (g.kind == GateKind::RandomClifford) {
      if (g.qubits.empty() || g.qubits.size() > 2)
        throw UsageError("random clifford blocks act on 1 or 2 qubits");
    } else {
      if (g.qubits.size() != fixed_gate_arity(g.kind))
        throw UsageError("wrong qubit count for fixed gate");
    }
  }
  for (uint32_t p = 0; p < n_params; ++p)
    if (param_uses[p] == 0)
      throw UsageError("param id " + std::to_string(p) + " is unused; ids must be dense");

  uint32_t cursor = 0;
  for (const Block& b : blocks) {
    if (b.begin < cursor || b.end > gates.size() || b.begin >= b.end)
      throw UsageError("block ranges must be ascending, non-overlapping, in bounds");
    cursor = b.end;
    std::set<uint32_t> declared(b.support.begin(), b.support.end());
    std::set<uint32_t> actual;
    for (uint32_t i = b.begin; i < b.end; ++i)
      actual.insert(gates[i].qubits.begin(), gates[i].qubits.end());
    if (declared != actual)
      throw UsageError("block support does not match the gates inside its range");
    if (b.haar) {
      for (uint32_t i = b.begin; i < b.end; ++i)
        if (gates[i].kind != GateKind::Rotation && gates[i].kind != GateKind::RandomClifford)
          throw UsageError("haar block gates must be rotations or random cliffords");
    }
  }
}

bool Circuit::has_shared_params() const {
  std::vector<uint32_t> uses(n_params, 0);
  for (const Gate& g : gates)
    if (g.kind == GateKind::Rotation && ++uses[g.param] > 1) return true;
  return false;
}

bool Circuit::has_random_clifford() const {
  return std::any_of(gates.begin(), gates.end(),
                     [](const Gate& g) { return g.kind == GateKind::RandomClifford; });
}

std::string Circuit::to_json() const {
  nlohmann::json j;
  j["n_qubits"] = n_qubits;
  j["initial_state"] = initial_state == InitialState::AllZero ? "zero" : "plus";
  j["n_params"] = n_params;
  j["gates"] = nlohmann::json::array();
  for (const Gate& g : gates) {
    nlohmann::json jg;
    jg["kind"] = gate_kind_name(g.kind);
    if (g.kind == GateKind::Rotation) {
      jg["generator"] = g.generator.word();
      jg["param"] = g.param;
    } else {
      jg["qubits"] = g.qubits;
    }
    j["gates"].push_back(std::move(jg));
  }
  j["blocks"] = nlohmann::json::array();
  for (const Block& b : blocks) {
    nlohmann::json jb;
    jb["range"] = {b.begin, b.end};
    jb["support"] = b.support;
    if (b.haar) jb["haar"] = true;
    j["blocks"].push_back(std::move(jb));
  }
  return j.dump(2);
}

Circuit Circuit::from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad circuit json: ") + e.what());
  }
  Circuit c;
  try {
    c.n_qubits = j.at("n_qubits").get<uint32_t>();
    std::string init = j.value("initial_state", "zero");
    if (init == "zero") c.initial_state = InitialState::AllZero;
    else if (init == "plus") c.initial_state = InitialState::AllPlus;
    else throw UsageError("unknown initial_state '" + init + "'");
    c.n_params = j.value("n_params", 0u);
    for (const auto& jg : j.at("gates")) {
      GateKind kind = gate_kind_from_name(jg.at("kind").get<std::string>());
      if (kind == GateKind::Rotation) {
        PauliString gen = PauliString::from_word(c.n_qubits, jg.at("generator").get<std::string>());
        c.gates.push_back(Gate::rotation(std::move(gen), jg.at("param").get<int32_t>()));
      } else {
        c.gates.push_back(Gate::fixed(kind, jg.at("qubits").get<std::vector<uint32_t>>()));
      }
    }
    for (const auto& jb : j.value("blocks", nlohmann::json::array())) {
      Block b;
      b.begin = jb.at("range").at(0).get<uint32_t>();
      b.end = jb.at("range").at(1).get<uint32_t>();
      b.support = jb.at("support").get<std::vector<uint32_t>>();
      b.haar = jb.value("haar", false);
      c.blocks.push_back(std::move(b));
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad circuit json: ") + e.what());
  }
  c.validate();
  return c;
}

// --- analyses ----------------------------------------------------------------

uint32_t local_depth(const Circuit& c) {
  std::vector<uint32_t> touches(c.n_qubits, 0);
  for (const Block& b : c.blocks)
    for (uint32_t q : b.support) ++touches[q];
  uint32_t chi = 0;
  for (uint32_t t : touches) chi = std::max(chi, t);
  return chi;
}

uint32_t max_block_size(const Circuit& c) {
  uint32_t beta = 0;
  for (const Block& b : c.blocks)
    beta = std::max(beta, static_cast<uint32_t>(b.support.size()));
  return beta;
}

CausalCone causal_cone(const Circuit& c, const std::vector<uint32_t>& observable_support) {
  std::vector<bool> in_cone(c.n_qubits, false);
  for (uint32_t q : observable_support) {
    if (q >= c.n_qubits) throw UsageError("observable support qubit out of range");
    in_cone[q] = true;
  }
  CausalCone cone;
  for (size_t i = c.gates.size(); i-- > 0;) {
    const Gate& g = c.gates[i];
    bool touches = std::any_of(g.qubits.begin(), g.qubits.end(),
                               [&](uint32_t q) { return in_cone[q]; });
    if (!touches) continue;
    cone.gate_indices.push_back(static_cast<uint32_t>(i));
    for (uint32_t q : g.qubits) in_cone[q] = true;
  }
  std::reverse(cone.gate_indices.begin(), cone.gate_indices.end());
  for (uint32_t q = 0; q < c.n_qubits; ++q)
    if (in_cone[q]) cone.qubits.push_back(q);
  return cone;
}

LocalOverparamRatio local_overparam_ratio(const Circuit& c,
                                          const std::vector<uint32_t>& observable_support) {
  CausalCone cone = causal_cone(c, observable_support);
  std::unordered_set<int32_t> params;
  for (uint32_t i : cone.gate_indices) {
    const Gate& g = c.gates[i];
    if (g.kind == GateKind::Rotation) params.insert(g.param);
  }
  LocalOverparamRatio r;
  r.m_cone = static_cast<uint32_t>(params.size());
  r.cone_qubits = static_cast<uint32_t>(cone.qubits.size());
  if (r.cone_qubits > 62) {
    // 2^k no longer fits; the ratio underflows to zero for any realistic M.
    r.underflow = true;
    r.gamma = 0.0;
    return r;
  }
  double d_cone = std::ldexp(1.0, static_cast<int>(r.cone_qubits));
  r.gamma = r.m_cone / (2.0 * d_cone);
  return r;
}

double brickwall_gamma_estimate(uint32_t depth, uint32_t beta, double local_dim) {
  double d = local_dim;
  double numer = static_cast<double>(depth) * (2.0 * depth + 1.0) *
                 (std::pow(d, 2.0 * beta) - 1.0);
  double denom = 2.0 * std::pow(d, 2.0 * depth * beta);
  return numer / denom;
}

Circuit fold_back_evolution(const Circuit& ansatz, const Circuit& v) {
  if (ansatz.n_qubits != v.n_qubits)
    throw UsageError("ansatz and back-evolution circuit act on different qubit counts");
  if (v.n_params != 0 || v.has_random_clifford() ||
      std::any_of(v.gates.begin(), v.gates.end(),
                  [](const Gate& g) { return g.kind == GateKind::Rotation; }))
    throw UsageError("back-evolution circuit must be all-Clifford with no parameters");
  Circuit out = ansatz;
  uint32_t offset = static_cast<uint32_t>(out.gates.size());
  out.gates.insert(out.gates.end(), v.gates.begin(), v.gates.end());
  for (const Block& b : v.blocks) {
    Block nb = b;
    nb.begin += offset;
    nb.end += offset;
    out.blocks.push_back(std::move(nb));
  }
  return out;
}

}  // namespace rflab
