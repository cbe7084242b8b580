#include "rflab/rf.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "rflab/errors.hpp"
#include "rflab/qfi.hpp"
#include "rflab/random_clifford.hpp"
#include "rflab/stabilizer.hpp"
#include "rflab/statevector.hpp"

namespace rflab {

const char* sample_engine_name(SampleEngine e) {
  return e == SampleEngine::Clifford ? "clifford" : "continuous";
}

SampleEngine sample_engine_from_name(const std::string& name) {
  if (name == "clifford") return SampleEngine::Clifford;
  if (name == "continuous") return SampleEngine::Continuous;
  throw UsageError("unknown engine '" + name + "' (clifford, continuous)");
}

const char* meff_policy_name(MeffPolicy p) {
  switch (p) {
    case MeffPolicy::Auto: return "auto";
    case MeffPolicy::UseQfi: return "qfi";
    case MeffPolicy::UseM: return "m";
  }
  return "?";
}

MeffPolicy meff_policy_from_name(const std::string& name) {
  if (name == "auto") return MeffPolicy::Auto;
  if (name == "qfi") return MeffPolicy::UseQfi;
  if (name == "m") return MeffPolicy::UseM;
  throw UsageError("unknown m_eff policy '" + name + "' (auto, qfi, m)");
}

void SamplePlan::validate() const {
  if (n_batches < 2) throw UsageError("sample plan needs at least 2 batches");
  if (n_samples % n_batches != 0)
    throw UsageError("n_samples must be divisible by n_batches");
  if (n_samples / n_batches < 2)
    throw UsageError("each batch needs at least 2 samples");
}

double sample_cost_clifford(const Circuit& c, const Hamiltonian& h, SplitRng& rng) {
  // Angle draws come first, one per param id, so that gate order and shared
  // parameters cannot change which draw a parameter receives.
  std::vector<int> ks(c.n_params);
  for (auto& k : ks) k = static_cast<int>(rng.next_below(4));

  StabilizerState state(c.n_qubits, c.initial_state);
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::Rotation:
        state.apply_discrete_rotation(g.generator, ks[g.param]);
        break;
      case GateKind::RandomClifford: {
        std::vector<Gate> local =
            sample_clifford_gates(static_cast<uint32_t>(g.qubits.size()), rng);
        std::vector<Gate> placed;
        append_remapped_gates(placed, local, g.qubits);
        for (const Gate& pg : placed) state.apply_fixed(pg.kind, pg.qubits);
        break;
      }
      default:
        state.apply_fixed(g.kind, g.qubits);
    }
  }
  return state.expectation(h);
}

double sample_cost_continuous(const Circuit& c, const Hamiltonian& h, SplitRng& rng) {
  std::vector<double> theta(c.n_params);
  for (auto& t : theta) t = rng.next_angle();
  DenseState state = evolve(c, theta);
  return state.expectation(h);
}

SigmaEstimate estimate_sigma(const Circuit& c, const Hamiltonian& h, const SamplePlan& plan) {
  plan.validate();
  c.validate();
  if (c.n_qubits != h.num_qubits())
    throw UsageError("circuit and Hamiltonian qubit counts differ");
  if (h.norm_l1() == 0.0)
    throw UsageError("Hamiltonian has no traceless part; sigma is undefined");

  uint64_t batch_size = plan.n_samples / plan.n_batches;
  std::vector<double> batch_sigma(plan.n_batches);
  double total_mean = 0.0;
  for (uint32_t b = 0; b < plan.n_batches; ++b) {
    // Welford over this batch's samples.
    double mean = 0.0, m2 = 0.0;
    for (uint64_t i = 0; i < batch_size; ++i) {
      uint64_t sample_index = uint64_t{b} * batch_size + i;
      SplitRng rng(plan.seed, sample_index);
      double cost = plan.engine == SampleEngine::Clifford
                        ? sample_cost_clifford(c, h, rng)
                        : sample_cost_continuous(c, h, rng);
      double delta = cost - mean;
      mean += delta / static_cast<double>(i + 1);
      m2 += delta * (cost - mean);
    }
    double var = m2 / static_cast<double>(batch_size - 1);
    batch_sigma[b] = std::sqrt(std::max(0.0, var)) / h.norm_l1();
    total_mean += mean;
  }

  SigmaEstimate est;
  for (double s : batch_sigma) est.sigma += s;
  est.sigma /= plan.n_batches;
  double var_b = 0.0;
  for (double s : batch_sigma) var_b += (s - est.sigma) * (s - est.sigma);
  var_b /= (plan.n_batches - 1);
  est.sigma_stderr = std::sqrt(var_b / plan.n_batches);
  est.mean_cost = total_mean / plan.n_batches;
  return est;
}

double sigma_zero(uint64_t m_eff) {
  if (m_eff == 0) throw UsageError("sigma0 needs m_eff >= 1");
  return 1.0 / std::sqrt(2.0 * static_cast<double>(m_eff));
}

double sigma_haar(const Hamiltonian& h) {
  if (h.norm_l1() == 0.0) return 0.0;
  double dim = std::ldexp(1.0, static_cast<int>(h.num_qubits()));
  return h.norm_l2() / (h.norm_l1() * std::sqrt(dim + 1.0));
}

double theorem1_bound(const Hamiltonian& h, uint32_t chi, uint32_t beta) {
  if (h.norm_l1() == 0.0) return 0.0;
  double exponent = -static_cast<double>(h.locality()) * chi * beta;
  return std::exp2(exponent) * h.norm_l2() / h.norm_l1();
}

RFReport relative_fluctuation(const Circuit& c, const Hamiltonian& h, const SamplePlan& plan,
                              MeffPolicy policy, uint32_t qfi_points) {
  c.validate();
  RFReport rep;
  rep.n_qubits = c.n_qubits;
  rep.m = c.n_params;
  rep.n_samples = plan.n_samples;
  rep.n_batches = plan.n_batches;
  rep.seed = plan.seed;
  rep.norm_l1 = h.norm_l1();
  rep.norm_l2 = h.norm_l2();
  rep.locality = h.locality();
  rep.chi = local_depth(c);
  rep.beta = max_block_size(c);
  rep.engine = sample_engine_name(plan.engine);
  if (plan.engine == SampleEngine::Clifford && c.has_shared_params()) {
    rep.engine = "clifford-approximate";
    rep.warning =
        "shared parameters break the exact discrete/continuous equivalence; "
        "Clifford sampling is approximate here (continuous engine is exact)";
  }

  SigmaEstimate est = estimate_sigma(c, h, plan);
  rep.sigma = est.sigma;
  rep.sigma_stderr = est.sigma_stderr;
  rep.mean_cost = est.mean_cost + h.offset();
  rep.sigma_haar = sigma_haar(h);
  rep.theorem1_bound = theorem1_bound(h, rep.chi, rep.beta);

  MeffPolicy resolved = policy;
  if (resolved == MeffPolicy::Auto) {
    bool qfi_ok = c.n_qubits <= DenseState::kMaxQubits && c.n_params >= 1 &&
                  c.n_params <= kAutoQfiMaxParams && !c.has_random_clifford();
    resolved = qfi_ok ? MeffPolicy::UseQfi : MeffPolicy::UseM;
  }

  uint64_t dim_count = 0;
  if (resolved == MeffPolicy::UseQfi) {
    if (c.n_qubits > DenseState::kMaxQubits)
      throw CapError("QFI-based m_eff needs the dense engine (N <= 20); pass the raw-M "
                     "policy (--meff m) instead");
    if (c.has_random_clifford())
      throw EngineError("QFI-based m_eff is undefined for random-Clifford gates; pass "
                        "the raw-M policy (--meff m) instead");
    // Decorrelated from the sample streams.
    uint32_t m_eff = effective_dimension(c, qfi_points, plan.seed ^ 0x9e3779b97f4a7c15ULL);
    rep.m_eff = m_eff;
    rep.m_eff_source = "qfi";
    dim_count = m_eff;
  } else {
    rep.m_eff_source = "m";
    dim_count = c.n_params;
  }

  if (rep.m >= 1) {
    rep.rf_m = std::sqrt(2.0 * rep.m) * rep.sigma;
    rep.rf_m_stderr = std::sqrt(2.0 * rep.m) * rep.sigma_stderr;
  }
  if (dim_count >= 1) {
    rep.sigma0 = sigma_zero(dim_count);
    rep.rf = rep.sigma / rep.sigma0;
    rep.rf_stderr = rep.sigma_stderr / rep.sigma0;
  } else {
    rep.sigma0 = rep.rf = rep.rf_stderr = 0.0;
    if (rep.warning.empty())
      rep.warning = "no tunable parameters: sigma0 and rf are undefined (reported as 0)";
  }
  return rep;
}

std::string RFReport::to_json() const {
  nlohmann::json j;
  j["sigma"] = sigma;
  j["sigma_stderr"] = sigma_stderr;
  j["mean_cost"] = mean_cost;
  j["n_qubits"] = n_qubits;
  j["m"] = m;
  if (m_eff) j["m_eff"] = *m_eff;
  j["m_eff_source"] = m_eff_source;
  j["sigma0"] = sigma0;
  j["rf"] = rf;
  j["rf_stderr"] = rf_stderr;
  j["rf_m"] = rf_m;
  j["rf_m_stderr"] = rf_m_stderr;
  j["sigma_haar"] = sigma_haar;
  j["theorem1_bound"] = theorem1_bound;
  j["chi"] = chi;
  j["beta"] = beta;
  j["locality"] = locality;
  j["norm_l1"] = norm_l1;
  j["norm_l2"] = norm_l2;
  j["n_samples"] = n_samples;
  j["n_batches"] = n_batches;
  j["seed"] = seed;
  j["engine"] = engine;
  if (!warning.empty()) j["warning"] = warning;
  return j.dump(2);
}

}  // namespace rflab
