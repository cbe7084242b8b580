#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rflab/circuit.hpp"
#include "rflab/hamiltonian.hpp"
#include "rflab/rng.hpp"

namespace rflab {

enum class SampleEngine : uint8_t { Clifford, Continuous };

const char* sample_engine_name(SampleEngine e);
SampleEngine sample_engine_from_name(const std::string& name);

struct SamplePlan {
  uint64_t n_samples = 2000;
  uint32_t n_batches = 10;
  uint64_t seed = 0;
  SampleEngine engine = SampleEngine::Clifford;

  void validate() const;  // n_batches >= 2, n_samples divisible, batch size >= 2
};

// One landscape draw.  Clifford: every rotation angle is drawn from
// {0, pi/2, pi, 3pi/2} (gates sharing a param id share the draw) and each
// RandomClifford gate gets a fresh uniform Clifford; evolved on a tableau.
// Continuous: angles uniform in [0, 2pi), evolved densely.
// Both return the cost over the traceless part of H.
double sample_cost_clifford(const Circuit& c, const Hamiltonian& h, SplitRng& rng);
double sample_cost_continuous(const Circuit& c, const Hamiltonian& h, SplitRng& rng);

struct SigmaEstimate {
  double sigma = 0.0;         // mean over batches of sqrt(batch var)/l1
  double sigma_stderr = 0.0;  // std over batches / sqrt(n_batches)
  double mean_cost = 0.0;     // traceless part only
};

// Per-sample RNG streams are keyed by absolute sample index, so results are
// bit-identical regardless of how batches are scheduled.
SigmaEstimate estimate_sigma(const Circuit& c, const Hamiltonian& h, const SamplePlan& plan);

double sigma_zero(uint64_t m_eff);                   // 1/sqrt(2 m_eff)
double sigma_haar(const Hamiltonian& h);             // l2 / (l1 sqrt(2^N + 1))
double theorem1_bound(const Hamiltonian& h, uint32_t chi, uint32_t beta);

// How sigma0's dimension count is chosen: the QFI rank (exact but needs the
// dense engine) or the raw parameter count M.  Auto picks QFI whenever it is
// affordable (N within the dense cap, M <= 4096, no random-Clifford gates).
enum class MeffPolicy : uint8_t { Auto, UseQfi, UseM };

const char* meff_policy_name(MeffPolicy p);
MeffPolicy meff_policy_from_name(const std::string& name);

struct RFReport {
  // estimate
  double sigma = 0.0;
  double sigma_stderr = 0.0;
  double mean_cost = 0.0;  // offset included
  // dimensions
  uint32_t n_qubits = 0;
  uint32_t m = 0;
  std::optional<uint32_t> m_eff;  // present only when the QFI rank was computed
  std::string m_eff_source;       // "qfi" or "m"
  // relative fluctuation under the resolved policy
  double sigma0 = 0.0;
  double rf = 0.0;
  double rf_stderr = 0.0;
  // always-available raw-M variant sqrt(2M) * sigma (0 when m == 0)
  double rf_m = 0.0;
  double rf_m_stderr = 0.0;
  // references
  double sigma_haar = 0.0;
  double theorem1_bound = 0.0;
  uint32_t chi = 0, beta = 0, locality = 0;
  double norm_l1 = 0.0, norm_l2 = 0.0;
  // provenance
  uint64_t n_samples = 0;
  uint32_t n_batches = 0;
  uint64_t seed = 0;
  std::string engine;  // "clifford", "clifford-approximate", "continuous"
  std::string warning;

  std::string to_json() const;
};

// Assembles sigma, sigma0, rf = sigma/sigma0 and the reference values.
// With shared parameters the Clifford engine is only approximate; the report
// then carries engine = "clifford-approximate" and a warning.
RFReport relative_fluctuation(const Circuit& c, const Hamiltonian& h, const SamplePlan& plan,
                              MeffPolicy policy = MeffPolicy::Auto,
                              uint32_t qfi_points = 3);

inline constexpr uint32_t kAutoQfiMaxParams = 4096;

}  // namespace rflab
