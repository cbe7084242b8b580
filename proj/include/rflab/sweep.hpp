#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "rflab/ansatz.hpp"
#include "rflab/models.hpp"
#include "rflab/rf.hpp"

namespace rflab {

// One point of a sweep grid: a model instance paired with a brickwall ansatz.
// For the random-back-evolved family the scrambler V uses the same depth as
// the ansatz, and `instance` selects which random draw of V is built.
struct SweepCell {
  ModelFamily family = ModelFamily::ClusterZXZ;
  uint32_t n_qubits = 0;
  uint32_t depth = 0;
  BlockTemplate tmpl = BlockTemplate::SU4;
  double h = 0.0;
  uint32_t instance = 0;
};

struct SweepConfig {
  std::vector<uint32_t> n_qubits;
  std::vector<uint32_t> depths;
  std::vector<BlockTemplate> templates{BlockTemplate::SU4};
  std::vector<ModelFamily> families{ModelFamily::ClusterZXZ};
  std::vector<double> fields{0.0};
  uint32_t instances = 3;  // random-back-evolved draws per grid point
  SamplePlan plan;
  MeffPolicy policy = MeffPolicy::Auto;
  std::string output;  // CSV path

  static SweepConfig from_json(const std::string& text);

  // Cross product in fixed nesting order (family, n, depth, template, h,
  // instance); only the random-back-evolved family expands the instance axis.
  std::vector<SweepCell> cells() const;
};

struct SweepRow {
  SweepCell cell;
  uint64_t key = 0;         // content hash of cell + plan + policy
  uint64_t model_seed = 0;  // derives the model instance (V draw)
  uint64_t cell_seed = 0;   // sampling seed actually used for this cell
  bool ok = false;
  RFReport report;     // valid when ok
  std::string error;   // single-line failure description when !ok
};

// Resume key: hashes everything that influences the row's numbers, so any
// change to the grid point, sample plan, or m_eff policy forces a recompute.
uint64_t sweep_cell_key(const SweepCell& cell, const SamplePlan& plan, MeffPolicy policy);

// Model instances depend only on the grid point, not on the sample plan, so
// e.g. a depth scan at a different seed or sample count still sees the same
// random Hamiltonians.
uint64_t sweep_model_seed(const SweepCell& cell);

SweepRow evaluate_cell(const SweepCell& cell, const SamplePlan& plan, MeffPolicy policy);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

// Raw CSV lines of previously completed rows (error column empty), keyed by
// the resume hash in the first column.  Missing file -> empty map.
std::unordered_map<uint64_t, std::string> read_completed_rows(const std::string& csv_path);

struct SweepSummary {
  size_t total = 0;
  size_t reused = 0;
  size_t computed = 0;
  size_t failed = 0;  // rows with a non-empty error column
};

// Evaluates every cell not already present in cfg.output, with up to `jobs`
// worker threads, rewriting the CSV after each completion so an interrupted
// run can resume.  Rows appear in configuration order regardless of which
// worker finished first.  Status lines go to `log` when non-null.
SweepSummary run_sweep_to_csv(const SweepConfig& cfg, unsigned jobs, std::ostream* log);

}  // namespace rflab
