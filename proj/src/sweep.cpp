#include "rflab/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "rflab/errors.hpp"

namespace rflab {

namespace {

// Shortest decimal string that round-trips to the same double, so rewritten
// CSV files are byte-identical across runs.
std::string fmt_double(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, end);
}

std::string fmt_key(uint64_t key) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(key));
  return buf;
}

// Error text is embedded in an unquoted CSV cell; keep it one clean line.
std::string sanitize_error(std::string text) {
  for (char& ch : text) {
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  }
  return text;
}

void hash_str(uint64_t& h, const std::string& s) {
  h = fnv1a(s.data(), s.size(), h);
  h = fnv1a(";", 1, h);
}

std::string cell_prefix(const SweepCell& cell) {
  std::ostringstream os;
  os << "family=" << model_family_name(cell.family) << ";n=" << cell.n_qubits
     << ";depth=" << cell.depth << ";template=" << block_template_name(cell.tmpl)
     << ";h=" << fmt_double(cell.h) << ";instance=" << cell.instance;
  return os.str();
}

bool family_uses_field(ModelFamily f) {
  return f == ModelFamily::ClusterZXZ || f == ModelFamily::TFI;
}

const char* const kCsvHeader =
    "key,n,depth,template,family,h,instance,m,m_eff,sigma,sigma_stderr,sigma0,"
    "rf,rf_stderr,rf_m,rf_m_stderr,sigma_haar,bound,seed,model_seed,engine,error";

}  // namespace

uint64_t sweep_cell_key(const SweepCell& cell, const SamplePlan& plan, MeffPolicy policy) {
  uint64_t h = fnv1a("cell", 4);
  hash_str(h, cell_prefix(cell));
  std::ostringstream os;
  os << "samples=" << plan.n_samples << ";batches=" << plan.n_batches
     << ";seed=" << plan.seed << ";engine=" << sample_engine_name(plan.engine)
     << ";policy=" << meff_policy_name(policy);
  hash_str(h, os.str());
  return h;
}

uint64_t sweep_model_seed(const SweepCell& cell) {
  uint64_t h = fnv1a("model", 5);
  hash_str(h, cell_prefix(cell));
  return h;
}

SweepRow evaluate_cell(const SweepCell& cell, const SamplePlan& plan, MeffPolicy policy) {
  SweepRow row;
  row.cell = cell;
  row.key = sweep_cell_key(cell, plan, policy);
  row.model_seed = sweep_model_seed(cell);
  row.cell_seed = row.key;
  row.report.engine = sample_engine_name(plan.engine);  // kept on error rows
  try {
    ModelSpec ms;
    ms.family = cell.family;
    ms.n_qubits = cell.n_qubits;
    ms.h = cell.h;
    ms.depth = cell.depth;  // back-evolution depth tracks the ansatz depth
    ms.seed = row.model_seed;
    BuiltModel model = build_model(ms);
    Circuit c = build_brickwall_1d(cell.n_qubits, cell.depth, cell.tmpl);
    SamplePlan p = plan;
    p.seed = row.cell_seed;
    row.report = relative_fluctuation(c, model.ham, p, policy);
    row.ok = true;
  } catch (const std::exception& e) {
    row.error = sanitize_error(e.what());
  }
  return row;
}

std::string sweep_csv_header() { return kCsvHeader; }

std::string sweep_csv_row(const SweepRow& row) {
  const RFReport& r = row.report;
  std::ostringstream os;
  os << fmt_key(row.key) << ',' << row.cell.n_qubits << ',' << row.cell.depth << ','
     << block_template_name(row.cell.tmpl) << ',' << model_family_name(row.cell.family) << ','
     << fmt_double(row.cell.h) << ',' << row.cell.instance << ',';
  if (row.ok) {
    os << r.m << ',';
    if (r.m_eff) os << *r.m_eff;
    os << ',' << fmt_double(r.sigma) << ',' << fmt_double(r.sigma_stderr) << ','
       << fmt_double(r.sigma0) << ',' << fmt_double(r.rf) << ',' << fmt_double(r.rf_stderr)
       << ',' << fmt_double(r.rf_m) << ',' << fmt_double(r.rf_m_stderr) << ','
       << fmt_double(r.sigma_haar) << ',' << fmt_double(r.theorem1_bound) << ',';
  } else {
    os << ",,,,,,,,,,,";  // m .. bound stay empty on error rows
  }
  os << row.cell_seed << ',' << row.model_seed << ',' << r.engine << ',' << row.error;
  return os.str();
}

std::unordered_map<uint64_t, std::string> read_completed_rows(const std::string& csv_path) {
  std::unordered_map<uint64_t, std::string> rows;
  std::ifstream in(csv_path);
  if (!in) return rows;
  std::string line;
  if (!std::getline(in, line)) return rows;
  if (line != kCsvHeader) return rows;  // schema changed: recompute everything
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto first_comma = line.find(',');
    auto last_comma = line.rfind(',');
    if (first_comma == std::string::npos || last_comma + 1 < line.size()) continue;
    uint64_t key = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + first_comma, key, 16);
    if (ec != std::errc() || ptr != line.data() + first_comma) continue;
    rows.emplace(key, line);
  }
  return rows;
}

SweepConfig SweepConfig::from_json(const std::string& text) {
  using nlohmann::json;
  SweepConfig cfg;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("sweep config: ") + e.what());
  }
  try {
    for (const auto& [k, v] : j.items()) {
      if (k != "axes" && k != "plan" && k != "m_eff_policy" && k != "output")
        throw UsageError("sweep config: unknown key '" + k + "'");
      (void)v;
    }
    if (!j.contains("axes")) throw UsageError("sweep config: missing 'axes'");
    const json& axes = j.at("axes");
    for (const auto& [k, v] : axes.items()) {
      if (k == "n_qubits") {
        cfg.n_qubits = v.get<std::vector<uint32_t>>();
      } else if (k == "depth") {
        cfg.depths = v.get<std::vector<uint32_t>>();
      } else if (k == "template") {
        cfg.templates.clear();
        for (const auto& name : v) cfg.templates.push_back(block_template_from_name(name.get<std::string>()));
      } else if (k == "family") {
        cfg.families.clear();
        for (const auto& name : v) cfg.families.push_back(model_family_from_name(name.get<std::string>()));
      } else if (k == "h") {
        cfg.fields = v.get<std::vector<double>>();
      } else if (k == "instances") {
        cfg.instances = v.get<uint32_t>();
      } else {
        throw UsageError("sweep config: unknown axis '" + k + "'");
      }
    }
    if (j.contains("plan")) {
      const json& p = j.at("plan");
      for (const auto& [k, v] : p.items()) {
        if (k == "samples") {
          cfg.plan.n_samples = v.get<uint64_t>();
        } else if (k == "batches") {
          cfg.plan.n_batches = v.get<uint32_t>();
        } else if (k == "seed") {
          cfg.plan.seed = v.get<uint64_t>();
        } else if (k == "engine") {
          cfg.plan.engine = sample_engine_from_name(v.get<std::string>());
        } else {
          throw UsageError("sweep config: unknown plan key '" + k + "'");
        }
      }
    }
    if (j.contains("m_eff_policy")) cfg.policy = meff_policy_from_name(j.at("m_eff_policy").get<std::string>());
    if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("sweep config: ") + e.what());
  }
  if (cfg.n_qubits.empty()) throw UsageError("sweep config: axis 'n_qubits' is required and non-empty");
  if (cfg.depths.empty()) throw UsageError("sweep config: axis 'depth' is required and non-empty");
  if (cfg.templates.empty() || cfg.families.empty() || cfg.fields.empty())
    throw UsageError("sweep config: axes must be non-empty");
  if (cfg.instances == 0) throw UsageError("sweep config: 'instances' must be >= 1");
  cfg.plan.validate();
  return cfg;
}

std::vector<SweepCell> SweepConfig::cells() const {
  std::vector<SweepCell> out;
  const std::vector<double> zero{0.0};
  for (ModelFamily family : families) {
    // Field-free families collapse the h axis so a mixed-family sweep does
    // not duplicate identical rows.
    const std::vector<double>& hs = family_uses_field(family) ? fields : zero;
    uint32_t n_inst = family == ModelFamily::RandomBackEvolved ? instances : 1;
    for (uint32_t n : n_qubits)
      for (uint32_t d : depths)
        for (BlockTemplate t : templates)
          for (double h : hs)
            for (uint32_t i = 0; i < n_inst; ++i)
              out.push_back(SweepCell{family, n, d, t, h, i});
  }
  return out;
}

SweepSummary run_sweep_to_csv(const SweepConfig& cfg, unsigned jobs, std::ostream* log) {
  if (cfg.output.empty()) throw UsageError("sweep config: 'output' path is required");
  const std::vector<SweepCell> grid = cfg.cells();
  if (grid.empty()) throw UsageError("sweep axes produce an empty grid");

  auto cached = read_completed_rows(cfg.output);
  std::vector<std::optional<std::string>> lines(grid.size());
  std::vector<size_t> todo;
  SweepSummary summary;
  summary.total = grid.size();
  for (size_t i = 0; i < grid.size(); ++i) {
    uint64_t key = sweep_cell_key(grid[i], cfg.plan, cfg.policy);
    auto it = cached.find(key);
    if (it != cached.end()) {
      lines[i] = it->second;
      ++summary.reused;
    } else {
      todo.push_back(i);
    }
  }
  if (log) {
    *log << "sweep: " << grid.size() << " cells (" << summary.reused << " cached, " << todo.size()
         << " to run)\n";
  }

  std::mutex mu;
  auto flush = [&]() {  // caller holds mu
    std::string tmp = cfg.output + ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw UsageError("cannot write sweep output: " + cfg.output);
      out << kCsvHeader << '\n';
      for (const auto& line : lines)
        if (line) out << *line << '\n';
    }
    std::filesystem::rename(tmp, cfg.output);
  };

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t t = next.fetch_add(1);
      if (t >= todo.size()) return;
      size_t idx = todo[t];
      SweepRow row = evaluate_cell(grid[idx], cfg.plan, cfg.policy);
      std::lock_guard<std::mutex> lock(mu);
      lines[idx] = sweep_csv_row(row);
      ++summary.computed;
      if (!row.ok) ++summary.failed;
      flush();
      if (log) {
        *log << "  [" << summary.reused + summary.computed << "/" << grid.size() << "] "
             << cell_prefix(grid[idx]) << (row.ok ? "" : "  ERROR: " + row.error) << '\n';
      }
    }
  };

  unsigned n_workers = std::max(1u, jobs);
  n_workers = static_cast<unsigned>(std::min<size_t>(n_workers, std::max<size_t>(todo.size(), 1)));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::lock_guard<std::mutex> lock(mu);
  flush();  // covers the all-cached case and reorders stale files
  return summary;
}

}  // namespace rflab
