#include "rflab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rflab/ansatz.hpp"
#include "rflab/circuit.hpp"
#include "rflab/errors.hpp"
#include "rflab/hamiltonian.hpp"
#include "rflab/models.hpp"
#include "rflab/qfi.hpp"
#include "rflab/rf.hpp"
#include "rflab/rng.hpp"
#include "rflab/sweep.hpp"
#include "rflab/trainer.hpp"

namespace rflab {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write file: " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::string fmt_g(double v, int prec = 6) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

// Shortest decimal string that round-trips to the same double (CSV output).
std::string fmt_exact(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

std::string fmt_pm(double v, double err, int prec = 4) {
  return fmt_g(v, prec) + " +/- " + fmt_g(err, 2);
}

unsigned resolve_jobs(unsigned flag) {
  if (flag > 0) return flag;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1u;
}

// ---------------------------------------------------------------------------
// Shared flag groups

struct GlobalFlags {
  uint64_t seed = 0;
  uint64_t samples = 2000;
  uint32_t batches = 10;
  std::string engine;  // empty: clifford, or continuous when params are shared
  std::string meff = "auto";
  unsigned jobs = 0;  // 0 = hardware concurrency
  std::string out;
};

struct BuilderFlags {
  std::string circuit_file;
  std::string ansatz = "brickwall";
  std::string tmpl = "su4";
  uint32_t n = 0;
  uint32_t depth = 1;
};

struct ModelFlags {
  std::string ham_file;
  std::string family;
  double h = 0.0;
  std::optional<uint32_t> v_depth;  // random-back-evolved V depth
  uint64_t model_seed = 0;
};

void add_builder_flags(CLI::App* cmd, BuilderFlags& b) {
  cmd->add_option("--circuit", b.circuit_file, "read the ansatz from a circuit JSON file");
  cmd->add_option("--ansatz", b.ansatz, "ansatz family: brickwall | hva-tfi | ladder")
      ->capture_default_str();
  cmd->add_option("--template", b.tmpl,
                  "brickwall block template: su4 | rycz | rycx | rxcx | clifford")
      ->capture_default_str();
  cmd->add_option("-n,--n", b.n, "number of qubits");
  cmd->add_option("-d,--depth", b.depth, "circuit depth D")->capture_default_str();
}

void add_model_flags(CLI::App* cmd, ModelFlags& m) {
  cmd->add_option("--hamiltonian", m.ham_file, "read the Hamiltonian from a JSON file");
  cmd->add_option("--model", m.family,
                  "model family: cluster | tfi | polarization-z | polarization-x | "
                  "random-back-evolved");
  cmd->add_option("--h", m.h, "transverse field strength (cluster / tfi)")
      ->capture_default_str();
  cmd->add_option("--v-depth", m.v_depth,
                  "random-back-evolved: depth of the scrambler V (default: ansatz depth)");
  cmd->add_option("--model-seed", m.model_seed, "random-back-evolved: seed for the draw of V")
      ->capture_default_str();
}

Circuit make_ansatz(const BuilderFlags& b) {
  if (!b.circuit_file.empty()) {
    Circuit c = Circuit::from_json(read_file(b.circuit_file));
    c.validate();
    return c;
  }
  if (b.n == 0)
    throw UsageError("specify --circuit FILE or an ansatz via --n (with --ansatz/--template/--depth)");
  if (b.ansatz == "brickwall")
    return build_brickwall_1d(b.n, b.depth, block_template_from_name(b.tmpl));
  if (b.ansatz == "hva-tfi") return build_hva_tfi(b.n, b.depth);
  if (b.ansatz == "ladder") return build_ladder(b.n, b.depth);
  throw UsageError("unknown ansatz '" + b.ansatz + "' (expected brickwall, hva-tfi, or ladder)");
}

BuiltModel make_model(const ModelFlags& m, uint32_t n_qubits, std::optional<uint32_t> ansatz_depth) {
  if (!m.ham_file.empty())
    return BuiltModel{Hamiltonian::from_json(read_file(m.ham_file)), std::nullopt};
  if (m.family.empty()) throw UsageError("specify --hamiltonian FILE or --model FAMILY");
  ModelSpec ms;
  ms.family = model_family_from_name(m.family);
  ms.n_qubits = n_qubits;
  ms.h = m.h;
  if (ms.family == ModelFamily::RandomBackEvolved) {
    if (m.v_depth)
      ms.depth = *m.v_depth;
    else if (ansatz_depth)
      ms.depth = std::max<uint32_t>(1, *ansatz_depth);
    else
      throw UsageError("random-back-evolved needs --v-depth when the ansatz comes from a file");
  }
  ms.seed = m.model_seed;
  return build_model(ms);
}

SamplePlan make_plan(const GlobalFlags& g, const Circuit& c) {
  SamplePlan plan;
  plan.n_samples = g.samples;
  plan.n_batches = g.batches;
  plan.seed = g.seed;
  if (g.engine.empty())
    plan.engine = c.has_shared_params() ? SampleEngine::Continuous : SampleEngine::Clifford;
  else
    plan.engine = sample_engine_from_name(g.engine);
  return plan;
}

MeffPolicy policy_of(const GlobalFlags& g) { return meff_policy_from_name(g.meff); }

void print_report(std::ostream& os, const RFReport& r) {
  os << "qubits           : " << r.n_qubits << "\n";
  os << "engine           : " << r.engine << "   samples: " << r.n_samples << " x "
     << r.n_batches << " batches   seed: " << r.seed << "\n";
  os << "parameters M     : " << r.m;
  if (r.m_eff) os << "   M_eff(qfi): " << *r.m_eff;
  os << "\n";
  os << "|lambda|_1, _2   : " << fmt_g(r.norm_l1) << ", " << fmt_g(r.norm_l2)
     << "   locality r: " << r.locality << "\n";
  os << "mean cost        : " << fmt_g(r.mean_cost) << "\n";
  os << "sigma            : " << fmt_pm(r.sigma, r.sigma_stderr, 6) << "\n";
  os << "sigma_0          : " << fmt_g(r.sigma0) << "   (dimension source: " << r.m_eff_source
     << ")\n";
  os << "RF sigma/sigma_0 : " << fmt_pm(r.rf, r.rf_stderr) << "\n";
  os << "RF sqrt(2M)sigma : " << fmt_pm(r.rf_m, r.rf_m_stderr) << "\n";
  os << "sigma_Haar       : " << fmt_g(r.sigma_haar) << "\n";
  os << "depth bound      : " << fmt_g(r.theorem1_bound) << "   (chi=" << r.chi
     << ", beta=" << r.beta << ")\n";
  if (!r.warning.empty()) os << "warning          : " << r.warning << "\n";
}

// ---------------------------------------------------------------------------
// Candidate handling (rank / validate)

struct Candidate {
  std::string name;
  Circuit circuit;
};

std::vector<Candidate> collect_candidates(const std::vector<std::string>& files,
                                          const std::vector<std::string>& templates, uint32_t n,
                                          uint32_t depth) {
  std::vector<Candidate> out;
  for (const auto& f : files) {
    Circuit c = Circuit::from_json(read_file(f));
    c.validate();
    out.push_back({std::filesystem::path(f).stem().string(), std::move(c)});
  }
  for (const auto& t : templates) {
    if (n == 0) throw UsageError("--templates needs --n");
    BlockTemplate bt = block_template_from_name(t);
    out.push_back({t + "-d" + std::to_string(depth), build_brickwall_1d(n, depth, bt)});
  }
  if (out.empty()) throw UsageError("no candidates: pass circuit files or --templates LIST");
  uint32_t n0 = out.front().circuit.n_qubits;
  for (const auto& cand : out)
    if (cand.circuit.n_qubits != n0)
      throw UsageError("candidates must share one qubit count (got " + std::to_string(n0) +
                       " and " + std::to_string(cand.circuit.n_qubits) + ")");
  return out;
}

struct RankedEntry {
  std::string name;
  RFReport report;
  bool overlaps_next = false;  // stderr intervals of the RF overlap rank i+1
};

void sort_by_rf(std::vector<RankedEntry>& entries) {
  std::stable_sort(entries.begin(), entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
    if (a.report.rf != b.report.rf) return a.report.rf > b.report.rf;
    return a.report.m < b.report.m;  // tie: the cheaper circuit first
  });
  for (size_t i = 0; i + 1 < entries.size(); ++i) {
    const RFReport& a = entries[i].report;
    const RFReport& b = entries[i + 1].report;
    entries[i].overlaps_next = a.rf - b.rf <= a.rf_stderr + b.rf_stderr;
  }
}

// ---------------------------------------------------------------------------
// Subcommand callbacks

void cmd_build(const GlobalFlags& g, const BuilderFlags& b) {
  Circuit c = make_ansatz(b);
  std::string js = c.to_json();
  if (g.out.empty()) {
    std::cout << js << "\n";
  } else {
    write_file(g.out, js);
    std::cerr << "wrote " << g.out << " (qubits=" << c.n_qubits << ", M=" << c.n_params << ")\n";
  }
}

struct ModelCmdFlags {
  std::string family = "cluster";
  uint32_t n = 0;
  double h = 0.0;
  uint32_t depth = 1;
  uint64_t model_seed = 0;
  std::string v_out;
};

void cmd_model(const GlobalFlags& g, const ModelCmdFlags& f) {
  ModelSpec ms;
  ms.family = model_family_from_name(f.family);
  ms.n_qubits = f.n;
  ms.h = f.h;
  ms.depth = f.depth;
  ms.seed = f.model_seed;
  BuiltModel bm = build_model(ms);
  std::string js = bm.ham.to_json();
  if (g.out.empty()) {
    std::cout << js << "\n";
  } else {
    write_file(g.out, js);
    std::cerr << "wrote " << g.out << " (" << bm.ham.terms().size() << " terms, |lambda|_1="
              << fmt_g(bm.ham.norm_l1()) << ")\n";
  }
  if (!f.v_out.empty()) {
    if (!bm.v) throw UsageError("--v-out only applies to the random-back-evolved family");
    write_file(f.v_out, bm.v->to_json());
    std::cerr << "wrote " << f.v_out << " (scrambler V)\n";
  }
}

struct RfCmdFlags {
  BuilderFlags b;
  ModelFlags m;
  bool json_out = false;
  uint32_t qfi_points = kDefaultQfiPoints;
};

void cmd_rf(const GlobalFlags& g, const RfCmdFlags& f) {
  Circuit c = make_ansatz(f.b);
  std::optional<uint32_t> ansatz_depth;
  if (f.b.circuit_file.empty()) ansatz_depth = f.b.depth;
  BuiltModel bm = make_model(f.m, c.n_qubits, ansatz_depth);
  SamplePlan plan = make_plan(g, c);
  RFReport rep = relative_fluctuation(c, bm.ham, plan, policy_of(g), f.qfi_points);
  if (f.json_out)
    std::cout << rep.to_json() << "\n";
  else
    print_report(std::cout, rep);
  if (!g.out.empty()) write_file(g.out, rep.to_json());
}

void cmd_sweep(const GlobalFlags& g, const std::string& config_path) {
  SweepConfig cfg = SweepConfig::from_json(read_file(config_path));
  if (!g.out.empty()) cfg.output = g.out;
  SweepSummary s = run_sweep_to_csv(cfg, resolve_jobs(g.jobs), &std::cerr);
  std::cout << "rows: " << s.reused + s.computed << " (" << s.reused << " cached, " << s.computed
            << " computed, " << s.failed << " failed) -> " << cfg.output << "\n";
}

struct CandidateCmdFlags {
  std::vector<std::string> files;
  std::vector<std::string> templates;
  uint32_t n = 0;
  uint32_t depth = 1;
  ModelFlags m;
};

void add_candidate_flags(CLI::App* cmd, CandidateCmdFlags& f) {
  cmd->add_option("files", f.files, "candidate circuit JSON files");
  cmd->add_option("--templates", f.templates,
                  "comma-separated block templates ranked as depth-D brickwalls")
      ->delimiter(',');
  cmd->add_option("-n,--n", f.n, "qubit count for --templates candidates");
  cmd->add_option("-d,--depth", f.depth, "depth for --templates candidates")->capture_default_str();
  add_model_flags(cmd, f.m);
}

std::vector<RankedEntry> evaluate_candidates(const GlobalFlags& g, const CandidateCmdFlags& f,
                                             std::vector<Candidate>& cands) {
  cands = collect_candidates(f.files, f.templates, f.n, f.depth);
  BuiltModel bm = make_model(f.m, cands.front().circuit.n_qubits,
                             f.templates.empty() ? std::nullopt : std::optional<uint32_t>(f.depth));
  std::vector<RankedEntry> entries;
  entries.reserve(cands.size());
  for (const auto& cand : cands) {
    SamplePlan plan = make_plan(g, cand.circuit);
    entries.push_back({cand.name, relative_fluctuation(cand.circuit, bm.ham, plan, policy_of(g)),
                       false});
  }
  return entries;
}

void cmd_rank(const GlobalFlags& g, const CandidateCmdFlags& f) {
  std::vector<Candidate> cands;
  std::vector<RankedEntry> entries = evaluate_candidates(g, f, cands);
  sort_by_rf(entries);

  std::cout << std::left << std::setw(5) << "rank" << std::setw(18) << "candidate" << std::setw(7)
            << "M" << std::setw(24) << "sigma" << std::setw(22) << "RF" << std::setw(22)
            << "RF(raw M)" << "note\n";
  for (size_t i = 0; i < entries.size(); ++i) {
    const RFReport& r = entries[i].report;
    std::string note;
    if (entries[i].overlaps_next || (i > 0 && entries[i - 1].overlaps_next))
      note = "~ within stderr of neighbor";
    std::cout << std::left << std::setw(5) << i + 1 << std::setw(18) << entries[i].name
              << std::setw(7) << r.m << std::setw(24) << fmt_pm(r.sigma, r.sigma_stderr, 6)
              << std::setw(22) << fmt_pm(r.rf, r.rf_stderr) << std::setw(22)
              << fmt_pm(r.rf_m, r.rf_m_stderr) << note << "\n";
    if (!r.warning.empty()) std::cout << "     warning: " << r.warning << "\n";
  }

  if (!g.out.empty()) {
    std::ostringstream csv;
    csv << "rank,candidate,n,m,m_eff,sigma,sigma_stderr,sigma0,rf,rf_stderr,rf_m,rf_m_stderr,"
           "overlaps_next\n";
    for (size_t i = 0; i < entries.size(); ++i) {
      const RFReport& r = entries[i].report;
      csv << i + 1 << ',' << entries[i].name << ',' << r.n_qubits << ',' << r.m << ',';
      if (r.m_eff) csv << *r.m_eff;
      csv << ',' << fmt_exact(r.sigma) << ',' << fmt_exact(r.sigma_stderr) << ','
          << fmt_exact(r.sigma0) << ',' << fmt_exact(r.rf) << ',' << fmt_exact(r.rf_stderr) << ','
          << fmt_exact(r.rf_m) << ',' << fmt_exact(r.rf_m_stderr) << ','
          << (entries[i].overlaps_next ? 1 : 0) << '\n';
    }
    write_file(g.out, csv.str());
  }
}

struct ValidateCmdFlags {
  CandidateCmdFlags cand;
  uint32_t restarts = 10;
  uint32_t iters = 2000;
  double lr = 0.1;
  std::string traj_prefix;
};

void cmd_validate(const GlobalFlags& g, const ValidateCmdFlags& f) {
  std::vector<Candidate> cands;
  std::vector<RankedEntry> entries = evaluate_candidates(g, f.cand, cands);
  BuiltModel bm = make_model(f.cand.m, cands.front().circuit.n_qubits,
                             f.cand.templates.empty() ? std::nullopt
                                                      : std::optional<uint32_t>(f.cand.depth));

  TrainOptions topt;
  topt.lr = f.lr;
  topt.max_iters = f.iters;
  topt.n_restarts = f.restarts;
  topt.seed = g.seed;
  topt.record_trajectories = !f.traj_prefix.empty();

  struct Row {
    RankedEntry entry;
    TrainResult train;
  };
  std::vector<Row> rows;
  rows.reserve(entries.size());
  for (size_t i = 0; i < entries.size(); ++i) {
    const Circuit& c = cands[i].circuit;
    TrainResult tr = train_adam(c, bm.ham, topt);
    if (topt.record_trajectories) {
      std::ostringstream csv;
      csv << "iter,cost,grad_norm\n";
      for (const TrainPoint& p : tr.trajectories[tr.best_restart])
        csv << p.iter << ',' << fmt_exact(p.cost) << ',' << fmt_exact(p.grad_norm) << '\n';
      write_file(f.traj_prefix + entries[i].name + ".csv", csv.str());
    }
    rows.push_back({entries[i], std::move(tr)});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.entry.report.rf != b.entry.report.rf) return a.entry.report.rf > b.entry.report.rf;
    return a.entry.report.m < b.entry.report.m;
  });

  std::cout << std::left << std::setw(18) << "candidate" << std::setw(7) << "M" << std::setw(22)
            << "RF" << std::setw(14) << "eps_mean" << std::setw(14) << "eps_std" << std::setw(14)
            << "eps_best" << "\n";
  for (const Row& row : rows) {
    const RFReport& r = row.entry.report;
    std::cout << std::left << std::setw(18) << row.entry.name << std::setw(7) << r.m
              << std::setw(22) << fmt_pm(r.rf, r.rf_stderr) << std::setw(14)
              << fmt_g(row.train.eps_mean, 4) << std::setw(14) << fmt_g(row.train.eps_std, 4)
              << std::setw(14) << fmt_g(row.train.eps_best, 4) << "\n";
  }
  std::cout << "exact ground energy: " << fmt_g(rows.front().train.e_ground, 10) << "\n";

  size_t inversions = 0;
  for (size_t i = 0; i + 1 < rows.size(); ++i)
    if (rows[i].train.eps_mean > rows[i + 1].train.eps_mean + 1e-12) ++inversions;
  if (inversions == 0)
    std::cout << "RF-vs-eps ordering: consistent (higher RF never trains worse on average)\n";
  else
    std::cout << "RF-vs-eps ordering: " << inversions
              << " inversion(s) across adjacent ranks (reported, not enforced)\n";

  if (!g.out.empty()) {
    std::ostringstream csv;
    csv << "candidate,n,m,m_eff,sigma,sigma_stderr,rf,rf_stderr,rf_m,rf_m_stderr,eps_mean,"
           "eps_std,eps_best\n";
    for (const Row& row : rows) {
      const RFReport& r = row.entry.report;
      csv << row.entry.name << ',' << r.n_qubits << ',' << r.m << ',';
      if (r.m_eff) csv << *r.m_eff;
      csv << ',' << fmt_exact(r.sigma) << ',' << fmt_exact(r.sigma_stderr) << ','
          << fmt_exact(r.rf) << ',' << fmt_exact(r.rf_stderr) << ',' << fmt_exact(r.rf_m) << ','
          << fmt_exact(r.rf_m_stderr) << ',' << fmt_exact(row.train.eps_mean) << ','
          << fmt_exact(row.train.eps_std) << ',' << fmt_exact(row.train.eps_best) << '\n';
    }
    write_file(g.out, csv.str());
  }
}

struct QfiCmdFlags {
  BuilderFlags b;
  uint32_t points = kDefaultQfiPoints;
  bool spectrum = false;
};

void cmd_qfi(const GlobalFlags& g, const QfiCmdFlags& f) {
  Circuit c = make_ansatz(f.b);
  if (f.points == 0) throw UsageError("--points must be >= 1");
  std::vector<uint32_t> ranks;
  ranks.reserve(f.points);
  uint32_t m_eff = 0;
  for (uint32_t p = 0; p < f.points; ++p) {
    SplitRng rng(g.seed, p);
    std::vector<double> params(c.n_params);
    for (auto& t : params) t = rng.next_angle();
    uint32_t r = qfi_rank(c, params);
    ranks.push_back(r);
    m_eff = std::max(m_eff, r);
  }
  std::cout << "qubits       : " << c.n_qubits << "\n";
  std::cout << "parameters M : " << c.n_params << "\n";
  std::cout << "rank/point   : ";
  for (size_t i = 0; i < ranks.size(); ++i) std::cout << (i ? " " : "") << ranks[i];
  std::cout << "\n";
  std::cout << "M_eff        : " << m_eff << "   (max over " << f.points << " random points)\n";

  nlohmann::json j;
  j["n_qubits"] = c.n_qubits;
  j["m"] = c.n_params;
  j["points"] = f.points;
  j["seed"] = g.seed;
  j["ranks"] = ranks;
  j["m_eff"] = m_eff;
  if (f.spectrum) {
    SplitRng rng(g.seed, 0);
    std::vector<double> params(c.n_params);
    for (auto& t : params) t = rng.next_angle();
    QfiResult qr = qfi_matrix(c, params);
    std::cout << "spectrum     :";
    for (double s : qr.singular_values) std::cout << " " << fmt_g(s, 4);
    std::cout << "\n";
    j["singular_values"] = qr.singular_values;
  }
  if (!g.out.empty()) write_file(g.out, j.dump(2));
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "rf-lab: predict trainability of parametrized quantum circuits from the\n"
      "relative fluctuation (RF) of their cost landscape, estimated without\n"
      "training via Clifford sampling."};
  app.require_subcommand(1);
  // The transverse-field flag is spelled --h, so help keeps only its long form.
  app.set_help_flag("--help", "print help and exit");

  auto g = std::make_shared<GlobalFlags>();
  app.add_option("--seed", g->seed, "base RNG seed")->capture_default_str();
  app.add_option("--samples", g->samples, "landscape samples per estimate")->capture_default_str();
  app.add_option("--batches", g->batches, "batches for the error bar")->capture_default_str();
  app.add_option("--engine", g->engine,
                 "sampling engine: clifford | continuous (default: clifford, or continuous "
                 "when parameters are shared)")
      ->check(CLI::IsMember({"clifford", "continuous"}));
  app.add_option("--meff", g->meff, "sigma_0 dimension policy: auto | qfi | m")
      ->check(CLI::IsMember({"auto", "qfi", "m"}))
      ->capture_default_str();
  app.add_option("-j,--jobs", g->jobs, "worker threads for sweeps (0 = hardware)")
      ->envname("RF_LAB_JOBS")
      ->capture_default_str();
  app.add_option("-o,--out", g->out, "output file path");

  auto add_sub = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->fallthrough();
    sub->set_help_flag("--help", "print help and exit");
    return sub;
  };

  // build
  auto bld = std::make_shared<BuilderFlags>();
  CLI::App* build_cmd = add_sub("build", "construct an ansatz circuit and emit it as JSON");
  add_builder_flags(build_cmd, *bld);
  build_cmd->callback([g, bld] { cmd_build(*g, *bld); });

  // model
  auto mdl = std::make_shared<ModelCmdFlags>();
  CLI::App* model_cmd = add_sub("model", "construct a Hamiltonian and emit it as JSON");
  model_cmd->add_option("--family", mdl->family,
                        "cluster | tfi | polarization-z | polarization-x | random-back-evolved")
      ->capture_default_str();
  model_cmd->add_option("-n,--n", mdl->n, "number of qubits")->required();
  model_cmd->add_option("--h", mdl->h, "transverse field strength")->capture_default_str();
  model_cmd->add_option("-d,--depth", mdl->depth, "random-back-evolved: depth of V")
      ->capture_default_str();
  model_cmd->add_option("--model-seed", mdl->model_seed, "random-back-evolved: seed for V")
      ->capture_default_str();
  model_cmd->add_option("--v-out", mdl->v_out, "also write the scrambler circuit V as JSON");
  model_cmd->callback([g, mdl] { cmd_model(*g, *mdl); });

  // rf
  auto rff = std::make_shared<RfCmdFlags>();
  CLI::App* rf_cmd = add_sub("rf", "estimate the relative fluctuation of one circuit/model pair");
  add_builder_flags(rf_cmd, rff->b);
  add_model_flags(rf_cmd, rff->m);
  rf_cmd->add_flag("--json", rff->json_out, "print the report as JSON instead of a table");
  rf_cmd->add_option("--qfi-points", rff->qfi_points, "random points for the QFI rank")
      ->capture_default_str();
  rf_cmd->callback([g, rff] { cmd_rf(*g, *rff); });

  // sweep
  auto sweep_cfg_path = std::make_shared<std::string>();
  CLI::App* sweep_cmd = add_sub("sweep", "run a grid of RF estimates from a JSON config to CSV");
  sweep_cmd->add_option("config", *sweep_cfg_path, "sweep config JSON file")->required();
  sweep_cmd->callback([g, sweep_cfg_path] { cmd_sweep(*g, *sweep_cfg_path); });

  // rank
  auto rank_flags = std::make_shared<CandidateCmdFlags>();
  CLI::App* rank_cmd = add_sub("rank", "order candidate circuits by RF (highest first)");
  add_candidate_flags(rank_cmd, *rank_flags);
  rank_cmd->callback([g, rank_flags] { cmd_rank(*g, *rank_flags); });

  // validate
  auto val_flags = std::make_shared<ValidateCmdFlags>();
  CLI::App* val_cmd =
      add_sub("validate", "train candidates with Adam and join training error with RF");
  add_candidate_flags(val_cmd, val_flags->cand);
  val_cmd->add_option("--restarts", val_flags->restarts, "independent Adam restarts")
      ->capture_default_str();
  val_cmd->add_option("--iters", val_flags->iters, "max Adam iterations per restart")
      ->capture_default_str();
  val_cmd->add_option("--lr", val_flags->lr, "Adam learning rate")->capture_default_str();
  val_cmd->add_option("--trajectories", val_flags->traj_prefix,
                      "write per-candidate training curves to <prefix><candidate>.csv");
  val_cmd->callback([g, val_flags] { cmd_validate(*g, *val_flags); });

  // qfi
  auto qfi_flags = std::make_shared<QfiCmdFlags>();
  CLI::App* qfi_cmd = add_sub("qfi", "quantum Fisher information rank / effective dimension");
  add_builder_flags(qfi_cmd, qfi_flags->b);
  qfi_cmd->add_option("--points", qfi_flags->points, "random parameter points to probe")
      ->capture_default_str();
  qfi_cmd->add_flag("--spectrum", qfi_flags->spectrum, "also print the QFI singular values");
  qfi_cmd->callback([g, qfi_flags] { cmd_qfi(*g, *qfi_flags); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const EngineError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const CapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace rflab
