#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rflab/errors.hpp"
#include "rflab/sweep.hpp"

using namespace rflab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("rflab_sweep_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

const char* kFullConfig = R"({
  "axes": {
    "n_qubits": [4, 6],
    "depth": [1, 2],
    "template": ["su4", "ry-cz"],
    "family": ["cluster", "tfi"],
    "h": [0.0, 0.5],
    "instances": 2
  },
  "plan": {"samples": 400, "batches": 10, "seed": 5, "engine": "clifford"},
  "m_eff_policy": "m",
  "output": "out.csv"
})";

}  // namespace

TEST_CASE("sweep config parses every axis and the plan") {
  SweepConfig cfg = SweepConfig::from_json(kFullConfig);
  CHECK(cfg.n_qubits == std::vector<uint32_t>{4, 6});
  CHECK(cfg.depths == std::vector<uint32_t>{1, 2});
  REQUIRE(cfg.templates.size() == 2);
  CHECK(cfg.templates[0] == BlockTemplate::SU4);
  CHECK(cfg.templates[1] == BlockTemplate::RyCZ);
  REQUIRE(cfg.families.size() == 2);
  CHECK(cfg.families[0] == ModelFamily::ClusterZXZ);
  CHECK(cfg.families[1] == ModelFamily::TFI);
  CHECK(cfg.fields == std::vector<double>{0.0, 0.5});
  CHECK(cfg.instances == 2);
  CHECK(cfg.plan.n_samples == 400);
  CHECK(cfg.plan.n_batches == 10);
  CHECK(cfg.plan.seed == 5);
  CHECK(cfg.plan.engine == SampleEngine::Clifford);
  CHECK(cfg.policy == MeffPolicy::UseM);
  CHECK(cfg.output == "out.csv");
}

TEST_CASE("sweep config is strict about unknown or missing pieces") {
  auto reject = [](const std::string& text) {
    CHECK_THROWS_AS(SweepConfig::from_json(text), UsageError);
  };
  reject("{");                                                      // not JSON
  reject(R"({"axes": {"n_qubits": [4], "depth": [1]}, "extra": 1})");
  reject(R"({"axes": {"n_qubits": [4], "depth": [1], "width": [2]}})");
  reject(R"({"plan": {}})");                                        // no axes
  reject(R"({"axes": {"depth": [1]}})");                            // no n_qubits
  reject(R"({"axes": {"n_qubits": [], "depth": [1]}})");
  reject(R"({"axes": {"n_qubits": [4]}})");                         // no depth
  reject(R"({"axes": {"n_qubits": [4], "depth": [1], "instances": 0}})");
  reject(R"({"axes": {"n_qubits": [4], "depth": [1], "template": ["warp"]}})");
  reject(R"({"axes": {"n_qubits": [4], "depth": [1], "family": ["heisenberg"]}})");
  reject(R"({"axes": {"n_qubits": [4], "depth": [1]}, "plan": {"speed": 3}})");
  reject(R"({"axes": {"n_qubits": [4], "depth": [1]}, "plan": {"samples": 401}})");
  reject(R"({"axes": {"n_qubits": [4], "depth": [1]}, "m_eff_policy": "guess"})");
}

TEST_CASE("grid nesting order is fixed and field-free families collapse the h axis") {
  SweepConfig cfg;
  cfg.n_qubits = {4};
  cfg.depths = {1, 2};
  cfg.templates = {BlockTemplate::SU4};
  cfg.families = {ModelFamily::ClusterZXZ, ModelFamily::PolarizationZ};
  cfg.fields = {0.0, 0.5};
  std::vector<SweepCell> cells = cfg.cells();
  REQUIRE(cells.size() == 6);  // cluster: 2 depths x 2 fields; polarization: 2 depths x 1
  CHECK(cells[0].family == ModelFamily::ClusterZXZ);
  CHECK(cells[0].depth == 1);
  CHECK(cells[0].h == 0.0);
  CHECK(cells[1].h == 0.5);
  CHECK(cells[2].depth == 2);
  CHECK(cells[2].h == 0.0);
  CHECK(cells[3].h == 0.5);
  CHECK(cells[4].family == ModelFamily::PolarizationZ);
  CHECK(cells[4].depth == 1);
  CHECK(cells[4].h == 0.0);
  CHECK(cells[5].depth == 2);
  CHECK(cells[5].h == 0.0);
}

TEST_CASE("only the randomized family expands the instance axis") {
  SweepConfig cfg;
  cfg.n_qubits = {4};
  cfg.depths = {1};
  cfg.families = {ModelFamily::RandomBackEvolved, ModelFamily::ClusterZXZ};
  cfg.instances = 3;
  std::vector<SweepCell> cells = cfg.cells();
  REQUIRE(cells.size() == 4);
  CHECK(cells[0].instance == 0);
  CHECK(cells[1].instance == 1);
  CHECK(cells[2].instance == 2);
  CHECK(cells[3].family == ModelFamily::ClusterZXZ);
  CHECK(cells[3].instance == 0);
}

TEST_CASE("resume keys isolate every influencing knob") {
  SweepCell cell{ModelFamily::ClusterZXZ, 4, 1, BlockTemplate::SU4, 0.0, 0};
  SamplePlan plan;
  plan.n_samples = 400;
  plan.n_batches = 10;
  plan.seed = 1;
  uint64_t base = sweep_cell_key(cell, plan, MeffPolicy::Auto);

  std::set<uint64_t> keys{base};
  auto expect_new = [&](uint64_t k) { CHECK(keys.insert(k).second); };

  SweepCell c2 = cell; c2.n_qubits = 6;
  expect_new(sweep_cell_key(c2, plan, MeffPolicy::Auto));
  c2 = cell; c2.depth = 2;
  expect_new(sweep_cell_key(c2, plan, MeffPolicy::Auto));
  c2 = cell; c2.tmpl = BlockTemplate::RyCZ;
  expect_new(sweep_cell_key(c2, plan, MeffPolicy::Auto));
  c2 = cell; c2.family = ModelFamily::TFI;
  expect_new(sweep_cell_key(c2, plan, MeffPolicy::Auto));
  c2 = cell; c2.h = 0.5;
  expect_new(sweep_cell_key(c2, plan, MeffPolicy::Auto));
  c2 = cell; c2.instance = 1;
  expect_new(sweep_cell_key(c2, plan, MeffPolicy::Auto));

  SamplePlan p2 = plan; p2.n_samples = 800;
  expect_new(sweep_cell_key(cell, p2, MeffPolicy::Auto));
  p2 = plan; p2.n_batches = 8;
  expect_new(sweep_cell_key(cell, p2, MeffPolicy::Auto));
  p2 = plan; p2.seed = 2;
  expect_new(sweep_cell_key(cell, p2, MeffPolicy::Auto));
  p2 = plan; p2.engine = SampleEngine::Continuous;
  expect_new(sweep_cell_key(cell, p2, MeffPolicy::Auto));
  expect_new(sweep_cell_key(cell, plan, MeffPolicy::UseM));

  // Model draws ride on the grid point alone, not on the sample plan.
  CHECK(sweep_model_seed(cell) == sweep_model_seed(cell));
  SweepCell inst = cell; inst.instance = 1;
  CHECK(sweep_model_seed(cell) != sweep_model_seed(inst));
}

TEST_CASE("csv rows carry the full report for good cells and a reason for bad ones") {
  SamplePlan plan;
  plan.n_samples = 200;
  plan.n_batches = 10;
  plan.seed = 3;
  SweepCell cell{ModelFamily::ClusterZXZ, 4, 1, BlockTemplate::RyCZ, 0.0, 0};
  SweepRow row = evaluate_cell(cell, plan, MeffPolicy::UseM);
  REQUIRE(row.ok);
  CHECK(row.error.empty());
  CHECK(row.cell_seed == row.key);

  std::vector<std::string> hdr = split_csv(sweep_csv_header());
  std::vector<std::string> cols = split_csv(sweep_csv_row(row));
  REQUIRE(cols.size() == hdr.size());
  CHECK(hdr.front() == "key");
  CHECK(hdr.back() == "error");
  CHECK(cols[0].size() == 16);  // zero-padded hex key
  CHECK(cols[1] == "4");
  CHECK(cols[2] == "1");
  CHECK(cols[3] == "ry-cz");
  CHECK(cols[4] == "cluster");
  CHECK(cols[7] == "4");   // m: one Ry per qubit at depth 1
  CHECK(cols[8] == "");    // m_eff empty under the raw-M policy
  CHECK(std::stod(cols[9]) == doctest::Approx(row.report.sigma).epsilon(1e-15));
  CHECK(cols[20] == "clifford");
  CHECK(cols.back().empty());

  // Random-Clifford blocks cannot run on the dense engine: the row survives
  // with an explanation instead of aborting the sweep.
  SweepCell bad = cell;
  bad.tmpl = BlockTemplate::Clifford;
  SamplePlan cont = plan;
  cont.engine = SampleEngine::Continuous;
  SweepRow err = evaluate_cell(bad, cont, MeffPolicy::UseM);
  CHECK(!err.ok);
  CHECK(!err.error.empty());
  CHECK(err.error.find('\n') == std::string::npos);
  CHECK(err.error.find(',') == std::string::npos);
  std::vector<std::string> ecols = split_csv(sweep_csv_row(err));
  REQUIRE(ecols.size() == hdr.size());
  CHECK(ecols[7] == "");   // no numbers on an error row
  CHECK(ecols[9] == "");
  CHECK(ecols[20] == "continuous");
  CHECK(!ecols.back().empty());
}

TEST_CASE("a sweep writes ordered rows and a rerun reuses them byte for byte") {
  fs::path out = scratch_dir() / "basic.csv";
  SweepConfig cfg;
  cfg.n_qubits = {4};
  cfg.depths = {0, 1};
  cfg.templates = {BlockTemplate::SU4, BlockTemplate::RyCZ};
  cfg.families = {ModelFamily::ClusterZXZ};
  cfg.plan.n_samples = 200;
  cfg.plan.n_batches = 10;
  cfg.plan.seed = 7;
  cfg.policy = MeffPolicy::UseM;
  cfg.output = out.string();

  SweepSummary first = run_sweep_to_csv(cfg, 1, nullptr);
  CHECK(first.total == 4);
  CHECK(first.computed == 4);
  CHECK(first.reused == 0);
  CHECK(first.failed == 0);
  std::string bytes = slurp(out);

  std::istringstream lines(bytes);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == sweep_csv_header());
  std::vector<SweepCell> grid = cfg.cells();
  for (const SweepCell& cell : grid) {
    REQUIRE(std::getline(lines, line));
    char want[17];
    std::snprintf(want, sizeof(want), "%016llx",
                  static_cast<unsigned long long>(sweep_cell_key(cell, cfg.plan, cfg.policy)));
    CHECK(line.substr(0, 16) == want);  // rows follow configuration order
  }
  CHECK(!std::getline(lines, line));

  SweepSummary second = run_sweep_to_csv(cfg, 1, nullptr);
  CHECK(second.reused == 4);
  CHECK(second.computed == 0);
  CHECK(slurp(out) == bytes);

  // Any knob that changes the numbers forces a recompute.
  cfg.plan.seed = 8;
  SweepSummary third = run_sweep_to_csv(cfg, 1, nullptr);
  CHECK(third.reused == 0);
  CHECK(third.computed == 4);
  CHECK(slurp(out) != bytes);
}

TEST_CASE("worker count changes neither content nor order") {
  SweepConfig cfg;
  cfg.n_qubits = {4};
  cfg.depths = {0, 1};
  cfg.templates = {BlockTemplate::SU4, BlockTemplate::RyCX};
  cfg.families = {ModelFamily::ClusterZXZ};
  cfg.plan.n_samples = 200;
  cfg.plan.n_batches = 10;
  cfg.plan.seed = 9;
  cfg.policy = MeffPolicy::UseM;

  fs::path serial = scratch_dir() / "serial.csv";
  cfg.output = serial.string();
  run_sweep_to_csv(cfg, 1, nullptr);

  fs::path threaded = scratch_dir() / "threaded.csv";
  cfg.output = threaded.string();
  SweepSummary s = run_sweep_to_csv(cfg, 3, nullptr);
  CHECK(s.computed == 4);
  CHECK(slurp(serial) == slurp(threaded));
}

TEST_CASE("failed rows are retried on the next run while good rows stay cached") {
  fs::path out = scratch_dir() / "retry.csv";
  SweepConfig cfg;
  cfg.n_qubits = {4};
  cfg.depths = {1};
  cfg.templates = {BlockTemplate::SU4, BlockTemplate::Clifford};
  cfg.families = {ModelFamily::ClusterZXZ};
  cfg.plan.n_samples = 200;
  cfg.plan.n_batches = 10;
  cfg.plan.engine = SampleEngine::Continuous;  // random-Clifford cell must fail
  cfg.policy = MeffPolicy::UseM;
  cfg.output = out.string();

  std::ostringstream log;
  SweepSummary first = run_sweep_to_csv(cfg, 1, &log);
  CHECK(first.computed == 2);
  CHECK(first.failed == 1);
  CHECK(log.str().find("ERROR") != std::string::npos);

  SweepSummary second = run_sweep_to_csv(cfg, 1, nullptr);
  CHECK(second.reused == 1);    // the good row
  CHECK(second.computed == 1);  // the error row is tried again
  CHECK(second.failed == 1);
}

TEST_CASE("foreign or stale csv content is recomputed, not trusted") {
  fs::path out = scratch_dir() / "stale.csv";
  {
    std::ofstream f(out);
    f << "some,other,schema\n0123,junk\n";
  }
  CHECK(read_completed_rows(out.string()).empty());

  {
    std::ofstream f(out);
    f << sweep_csv_header() << "\n"
      << "not-a-key,4,1,su4,cluster,0,0,,,,,,,,,,,,0,0,clifford,\n";
  }
  CHECK(read_completed_rows(out.string()).empty());
  CHECK(read_completed_rows((scratch_dir() / "absent.csv").string()).empty());
}

TEST_CASE("a sweep without an output path or grid refuses to start") {
  SweepConfig cfg;
  cfg.n_qubits = {4};
  cfg.depths = {1};
  CHECK_THROWS_AS(run_sweep_to_csv(cfg, 1, nullptr), UsageError);  // no output
  cfg.output = (scratch_dir() / "never.csv").string();
  cfg.n_qubits.clear();
  CHECK_THROWS_AS(run_sweep_to_csv(cfg, 1, nullptr), UsageError);  // empty grid
}
