#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "oracles.hpp"
#include "rflab/ansatz.hpp"
#include "rflab/circuit.hpp"
#include "rflab/errors.hpp"
#include "rflab/models.hpp"
#include "rflab/rng.hpp"
#include "rflab/stabilizer.hpp"
#include "rflab/statevector.hpp"

using namespace rflab;

namespace {

std::vector<double> random_params(uint32_t m, uint64_t seed) {
  SplitRng rng(seed, 0);
  std::vector<double> p(m);
  for (auto& v : p) v = rng.next_angle();
  return p;
}

}  // namespace

TEST_CASE("r_y(pi) maps |0> to |1> up to global phase") {
  DenseState s(1);
  s.apply_rotation(PauliString::single(1, 'Y', 0), 3.141592653589793);
  CHECK(std::abs(s.amplitudes()[0]) < 1e-12);
  CHECK(std::abs(s.amplitudes()[1]) == doctest::Approx(1.0));
  CHECK(s.expectation(PauliString::single(1, 'Z', 0)) == doctest::Approx(-1.0));
}

TEST_CASE("all-zero angles on a clifford-free circuit reproduce the initial state") {
  Circuit c = build_brickwall_1d(4, 0, BlockTemplate::SU4);
  DenseState s = evolve(c, std::vector<double>(c.n_params, 0.0));
  CHECK(std::abs(s.amplitudes()[0] - 1.0) < 1e-12);
  for (size_t i = 1; i < s.dim(); ++i) CHECK(std::abs(s.amplitudes()[i]) < 1e-12);

  Circuit hva = build_hva_tfi(3, 2);
  DenseState p = evolve(hva, {0, 0, 0, 0});
  for (const auto& a : p.amplitudes())
    CHECK(std::abs(a - std::complex<double>(1.0 / std::sqrt(8.0), 0)) < 1e-12);
}

TEST_CASE("evolution is unitary: norm stays 1 to 1e-10") {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    Circuit c = build_brickwall_1d(6, 3, BlockTemplate::SU4);
    DenseState s = evolve(c, random_params(c.n_params, seed));
    REQUIRE(std::abs(s.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("depth-0 r_y layer against a transverse field gives C = -sum sin(theta)") {
  Circuit c = build_brickwall_1d(5, 0, BlockTemplate::SU4);
  Hamiltonian h = build_model({ModelFamily::PolarizationX, 5, 0.0, 1, 0}).ham;
  auto params = random_params(c.n_params, 42);
  double expected = 0.0;
  for (double t : params) expected -= std::sin(t);
  CHECK(cost(c, params, h) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("the known cluster solution circuit reaches cost -l1") {
  ModelSpec spec{ModelFamily::ClusterZXZ, 4, 0.0, 1, 0};
  Hamiltonian h = build_model(spec).ham;
  Circuit sol = exact_solution_circuit(spec);
  DenseState s = evolve(sol, {});
  CHECK(s.expectation(h) == doctest::Approx(-4.0).epsilon(1e-12));
}

TEST_CASE("library cost matches the from-scratch reference simulator") {
  Circuit c = build_brickwall_1d(5, 2, BlockTemplate::SU4);
  Hamiltonian h = build_model({ModelFamily::ClusterZXZ, 5, 0.5, 1, 0}).ham;
  for (uint64_t seed = 0; seed < 3; ++seed) {
    auto params = random_params(c.n_params, seed);
    REQUIRE(cost(c, params, h) ==
            doctest::Approx(oracle::ref_cost(c, params, h)).epsilon(1e-10));
  }
}

TEST_CASE("fixed gates match the reference on random mixed circuits") {
  SplitRng rng(3, 9);
  const GateKind fixed1[] = {GateKind::H, GateKind::S, GateKind::Sdg,
                             GateKind::X, GateKind::Y, GateKind::Z};
  const GateKind fixed2[] = {GateKind::CX, GateKind::CZ, GateKind::Swap};
  DenseState s(3);
  oracle::RefState ref(3);
  for (int step = 0; step < 60; ++step) {
    uint64_t pick = rng.next_below(3);
    if (pick == 0) {
      GateKind g = fixed1[rng.next_below(6)];
      uint32_t q = uint32_t(rng.next_below(3));
      s.apply_fixed(g, {q});
      ref.apply_fixed(g, {q});
    } else if (pick == 1) {
      GateKind g = fixed2[rng.next_below(3)];
      uint32_t a = uint32_t(rng.next_below(3)), b = uint32_t(rng.next_below(2));
      if (b >= a) ++b;
      s.apply_fixed(g, {a, b});
      ref.apply_fixed(g, {a, b});
    } else {
      PauliString p(3);
      const char axes[] = {'I', 'X', 'Y', 'Z'};
      while (p.is_identity())
        for (uint32_t q = 0; q < 3; ++q) p.set(q, axes[rng.next_below(4)]);
      double theta = rng.next_angle();
      s.apply_rotation(p, theta);
      ref.apply_rotation(p, theta);
    }
  }
  for (size_t i = 0; i < s.dim(); ++i)
    REQUIRE(std::abs(s.amplitudes()[i] - ref.v(static_cast<Eigen::Index>(i))) < 1e-9);
}

TEST_CASE("parameter-shift gradient: depth-0 layer against -sum X has dC/dt = -cos(theta)") {
  Circuit c = build_brickwall_1d(4, 0, BlockTemplate::SU4);
  Hamiltonian h = build_model({ModelFamily::PolarizationX, 4, 0.0, 1, 0}).ham;
  auto params = random_params(c.n_params, 77);
  auto g = gradient(c, params, h);
  REQUIRE(g.size() == 4);
  for (size_t j = 0; j < 4; ++j)
    CHECK(g[j] == doctest::Approx(-std::cos(params[j])).epsilon(1e-10));
}

TEST_CASE("parameter-shift gradient matches central finite differences on random circuits") {
  Circuit c = build_brickwall_1d(6, 1, BlockTemplate::SU4);
  Hamiltonian h = build_model({ModelFamily::ClusterZXZ, 6, 0.3, 1, 0}).ham;
  auto params = random_params(c.n_params, 5);
  auto g = gradient(c, params, h);
  auto fd = oracle::fd_gradient(c, params, h, 1e-5);
  REQUIRE(g.size() == fd.size());
  for (size_t j = 0; j < g.size(); ++j) REQUIRE(std::abs(g[j] - fd[j]) < 1e-5);
}

TEST_CASE("gradient handles shared parameters by summing gate contributions") {
  Circuit c = build_hva_tfi(4, 2);
  Hamiltonian h = build_model({ModelFamily::TFI, 4, 0.5, 1, 0}).ham;
  auto params = random_params(c.n_params, 8);
  auto g = gradient(c, params, h);
  auto fd = oracle::fd_gradient(c, params, h, 1e-5);
  for (size_t j = 0; j < g.size(); ++j) REQUIRE(std::abs(g[j] - fd[j]) < 1e-5);
}

TEST_CASE("stabilizer and dense engines agree at multiples of pi/2") {
  Circuit c = build_brickwall_1d(4, 2, BlockTemplate::RyCZ);
  SplitRng rng(21, 0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> ks(c.n_params);
    std::vector<double> params(c.n_params);
    for (uint32_t j = 0; j < c.n_params; ++j) {
      ks[j] = int(rng.next_below(4));
      params[j] = ks[j] * 1.5707963267948966;
    }
    StabilizerState tab(4);
    DenseState dense(4);
    for (const Gate& g : c.gates) {
      if (g.kind == GateKind::Rotation) {
        tab.apply_discrete_rotation(g.generator, ks[g.param]);
      } else {
        tab.apply_fixed(g.kind, g.qubits);
      }
      dense.apply_gate(g, params);
    }
    Hamiltonian h = build_model({ModelFamily::ClusterZXZ, 4, 0.0, 1, 0}).ham;
    REQUIRE(tab.expectation(h) == doctest::Approx(dense.expectation(h)).epsilon(1e-10));
  }
}

TEST_CASE("dense engine rejects per-shot random gates and oversized registers") {
  DenseState s(2);
  std::vector<double> none;
  Gate g = Gate::random_clifford({0, 1});
  CHECK_THROWS_AS(s.apply_gate(g, none), EngineError);
  CHECK_THROWS_AS(DenseState(DenseState::kMaxQubits + 1), CapError);
}

TEST_CASE("cost and gradient validate input dimensions") {
  Circuit c = build_brickwall_1d(4, 1, BlockTemplate::RyCZ);
  Hamiltonian h = build_model({ModelFamily::ClusterZXZ, 5, 0.0, 1, 0}).ham;
  std::vector<double> good(c.n_params, 0.0), bad(c.n_params + 1, 0.0);
  CHECK_THROWS_AS(cost(c, bad, h), UsageError);   // wrong param count
  CHECK_THROWS_AS(cost(c, good, h), UsageError);  // 5-qubit observable, 4-qubit circuit
  CHECK_THROWS_AS(gradient(c, bad, h), UsageError);
}
