#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rflab/ansatz.hpp"
#include "rflab/circuit.hpp"
#include "rflab/errors.hpp"
#include "rflab/models.hpp"
#include "rflab/rf.hpp"
#include "rflab/rng.hpp"
#include "rflab/stabilizer.hpp"

using namespace rflab;

namespace {

std::set<std::string> term_words(const Hamiltonian& h) {
  std::set<std::string> words;
  for (const auto& t : h.terms()) words.insert(t.op.word());
  return words;
}

}  // namespace

TEST_CASE("cluster chain n=4 has the expected four terms with unit weight") {
  Hamiltonian h = build_model({ModelFamily::ClusterZXZ, 4, 0.0, 1, 0}).ham;
  CHECK(term_words(h) ==
        std::set<std::string>{"X0 Z1", "Z0 X1 Z2", "Z1 X2 Z3", "Z2 X3"});
  for (const auto& t : h.terms()) {
    CHECK(t.coeff == doctest::Approx(-1.0));
    CHECK(t.op.sign() == 1);
  }
  CHECK(h.offset() == 0.0);
}

TEST_CASE("transverse-field ising n=3 at h=0.5 has couplings plus field terms") {
  Hamiltonian h = build_model({ModelFamily::TFI, 3, 0.5, 1, 0}).ham;
  CHECK(term_words(h) == std::set<std::string>{"Z0 Z1", "Z1 Z2", "X0", "X1", "X2"});
  double l1 = 0;
  for (const auto& t : h.terms()) l1 += std::abs(t.coeff);
  CHECK(l1 == doctest::Approx(2.0 + 1.5));
  CHECK(h.locality() == 2);
}

TEST_CASE("polarization models are one single-qubit term per site") {
  for (auto [family, axis] : {std::pair{ModelFamily::PolarizationZ, 'Z'},
                              std::pair{ModelFamily::PolarizationX, 'X'}}) {
    Hamiltonian h = build_model({family, 5, 0.0, 1, 0}).ham;
    REQUIRE(h.num_terms() == 5);
    for (const auto& t : h.terms()) {
      CHECK(t.coeff == doctest::Approx(-1.0));
      CHECK(t.op.weight() == 1);
      CHECK(t.op.axis(t.op.support()[0]) == axis);
    }
  }
}

TEST_CASE("model terms never repeat a pauli string") {
  for (ModelFamily f : {ModelFamily::ClusterZXZ, ModelFamily::TFI, ModelFamily::PolarizationZ}) {
    Hamiltonian h = build_model({f, 6, 0.7, 1, 0}).ham;
    std::set<uint64_t> seen;
    for (const auto& t : h.terms()) REQUIRE(seen.insert(t.op.bits_hash()).second);
  }
}

TEST_CASE("random back evolution keeps the norms and term count of -sum Z") {
  for (uint64_t seed : {0ull, 7ull, 123ull}) {
    auto built = build_model({ModelFamily::RandomBackEvolved, 6, 0.0, 2, seed});
    CHECK(built.ham.num_terms() == 6);
    CHECK(built.ham.norm_l1() == doctest::Approx(6.0));
    CHECK(built.ham.norm_l2() == doctest::Approx(std::sqrt(6.0)));
    REQUIRE(built.v.has_value());
    CHECK(built.v->n_qubits == 6);
    CHECK(built.v->n_params == 0);
    CHECK_FALSE(built.v->has_random_clifford());
  }
}

TEST_CASE("random back evolution is deterministic in the seed") {
  auto a = build_model({ModelFamily::RandomBackEvolved, 5, 0.0, 3, 11});
  auto b = build_model({ModelFamily::RandomBackEvolved, 5, 0.0, 3, 11});
  CHECK(a.ham.to_text() == b.ham.to_text());
  auto c = build_model({ModelFamily::RandomBackEvolved, 5, 0.0, 3, 12});
  CHECK(a.ham.to_text() != c.ham.to_text());
}

TEST_CASE("clifford conjugation of the hamiltonian matches the matrix oracle") {
  Hamiltonian hz = build_model({ModelFamily::PolarizationZ, 4, 0.0, 1, 0}).ham;
  auto built = build_model({ModelFamily::RandomBackEvolved, 4, 0.0, 2, 5});
  // multiply out v's gate matrices: state evolution applies gates left to right
  oracle::Mat mv = oracle::Mat::Identity(16, 16);
  std::vector<double> none;
  for (const Gate& g : built.v->gates) mv = oracle::gate_matrix(4, g, none) * mv;
  oracle::Mat expected = mv.adjoint() * oracle::ham_matrix(hz) * mv;
  CHECK((oracle::ham_matrix(built.ham) - expected).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("conjugated-hamiltonian cost equals folded-circuit cost sample by sample") {
  auto built = build_model({ModelFamily::RandomBackEvolved, 6, 0.0, 2, 9});
  Hamiltonian hz = build_model({ModelFamily::PolarizationZ, 6, 0.0, 1, 0}).ham;
  Circuit ansatz = build_brickwall_1d(6, 2, BlockTemplate::SU4);
  Circuit folded = fold_back_evolution(ansatz, *built.v);
  for (uint64_t i = 0; i < 50; ++i) {
    SplitRng r1(1000, i), r2(1000, i);
    double direct = sample_cost_clifford(ansatz, built.ham, r1);
    double via_v = sample_cost_clifford(folded, hz, r2);
    REQUIRE(direct == doctest::Approx(via_v).epsilon(1e-12));
  }
}

TEST_CASE("cluster solution circuit reaches -l1 and satisfies every term") {
  ModelSpec spec{ModelFamily::ClusterZXZ, 6, 0.0, 1, 0};
  Hamiltonian h = build_model(spec).ham;
  Circuit sol = exact_solution_circuit(spec);
  CHECK(sol.n_params == 0);
  StabilizerState s(6);
  for (const Gate& g : sol.gates) s.apply_fixed(g.kind, g.qubits);
  CHECK(s.expectation(h) == doctest::Approx(-6.0));
  for (const auto& t : h.terms()) CHECK(s.expectation(t.op) == doctest::Approx(1.0));
}

TEST_CASE("ising solution circuit prepares a ghz-type ground state at h=0") {
  ModelSpec spec{ModelFamily::TFI, 4, 0.0, 1, 0};
  Hamiltonian h = build_model(spec).ham;
  Circuit sol = exact_solution_circuit(spec);
  StabilizerState s(4);
  for (const Gate& g : sol.gates) s.apply_fixed(g.kind, g.qubits);
  CHECK(s.expectation(h) == doctest::Approx(-3.0));
}

TEST_CASE("polarization solution circuits hit -N exactly") {
  for (auto family : {ModelFamily::PolarizationZ, ModelFamily::PolarizationX}) {
    ModelSpec spec{family, 5, 0.0, 1, 0};
    Hamiltonian h = build_model(spec).ham;
    Circuit sol = exact_solution_circuit(spec);
    StabilizerState s(5);
    for (const Gate& g : sol.gates) s.apply_fixed(g.kind, g.qubits);
    CHECK(s.expectation(h) == doctest::Approx(-5.0));
  }
}

TEST_CASE("back-evolved solution circuit undoes the scrambler") {
  ModelSpec spec{ModelFamily::RandomBackEvolved, 5, 0.0, 3, 77};
  auto built = build_model(spec);
  Circuit sol = exact_solution_circuit(spec);
  StabilizerState s(5);
  for (const Gate& g : sol.gates) s.apply_fixed(g.kind, g.qubits);
  CHECK(s.expectation(built.ham) == doctest::Approx(-5.0));
}

TEST_CASE("closed-form ground energies match the dense matrix oracle") {
  struct Case {
    ModelSpec spec;
    double expected;
  };
  const Case cases[] = {
      {{ModelFamily::ClusterZXZ, 6, 0.0, 1, 0}, -6.0},
      {{ModelFamily::TFI, 5, 0.0, 1, 0}, -4.0},
      {{ModelFamily::PolarizationZ, 4, 0.0, 1, 0}, -4.0},
      {{ModelFamily::PolarizationX, 4, 0.0, 1, 0}, -4.0},
      {{ModelFamily::RandomBackEvolved, 4, 0.0, 2, 3}, -4.0},
  };
  for (const auto& c : cases) {
    auto built = build_model(c.spec);
    auto cf = closed_form_ground_energy(c.spec);
    REQUIRE(cf.has_value());
    CHECK(*cf == doctest::Approx(c.expected));
    CHECK(oracle::min_eigenvalue(built.ham) == doctest::Approx(c.expected).epsilon(1e-9));
  }
  CHECK_FALSE(closed_form_ground_energy({ModelFamily::ClusterZXZ, 6, 0.5, 1, 0}).has_value());
  CHECK_FALSE(closed_form_ground_energy({ModelFamily::TFI, 6, 0.5, 1, 0}).has_value());
}

TEST_CASE("solution circuits are refused where no closed form exists") {
  CHECK_THROWS_AS(exact_solution_circuit({ModelFamily::ClusterZXZ, 5, 0.3, 1, 0}), UsageError);
  CHECK_THROWS_AS(exact_solution_circuit({ModelFamily::TFI, 5, 1.0, 1, 0}), UsageError);
}

TEST_CASE("model construction rejects undersized chains and zero-depth scramblers") {
  CHECK_THROWS_AS(build_model({ModelFamily::ClusterZXZ, 2, 0.0, 1, 0}), UsageError);
  CHECK_THROWS_AS(build_model({ModelFamily::TFI, 1, 0.0, 1, 0}), UsageError);
  CHECK_THROWS_AS(build_model({ModelFamily::RandomBackEvolved, 4, 0.0, 0, 0}), UsageError);
}

TEST_CASE("family names round-trip") {
  for (ModelFamily f : {ModelFamily::ClusterZXZ, ModelFamily::TFI, ModelFamily::PolarizationZ,
                        ModelFamily::PolarizationX, ModelFamily::RandomBackEvolved})
    CHECK(model_family_from_name(model_family_name(f)) == f);
  CHECK_THROWS_AS(model_family_from_name("heisenberg"), UsageError);
}

TEST_CASE("general clifford conjugation keeps norms for any model") {
  Hamiltonian h = build_model({ModelFamily::ClusterZXZ, 5, 0.5, 1, 0}).ham;
  Circuit v = build_model({ModelFamily::RandomBackEvolved, 5, 0.0, 2, 31}).v.value();
  Hamiltonian conj = back_evolved_hamiltonian(h, v);
  CHECK(conj.norm_l1() == doctest::Approx(h.norm_l1()));
  CHECK(conj.norm_l2() == doctest::Approx(h.norm_l2()));
  CHECK(conj.num_terms() == h.num_terms());
}
