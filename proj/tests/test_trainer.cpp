#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "rflab/ansatz.hpp"
#include "rflab/errors.hpp"
#include "rflab/exact.hpp"
#include "rflab/models.hpp"
#include "rflab/statevector.hpp"
#include "rflab/trainer.hpp"

using namespace rflab;

namespace {

TrainOptions quick_opts(uint32_t restarts, uint64_t seed) {
  TrainOptions o;
  o.n_restarts = restarts;
  o.seed = seed;
  return o;
}

}  // namespace

TEST_CASE("a product landscape trains to its exact minimum") {
  // One Ry per qubit against -sum X: cost = -sum_j sin(theta_j), minimized at
  // theta_j = pi/2 with value -N.
  const uint32_t n = 4;
  Circuit c = build_brickwall_1d(n, 0, BlockTemplate::SU4);  // depth 0: Ry layer
  BuiltModel m = build_model({ModelFamily::PolarizationX, n, 0.0, 1, 0});
  TrainResult r = train_adam(c, m.ham, quick_opts(3, 5));
  CHECK(r.e_ground == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK(r.eps_best < 1e-6);
  REQUIRE(r.best_params.size() == c.n_params);
  for (double th : r.best_params) CHECK(std::sin(th) > 1.0 - 1e-6);
  CHECK(cost(c, r.best_params, m.ham) == doctest::Approx(-4.0).epsilon(1e-8));
}

TEST_CASE("per-restart error bookkeeping is consistent") {
  Circuit c = build_brickwall_1d(3, 0, BlockTemplate::SU4);
  BuiltModel m = build_model({ModelFamily::PolarizationX, 3, 0.0, 1, 0});
  TrainOptions o = quick_opts(4, 11);
  o.max_iters = 400;
  TrainResult r = train_adam(c, m.ham, o);
  REQUIRE(r.eps.size() == 4);
  for (double e : r.eps) CHECK(e >= 0.0);
  double best = *std::min_element(r.eps.begin(), r.eps.end());
  CHECK(r.eps_best == doctest::Approx(best).epsilon(1e-15));
  CHECK(r.eps[r.best_restart] == doctest::Approx(best).epsilon(1e-15));
  double mean = std::accumulate(r.eps.begin(), r.eps.end(), 0.0) / 4.0;
  CHECK(r.eps_mean == doctest::Approx(mean).epsilon(1e-12));
  double ss = 0.0;
  for (double e : r.eps) ss += (e - mean) * (e - mean);
  CHECK(r.eps_std == doctest::Approx(std::sqrt(ss / 3.0)).epsilon(1e-9));
}

TEST_CASE("single restart reports zero spread") {
  Circuit c = build_brickwall_1d(3, 0, BlockTemplate::SU4);
  BuiltModel m = build_model({ModelFamily::PolarizationX, 3, 0.0, 1, 0});
  TrainOptions o = quick_opts(1, 2);
  o.max_iters = 300;
  TrainResult r = train_adam(c, m.ham, o);
  REQUIRE(r.eps.size() == 1);
  CHECK(r.eps_std == 0.0);
  CHECK(r.eps_mean == doctest::Approx(r.eps_best).epsilon(1e-15));
  CHECK(r.best_restart == 0);
}

TEST_CASE("reported exact ground energy matches dense diagonalization") {
  BuiltModel m = build_model({ModelFamily::ClusterZXZ, 4, 0.3, 1, 0});
  Circuit c = build_brickwall_1d(4, 1, BlockTemplate::RyCZ);
  TrainOptions o = quick_opts(1, 3);
  o.max_iters = 50;  // the assertion is about e_ground, not convergence
  TrainResult r = train_adam(c, m.ham, o);
  CHECK(r.e_ground == doctest::Approx(oracle::min_eigenvalue(m.ham)).epsilon(1e-10));
  CHECK(r.e_ground == doctest::Approx(ground_energy(m.ham)).epsilon(1e-12));
}

TEST_CASE("trajectories are recorded only on request and end near-stationary") {
  Circuit c = build_brickwall_1d(3, 0, BlockTemplate::SU4);
  BuiltModel m = build_model({ModelFamily::PolarizationX, 3, 0.0, 1, 0});

  TrainOptions off = quick_opts(2, 7);
  off.max_iters = 300;
  CHECK(train_adam(c, m.ham, off).trajectories.empty());

  TrainOptions on = off;
  on.record_trajectories = true;
  TrainResult r = train_adam(c, m.ham, on);
  REQUIRE(r.trajectories.size() == 2);
  for (const auto& traj : r.trajectories) {
    REQUIRE(!traj.empty());
    CHECK(traj.size() <= on.max_iters + 1);
    for (size_t i = 1; i < traj.size(); ++i) CHECK(traj[i].iter > traj[i - 1].iter);
    CHECK(traj.back().cost <= traj.front().cost + 1e-12);
  }
  // The winning restart stopped because the landscape flattened out.
  CHECK(r.trajectories[r.best_restart].back().grad_norm < 1e-4);
}

TEST_CASE("an overparametrized free-fermion ansatz reaches the ground state") {
  // Alternating shared layers at N=3, D=4 (8 parameters > plateau 4) against
  // the mixed-field chain at h=0.5: global minima exist and Adam finds one.
  BuiltModel m = build_model({ModelFamily::TFI, 3, 0.5, 1, 0});
  Circuit c = build_hva_tfi(3, 4);
  TrainResult r = train_adam(c, m.ham, quick_opts(5, 13));
  CHECK(r.eps_best < 1e-5);
  CHECK(cost(c, r.best_params, m.ham) ==
        doctest::Approx(r.e_ground).epsilon(1e-4));
}

TEST_CASE("training is deterministic in the seed") {
  Circuit c = build_brickwall_1d(3, 0, BlockTemplate::SU4);
  BuiltModel m = build_model({ModelFamily::PolarizationX, 3, 0.0, 1, 0});
  TrainOptions o = quick_opts(2, 19);
  o.max_iters = 250;
  TrainResult a = train_adam(c, m.ham, o);
  TrainResult b = train_adam(c, m.ham, o);
  REQUIRE(a.eps.size() == b.eps.size());
  for (size_t i = 0; i < a.eps.size(); ++i) CHECK(a.eps[i] == b.eps[i]);
  REQUIRE(a.best_params.size() == b.best_params.size());
  for (size_t i = 0; i < a.best_params.size(); ++i)
    CHECK(a.best_params[i] == b.best_params[i]);
  o.seed = 20;
  TrainResult d = train_adam(c, m.ham, o);
  bool differs = false;
  for (size_t i = 0; i < a.best_params.size(); ++i)
    if (a.best_params[i] != d.best_params[i]) differs = true;
  CHECK(differs);
}

TEST_CASE("trainer rejects impossible requests") {
  Circuit c = build_brickwall_1d(4, 1, BlockTemplate::SU4);
  BuiltModel m = build_model({ModelFamily::ClusterZXZ, 4, 0.0, 1, 0});

  CHECK_THROWS_AS(train_adam(c, m.ham, quick_opts(0, 1)), UsageError);

  BuiltModel wide = build_model({ModelFamily::ClusterZXZ, 5, 0.0, 1, 0});
  CHECK_THROWS_AS(train_adam(c, wide.ham, quick_opts(1, 1)), UsageError);

  Circuit big = build_brickwall_1d(15, 1, BlockTemplate::RyCZ);
  BuiltModel bigm = build_model({ModelFamily::ClusterZXZ, 15, 0.0, 1, 0});
  CHECK_THROWS_AS(train_adam(big, bigm.ham, quick_opts(1, 1)), CapError);

  Circuit cliff = build_brickwall_1d(4, 1, BlockTemplate::Clifford);
  CHECK_THROWS_AS(train_adam(cliff, m.ham, quick_opts(1, 1)), EngineError);
}
