#include "rflab/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "rflab/errors.hpp"
#include "rflab/exact.hpp"
#include "rflab/rng.hpp"
#include "rflab/statevector.hpp"

namespace rflab {

namespace {

struct RestartOutcome {
  double best_cost = 0.0;
  std::vector<double> best_params;
  std::vector<TrainPoint> trajectory;
};

RestartOutcome run_restart(const Circuit& c, const Hamiltonian& h,
                           const TrainOptions& opts, uint64_t restart) {
  SplitRng rng(opts.seed, restart);
  std::vector<double> theta(c.n_params);
  for (auto& t : theta) t = rng.next_angle();

  std::vector<double> m(c.n_params, 0.0), v(c.n_params, 0.0);
  const double b1 = 0.9, b2 = 0.999, adam_eps = 1e-8;
  double conv_tol = opts.conv_tol_scale * h.norm_l1();

  RestartOutcome out;
  out.best_cost = cost(c, theta, h);
  out.best_params = theta;
  std::deque<double> window;
  window.push_back(out.best_cost);

  for (uint32_t it = 1; it <= opts.max_iters; ++it) {
    std::vector<double> g = gradient(c, theta, h);
    double gnorm = 0.0;
    for (double x : g) gnorm += x * x;
    gnorm = std::sqrt(gnorm);

    double bc1 = 1.0 - std::pow(b1, it), bc2 = 1.0 - std::pow(b2, it);
    for (uint32_t j = 0; j < c.n_params; ++j) {
      m[j] = b1 * m[j] + (1.0 - b1) * g[j];
      v[j] = b2 * v[j] + (1.0 - b2) * g[j] * g[j];
      theta[j] -= opts.lr * (m[j] / bc1) / (std::sqrt(v[j] / bc2) + adam_eps);
    }

    double cur = cost(c, theta, h);
    if (cur < out.best_cost) {
      out.best_cost = cur;
      out.best_params = theta;
    }
    if (opts.record_trajectories) out.trajectory.push_back({it, cur, gnorm});

    window.push_back(cur);
    if (window.size() > opts.conv_window + 1) window.pop_front();
    if (window.size() == opts.conv_window + 1 &&
        std::abs(window.back() - window.front()) < conv_tol)
      break;
  }
  return out;
}

}  // namespace

TrainResult train_adam(const Circuit& c, const Hamiltonian& h, const TrainOptions& opts) {
  if (c.n_qubits != h.num_qubits())
    throw UsageError("circuit and Hamiltonian qubit counts differ");
  if (c.n_qubits > kTrainCap) throw CapError("training supports at most 14 qubits");
  if (opts.n_restarts == 0) throw UsageError("training needs at least one restart");
  if (h.norm_l1() == 0.0) throw UsageError("training needs a non-trivial Hamiltonian");
  c.validate();
  if (c.has_random_clifford())
    throw EngineError("cannot train a circuit with random-Clifford gates");

  TrainResult res;
  res.e_ground = ground_energy(h);
  double l1 = h.norm_l1();
  double best = 0.0;
  for (uint32_t r = 0; r < opts.n_restarts; ++r) {
    RestartOutcome o = run_restart(c, h, opts, r);
    double e_conv = o.best_cost + h.offset();
    double eps = std::max(0.0, (e_conv - res.e_ground) / l1);
    res.eps.push_back(eps);
    if (r == 0 || eps < best) {
      best = eps;
      res.best_restart = r;
      res.best_params = std::move(o.best_params);
    }
    if (opts.record_trajectories) res.trajectories.push_back(std::move(o.trajectory));
  }

  double sum = 0.0;
  for (double e : res.eps) sum += e;
  res.eps_mean = sum / res.eps.size();
  double var = 0.0;
  for (double e : res.eps) var += (e - res.eps_mean) * (e - res.eps_mean);
  res.eps_std = res.eps.size() > 1 ? std::sqrt(var / (res.eps.size() - 1)) : 0.0;
  res.eps_best = *std::min_element(res.eps.begin(), res.eps.end());
  return res;
}

}  // namespace rflab
