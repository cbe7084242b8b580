#pragma once

#include <cstdint>
#include <vector>

#include "rflab/circuit.hpp"
#include "rflab/hamiltonian.hpp"

namespace rflab {

inline constexpr uint32_t kTrainCap = 14;  // exact ground energy must stay cheap

struct TrainOptions {
  double lr = 0.1;
  uint32_t max_iters = 2000;
  uint32_t n_restarts = 10;
  uint64_t seed = 0;
  // Stop a restart once the cost moved less than conv_tol_scale * l1(H)
  // over the last conv_window iterations.
  uint32_t conv_window = 100;
  double conv_tol_scale = 1e-9;
  bool record_trajectories = false;
};

struct TrainPoint {
  uint32_t iter = 0;
  double cost = 0.0;  // traceless part, offset excluded
  double grad_norm = 0.0;
};

struct TrainResult {
  double e_ground = 0.0;          // exact lowest eigenvalue, offset included
  std::vector<double> eps;        // per-restart (E_conv - E_G) / l1, clamped at 0
  double eps_mean = 0.0;
  double eps_std = 0.0;           // sample std over restarts (0 for one restart)
  double eps_best = 0.0;
  uint32_t best_restart = 0;
  std::vector<double> best_params;
  std::vector<std::vector<TrainPoint>> trajectories;  // when recording is on
};

// Adam with uniform [0, 2pi) restarts; E_conv is the best cost seen in a
// restart, which equals the converged value once the stop rule fires.
TrainResult train_adam(const Circuit& c, const Hamiltonian& h, const TrainOptions& opts);

}  // namespace rflab
