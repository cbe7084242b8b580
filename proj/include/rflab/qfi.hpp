#pragma once

#include <cstdint>
#include <vector>

#include "rflab/circuit.hpp"

namespace rflab {

// Quantum Fisher information of |psi(theta)> at one parameter point.
struct QfiResult {
  uint32_t m = 0;
  std::vector<double> matrix;  // row-major m x m, real symmetric PSD
  std::vector<double> singular_values;  // descending
  uint32_t rank = 0;
  uint32_t eval_points_used = 1;
  double rel_tol = 1e-8;  // rank = #{s : s > rel_tol * s_max}
};

// F_{mu nu} = 4 Re[<d_mu psi|d_nu psi> - <d_mu psi|psi><psi|d_nu psi>],
// derivative states built by inserting -i/2 * generator after each
// parametrized gate in a single forward pass.
QfiResult qfi_matrix(const Circuit& c, const std::vector<double>& params);

// Rank at one point without materializing the m x m matrix: the projected
// tangent vectors are rank-factored through the smaller of their two Gram
// matrices, so large-m circuits stay cheap.
uint32_t qfi_rank(const Circuit& c, const std::vector<double>& params);

// M_eff: maximum QFI rank over n_points uniform-random parameter points in
// [0, 2pi)^m.  The max defends against landing on a measure-zero degeneracy.
uint32_t effective_dimension(const Circuit& c, uint32_t n_points, uint64_t seed);

inline constexpr uint32_t kDefaultQfiPoints = 3;

}  // namespace rflab
