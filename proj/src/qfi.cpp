#include "rflab/qfi.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <complex>

#include "rflab/errors.hpp"
#include "rflab/rng.hpp"
#include "rflab/statevector.hpp"

namespace rflab {

namespace {

using Cx = std::complex<double>;

// One forward pass producing |psi> and all tangents |d_mu psi>.  A tangent
// becomes active the first time its parameter appears; gates are applied to
// the existing tangent before a new -i/2 * generator injection is added, so
// shared-parameter sums come out right.
void forward_tangents(const Circuit& c, const std::vector<double>& params,
                      DenseState& psi, std::vector<std::vector<Cx>>& tangents,
                      std::vector<bool>& active) {
  if (params.size() != c.n_params)
    throw UsageError("parameter vector length does not match circuit");
  size_t dim = size_t{1} << c.n_qubits;
  tangents.assign(c.n_params, {});
  active.assign(c.n_params, false);
  std::vector<Cx> scratch(dim);
  DenseState t_state(c.n_qubits);  // reused shell for gate kernels on tangents

  for (const Gate& g : c.gates) {
    for (uint32_t mu = 0; mu < c.n_params; ++mu) {
      if (!active[mu]) continue;
      t_state.amplitudes().swap(tangents[mu]);
      t_state.apply_gate(g, params);
      t_state.amplitudes().swap(tangents[mu]);
    }
    psi.apply_gate(g, params);
    if (g.kind == GateKind::Rotation) {
      uint32_t mu = static_cast<uint32_t>(g.param);
      if (!active[mu]) {
        tangents[mu].assign(dim, Cx{0.0, 0.0});
        active[mu] = true;
      }
      apply_pauli(g.generator, psi.amplitudes(), scratch);
      const Cx half_mi{0.0, -0.5};
      for (size_t i = 0; i < dim; ++i) tangents[mu][i] += half_mi * scratch[i];
    }
  }
  for (uint32_t mu = 0; mu < c.n_params; ++mu)
    if (!active[mu]) tangents[mu].assign(dim, Cx{0.0, 0.0});
}

// Projects out the |psi> component of every tangent in place.
void project_tangents(const DenseState& psi, std::vector<std::vector<Cx>>& tangents) {
  size_t dim = psi.dim();
  for (auto& t : tangents) {
    Cx overlap{0.0, 0.0};
    for (size_t i = 0; i < dim; ++i) overlap += std::conj(psi.amplitudes()[i]) * t[i];
    for (size_t i = 0; i < dim; ++i) t[i] -= overlap * psi.amplitudes()[i];
  }
}

uint32_t rank_from_f_spectrum(const std::vector<double>& f_svals, double rel_tol) {
  double top = f_svals.empty() ? 0.0 : f_svals.front();
  if (top <= 0.0) return 0;
  uint32_t r = 0;
  for (double s : f_svals)
    if (s > rel_tol * top) ++r;
  return r;
}

// Descending eigenvalues (clamped at 0) of the cheaper Gram matrix of the
// real 2^{N+1} x M embedding of the projected tangents; these are the
// singular values of F up to the factor 4 applied here.
std::vector<double> f_spectrum(const DenseState& psi,
                               std::vector<std::vector<Cx>>& tangents) {
  size_t dim = psi.dim();
  size_t m = tangents.size();
  size_t rows = 2 * dim;
  Eigen::MatrixXd gram;
  if (m <= rows) {
    gram.setZero(m, m);
    for (size_t a = 0; a < m; ++a)
      for (size_t b = a; b < m; ++b) {
        double re = 0.0;
        for (size_t i = 0; i < dim; ++i)
          re += std::real(std::conj(tangents[a][i]) * tangents[b][i]);
        gram(a, b) = gram(b, a) = re;
      }
  } else {
    Eigen::MatrixXd bmat(rows, m);
    for (size_t a = 0; a < m; ++a)
      for (size_t i = 0; i < dim; ++i) {
        bmat(i, a) = tangents[a][i].real();
        bmat(dim + i, a) = tangents[a][i].imag();
      }
    gram = bmat * bmat.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw EngineError("qfi eigensolve failed");
  std::vector<double> out;
  for (Eigen::Index i = solver.eigenvalues().size() - 1; i >= 0; --i)
    out.push_back(4.0 * std::max(0.0, solver.eigenvalues()(i)));
  return out;
}

}  // namespace

QfiResult qfi_matrix(const Circuit& c, const std::vector<double>& params) {
  DenseState psi(c.n_qubits, c.initial_state);
  std::vector<std::vector<Cx>> tangents;
  std::vector<bool> active;
  forward_tangents(c, params, psi, tangents, active);
  project_tangents(psi, tangents);

  QfiResult res;
  res.m = c.n_params;
  size_t m = c.n_params, dim = psi.dim();
  res.matrix.assign(m * m, 0.0);
  for (size_t a = 0; a < m; ++a)
    for (size_t b = a; b < m; ++b) {
      double re = 0.0;
      for (size_t i = 0; i < dim; ++i)
        re += std::real(std::conj(tangents[a][i]) * tangents[b][i]);
      res.matrix[a * m + b] = res.matrix[b * m + a] = 4.0 * re;
    }
  res.singular_values = f_spectrum(psi, tangents);
  res.rank = rank_from_f_spectrum(res.singular_values, res.rel_tol);
  return res;
}

uint32_t qfi_rank(const Circuit& c, const std::vector<double>& params) {
  DenseState psi(c.n_qubits, c.initial_state);
  std::vector<std::vector<Cx>> tangents;
  std::vector<bool> active;
  forward_tangents(c, params, psi, tangents, active);
  project_tangents(psi, tangents);
  return rank_from_f_spectrum(f_spectrum(psi, tangents), QfiResult{}.rel_tol);
}

uint32_t effective_dimension(const Circuit& c, uint32_t n_points, uint64_t seed) {
  if (n_points == 0) throw UsageError("effective dimension needs n_points >= 1");
  uint32_t best = 0;
  for (uint32_t p = 0; p < n_points; ++p) {
    SplitRng rng(seed, p);
    std::vector<double> theta(c.n_params);
    for (auto& t : theta) t = rng.next_angle();
    best = std::max(best, qfi_rank(c, theta));
  }
  return best;
}

}  // namespace rflab
