#include "rflab/exact.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "rflab/errors.hpp"
#include "rflab/rng.hpp"
#include "rflab/statevector.hpp"

namespace rflab {

namespace {

using Cx = std::complex<double>;
using Vec = std::vector<Cx>;

void apply_h(const Hamiltonian& h, const Vec& v, Vec& out, Vec& scratch) {
  std::fill(out.begin(), out.end(), Cx{0.0, 0.0});
  for (const HamTerm& t : h.terms()) {
    apply_pauli(t.op, v, scratch);
    for (size_t i = 0; i < v.size(); ++i) out[i] += t.coeff * scratch[i];
  }
  if (h.offset() != 0.0)
    for (size_t i = 0; i < v.size(); ++i) out[i] += h.offset() * v[i];
}

double dense_ground(const Hamiltonian& h) {
  size_t dim = size_t{1} << h.num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  Vec basis(dim), col(dim);
  for (size_t j = 0; j < dim; ++j) {
    std::fill(basis.begin(), basis.end(), Cx{0.0, 0.0});
    basis[j] = 1.0;
    Vec scratch(dim);
    apply_h(h, basis, col, scratch);
    for (size_t i = 0; i < dim; ++i) m(i, j) = col[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw EngineError("dense eigensolve failed");
  return solver.eigenvalues()(0);
}

double lanczos_ground(const Hamiltonian& h) {
  size_t dim = size_t{1} << h.num_qubits();
  size_t max_iters = std::min<size_t>(dim, 260);

  SplitRng rng(0x6c616e637a6f73ULL, 0);
  Vec q(dim);
  double nrm = 0.0;
  for (auto& a : q) {
    a = Cx{rng.next_double() - 0.5, rng.next_double() - 0.5};
    nrm += std::norm(a);
  }
  nrm = std::sqrt(nrm);
  for (auto& a : q) a /= nrm;

  std::vector<Vec> basis;
  basis.push_back(q);
  std::vector<double> alpha, beta;
  Vec w(dim), scratch(dim);
  double best = 0.0;
  int stable = 0;

  for (size_t it = 0; it < max_iters; ++it) {
    apply_h(h, basis.back(), w, scratch);
    // Full reorthogonalization keeps the Krylov basis clean in fp arithmetic.
    for (const Vec& b : basis) {
      Cx d{0.0, 0.0};
      for (size_t i = 0; i < dim; ++i) d += std::conj(b[i]) * w[i];
      for (size_t i = 0; i < dim; ++i) w[i] -= d * b[i];
      if (&b == &basis.back()) alpha.push_back(d.real());
    }
    double bnorm = 0.0;
    for (const auto& a : w) bnorm += std::norm(a);
    bnorm = std::sqrt(bnorm);

    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(alpha.size(), alpha.size());
    for (size_t i = 0; i < alpha.size(); ++i) {
      tri(i, i) = alpha[i];
      if (i + 1 < alpha.size()) tri(i, i + 1) = tri(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(tri, Eigen::EigenvaluesOnly);
    double low = solver.eigenvalues()(0);
    double scale = std::max(1.0, h.norm_l1() + std::abs(h.offset()));
    if (it > 0 && std::abs(low - best) < 1e-12 * scale) {
      if (++stable >= 3) return low;
    } else {
      stable = 0;
    }
    best = low;

    if (bnorm < 1e-13 * scale) return best;  // Krylov space exhausted
    beta.push_back(bnorm);
    for (auto& a : w) a /= bnorm;
    basis.push_back(w);
  }
  return best;
}

}  // namespace

double ground_energy(const Hamiltonian& h) {
  if (h.num_terms() == 0) return h.offset();
  if (h.num_qubits() <= kDenseGroundCap) return dense_ground(h);
  if (h.num_qubits() <= kLanczosGroundCap) return lanczos_ground(h);
  throw CapError("ground energy supports at most 16 qubits");
}

}  // namespace rflab
