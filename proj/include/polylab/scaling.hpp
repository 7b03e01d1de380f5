#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace polylab {

using RealMatrix = std::vector<std::vector<double>>;
using ComplexMatrix = std::vector<std::vector<std::complex<double>>>;

/// Row coefficients rho and column coefficients gamma, gauge fixed by
/// rho[0] = 1. achieved_eps is the largest deviation of a row or column sum
/// of the scaled matrix from its target.
struct ScalingResult {
  std::vector<double> rho;
  std::vector<double> gamma;
  double achieved_eps = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> eps_history;  // sinkhorn: after each sweep
};

/// rho_i b_ij gamma_j.
RealMatrix apply_scaling(const RealMatrix& b, const ScalingResult& s);

/// Whether the rows of an nk x n nonnegative matrix split into k blocks of n
/// rows, each with a nonzero permutation diagonal (a bipartite b-matching
/// with column capacity k).
bool has_nonzero_diagonal(const RealMatrix& b);

/// Alternating row / column normalization toward row sums 1 and column sums
/// k = rows / cols. A sweep normalizes rows, then columns. Throws
/// PreconditionError on a zero row or column, a negative entry, or (when
/// check_diagonal) a matrix failing has_nonzero_diagonal; throws logic_error
/// if the violation ever grows between sweeps.
ScalingResult sinkhorn_scale(const RealMatrix& b, double eps, std::size_t max_iters = 10'000'000,
                             bool check_diagonal = true);

/// Scales |a_ij|^2 with sinkhorn and takes square roots of the coefficients,
/// so each scaled row has squared l2 norm at most 1 + eps.
ScalingResult l2_scale(const ComplexMatrix& a, double eps, std::size_t max_iters = 10'000'000);

/// f(x, y) = ln sum_ij b_ij exp(x_i + y_j) - (x, y) . v over the support of b,
/// with v = (row_targets, col_targets) / total.
class ScalingPotential {
 public:
  ScalingPotential(RealMatrix b, std::vector<double> row_targets, std::vector<double> col_targets);

  std::size_t dimension() const { return rows_ + cols_; }
  double value(const std::vector<double>& z) const;
  std::vector<double> gradient(const std::vector<double>& z) const;
  double total() const { return total_; }
  const RealMatrix& matrix() const { return b_; }
  const std::vector<double>& target() const { return v_; }

 private:
  RealMatrix b_;
  std::size_t rows_, cols_;
  std::vector<double> v_;
  double total_ = 0.0;
};

/// Whether some matrix supported exactly on supp(b) has the target row and
/// column sums: v strictly inside the hull of the support vectors.
bool potential_feasible(const RealMatrix& b, const std::vector<double>& row_targets,
                        const std::vector<double>& col_targets);

/// Gradient descent with backtracking on the potential until the gradient's
/// max norm is <= tol. Throws PreconditionError on infeasible targets (when
/// check_feasible) and reports non-convergence through `converged`.
ScalingResult scale_by_potential(const RealMatrix& b, const std::vector<double>& row_targets,
                                 const std::vector<double>& col_targets, double step = 1.0, double tol = 1e-10,
                                 std::size_t max_iters = 1'000'000, bool check_feasible = true);

}  // namespace polylab
