#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tonmf/rng.hpp"
#include "tonmf/sparse_core.hpp"
#include "tonmf/term_doc_matrix.hpp"

namespace tonmf {

struct SolverConfig {
  Index rank = 10;
  double alpha = 1.0;            // column-outlier penalty weight
  std::optional<double> beta;    // l1 weight on H; defaults to 0.1 * alpha
  double gamma = 1.0;            // quadratic weight in the shrink subproblem
  Index max_outer = 50;
  Index max_inner = 10;
  double tol_outer = 1e-4;       // relative objective change
  double tol_inner = 1e-3;       // relative Frobenius change of H
  double epsilon_col = 1e-12;    // degenerate-block threshold on squared norms
  std::uint64_t seed = 42;
  int threads = 1;

  double beta_value() const { return beta ? *beta : 0.1 * alpha; }
  double shrink_threshold() const { return alpha / gamma; }

  void validate() const;  // throws ConfigError
};

// Implicit outlier block: column i of Z equals scales[i] times the residual
// a_i - W h_i, so only the per-column norms and scales are stored.
struct OutlierState {
  Eigen::VectorXd scales;          // c_i in [0, 1]
  Eigen::VectorXd residual_norms;  // ||a_i - W h_i||_2
  Eigen::VectorXd scores;          // ||z_i||_2 = max(residual - alpha/gamma, 0)

  static OutlierState zero(Index n_docs);
};

struct SolveResult {
  FactorPair factors;
  OutlierState outliers;
  std::vector<double> objective_trace;  // one value per outer iteration
  Index iterations_used = 0;
  bool converged = false;
  Index degenerate_reseeds = 0;
};

struct ShrinkResult {
  Eigen::VectorXd z;
  double scale = 0.0;
};

// Column-wise shrinkage: the minimizer of (gamma/2)||z - a||^2 + alpha||z||_2
// with threshold = alpha / gamma is max(||a|| - threshold, 0) * a / ||a||.
ShrinkResult shrink_column(const Eigen::VectorXd& a, double threshold);

// Shrinks every column residual a_i - W h_i and records the implicit Z.
OutlierState update_z(const TermDocMatrix& a, const FactorPair& f, const SolverConfig& cfg);

// One HALS sweep over the rows of H (then columns of W): each block is set
// to the exact minimizer of its subproblem given all other blocks. When the
// opposing block has vanished (squared norm below epsilon_col), the pair is
// zeroed and reseeded from rng; the return value counts those events.
Index update_h(const ImplicitAbar& abar, FactorPair& f, double beta, double epsilon_col,
               Rng& rng, int threads = 1);
Index update_w(const ImplicitAbar& abar, FactorPair& f, double epsilon_col, Rng& rng,
               int threads = 1);

// 0.5 * sum_i ((1 - c_i) ||abar_i||)^2 + alpha * sum_i score_i + beta * ||H||_1.
// Requires `state` to have been produced from the same factors.
double objective(const TermDocMatrix& a, const FactorPair& f, const OutlierState& state,
                 const SolverConfig& cfg);

SolveResult solve(const TermDocMatrix& a, const SolverConfig& cfg);
SolveResult solve(const TermDocMatrix& a, const SolverConfig& cfg, FactorPair init);

}  // namespace tonmf
