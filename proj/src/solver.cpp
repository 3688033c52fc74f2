#include "tonmf/solver.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "tonmf/errors.hpp"

namespace tonmf {

namespace {

double relative_change(double previous, double current) {
  const double denom = std::max(std::abs(previous), 1e-30);
  return std::abs(previous - current) / denom;
}

Eigen::MatrixXd random_uniform(Index rows, Index cols, Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.uniform();
  }
  return m;
}

}  // namespace

void SolverConfig::validate() const {
  if (rank < 1) throw ConfigError("rank must be at least 1");
  if (alpha < 0.0) throw ConfigError("alpha must be nonnegative");
  if (beta && *beta < 0.0) throw ConfigError("beta must be nonnegative");
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (max_outer < 0 || max_inner < 0) throw ConfigError("iteration limits must be nonnegative");
  if (!(tol_outer > 0.0) || !(tol_inner > 0.0)) throw ConfigError("tolerances must be positive");
  if (!(epsilon_col > 0.0)) throw ConfigError("epsilon_col must be positive");
  if (threads < 1) throw ConfigError("threads must be at least 1");
}

OutlierState OutlierState::zero(Index n_docs) {
  OutlierState st;
  st.scales = Eigen::VectorXd::Zero(n_docs);
  st.residual_norms = Eigen::VectorXd::Zero(n_docs);
  st.scores = Eigen::VectorXd::Zero(n_docs);
  return st;
}

ShrinkResult shrink_column(const Eigen::VectorXd& a, double threshold) {
  if (threshold < 0.0) throw ConfigError("shrink threshold must be nonnegative");
  ShrinkResult res;
  const double norm = a.norm();
  if (norm == 0.0 || norm <= threshold) {
    res.z = Eigen::VectorXd::Zero(a.size());
    res.scale = 0.0;
    return res;
  }
  res.scale = 1.0 - threshold / norm;
  res.z = res.scale * a;
  return res;
}

OutlierState update_z(const TermDocMatrix& a, const FactorPair& f, const SolverConfig& cfg) {
  Eigen::VectorXd norms = column_residual_norms(a, f, cfg.threads);
  for (Index i = 0; i < a.n_docs; ++i) {
    if (!std::isfinite(norms[i])) {
      throw NumericError("non-finite residual in column " + std::to_string(i));
    }
  }
  const double threshold = cfg.shrink_threshold();
  OutlierState st;
  st.residual_norms = std::move(norms);
  st.scales.resize(a.n_docs);
  st.scores.resize(a.n_docs);
  for (Index i = 0; i < a.n_docs; ++i) {
    const double rho = st.residual_norms[i];
    st.scales[i] = (rho > threshold) ? 1.0 - threshold / rho : 0.0;
    st.scores[i] = std::max(rho - threshold, 0.0);
  }
  return st;
}

Index update_h(const ImplicitAbar& abar, FactorPair& f, double beta, double epsilon_col,
               Rng& rng, int threads) {
  const Index r = f.rank();
  Eigen::MatrixXd g = gram(f.W);                       // W^T W, fixed over the sweep
  Eigen::MatrixXd p = abar_t_times(abar, f.W, threads);  // Abar^T W, n x r
  Index reseeds = 0;
  for (Index j = 0; j < r; ++j) {
    if (g(j, j) < epsilon_col) {
      // Dead topic column: with ||w_j|| ~ 0 its rank-one term is negligible,
      // so zero the row, reseed w_j, and let the exact update below refit it.
      f.H.row(j).setZero();
      f.W.col(j) = random_uniform(f.n_terms(), 1, rng);
      g.col(j) = f.W.transpose() * f.W.col(j);
      g.row(j) = g.col(j).transpose();
      p.col(j) = abar_t_times(abar, f.W.col(j), threads);
      ++reseeds;
    }
    Eigen::VectorXd step = p.col(j) - f.H.transpose() * g.col(j);
    step.array() -= beta;
    f.H.row(j) = (f.H.row(j) + step.transpose() / g(j, j)).cwiseMax(0.0);
  }
  return reseeds;
}

Index update_w(const ImplicitAbar& abar, FactorPair& f, double epsilon_col, Rng& rng,
               int threads) {
  const Index r = f.rank();
  Eigen::MatrixXd g = f.H * f.H.transpose();               // H H^T, fixed over the sweep
  Eigen::MatrixXd q = abar_times(abar, f.H.transpose(), threads);  // Abar H^T, m x r
  Index reseeds = 0;
  for (Index j = 0; j < r; ++j) {
    if (g(j, j) < epsilon_col) {
      // Dead topic row: zero it exactly and hand the slot a fresh random
      // w_j. With h_j = 0 the rank-one term vanishes, so the objective is
      // untouched; the next H sweep refits the pair. Randomizing h_j here
      // would inflate the l1 penalty and break descent.
      f.H.row(j).setZero();
      f.W.col(j) = random_uniform(f.n_terms(), 1, rng);
      g.col(j).setZero();
      g.row(j).setZero();
      ++reseeds;
      continue;  // w_j is unconstrained this sweep
    }
    Eigen::VectorXd step = q.col(j) - f.W * g.col(j);
    f.W.col(j) = (f.W.col(j) + step / g(j, j)).cwiseMax(0.0);
  }
  return reseeds;
}

double objective(const TermDocMatrix& a, const FactorPair& f, const OutlierState& state,
                 const SolverConfig& cfg) {
  if (state.scales.size() != a.n_docs) throw ShapeError("state length must equal n_docs");
  double fit = 0.0;
  for (Index i = 0; i < a.n_docs; ++i) {
    const double kept = (1.0 - state.scales[i]) * state.residual_norms[i];
    fit += kept * kept;
  }
  return 0.5 * fit + cfg.alpha * state.scores.sum() +
         cfg.beta_value() * f.H.cwiseAbs().sum();
}

SolveResult solve(const TermDocMatrix& a, const SolverConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  // Uniform random factors scaled so the initial product sits at the data
  // magnitude: E[(WH)_ij] = rank * (s/2)^2 = mean(A). An unscaled [0,1) init
  // dwarfs sparse count data by orders of magnitude, and the first shrink
  // then absorbs mostly initialization noise instead of structure.
  double mean_entry = 0.0;
  for (double v : a.values) mean_entry += v;
  const double cells = static_cast<double>(a.n_terms) * static_cast<double>(a.n_docs);
  mean_entry = cells > 0.0 ? mean_entry / cells : 0.0;
  if (!std::isfinite(mean_entry)) {
    throw NumericError("matrix magnitude overflows double precision");
  }
  const double scale =
      mean_entry > 0.0 ? 2.0 * std::sqrt(mean_entry / static_cast<double>(cfg.rank)) : 1.0;
  FactorPair init(scale * random_uniform(a.n_terms, cfg.rank, rng),
                  scale * random_uniform(cfg.rank, a.n_docs, rng));
  return solve(a, cfg, std::move(init));
}

SolveResult solve(const TermDocMatrix& a, const SolverConfig& cfg, FactorPair init) {
  cfg.validate();
  init.validate(a);
  if (init.rank() != cfg.rank) throw ConfigError("initial factors disagree with configured rank");

  Rng rng(cfg.seed + 0x9e3779b97f4a7c15ull);  // decoupled from the init stream
  SolveResult res;
  res.factors = std::move(init);
  res.outliers = OutlierState::zero(a.n_docs);

  const double beta = cfg.beta_value();
  for (Index outer = 0; outer < cfg.max_outer; ++outer) {
    res.outliers = update_z(a, res.factors, cfg);
    const double value = objective(a, res.factors, res.outliers, cfg);
    if (!std::isfinite(value)) {
      throw NumericError("objective diverged to a non-finite value at outer iteration " +
                         std::to_string(outer + 1));
    }
    res.objective_trace.push_back(value);
    res.iterations_used = outer + 1;
    if (outer > 0 && relative_change(res.objective_trace[static_cast<std::size_t>(outer) - 1],
                                     value) < cfg.tol_outer) {
      res.converged = true;
      break;
    }

    // Z stays fixed through the inner sweeps: capture the factors it was
    // shrunk against.
    ImplicitAbar abar(a, res.factors, res.outliers.scales);
    for (Index inner = 0; inner < cfg.max_inner; ++inner) {
      Eigen::MatrixXd h_before = res.factors.H;
      res.degenerate_reseeds += update_h(abar, res.factors, beta, cfg.epsilon_col, rng, cfg.threads);
      res.degenerate_reseeds += update_w(abar, res.factors, cfg.epsilon_col, rng, cfg.threads);
      const double delta = (res.factors.H - h_before).norm();
      if (delta / std::max(h_before.norm(), 1e-30) < cfg.tol_inner) break;
    }
  }

  // After an inner sweep the recorded state no longer matches the factors;
  // re-shrink once so the reported scores correspond to the returned pair.
  if (!res.converged && res.iterations_used > 0) {
    res.outliers = update_z(a, res.factors, cfg);
  }
  return res;
}

}  // namespace tonmf
