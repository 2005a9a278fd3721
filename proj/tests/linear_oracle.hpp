#pragma once

// Monte Carlo simulation of a chain of linear Gaussian maps, independent of
// the library's closed forms and random generators.

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

namespace oracle {

struct Gaussian {
  Eigen::MatrixXd A, Sigma;
};

struct ProjectedMoments {
  double mean = 0, variance = 0;
  double mean_se = 0, variance_se = 0;
};

inline Eigen::MatrixXd sqrt_psd(const Eigen::MatrixXd& s) {
  if (s.size() == 0) return s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * d.asDiagonal();
}

/// Pushes x through `chain` (applied first to last) `n` times and returns the
/// sample mean and variance of w^T z with their standard errors.
inline ProjectedMoments simulate(const std::vector<Gaussian>& chain, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& w, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Eigen::MatrixXd> roots;
  for (const auto& g : chain) roots.push_back(sqrt_psd(g.Sigma));
  double sum = 0, sum_sq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd v = x;
    for (std::size_t k = 0; k < chain.size(); ++k) {
      Eigen::VectorXd e(roots[k].cols());
      for (Eigen::Index j = 0; j < e.size(); ++j) e(j) = normal(gen);
      v = chain[k].A * v + roots[k] * e;
    }
    const double s = w.dot(v);
    sum += s;
    sum_sq += s * s;
  }
  ProjectedMoments m;
  m.mean = sum / double(n);
  m.variance = (sum_sq - double(n) * m.mean * m.mean) / double(n - 1);
  m.mean_se = std::sqrt(m.variance / double(n));
  m.variance_se = m.variance * std::sqrt(2.0 / double(n - 1));
  return m;
}

}  // namespace oracle
