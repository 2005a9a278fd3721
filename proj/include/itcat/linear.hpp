#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "itcat/error.hpp"
#include "itcat/sampling.hpp"

namespace itcat {

using Matrix = Eigen::MatrixXd;

/// Tolerances of the linear category.
inline constexpr double kPsdFloor = 1e-9;       // smallest admissible eigenvalue is -kPsdFloor
inline constexpr double kEqualTol = 1e-9;       // max-norm equality of matrices
inline constexpr double kAngleTol = 1e-7;       // subspace containment
inline constexpr double kDefiniteFloor = 1e-9;  // positive definite means min eigenvalue above this

inline double max_norm(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double min_eigenvalue(const Matrix& s) {
  if (s.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (s + s.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

inline bool is_psd(const Matrix& s, double tol = kPsdFloor) { return s.size() == 0 || min_eigenvalue(s) >= -tol; }

/// A linear IT y = A x + noise, noise zero-mean with covariance Sigma.
class LinearIT {
 public:
  LinearIT(Matrix a, Matrix sigma) : a_(std::move(a)), sigma_(std::move(sigma)) {
    if (sigma_.rows() != a_.rows() || sigma_.cols() != a_.rows())
      throw MismatchError("Sigma must be " + std::to_string(a_.rows()) + "x" + std::to_string(a_.rows()) + ", got " +
                          std::to_string(sigma_.rows()) + "x" + std::to_string(sigma_.cols()));
    if (max_norm(sigma_ - sigma_.transpose()) > kEqualTol) throw ValidationError("Sigma is not symmetric");
    if (!is_psd(sigma_)) throw ValidationError("Sigma is not positive semidefinite");
    sigma_ = 0.5 * (sigma_ + sigma_.transpose());
  }

  const Matrix& A() const noexcept { return a_; }
  const Matrix& Sigma() const noexcept { return sigma_; }
  Eigen::Index src_dim() const noexcept { return a_.cols(); }
  Eigen::Index dst_dim() const noexcept { return a_.rows(); }

 private:
  Matrix a_, sigma_;
};

inline LinearIT lin_deterministic(const Matrix& a) { return LinearIT(a, Matrix::Zero(a.rows(), a.rows())); }
inline LinearIT lin_identity(Eigen::Index n) { return lin_deterministic(Matrix::Identity(n, n)); }
/// The unique arrow to the zero-dimensional terminal space.
inline LinearIT lin_terminal(Eigen::Index n) { return LinearIT(Matrix(0, n), Matrix(0, 0)); }
/// A zero-mean distribution on R^n: an arrow out of the zero-dimensional space.
inline LinearIT lin_distribution(const Matrix& sigma) { return LinearIT(Matrix(sigma.rows(), 0), sigma); }

inline bool lin_equal(const LinearIT& a, const LinearIT& b, double tol = kEqualTol) {
  return a.A().rows() == b.A().rows() && a.A().cols() == b.A().cols() && max_norm(a.A() - b.A()) <= tol &&
         max_norm(a.Sigma() - b.Sigma()) <= tol;
}

/// b after a: <A_b A_a, Sigma_b + A_b Sigma_a A_b^T>.
inline LinearIT lin_compose(const LinearIT& b, const LinearIT& a) {
  if (a.dst_dim() != b.src_dim())
    throw MismatchError("cannot compose: output dimension " + std::to_string(a.dst_dim()) + " is not input dimension " +
                        std::to_string(b.src_dim()));
  Matrix s = b.Sigma() + b.A() * a.Sigma() * b.A().transpose();
  return LinearIT(b.A() * a.A(), 0.5 * (s + s.transpose()));
}

/// Stacked maps with independent noises.
inline LinearIT lin_product(const LinearIT& a, const LinearIT& b) {
  if (a.src_dim() != b.src_dim())
    throw MismatchError("cannot take product of arrows with input dimensions " + std::to_string(a.src_dim()) + " and " +
                        std::to_string(b.src_dim()));
  const Eigen::Index n = a.dst_dim(), m = b.dst_dim();
  Matrix stacked(n + m, a.src_dim());
  stacked << a.A(), b.A();
  Matrix s = Matrix::Zero(n + m, n + m);
  s.topLeftCorner(n, n) = a.Sigma();
  s.bottomRightCorner(m, m) = b.Sigma();
  return LinearIT(std::move(stacked), std::move(s));
}

inline LinearIT lin_projection_left(Eigen::Index n, Eigen::Index m) {
  Matrix p = Matrix::Zero(n, n + m);
  p.leftCols(n) = Matrix::Identity(n, n);
  return lin_deterministic(p);
}

inline LinearIT lin_projection_right(Eigen::Index n, Eigen::Index m) {
  Matrix p = Matrix::Zero(m, n + m);
  p.rightCols(m) = Matrix::Identity(m, m);
  return lin_deterministic(p);
}

/// `a` more accurate than `b`: same map and Sigma_b - Sigma_a PSD.
inline bool lin_accuracy_le(const LinearIT& a, const LinearIT& b) {
  if (a.A().rows() != b.A().rows() || a.A().cols() != b.A().cols()) return false;
  return max_norm(a.A() - b.A()) <= kEqualTol && is_psd(b.Sigma() - a.Sigma());
}

/// Every linear IT is dominated by its noiseless version.
inline LinearIT lin_dominating_deterministic(const LinearIT& a) { return lin_deterministic(a.A()); }

/// Informativeness class: the observed subspace Q (orthonormal columns) and
/// the error covariance S of the best unbiased estimate of Q^T x.
struct LinearClass {
  Matrix Q;
  Matrix S;
};

/// Orthonormal basis of the row space of `a`.
inline Matrix row_space(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return Matrix(a.cols(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = kEqualTol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return svd.matrixV().leftCols(rank);
}

inline Matrix pseudo_inverse(const Matrix& m) {
  if (m.size() == 0) return Matrix(m.cols(), m.rows());
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(m);
  cod.setThreshold(kEqualTol);
  return cod.pseudoInverse();
}

/// Requires Sigma positive definite or zero.
inline LinearClass lin_canonical_class(const LinearIT& a) {
  LinearClass c;
  c.Q = row_space(a.A());
  const Eigen::Index k = c.Q.cols();
  if (max_norm(a.Sigma()) <= kEqualTol) {
    c.S = Matrix::Zero(k, k);
    return c;
  }
  if (min_eigenvalue(a.Sigma()) <= kDefiniteFloor)
    throw UnsupportedError("canonical class needs Sigma positive definite or zero");
  if (k == 0) {
    c.S = Matrix(0, 0);
    return c;
  }
  const Matrix aq = a.A() * c.Q;
  const Matrix fisher = aq.transpose() * a.Sigma().ldlt().solve(aq);
  Matrix s = fisher.inverse();
  c.S = 0.5 * (s + s.transpose());
  return c;
}

/// Q2 is contained in Q1 up to the angle tolerance.
inline bool subspace_contains(const Matrix& q1, const Matrix& q2) {
  if (q2.cols() == 0) return true;
  if (q1.cols() == 0) return false;
  const Matrix residual = q2 - q1 * (q1.transpose() * q2);
  Eigen::JacobiSVD<Matrix> svd(residual);
  return svd.singularValues()(0) <= kAngleTol;
}

/// c1 more informative than c2: Q1 contains Q2 and S1 restricted to Q2 is at most S2.
inline bool lin_class_le(const LinearClass& c1, const LinearClass& c2) {
  if (c1.Q.rows() != c2.Q.rows()) throw MismatchError("classes over different source spaces");
  if (!subspace_contains(c1.Q, c2.Q)) return false;
  if (c2.Q.cols() == 0) return true;
  const Matrix t = c2.Q.transpose() * c1.Q;
  return is_psd(c2.S - t * c1.S * t.transpose());
}

/// Post-processing c with lin_compose(c, a) at least as accurate as b, built
/// from the minimum-variance unbiased estimator for a; valid when the class of
/// a is above the class of b.
inline LinearIT lin_witness(const LinearIT& a, const LinearIT& b) {
  if (a.src_dim() != b.src_dim()) throw MismatchError("witness needs a common source");
  const LinearClass ca = lin_canonical_class(a);
  Matrix ac;
  if (max_norm(a.Sigma()) <= kEqualTol) {
    ac = b.A() * pseudo_inverse(a.A());
  } else {
    ac = b.A() * ca.Q * ca.S * ca.Q.transpose() * a.A().transpose() * a.Sigma().ldlt().solve(
                                                                          Matrix::Identity(a.dst_dim(), a.dst_dim()));
  }
  return lin_deterministic(ac);
}

/// The joint (i * a) . f of a distribution f on R^n and a : R^n -> R^m.
inline LinearIT lin_joint_from(const LinearIT& f, const LinearIT& a) {
  if (f.src_dim() != 0) throw MismatchError("prior must be a distribution (input dimension 0)");
  return lin_compose(lin_product(lin_identity(a.src_dim()), a), f);
}

/// Conditional b : R^m -> R^n of the joint generated by f and a, so that
/// (b * i) . (a . f) = (i * a) . f. G = A_a Sigma_f A_a^T + Sigma_a is inverted
/// by pseudo-inverse.
inline LinearIT lin_conditional(const LinearIT& f, const LinearIT& a) {
  if (f.src_dim() != 0) throw MismatchError("prior must be a distribution (input dimension 0)");
  if (f.dst_dim() != a.src_dim())
    throw MismatchError("prior dimension " + std::to_string(f.dst_dim()) + " does not match channel input " +
                        std::to_string(a.src_dim()));
  const Matrix& sf = f.Sigma();
  const Matrix g = a.A() * sf * a.A().transpose() + a.Sigma();
  const Matrix gain = sf * a.A().transpose() * pseudo_inverse(g);
  Matrix s = sf - gain * a.A() * sf;
  s = 0.5 * (s + s.transpose());
  return LinearIT(gain, s);
}

/// Max-norm gap between (b * i) . g and (i * a) . f where g = a . f.
inline double lin_conditional_residual(const LinearIT& f, const LinearIT& a, const LinearIT& b) {
  const LinearIT g = lin_compose(a, f);
  const LinearIT lhs = lin_compose(lin_product(b, lin_identity(a.dst_dim())), g);
  const LinearIT rhs = lin_joint_from(f, a);
  return std::max(max_norm(lhs.A() - rhs.A()), max_norm(lhs.Sigma() - rhs.Sigma()));
}

/// Conditional of a joint distribution on R^n x R^m with respect to the first
/// (a : R^n -> R^m) or second (b : R^m -> R^n) factor.
inline LinearIT lin_conditional_joint(const LinearIT& h, Eigen::Index n, bool wrt_first) {
  if (h.src_dim() != 0) throw MismatchError("joint must be a distribution (input dimension 0)");
  if (n < 0 || n > h.dst_dim()) throw MismatchError("split point outside the joint dimension");
  const Eigen::Index m = h.dst_dim() - n;
  const Matrix& s = h.Sigma();
  const Matrix s11 = s.topLeftCorner(n, n), s12 = s.topRightCorner(n, m), s22 = s.bottomRightCorner(m, m);
  if (wrt_first) {
    const Matrix gain = s12.transpose() * pseudo_inverse(s11);
    Matrix cov = s22 - gain * s12;
    return LinearIT(gain, 0.5 * (cov + cov.transpose()));
  }
  const Matrix gain = s12 * pseudo_inverse(s22);
  Matrix cov = s11 - gain * s12.transpose();
  return LinearIT(gain, 0.5 * (cov + cov.transpose()));
}

// Random instances for property tests.

inline double uniform01(Rng& rng) { return static_cast<double>(rng.next() >> 11) * 0x1.0p-53; }

inline double standard_normal(Rng& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

inline Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = 2.0 * uniform01(rng) - 1.0;
  return m;
}

/// Random covariance; positive definite unless `rank` is below n.
inline Matrix random_covariance(Rng& rng, Eigen::Index n, Eigen::Index rank = -1) {
  if (rank < 0) rank = n;
  const Matrix f = random_matrix(rng, n, rank);
  Matrix s = f * f.transpose();
  if (rank == n) s += 0.1 * Matrix::Identity(n, n);
  return 0.5 * (s + s.transpose());
}

inline LinearIT random_linear(Rng& rng, Eigen::Index src, Eigen::Index dst) {
  return LinearIT(random_matrix(rng, dst, src), random_covariance(rng, dst));
}

}  // namespace itcat
