#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "pxlap/energy.hpp"

namespace pxlap::detail {

/// SPD approximation of the Hessian of A(u) restricted to interior nodes:
/// the exact second derivative of sum_c vol |g_c|^p (and of the a-term), with
/// |g| and |m| floored relative to their maxima so the matrix stays definite
/// where the gradient degenerates.
class HessianPreconditioner {
 public:
  explicit HessianPreconditioner(const GridSpec& grid);
  ~HessianPreconditioner();
  HessianPreconditioner(const HessianPreconditioner&) = delete;
  HessianPreconditioner& operator=(const HessianPreconditioner&) = delete;

  /// Returns false when the factorisation fails.  `extra_diagonal`, when
  /// given, is node-sized and added to the interior diagonal.
  bool assemble(const ProblemSpec& spec, std::span<const double> u, std::span<const double> extra_diagonal = {});

  /// Solves P x = rhs on interior nodes; node-sized in and out, boundary entries of x are 0.
  void solve(std::span<const double> rhs, std::span<double> x) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Bordered Jacobian of the eigenvalue system in the unknowns (u, lambda):
///   [ H_A - lambda H_B   -grad B ] [du]   [ -r ]
///   [ border row                 ] [dl] = [  0 ]
/// with exact Hessians of the discrete A and B.  For constant p the border
/// row is grad B^T (fixing B, which removes the scaling null direction); for
/// variable p it is (r^T, -B), the linearisation of A - lambda B = 0.
class EigenJacobian {
 public:
  explicit EigenJacobian(const GridSpec& grid);
  ~EigenJacobian();
  EigenJacobian(const EigenJacobian&) = delete;
  EigenJacobian& operator=(const EigenJacobian&) = delete;

  /// `residual` and `grad_B` are node-sized.  Returns false when the
  /// factorisation fails.
  bool assemble(const ProblemSpec& spec, std::span<const double> u, double lambda, std::span<const double> residual,
                std::span<const double> grad_B, double B);
  /// Newton update du for the right-hand side -residual; boundary entries 0.
  void solve(std::span<const double> residual, std::span<double> du) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pxlap::detail
