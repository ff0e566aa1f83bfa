#pragma once

#include <vector>

namespace pxlap::harness {

/// Parameters of the recursion x_{i+1} = C B^i x_i^(1+beta).
struct MoserParams {
  double C = 1.0;     ///< > 0
  double B = 2.0;     ///< > 1
  double beta = 1.0;  ///< > 0
  double x0 = 0.0;    ///< >= 0
  int iterations = 50;

  /// Throws std::invalid_argument when a parameter is out of range.
  void validate() const;
  /// C^(-1/beta) B^(-1/beta^2): starting values at or below it decay to 0.
  double threshold() const;
};

struct MoserOutcome {
  std::vector<double> sequence;  ///< x_0 ... x_iterations
  bool seed_condition = false;   ///< x0 <= threshold
  bool overflow = false;         ///< an iterate became infinite
  bool verdict = false;          ///< seed condition held and the last iterate < 1e-8
};

/// Iterates the recursion with equality.
MoserOutcome moser_limit_check(const MoserParams& params);

}  // namespace pxlap::harness
