#include "pxlap/moser.hpp"

#include <cmath>
#include <stdexcept>

namespace pxlap::harness {

void MoserParams::validate() const {
  if (!(C > 0.0) || !std::isfinite(C)) throw std::invalid_argument("Moser parameter C must be positive");
  if (!(B > 1.0) || !std::isfinite(B)) throw std::invalid_argument("Moser parameter B must exceed 1");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("Moser parameter beta must be positive");
  if (!(x0 >= 0.0) || !std::isfinite(x0)) throw std::invalid_argument("Moser start x0 must be nonnegative");
  if (iterations < 0) throw std::invalid_argument("Moser iteration count must be nonnegative");
}

double MoserParams::threshold() const {
  return std::pow(C, -1.0 / beta) * std::pow(B, -1.0 / (beta * beta));
}

MoserOutcome moser_limit_check(const MoserParams& params) {
  params.validate();
  MoserOutcome out;
  out.seed_condition = params.x0 <= params.threshold();
  out.sequence.reserve(static_cast<std::size_t>(params.iterations) + 1);
  double x = params.x0;
  out.sequence.push_back(x);
  for (int i = 0; i < params.iterations; ++i) {
    x = params.C * std::pow(params.B, i) * std::pow(x, 1.0 + params.beta);
    if (!std::isfinite(x)) {
      out.overflow = true;
      out.sequence.push_back(x);
      break;
    }
    out.sequence.push_back(x);
  }
  out.verdict = out.seed_condition && !out.overflow && out.sequence.back() < 1e-8;
  return out;
}

}  // namespace pxlap::harness
