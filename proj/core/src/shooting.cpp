#include "pxlap/shooting.hpp"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pxlap {

namespace {

using State = std::array<double, 2>;  // (u, w) with w = |u'|^(p-2) u'

struct PLaplaceSystem {
  double p;
  double lambda;

  void operator()(const State& s, State& ds, double /*x*/) const {
    const double w = s[1];
    const double u = s[0];
    ds[0] = w == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(w), 1.0 / (p - 1.0)), w);
    ds[1] = u == 0.0 ? 0.0 : -(lambda / p) * std::copysign(std::pow(std::abs(u), p - 1.0), u);
  }
};

}  // namespace

double first_zero(double p, double lambda, double horizon, double ode_tolerance) {
  namespace odeint = boost::numeric::odeint;
  using Stepper = odeint::runge_kutta_dopri5<State>;

  PLaplaceSystem sys{p, lambda};
  auto stepper = odeint::make_dense_output(ode_tolerance, ode_tolerance, Stepper());
  State start{0.0, 1.0};
  stepper.initialize(start, 0.0, 1e-6 * horizon);

  State mid;
  while (stepper.current_time() < horizon) {
    const auto [t0, t1] = stepper.do_step(sys);
    if (stepper.current_state()[0] > 0.0 || t0 == 0.0) continue;
    // Sign change of u inside (t0, t1]: bisect on the dense output.
    double lo = t0;
    double hi = t1;
    for (int i = 0; i < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++i) {
      const double m = 0.5 * (lo + hi);
      stepper.calc_state(m, mid);
      if (mid[0] > 0.0) {
        lo = m;
      } else {
        hi = m;
      }
    }
    return 0.5 * (lo + hi);
  }
  return std::numeric_limits<double>::infinity();
}

double constant_p_oracle(double p, double length, const ShootingOptions& opts) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("shooting oracle needs a finite p > 1");
  if (!(length > 0.0) || !std::isfinite(length)) throw std::invalid_argument("shooting oracle needs length > 0");

  const double horizon = 1.5 * length;
  auto zero_at = [&](double lambda) { return first_zero(p, lambda, horizon, opts.ode_tolerance); };

  // The first zero moves left as lambda grows.
  double lo = 1.0;
  double hi = 1.0;
  constexpr int kGrowth = 400;
  if (zero_at(1.0) > length) {
    int k = 0;
    while (zero_at(hi) > length) {
      lo = hi;
      hi *= 2.0;
      if (++k > kGrowth) throw std::runtime_error("shooting bracket failure: no upper lambda found");
    }
  } else {
    int k = 0;
    while (zero_at(lo) <= length) {
      hi = lo;
      lo *= 0.5;
      if (++k > kGrowth) throw std::runtime_error("shooting bracket failure: no lower lambda found");
    }
  }

  for (int i = 0; i < opts.max_bisections; ++i) {
    if (hi - lo <= opts.lambda_tolerance * hi) return 0.5 * (lo + hi);
    const double mid = 0.5 * (lo + hi);
    if (zero_at(mid) > length) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw std::runtime_error("shooting bisection did not reach tolerance in " + std::to_string(opts.max_bisections) +
                           " steps");
}

}  // namespace pxlap
