#include "pxlap/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pxlap::harness {

void ConstantEstimate::add(std::map<std::string, double> params, double lhs, double rhs) {
  EstimateWitness w{std::move(params), lhs, rhs, 0.0};
  if (rhs > 0.0) {
    w.ratio = lhs / rhs;
  } else if (lhs > 0.0) {
    w.ratio = std::numeric_limits<double>::infinity();
  }
  estimated_c = std::max(estimated_c, w.ratio);
  witnesses.push_back(std::move(w));
}

bool ConstantEstimate::finite() const { return std::isfinite(estimated_c); }

void compare_resolutions(ConstantEstimate& coarse, const ConstantEstimate& fine, double factor) {
  coarse.stability_checked = true;
  const double a = coarse.estimated_c;
  const double b = fine.estimated_c;
  if (a == 0.0 && b == 0.0) {
    coarse.resolution_ratio = 1.0;
  } else if (a == 0.0 || b == 0.0 || !std::isfinite(a) || !std::isfinite(b)) {
    coarse.resolution_ratio = std::numeric_limits<double>::infinity();
  } else {
    coarse.resolution_ratio = std::max(a, b) / std::min(a, b);
  }
  coarse.stable_across_resolutions = coarse.resolution_ratio <= factor;
}

ConstantEstimate caccioppoli_constant(const ScalarField& u, const ProblemSpec& spec, const Point& center,
                                      std::span<const double> levels, std::span<const RadiusTriple> radii) {
  if (!(u.grid() == spec.grid())) throw std::invalid_argument("field and problem live on different grids");
  const GridSpec& g = u.grid();
  const double pm = spec.p().p_minus();
  const double pp = spec.p().p_plus();
  const std::vector<double> grad = nodal_gradient_magnitude(u);
  const double vol = g.cell_volume();

  ConstantEstimate est;
  for (const RadiusTriple& r : radii) {
    if (!(0.0 < r.s && r.s < r.t && r.t < r.R && r.R < 1.0)) {
      throw std::invalid_argument("Caccioppoli radii must satisfy 0 < s < t < R < 1");
    }
    for (double k : levels) {
      if (!(k > 0.0)) throw std::invalid_argument("Caccioppoli levels must be positive");
      const LevelSetData as = level_set(u, k, {center, r.s});
      const LevelSetData at = level_set(u, k, {center, r.t});
      const LevelSetData aR = level_set(u, k, {center, r.R});

      double lhs = 0.0;
      double tail = 0.0;
      for (std::size_t n = 0; n < g.node_count(); ++n) {
        if (as.member_mask[n] && grad[n] > 0.0) lhs += std::pow(grad[n], pm);
        if (at.member_mask[n]) tail += std::pow((u[n] - k) / (r.t - r.s), pp);
      }
      lhs *= vol;
      tail *= vol;
      const double rhs = tail + (1.0 + std::pow(k, pp)) * aR.measure;
      if (rhs == 0.0 && lhs > 0.0) throw std::logic_error("empty A(k,R) with a nonzero gradient integral");
      est.add({{"k", k}, {"s", r.s}, {"t", r.t}, {"R", r.R}}, lhs, rhs);
    }
  }
  return est;
}

OscillationProfile oscillation_profile(const ScalarField& u, const Point& center, std::span<const double> radii,
                                       double holder_exponent) {
  if (radii.size() < 3) throw std::invalid_argument("oscillation profile needs at least 3 radii");
  OscillationProfile prof;
  prof.holder_exponent = holder_exponent;
  std::vector<double> lx;
  std::vector<double> ly;
  for (double R : radii) {
    if (!ball_inside(u.grid(), {center, R})) throw std::invalid_argument("oscillation ball leaves the domain");
    const double osc = level_set(u, 0.0, {center, 0.5 * R}).oscillation;
    prof.radii.push_back(R);
    prof.oscillations.push_back(osc);
    prof.estimate.add({{"R", R}}, osc, std::pow(R, holder_exponent));
    if (osc > 0.0) {
      lx.push_back(std::log(R));
      ly.push_back(std::log(osc));
    }
  }
  if (lx.size() >= 2) {
    const double n = static_cast<double>(lx.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx > 0.0) {
      prof.fitted_exponent = sxy / sxx;
      prof.exponent_fitted = true;
    }
  }
  for (double R : prof.radii) prof.bounds.push_back(prof.estimate.estimated_c * std::pow(R, holder_exponent));
  return prof;
}

double harnack_beta(int n) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  return 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 / n));
}

HarnackCheck harnack_bound_check(const ScalarField& u, const ProblemSpec& spec, const Point& center, double R) {
  if (!(u.grid() == spec.grid())) throw std::invalid_argument("field and problem live on different grids");
  const GridSpec& g = u.grid();
  const int n = g.dimension();
  HarnackCheck out;
  out.beta = harnack_beta(n);

  double sup = 0.0;
  for (double v : u.values()) sup = std::max(sup, v);
  const ScalarField w = sup > 0.0 ? u.scaled(1.0 / sup) : u;

  const double p = spec.p().p_minus();
  const double q = spec.p().p_plus();
  const ScalarField p_nodes = nodal_average(spec.p().samples());

  const LevelSetData half = level_set(w, 0.0, {center, 0.5 * R});
  const LevelSetData full = level_set(w, 0.0, {center, R});
  out.lhs = std::max(half.sup_on_ball, 0.0);

  std::vector<double> integrand(g.node_count(), 0.0);
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (full.member_mask[i]) integrand[i] = std::pow(std::abs(w[i] / R), p_nodes[i]);
  }
  const double mean = mean_integral(g, integrand, full.member_mask, full.ball_measure);
  const double Rn = std::pow(R, n);
  out.bracket = std::pow(R, p / q) * std::pow(std::pow(full.measure / Rn, out.beta) * mean + Rn, 1.0 / q);
  out.estimate.add({{"R", R}, {"beta", out.beta}}, out.lhs, out.bracket);
  return out;
}

SpInequalityCheck sp_inequality_check(std::span<const ScalarField> witnesses, const ExponentField& a,
                                      const Point& center, double R, double gamma) {
  const GridSpec& g = a.grid();
  if (g.dimension() < 2) throw std::invalid_argument("the Sobolev-Poincare check needs a 2D grid (n >= 2)");
  if (!ball_inside(g, {center, R})) throw std::invalid_argument("Sobolev-Poincare ball leaves the domain");
  const double n = g.dimension();
  const ScalarField a_nodes = nodal_average(a.samples());
  const std::vector<bool> mask = ball_mask(g, {center, R});
  const double ball_measure = integrate_nodes(g, std::vector<double>(g.node_count(), 1.0), mask);

  SpInequalityCheck out;
  for (const ScalarField& u : witnesses) {
    if (!(u.grid() == g)) throw std::invalid_argument("witness and exponent live on different grids");
    std::vector<double> wv(g.node_count(), 0.0);
    for (std::size_t i = 0; i < wv.size(); ++i) {
      const Point x = g.node_coord(i);
      const double r2 = (x[0] - center[0]) * (x[0] - center[0]) + (x[1] - center[1]) * (x[1] - center[1]);
      wv[i] = std::max(0.0, 1.0 - r2 / (R * R)) * u[i];
    }
    const ScalarField w(g, Locus::Nodes, wv);
    const std::vector<double> grad = nodal_gradient_magnitude(w);

    std::vector<double> f_lhs(g.node_count(), 0.0);
    std::vector<double> f_grad(g.node_count(), 0.0);
    std::vector<double> support(g.node_count(), 0.0);
    for (std::size_t i = 0; i < wv.size(); ++i) {
      if (!mask[i]) continue;
      const double e = a_nodes[i];
      if (wv[i] != 0.0) {
        f_lhs[i] = std::pow(std::abs(wv[i] / R), e * n / (n - 1.0));
        support[i] = 1.0;
      }
      if (grad[i] > 0.0) f_grad[i] = std::pow(grad[i], e);
    }
    SpWitness sw;
    sw.lhs = std::pow(mean_integral(g, f_lhs, mask, ball_measure), (n - 1.0) / n);
    sw.gradient_term = mean_integral(g, f_grad, mask, ball_measure);
    sw.support_term = std::pow(integrate_nodes(g, support, mask), gamma);
    out.witnesses.push_back(sw);
  }

  // For each c on a log grid the least chi that covers every witness.
  auto chi_for = [&](double c) {
    double chi = 0.0;
    for (const SpWitness& w : out.witnesses) {
      const double gap = w.lhs - c * w.gradient_term;
      if (gap <= 0.0) continue;
      if (w.support_term > 0.0) {
        chi = std::max(chi, gap / w.support_term);
      } else {
        return std::numeric_limits<double>::infinity();
      }
    }
    return chi;
  };
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> cs{0.0};
  for (int k = -60; k <= 60; ++k) cs.push_back(std::pow(10.0, k / 10.0));
  for (double c : cs) {
    const double chi = chi_for(c);
    if (c + chi < best) {
      best = c + chi;
      out.c = c;
      out.chi = chi;
    }
  }
  out.holds = std::isfinite(best);
  for (const SpWitness& w : out.witnesses) {
    if (w.lhs > (out.c * w.gradient_term + out.chi * w.support_term) * (1.0 + 1e-12)) out.holds = false;
  }
  return out;
}

}  // namespace pxlap::harness
