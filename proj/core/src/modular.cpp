#include "pxlap/modular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace pxlap {

namespace {

void require_same_grid(const GridSpec& a, const ExponentField& p) {
  if (!(a == p.grid())) throw std::invalid_argument("field and exponent live on different grids");
}

std::vector<double> cell_magnitudes(const ScalarField& u) {
  const ScalarField mid = u.locus() == Locus::Nodes ? cell_average(u) : u;
  std::vector<double> m(mid.size());
  for (std::size_t c = 0; c < m.size(); ++c) m[c] = std::abs(mid[c]);
  return m;
}

std::vector<double> cell_magnitudes(const VectorField& g) {
  std::vector<double> m(g.size());
  for (std::size_t c = 0; c < m.size(); ++c) m[c] = g.magnitude(c);
  return m;
}

// Uniform on [0, 1) from the top 53 bits; identical across standard libraries.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

namespace detail {

double modular_of_magnitudes(std::span<const double> magnitudes, const ExponentField& p, double volume) {
  double sum = 0.0;
  for (std::size_t c = 0; c < magnitudes.size(); ++c) {
    if (magnitudes[c] != 0.0) sum += std::pow(magnitudes[c], p[c]);
  }
  return volume * sum;
}

LuxemburgNorm luxemburg_of_magnitudes(std::span<const double> magnitudes, const ExponentField& p, double volume,
                                      const LuxemburgOptions& opts) {
  LuxemburgNorm out;
  if (std::all_of(magnitudes.begin(), magnitudes.end(), [](double m) { return m == 0.0; })) return out;

  std::vector<double> scaled(magnitudes.size());
  auto rho_at = [&](double lambda) {
    for (std::size_t c = 0; c < scaled.size(); ++c) scaled[c] = magnitudes[c] / lambda;
    return modular_of_magnitudes(scaled, p, volume);
  };

  // rho(u / lambda) is strictly decreasing in lambda; find lo, hi with
  // rho(u / lo) > 1 >= rho(u / hi).
  double lo = 1.0;
  double hi = 1.0;
  constexpr int kGrowthCap = 2100;
  if (rho_at(1.0) > 1.0) {
    int steps = 0;
    while (rho_at(hi) > 1.0) {
      lo = hi;
      hi *= 2.0;
      if (++steps > kGrowthCap || !std::isfinite(hi)) throw std::runtime_error("Luxemburg bracket growth failed");
    }
  } else {
    int steps = 0;
    while (rho_at(lo) <= 1.0) {
      hi = lo;
      lo *= 0.5;
      if (++steps > kGrowthCap || lo == 0.0) throw std::runtime_error("Luxemburg bracket growth failed");
    }
  }

  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo < opts.tolerance * std::max(1.0, mid)) break;
    if (out.iterations >= opts.max_iterations) {
      throw std::runtime_error("Luxemburg norm bisection did not converge in " +
                               std::to_string(opts.max_iterations) + " iterations");
    }
    if (rho_at(mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++out.iterations;
  }
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  out.value = 0.5 * (lo + hi);
  return out;
}

}  // namespace detail

ModularValue modular(const ScalarField& u, const ExponentField& p) {
  require_same_grid(u.grid(), p);
  return {detail::modular_of_magnitudes(cell_magnitudes(u), p, u.grid().cell_volume()), IntegrandKind::Function};
}

ModularValue modular(const VectorField& g, const ExponentField& p) {
  require_same_grid(g.grid(), p);
  return {detail::modular_of_magnitudes(cell_magnitudes(g), p, g.grid().cell_volume()), IntegrandKind::Gradient};
}

LuxemburgNorm luxemburg_norm(const ScalarField& u, const ExponentField& p, const LuxemburgOptions& opts) {
  require_same_grid(u.grid(), p);
  return detail::luxemburg_of_magnitudes(cell_magnitudes(u), p, u.grid().cell_volume(), opts);
}

LuxemburgNorm luxemburg_norm(const VectorField& g, const ExponentField& p, const LuxemburgOptions& opts) {
  require_same_grid(g.grid(), p);
  return detail::luxemburg_of_magnitudes(cell_magnitudes(g), p, g.grid().cell_volume(), opts);
}

double sobolev_norm(const ScalarField& u, const ExponentField& p) {
  require_same_grid(u.grid(), p);
  if (u.locus() != Locus::Nodes) throw std::invalid_argument("sobolev_norm expects a node field");
  const double vol = u.grid().cell_volume();
  double total = luxemburg_norm(u, p).value;
  const VectorField grad = discrete_gradient(u);
  for (int axis = 0; axis < u.grid().dimension(); ++axis) {
    std::vector<double> m(grad.size());
    for (std::size_t c = 0; c < m.size(); ++c) m[c] = std::abs(grad.component(axis)[c]);
    total += detail::luxemburg_of_magnitudes(m, p, vol, {}).value;
  }
  return total;
}

PoincareEstimate poincare_constant_estimate(const GridSpec& grid, const ExponentField& p, int sample_count,
                                            std::uint64_t seed, std::span<const ScalarField> extra) {
  if (sample_count < 1) throw std::invalid_argument("poincare_constant_estimate needs sampleCount >= 1");
  if (!(grid == p.grid())) throw std::invalid_argument("grid and exponent do not match");

  std::mt19937_64 rng(seed);
  const int dim = grid.dimension();
  const double pi = std::numbers::pi;

  // Normalised coordinates in [0, 1]^dim.
  auto unit = [&](const Point& x, int axis) {
    return (x[axis] - grid.extent(axis).lo) / grid.extent(axis).length();
  };

  auto make_sample = [&](int index) {
    std::vector<double> v(grid.node_count(), 0.0);
    if (index == 0) {
      for (std::size_t n = 0; n < v.size(); ++n) {
        const Point x = grid.node_coord(n);
        v[n] = std::sin(pi * unit(x, 0)) * (dim == 2 ? std::sin(pi * unit(x, 1)) : 1.0);
      }
    } else if (index % 2 == 1) {
      // Sine series with decaying random coefficients.
      constexpr int kModes = 4;
      double coeff[kModes][kModes] = {};
      for (int k = 0; k < kModes; ++k) {
        for (int l = 0; l < (dim == 2 ? kModes : 1); ++l) {
          coeff[k][l] = (2.0 * uniform01(rng) - 1.0) / ((k + 1) * (l + 1));
        }
      }
      for (std::size_t n = 0; n < v.size(); ++n) {
        const Point x = grid.node_coord(n);
        double s = 0.0;
        for (int k = 0; k < kModes; ++k) {
          const double sx = std::sin((k + 1) * pi * unit(x, 0));
          if (dim == 1) {
            s += coeff[k][0] * sx;
          } else {
            for (int l = 0; l < kModes; ++l) s += coeff[k][l] * sx * std::sin((l + 1) * pi * unit(x, 1));
          }
        }
        v[n] = s;
      }
    } else {
      // Compactly supported bump (1 - r^2/rho^2)_+^2 at a random centre.
      Point c{0.0, 0.0};
      for (int axis = 0; axis < dim; ++axis) c[axis] = 0.2 + 0.6 * uniform01(rng);
      const double rho = 0.1 + 0.3 * uniform01(rng);
      for (std::size_t n = 0; n < v.size(); ++n) {
        const Point x = grid.node_coord(n);
        double r2 = 0.0;
        for (int axis = 0; axis < dim; ++axis) r2 += (unit(x, axis) - c[axis]) * (unit(x, axis) - c[axis]);
        const double w = std::max(0.0, 1.0 - r2 / (rho * rho));
        v[n] = w * w;
      }
    }
    // Random amplitude matters when p varies.
    const double amplitude = index == 0 ? 1.0 : std::exp(std::log(0.25) + uniform01(rng) * std::log(16.0));
    for (double& x : v) x *= amplitude;
    return with_dirichlet_zero(ScalarField(grid, Locus::Nodes, std::move(v)));
  };

  PoincareEstimate out;
  auto consider = [&](const ScalarField& u) {
    const double num = modular(u, p).value;
    const double den = modular(discrete_gradient(u), p).value;
    if (!(den > 0.0)) {
      ++out.skipped;
      return;
    }
    const double r = num / den;
    out.ratios.push_back(r);
    out.constant = std::max(out.constant, r);
  };

  for (int s = 0; s < sample_count; ++s) consider(make_sample(s));
  for (const ScalarField& u : extra) {
    if (!(u.grid() == grid)) throw std::invalid_argument("extra Poincare sample lives on another grid");
    consider(with_dirichlet_zero(u));
  }
  return out;
}

}  // namespace pxlap
