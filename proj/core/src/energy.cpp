#include "pxlap/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pxlap {

namespace {

// Cells with 1 < p < 2 floor |grad u| here so that |g|^(p-2) stays finite.
constexpr double kGradientFloor = 1e-14;

void require_grid(const ScalarField& u, const ProblemSpec& spec) {
  if (!(u.grid() == spec.grid())) throw std::invalid_argument("field and problem live on different grids");
  if (u.locus() != Locus::Nodes) throw std::invalid_argument("energies expect a node field");
}

void require_dirichlet(const ScalarField& u) {
  const double scale = std::max(1.0, u.max_abs());
  const double b = boundary_max_abs(u);
  if (b > 1e-12 * scale) {
    throw std::invalid_argument("field violates the Dirichlet condition: max |u| on boundary = " +
                                std::to_string(b));
  }
}

double signed_pow(double v, double e) {
  if (v == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(v), e), v);
}

}  // namespace

ProblemSpec::ProblemSpec(ExponentField p, CoefficientFields coeffs) : p_(std::move(p)), coeffs_(std::move(coeffs)) {
  if (!(p_.grid() == coeffs_.a().grid()) || !(p_.grid() == coeffs_.b().grid())) {
    throw std::invalid_argument("exponent and coefficients live on different grids");
  }
}

ProblemSpec ProblemSpec::from_expressions(const GridSpec& grid, std::string_view p, std::string_view a,
                                          std::string_view b) {
  return ProblemSpec(validate_exponent(sample_field(p, grid, Locus::QuadraturePoints)),
                     make_coefficients(sample_field(a, grid, Locus::QuadraturePoints),
                                       sample_field(b, grid, Locus::QuadraturePoints)));
}

ProblemSpec ProblemSpec::with_scaled_b(double t) const {
  return ProblemSpec(p_, make_coefficients(coeffs_.a(), coeffs_.b().scaled(t)));
}

ProblemSpec ProblemSpec::with_shifted_a(double c) const {
  std::vector<double> a(coeffs_.a().values().begin(), coeffs_.a().values().end());
  for (double& v : a) v += c;
  return ProblemSpec(p_, make_coefficients(ScalarField(grid(), Locus::QuadraturePoints, std::move(a)), coeffs_.b()));
}

namespace detail {

void flux(double p, double gx, double gy, double& fx, double& fy) {
  const double mag = std::hypot(gx, gy);
  if (mag == 0.0) {
    fx = fy = 0.0;
    return;
  }
  const double w = std::pow(p < 2.0 ? std::max(mag, kGradientFloor) : mag, p - 2.0);
  fx = w * gx;
  fy = w * gy;
}

Energies energies(const ProblemSpec& spec, std::span<const double> u) {
  const GridSpec& g = spec.grid();
  const ExponentField& p = spec.p();
  const auto a = spec.coeffs().a().values();
  const auto b = spec.coeffs().b().values();
  const double vol = g.cell_volume();
  const bool one_d = g.dimension() == 1;
  const double hx = g.spacing(0);
  const double hy = g.spacing(1);

  double sum_a = 0.0;
  double sum_b = 0.0;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const auto k = g.cell_corners(c);
    double m;
    double grad2;
    if (one_d) {
      m = 0.5 * (u[k[0]] + u[k[1]]);
      const double gx = (u[k[1]] - u[k[0]]) / hx;
      grad2 = gx * gx;
    } else {
      m = 0.25 * ((u[k[0]] + u[k[1]]) + (u[k[2]] + u[k[3]]));
      const double gx = ((u[k[1]] + u[k[3]]) - (u[k[0]] + u[k[2]])) / (2.0 * hx);
      const double gy = ((u[k[2]] + u[k[3]]) - (u[k[0]] + u[k[1]])) / (2.0 * hy);
      grad2 = gx * gx + gy * gy;
    }
    const double pc = p[c];
    const double um = std::abs(m);
    const double up = um == 0.0 ? 0.0 : std::pow(um, pc);
    const double gp = grad2 == 0.0 ? 0.0 : std::pow(grad2, 0.5 * pc);
    sum_a += gp + (a[c] / pc) * up;
    sum_b += (b[c] / pc) * up;
  }
  return {vol * sum_a, vol * sum_b};
}

void energy_gradients(const ProblemSpec& spec, std::span<const double> u, std::span<double> grad_A,
                      std::span<double> grad_B) {
  const GridSpec& g = spec.grid();
  const ExponentField& p = spec.p();
  const auto a = spec.coeffs().a().values();
  const auto b = spec.coeffs().b().values();
  const double vol = g.cell_volume();
  const double hx = g.spacing(0);
  const double hy = g.spacing(1);
  std::fill(grad_A.begin(), grad_A.end(), 0.0);
  std::fill(grad_B.begin(), grad_B.end(), 0.0);

  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const auto k = g.cell_corners(c);
    const double pc = p[c];
    if (g.dimension() == 1) {
      const double m = 0.5 * (u[k[0]] + u[k[1]]);
      const double gx = (u[k[1]] - u[k[0]]) / hx;
      double fx;
      double fy;
      flux(pc, gx, 0.0, fx, fy);
      const double dg = vol * pc * fx / hx;        // dA/dg * dg/du_{k1}
      const double mp = signed_pow(m, pc - 1.0);
      const double dma = 0.5 * vol * a[c] * mp;    // dA/dm * dm/du
      const double dmb = 0.5 * vol * b[c] * mp;
      grad_A[k[0]] += -dg + dma;
      grad_A[k[1]] += dg + dma;
      grad_B[k[0]] += dmb;
      grad_B[k[1]] += dmb;
    } else {
      const double m = 0.25 * ((u[k[0]] + u[k[1]]) + (u[k[2]] + u[k[3]]));
      const double gx = ((u[k[1]] + u[k[3]]) - (u[k[0]] + u[k[2]])) / (2.0 * hx);
      const double gy = ((u[k[2]] + u[k[3]]) - (u[k[0]] + u[k[1]])) / (2.0 * hy);
      double fx;
      double fy;
      flux(pc, gx, gy, fx, fy);
      const double cx = vol * pc * fx / (2.0 * hx);
      const double cy = vol * pc * fy / (2.0 * hy);
      const double mp = signed_pow(m, pc - 1.0);
      const double dma = 0.25 * vol * a[c] * mp;
      const double dmb = 0.25 * vol * b[c] * mp;
      // d g_x / d u_k = (-1, +1, -1, +1) / 2hx ; d g_y / d u_k = (-1, -1, +1, +1) / 2hy
      grad_A[k[0]] += -cx - cy + dma;
      grad_A[k[1]] += cx - cy + dma;
      grad_A[k[2]] += -cx + cy + dma;
      grad_A[k[3]] += cx + cy + dma;
      for (int q = 0; q < 4; ++q) grad_B[k[q]] += dmb;
    }
  }
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    if (g.is_boundary(n)) grad_A[n] = grad_B[n] = 0.0;
  }
}

double residual_norm(const GridSpec& grid, std::span<const double> r) {
  double sum = 0.0;
  for (std::size_t n = 0; n < r.size(); ++n) {
    if (!grid.is_boundary(n)) sum += r[n] * r[n];
  }
  return std::sqrt(sum / grid.cell_volume());
}

}  // namespace detail

double energy_A(const ScalarField& u, const ProblemSpec& spec) {
  require_grid(u, spec);
  require_dirichlet(u);
  return detail::energies(spec, u.values()).A;
}

double energy_B(const ScalarField& u, const ProblemSpec& spec) {
  require_grid(u, spec);
  require_dirichlet(u);
  return detail::energies(spec, u.values()).B;
}

double rayleigh(const ScalarField& u, const ProblemSpec& spec) {
  require_grid(u, spec);
  require_dirichlet(u);
  const auto e = detail::energies(spec, u.values());
  if (!(e.A > 0.0)) throw std::invalid_argument("Rayleigh quotient of the zero field is undefined");
  return e.B / e.A;
}

double functional_J(const ScalarField& u, double lambda, const ProblemSpec& spec) {
  require_grid(u, spec);
  require_dirichlet(u);
  const auto e = detail::energies(spec, u.values());
  return e.A - lambda * e.B;
}

EnergyBreakdown energy_breakdown(const ScalarField& u, double lambda, const ProblemSpec& spec) {
  require_grid(u, spec);
  require_dirichlet(u);
  const auto e = detail::energies(spec, u.values());
  EnergyBreakdown out;
  out.A = e.A;
  out.B = e.B;
  out.R = e.A > 0.0 ? e.B / e.A : 0.0;
  out.lambda = lambda;
  out.J = e.A - lambda * e.B;
  return out;
}

WeakResidual weak_residual(const ScalarField& u, double lambda, const ProblemSpec& spec) {
  require_grid(u, spec);
  require_dirichlet(u);
  const std::size_t n = spec.grid().node_count();
  std::vector<double> ga(n);
  std::vector<double> gb(n);
  detail::energy_gradients(spec, u.values(), ga, gb);
  for (std::size_t i = 0; i < n; ++i) ga[i] -= lambda * gb[i];
  WeakResidual out;
  out.norm = detail::residual_norm(spec.grid(), ga);
  out.residual = ScalarField(spec.grid(), Locus::Nodes, std::move(ga));
  return out;
}

}  // namespace pxlap
