#include "preconditioner.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

namespace pxlap::detail {

namespace {
constexpr double kRelativeFloor = 1e-3;
constexpr double kAbsoluteFloor = 1e-12;
// Only guards |g|^(p-2) and |m|^(p-2) against 0^(negative) when p < 2.
constexpr double kExactFloor = 1e-10;

/// Derivatives of g_x, g_y and the cell mean with respect to the corner values.
struct CellStencil {
  double dgx[4];
  double dgy[4];
  double dm[4];
};

CellStencil make_stencil(const GridSpec& g) {
  CellStencil s{};
  if (g.dimension() == 1) {
    s.dgx[0] = -1.0 / g.spacing(0);
    s.dgx[1] = 1.0 / g.spacing(0);
    s.dm[0] = s.dm[1] = 0.5;
  } else {
    const double ax = 1.0 / (2.0 * g.spacing(0));
    const double ay = 1.0 / (2.0 * g.spacing(1));
    s.dgx[0] = -ax, s.dgx[1] = ax, s.dgx[2] = -ax, s.dgx[3] = ax;
    s.dgy[0] = -ay, s.dgy[1] = -ay, s.dgy[2] = ay, s.dgy[3] = ay;
    s.dm[0] = s.dm[1] = s.dm[2] = s.dm[3] = 0.25;
  }
  return s;
}

std::vector<int> interior_dofs(const GridSpec& grid, int& count) {
  std::vector<int> dof(grid.node_count(), -1);
  count = 0;
  for (std::size_t n = 0; n < grid.node_count(); ++n) {
    if (!grid.is_boundary(n)) dof[n] = count++;
  }
  return dof;
}
}  // namespace

struct HessianPreconditioner::Impl {
  GridSpec grid;
  std::vector<int> dof;  // node -> interior dof, -1 on the boundary
  int ndof = 0;
  Eigen::SparseMatrix<double> matrix;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  bool analysed = false;
  std::vector<Eigen::Triplet<double>> triplets;
};

HessianPreconditioner::HessianPreconditioner(const GridSpec& grid) : impl_(std::make_unique<Impl>()) {
  impl_->grid = grid;
  impl_->dof.assign(grid.node_count(), -1);
  for (std::size_t n = 0; n < grid.node_count(); ++n) {
    if (!grid.is_boundary(n)) impl_->dof[n] = impl_->ndof++;
  }
  impl_->matrix.resize(impl_->ndof, impl_->ndof);
}

HessianPreconditioner::~HessianPreconditioner() = default;

bool HessianPreconditioner::assemble(const ProblemSpec& spec, std::span<const double> u,
                                     std::span<const double> extra_diagonal) {
  Impl& s = *impl_;
  const GridSpec& g = s.grid;
  const ExponentField& p = spec.p();
  const auto a = spec.coeffs().a().values();
  const double vol = g.cell_volume();
  const double hx = g.spacing(0);
  const double hy = g.spacing(1);
  const bool one_d = g.dimension() == 1;
  const int corners = g.corners_per_cell();

  // Cell gradients and means, and their maxima for the floors.
  const std::size_t nc = g.cell_count();
  std::vector<double> gx(nc), gy(nc, 0.0), mean(nc);
  double gmax = 0.0;
  double mmax = 0.0;
  for (std::size_t c = 0; c < nc; ++c) {
    const auto k = g.cell_corners(c);
    if (one_d) {
      gx[c] = (u[k[1]] - u[k[0]]) / hx;
      mean[c] = 0.5 * (u[k[0]] + u[k[1]]);
    } else {
      gx[c] = ((u[k[1]] + u[k[3]]) - (u[k[0]] + u[k[2]])) / (2.0 * hx);
      gy[c] = ((u[k[2]] + u[k[3]]) - (u[k[0]] + u[k[1]])) / (2.0 * hy);
      mean[c] = 0.25 * ((u[k[0]] + u[k[1]]) + (u[k[2]] + u[k[3]]));
    }
    gmax = std::max(gmax, std::hypot(gx[c], gy[c]));
    mmax = std::max(mmax, std::abs(mean[c]));
  }
  const double gfloor = std::max(kRelativeFloor * gmax, kAbsoluteFloor);
  const double mfloor = std::max(kRelativeFloor * mmax, kAbsoluteFloor);

  s.triplets.clear();
  s.triplets.reserve(nc * corners * corners);
  for (std::size_t c = 0; c < nc; ++c) {
    const auto k = g.cell_corners(c);
    const double pc = p[c];
    // Derivatives of g_x, g_y and m with respect to the corner values.
    double dgx[4], dgy[4], dm[4];
    if (one_d) {
      dgx[0] = -1.0 / hx;
      dgx[1] = 1.0 / hx;
      dgy[0] = dgy[1] = 0.0;
      dm[0] = dm[1] = 0.5;
    } else {
      const double ax = 1.0 / (2.0 * hx);
      const double ay = 1.0 / (2.0 * hy);
      dgx[0] = -ax, dgx[1] = ax, dgx[2] = -ax, dgx[3] = ax;
      dgy[0] = -ay, dgy[1] = -ay, dgy[2] = ay, dgy[3] = ay;
      dm[0] = dm[1] = dm[2] = dm[3] = 0.25;
    }

    // Hessian of |g|^p: p |g|^(p-2) (I + (p-2) n n^T), n = g / |g|.
    const double mag = std::hypot(gx[c], gy[c]);
    const double mag_f = std::max(mag, gfloor);
    const double w = vol * pc * std::pow(mag_f, pc - 2.0);
    double nx = 0.0;
    double ny = 0.0;
    if (mag > 0.0) {
      nx = gx[c] / mag;
      ny = gy[c] / mag;
    } else {
      nx = 1.0;
    }
    const double hxx = w * (1.0 + (pc - 2.0) * nx * nx);
    const double hyy = one_d ? 0.0 : w * (1.0 + (pc - 2.0) * ny * ny);
    const double hxy = one_d ? 0.0 : w * (pc - 2.0) * nx * ny;
    const double wm = a[c] > 0.0 ? vol * a[c] * (pc - 1.0) * std::pow(std::max(std::abs(mean[c]), mfloor), pc - 2.0) : 0.0;

    for (int i = 0; i < corners; ++i) {
      const int di = s.dof[k[i]];
      if (di < 0) continue;
      for (int j = 0; j < corners; ++j) {
        const int dj = s.dof[k[j]];
        if (dj < 0) continue;
        const double v = hxx * dgx[i] * dgx[j] + hyy * dgy[i] * dgy[j] + hxy * (dgx[i] * dgy[j] + dgy[i] * dgx[j]) +
                         wm * dm[i] * dm[j];
        s.triplets.emplace_back(di, dj, v);
      }
    }
  }
  if (!extra_diagonal.empty()) {
    for (std::size_t n = 0; n < s.dof.size(); ++n) {
      if (s.dof[n] >= 0) s.triplets.emplace_back(s.dof[n], s.dof[n], extra_diagonal[n]);
    }
  }
  s.matrix.setFromTriplets(s.triplets.begin(), s.triplets.end());
  if (!s.analysed) {
    s.ldlt.analyzePattern(s.matrix);
    s.analysed = true;
  }
  s.ldlt.factorize(s.matrix);
  return s.ldlt.info() == Eigen::Success;
}

void HessianPreconditioner::solve(std::span<const double> rhs, std::span<double> x) const {
  const Impl& s = *impl_;
  Eigen::VectorXd b(s.ndof);
  for (std::size_t n = 0; n < s.dof.size(); ++n) {
    if (s.dof[n] >= 0) b[s.dof[n]] = rhs[n];
  }
  const Eigen::VectorXd sol = s.ldlt.solve(b);
  for (std::size_t n = 0; n < s.dof.size(); ++n) x[n] = s.dof[n] >= 0 ? sol[s.dof[n]] : 0.0;
}

struct EigenJacobian::Impl {
  GridSpec grid;
  std::vector<int> dof;
  int ndof = 0;
  Eigen::SparseMatrix<double> matrix;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  bool analysed = false;
  std::vector<Eigen::Triplet<double>> triplets;
};

EigenJacobian::EigenJacobian(const GridSpec& grid) : impl_(std::make_unique<Impl>()) {
  impl_->grid = grid;
  impl_->dof = interior_dofs(grid, impl_->ndof);
  impl_->matrix.resize(impl_->ndof + 1, impl_->ndof + 1);
}

EigenJacobian::~EigenJacobian() = default;

bool EigenJacobian::assemble(const ProblemSpec& spec, std::span<const double> u, double lambda,
                             std::span<const double> residual, std::span<const double> grad_B, double B) {
  Impl& s = *impl_;
  const GridSpec& g = s.grid;
  const ExponentField& p = spec.p();
  const auto a = spec.coeffs().a().values();
  const auto b = spec.coeffs().b().values();
  const double vol = g.cell_volume();
  const int corners = g.corners_per_cell();
  const CellStencil st = make_stencil(g);
  const int border = s.ndof;

  s.triplets.clear();
  s.triplets.reserve(g.cell_count() * corners * corners + 2 * s.ndof + 1);
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const auto k = g.cell_corners(c);
    double gx = 0.0;
    double gy = 0.0;
    double m = 0.0;
    for (int q = 0; q < corners; ++q) {
      gx += st.dgx[q] * u[k[q]];
      gy += st.dgy[q] * u[k[q]];
      m += st.dm[q] * u[k[q]];
    }
    const double pc = p[c];
    const double mag = std::hypot(gx, gy);
    double hxx = 0.0;
    double hyy = 0.0;
    double hxy = 0.0;
    if (mag > 0.0 || pc <= 2.0) {
      const double mag_f = pc < 2.0 ? std::max(mag, kExactFloor) : mag;
      const double w = vol * pc * std::pow(mag_f, pc - 2.0);
      const double nx = mag > 0.0 ? gx / mag : 1.0;
      const double ny = mag > 0.0 ? gy / mag : 0.0;
      hxx = w * (1.0 + (pc - 2.0) * nx * nx);
      hyy = w * (1.0 + (pc - 2.0) * ny * ny);
      hxy = w * (pc - 2.0) * nx * ny;
    }
    const double am = std::abs(m);
    double wm = 0.0;
    if (am > 0.0 || pc <= 2.0) {
      const double am_f = pc < 2.0 ? std::max(am, kExactFloor) : am;
      wm = vol * (a[c] - lambda * b[c]) * (pc - 1.0) * std::pow(am_f, pc - 2.0);
    }
    for (int i = 0; i < corners; ++i) {
      const int di = s.dof[k[i]];
      if (di < 0) continue;
      for (int j = 0; j < corners; ++j) {
        const int dj = s.dof[k[j]];
        if (dj < 0) continue;
        const double v = hxx * st.dgx[i] * st.dgx[j] + hyy * st.dgy[i] * st.dgy[j] +
                         hxy * (st.dgx[i] * st.dgy[j] + st.dgy[i] * st.dgx[j]) + wm * st.dm[i] * st.dm[j];
        s.triplets.emplace_back(di, dj, v);
      }
    }
  }
  const bool constant = p.is_constant();
  for (std::size_t n = 0; n < s.dof.size(); ++n) {
    const int d = s.dof[n];
    if (d < 0) continue;
    s.triplets.emplace_back(d, border, -grad_B[n]);
    s.triplets.emplace_back(border, d, constant ? grad_B[n] : residual[n]);
  }
  if (!constant) s.triplets.emplace_back(border, border, -B);

  s.matrix.setFromTriplets(s.triplets.begin(), s.triplets.end());
  s.matrix.makeCompressed();
  if (!s.analysed) {
    s.lu.analyzePattern(s.matrix);
    s.analysed = true;
  }
  s.lu.factorize(s.matrix);
  return s.lu.info() == Eigen::Success;
}

void EigenJacobian::solve(std::span<const double> residual, std::span<double> du) const {
  const Impl& s = *impl_;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s.ndof + 1);
  for (std::size_t n = 0; n < s.dof.size(); ++n) {
    if (s.dof[n] >= 0) rhs[s.dof[n]] = -residual[n];
  }
  const Eigen::VectorXd sol = s.lu.solve(rhs);
  for (std::size_t n = 0; n < s.dof.size(); ++n) du[n] = s.dof[n] >= 0 ? sol[s.dof[n]] : 0.0;
}

}  // namespace pxlap::detail
