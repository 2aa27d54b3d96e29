#include "sweep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "errors.hpp"

namespace qrdom {

namespace {

bool is_horizontal(Wall w) { return w == Wall::bottom || w == Wall::top; }

std::size_t wall_length(const Grid& g, Wall w) {
  return static_cast<std::size_t>(is_horizontal(w) ? g.nx : g.ny);
}

Wall upwind_vertical(int k) { return kMuSign[k] > 0 ? Wall::left : Wall::right; }
Wall upwind_horizontal(int k) { return kEtaSign[k] > 0 ? Wall::bottom : Wall::top; }
Wall downwind_vertical(int k) { return kMuSign[k] > 0 ? Wall::right : Wall::left; }
Wall downwind_horizontal(int k) { return kEtaSign[k] > 0 ? Wall::top : Wall::bottom; }

// Cell closure with set-to-zero fixup. Recomputes the cell average from the
// balance equation with every negative outflow pinned to zero.
inline double fixup_cell(double s, double sigma_t, double cx, double cy, double xin, double yin,
                         double& xo, double& yo) {
  bool pin_x = xo < 0.0;
  bool pin_y = yo < 0.0;
  double psi = 0.0;
  for (;;) {
    // Pinned faces contribute -c/2 * in; free faces contribute c * (psi - in).
    double num = s;
    double den = sigma_t;
    if (pin_x) {
      num += 0.5 * cx * xin;
    } else {
      num += cx * xin;
      den += cx;
    }
    if (pin_y) {
      num += 0.5 * cy * yin;
    } else {
      num += cy * yin;
      den += cy;
    }
    psi = num / den;
    xo = pin_x ? 0.0 : 2.0 * psi - xin;
    yo = pin_y ? 0.0 : 2.0 * psi - yin;
    if (xo < 0.0 && !pin_x) {
      pin_x = true;
      continue;
    }
    if (yo < 0.0 && !pin_y) {
      pin_y = true;
      continue;
    }
    return psi;
  }
}

template <bool kForwardX, bool kFixup>
void sweep_rows(const SweepMaterial& m, std::span<const double> inv_den, double cx, double cy,
                int eta_sign, std::span<const double> source, std::span<const double> inflow_x,
                std::span<double> yedge, std::span<double> psi, std::span<double> outflow_x) {
  const int nx = m.grid.nx;
  const int ny = m.grid.ny;
  const double* src = source.data();
  const std::uint32_t* mat = m.sigma_t_index.data();
  const double* inv = inv_den.data();
  double* ye = yedge.data();
  double* out = psi.data();
  for (int jj = 0; jj < ny; ++jj) {
    const int j = eta_sign > 0 ? jj : ny - 1 - jj;
    const std::size_t row = static_cast<std::size_t>(j) * static_cast<std::size_t>(nx);
    double xin = inflow_x[static_cast<std::size_t>(j)];
    for (int ii = 0; ii < nx; ++ii) {
      const int i = kForwardX ? ii : nx - 1 - ii;
      const std::size_t c = row + static_cast<std::size_t>(i);
      const double yin = ye[i];
      double cell = (src[c] + cx * xin + cy * yin) * inv[mat[c]];
      double xo = 2.0 * cell - xin;
      double yo = 2.0 * cell - yin;
      if constexpr (kFixup) {
        if (xo < 0.0 || yo < 0.0) {
          cell = fixup_cell(src[c], m.sigma_t(c), cx, cy, xin, yin, xo, yo);
        }
      }
      out[c] = cell;
      ye[i] = yo;
      xin = xo;
    }
    outflow_x[static_cast<std::size_t>(j)] = xin;
  }
}

}  // namespace

int reflected_ordinate(int ordinate, Wall w) {
  // Horizontal walls flip eta, vertical walls flip mu.
  static constexpr std::array<int, kOrdinates> kFlipEta = {3, 2, 1, 0};
  static constexpr std::array<int, kOrdinates> kFlipMu = {1, 0, 3, 2};
  return is_horizontal(w) ? kFlipEta[ordinate] : kFlipMu[ordinate];
}

bool enters_through(int ordinate, Wall w) {
  switch (w) {
    case Wall::bottom: return kEtaSign[ordinate] > 0;
    case Wall::top: return kEtaSign[ordinate] < 0;
    case Wall::left: return kMuSign[ordinate] > 0;
    case Wall::right: return kMuSign[ordinate] < 0;
  }
  return false;
}

ReflectionPlan reflection_plan(const std::array<WallSpec, 4>& walls) {
  // depends[k][k2]: ordinate k takes inflow reflected from ordinate k2.
  std::array<std::array<bool, kOrdinates>, kOrdinates> depends{};
  for (Wall w : kWalls) {
    if (walls[static_cast<std::size_t>(w)].rho <= 0.0) continue;
    for (int k = 0; k < kOrdinates; ++k) {
      if (enters_through(k, w)) depends[k][reflected_ordinate(k, w)] = true;
    }
  }

  ReflectionPlan plan;
  std::array<bool, kOrdinates> done{};
  for (int slot = 0; slot < kOrdinates; ++slot) {
    int pick = -1;
    for (int k = 0; k < kOrdinates && pick < 0; ++k) {
      if (done[k]) continue;
      bool ready = true;
      for (int k2 = 0; k2 < kOrdinates; ++k2) {
        if (depends[k][k2] && !done[k2]) ready = false;
      }
      if (ready) pick = k;
    }
    if (pick < 0) {
      plan.cyclic = true;
      plan.order = {0, 1, 2, 3};
      return plan;
    }
    done[pick] = true;
    plan.order[slot] = pick;
  }
  return plan;
}

SweepMaterial SweepMaterial::build(const ProblemSpec& p, const Grid& g) {
  SweepMaterial m;
  m.grid = g;
  m.walls = p.walls;
  m.sigma_t_index.resize(g.cells());
  std::map<double, std::uint32_t> ids;
  const Domain d{g.a, g.b};
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double st = evaluate_field(p.sigma_t, d, g.x_center(i), g.y_center(j));
      if (!(st > 0.0) || !std::isfinite(st)) {
        throw ConfigError("sigma_t must be positive and finite at every cell center (cell " +
                          std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      auto [it, inserted] = ids.try_emplace(st, static_cast<std::uint32_t>(m.sigma_t_values.size()));
      if (inserted) m.sigma_t_values.push_back(st);
      m.sigma_t_index[g.index(i, j)] = it->second;
    }
  }
  return m;
}

QuadrupleSweeper::QuadrupleSweeper(const SweepMaterial& material, SweepOptions options)
    : material_(material),
      options_(options),
      plan_(reflection_plan(material.walls)),
      inv_denominator_(material.sigma_t_values.size()),
      inflow_x_(static_cast<std::size_t>(material.grid.ny)),
      inflow_y_(static_cast<std::size_t>(material.grid.nx)) {}

void QuadrupleSweeper::load_inflow(int k, const QuadrupleSolution& sol) {
  const auto fill = [&](Wall w, std::vector<double>& dst) {
    const auto& ws = material_.walls[static_cast<std::size_t>(w)];
    if (ws.rho > 0.0) {
      const auto& src = sol.outgoing[reflected_ordinate(k, w)][static_cast<std::size_t>(w)];
      for (std::size_t n = 0; n < dst.size(); ++n) dst[n] = ws.rho * src[n] + ws.qb;
    } else {
      std::fill(dst.begin(), dst.end(), ws.qb);
    }
  };
  fill(upwind_vertical(k), inflow_x_);
  fill(upwind_horizontal(k), inflow_y_);
}

void QuadrupleSweeper::sweep_ordinate(int k, double cx, double cy, std::span<const double> source,
                                      QuadrupleSolution& out) {
  load_inflow(k, out);
  auto& out_x = out.outgoing[k][static_cast<std::size_t>(downwind_vertical(k))];
  auto& out_y = out.outgoing[k][static_cast<std::size_t>(downwind_horizontal(k))];
  // The horizontal inflow row is consumed in place and ends up as the outflow row.
  out_y.assign(inflow_y_.begin(), inflow_y_.end());
  const bool forward = kMuSign[k] > 0;
  const auto psi = out.psi[k].values();
  if (forward && options_.fixup) {
    sweep_rows<true, true>(material_, inv_denominator_, cx, cy, kEtaSign[k], source, inflow_x_, out_y, psi, out_x);
  } else if (forward) {
    sweep_rows<true, false>(material_, inv_denominator_, cx, cy, kEtaSign[k], source, inflow_x_, out_y, psi, out_x);
  } else if (options_.fixup) {
    sweep_rows<false, true>(material_, inv_denominator_, cx, cy, kEtaSign[k], source, inflow_x_, out_y, psi, out_x);
  } else {
    sweep_rows<false, false>(material_, inv_denominator_, cx, cy, kEtaSign[k], source, inflow_x_, out_y, psi, out_x);
  }
}

void QuadrupleSweeper::solve(const DirectionQuadruple& d, std::span<const double> source,
                             QuadrupleSolution& out) {
  const Grid& g = material_.grid;
  if (source.size() != g.cells()) {
    throw ContractViolation("solve_quadruple: source size does not match the grid");
  }
  if (!(d.mu > 0.0 && d.eta > 0.0)) {
    throw ContractViolation("solve_quadruple: direction cosines must be positive");
  }

  for (int k = 0; k < kOrdinates; ++k) {
    if (!out.psi[k].matches(g)) out.psi[k] = FluxField(g);
    for (Wall w : kWalls) {
      auto& edge = out.outgoing[k][static_cast<std::size_t>(w)];
      const bool exits = !enters_through(k, w);
      edge.assign(exits ? wall_length(g, w) : 0, 0.0);
    }
  }
  out.closure_iterations = 0;
  out.closure_residuals.clear();

  const double cx = 2.0 * d.mu / g.hx();
  const double cy = 2.0 * d.eta / g.hy();
  for (std::size_t v = 0; v < inv_denominator_.size(); ++v) {
    inv_denominator_[v] = 1.0 / (material_.sigma_t_values[v] + cx + cy);
  }

  if (!plan_.cyclic) {
    for (int k : plan_.order) sweep_ordinate(k, cx, cy, source, out);
    out.closure_iterations = 1;
    return;
  }

  // Gauss-Seidel over the four ordinates until the wall edge fluxes settle.
  std::array<std::array<std::vector<double>, 4>, kOrdinates> previous;
  for (int iter = 1; iter <= options_.closure_max_iterations; ++iter) {
    previous = out.outgoing;
    for (int k : plan_.order) sweep_ordinate(k, cx, cy, source, out);
    double residual = 0.0;
    double scale = 1.0;
    for (int k = 0; k < kOrdinates; ++k) {
      for (std::size_t w = 0; w < 4; ++w) {
        const auto& now = out.outgoing[k][w];
        const auto& before = previous[k][w];
        for (std::size_t n = 0; n < now.size(); ++n) {
          residual = std::max(residual, std::abs(now[n] - before[n]));
          scale = std::max(scale, std::abs(now[n]));
        }
      }
    }
    out.closure_iterations = iter;
    out.closure_residuals.push_back(residual);
    if (!std::isfinite(residual)) {
      throw NumericalError("reflection closure produced non-finite edge fluxes");
    }
    if (residual <= options_.closure_tol * scale) return;
  }
  throw NumericalError("reflection closure did not converge within " +
                       std::to_string(options_.closure_max_iterations) +
                       " iterations (residual " + std::to_string(out.closure_residuals.back()) + ")");
}

QuadrupleSolution solve_quadruple(const ProblemSpec& p, const Grid& g, const DirectionQuadruple& d,
                                  const FluxField& source, SweepOptions options) {
  if (!source.matches(g)) {
    throw ContractViolation("solve_quadruple: source field does not match the grid");
  }
  if (!source.all_finite()) {
    throw ContractViolation("solve_quadruple: source field has non-finite entries");
  }
  const SweepMaterial material = SweepMaterial::build(p, g);
  QuadrupleSweeper sweeper(material, options);
  QuadrupleSolution sol;
  sweeper.solve(d, source.values(), sol);
  return sol;
}

void sample_scalar_flux(const QuadrupleSolution& sol, std::span<double> out) {
  const auto a = sol.psi[0].values();
  const auto b = sol.psi[1].values();
  const auto c = sol.psi[2].values();
  const auto e = sol.psi[3].values();
  if (out.size() != a.size()) {
    throw ContractViolation("sample_scalar_flux: output size mismatch");
  }
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] = 0.25 * (((a[n] + b[n]) + c[n]) + e[n]);
  }
}

FluxField sample_scalar_flux(const QuadrupleSolution& sol) {
  FluxField out(sol.psi[0].nx(), sol.psi[0].ny());
  sample_scalar_flux(sol, out.values());
  return out;
}

}  // namespace qrdom
