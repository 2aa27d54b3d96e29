#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "field.hpp"
#include "problem.hpp"
#include "qrng.hpp"

namespace qrdom {

/// A first-octant direction standing for its four in-plane sign variants.
/// Ordinate k (0-based) carries signs (+,+), (-,+), (-,-), (+,-) on (mu, eta).
struct DirectionQuadruple {
  double mu = 0.0;
  double eta = 0.0;
  double xi = 0.0;

  DirectionQuadruple() = default;
  DirectionQuadruple(double mu_, double eta_, double xi_) : mu(mu_), eta(eta_), xi(xi_) {}
  explicit DirectionQuadruple(const OctantDirection& d) : mu(d.mu), eta(d.eta), xi(d.xi) {}
};

inline constexpr int kOrdinates = 4;
inline constexpr std::array<int, kOrdinates> kMuSign = {+1, -1, -1, +1};
inline constexpr std::array<int, kOrdinates> kEtaSign = {+1, +1, -1, -1};

/// Ordinate that reflects into `ordinate` on wall `w` (specular in-plane mirror).
int reflected_ordinate(int ordinate, Wall w);
/// True when `ordinate` enters the domain through wall `w`.
bool enters_through(int ordinate, Wall w);

struct SweepOptions {
  bool fixup = true;               // set-to-zero negative-flux fixup
  double closure_tol = 1e-12;      // max-norm tolerance on wall edge fluxes
  int closure_max_iterations = 10000;
};

/// Sweep ordering induced by the reflective walls.
struct ReflectionPlan {
  bool cyclic = false;                 // true: boundary values need a fixed-point iteration
  std::array<int, kOrdinates> order{0, 1, 2, 3};
};

ReflectionPlan reflection_plan(const std::array<WallSpec, 4>& walls);

/// Cell-center cross sections and wall data for one problem on one grid.
/// Total cross sections are stored as an index into a table of distinct
/// values so the per-direction denominators are computed once per value.
struct SweepMaterial {
  Grid grid;
  std::array<WallSpec, 4> walls{};
  std::vector<double> sigma_t_values;
  std::vector<std::uint32_t> sigma_t_index;

  /// Throws ConfigError if any cell has sigma_t <= 0.
  static SweepMaterial build(const ProblemSpec& p, const Grid& g);
  double sigma_t(std::size_t cell) const { return sigma_t_values[sigma_t_index[cell]]; }
};

struct QuadrupleSolution {
  std::array<FluxField, kOrdinates> psi;
  /// outgoing[k][w]: edge fluxes of ordinate k leaving through wall w, ordered
  /// by increasing wall coordinate. Empty when k does not exit through w.
  std::array<std::array<std::vector<double>, 4>, kOrdinates> outgoing;
  int closure_iterations = 0;
  std::vector<double> closure_residuals;  // one entry per fixed-point pass (cyclic plans)
};

/// Reusable per-worker buffers for quadruple solves.
class QuadrupleSweeper {
 public:
  QuadrupleSweeper(const SweepMaterial& material, SweepOptions options = {});

  /// Diamond-difference solve of the four ordinates against a frozen source
  /// (sigma_s * Psi + Q at cell centers). Reuses the buffers held by `out`.
  void solve(const DirectionQuadruple& d, std::span<const double> source, QuadrupleSolution& out);

  const ReflectionPlan& plan() const { return plan_; }

 private:
  void sweep_ordinate(int k, double cx, double cy, std::span<const double> source,
                      QuadrupleSolution& out);
  void load_inflow(int k, const QuadrupleSolution& sol);

  const SweepMaterial& material_;
  SweepOptions options_;
  ReflectionPlan plan_;
  std::vector<double> inv_denominator_;  // per distinct sigma_t
  std::vector<double> inflow_x_;         // ny, upwind vertical wall
  std::vector<double> inflow_y_;         // nx, upwind horizontal wall
};

/// One-shot solve; throws ContractViolation on non-finite or mis-sized sources
/// and NumericalError when a cyclic reflection closure does not converge.
QuadrupleSolution solve_quadruple(const ProblemSpec& p, const Grid& g, const DirectionQuadruple& d,
                                  const FluxField& source, SweepOptions options = {});

/// Cellwise mean of the four angular fields.
FluxField sample_scalar_flux(const QuadrupleSolution& sol);
void sample_scalar_flux(const QuadrupleSolution& sol, std::span<double> out);

}  // namespace qrdom
