#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "field.hpp"
#include "functionals.hpp"
#include "problem.hpp"
#include "qrng.hpp"

namespace qrdom {

/// Octant quadrature; weights sum to one.
struct QuadratureSet {
  std::vector<OctantDirection> directions;
  std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Gauss-Legendre in xi on (0,1) times uniform azimuthal midpoints on (0, pi/2).
QuadratureSet product_quadrature(int n_polar, int n_azimuthal);

struct DomOptions {
  double tol = 1e-3;
  std::size_t max_iterations = 10'000;
  bool fixup = true;
  unsigned workers = 1;
};

struct DomResult {
  FluxField field;
  double goal_value = 0.0;
  std::size_t iterations = 0;
  std::vector<double> goal_history;  // goal value after each iteration
};

/// One source-iteration sweep over the quadrature: sum_i w_i Psi_i against
/// sigma_s * psi_prev + Q.
FluxField dom_sweep(const ProblemSpec& p, const Grid& g, const QuadratureSet& quad,
                    const FluxField& psi_prev, const DomOptions& options = {});

/// Classical source iteration until the goal's relative change drops below
/// tol. A problem without scattering finishes after one sweep. Throws
/// DivergenceError past max_iterations.
DomResult dom_solve(const ProblemSpec& p, const Grid& g, const QuadratureSet& quad,
                    const FunctionalSpec& goal, const DomOptions& options = {});

/// Sum of absolute consecutive differences.
double total_variation(std::span<const double> profile);

}  // namespace qrdom
