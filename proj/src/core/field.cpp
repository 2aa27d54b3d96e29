#include "field.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace qrdom {

Grid::Grid(int nx_cells, int ny_cells, const Domain& domain)
    : nx(nx_cells), ny(ny_cells), a(domain.a), b(domain.b) {
  if (nx < 1 || ny < 1) {
    throw ConfigError("grid must have at least one cell in each direction");
  }
  if (!(a > 0.0 && b > 0.0)) {
    throw ConfigError("grid extents must be positive");
  }
}

bool FluxField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void FluxField::fill(double v) { std::fill(values_.begin(), values_.end(), v); }

FluxField sample_at_centers(const ScalarField& f, const Grid& g) {
  FluxField out(g);
  const Domain d{g.a, g.b};
  for (int j = 0; j < g.ny; ++j) {
    const double y = g.y_center(j);
    for (int i = 0; i < g.nx; ++i) {
      out(i, j) = evaluate_field(f, d, g.x_center(i), y);
    }
  }
  return out;
}

void CompensatedFieldSum::add(std::span<const double> values) {
  if (values.size() != sum_.size()) {
    throw ContractViolation("CompensatedFieldSum::add: size mismatch");
  }
  for (std::size_t k = 0; k < sum_.size(); ++k) {
    const double s = sum_[k];
    const double v = values[k];
    const double t = s + v;
    if (std::abs(s) >= std::abs(v)) {
      carry_[k] += (s - t) + v;
    } else {
      carry_[k] += (v - t) + s;
    }
    sum_[k] = t;
  }
}

void CompensatedFieldSum::scaled(double scale, std::span<double> out) const {
  if (out.size() != sum_.size()) {
    throw ContractViolation("CompensatedFieldSum::scaled: size mismatch");
  }
  for (std::size_t k = 0; k < sum_.size(); ++k) {
    out[k] = (sum_[k] + carry_[k]) * scale;
  }
}

}  // namespace qrdom
