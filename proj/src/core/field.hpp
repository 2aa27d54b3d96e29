#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "problem.hpp"

namespace qrdom {

/// Uniform nx x ny cell grid over a rectangular domain.
struct Grid {
  int nx = 1;
  int ny = 1;
  double a = 1.0;
  double b = 1.0;

  Grid() = default;
  /// Throws ConfigError for non-positive sizes.
  Grid(int nx, int ny, const Domain& domain);

  double hx() const { return a / nx; }
  double hy() const { return b / ny; }
  double x_center(int i) const { return (i + 0.5) * hx(); }
  double y_center(int j) const { return (j + 0.5) * hy(); }
  std::size_t cells() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  }

  bool operator==(const Grid&) const = default;
};

/// Cell-centered scalar field, row-major in y (cell (i, j) at j * nx + i).
class FluxField {
 public:
  FluxField() = default;
  FluxField(int nx, int ny, double fill = 0.0)
      : nx_(nx), ny_(ny), values_(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), fill) {}
  explicit FluxField(const Grid& g, double fill = 0.0) : FluxField(g.nx, g.ny, fill) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(int i, int j) { return values_[static_cast<std::size_t>(j) * nx_ + i]; }
  double operator()(int i, int j) const { return values_[static_cast<std::size_t>(j) * nx_ + i]; }
  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool matches(const Grid& g) const { return nx_ == g.nx && ny_ == g.ny; }
  bool all_finite() const;
  void fill(double v);

  bool operator==(const FluxField&) const = default;

 private:
  int nx_ = 0;
  int ny_ = 0;
  std::vector<double> values_;
};

/// Samples a field at every cell center.
FluxField sample_at_centers(const ScalarField& f, const Grid& g);

/// Neumaier-compensated running sum of fields.
class CompensatedFieldSum {
 public:
  CompensatedFieldSum() = default;
  explicit CompensatedFieldSum(const Grid& g) : sum_(g.cells(), 0.0), carry_(g.cells(), 0.0) {}

  void add(std::span<const double> values);
  /// (sum + carry) * scale, cellwise.
  void scaled(double scale, std::span<double> out) const;

 private:
  std::vector<double> sum_;
  std::vector<double> carry_;
};

/// Neumaier-compensated scalar accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace qrdom
