#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "field.hpp"
#include "problem.hpp"

namespace qrdom {

/// Integral of the wall trace along one wall (midpoint rule, cell value as trace).
struct LineIntegral {
  Wall wall = Wall::top;
  bool operator==(const LineIntegral&) const = default;
};

/// Bilinear interpolation of cell-centered values, constant in the half-cell rim.
struct PointValue {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const PointValue&) const = default;
};

struct DomainAverage {
  bool operator==(const DomainAverage&) const = default;
};

/// Area-weighted mean over the cells clipped to [x0,x1] x [y0,y1].
struct RegionAverage {
  double x0 = 0.0;
  double x1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;
  bool operator==(const RegionAverage&) const = default;
};

using FunctionalSpec = std::variant<LineIntegral, PointValue, DomainAverage, RegionAverage>;

/// Text form used on the command line and in reports:
///   line:<wall> | point:<x>,<y> | domain-average | region:<x0>,<x1>,<y0>,<y1>
FunctionalSpec parse_functional(std::string_view text);
std::string to_string(const FunctionalSpec& f);

/// All supported kinds are linear in the field.
bool is_linear(const FunctionalSpec& f);

/// A functional resolved on a grid: value = sum_j wy[j] * sum_i wx[i] * field(i, j)
/// over the index windows [i0, i0 + wx.size()) and [j0, j0 + wy.size()).
/// Every supported kind factors this way.
class CompiledFunctional {
 public:
  /// Throws ContractViolation for points or regions outside the domain.
  CompiledFunctional(const FunctionalSpec& spec, const Grid& g);

  double operator()(std::span<const double> field) const;
  const FunctionalSpec& spec() const { return spec_; }

 private:
  FunctionalSpec spec_;
  int nx_ = 0;
  int i0_ = 0;
  int j0_ = 0;
  std::vector<double> wx_;
  std::vector<double> wy_;
};

double evaluate(const FunctionalSpec& f, const FluxField& field, const Grid& g);

/// Wall trace of a field: the boundary-adjacent cell values in increasing
/// wall coordinate, together with the wall-point coordinates.
struct WallProfile {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> value;
};
WallProfile wall_profile(const FluxField& field, const Grid& g, Wall w);

}  // namespace qrdom
