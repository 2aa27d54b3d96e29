#pragma once

#include <array>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qrdom {

/// Rectangle (0,a) x (0,b).
struct Domain {
  double a = 1.0;
  double b = 1.0;
  bool operator==(const Domain&) const = default;
};

struct ConstantField {
  double value = 0.0;
  bool operator==(const ConstantField&) const = default;
};

/// c0 + cx * x^2/a^2 + cy * y^2/b^2
struct PolyXY2Field {
  double c0 = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  bool operator==(const PolyXY2Field&) const = default;
};

/// Closed axis-aligned rectangle [x0,x1] x [y0,y1].
struct Region {
  double x0 = 0.0;
  double x1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;
  double value = 0.0;
  bool operator==(const Region&) const = default;
};

/// First region containing the point wins; otherwise the default value.
struct PiecewiseField {
  double default_value = 0.0;
  std::vector<Region> regions;
  bool operator==(const PiecewiseField&) const = default;
};

using ScalarField = std::variant<ConstantField, PolyXY2Field, PiecewiseField>;

/// Wall order follows the boundary labels: bottom (y=0), right (x=a),
/// top (y=b), left (x=0).
enum class Wall { bottom = 0, right = 1, top = 2, left = 3 };

inline constexpr std::array<Wall, 4> kWalls = {Wall::bottom, Wall::right, Wall::top, Wall::left};

std::string_view wall_name(Wall w);
/// Throws ConfigError on an unknown name.
Wall parse_wall(std::string_view name);

struct WallSpec {
  double rho = 0.0;  // reflectivity
  double qb = 0.0;   // incoming boundary intensity
  bool operator==(const WallSpec&) const = default;
};

struct ProblemSpec {
  Domain domain;
  ScalarField sigma_t = ConstantField{1.0};
  ScalarField sigma_s = ConstantField{0.0};
  ScalarField source = ConstantField{0.0};
  std::array<WallSpec, 4> walls{};

  const WallSpec& wall(Wall w) const { return walls[static_cast<std::size_t>(w)]; }
  WallSpec& wall(Wall w) { return walls[static_cast<std::size_t>(w)]; }

  bool operator==(const ProblemSpec&) const = default;
};

/// Value of a field at (x, y); the point must lie in the closed rectangle.
double evaluate_field(const ScalarField& field, const Domain& domain, double x, double y);

/// True when the field is the constant zero.
bool is_identically_zero(const ScalarField& field);

/// The three reference problems: 1 black walls, 2 reflective walls,
/// 3 heterogeneous media.
ProblemSpec builtin_benchmark(int id);

/// Checks every invariant of a problem. Throws ConfigError naming the field.
void validate(const ProblemSpec& spec);

/// Parses a JSON problem document (see README for the schema). A top-level
/// "benchmark" key selects a built-in and the other problem keys are ignored.
ProblemSpec parse_config(std::string_view text);

/// JSON text for a problem, accepted back by parse_config.
std::string serialize(const ProblemSpec& spec);

}  // namespace qrdom
