#include "functionals.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <json.hpp>

#include "errors.hpp"
#include "format.hpp"

namespace qrdom {

namespace {

std::vector<double> parse_numbers(std::string_view text, std::size_t expected, std::string_view what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view tok = text.substr(pos, comma - pos);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ConfigError("functional '" + std::string(what) + "': bad number '" + std::string(tok) + "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  if (out.size() != expected) {
    throw ConfigError("functional '" + std::string(what) + "': expected " + std::to_string(expected) +
                      " comma-separated numbers");
  }
  return out;
}

double json_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ConfigError(std::string("functional: missing numeric key '") + key + "'");
  }
  return j.at(key).get<double>();
}

FunctionalSpec parse_functional_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("functional: malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ConfigError("functional: expected an object with a string 'kind'");
  }
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "line_integral") {
    if (!j.contains("wall") || !j.at("wall").is_string()) {
      throw ConfigError("functional line_integral: missing 'wall'");
    }
    return LineIntegral{parse_wall(j.at("wall").get<std::string>())};
  }
  if (kind == "point_value") return PointValue{json_number(j, "x"), json_number(j, "y")};
  if (kind == "domain_average") return DomainAverage{};
  if (kind == "region_average") {
    return RegionAverage{json_number(j, "x0"), json_number(j, "x1"), json_number(j, "y0"),
                         json_number(j, "y1")};
  }
  throw ConfigError("functional: unknown kind '" + kind + "'");
}

// Linear-interpolation weights along one axis of cell centers, clamped to
// the outermost centers.
void interpolation_weights(double t, double h, int n, int& first, std::vector<double>& w) {
  if (n == 1) {
    first = 0;
    w = {1.0};
    return;
  }
  const double s = std::clamp(t / h - 0.5, 0.0, static_cast<double>(n - 1));
  const int k = std::min(static_cast<int>(std::floor(s)), n - 2);
  const double frac = s - k;
  first = k;
  w = {1.0 - frac, frac};
}

void overlap_weights(double lo, double hi, double h, int n, int& first, std::vector<double>& w) {
  const double len = hi - lo;
  first = std::clamp(static_cast<int>(std::floor(lo / h)), 0, n - 1);
  const int last = std::clamp(static_cast<int>(std::ceil(hi / h)) - 1, first, n - 1);
  w.assign(static_cast<std::size_t>(last - first + 1), 0.0);
  for (int k = first; k <= last; ++k) {
    const double c0 = k * h;
    const double c1 = (k + 1) * h;
    w[static_cast<std::size_t>(k - first)] = std::max(0.0, std::min(hi, c1) - std::max(lo, c0)) / len;
  }
}

}  // namespace

FunctionalSpec parse_functional(std::string_view text) {
  if (!text.empty() && text.front() == '{') return parse_functional_json(text);
  const std::size_t colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "domain-average" && colon == std::string_view::npos) return DomainAverage{};
  if (head == "line" && !args.empty()) return LineIntegral{parse_wall(args)};
  if (head == "point") {
    const auto v = parse_numbers(args, 2, text);
    return PointValue{v[0], v[1]};
  }
  if (head == "region") {
    const auto v = parse_numbers(args, 4, text);
    return RegionAverage{v[0], v[1], v[2], v[3]};
  }
  throw ConfigError("unknown functional '" + std::string(text) +
                    "' (expected line:<wall>, point:x,y, domain-average or region:x0,x1,y0,y1)");
}

std::string to_string(const FunctionalSpec& f) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, LineIntegral>) {
          return "line:" + std::string(wall_name(v.wall));
        } else if constexpr (std::is_same_v<T, PointValue>) {
          return "point:" + format_double(v.x) + "," + format_double(v.y);
        } else if constexpr (std::is_same_v<T, DomainAverage>) {
          return "domain-average";
        } else {
          return "region:" + format_double(v.x0) + "," + format_double(v.x1) + "," +
                 format_double(v.y0) + "," + format_double(v.y1);
        }
      },
      f);
}

bool is_linear(const FunctionalSpec&) { return true; }

CompiledFunctional::CompiledFunctional(const FunctionalSpec& spec, const Grid& g)
    : spec_(spec), nx_(g.nx) {
  const double hx = g.hx();
  const double hy = g.hy();
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, LineIntegral>) {
          if (v.wall == Wall::bottom || v.wall == Wall::top) {
            i0_ = 0;
            wx_.assign(static_cast<std::size_t>(g.nx), hx);
            j0_ = v.wall == Wall::bottom ? 0 : g.ny - 1;
            wy_ = {1.0};
          } else {
            j0_ = 0;
            wy_.assign(static_cast<std::size_t>(g.ny), hy);
            i0_ = v.wall == Wall::left ? 0 : g.nx - 1;
            wx_ = {1.0};
          }
        } else if constexpr (std::is_same_v<T, PointValue>) {
          if (!(v.x >= 0.0 && v.x <= g.a && v.y >= 0.0 && v.y <= g.b)) {
            throw ContractViolation("point functional (" + format_double(v.x) + ", " +
                                    format_double(v.y) + ") lies outside the domain");
          }
          interpolation_weights(v.x, hx, g.nx, i0_, wx_);
          interpolation_weights(v.y, hy, g.ny, j0_, wy_);
        } else if constexpr (std::is_same_v<T, DomainAverage>) {
          i0_ = 0;
          j0_ = 0;
          wx_.assign(static_cast<std::size_t>(g.nx), 1.0 / g.nx);
          wy_.assign(static_cast<std::size_t>(g.ny), 1.0 / g.ny);
        } else {
          if (!(v.x0 < v.x1 && v.y0 < v.y1)) {
            throw ContractViolation("region functional needs x0 < x1 and y0 < y1");
          }
          if (v.x0 < 0.0 || v.y0 < 0.0 || v.x1 > g.a || v.y1 > g.b) {
            throw ContractViolation("region functional exceeds the domain");
          }
          overlap_weights(v.x0, v.x1, hx, g.nx, i0_, wx_);
          overlap_weights(v.y0, v.y1, hy, g.ny, j0_, wy_);
        }
      },
      spec);
}

double CompiledFunctional::operator()(std::span<const double> field) const {
  double total = 0.0;
  for (std::size_t jj = 0; jj < wy_.size(); ++jj) {
    const double* row = field.data() + static_cast<std::size_t>(j0_ + static_cast<int>(jj)) * nx_ + i0_;
    double acc = 0.0;
    for (std::size_t ii = 0; ii < wx_.size(); ++ii) acc += wx_[ii] * row[ii];
    total += wy_[jj] * acc;
  }
  return total;
}

double evaluate(const FunctionalSpec& f, const FluxField& field, const Grid& g) {
  if (!field.matches(g)) throw ContractViolation("evaluate: field does not match the grid");
  return CompiledFunctional(f, g)(field.values());
}

WallProfile wall_profile(const FluxField& field, const Grid& g, Wall w) {
  if (!field.matches(g)) throw ContractViolation("wall_profile: field does not match the grid");
  WallProfile p;
  const bool horizontal = w == Wall::bottom || w == Wall::top;
  const int n = horizontal ? g.nx : g.ny;
  for (int k = 0; k < n; ++k) {
    if (horizontal) {
      const int j = w == Wall::bottom ? 0 : g.ny - 1;
      p.x.push_back(g.x_center(k));
      p.y.push_back(w == Wall::bottom ? 0.0 : g.b);
      p.value.push_back(field(k, j));
    } else {
      const int i = w == Wall::left ? 0 : g.nx - 1;
      p.x.push_back(w == Wall::left ? 0.0 : g.a);
      p.y.push_back(g.y_center(k));
      p.value.push_back(field(i, k));
    }
  }
  return p;
}

}  // namespace qrdom
