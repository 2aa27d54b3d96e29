#include "problem.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "errors.hpp"

namespace qrdom {

using nlohmann::json;

std::string_view wall_name(Wall w) {
  switch (w) {
    case Wall::bottom: return "bottom";
    case Wall::right: return "right";
    case Wall::top: return "top";
    case Wall::left: return "left";
  }
  return "?";
}

Wall parse_wall(std::string_view name) {
  for (Wall w : kWalls) {
    if (wall_name(w) == name) return w;
  }
  throw ConfigError("unknown wall '" + std::string(name) + "' (expected bottom, right, top or left)");
}

namespace {

struct FieldEvaluator {
  const Domain& domain;
  double x;
  double y;

  double operator()(const ConstantField& f) const { return f.value; }
  double operator()(const PolyXY2Field& f) const {
    const double sx = x / domain.a;
    const double sy = y / domain.b;
    return f.c0 + f.cx * sx * sx + f.cy * sy * sy;
  }
  double operator()(const PiecewiseField& f) const {
    for (const auto& r : f.regions) {
      if (x >= r.x0 && x <= r.x1 && y >= r.y0 && y <= r.y1) return r.value;
    }
    return f.default_value;
  }
};

}  // namespace

double evaluate_field(const ScalarField& field, const Domain& domain, double x, double y) {
  if (!(x >= 0.0 && x <= domain.a && y >= 0.0 && y <= domain.b)) {
    throw ContractViolation("evaluate_field: point (" + std::to_string(x) + ", " +
                            std::to_string(y) + ") lies outside the domain");
  }
  return std::visit(FieldEvaluator{domain, x, y}, field);
}

bool is_identically_zero(const ScalarField& field) {
  if (const auto* c = std::get_if<ConstantField>(&field)) return c->value == 0.0;
  if (const auto* p = std::get_if<PolyXY2Field>(&field)) {
    return p->c0 == 0.0 && p->cx == 0.0 && p->cy == 0.0;
  }
  const auto& pw = std::get<PiecewiseField>(field);
  if (pw.default_value != 0.0) return false;
  for (const auto& r : pw.regions) {
    if (r.value != 0.0) return false;
  }
  return true;
}

ProblemSpec builtin_benchmark(int id) {
  ProblemSpec p;
  switch (id) {
    case 1:
      p.domain = {2.5, 2.5};
      p.sigma_t = ConstantField{1.0};
      p.sigma_s = PolyXY2Field{0.7, -0.3, -0.3};
      p.source = ConstantField{0.0};
      p.wall(Wall::bottom) = {0.0, 1.0};
      p.wall(Wall::right) = {0.0, 0.0};
      p.wall(Wall::top) = {0.0, 0.0};
      p.wall(Wall::left) = {0.0, 0.0};
      return p;
    case 2:
      p.domain = {1.0, 1.0};
      p.sigma_t = ConstantField{1.0};
      p.sigma_s = ConstantField{1.0};
      p.source = PiecewiseField{0.0, {Region{0.0, 0.52, 0.0, 0.52, 1.0}}};
      p.wall(Wall::bottom) = {1.0, 0.0};
      p.wall(Wall::right) = {0.0, 0.0};
      p.wall(Wall::top) = {0.0, 0.0};
      p.wall(Wall::left) = {1.0, 0.0};
      return p;
    case 3:
      p.domain = {30.0, 30.0};
      p.sigma_t = PiecewiseField{2.0, {Region{0.0, 10.0, 0.0, 10.0, 1.0}}};
      p.sigma_s = PiecewiseField{0.1, {Region{0.0, 10.0, 0.0, 10.0, 0.5}}};
      p.source = PiecewiseField{0.0, {Region{0.0, 10.0, 0.0, 10.0, 1.0}}};
      p.wall(Wall::bottom) = {1.0, 0.0};
      p.wall(Wall::right) = {0.0, 0.0};
      p.wall(Wall::top) = {0.0, 0.0};
      p.wall(Wall::left) = {1.0, 0.0};
      return p;
    default:
      throw ConfigError("unknown benchmark id " + std::to_string(id) + " (expected 1, 2 or 3)");
  }
}

namespace {

void check_regions(const ScalarField& f, const Domain& d, const std::string& name) {
  const auto* pw = std::get_if<PiecewiseField>(&f);
  if (pw == nullptr) return;
  for (std::size_t k = 0; k < pw->regions.size(); ++k) {
    const auto& r = pw->regions[k];
    const std::string where = name + ".piecewise.regions[" + std::to_string(k) + "]";
    if (!(r.x0 < r.x1 && r.y0 < r.y1)) {
      throw ConfigError(where + ": region must satisfy x0 < x1 and y0 < y1");
    }
    if (r.x0 < 0.0 || r.y0 < 0.0 || r.x1 > d.a || r.y1 > d.b) {
      throw ConfigError(where + ": region exceeds the domain");
    }
  }
}

void check_finite(const ScalarField& f, const std::string& name) {
  bool ok = true;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ConstantField>) {
          ok = std::isfinite(v.value);
        } else if constexpr (std::is_same_v<T, PolyXY2Field>) {
          ok = std::isfinite(v.c0) && std::isfinite(v.cx) && std::isfinite(v.cy);
        } else {
          ok = std::isfinite(v.default_value);
          for (const auto& r : v.regions) ok = ok && std::isfinite(r.value);
        }
      },
      f);
  if (!ok) throw ConfigError(name + ": non-finite coefficient");
}

}  // namespace

void validate(const ProblemSpec& spec) {
  const auto& d = spec.domain;
  if (!(std::isfinite(d.a) && d.a > 0.0)) throw ConfigError("domain.a must be a positive number");
  if (!(std::isfinite(d.b) && d.b > 0.0)) throw ConfigError("domain.b must be a positive number");
  check_finite(spec.sigma_t, "sigma_t");
  check_finite(spec.sigma_s, "sigma_s");
  check_finite(spec.source, "source");
  check_regions(spec.sigma_t, d, "sigma_t");
  check_regions(spec.sigma_s, d, "sigma_s");
  check_regions(spec.source, d, "source");

  for (Wall w : kWalls) {
    const auto& ws = spec.wall(w);
    const std::string name = "walls." + std::string(wall_name(w));
    if (!(ws.rho >= 0.0 && ws.rho <= 1.0)) {
      throw ConfigError(name + ".rho must lie in [0, 1], got " + std::to_string(ws.rho));
    }
    if (!(std::isfinite(ws.qb) && ws.qb >= 0.0)) {
      throw ConfigError(name + ".qb must be a finite value >= 0, got " + std::to_string(ws.qb));
    }
  }

  // Pointwise checks on a 64x64 lattice spanning the closed rectangle.
  constexpr int kLattice = 64;
  for (int j = 0; j < kLattice; ++j) {
    const double y = d.b * j / (kLattice - 1);
    for (int i = 0; i < kLattice; ++i) {
      const double x = d.a * i / (kLattice - 1);
      const double st = evaluate_field(spec.sigma_t, d, x, y);
      const double ss = evaluate_field(spec.sigma_s, d, x, y);
      const double q = evaluate_field(spec.source, d, x, y);
      const std::string at = " at (" + std::to_string(x) + ", " + std::to_string(y) + ")";
      if (!(st > 0.0)) throw ConfigError("sigma_t must be > 0" + at);
      if (ss < 0.0) throw ConfigError("sigma_s must be >= 0" + at);
      if (ss > st) throw ConfigError("sigma_s exceeds sigma_t" + at);
      if (q < 0.0) throw ConfigError("source must be >= 0" + at);
    }
  }
}

namespace {

double number_at(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ConfigError(path + ": missing key '" + key + "'");
  }
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path + "." + key + ": expected a number");
  return v.get<double>();
}

ScalarField parse_field(const json& j, const std::string& path) {
  if (!j.is_object() || j.size() != 1) {
    throw ConfigError(path + ": expected an object with exactly one of constant, poly_xy2, piecewise");
  }
  if (j.contains("constant")) {
    const auto& v = j.at("constant");
    if (!v.is_number()) throw ConfigError(path + ".constant: expected a number");
    return ConstantField{v.get<double>()};
  }
  if (j.contains("poly_xy2")) {
    const auto& p = j.at("poly_xy2");
    const std::string sub = path + ".poly_xy2";
    return PolyXY2Field{number_at(p, "c0", sub), number_at(p, "cx", sub), number_at(p, "cy", sub)};
  }
  if (j.contains("piecewise")) {
    const auto& p = j.at("piecewise");
    const std::string sub = path + ".piecewise";
    PiecewiseField f;
    f.default_value = number_at(p, "default", sub);
    if (p.contains("regions")) {
      const auto& rs = p.at("regions");
      if (!rs.is_array()) throw ConfigError(sub + ".regions: expected an array");
      for (std::size_t k = 0; k < rs.size(); ++k) {
        const std::string rp = sub + ".regions[" + std::to_string(k) + "]";
        const auto& r = rs[k];
        f.regions.push_back(Region{number_at(r, "x0", rp), number_at(r, "x1", rp),
                                   number_at(r, "y0", rp), number_at(r, "y1", rp),
                                   number_at(r, "value", rp)});
      }
    }
    return f;
  }
  throw ConfigError(path + ": unknown field kind '" + j.begin().key() + "'");
}

json field_to_json(const ScalarField& f) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ConstantField>) {
          return {{"constant", v.value}};
        } else if constexpr (std::is_same_v<T, PolyXY2Field>) {
          return {{"poly_xy2", {{"c0", v.c0}, {"cx", v.cx}, {"cy", v.cy}}}};
        } else {
          json regions = json::array();
          for (const auto& r : v.regions) {
            regions.push_back(
                {{"x0", r.x0}, {"x1", r.x1}, {"y0", r.y0}, {"y1", r.y1}, {"value", r.value}});
          }
          return {{"piecewise", {{"default", v.default_value}, {"regions", regions}}}};
        }
      },
      f);
}

const std::set<std::string> kTopLevelKeys = {"domain", "sigma_t", "sigma_s", "source",
                                             "walls",  "benchmark", "goal", "trials"};

}  // namespace

ProblemSpec parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!kTopLevelKeys.contains(key)) throw ConfigError("unknown top-level key '" + key + "'");
  }

  if (doc.contains("benchmark")) {
    const auto& b = doc.at("benchmark");
    if (!b.is_number_integer()) throw ConfigError("benchmark: expected an integer");
    return builtin_benchmark(b.get<int>());
  }

  ProblemSpec spec;
  if (!doc.contains("domain")) throw ConfigError("missing key 'domain'");
  spec.domain.a = number_at(doc.at("domain"), "a", "domain");
  spec.domain.b = number_at(doc.at("domain"), "b", "domain");
  for (const char* key : {"sigma_t", "sigma_s", "source"}) {
    if (!doc.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
  }
  spec.sigma_t = parse_field(doc.at("sigma_t"), "sigma_t");
  spec.sigma_s = parse_field(doc.at("sigma_s"), "sigma_s");
  spec.source = parse_field(doc.at("source"), "source");

  if (!doc.contains("walls") || !doc.at("walls").is_object()) {
    throw ConfigError("missing object 'walls'");
  }
  const auto& walls = doc.at("walls");
  for (const auto& [key, _] : walls.items()) {
    parse_wall(key);
  }
  for (Wall w : kWalls) {
    const std::string name(wall_name(w));
    const std::string path = "walls." + name;
    if (!walls.contains(name)) throw ConfigError("missing key '" + path + "'");
    spec.wall(w) = {number_at(walls.at(name), "rho", path), number_at(walls.at(name), "qb", path)};
  }

  validate(spec);
  return spec;
}

std::string serialize(const ProblemSpec& spec) {
  json walls = json::object();
  for (Wall w : kWalls) {
    walls[std::string(wall_name(w))] = {{"rho", spec.wall(w).rho}, {"qb", spec.wall(w).qb}};
  }
  json doc = {{"domain", {{"a", spec.domain.a}, {"b", spec.domain.b}}},
              {"sigma_t", field_to_json(spec.sigma_t)},
              {"sigma_s", field_to_json(spec.sigma_s)},
              {"source", field_to_json(spec.source)},
              {"walls", walls}};
  return doc.dump(2);
}

}  // namespace qrdom
