// qrdom command-line driver. Talks to the solver only through the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "qrdom/qrdom.h"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kOther = 1, kConfig = 2, kNumerical = 3, kDivergence = 4 };

struct CliError : std::runtime_error {
  CliError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

int exit_code(qrdom_status s) {
  switch (s) {
    case QRDOM_OK: return kOk;
    case QRDOM_ERR_CONFIG: return kConfig;
    case QRDOM_ERR_NUMERICAL: return kNumerical;
    case QRDOM_ERR_DIVERGENCE: return kDivergence;
    case QRDOM_ERR_CONTRACT: return kConfig;
    default: return kOther;
  }
}

void check(qrdom_status s) {
  if (s != QRDOM_OK) {
    throw CliError(exit_code(s), std::string(qrdom_status_name(s)) + ": " + qrdom_last_error());
  }
}

std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

struct ProblemDeleter {
  void operator()(qrdom_problem* p) const { qrdom_problem_free(p); }
};
struct ResultDeleter {
  void operator()(qrdom_result* r) const { qrdom_result_free(r); }
};
using ProblemPtr = std::unique_ptr<qrdom_problem, ProblemDeleter>;
using ResultPtr = std::unique_ptr<qrdom_result, ResultDeleter>;

std::string take_string(char* s) {
  std::string out(s);
  qrdom_string_free(s);
  return out;
}

// Options shared by run, dom, profile and field.
struct Common {
  int benchmark = 0;
  std::string config;
  std::string grid = "64x64";
  std::string goal;
  std::vector<std::string> trials;
  double tol = 1e-3;
  unsigned workers = 1;
  std::string out_dir = ".";
};

struct Loaded {
  ProblemPtr problem;
  std::string goal;
  std::vector<std::string> trials;
};

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  int w = 0;
  int h = 0;
  bool ok = x != std::string::npos;
  if (ok) {
    const char* s = text.data();
    const auto a = std::from_chars(s, s + x, w);
    const auto b = std::from_chars(s + x + 1, s + text.size(), h);
    ok = a.ec == std::errc() && a.ptr == s + x && b.ec == std::errc() && b.ptr == s + text.size();
  }
  if (!ok || w < 1 || h < 1) throw CliError(kConfig, "--grid expects WxH with positive integers, got '" + text + "'");
  return {w, h};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kConfig, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Goal and trials in a config may be plain text or functional objects.
std::string functional_text(const nlohmann::json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

Loaded load(const Common& c) {
  if (c.benchmark == 0 && c.config.empty()) throw CliError(kConfig, "one of --benchmark or --config is required");
  if (c.benchmark != 0 && !c.config.empty()) throw CliError(kConfig, "--benchmark and --config are exclusive");
  Loaded out;
  qrdom_problem* p = nullptr;
  if (c.benchmark != 0) {
    check(qrdom_problem_benchmark(c.benchmark, &p));
  } else {
    const std::string text = read_file(c.config);
    check(qrdom_problem_parse(text.c_str(), &p));
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_object()) {
      if (doc.contains("goal")) out.goal = functional_text(doc["goal"]);
      if (doc.contains("trials")) {
        for (const auto& t : doc["trials"]) out.trials.push_back(functional_text(t));
      }
    }
  }
  out.problem.reset(p);
  if (!c.goal.empty()) out.goal = c.goal;
  if (out.goal.empty()) out.goal = "domain-average";
  if (!c.trials.empty()) {
    out.trials.clear();
    for (const auto& t : c.trials) {
      std::stringstream ss(t);
      std::string item;
      while (std::getline(ss, item, ';')) {
        if (!item.empty()) out.trials.push_back(item);
      }
    }
  }
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError(kOther, "cannot write " + path.string());
  out << text;
  if (!out) throw CliError(kOther, "write failed for " + path.string());
}

struct FieldData {
  int nx = 0;
  int ny = 0;
  double a = 0.0;
  double b = 0.0;
  std::vector<double> values;
};

FieldData result_field(const qrdom_result* r) {
  FieldData f;
  check(qrdom_result_grid(r, &f.nx, &f.ny, &f.a, &f.b));
  f.values.resize(static_cast<std::size_t>(f.nx) * static_cast<std::size_t>(f.ny));
  check(qrdom_result_field(r, f.values.data(), f.values.size()));
  return f;
}

std::string field_csv(const FieldData& f) {
  std::string s = "# nx=" + std::to_string(f.nx) + " ny=" + std::to_string(f.ny) + " a=" + fmt(f.a) + " b=" + fmt(f.b) + "\n";
  s += "i,j,x,y,psi\n";
  const double hx = f.a / f.nx;
  const double hy = f.b / f.ny;
  for (int j = 0; j < f.ny; ++j) {
    for (int i = 0; i < f.nx; ++i) {
      s += std::to_string(i) + ',' + std::to_string(j) + ',' + fmt((i + 0.5) * hx) + ',' + fmt((j + 0.5) * hy) + ',' +
           fmt(f.values[static_cast<std::size_t>(j) * f.nx + i]) + '\n';
    }
  }
  return s;
}

FieldData read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kConfig, "cannot read " + path);
  FieldData f;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw CliError(kConfig, path + ": missing grid metadata line");
  std::stringstream meta(line.substr(2));
  std::string kv;
  while (meta >> kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) continue;
    const std::string k = kv.substr(0, eq);
    const std::string v = kv.substr(eq + 1);
    if (k == "nx") f.nx = std::stoi(v);
    if (k == "ny") f.ny = std::stoi(v);
    if (k == "a") f.a = std::stod(v);
    if (k == "b") f.b = std::stod(v);
  }
  if (f.nx < 1 || f.ny < 1 || !(f.a > 0.0) || !(f.b > 0.0)) throw CliError(kConfig, path + ": bad grid metadata");
  std::getline(in, line);  // header
  f.values.assign(static_cast<std::size_t>(f.nx) * static_cast<std::size_t>(f.ny), 0.0);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    int i = 0;
    int j = 0;
    double x = 0;
    double y = 0;
    double v = 0;
    if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf,%lf", &i, &j, &x, &y, &v) != 5 || i < 0 || j < 0 || i >= f.nx ||
        j >= f.ny) {
      throw CliError(kConfig, path + ": malformed row '" + line + "'");
    }
    f.values[static_cast<std::size_t>(j) * f.nx + i] = v;
    ++rows;
  }
  if (rows != f.values.size()) throw CliError(kConfig, path + ": expected " + std::to_string(f.values.size()) + " rows");
  return f;
}

std::string profile_csv(const FieldData& f, const std::string& wall) {
  const std::size_t n = static_cast<std::size_t>(std::max(f.nx, f.ny));
  std::vector<double> x(n), y(n), v(n);
  std::size_t count = 0;
  check(qrdom_field_wall_profile(f.values.data(), f.nx, f.ny, f.a, f.b, wall.c_str(), x.data(), y.data(), v.data(), n,
                                 &count));
  std::string s = "x,y,psi\n";
  for (std::size_t k = 0; k < count; ++k) s += fmt(x[k]) + ',' + fmt(y[k]) + ',' + fmt(v[k]) + '\n';
  return s;
}

struct RunFlags {
  std::uint64_t batch = 1000;
  std::uint64_t max_samples = 1'000'000;
  std::size_t min_batches = 2;
  std::size_t max_epochs = 1000;
  std::uint64_t seed_index = 1;
  bool no_fixup = false;
  bool quiet = false;
};

void on_epoch(const qrdom_epoch_record* r, void*) {
  std::cerr << "epoch " << r->epoch << ": samples=" << r->samples << " estimate=" << fmt(r->gamma0) << '\n';
}

ResultPtr do_run(const Common& c, const RunFlags& rf, const Loaded& in, int nx, int ny) {
  qrdom_run_options o;
  qrdom_run_options_default(&o);
  o.tol = c.tol;
  o.batch_size = rf.batch;
  o.max_samples_per_epoch = rf.max_samples;
  o.min_batches_first_epoch = rf.min_batches;
  o.max_epochs = rf.max_epochs;
  o.fixup = rf.no_fixup ? 0 : 1;
  o.workers = c.workers;
  o.seed_index = rf.seed_index;
  if (!rf.quiet) o.on_epoch = on_epoch;
  std::vector<const char*> trials;
  for (const auto& t : in.trials) trials.push_back(t.c_str());
  qrdom_result* r = nullptr;
  check(qrdom_run(in.problem.get(), nx, ny, in.goal.c_str(), trials.data(), trials.size(), &o, &r));
  return ResultPtr(r);
}

void add_common(CLI::App* app, Common& c, bool with_trials) {
  app->add_option("--benchmark", c.benchmark, "Built-in benchmark problem (1, 2 or 3)");
  app->add_option("--config", c.config, "JSON problem configuration");
  app->add_option("--grid", c.grid, "Grid size WxH")->capture_default_str();
  app->add_option("--tol", c.tol, "Relative convergence tolerance")->capture_default_str();
  app->add_option("--goal", c.goal, "Goal functional (line:<wall>, point:x,y, domain-average, region:x0,x1,y0,y1)");
  if (with_trials) app->add_option("--trials", c.trials, "Trial functionals, repeatable or ';'-separated");
  app->add_option("--workers", c.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--out-dir", c.out_dir, "Output directory")->capture_default_str();
}

void add_run_flags(CLI::App* app, RunFlags& rf) {
  app->add_option("--batch", rf.batch, "Directions per batch")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--max-samples", rf.max_samples, "Per-epoch sample cap")->capture_default_str();
  app->add_option("--min-batches", rf.min_batches, "Minimum batches in the first epoch")->capture_default_str();
  app->add_option("--max-epochs", rf.max_epochs, "Epoch cap")->capture_default_str();
  app->add_option("--seed-index", rf.seed_index, "First index into the direction sequence")->capture_default_str();
  app->add_flag("--no-fixup", rf.no_fixup, "Disable the negative-flux fixup");
  app->add_flag("--quiet", rf.quiet, "No per-epoch progress on stderr");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qrdom: quasi-random discrete ordinates for 2D transport"};
  app.require_subcommand(1);

  Common run_c;
  RunFlags run_f;
  auto* run = app.add_subcommand("run", "Run QRDOM source iteration; writes report.json and field.csv");
  add_common(run, run_c, true);
  add_run_flags(run, run_f);

  Common dom_c;
  int polar = 22;
  int azimuthal = 22;
  std::size_t dom_max_it = 10000;
  bool dom_no_fixup = false;
  auto* dom = app.add_subcommand("dom", "Run the product-quadrature DOM baseline");
  add_common(dom, dom_c, false);
  dom->add_option("--polar", polar, "Gauss-Legendre polar nodes per octant")->capture_default_str();
  dom->add_option("--azimuthal", azimuthal, "Azimuthal nodes per octant")->capture_default_str();
  dom->add_option("--max-iterations", dom_max_it, "Source iteration cap")->capture_default_str();
  dom->add_flag("--no-fixup", dom_no_fixup, "Disable the negative-flux fixup");

  Common prof_c;
  RunFlags prof_f;
  std::string wall = "top";
  std::string from;
  std::string prof_out;
  auto* profile = app.add_subcommand("profile", "Wall trace of the scalar flux as CSV (x,y,psi)");
  add_common(profile, prof_c, false);
  add_run_flags(profile, prof_f);
  profile->add_option("--wall", wall, "bottom, right, top or left")->capture_default_str();
  profile->add_option("--from", from, "Field CSV written by 'run' or 'field' instead of an inline run");
  profile->add_option("-o,--output", prof_out, "Output file (default: stdout)");

  Common field_c;
  RunFlags field_f;
  std::string field_out;
  auto* field = app.add_subcommand("field", "Dump the scalar flux over the grid as CSV");
  add_common(field, field_c, false);
  add_run_flags(field, field_f);
  field->add_option("-o,--output", field_out, "Output file (default: stdout)");

  std::size_t n_dirs = 5000;
  std::uint64_t dir_seed = 1;
  std::string dir_out;
  auto* directions = app.add_subcommand("directions", "First N quasi-random directions as CSV (i,mu,eta,xi)");
  directions->add_option("-n,--count", n_dirs, "Number of directions")->capture_default_str()->check(CLI::PositiveNumber);
  directions->add_option("--seed-index", dir_seed, "First sequence index")->capture_default_str();
  directions->add_option("-o,--output", dir_out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  auto emit = [](const std::string& path, const std::string& text) {
    if (path.empty()) {
      std::cout << text;
    } else {
      write_text(path, text);
    }
  };

  try {
    if (*run) {
      const auto [nx, ny] = parse_grid(run_c.grid);
      const Loaded in = load(run_c);
      const ResultPtr r = do_run(run_c, run_f, in, nx, ny);
      char* report = nullptr;
      check(qrdom_result_report_json(r.get(), &report));
      const std::string text = take_string(report);
      const fs::path dir(run_c.out_dir);
      write_text(dir / "report.json", text + "\n");
      write_text(dir / "field.csv", field_csv(result_field(r.get())));
      // Summary table in canonical functional notation.
      const auto doc = nlohmann::json::parse(text);
      std::cout << doc["goal"].get<std::string>() << " = " << fmt(doc["results"]["goal_estimate"].get<double>()) << '\n';
      for (const auto& [name, entry] : doc["results"]["trials"].items()) {
        std::cout << name << " = " << fmt(entry["estimate"].get<double>()) << '\n';
      }
    } else if (*dom) {
      const auto [nx, ny] = parse_grid(dom_c.grid);
      const Loaded in = load(dom_c);
      qrdom_dom_options o;
      qrdom_dom_options_default(&o);
      o.tol = dom_c.tol;
      o.max_iterations = dom_max_it;
      o.fixup = dom_no_fixup ? 0 : 1;
      o.workers = dom_c.workers;
      o.n_polar = polar;
      o.n_azimuthal = azimuthal;
      qrdom_result* raw = nullptr;
      check(qrdom_dom(in.problem.get(), nx, ny, in.goal.c_str(), &o, &raw));
      const ResultPtr r(raw);
      char* report = nullptr;
      check(qrdom_result_report_json(r.get(), &report));
      const fs::path dir(dom_c.out_dir);
      write_text(dir / "dom_report.json", take_string(report) + "\n");
      write_text(dir / "dom_field.csv", field_csv(result_field(r.get())));
      double goal = 0.0;
      check(qrdom_result_goal(r.get(), &goal));
      std::cout << in.goal << " = " << fmt(goal) << '\n';
    } else if (*profile) {
      FieldData f;
      if (!from.empty()) {
        f = read_field_csv(from);
      } else {
        const auto [nx, ny] = parse_grid(prof_c.grid);
        const ResultPtr r = do_run(prof_c, prof_f, load(prof_c), nx, ny);
        f = result_field(r.get());
      }
      emit(prof_out, profile_csv(f, wall));
    } else if (*field) {
      const auto [nx, ny] = parse_grid(field_c.grid);
      const ResultPtr r = do_run(field_c, field_f, load(field_c), nx, ny);
      emit(field_out, field_csv(result_field(r.get())));
    } else if (*directions) {
      std::string s = "i,mu,eta,xi\n";
      double d[3];
      for (std::uint64_t k = 0; k < n_dirs; ++k) {
        const std::uint64_t i = dir_seed + k;
        check(qrdom_direction(i, d));
        s += std::to_string(i) + ',' + fmt(d[0]) + ',' + fmt(d[1]) + ',' + fmt(d[2]) + '\n';
      }
      emit(dir_out, s);
    }
  } catch (const CliError& e) {
    std::cerr << "qrdom: " << e.what() << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "qrdom: " << e.what() << '\n';
    return kOther;
  }
  return kOk;
}
