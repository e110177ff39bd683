// ldeconf: transform linear differential equations between conformally
// equivalent domains, recover coefficients from solution bases, build
// power-product bases, and measure solution oscillation on radial grids.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include <ldeconf/ldeconf.hpp>

namespace fs = std::filesystem;
using namespace ldeconf;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 1;

struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string format_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Inline JSON if the text looks like one, otherwise a file path.
ordered_json json_argument(const std::string& text, const std::string& field) {
  std::string trimmed = text;
  size_t a = trimmed.find_first_not_of(" \t\n");
  if (a == std::string::npos) throw ValidationFailure(field + ": empty value");
  if (trimmed[a] == '{' || trimmed[a] == '[') {
    try {
      return ordered_json::parse(trimmed);
    } catch (const std::exception& e) {
      throw ValidationFailure(field + ": invalid JSON (" + e.what() + ")");
    }
  }
  std::ifstream in(trimmed);
  if (!in) throw ValidationFailure(field + ": cannot open file '" + trimmed + "'");
  try {
    ordered_json j;
    in >> j;
    return j;
  } catch (const std::exception& e) {
    throw ValidationFailure(field + ": invalid JSON in '" + trimmed + "' (" + e.what() + ")");
  }
}

// "1,2.5,-3" or "1+2i,0.5-1i" -> complex list.
std::vector<cplx> parse_complex_list(const std::string& text, const std::string& field) {
  std::vector<cplx> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (token.empty()) throw ValidationFailure(field + ": empty entry");
    double re = 0, im = 0;
    size_t ipos = token.find_first_of("iI");
    if (ipos == std::string::npos) {
      try {
        re = std::stod(token);
      } catch (...) {
        throw ValidationFailure(field + ": cannot parse '" + token + "'");
      }
    } else {
      std::string body = token.substr(0, ipos);
      size_t split = body.find_last_of("+-");
      if (split == std::string::npos || split == 0) {
        try {
          im = std::stod(body.empty() || body == "+" ? "1" : (body == "-" ? "-1" : body));
        } catch (...) {
          throw ValidationFailure(field + ": cannot parse '" + token + "'");
        }
      } else {
        try {
          re = std::stod(body.substr(0, split));
          std::string imtxt = body.substr(split);
          if (imtxt == "+") imtxt = "1";
          if (imtxt == "-") imtxt = "-1";
          im = std::stod(imtxt);
        } catch (...) {
          throw ValidationFailure(field + ": cannot parse '" + token + "'");
        }
      }
    }
    out.push_back(cplx(re, im));
  }
  if (out.empty()) throw ValidationFailure(field + ": no values given");
  return out;
}

std::vector<cplx> points_from_json(const ordered_json& j, const std::string& field) {
  if (!j.is_array()) throw ValidationFailure(field + ": expected a JSON array of points");
  std::vector<cplx> pts;
  for (const auto& e : j) pts.push_back(complex_from_json(e));
  if (pts.empty()) throw ValidationFailure(field + ": no points given");
  return pts;
}

// "rmin:rmax:count" (linear) or "log:rmin:rmax:count".
RadialGrid parse_rgrid(const std::string& text, double shrink_b) {
  std::vector<std::string> parts;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ':')) parts.push_back(token);
  try {
    if (parts.size() == 4 && parts[0] == "log")
      return RadialGrid::log_spaced(std::stod(parts[1]), std::stod(parts[2]),
                                    std::stoi(parts[3]), shrink_b);
    if (parts.size() == 3)
      return RadialGrid::linear(std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2]),
                                shrink_b);
  } catch (const std::invalid_argument& e) {
    throw ValidationFailure(std::string("rgrid: ") + e.what());
  }
  throw ValidationFailure("rgrid: expected 'rmin:rmax:count' or 'log:rmin:rmax:count'");
}

class OutputDir {
 public:
  OutputDir(std::string path, bool enabled) : path_(std::move(path)), enabled_(enabled) {
    if (enabled_) {
      if (path_.empty()) throw ValidationFailure("out: output directory required");
      fs::create_directories(path_);
    }
  }
  bool enabled() const { return enabled_; }
  void write_text(const std::string& name, const std::string& text) const {
    if (!enabled_) return;
    std::ofstream out(fs::path(path_) / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + name);
    out << text;
  }
  void write_json(const std::string& name, const ordered_json& j) const {
    write_text(name, j.dump(2) + "\n");
  }

 private:
  std::string path_;
  bool enabled_;
};

// Per-command option resolution: flag > config section > default.
class Resolver {
 public:
  Resolver(const ordered_json& config, std::string section) : section_(std::move(section)) {
    if (config.is_object() && config.contains(section_)) section_json_ = config.at(section_);
  }

  template <class T>
  T pick(const CLI::Option* opt, const T& cli_value, const std::string& key, const T& fallback) const {
    if (opt != nullptr && opt->count() > 0) return cli_value;
    if (section_json_.is_object() && section_json_.contains(key)) {
      try {
        return section_json_.at(key).get<T>();
      } catch (const std::exception&) {
        throw ValidationFailure(section_ + "." + key + ": wrong type in config");
      }
    }
    return fallback;
  }

 private:
  std::string section_;
  ordered_json section_json_;
};

ordered_json complex_list_json(const std::vector<cplx>& v) {
  ordered_json a = ordered_json::array();
  for (cplx c : v) a.push_back(to_json(c));
  return a;
}

// ---------------------------------------------------------------------------
// bell
// ---------------------------------------------------------------------------

int run_bell(int i, int n, const std::string& args_text, const std::string& out,
             bool dry_run) {
  std::vector<cplx> args = parse_complex_list(args_text, "args");
  if (i < 0 || n < 0 || i < n) throw ValidationFailure("i/n: need i >= n >= 0");
  if (static_cast<int>(args.size()) != i - n + 1)
    throw ValidationFailure("args: expected i - n + 1 = " + std::to_string(i - n + 1) +
                            " values, got " + std::to_string(args.size()));
  ordered_json plan = {{"command", "bell"}, {"i", i}, {"n", n}, {"args", complex_list_json(args)}};
  if (dry_run) {
    std::cout << plan.dump(2) << "\n";
    return 0;
  }
  cplx value = bell_polynomial<cplx>(i, n, args);
  if (std::abs(value.imag()) <= 1e-12 * std::max(1.0, std::abs(value.real())))
    std::cout << format_short(value.real()) << "\n";
  else
    std::cout << format_short(value.real()) << (value.imag() < 0 ? "" : "+")
              << format_short(value.imag()) << "i\n";
  if (!out.empty()) {
    OutputDir dir(out, true);
    plan["value"] = to_json(value);
    dir.write_json("bell.json", plan);
    dir.write_json("run.json", plan);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// transform
// ---------------------------------------------------------------------------

LinearOde ode_on_image(const ordered_json& ode_json, const ConformalMap& T) {
  ordered_json j = ode_json;
  if (!j.is_object()) throw ValidationFailure("ode: expected a JSON object");
  if (!j.contains("domain")) j["domain"] = ordered_json{{"image", to_json(T)}};
  return ode_from_json(j);
}

std::vector<cplx> default_points() {
  std::vector<cplx> pts;
  for (int i = 0; i < 20; ++i) {
    double r = 0.35 + 0.5 * (i % 4) / 4.0;
    pts.push_back(std::polar(r, 2.0 * kPi * i / 20.0));
  }
  return pts;
}

int run_transform(const std::string& map_text, const std::string& ode_text,
                  const std::string& points_text, const std::string& out, bool dry_run) {
  ConformalMap T = map_from_json(json_argument(map_text, "map"));
  LinearOde ode = ode_on_image(json_argument(ode_text, "ode"), T);
  std::vector<cplx> pts = points_text.empty()
                              ? default_points()
                              : points_from_json(json_argument(points_text, "points"), "points");
  for (cplx z : pts)
    if (!(std::abs(z) < 1.0)) throw ValidationFailure("points: all points must satisfy |z| < 1");

  ordered_json plan = {{"command", "transform"},
                       {"map", to_json(T)},
                       {"order", ode.order()},
                       {"points", complex_list_json(pts)},
                       {"out", out}};
  if (dry_run) {
    std::cout << plan.dump(2) << "\n";
    return 0;
  }

  LinearOde moved = transform_ode(ode, T);
  int k = ode.order();
  std::ostringstream csv;
  csv << "z_re,z_im";
  for (int j = 0; j <= k - 2; ++j) csv << ",b" << j << "_re,b" << j << "_im";
  csv << "\n";
  ordered_json rows = ordered_json::array();
  for (cplx z : pts) {
    csv << format_double(z.real()) << ',' << format_double(z.imag());
    ordered_json row = {{"z", to_json(z)}};
    ordered_json bs = ordered_json::array();
    for (int j = 0; j <= k - 2; ++j) {
      cplx b = moved.coeff(j).value(z);
      csv << ',' << format_double(b.real()) << ',' << format_double(b.imag());
      bs.push_back(to_json(b));
    }
    row["b"] = std::move(bs);
    rows.push_back(std::move(row));
    csv << "\n";
  }
  OutputDir dir(out, true);
  dir.write_text("transform.csv", csv.str());
  dir.write_json("transform.json", ordered_json{{"map", to_json(T)}, {"rows", rows}});
  dir.write_json("run.json", plan);
  std::cout << "transform: wrote " << pts.size() << " rows\n";
  return 0;
}

// ---------------------------------------------------------------------------
// recover
// ---------------------------------------------------------------------------

struct IcsSpec {
  cplx z0;
  std::vector<std::vector<cplx>> solutions;  // each: k derivative values at z0
};

// Default base: value 1 at z0 plus a single unit derivative (columns
// e_0, e_0 + e_1, ..., e_0 + e_{k-1}); independent, and no member vanishes
// at the base point, so zero counting from the origin stays well posed.
IcsSpec parse_ics(const std::string& text, int k, cplx default_z0) {
  IcsSpec spec;
  spec.z0 = default_z0;
  if (text.empty()) {
    for (int i = 0; i < k; ++i) {
      std::vector<cplx> init(static_cast<size_t>(k), 0.0);
      init[0] = 1.0;
      if (i > 0) init[static_cast<size_t>(i)] = 1.0;
      spec.solutions.push_back(std::move(init));
    }
    return spec;
  }
  ordered_json j = json_argument(text, "ics");
  if (!j.is_object() || !j.contains("solutions"))
    throw ValidationFailure("ics: expected {\"z0\": [re,im], \"solutions\": [[...], ...]}");
  if (j.contains("z0")) spec.z0 = complex_from_json(j.at("z0"));
  for (const auto& sol : j.at("solutions")) {
    std::vector<cplx> init;
    for (const auto& v : sol) init.push_back(complex_from_json(v));
    if (static_cast<int>(init.size()) != k)
      throw ValidationFailure("ics: each solution needs k = " + std::to_string(k) + " values");
    spec.solutions.push_back(std::move(init));
  }
  return spec;
}

int run_recover(const std::string& ode_text, const std::string& ics_text,
                const std::string& points_text, const std::string& out, bool dry_run) {
  LinearOde ode = ode_from_json(json_argument(ode_text, "ode"));
  int k = ode.order();
  IcsSpec ics = parse_ics(ics_text, k, 0.0);
  if (static_cast<int>(ics.solutions.size()) != k)
    throw ValidationFailure("ics: need exactly k = " + std::to_string(k) + " solutions");
  std::vector<cplx> pts = points_text.empty()
                              ? default_points()
                              : points_from_json(json_argument(points_text, "points"), "points");

  ordered_json plan = {{"command", "recover"}, {"order", k},
                       {"z0", to_json(ics.z0)},  {"points", complex_list_json(pts)},
                       {"out", out}};
  if (dry_run) {
    std::cout << plan.dump(2) << "\n";
    return 0;
  }

  std::vector<SolutionEvaluator> basis;
  for (const auto& init : ics.solutions) basis.push_back(taylor_solve(ode, ics.z0, init));

  std::ostringstream csv;
  csv << "z_re,z_im";
  for (int j = 0; j <= k - 2; ++j)
    csv << ",true" << j << "_re,true" << j << "_im,rec" << j << "_re,rec" << j << "_im,rel" << j;
  csv << "\n";
  double worst = 0.0;
  for (cplx z : pts) {
    std::vector<cplx> rec = recover_coefficients(basis, z);
    csv << format_double(z.real()) << ',' << format_double(z.imag());
    for (int j = 0; j <= k - 2; ++j) {
      cplx want = ode.coeff(j).value(z);
      cplx got = rec[static_cast<size_t>(j)];
      double rel = std::abs(got - want) / std::max(1e-12, std::abs(want));
      worst = std::max(worst, rel);
      csv << ',' << format_double(want.real()) << ',' << format_double(want.imag()) << ','
          << format_double(got.real()) << ',' << format_double(got.imag()) << ','
          << format_double(rel);
    }
    csv << "\n";
  }
  OutputDir dir(out, true);
  dir.write_text("recover.csv", csv.str());
  dir.write_json("run.json", plan);
  std::cout << "recover: worst relative deviation " << format_short(worst) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// basis
// ---------------------------------------------------------------------------

int run_basis(const std::string& a_text, int k, const std::string& out, bool dry_run) {
  if (k < 2 || k > 8) throw ValidationFailure("k: supported range is 2..8");
  Domain disc = Domain::disc();
  AnalyticFunction a = function_from_json(json_argument(a_text, "a"), disc);
  ordered_json plan = {{"command", "basis"}, {"k", k}, {"out", out}};
  if (dry_run) {
    std::cout << plan.dump(2) << "\n";
    return 0;
  }
  std::array<std::array<cplx, 2>, 2> ics = {{{cplx(1.0), cplx(0.0)}, {cplx(0.0), cplx(1.0)}}};
  PowerBasis pb = power_basis(a, k, ics);
  double factor = (k - 1.0) * k * (k + 1.0) / 6.0;

  std::ostringstream csv;
  csv << "z_re,z_im";
  for (int j = 0; j <= k - 2; ++j) csv << ",a" << j << "_re,a" << j << "_im";
  csv << ",top_vs_scaled_a\n";
  for (int i = 0; i < 12; ++i) {
    cplx z = std::polar(0.4, 2.0 * kPi * i / 12.0);
    csv << format_double(z.real()) << ',' << format_double(z.imag());
    for (int j = 0; j <= k - 2; ++j) {
      cplx v = pb.ode.coeff(j).value(z);
      csv << ',' << format_double(v.real()) << ',' << format_double(v.imag());
    }
    cplx top = pb.ode.coeff(k - 2).value(z);
    double dev = std::abs(top - factor * a.value(z)) / std::max(1e-12, std::abs(top));
    csv << ',' << format_double(dev) << "\n";
  }
  OutputDir dir(out, true);
  dir.write_text("basis.csv", csv.str());
  dir.write_json("run.json", plan);
  std::cout << "basis: order-" << k << " coefficients written\n";
  return 0;
}

// ---------------------------------------------------------------------------
// oscillate
// ---------------------------------------------------------------------------

int run_oscillate(const std::string& map_text, const std::string& ode_text,
                  const std::string& ics_text, const std::string& rgrid_text, double shrink_b,
                  const std::string& out, bool dry_run) {
  if (!(shrink_b > 0.0 && shrink_b < 1.0))
    throw ValidationFailure("shrink-b: must lie in (0, 1)");
  ConformalMap T = map_from_json(json_argument(map_text, "map"));
  LinearOde ode = ode_on_image(json_argument(ode_text, "ode"), T);
  int k = ode.order();
  RadialGrid grid = parse_rgrid(rgrid_text.empty() ? "0.5:0.85:8" : rgrid_text, shrink_b);
  IcsSpec ics = parse_ics(ics_text, k, T.eval(0.0));
  if (static_cast<int>(ics.solutions.size()) != k)
    throw ValidationFailure("ics: need exactly k = " + std::to_string(k) + " solutions");

  ordered_json plan = {{"command", "oscillate"},
                       {"map", to_json(T)},
                       {"order", k},
                       {"shrink_b", shrink_b},
                       {"rgrid", grid.radii},
                       {"z0", to_json(ics.z0)},
                       {"out", out}};
  if (dry_run) {
    std::cout << plan.dump(2) << "\n";
    return 0;
  }

  std::vector<AnalyticFunction> base;
  for (const auto& init : ics.solutions) base.push_back(taylor_solve(ode, ics.z0, init));
  ReportOptions opt;
  opt.counting_radii = 20;
  OscillationReport rep = oscillation_report(base, T, ode, grid, opt);

  OutputDir dir(out, true);
  std::ostringstream csv;
  rep.to_csv(csv);
  dir.write_text("report.csv", csv.str());
  dir.write_json("report.json", to_json(rep));
  dir.write_json("run.json", plan);
  std::cout << "oscillate: " << rep.rows.size() << " radii, ratio spread "
            << format_short(rep.exponent_ratio_max) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// example presets
// ---------------------------------------------------------------------------

int run_example(const std::string& name, double alpha, double rmax, const std::string& out,
                bool dry_run) {
  ordered_json plan = {{"command", "example"}, {"name", name}, {"alpha", alpha},
                       {"rmax", rmax},         {"out", out}};
  if (name == "petal51") {
    if (!(alpha > 1.0 && alpha < 2.0)) throw ValidationFailure("alpha: petal51 needs 1 < alpha < 2");
    if (!(rmax > 0.5 && rmax < 1.0)) throw ValidationFailure("rmax: needs 0.5 < rmax < 1");
    if (dry_run) {
      std::cout << plan.dump(2) << "\n";
      return 0;
    }
    OscillationReport rep = presets::run_petal51(alpha, rmax, 24);
    presets::GrowthAsymptotics fits = presets::petal51_asymptotics(alpha);
    OutputDir dir(out, true);
    std::ostringstream csv;
    rep.to_csv(csv);
    dir.write_text("report.csv", csv.str());
    dir.write_json("report.json", to_json(rep));
    dir.write_json("asymptotics.json",
                   ordered_json{{"window", {0.985, 0.9995}},
                                {"n_exponent", fits.n_exponent},
                                {"N_exponent", fits.N_exponent},
                                {"I_exponent", fits.I_exponent},
                                {"rhs_exponent", fits.rhs_exponent}});
    std::ostringstream zeros;
    zeros << "modulus\n";
    for (double m : presets::petal51_zero_moduli(alpha, rmax)) zeros << format_double(m) << "\n";
    dir.write_text("zeros.csv", zeros.str());
    dir.write_json("run.json", plan);
    std::cout << "petal51: coefficient-integral exponent " << format_short(fits.I_exponent)
              << " (zero-count exponent " << format_short(fits.n_exponent) << ")\n";
    return 0;
  }
  if (name == "expsum52") {
    if (!(alpha > 1.0 && alpha < 2.0)) throw ValidationFailure("alpha: expsum52 needs 1 < alpha < 2");
    if (!(rmax > 0.5 && rmax < 1.0)) throw ValidationFailure("rmax: needs 0.5 < rmax < 1");
    if (dry_run) {
      std::cout << plan.dump(2) << "\n";
      return 0;
    }
    OscillationReport rep = presets::run_expsum52(alpha, rmax, 20);
    presets::ExpSumSector sys = presets::make_expsum52(alpha);
    presets::GrowthAsymptotics fits = presets::expsum52_asymptotics(alpha);
    OutputDir dir(out, true);
    std::ostringstream csv;
    rep.to_csv(csv);
    dir.write_text("report.csv", csv.str());
    dir.write_json("report.json", to_json(rep));
    dir.write_json("asymptotics.json",
                   ordered_json{{"window", {0.985, 0.9995}},
                                {"n_exponent", fits.n_exponent},
                                {"N_exponent", fits.N_exponent},
                                {"I_exponent", fits.I_exponent},
                                {"rhs_exponent", fits.rhs_exponent}});
    std::vector<double> theta = exp_sum_directions(sys.roots);
    dir.write_json("directions.json",
                   ordered_json{{"roots", complex_list_json(sys.roots)}, {"theta", theta}});
    dir.write_json("run.json", plan);
    std::cout << "expsum52: coefficient-integral exponent " << format_short(fits.I_exponent)
              << "\n";
    return 0;
  }
  if (name == "schwarz2") {
    if (dry_run) {
      std::cout << plan.dump(2) << "\n";
      return 0;
    }
    std::vector<std::pair<std::string, ConformalMap>> maps = {
        {"cayley", ConformalMap::cayley()},
        {"sector", ConformalMap::sector(1.5, 0.0)},
        {"strip", ConformalMap::strip(1.0, 0.0)},
        {"stolz_petal", ConformalMap::stolz_petal(0.5, 1.0)},
        {"horodisc", ConformalMap::horodisc(cplx(0.35, 0.0))}};
    std::ostringstream csv;
    csv << "map,z_re,z_im,reduction_err,schwarzian_abs\n";
    double worst = 0.0;
    for (const auto& [label, T] : maps) {
      Domain dom = Domain::image(T);
      AnalyticFunction a = AnalyticFunction::polynomial({cplx(0.3, 0.1), cplx(-0.2, 0.0)}, dom);
      LinearOde moved = transform_ode(LinearOde(2, {a}, dom), T);
      for (int i = 0; i < 12; ++i) {
        cplx z = std::polar(0.2 + 0.05 * (i % 4), 2.0 * kPi * i / 12.0);
        cplx tp = T.derivative(z);
        cplx closed = a.value(T.eval(z)) * tp * tp + 0.5 * T.schwarzian(z);
        double err = std::abs(moved.coeff(0).value(z) - closed) /
                     std::max(1e-12, std::abs(closed));
        double sw = label == "cayley" ? std::abs(T.schwarzian(z)) : -1.0;
        worst = std::max(worst, err);
        csv << label << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << ','
            << format_double(err) << ',' << format_double(sw) << "\n";
      }
    }
    OutputDir dir(out, true);
    dir.write_text("check.csv", csv.str());
    dir.write_json("run.json", plan);
    std::cout << "schwarz2: worst reduction deviation " << format_short(worst) << "\n";
    return 0;
  }
  if (name == "kim-roundtrip") {
    if (dry_run) {
      std::cout << plan.dump(2) << "\n";
      return 0;
    }
    Domain disc = Domain::disc();
    LinearOde ode(3,
                  {AnalyticFunction::polynomial({cplx(0.2, 0.1), cplx(0.3, 0.0)}, disc),
                   AnalyticFunction::polynomial({cplx(-0.1, 0.0), 0.0, cplx(0.2, 0.0)}, disc)},
                  disc);
    std::vector<SolutionEvaluator> basis;
    for (int i = 0; i < 3; ++i) {
      std::vector<cplx> init(3, 0.0);
      init[static_cast<size_t>(i)] = 1.0;
      basis.push_back(taylor_solve(ode, 0.0, init));
    }
    std::ostringstream csv;
    csv << "z_re,z_im,rel0,rel1\n";
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      cplx z = std::polar(0.25 + 0.02 * i, 2.0 * kPi * i / 20.0 + 0.37);
      std::vector<cplx> rec = recover_coefficients(basis, z);
      csv << format_double(z.real()) << ',' << format_double(z.imag());
      for (int j = 0; j < 2; ++j) {
        cplx want = ode.coeff(j).value(z);
        double rel = std::abs(rec[static_cast<size_t>(j)] - want) /
                     std::max(1e-12, std::abs(want));
        worst = std::max(worst, rel);
        csv << ',' << format_double(rel);
      }
      csv << "\n";
    }
    OutputDir dir(out, true);
    dir.write_text("errors.csv", csv.str());
    dir.write_json("run.json", plan);
    std::cout << "kim-roundtrip: worst relative deviation " << format_short(worst) << "\n";
    return 0;
  }
  throw ValidationFailure("name: unknown preset '" + name +
                          "' (expected petal51, expsum52, schwarz2 or kim-roundtrip)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conformal transformation and oscillation toolkit for linear ODEs in the disc"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override its values");

  // bell
  auto* bell = app.add_subcommand("bell", "evaluate a partial exponential Bell polynomial");
  int bell_i = 0, bell_n = 0;
  std::string bell_args, bell_out;
  bool bell_dry = false;
  auto* bell_i_opt = bell->add_option("--i", bell_i, "upper index");
  auto* bell_n_opt = bell->add_option("--n", bell_n, "lower index");
  auto* bell_args_opt = bell->add_option("--args", bell_args, "comma-separated values (a or a+bi)");
  auto* bell_out_opt = bell->add_option("--out", bell_out, "output directory (optional)");
  bell->add_flag("--dry-run", bell_dry, "validate and print the plan only");

  // transform
  auto* transform = app.add_subcommand("transform", "pull an equation back to the disc");
  std::string tr_map, tr_ode, tr_points, tr_out;
  bool tr_dry = false;
  auto* tr_map_opt = transform->add_option("--map", tr_map, "map spec (inline JSON or file)");
  auto* tr_ode_opt = transform->add_option("--ode", tr_ode, "equation spec (inline JSON or file)");
  auto* tr_points_opt = transform->add_option("--points", tr_points, "evaluation points (JSON array or file)");
  auto* tr_out_opt = transform->add_option("--out", tr_out, "output directory");
  transform->add_flag("--dry-run", tr_dry, "validate and print the plan only");

  // recover
  auto* recover = app.add_subcommand("recover", "recover coefficients from a solved base");
  std::string rc_ode, rc_ics, rc_points, rc_out;
  bool rc_dry = false;
  auto* rc_ode_opt = recover->add_option("--ode", rc_ode, "equation spec (inline JSON or file)");
  auto* rc_ics_opt = recover->add_option("--ics", rc_ics, "initial data; default identity basis at 0");
  auto* rc_points_opt = recover->add_option("--points", rc_points, "evaluation points");
  auto* rc_out_opt = recover->add_option("--out", rc_out, "output directory");
  recover->add_flag("--dry-run", rc_dry, "validate and print the plan only");

  // basis
  auto* basis = app.add_subcommand("basis", "power-product base of a second-order equation");
  std::string bs_a, bs_out;
  int bs_k = 3;
  bool bs_dry = false;
  auto* bs_a_opt = basis->add_option("--a", bs_a, "coefficient descriptor (inline JSON or file)");
  auto* bs_k_opt = basis->add_option("--k", bs_k, "target order (2..8)");
  auto* bs_out_opt = basis->add_option("--out", bs_out, "output directory");
  basis->add_flag("--dry-run", bs_dry, "validate and print the plan only");

  // oscillate
  auto* oscillate = app.add_subcommand("oscillate", "zero counting and growth report");
  std::string os_map, os_ode, os_ics, os_rgrid, os_out;
  double os_b = 0.5;
  bool os_dry = false;
  auto* os_map_opt = oscillate->add_option("--map", os_map, "map spec");
  auto* os_ode_opt = oscillate->add_option("--ode", os_ode, "equation spec on the image");
  auto* os_ics_opt = oscillate->add_option("--ics", os_ics, "initial data for the base");
  auto* os_rgrid_opt = oscillate->add_option("--rgrid", os_rgrid, "'rmin:rmax:count' or 'log:...'");
  auto* os_b_opt = oscillate->add_option("--shrink-b", os_b, "shrink parameter in (0,1)");
  auto* os_out_opt = oscillate->add_option("--out", os_out, "output directory");
  oscillate->add_flag("--dry-run", os_dry, "validate and print the plan only");

  // example
  auto* example = app.add_subcommand("example", "run a named preset");
  std::string ex_name, ex_out;
  double ex_alpha = 1.5, ex_rmax = 0.99;
  bool ex_dry = false;
  auto* ex_name_opt = example->add_option("--name", ex_name, "petal51 | expsum52 | schwarz2 | kim-roundtrip");
  auto* ex_alpha_opt = example->add_option("--alpha", ex_alpha, "growth parameter");
  auto* ex_rmax_opt = example->add_option("--rmax", ex_rmax, "largest report radius");
  auto* ex_out_opt = example->add_option("--out", ex_out, "output directory");
  example->add_flag("--dry-run", ex_dry, "validate and print the plan only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    ordered_json config;
    if (!config_path.empty()) config = json_argument(config_path, "config");

    if (bell->parsed()) {
      Resolver r(config, "bell");
      return run_bell(r.pick(bell_i_opt, bell_i, "i", 0), r.pick(bell_n_opt, bell_n, "n", 0),
                      r.pick(bell_args_opt, bell_args, "args", std::string()),
                      r.pick(bell_out_opt, bell_out, "out", std::string()), bell_dry);
    }
    if (transform->parsed()) {
      Resolver r(config, "transform");
      return run_transform(r.pick(tr_map_opt, tr_map, "map", std::string()),
                           r.pick(tr_ode_opt, tr_ode, "ode", std::string()),
                           r.pick(tr_points_opt, tr_points, "points", std::string()),
                           r.pick(tr_out_opt, tr_out, "out", std::string()), tr_dry);
    }
    if (recover->parsed()) {
      Resolver r(config, "recover");
      return run_recover(r.pick(rc_ode_opt, rc_ode, "ode", std::string()),
                         r.pick(rc_ics_opt, rc_ics, "ics", std::string()),
                         r.pick(rc_points_opt, rc_points, "points", std::string()),
                         r.pick(rc_out_opt, rc_out, "out", std::string()), rc_dry);
    }
    if (basis->parsed()) {
      Resolver r(config, "basis");
      return run_basis(r.pick(bs_a_opt, bs_a, "a", std::string()),
                       r.pick(bs_k_opt, bs_k, "k", 3),
                       r.pick(bs_out_opt, bs_out, "out", std::string()), bs_dry);
    }
    if (oscillate->parsed()) {
      Resolver r(config, "oscillate");
      return run_oscillate(r.pick(os_map_opt, os_map, "map", std::string()),
                           r.pick(os_ode_opt, os_ode, "ode", std::string()),
                           r.pick(os_ics_opt, os_ics, "ics", std::string()),
                           r.pick(os_rgrid_opt, os_rgrid, "rgrid", std::string()),
                           r.pick(os_b_opt, os_b, "shrink-b", 0.5),
                           r.pick(os_out_opt, os_out, "out", std::string()), os_dry);
    }
    if (example->parsed()) {
      Resolver r(config, "example");
      return run_example(r.pick(ex_name_opt, ex_name, "name", std::string()),
                         r.pick(ex_alpha_opt, ex_alpha, "alpha", 1.5),
                         r.pick(ex_rmax_opt, ex_rmax, "rmax", 0.99),
                         r.pick(ex_out_opt, ex_out, "out", std::string()), ex_dry);
    }
  } catch (const ValidationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
