#pragma once

// Run configuration and the four front-end commands (spectrum, figure, verify,
// wavefunction). Each command builds an in-memory table first; serialization to
// CSV/JSON is separate so tests can round-trip it.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "nudirac/oracle.hpp"
#include "nudirac/potential.hpp"
#include "nudirac/spectrum.hpp"
#include "nudirac/wavefun.hpp"

namespace nudirac::app {

using json = nlohmann::json;

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kConfigError = 2, kDomainError = 3 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Configuration.

struct SweepAxis {
  std::string parameter;  // V0, q, alpha, a, m
  double start = 0.0, stop = 0.0;
  int count = 0;

  double value(int j) const {
    return count == 1 ? start : start + (stop - start) * static_cast<double>(j) / static_cast<double>(count - 1);
  }
};

struct ToleranceOverrides {
  std::optional<double> all;
  std::map<std::string, double> named;  // quantization, ode, coupling, normalization, shooting, symmetry, closed_form

  Tolerances apply(Tolerances t) const {
    if (all) t = Tolerances::uniform(*all);
    for (const auto& [k, v] : named) {
      if (k == "quantization") t.quantization = v;
      else if (k == "ode") t.ode = v;
      else if (k == "coupling") t.coupling = v;
      else if (k == "normalization") t.normalization = v;
      else if (k == "shooting") t.shooting = v;
      else if (k == "symmetry") t.symmetry = v;
      else if (k == "closed_form") t.closed_form = v;
      else throw ConfigError("unknown tolerance name: " + k);
    }
    return t;
  }
};

struct RunConfig {
  std::optional<std::string> variant;  // CLI name; verify runs the default suite when absent
  std::optional<double> V0, q, alpha, a;
  double m = 1.0;
  double R0 = 0.0;
  int n_lo = 0, n_hi = 0;
  int branch = 0;  // 0 = both
  std::optional<std::string> out;
  std::string format = "csv";
  std::optional<SweepAxis> sweep;
  ToleranceOverrides tolerances;
  int figure = 0;
  std::vector<double> figure_q;
  int samples = 201;
  std::string out_dir = ".";

  void validate() const {
    if (alpha && a) throw ConfigError("give exactly one of alpha and a");
    if (alpha && *alpha == 0.0) throw ConfigError("alpha must be nonzero");
    if (a && *a == 0.0) throw ConfigError("a must be nonzero");
    if (!(m > 0.0)) throw ConfigError("m must be positive");
    if (R0 < 0.0) throw ConfigError("R0 must be nonnegative");
    if (n_lo < 0 || n_hi < 0) throw ConfigError("n must be nonnegative");
    if (branch != 0 && branch != 1 && branch != -1) throw ConfigError("branch must be +1, -1 or both");
    if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
    if (variant && !parse_variant(*variant)) throw ConfigError("unknown variant: " + *variant);
    if (sweep) {
      static const std::vector<std::string> names{"V0", "q", "alpha", "a", "m"};
      if (std::find(names.begin(), names.end(), sweep->parameter) == names.end())
        throw ConfigError("unknown sweep parameter: " + sweep->parameter);
      if (sweep->count < 2) throw ConfigError("sweep count must be at least 2");
    }
    if (samples < 2) throw ConfigError("samples must be at least 2");
    for (const auto& [k, v] : tolerances.named)
      if (!(v >= 0.0)) throw ConfigError("tolerance " + k + " must be nonnegative");
    (void)tolerances.apply({});
  }

  double alpha_value() const { return alpha ? *alpha : (a ? 1.0 / *a : 1.0); }
};

/// "a..b" or "a".
inline std::pair<int, int> parse_n_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int n = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {n, n};
    }
    const std::string lo = s.substr(0, dots), hi = s.substr(dots + 2);
    const int a = std::stoi(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(s);
    const int b = std::stoi(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(s);
    return {a, b};
  } catch (const std::logic_error&) {
    throw ConfigError("bad n range: '" + s + "' (expected a..b or a)");
  }
}

inline int parse_branch(const std::string& s) {
  if (s == "both" || s == "0") return 0;
  if (s == "+" || s == "+1" || s == "1" || s == "plus") return 1;
  if (s == "-" || s == "-1" || s == "minus") return -1;
  throw ConfigError("bad branch: '" + s + "' (expected +, - or both)");
}

inline RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a json object");
  RunConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "variant") c.variant = v.get<std::string>();
      else if (key == "V0") c.V0 = v.get<double>();
      else if (key == "q") c.q = v.get<double>();
      else if (key == "alpha") c.alpha = v.get<double>();
      else if (key == "a") c.a = v.get<double>();
      else if (key == "m") c.m = v.get<double>();
      else if (key == "R0") c.R0 = v.get<double>();
      else if (key == "n") {
        if (v.is_number_integer()) c.n_lo = c.n_hi = v.get<int>();
        else if (v.is_array() && v.size() == 2) c.n_lo = v[0].get<int>(), c.n_hi = v[1].get<int>();
        else std::tie(c.n_lo, c.n_hi) = parse_n_range(v.get<std::string>());
      } else if (key == "branch") {
        c.branch = v.is_number_integer() ? v.get<int>() : parse_branch(v.get<std::string>());
      } else if (key == "out") c.out = v.get<std::string>();
      else if (key == "format") c.format = v.get<std::string>();
      else if (key == "sweep") {
        SweepAxis ax;
        ax.parameter = v.at("parameter").get<std::string>();
        ax.start = v.at("start").get<double>();
        ax.stop = v.at("stop").get<double>();
        ax.count = v.at("count").get<int>();
        c.sweep = ax;
      } else if (key == "tolerances") {
        if (v.is_number()) c.tolerances.all = v.get<double>();
        else
          for (const auto& [tk, tv] : v.items()) {
            if (tk == "all") c.tolerances.all = tv.get<double>();
            else c.tolerances.named[tk] = tv.get<double>();
          }
      } else if (key == "figure") c.figure = v.get<int>();
      else if (key == "figure_q") c.figure_q = v.get<std::vector<double>>();
      else if (key == "samples") c.samples = v.get<int>();
      else if (key == "out_dir") c.out_dir = v.get<std::string>();
      else throw ConfigError("unknown config key: " + key);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return config_from_json(j);
}

inline RunConfig with_parameter(RunConfig c, const std::string& name, double v) {
  if (name == "V0") c.V0 = v;
  else if (name == "q") c.q = v;
  else if (name == "alpha") c.alpha = v, c.a.reset();
  else if (name == "a") c.a = v, c.alpha.reset();
  else if (name == "m") c.m = v;
  else throw ConfigError("unknown parameter: " + name);
  return c;
}

/// The potential described by the config. Parameters are the real ones; complex
/// variants are obtained by applying their parameter map.
inline PotentialSpec build_spec(const RunConfig& c) {
  const Variant v = c.variant ? *parse_variant(*c.variant) : Variant::RealWS;
  const double V0 = c.V0.value_or(1.0), al = c.alpha_value();
  try {
    switch (v) {
      case Variant::Exponential:
        if (c.q && *c.q != 0.0) throw ConfigError("exponential variant has q = 0");
        return PotentialSpec::exponential(V0, al, c.m);
      case Variant::ShiftedWS:
        if (c.q && *c.q != 1.0) throw ConfigError("shifted-ws has q = 1");
        return PotentialSpec::shifted_ws(V0, al, c.m);
      case Variant::ShiftedHulthen:
        if (c.q && *c.q != -1.0) throw ConfigError("shifted-hulthen has q = -1");
        return PotentialSpec::shifted_hulthen(V0, al, c.m);
      default: {
        const PotentialSpec base = PotentialSpec::real_ws(V0, c.q.value_or(1.0), al, c.m, c.R0);
        return complexify(base, v);
      }
    }
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

// ---------------------------------------------------------------------------
// Formatting and concurrency helpers.

/// 17 significant digits; nan/inf spelled out; -0 printed as 0.
inline std::string fmt_num(double x) {
  if (std::isnan(x)) return "nan";
  if (x == 0.0) return "0";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline json cplx_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline double json_double(const json& j) { return j.is_null() ? std::nan("") : j.get<double>(); }

inline cplx json_cplx(const json& j) { return {json_double(j.at("re")), json_double(j.at("im"))}; }

/// Worker count: NU_DIRAC_THREADS if set (>= 1), else the hardware concurrency.
inline unsigned thread_budget() {
  if (const char* env = std::getenv("NU_DIRAC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw ConfigError("NU_DIRAC_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// out[i] = f(i) evaluated on up to thread_budget() workers; results land by index.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, F f) {
  std::vector<T> out(count);
  std::vector<std::exception_ptr> errs(count);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(thread_budget(), count);
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < workers; ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumRow {
  double sweep_value = 0.0;
  int n = 0;
  int branch = 1;
  cplx E, eps, b;
  bool real_spectrum = false;
  bool normalizable = false;
  bool in_window = false;

  bool operator==(const SpectrumRow&) const = default;
};

struct WindowReport {
  double sweep_value = 0.0;
  LevelWindow window;
};

struct SpectrumTable {
  std::optional<std::string> sweep_parameter;
  std::vector<SpectrumRow> rows;
  std::vector<WindowReport> windows;
};

inline json window_json(const WindowReport& w, bool with_sweep) {
  json j;
  if (with_sweep) j["sweep_value"] = w.sweep_value;
  const LevelWindow& lw = w.window;
  j["n_min"] = lw.n_min ? json(*lw.n_min) : json(nullptr);
  j["n_max"] = lw.n_max ? json(*lw.n_max) : json(nullptr);
  j["source"] = std::string(window_source_name(lw.source));
  j["complex_window"] = lw.complex_window;
  j["at_least_one"] = lw.at_least_one;
  j["printed_bounds"] = lw.printed_bounds ? json::array({lw.printed_bounds->first, lw.printed_bounds->second}) : json(nullptr);
  j["printed_levels"] = lw.printed_levels ? json::array({lw.printed_levels->first, lw.printed_levels->second}) : json(nullptr);
  return j;
}

inline std::vector<SpectrumRow> spectrum_rows(const RunConfig& c, double sweep_value, WindowReport& wr) {
  const PotentialSpec spec = build_spec(c);
  wr.sweep_value = sweep_value;
  wr.window = admissible_levels(spec);
  std::vector<SpectrumRow> rows;
  if (wr.window.empty()) return rows;
  for (int n = c.n_lo; n <= c.n_hi; ++n) {
    for (int br : {+1, -1}) {
      if (c.branch != 0 && br != c.branch) continue;
      const EnergyLevel L = dirac_energy(spec, n, br);
      rows.push_back({sweep_value, n, br, L.E, L.epsilon, L.b, L.real_spectrum, L.normalizable, wr.window.contains(n)});
    }
  }
  return rows;
}

/// Rows ordered by (sweep point, n, branch +/-). An empty level window yields no rows
/// for that point; the window itself is always reported.
inline SpectrumTable cmd_spectrum(const RunConfig& c) {
  c.validate();
  SpectrumTable t;
  if (!c.sweep) {
    t.windows.resize(1);
    t.rows = spectrum_rows(c, 0.0, t.windows[0]);
    return t;
  }
  t.sweep_parameter = c.sweep->parameter;
  struct Point {
    std::vector<SpectrumRow> rows;
    WindowReport window;
  };
  const auto pts = parallel_map<Point>(c.sweep->count, [&](std::size_t j) {
    const double v = c.sweep->value(static_cast<int>(j));
    Point p;
    p.rows = spectrum_rows(with_parameter(c, c.sweep->parameter, v), v, p.window);
    return p;
  });
  for (const auto& p : pts) {
    t.rows.insert(t.rows.end(), p.rows.begin(), p.rows.end());
    t.windows.push_back(p.window);
  }
  return t;
}

inline std::string spectrum_csv(const SpectrumTable& t) {
  std::string s;
  if (t.sweep_parameter) s += "sweep_value,";
  s += "n,branch,re_E,im_E,re_eps,im_eps,re_b,im_b,real_spectrum,normalizable,in_window\n";
  for (const auto& r : t.rows) {
    if (t.sweep_parameter) s += fmt_num(r.sweep_value) + ",";
    s += std::to_string(r.n) + "," + std::to_string(r.branch) + "," + fmt_num(r.E.real()) + "," + fmt_num(r.E.imag()) +
         "," + fmt_num(r.eps.real()) + "," + fmt_num(r.eps.imag()) + "," + fmt_num(r.b.real()) + "," +
         fmt_num(r.b.imag()) + "," + (r.real_spectrum ? "1" : "0") + "," + (r.normalizable ? "1" : "0") + "," +
         (r.in_window ? "1" : "0") + "\n";
  }
  return s;
}

inline json spectrum_json(const SpectrumTable& t) {
  json j;
  j["sweep_parameter"] = t.sweep_parameter ? json(*t.sweep_parameter) : json(nullptr);
  json rows = json::array();
  for (const auto& r : t.rows) {
    json o{{"n", r.n},
           {"branch", r.branch},
           {"E", cplx_json(r.E)},
           {"eps", cplx_json(r.eps)},
           {"b", cplx_json(r.b)},
           {"real_spectrum", r.real_spectrum},
           {"normalizable", r.normalizable},
           {"in_window", r.in_window}};
    if (t.sweep_parameter) o["sweep_value"] = r.sweep_value;
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  json wins = json::array();
  for (const auto& w : t.windows) wins.push_back(window_json(w, t.sweep_parameter.has_value()));
  j["windows"] = std::move(wins);
  return j;
}

/// Rows back from spectrum_json (windows are not reconstructed).
inline std::vector<SpectrumRow> spectrum_rows_from_json(const json& j) {
  std::vector<SpectrumRow> rows;
  for (const auto& o : j.at("rows")) {
    SpectrumRow r;
    r.sweep_value = o.contains("sweep_value") ? json_double(o["sweep_value"]) : 0.0;
    r.n = o.at("n").get<int>();
    r.branch = o.at("branch").get<int>();
    r.E = json_cplx(o.at("E"));
    r.eps = json_cplx(o.at("eps"));
    r.b = json_cplx(o.at("b"));
    r.real_spectrum = o.at("real_spectrum").get<bool>();
    r.normalizable = o.at("normalizable").get<bool>();
    r.in_window = o.at("in_window").get<bool>();
    rows.push_back(r);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// figure

struct FigurePoint {
  double sweep_value = 0.0;
  cplx E_plus{std::nan(""), std::nan("")}, E_minus{std::nan(""), std::nan("")};
  bool admissible = false;
};

struct FigureCurve {
  double q = 0.0;
  int n = 0;
  std::vector<FigurePoint> points;
  std::string filename;
};

struct FigureData {
  int figure = 0;
  std::string axis;  // V0 or alpha
  double m = 1.0, a = 1.0, V0 = 0.0;
  SweepAxis sweep;
  std::vector<FigureCurve> curves;
  json metadata;
};

struct FigureLayout {
  std::string axis;
  std::vector<double> q;
  std::vector<int> n;
  SweepAxis sweep;
};

/// Figures 1-2: n = 0 vs V0 in [-6m, 6m] (200 points) with a = 1/m, q in {0.5, 1, 2} or
/// {-0.5, -1, -2}. Figures 3-4: n = 0..2 vs alpha in (0, 3m] (150 points) at V0 = 2.5m,
/// q = -1 (figure 3) or q = +1 (figure 4). All on the trigonometric PT variant.
inline FigureLayout figure_layout(int id, double m) {
  switch (id) {
    case 1: return {"V0", {0.5, 1.0, 2.0}, {0}, {"V0", -6.0 * m, 6.0 * m, 200}};
    case 2: return {"V0", {-0.5, -1.0, -2.0}, {0}, {"V0", -6.0 * m, 6.0 * m, 200}};
    case 3: return {"alpha", {-1.0}, {0, 1, 2}, {"alpha", 3.0 * m / 150.0, 3.0 * m, 150}};
    case 4: return {"alpha", {1.0}, {0, 1, 2}, {"alpha", 3.0 * m / 150.0, 3.0 * m, 150}};
    default: throw ConfigError("figure id must be 1, 2, 3 or 4");
  }
}

inline std::string figure_filename(int id, double q, int n) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "figure%d_q%g_n%d.csv", id, q, n);
  return buf;
}

inline FigurePoint figure_point(const PotentialSpec& spec, int n, double sweep_value) {
  FigurePoint p;
  p.sweep_value = sweep_value;
  try {
    p.E_plus = dirac_energy(spec, n, +1).E;
    p.E_minus = dirac_energy(spec, n, -1).E;
    p.admissible = admissible_levels(spec).contains(n);
  } catch (const Error&) {
    p.admissible = false;
  }
  return p;
}

inline FigureData cmd_figure(const RunConfig& c) {
  c.validate();
  FigureLayout lay = figure_layout(c.figure, c.m);
  if (!c.figure_q.empty()) lay.q = c.figure_q;
  if (c.sweep) {
    if (c.sweep->parameter != lay.axis)
      throw ConfigError("figure " + std::to_string(c.figure) + " sweeps " + lay.axis + ", not " + c.sweep->parameter);
    lay.sweep = *c.sweep;
  }
  FigureData d;
  d.figure = c.figure;
  d.axis = lay.axis;
  d.m = c.m;
  d.sweep = lay.sweep;
  d.a = c.a ? *c.a : (c.alpha ? 1.0 / *c.alpha : 1.0 / c.m);
  d.V0 = c.V0.value_or(2.5 * c.m);
  for (double q : lay.q)
    for (int n : lay.n) d.curves.push_back({q, n, {}, figure_filename(c.figure, q, n)});

  const std::size_t per = static_cast<std::size_t>(lay.sweep.count);
  const auto pts = parallel_map<FigurePoint>(d.curves.size() * per, [&](std::size_t i) {
    const FigureCurve& cv = d.curves[i / per];
    const double v = lay.sweep.value(static_cast<int>(i % per));
    const double V0 = lay.axis == "V0" ? v : d.V0;
    const double alpha = lay.axis == "alpha" ? v : 1.0 / d.a;
    try {
      return figure_point(complexify(PotentialSpec::real_ws(V0, cv.q, alpha, c.m), Variant::PTTrig), cv.n, v);
    } catch (const DomainError&) {
      return FigurePoint{v};
    }
  });
  for (std::size_t k = 0; k < d.curves.size(); ++k)
    d.curves[k].points.assign(pts.begin() + static_cast<long>(k * per), pts.begin() + static_cast<long>((k + 1) * per));

  json files = json::array(), qs = json::array(), ns = json::array();
  for (const auto& cv : d.curves) files.push_back(cv.filename);
  for (double q : lay.q) qs.push_back(q);
  for (int n : lay.n) ns.push_back(n);
  d.metadata = {{"figure", d.figure},
                {"variant", "pt-trig"},
                {"axis", d.axis},
                {"m", d.m},
                {"q", qs},
                {"n", ns},
                {"sweep", {{"parameter", lay.sweep.parameter}, {"start", lay.sweep.start}, {"stop", lay.sweep.stop},
                           {"count", lay.sweep.count}}},
                {"files", files}};
  if (d.axis == "V0") d.metadata["a"] = d.a;
  else d.metadata["V0"] = d.V0;
  return d;
}

inline std::string figure_curve_csv(const FigureCurve& cv) {
  std::string s = "sweep_value,ReE_plus,ImE_plus,ReE_minus,ImE_minus,admissible\n";
  for (const auto& p : cv.points)
    s += fmt_num(p.sweep_value) + "," + fmt_num(p.E_plus.real()) + "," + fmt_num(p.E_plus.imag()) + "," +
         fmt_num(p.E_minus.real()) + "," + fmt_num(p.E_minus.imag()) + "," + (p.admissible ? "1" : "0") + "\n";
  return s;
}

inline json figure_curve_json(const FigureCurve& cv) {
  json pts = json::array();
  for (const auto& p : cv.points)
    pts.push_back({{"sweep_value", p.sweep_value},
                   {"E_plus", cplx_json(p.E_plus)},
                   {"E_minus", cplx_json(p.E_minus)},
                   {"admissible", p.admissible}});
  return {{"q", cv.q}, {"n", cv.n}, {"points", pts}};
}

// ---------------------------------------------------------------------------
// verify

namespace detail {

inline void add_closed_form_checks(const Tolerances& tol, VerificationReport& rep) {
  // Zero coupling: E0 = +-sqrt(3)/2, E1 = 0, no level for n >= 2.
  const PotentialSpec free_spec = PotentialSpec::real_ws(0.0, 1.0, 1.0, 1.0);
  const double h3 = std::sqrt(3.0) / 2.0;
  rep.add("zero_coupling_E0", 0, 1, std::abs(dirac_energy(free_spec, 0, 1).E - h3), tol.closed_form);
  rep.add("zero_coupling_E0", 0, -1, std::abs(dirac_energy(free_spec, 0, -1).E + h3), tol.closed_form);
  rep.add("zero_coupling_E1", 1, 1, std::abs(dirac_energy(free_spec, 1, 1).E), tol.closed_form);
  rep.add("zero_coupling_window", -1, 0, admissible_levels(free_spec).n_max == 1 ? 0.0 : 1.0, 0.0,
          "window {0, 1}");

  // Special-case formulas against the general spectrum.
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  double worst_ws = 0.0, worst_hu = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double V0 = u(rng), al = u(rng);
    const PotentialSpec ws = PotentialSpec::shifted_ws(V0, al, 1.0), hu = PotentialSpec::shifted_hulthen(V0, al, 1.0);
    for (int n = 0; n <= 5; ++n)
      for (int br : {1, -1}) {
        worst_ws = std::max(worst_ws, scaled_error(shifted_ws_energy(ws, n, br).E, dirac_energy(ws, n, br).E));
        worst_hu = std::max(worst_hu, scaled_error(shifted_hulthen_energy(hu, n, br).E, dirac_energy(hu, n, br).E));
      }
  }
  rep.add("reduction_q_plus_1", -1, 0, worst_ws, tol.closed_form);
  rep.add("reduction_q_minus_1", -1, 0, worst_hu, tol.closed_form);

  // Schrodinger trigonometric PT spectrum by shooting (gamma = 2).
  const PotentialSpec pt2 = complexify(PotentialSpec::real_ws(2.0, 1.0, 1.0, 1.0), Variant::PTTrig);
  for (int n : {0, 1}) {
    const SchrodingerLevel L = schrodinger_pt_energy(pt2, n);
    try {
      const ShootResult r = shoot_quantize(schrodinger_form_factory(pt2), L.E + 1e-2);
      rep.add("schrodinger_shooting", n, 0, std::abs(r.E - L.E), tol.shooting);
    } catch (const Error& e) {
      rep.fail("schrodinger_shooting", n, 0, tol.shooting, e.what());
    }
  }

  // Symmetry of the complexified potentials on 64 points.
  std::vector<double> xs(64);
  for (int k = 0; k < 64; ++k) xs[k] = -3.0 + 6.0 * k / 63.0;
  const PotentialSpec sym_base = PotentialSpec::real_ws(2.0, 1.0, 1.0, 1.0);
  rep.add("pt_symmetry", -1, 0, symmetry_check(complexify(sym_base, Variant::PTTrig), xs).max_scaled_defect,
          tol.symmetry);
  rep.add("pseudo_hermitian_symmetry", -1, 0,
          symmetry_check(complexify(sym_base, Variant::PseudoHermitian), xs).max_scaled_defect, tol.symmetry);

  // Level window of the trigonometric PT variant.
  const LevelWindow w = admissible_levels(complexify(PotentialSpec::real_ws(-5.0, 1.0, 1.0, 1.0), Variant::PTTrig));
  rep.add("pt_window", -1, 0, (w.n_min == 0 && w.n_max == 8) ? 0.0 : 1.0, 0.0, "window {0..8}");

  // Special functions.
  rep.add("gauss_2f1_unit_argument", -1, 0, std::abs(gauss_2f1(1.0, 1.0, 3.0, 1.0) - 2.0), tol.closed_form);
}

}  // namespace detail

/// Families of the default verification suite, as (spec, n_hi).
inline std::vector<std::pair<PotentialSpec, int>> default_families() {
  const PotentialSpec ws = PotentialSpec::real_ws(1.0, 1.0, 1.0, 1.0);
  const PotentialSpec deep = PotentialSpec::real_ws(-5.0, 1.0, 1.0, 1.0);
  return {{ws, 3},
          {PotentialSpec::shifted_ws(1.0, 1.0, 1.0), 3},
          {PotentialSpec::shifted_hulthen(1.0, 0.5, 1.0), 3},
          {complexify(deep, Variant::PTTrig), 3},
          {complexify(ws, Variant::NonPTComplex), 3},
          {complexify(deep, Variant::PseudoHermitian), 3},
          {PotentialSpec::exponential(1.0, 1.0, 1.0), 0}};
}

/// Without a variant: the default suite (all variants, n = 0..3, plus closed-form
/// checks). With one: the cross-check suite of that family over the configured n range.
inline VerificationReport cmd_verify(const RunConfig& c) {
  c.validate();
  const Tolerances tol = c.tolerances.apply({});
  VerificationReport rep;
  if (c.variant) {
    rep.label = *c.variant;
    rep.merge(crosscheck_suite(build_spec(c), c.n_lo, c.n_hi, tol));
    return rep;
  }
  rep.label = "default";
  const auto fams = default_families();
  const auto parts = parallel_map<VerificationReport>(fams.size() + 1, [&](std::size_t i) {
    if (i < fams.size()) return crosscheck_suite(fams[i].first, 0, fams[i].second, tol);
    VerificationReport r;
    r.label = "closed-form";
    detail::add_closed_form_checks(tol, r);
    return r;
  });
  for (const auto& p : parts) rep.merge(p);
  return rep;
}

inline json report_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"family", c.family},
                      {"name", c.name},
                      {"n", c.n},
                      {"branch", c.branch},
                      {"value", c.value},
                      {"tolerance", c.tolerance},
                      {"status", std::string(status_name(c.status))},
                      {"detail", c.detail}});
  return {{"suite", r.label},
          {"passed", r.passed()},
          {"counts",
           {{"pass", r.count(CheckStatus::Pass)},
            {"fail", r.count(CheckStatus::Fail)},
            {"skipped", r.count(CheckStatus::Skipped)}}},
          {"checks", checks}};
}

// ---------------------------------------------------------------------------
// wavefunction

struct WaveSample {
  double s = 0.0, x = 0.0;
  cplx u, w;
};

struct WaveTable {
  int n = 0, branch = 1;
  cplx E, N;
  bool normalized = false;
  std::vector<WaveSample> samples;
  std::optional<std::string> warning;
};

inline constexpr double kWaveEdge = 1e-4;

/// Samples (u, w) at s uniform in [1e-4, 1 - 1e-4]; x is the real part of x(s) when
/// x(s) is real, nan otherwise. Non-normalizable levels use N = 1 and set a warning.
inline WaveTable cmd_wavefunction(const RunConfig& c) {
  c.validate();
  const PotentialSpec spec = build_spec(c);
  WaveTable t;
  t.n = c.n_lo;
  t.branch = c.branch == 0 ? 1 : c.branch;
  const EnergyLevel L = dirac_energy(spec, t.n, t.branch);
  const SpinorState st = make_spinor_state(spec, L);
  t.E = L.E;
  t.N = st.N();
  t.normalized = st.normalized;
  if (!st.normalized) t.warning = "level is not normalizable; samples use N = 1";
  for (int j = 0; j < c.samples; ++j) {
    const double s = kWaveEdge + (1.0 - 2.0 * kWaveEdge) * static_cast<double>(j) / static_cast<double>(c.samples - 1);
    const cplx x = x_of_s(spec, s);
    WaveSample ws{s, std::abs(x.imag()) <= 1e-14 * std::max(1.0, std::abs(x)) ? x.real() : std::nan(""),
                  upper_u(st, s), lower_w(st, s)};
    t.samples.push_back(ws);
  }
  return t;
}

inline std::string wave_csv(const WaveTable& t) {
  std::string s = "s,x,re_u,im_u,re_w,im_w\n";
  for (const auto& p : t.samples)
    s += fmt_num(p.s) + "," + fmt_num(p.x) + "," + fmt_num(p.u.real()) + "," + fmt_num(p.u.imag()) + "," +
         fmt_num(p.w.real()) + "," + fmt_num(p.w.imag()) + "\n";
  return s;
}

inline json wave_json(const WaveTable& t) {
  json pts = json::array();
  for (const auto& p : t.samples) pts.push_back({{"s", p.s}, {"x", p.x}, {"u", cplx_json(p.u)}, {"w", cplx_json(p.w)}});
  return {{"n", t.n},
          {"branch", t.branch},
          {"E", cplx_json(t.E)},
          {"N", cplx_json(t.N)},
          {"normalized", t.normalized},
          {"warning", t.warning ? json(*t.warning) : json(nullptr)},
          {"samples", pts}};
}

// ---------------------------------------------------------------------------
// Dispatch.

enum class Command { Spectrum, Figure, Verify, Wavefunction };

namespace detail {

inline void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (!c.out) {
    out << text;
    return;
  }
  std::ofstream f(*c.out, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file: " + *c.out);
  f << text;
}

inline void write_file(const std::string& dir, const std::string& name, const std::string& text) {
  const std::string path = dir.empty() ? name : dir + "/" + name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  f << text;
}

inline int report_error(const RunConfig& c, std::string_view kind, const std::string& msg, int code,
                        std::ostream& out, std::ostream& err) {
  if (c.format == "json")
    out << json{{"error", {{"kind", kind}, {"message", msg}, {"exit_code", code}}}}.dump(2) << "\n";
  err << "error (" << kind << "): " << msg << "\n";
  return code;
}

}  // namespace detail

/// Runs a command; returns the process exit code.
inline int run(Command cmd, const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    c.validate();
    switch (cmd) {
      case Command::Spectrum: {
        const SpectrumTable t = cmd_spectrum(c);
        if (c.format == "json") {
          detail::emit(c, spectrum_json(t).dump(2) + "\n", out);
        } else {
          detail::emit(c, spectrum_csv(t), out);
          for (const auto& w : t.windows) err << "window " << window_json(w, t.sweep_parameter.has_value()).dump() << "\n";
        }
        return kOk;
      }
      case Command::Figure: {
        const FigureData d = cmd_figure(c);
        for (const auto& cv : d.curves) {
          if (c.format == "json")
            detail::write_file(c.out_dir, cv.filename.substr(0, cv.filename.size() - 4) + ".json",
                               figure_curve_json(cv).dump(2) + "\n");
          else
            detail::write_file(c.out_dir, cv.filename, figure_curve_csv(cv));
        }
        detail::write_file(c.out_dir, "figure" + std::to_string(d.figure) + "_metadata.json", d.metadata.dump(2) + "\n");
        return kOk;
      }
      case Command::Verify: {
        const VerificationReport r = cmd_verify(c);
        detail::emit(c, report_json(r).dump(2) + "\n", out);
        err << "verify: " << r.count(CheckStatus::Pass) << " passed, " << r.count(CheckStatus::Fail) << " failed, "
            << r.count(CheckStatus::Skipped) << " skipped\n";
        for (const auto& ch : r.checks)
          if (ch.status == CheckStatus::Fail)
            err << "FAIL " << ch.family << " " << ch.name << " n=" << ch.n << " branch=" << ch.branch
                << " value=" << fmt_num(ch.value) << " tol=" << fmt_num(ch.tolerance)
                << (ch.detail.empty() ? "" : " (" + ch.detail + ")") << "\n";
        return r.passed() ? kOk : kCheckFailed;
      }
      case Command::Wavefunction: {
        const WaveTable t = cmd_wavefunction(c);
        if (c.format == "json") detail::emit(c, wave_json(t).dump(2) + "\n", out);
        else detail::emit(c, wave_csv(t), out);
        if (t.warning) err << "warning: " << *t.warning << "\n";
        return kOk;
      }
    }
  } catch (const ConfigError& e) {
    return detail::report_error(c, "config", e.what(), kConfigError, out, err);
  } catch (const MisuseError& e) {
    return detail::report_error(c, "config", e.what(), kConfigError, out, err);
  } catch (const Error& e) {
    return detail::report_error(c, "math-domain", e.what(), kDomainError, out, err);
  }
  return kConfigError;
}

}  // namespace nudirac::app
