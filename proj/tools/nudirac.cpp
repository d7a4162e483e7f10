// nudirac: spectrum tables, wavefunction samples, verification and figure data for
// the Dirac equation with the generalized Woods-Saxon family.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nudirac/app.hpp"

namespace {

using nudirac::app::Command;
using nudirac::app::RunConfig;

struct Flags {
  std::string config, variant, n, branch, out, format, sweep, out_dir;
  double V0 = 0, q = 0, alpha = 0, a = 0, m = 0, R0 = 0, tol = 0;
  double tol_quant = 0, tol_ode = 0, tol_coupling = 0, tol_norm = 0, tol_shoot = 0;
  int figure = 0, samples = 0;
  std::vector<double> figure_q;
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& help, Flags& f) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("--config", f.config, "json RunConfig file (flags override its values)");
  sub->add_option("--variant", f.variant,
                  "real-ws | shifted-ws | shifted-hulthen | exponential | pt-trig | non-pt-complex | pseudo-hermitian");
  sub->add_option("--V0", f.V0, "coupling constant (real parameter before the variant map)");
  sub->add_option("--q", f.q, "shape parameter");
  auto* al = sub->add_option("--alpha", f.alpha, "range parameter");
  auto* a = sub->add_option("--a", f.a, "diffuseness 1/alpha");
  al->excludes(a);
  sub->add_option("--m", f.m, "mass");
  sub->add_option("--R0", f.R0, "radius parameter");
  sub->add_option("--n", f.n, "level range a..b or a single n");
  sub->add_option("--branch", f.branch, "+, - or both");
  sub->add_option("--out", f.out, "output file (default stdout)");
  sub->add_option("--format", f.format, "csv or json");
  sub->add_option("--sweep", f.sweep, "parameter:start:stop:count");
  sub->add_option("--tol", f.tol, "override every tolerance");
  sub->add_option("--tol-quantization", f.tol_quant);
  sub->add_option("--tol-ode", f.tol_ode);
  sub->add_option("--tol-coupling", f.tol_coupling);
  sub->add_option("--tol-normalization", f.tol_norm);
  sub->add_option("--tol-shooting", f.tol_shoot);
  sub->add_option("--figure", f.figure, "figure id 1-4");
  sub->add_option("--figure-q", f.figure_q, "shape parameters of the figure curves");
  sub->add_option("--samples", f.samples, "wavefunction sample count");
  sub->add_option("--out-dir", f.out_dir, "directory for figure files");
  return sub;
}

nudirac::app::SweepAxis parse_sweep(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 4) throw nudirac::app::ConfigError("--sweep expects parameter:start:stop:count");
  try {
    return {parts[0], std::stod(parts[1]), std::stod(parts[2]), std::stoi(parts[3])};
  } catch (const std::logic_error&) {
    throw nudirac::app::ConfigError("--sweep expects parameter:start:stop:count");
  }
}

RunConfig build_config(const CLI::App& sub, const Flags& f) {
  const auto given = [&](const char* name) { return sub.get_option(name)->count() > 0; };
  RunConfig c = given("--config") ? nudirac::app::load_config(f.config) : RunConfig{};
  if (given("--variant")) c.variant = f.variant;
  if (given("--V0")) c.V0 = f.V0;
  if (given("--q")) c.q = f.q;
  if (given("--alpha")) c.alpha = f.alpha, c.a.reset();
  if (given("--a")) c.a = f.a, c.alpha.reset();
  if (given("--m")) c.m = f.m;
  if (given("--R0")) c.R0 = f.R0;
  if (given("--n")) std::tie(c.n_lo, c.n_hi) = nudirac::app::parse_n_range(f.n);
  if (given("--branch")) c.branch = nudirac::app::parse_branch(f.branch);
  if (given("--out")) c.out = f.out;
  if (given("--format")) c.format = f.format;
  if (given("--sweep")) c.sweep = parse_sweep(f.sweep);
  if (given("--tol")) c.tolerances.all = f.tol;
  if (given("--tol-quantization")) c.tolerances.named["quantization"] = f.tol_quant;
  if (given("--tol-ode")) c.tolerances.named["ode"] = f.tol_ode;
  if (given("--tol-coupling")) c.tolerances.named["coupling"] = f.tol_coupling;
  if (given("--tol-normalization")) c.tolerances.named["normalization"] = f.tol_norm;
  if (given("--tol-shooting")) c.tolerances.named["shooting"] = f.tol_shoot;
  if (given("--figure")) c.figure = f.figure;
  if (given("--figure-q")) c.figure_q = f.figure_q;
  if (given("--samples")) c.samples = f.samples;
  if (given("--out-dir")) c.out_dir = f.out_dir;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-form Dirac spectra and wavefunctions for the generalized Woods-Saxon family"};
  app.require_subcommand(1);
  Flags f;
  CLI::App* spectrum = add_command(app, "spectrum", "energy table over an n range", f);
  CLI::App* figure = add_command(app, "figure", "curve files for figures 1-4", f);
  CLI::App* verify = add_command(app, "verify", "numerical cross-checks; exit 1 on any failure", f);
  CLI::App* wave = add_command(app, "wavefunction", "spinor samples for one level", f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : nudirac::app::kConfigError;
  }

  const std::pair<CLI::App*, Command> table[] = {{spectrum, Command::Spectrum},
                                                 {figure, Command::Figure},
                                                 {verify, Command::Verify},
                                                 {wave, Command::Wavefunction}};
  for (const auto& [sub, cmd] : table) {
    if (!sub->parsed()) continue;
    RunConfig c;
    try {
      c = build_config(*sub, f);
    } catch (const nudirac::app::ConfigError& e) {
      RunConfig shown;
      if (f.format == "json") shown.format = "json";
      return nudirac::app::detail::report_error(shown, "config", e.what(), nudirac::app::kConfigError, std::cout,
                                                std::cerr);
    }
    return nudirac::app::run(cmd, c, std::cout, std::cerr);
  }
  return nudirac::app::kConfigError;
}
