#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nudirac/app.hpp"

using namespace nudirac;
using namespace nudirac::app;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cmd(Command cmd, const RunConfig& c) {
  std::ostringstream out, err;
  const int code = run(cmd, c, out, err);
  return {code, out.str(), err.str()};
}

RunConfig cfg(const json& j) { return config_from_json(j); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Config, ParsesAllKeys) {
  const RunConfig c = cfg({{"variant", "pt-trig"},
                           {"V0", -5.0},
                           {"q", 1.0},
                           {"a", 2.0},
                           {"m", 1.5},
                           {"n", "0..3"},
                           {"branch", "-"},
                           {"format", "json"},
                           {"sweep", {{"parameter", "V0"}, {"start", -1.0}, {"stop", 1.0}, {"count", 5}}},
                           {"tolerances", {{"ode", 1e-6}}},
                           {"samples", 11}});
  EXPECT_EQ(*c.variant, "pt-trig");
  EXPECT_EQ(c.n_lo, 0);
  EXPECT_EQ(c.n_hi, 3);
  EXPECT_EQ(c.branch, -1);
  EXPECT_DOUBLE_EQ(c.alpha_value(), 0.5);
  EXPECT_EQ(c.sweep->count, 5);
  EXPECT_DOUBLE_EQ(c.sweep->value(4), 1.0);
  EXPECT_DOUBLE_EQ(c.tolerances.apply({}).ode, 1e-6);
  EXPECT_EQ(cfg({{"n", json::array({1, 2})}}).n_hi, 2);
  EXPECT_EQ(parse_n_range("4"), std::make_pair(4, 4));
}

TEST(Config, Errors) {
  EXPECT_THROW(cfg({{"colour", 1}}), ConfigError);
  EXPECT_THROW(cfg({{"alpha", 1.0}, {"a", 1.0}}), ConfigError);
  EXPECT_THROW(cfg({{"variant", "woods"}}), ConfigError);
  EXPECT_THROW(cfg({{"V0", "one"}}), ConfigError);
  EXPECT_THROW(cfg({{"format", "xml"}}), ConfigError);
  EXPECT_THROW(cfg({{"m", -1.0}}), ConfigError);
  EXPECT_THROW(cfg({{"tolerances", {{"bogus", 1.0}}}}), ConfigError);
  EXPECT_THROW(cfg({{"sweep", {{"parameter", "E"}, {"start", 0.0}, {"stop", 1.0}, {"count", 3}}}}), ConfigError);
  EXPECT_THROW(parse_n_range("1..x"), ConfigError);
  EXPECT_THROW(parse_branch("up"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
  EXPECT_THROW(build_spec(cfg({{"variant", "shifted-ws"}, {"q", 2.0}})), ConfigError);
}

TEST(Spectrum, JsonRoundTrip) {
  const RunConfig c = cfg({{"variant", "real-ws"}, {"V0", 1.0}, {"n", "0..2"}, {"format", "json"}});
  const SpectrumTable t = cmd_spectrum(c);
  ASSERT_EQ(t.rows.size(), 6u);
  const json j = json::parse(spectrum_json(t).dump(2));
  EXPECT_EQ(spectrum_rows_from_json(j), t.rows);
  EXPECT_EQ(t.rows[0].n, 0);
  EXPECT_EQ(t.rows[0].branch, 1);
  EXPECT_EQ(t.rows[1].branch, -1);
  EXPECT_NEAR(t.rows[0].E.real(), 0.39616565846662942, 1e-13);
}

TEST(Spectrum, SweepOrderingAndCsv) {
  RunConfig c = cfg({{"variant", "pt-trig"}, {"V0", -5.0}, {"n", "0..1"}});
  c.sweep = SweepAxis{"V0", -5.0, -3.0, 3};
  const SpectrumTable t = cmd_spectrum(c);
  ASSERT_EQ(t.rows.size(), 12u);
  EXPECT_EQ(t.windows.size(), 3u);
  for (std::size_t k = 1; k < t.rows.size(); ++k) EXPECT_LE(t.rows[k - 1].sweep_value, t.rows[k].sweep_value);
  const std::string csv = spectrum_csv(t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "sweep_value,n,branch,re_E,im_E,re_eps,im_eps,re_b,im_b,real_spectrum,normalizable,in_window");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 13);
}

TEST(Spectrum, Deterministic) {
  RunConfig c = cfg({{"variant", "non-pt-complex"}, {"n", "0..3"}});
  c.sweep = SweepAxis{"alpha", 0.5, 2.0, 16};
  EXPECT_EQ(spectrum_csv(cmd_spectrum(c)), spectrum_csv(cmd_spectrum(c)));
}

TEST(Format, Numbers) {
  EXPECT_EQ(fmt_num(-0.0), "0");
  EXPECT_EQ(fmt_num(std::nan("")), "nan");
  EXPECT_EQ(fmt_num(0.1), "0.10000000000000001");
  EXPECT_EQ(fmt_num(-2.5), "-2.5");
}

TEST(ExitCodes, ConfigAndDomainErrors) {
  // Domain: closed-form spectrum requested for q = 0.
  const Outcome dom = run_cmd(Command::Spectrum, cfg({{"variant", "exponential"}}));
  EXPECT_EQ(dom.code, kDomainError);
  EXPECT_NE(dom.err.find("math-domain"), std::string::npos);
  // Domain: singular coupling at the PT window edge.
  EXPECT_EQ(run_cmd(Command::Spectrum, cfg({{"variant", "pt-trig"}, {"V0", -5.0}, {"n", 9}})).code, kDomainError);
  // Config: figure id out of range, json error object on stdout.
  const Outcome bad = run_cmd(Command::Figure, cfg({{"figure", 7}, {"format", "json"}}));
  EXPECT_EQ(bad.code, kConfigError);
  EXPECT_EQ(json::parse(bad.out).at("error").at("exit_code"), kConfigError);
  RunConfig inconsistent;
  inconsistent.alpha = 1.0;
  inconsistent.a = 1.0;
  EXPECT_EQ(run_cmd(Command::Spectrum, inconsistent).code, kConfigError);
}

TEST(Verify, FamilyPassesAndToleranceOverrideFails) {
  const RunConfig c = cfg({{"variant", "real-ws"}, {"V0", 1.0}, {"n", "0..1"}});
  const Outcome ok = run_cmd(Command::Verify, c);
  EXPECT_EQ(ok.code, kOk) << ok.err;
  const json rep = json::parse(ok.out);
  EXPECT_TRUE(rep.at("passed").get<bool>());
  EXPECT_GT(rep.at("counts").at("pass").get<int>(), 0);

  RunConfig strict = c;
  strict.tolerances.all = 1e-30;
  const Outcome fail = run_cmd(Command::Verify, strict);
  EXPECT_EQ(fail.code, kCheckFailed);
  EXPECT_NE(fail.err.find("FAIL "), std::string::npos);
}

TEST(Wavefunction, ZeroCouplingWarning) {
  const Outcome o = run_cmd(Command::Wavefunction, cfg({{"V0", 0.0}, {"n", 0}, {"format", "json"}, {"samples", 5}}));
  ASSERT_EQ(o.code, kOk) << o.err;
  const json j = json::parse(o.out);
  EXPECT_FALSE(j.at("normalized").get<bool>());
  EXPECT_EQ(json_cplx(j.at("N")), cplx(1.0));
  EXPECT_FALSE(j.at("warning").is_null());
  EXPECT_NE(o.err.find("warning"), std::string::npos);
  EXPECT_EQ(j.at("samples").size(), 5u);
}

TEST(Wavefunction, SamplesAndComplexX) {
  const WaveTable ws = cmd_wavefunction(cfg({{"variant", "real-ws"}, {"n", 1}, {"samples", 3}}));
  ASSERT_EQ(ws.samples.size(), 3u);
  EXPECT_DOUBLE_EQ(ws.samples[0].s, kWaveEdge);
  EXPECT_NEAR(ws.samples[1].x, 0.0, 1e-14);
  const WaveTable pt = cmd_wavefunction(cfg({{"variant", "pt-trig"}, {"V0", -5.0}, {"branch", "-"}, {"samples", 3}}));
  EXPECT_TRUE(pt.normalized);
  EXPECT_TRUE(std::isnan(pt.samples[0].x));
}

TEST(Figure, FilesMetadataAndDeterminism) {
  const auto dir = std::filesystem::temp_directory_path() / "nudirac_app_figure";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir / "a");
  std::filesystem::create_directories(dir / "b");
  RunConfig c = cfg({{"figure", 3}});
  c.out_dir = (dir / "a").string();
  ASSERT_EQ(run_cmd(Command::Figure, c).code, kOk);
  c.out_dir = (dir / "b").string();
  ASSERT_EQ(run_cmd(Command::Figure, c).code, kOk);
  const json meta = json::parse(slurp(dir / "a" / "figure3_metadata.json"));
  ASSERT_EQ(meta.at("files").size(), 3u);
  for (const auto& f : meta.at("files")) {
    const std::string name = f.get<std::string>();
    const std::string text = slurp(dir / "a" / name);
    EXPECT_EQ(text, slurp(dir / "b" / name)) << name;
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 151) << name;
  }
  EXPECT_EQ(slurp(dir / "a" / "figure3_metadata.json"), slurp(dir / "b" / "figure3_metadata.json"));
  std::filesystem::remove_all(dir);
}

TEST(Figure, Layouts) {
  EXPECT_EQ(figure_layout(1, 1.0).q, (std::vector<double>{0.5, 1.0, 2.0}));
  EXPECT_EQ(figure_layout(2, 1.0).sweep.count, 200);
  EXPECT_EQ(figure_layout(4, 1.0).n, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(figure_filename(2, -0.5, 0), "figure2_q-0.5_n0.csv");
  const FigureData d = cmd_figure(cfg({{"figure", 1}}));
  ASSERT_EQ(d.curves.size(), 3u);
  // V0 = 0 lies between grid points; the q = 1 curve has a real pair inside the PT window.
  bool any_real = false;
  for (const auto& p : d.curves[1].points)
    if (p.admissible && std::abs(p.E_plus.imag()) < 1e-12) any_real = true;
  EXPECT_TRUE(any_real);
}
