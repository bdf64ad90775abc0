#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bflab/config.hpp"
#include "bflab/errors.hpp"
#include "bflab/report.hpp"
#include "bflab/svg.hpp"

using namespace bflab;

TEST_CASE("empty configuration resolves to the defaults") {
  const RunConfig c = resolve_config(parse_config_text(""));
  const ExperimentConfig d;
  CHECK(c.experiment.besov.s == 2.0);
  CHECK(c.experiment.besov.p == 2.0);
  CHECK(c.experiment.besov.r == 2.0);
  CHECK(c.experiment.model.k1 == 2.0);
  CHECK(c.experiment.model.k2 == 4.0);
  CHECK(c.experiment.model.k3 == 1.0);
  CHECK(c.experiment.model.case_tag == ParamCase::i);
  CHECK(c.experiment.half_length == 64.0);
  CHECK(c.experiment.points == 65536);
  CHECK(c.experiment.dt == 1e-3);
  CHECK(c.experiment.final_time == 0.1);
  CHECK(c.experiment.n_min == 4);
  CHECK(c.experiment.n_max == 8);
  CHECK(c.experiment.t_list == d.t_list);
}

TEST_CASE("case ii with b = 3") {
  const RunConfig c = resolve_config(parse_config_text("case = ii\nb=3\n"));
  CHECK(c.experiment.model.k1 == 4.0);
  CHECK(c.experiment.model.k2 == 2.0);
  CHECK(c.experiment.model.k3 == 3.0);
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_WITH_AS(resolve_config(parse_config_text("p=0.5")), "p must be ≥ 1 and finite", ConfigError);
  CHECK_THROWS_AS(parse_config_text("bogus=1"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("s"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("s=1\ns=2"), ConfigError);
  CHECK_THROWS_AS(resolve_config({}, {{"bogus", "1"}}), ConfigError);
  CHECK_THROWS_AS(resolve_config(parse_config_text("case=iii")), ConfigError);
  CHECK_THROWS_AS(resolve_config(parse_config_text("case=i\nb=2\nk2=5")), ConfigError);
  CHECK_THROWS_AS(resolve_config(parse_config_text("N=abc")), ConfigError);
  CHECK_THROWS_AS(resolve_config(parse_config_text("N=15")), ConfigError);
  CHECK_THROWS_AS(resolve_config(parse_config_text("t_list=0.1,,0.2")), ConfigError);
  CHECK_THROWS_AS(read_config_file("/nonexistent/bflab.cfg"), ConfigError);
}

TEST_CASE("capacity errors report the largest feasible n") {
  const RunConfig c = resolve_config(parse_config_text("n_max=10"));
  try {
    c.experiment.validate();
    FAIL("expected CapacityError");
  } catch (const CapacityError& e) {
    CHECK(e.max_feasible_n() == 8);
    CHECK(std::string(e.what()).find("largest feasible n is 8") != std::string::npos);
  }
}

TEST_CASE("consistent explicit k-values and untagged overrides") {
  CHECK_NOTHROW(resolve_config(parse_config_text("case=ii\nb=3\nk1=4")));
  const RunConfig c = resolve_config(parse_config_text("k1=3\nk3=2"));
  CHECK_FALSE(c.experiment.model.case_tag.has_value());
  CHECK(c.experiment.model.k1 == 3.0);
  CHECK(c.experiment.model.k2 == 4.0);
  CHECK(c.experiment.model.k3 == 2.0);
}

TEST_CASE("flags override the file; comments and blanks are ignored") {
  const ConfigMap file = parse_config_text("# comment\n\ns = 2.5   # trailing\nt_list=0.05, 0.1\nout_dir=/tmp/x\n");
  const RunConfig c = resolve_config(file, {{"s", "1.75"}, {"p", "4"}});
  CHECK(c.experiment.besov.s == 1.75);
  CHECK(c.experiment.besov.p == 4.0);
  CHECK(c.experiment.t_list == std::vector<double>{0.05, 0.1});
  CHECK(c.out_dir == "/tmp/x");
}

TEST_CASE("configuration text round trip") {
  const RunConfig a = resolve_config(parse_config_text("s=1.75\np=4\nr=1\ncase=ii\nb=3\nN=32768\nt_list=0.01,0.03"));
  const RunConfig b = resolve_config(parse_config_text(to_config_text(a)));
  CHECK(to_config_text(a) == to_config_text(b));
  CHECK(b.experiment.model.case_tag == ParamCase::ii);
  CHECK(b.experiment.t_list == a.experiment.t_list);
}

namespace {

ExperimentReport sample_report() {
  ExperimentReport r;
  r.experiment = "prop1";
  r.add(4, 0.0, "prop1_dev", 0.0);
  r.add(4, 0.02, "prop1_dev", 1.0 / 3.0);
  r.add(5, std::nullopt, "prop1_dev_max", 2.0e-7);
  r.add(6, std::nullopt, "prop1_dev_max", 1.0e-7);
  r.fits.push_back({"prop1_dev_max", {-1.0, 0.5, 1e-3, 5}});
  r.checks.push_back(Check::at_most("prop1 n-slope", -1.0, 0.0, "note"));
  r.checks.push_back(Check::within("x", 1.0, 0.5, 2.0));
  r.notes.push_back("hello");
  return r;
}

RunManifest sample_manifest() {
  RunManifest m;
  m.config_text = to_config_text(resolve_config({}));
  m.platform = Platform::current();
  m.wall_clock_seconds["prop1"] = 1.25;
  m.verdicts["prop1"] = "PASS";
  return m;
}

}  // namespace

TEST_CASE("CSV layout and 17-digit values") {
  const auto rep = sample_report();
  const std::string csv = to_csv(rep, "abc");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "experiment,n,t,quantity,value");
  std::getline(in, line);
  CHECK(line == "prop1,4,0,prop1_dev,0");
  std::getline(in, line);
  CHECK(line == "prop1,4,0.02,prop1_dev,0.33333333333333331");
  std::getline(in, line);
  CHECK(line == "prop1,5,,prop1_dev_max,1.9999999999999999e-07");
  std::getline(in, line);
  CHECK(line == "prop1,6,,prop1_dev_max,9.9999999999999995e-08");
  std::getline(in, line);
  CHECK(line == "# manifest=abc");
  CHECK(parse_csv_rows(csv) == rep.rows);
}

TEST_CASE("structured report round trip") {
  const auto rep = sample_report();
  const auto m = sample_manifest();
  const auto parsed = parse_json_report(to_json(rep, m));
  CHECK(parsed.report.rows == rep.rows);
  CHECK(parsed.report.experiment == "prop1");
  CHECK(parsed.verdict == "PASS");
  CHECK(parsed.report.fits.size() == 1);
  CHECK(parsed.report.fits[0].fit.slope == -1.0);
  CHECK(parsed.report.checks.size() == 2);
  CHECK(parsed.report.checks[0].upper == 0.0);
  CHECK_FALSE(parsed.report.checks[0].lower.has_value());
  CHECK(parsed.report.notes == rep.notes);
  CHECK(parsed.manifest.config_text == m.config_text);
  CHECK(parsed.manifest.verdicts == m.verdicts);
  CHECK(parsed.manifest_hash == m.hash_hex());
  CHECK(parsed.manifest.hash() == m.hash());
  CHECK(to_json(parsed.report, parsed.manifest) == to_json(rep, m));
}

TEST_CASE("manifest hash covers only the reproducible part") {
  RunManifest a = sample_manifest();
  RunManifest b = a;
  b.wall_clock_seconds["prop1"] = 99.0;
  b.platform.os = "elsewhere";
  CHECK(a.hash() == b.hash());
  b.verdicts["prop1"] = "FAIL";
  CHECK(a.hash() != b.hash());
  CHECK(fnv1a64("") == 14695981039346656037ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(a.hash_hex().size() == 16);
}

TEST_CASE("artifacts are written and embed the manifest hash") {
  const auto dir = std::filesystem::temp_directory_path() / "bflab_report_test";
  std::filesystem::remove_all(dir);
  const auto m = sample_manifest();
  const auto paths = write_artifacts(dir.string(), sample_report(), m, true);
  CHECK(paths.size() == 4);
  for (const auto& p : paths) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    CAPTURE(p);
    CHECK(ss.str().find(m.hash_hex()) != std::string::npos);
  }
  const auto failed = write_failed_artifacts(dir.string(), "prop2", m, "numerical blow-up at t = 0.05");
  std::ifstream in(failed[0]);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("# FAILED: numerical blow-up") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("svg emitter produces a well-formed document") {
  svg::LinePlot plot{"t<1>", "n", "log2 v", {{"a&b", {{1, 2}, {2, 3}}}}, "manifest=x"};
  const std::string s = svg::render(plot);
  CHECK(s.rfind("<svg", 0) == 0);
  CHECK(s.find("</svg>") != std::string::npos);
  CHECK(s.find("<polyline") != std::string::npos);
  CHECK(s.find("t&lt;1&gt;") != std::string::npos);
  CHECK(s.find("a&amp;b") != std::string::npos);
  CHECK(s.find("<!-- manifest=x -->") != std::string::npos);
}
