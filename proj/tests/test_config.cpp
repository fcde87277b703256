#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "riotwave/config.hpp"
#include "riotwave/dispatch.hpp"
#include "riotwave/version.hpp"

using namespace riotwave;
namespace fs = std::filesystem;

namespace {

std::string minimal_config() {
  return R"({
    "experiment": "steady_states",
    "params": {"rho": 6.0, "beta": 8.0, "a_bar": 2.6666666666666665,
               "k": 0.0, "k2": 0.25, "D": 1.0, "m_bar": 1.0, "p": 1.0,
               "alpha": 0.0, "A_tilde": 1.0}
  })";
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("riotwave_test_" + tag);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("minimal config parses with documented defaults") {
  const ExperimentConfig cfg = parse_config_text(minimal_config(), "<test>");
  CHECK(cfg.experiment == ExperimentKind::SteadyStates);
  CHECK(cfg.grid.dx == 0.05);
  CHECK(cfg.cfl == 0.4);
  CHECK(cfg.wave.level == -1.0);            // resolved to u*/2 at run time
  CHECK(cfg.wave.stationary_tol == 5e-3);
  CHECK(cfg.kernel.kind == KernelSpec::Kind::None);
  CHECK(cfg.shocks.empty());
}

TEST_CASE("config validation echoes the violated invariant") {
  std::string bad = minimal_config();
  bad.replace(bad.find("\"alpha\": 0.0"), 12, "\"alpha\": 1.5");
  CHECK_THROWS_WITH_AS(parse_config_text(bad, "<test>"),
                       doctest::Contains("alpha must lie in [0,1]"), config_error);
}

TEST_CASE("unknown keys are rejected") {
  std::string cfg = minimal_config();
  cfg.insert(cfg.rfind('}'), R"(, "surprising": 1)");
  CHECK_THROWS_WITH_AS(parse_config_text(cfg, "<test>"),
                       doctest::Contains("unknown key"), config_error);

  std::string cfg2 = minimal_config();
  cfg2.insert(cfg2.find(R"("alpha")"), R"("typo_field": 2, )");
  CHECK_THROWS_WITH_AS(parse_config_text(cfg2, "<test>"),
                       doctest::Contains("typo_field"), config_error);
}

TEST_CASE("malformed JSON reports a parse error") {
  CHECK_THROWS_WITH_AS(parse_config_text("{ not json", "broken.json"),
                       doctest::Contains("parse error"), config_error);
}

TEST_CASE("gap environment must tile the grid") {
  const std::string cfg = R"({
    "experiment": "simulate",
    "params": {"rho": 6.0, "beta": 8.0, "a_bar": 2.6, "k": 0.0, "k2": 0.25,
               "D": 1.0, "m_bar": 1.0, "p": 1.0, "alpha": 0.1, "A_tilde": 1.0},
    "grid": {"n": 301, "dx": 0.05},
    "environment": {"type": "gap", "s1_end": 6.0, "s2_end": 20.0,
                    "alpha1": 0.1, "alpha2": 0.1},
    "schedule": {"t_end": 1.0}
  })";
  CHECK_THROWS_AS(parse_config_text(cfg, "<test>"), config_error);
}

TEST_CASE("eigen experiment demands a one-period periodic grid") {
  const std::string cfg = R"({
    "experiment": "eigen",
    "params": {"rho": 6.0, "beta": 2.0, "a_bar": 2.0, "k": 0.0, "k2": 0.25,
               "D": 1.0, "m_bar": 1.0, "p": 1.0, "alpha": 0.0, "A_tilde": 1.0},
    "grid": {"n": 128, "dx": 0.05, "boundary": "noflux"},
    "schedule": {"t_end": 0.0}
  })";
  CHECK_THROWS_WITH_AS(parse_config_text(cfg, "<test>"),
                       doctest::Contains("periodic"), config_error);
}

TEST_CASE("serialize/parse round trip is the identity on the wire") {
  const ExperimentConfig cfg = parse_config_text(minimal_config(), "<test>");
  const std::string wire = serialize(cfg);
  const ExperimentConfig cfg2 = parse_config_text(wire, "<roundtrip>");
  CHECK(serialize(cfg2) == wire);
  CHECK(config_hash(cfg2) == config_hash(cfg));
}

TEST_CASE("dispatch: bifurcate on a 3x3 grid writes 9 labeled rows") {
  ExperimentConfig cfg = parse_config_text(minimal_config(), "<test>");
  cfg.experiment = ExperimentKind::Bifurcate;
  cfg.bifurcate = {1.0, 8.0, 2.0, 20.0, 3, 3};
  const fs::path dir = fresh_dir("bif");
  const RunManifest manifest = dispatch(cfg, dir.string());

  const std::string csv = read_file(dir / "bifurcation.csv");
  std::size_t rows = 0;
  for (char c : csv) rows += c == '\n';
  CHECK(rows == 10);  // header + 9 cells
  CHECK(manifest.tool_version == std::string(RIOTWAVE_VERSION));
  fs::remove_all(dir);
}

TEST_CASE("dispatch: reruns are byte-identical and the manifest is accurate") {
  ExperimentConfig cfg = parse_config_text(minimal_config(), "<test>");
  cfg.experiment = ExperimentKind::SteadyStates;
  const fs::path dir1 = fresh_dir("det1");
  const fs::path dir2 = fresh_dir("det2");
  const RunManifest m1 = dispatch(cfg, dir1.string());
  const RunManifest m2 = dispatch(cfg, dir2.string());

  CHECK(m1.config_hash == m2.config_hash);
  REQUIRE(m1.outputs.size() == m2.outputs.size());
  for (std::size_t i = 0; i < m1.outputs.size(); ++i) {
    const std::string a = read_file(dir1 / m1.outputs[i].path);
    const std::string b = read_file(dir2 / m2.outputs[i].path);
    CHECK(a == b);
    CHECK(a.size() == m1.outputs[i].bytes);  // manifest byte counts are real
    CHECK(fs::exists(dir1 / m1.outputs[i].path));
  }
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("dispatch: missing input files raise io errors") {
  ExperimentConfig cfg = parse_config_text(minimal_config(), "<test>");
  cfg.experiment = ExperimentKind::Simulate;
  cfg.schedule.t_end = 0.5;
  cfg.initial.kind = InitialSpecKind::FromFile;
  cfg.initial.path = "/nonexistent/riotwave_initial.dat";
  const fs::path dir = fresh_dir("io");
  CHECK_THROWS_AS(dispatch(cfg, dir.string()), io_error);
  fs::remove_all(dir);
}
