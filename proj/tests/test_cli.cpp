#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"

namespace fs = std::filesystem;

namespace {

fixtures::CliResult run(const std::string& args, const std::string& env = "") {
  return fixtures::run_cli(args, env);
}

std::string data(const std::string& rel) { return "'" + fixtures::data_path(rel) + "'"; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("gwlab_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

}  // namespace

TEST_CASE("successful commands exit 0") {
  const auto b = run("bernoulli -n 10");
  CHECK(b.code == 0);
  CHECK(b.out.find("B_10 = 5/66\n") != std::string::npos);
  CHECK(run("hodge -g 3").out == "g=2 lambda_{g-1}^3 = 1/2880\ng=3 lambda_{g-1}^3 = 1/725760\n");

  const auto out = scratch() / "point.json";
  const auto s = run("point-solve --max-genus 2 --max-n 6 --out '" + out.string() + "'");
  CHECK(s.code == 0);
  CHECK(s.out.find("<tau_1>_1 = 1/24\n") != std::string::npos);
  const auto table = gwlab::intersection_table_from_json(gwlab::read_json_file(out.string()));
  CHECK(table.value(1, {1}) == oracle::frac(1, 24));
  CHECK(table.max_genus == 2);
  CHECK(table.max_points == 6);

  CHECK(run("virasoro-bracket --target " + data("targets/point.json") + " --kmax 4").code == 0);
  CHECK(run("virasoro-bracket --target " + data("targets/p3.json") + " --kmax 4").code == 0);
  CHECK(run("gorenstein-check --algebra " + data("algebras/quadric.json")).code == 0);
  CHECK(run("point-solve -g 2 -n 5 --audit").code == 0);
}

TEST_CASE("failed checks exit 1 and name what failed") {
  const auto audit = run("gv-audit --target " + data("targets/synthetic_threefold.json") + " --table " +
                         data("tables/half_integer_bps.json"));
  CHECK(audit.code == 1);
  CHECK(audit.out.find("(g=1, class=[0,2], insertions={}) = 1/2") != std::string::npos);

  const auto bracket = run("virasoro-bracket --target " + data("targets/point_corrupted.json") + " --kmax 2");
  CHECK(bracket.code == 1);
  CHECK(bracket.out.find("[L_-1, L_1]") != std::string::npos);

  const auto gor = run("gorenstein-check --algebra " + data("algebras/degenerate_pairing.json"));
  CHECK(gor.code == 1);
  CHECK(gor.out.find("witness: degree 1 (1, 0)") != std::string::npos);
  CHECK(run("gorenstein-check --algebra " + data("algebras/split_top.json")).code == 1);
}

TEST_CASE("malformed input exits 2 and truncation problems exit 3") {
  const auto bad = scratch() / "broken.json";
  std::ofstream(bad) << "{";
  CHECK(run("gorenstein-check --algebra '" + bad.string() + "'").code == 2);
  CHECK(run("gorenstein-check --algebra '" + (scratch() / "missing.json").string() + "'").code == 2);
  CHECK(run("gorenstein-check --algebra " + data("algebras/bad_unit.json")).code == 2);
  CHECK(run("gorenstein-check --algebra " + data("algebras/nonassociative.json")).code == 2);
  CHECK(run("gorenstein-check --algebra " + data("algebras/truncated_cubic.json") + " --socle 7").code == 2);
  CHECK(run("virasoro-bracket --target " + data("algebras/quadric.json")).code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("gv-extract --target " + data("targets/p3.json") + " --table " + data("tables/p3_line_gw.json") +
            " -g 3")
            .code == 3);
  CHECK(run("gv-compose --target " + data("targets/synthetic_threefold.json") + " --table " +
            data("tables/synthetic_bps.json") + " -g 2 -d 1")
            .code == 3);
}

TEST_CASE("GV compose and extract round-trip through files") {
  const auto gw = scratch() / "gw.json";
  const auto bps = scratch() / "bps.json";
  const std::string target = data("targets/synthetic_threefold.json");
  REQUIRE(run("gv-compose -q --target " + target + " --table " + data("tables/synthetic_bps.json") +
              " -g 2 -d 3 --out '" + gw.string() + "'")
              .code == 0);
  REQUIRE(run("gv-extract -q --target " + target + " --table '" + gw.string() + "' -g 2 -d 3 --out '" +
              bps.string() + "'")
              .code == 0);
  const auto threefold = fixtures::load_threefold("targets/synthetic_threefold.json");
  const auto original = gwlab::invariant_table_from_json(
      gwlab::read_json_file(fixtures::data_path("tables/synthetic_bps.json")), threefold);
  const auto back = gwlab::invariant_table_from_json(gwlab::read_json_file(bps.string()), threefold);
  CHECK(back == original);
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
  const std::vector<std::string> commands{
      "point-solve -g 3 -n 7",
      "virasoro-bracket --target " + data("targets/p3.json") + " --kmax 4 --show-operators",
      "virasoro-residual --target " + data("targets/point.json") + " --table '" +
          (scratch() / "det_table.json").string() + "' -g 2 -t 3 --kmin -1 --kmax 3",
      "gv-compose --target " + data("targets/synthetic_threefold.json") + " --table " +
          data("tables/synthetic_bps.json") + " -g 4 -d 3",
      "gorenstein-check --algebra " + data("algebras/degenerate_pairing.json"),
  };
  REQUIRE(run("point-solve -q -g 2 -n 6 --out '" + (scratch() / "det_table.json").string() + "'").code == 0);
  int idx = 0;
  for (const auto& cmd : commands) {
    std::vector<std::string> outs;
    std::vector<std::string> files;
    for (const char* threads : {"1", "1", "4", "8"}) {
      const auto golden = scratch() / ("golden_" + std::to_string(idx) + "_" + threads + ".txt");
      const auto art = scratch() / ("art_" + std::to_string(idx) + "_" + threads + ".json");
      const auto r = run(cmd + " --golden '" + golden.string() + "' --out '" + art.string() + "'",
                         std::string("GWLAB_THREADS=") + threads);
      CHECK(r.code <= 1);
      CHECK(slurp(golden) == r.out);
      outs.push_back(r.out);
      files.push_back(slurp(art));
    }
    for (std::size_t i = 1; i < outs.size(); ++i) {
      CHECK(outs[i] == outs[0]);
      CHECK(files[i] == files[0]);
    }
    ++idx;
  }
}
