#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "ntri/cli.hpp"
#include "ntri/generators.hpp"
#include "support/fixtures.hpp"

using namespace ntri;
using namespace ntri::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("nt_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

int run(const std::string& args) {
  const std::string cmd = std::string(NT_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<json> lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

}  // namespace

TEST_CASE("range parsing") {
  CHECK(parse_range("5..9") == std::pair<int, int>{5, 9});
  CHECK(parse_range("7") == std::pair<int, int>{7, 7});
  CHECK_THROWS(parse_range("9..5"));
  CHECK_THROWS(parse_range("a..b"));
}

TEST_CASE("validate") {
  std::ostringstream out, err;
  const auto good = write("fan.ntg", to_ntg(gen_fan(8)));
  CHECK(cmd_validate(good, out, err) == kOk);
  const auto w = gen_wheel(6);
  auto ccw = w.boundary();
  std::reverse(ccw.begin(), ccw.end());
  std::string text = "ntg 1\nn 6\nboundary 5";
  for (VertexId v : ccw) text += " " + std::to_string(v);
  text += "\n";
  for (VertexId v = 0; v < 6; ++v) {
    text += "rot " + std::to_string(v) + ":";
    for (VertexId x : w.rotation(v)) text += " " + std::to_string(x);
    text += "\n";
  }
  const auto bad = write("bad.ntg", text);
  CHECK(cmd_validate(bad, out, err) == kValidation);
  const auto garbled = write("garbled.ntg", "ntg 1\nn three\n");
  CHECK(cmd_validate(garbled, out, err) == kValidation);
  CHECK(cmd_validate((scratch() / "missing.ntg").string(), out, err) == kIo);
}

TEST_CASE("solve, replay and tampering") {
  const auto t = gen_random_neartri(24, 8, 5);
  const auto path = write("g.ntg", to_ntg(t));
  for (const std::string method : {"constructive", "exact"}) {
    std::ostringstream out, err;
    SolveArgs a;
    a.path = path;
    a.method = method;
    REQUIRE(cmd_solve(a, out, err) == kOk);
    json cert = json::parse(out.str());
    CHECK(cert["size"].get<int>() <= budget(24));
    CHECK(check_certificate(t, cert).empty());
    const auto cpath = write("c.json", cert.dump());
    std::ostringstream rout, rerr;
    CHECK(cmd_replay(cpath, path, rout, rerr) == kOk);
    CHECK(json::parse(rout.str())["ok"] == true);

    cert["vertices"] = json::array({cert["vertices"][0]});
    cert["size"] = 1;
    CHECK_FALSE(check_certificate(t, cert).empty());
    const auto tampered = write("t.json", cert.dump());
    std::ostringstream tout, terr;
    CHECK(cmd_replay(tampered, path, tout, terr) == kValidation);
  }
  SolveArgs mop;
  mop.path = path;
  mop.method = "mop-dp";
  std::ostringstream out, err;
  CHECK(cmd_solve(mop, out, err) == kValidation);
}

TEST_CASE("exceptions exit with their own code") {
  const auto& ex = derive_exceptions();
  const auto path = write("h1.ntg", to_ntg(ex.h1));
  std::ostringstream out, err;
  SolveArgs a;
  a.path = path;
  CHECK(cmd_solve(a, out, err) == kExceptionInput);
  a.method = "exact";
  std::ostringstream out2;
  CHECK(cmd_solve(a, out2, err) == kOk);
  CHECK(json::parse(out2.str())["size"] == 5);
}

TEST_CASE("gen writes named files") {
  GenArgs g;
  g.family = "random_neartri";
  g.n = 15;
  g.seed = 4;
  g.count = 3;
  g.out_dir = (scratch() / "gen").string();
  std::ostringstream out, err;
  REQUIRE(cmd_gen(g, out, err) == kOk);
  for (int s = 4; s < 7; ++s) {
    const auto p = fs::path(g.out_dir) / ("random_neartri_n15_s" + std::to_string(s) + ".ntg");
    REQUIRE(fs::exists(p));
    CHECK(read_ntg_file(p.string()).order() == 15);
  }
  g.family = "exceptions";
  REQUIRE(cmd_gen(g, out, err) == kOk);
  CHECK(is_exception(read_ntg_file((fs::path(g.out_dir) / "h1.ntg").string())));
  g.family = "bogus";
  CHECK(cmd_gen(g, out, err) == kValidation);
}

TEST_CASE("shipped exception files match the derived graphs") {
  const auto& ex = derive_exceptions();
  const fs::path data = fs::path(NT_SOURCE_DIR) / "data";
  const auto h1 = read_ntg_file((data / "h1.ntg").string());
  const auto h2 = read_ntg_file((data / "h2.ntg").string());
  CHECK(canonical_form(h1) == ex.h1_form);
  CHECK(canonical_form(h2) == ex.h2_form);
}

TEST_CASE("verify emits one record per instance and a summary") {
  VerifyArgs v;
  v.n_lo = 10;
  v.n_hi = 14;
  v.samples = 4;
  v.threads = 2;
  std::ostringstream out, err;
  REQUIRE(cmd_verify(v, out, err) == kOk);
  const auto recs = lines(out.str());
  REQUIRE(recs.size() == 5 * 4 + 1);
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
    CHECK(recs[i]["index"] == i);
    CHECK(recs[i]["ok"] == true);
    CHECK(recs[i]["size"].get<int>() <= recs[i]["bound"].get<int>());
    CHECK(recs[i]["exact"].get<int>() <= recs[i]["size"].get<int>());
  }
  CHECK(recs.back()["failures"] == 0);
  CHECK(recs.back()["count"] == 20);

  std::ostringstream again;
  REQUIRE(cmd_verify(v, again, err) == kOk);
  const auto recs2 = lines(again.str());
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) CHECK(recs[i]["size"] == recs2[i]["size"]);

  VerifyArgs tight;
  tight.family = "tight_mop";
  tight.k_lo = 1;
  tight.k_hi = 4;
  std::ostringstream tout;
  REQUIRE(cmd_verify(tight, tout, err) == kOk);
  CHECK(lines(tout.str()).back()["max_ratio"] == 1.0);
}

TEST_CASE("inspect reports the terminal parts") {
  const auto f = fixtures::seven_gon_fixture();
  const auto path = write("seven.ntg", to_ntg(f.graph));
  std::ostringstream out, err;
  REQUIRE(cmd_inspect(path, false, out, err) == kOk);
  const auto j = json::parse(out.str());
  CHECK(j["terminal"][0]["orders"] == json({9, 5, 6, 8, 4, 3, 8}));
}

TEST_CASE("binary exit codes") {
  const auto good = write("bin_fan.ntg", to_ntg(gen_fan(9)));
  const auto h1 = write("bin_h1.ntg", to_ntg(derive_exceptions().h1));
  CHECK(run("validate " + good) == 0);
  CHECK(run("solve " + good) == 0);
  CHECK(run("solve " + h1) == 3);
  CHECK(run("solve " + (scratch() / "nope.ntg").string()) == 2);
  CHECK(run("solve " + good + " --method nonsense") == 1);
  CHECK(run("frobnicate") == 1);
  CHECK(run("--help") == 0);
}
