#include "schema_check.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with a clean MAXCOVER_* environment plus `env`; stderr is discarded.
Run cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = "env -u MAXCOVER_K -u MAXCOVER_D -u MAXCOVER_MAXD -u MAXCOVER_CONFIG -u MAXCOVER_OUT " + env + " " +
                          MAXCOVER_CLI + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("maxcover-cli-" + std::to_string(::getpid()) + "-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("list-checks names every check") {
  const Run r = cli("list-checks --format json");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.size() == 18);
  CHECK(j[0]["id"] == "C-BOCA");
}

TEST_CASE("verify exit codes") {
  const fs::path out = scratch("codes");
  const Run mk = cli("verify C-MK --k 3 --out " + out.string());
  CHECK(mk.code == 0);
  CHECK(mk.out.find("PASS C-MK") != std::string::npos);
  CHECK(mk.out.find("dim 9") != std::string::npos);
  CHECK(fs::exists(out / "C-MK.json"));
  CHECK(cli("verify C-OMEGA --out " + out.string()).code == 0);
  CHECK(cli("verify C-TMAX3 --d 2 --out " + out.string()).code == 0);
  CHECK(cli("verify C-NOPE --out " + out.string()).code == 2);
  CHECK(cli("verify C-MK --k abc --out " + out.string()).code == 2);
  CHECK(cli("verify C-MK --k 1 --out " + out.string()).code == 2);
  CHECK(cli("verify C-MK --bogus 1").code == 2);
  CHECK(cli("").code == 2);
  CHECK(cli("verify C-MODEL --out " + out.string()).code == 1);
  fs::remove_all(out);
}

TEST_CASE("settings precedence: defaults < config file < environment < flags") {
  const fs::path out = scratch("precedence");
  const fs::path conf = out / "settings.conf";
  std::ofstream(conf) << "# test settings\nk = 4\nseed = 7\n";
  auto k_of = [&](const std::string& args, const std::string& env) {
    const Run r = cli("verify C-MK --format json --out " + (out / "a").string() + " " + args, env);
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["params"]["seed"] == (args.find("--config") != std::string::npos || env.find("CONFIG") != std::string::npos ? 7 : 1));
    return j["checks"][0]["data"]["k"].get<int>();
  };
  CHECK(k_of("", "") == 3);
  CHECK(k_of("--config " + conf.string(), "") == 4);
  CHECK(k_of("", "MAXCOVER_CONFIG=" + conf.string()) == 4);
  CHECK(k_of("--config " + conf.string(), "MAXCOVER_K=5") == 5);
  CHECK(k_of("--config " + conf.string() + " --k 2", "MAXCOVER_K=5") == 2);
  std::ofstream(out / "bad.conf") << "k 4\n";
  CHECK(cli("verify C-MK --config " + (out / "bad.conf").string()).code == 2);
  CHECK(cli("verify C-MK --config " + (out / "missing.conf").string()).code == 2);
  fs::remove_all(out);
}

TEST_CASE("report: schema, CSV rows and determinism") {
  const fs::path a = scratch("report-a"), b = scratch("report-b");
  CHECK(cli("report --out " + (a / "none").string()).code == 2);
  CHECK(cli("report --out " + a.string()).code == 2);
  const std::string ids = "C-MK C-OMEGA C-TMAX2 C-T2CC --samples 8";
  REQUIRE(cli("verify " + ids + " --out " + a.string()).code == 0);
  REQUIRE(cli("verify " + ids + " --out " + b.string()).code == 0);
  REQUIRE(cli("report --out " + a.string()).code == 0);
  REQUIRE(cli("report --out " + b.string()).code == 0);

  std::ifstream schema_in(std::string(MAXCOVER_SOURCE_DIR) + "/schemas/report.schema.json");
  const json schema = json::parse(schema_in);
  json ra = json::parse(slurp(a / "report.json")), rb = json::parse(slurp(b / "report.json"));
  std::vector<std::string> errors;
  maxcover::testing::validate_schema(schema, ra, "$", errors);
  for (const auto& e : errors) MESSAGE(e);
  CHECK(errors.empty());
  CHECK(ra["totals"]["checks"] == 4);
  ra.erase("generated_at");
  rb.erase("generated_at");
  CHECK(ra.dump() == rb.dump());

  std::vector<std::string> bad;
  maxcover::testing::validate_schema(schema, json{{"checks", 1}}, "$", bad);
  CHECK_FALSE(bad.empty());

  REQUIRE(cli("report --format csv --out " + a.string()).code == 0);
  std::istringstream csv(slurp(a / "report.csv"));
  std::string line;
  int rows = -1;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 4);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("span and explore commands") {
  const Run s = cli("span \"C<t1> & w1*C<t1> ; 0 & C<t1>\" --copies 1 --d 2 --format json");
  REQUIRE(s.code == 0);
  const json j = json::parse(s.out);
  CHECK(j["entry_dims"] == json::array({3, 2, 0, 3}));
  CHECK(j["dim"] == 8);
  CHECK(cli("span \"C<t1> & w1*\" --copies 1").code == 2);
  CHECK(cli("span \"C<t3>\" --copies 1").code == 2);

  const Run t4 = cli("explore-t4 --d 0");
  REQUIRE(t4.code == 0);
  CHECK(json::parse(t4.out)["product_form"]["dims_by_degree"] == json::array({0}));
  const Run c2 = cli("explore-cycle2 --d 1");
  REQUIRE(c2.code == 0);
  CHECK(json::parse(c2.out)["generated_has_unitary_letters"] == false);
  CHECK(cli("explore-t4 --d 3 --D 2").code == 2);
  CHECK(cli("explore-t4 --d 4 --budget 10").code == 2);
}
