// maxcover: verification checks, exploration commands and reports.
//
// Settings are read in increasing precedence from built-in defaults, a key=value config
// file (--config or MAXCOVER_CONFIG), MAXCOVER_* environment variables and flags.

#include "maxcover/checks.hpp"
#include "maxcover/errors.hpp"
#include "maxcover/hash.hpp"
#include "maxcover/subspace_spec.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace maxcover;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  int k = 3;
  int d = 2;
  int D = -1;
  std::uint64_t seed = 1;
  int samples = 100;
  std::vector<int> dims = {1, 2, 4, 8};
  std::string format = "text";
  std::size_t budget = 4'000'000;
  std::string out = "maxcover-out";
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
};

// key -> environment variable
const std::map<std::string, std::string> kEnv = {
    {"k", "MAXCOVER_K"},         {"d", "MAXCOVER_D"},           {"D", "MAXCOVER_MAXD"},
    {"seed", "MAXCOVER_SEED"},   {"samples", "MAXCOVER_SAMPLES"}, {"dims", "MAXCOVER_DIMS"},
    {"format", "MAXCOVER_FORMAT"}, {"budget", "MAXCOVER_BUDGET"}, {"out", "MAXCOVER_OUT"},
    {"threads", "MAXCOVER_THREADS"},
};

long long to_integer(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw UsageError("invalid integer for " + key + ": '" + value + "'");
  return v;
}

std::vector<int> to_dims(const std::string& value) {
  std::vector<int> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    const long long v = to_integer("dims", item);
    if (v < 1 || v > 64) throw UsageError("dims entries must lie in 1..64");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw UsageError("dims must be a non-empty list");
  return out;
}

void apply(Settings& s, const std::string& key, const std::string& value) {
  if (key == "k") s.k = static_cast<int>(to_integer(key, value));
  else if (key == "d") s.d = static_cast<int>(to_integer(key, value));
  else if (key == "D") s.D = static_cast<int>(to_integer(key, value));
  else if (key == "seed") s.seed = static_cast<std::uint64_t>(to_integer(key, value));
  else if (key == "samples") s.samples = static_cast<int>(to_integer(key, value));
  else if (key == "dims") s.dims = to_dims(value);
  else if (key == "format") s.format = value;
  else if (key == "budget") s.budget = static_cast<std::size_t>(to_integer(key, value));
  else if (key == "out") s.out = value;
  else if (key == "threads") s.threads = static_cast<int>(to_integer(key, value));
  else throw UsageError("unknown setting '" + key + "'");
}

std::string trim(const std::string& x) {
  const auto b = x.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return x.substr(b, x.find_last_not_of(" \t\r") - b + 1);
}

void apply_config_file(Settings& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(number) + ": expected key = value");
    apply(s, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void validate(const Settings& s) {
  if (s.k < 2 || s.k > 8) throw UsageError("k must lie in 2..8");
  if (s.d < 0) throw UsageError("d must be non-negative");
  if (s.D >= 0 && s.D < s.d) throw UsageError("D must be at least d");
  if (s.samples < 1) throw UsageError("samples must be positive");
  if (s.threads < 1) throw UsageError("threads must be positive");
  if (s.budget < 1) throw UsageError("budget must be positive");
  if (s.format != "text" && s.format != "json" && s.format != "csv") throw UsageError("format must be text, json or csv");
}

CheckParams to_params(const Settings& s) {
  CheckParams p;
  p.k = s.k;
  p.d = s.d;
  p.D = s.D;
  p.seed = s.seed;
  p.samples = s.samples;
  p.dims = s.dims;
  p.budget = s.budget;
  return p;
}

json params_json(const CheckParams& p) {
  return {{"k", p.k}, {"d", p.d}, {"D", p.working_degree()}, {"seed", p.seed},
          {"samples", p.samples}, {"dims", p.dims}, {"budget", p.budget}};
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  f << body;
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

std::string csv_field(const std::string& x) {
  if (x.find_first_of(",\"\n") == std::string::npos) return x;
  std::string out = "\"";
  for (char c : x) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

int cmd_verify(const Settings& s, std::vector<std::string> ids) {
  std::vector<const CheckInfo*> checks;
  if (ids.empty() || (ids.size() == 1 && ids[0] == "all")) {
    for (const auto& c : check_registry()) checks.push_back(&c);
  } else {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (const auto& id : ids) {
      const CheckInfo* c = find_check(id);
      if (!c) throw UsageError("unknown check id '" + id + "' (see list-checks)");
      checks.push_back(c);
    }
  }
  const CheckParams p = to_params(s);
  const auto results = run_checks(checks, p, s.threads);
  fs::create_directories(s.out);
  json all = json::array();
  bool pass = true;
  for (const auto& r : results) {
    const json j = r.to_json();
    write_file(fs::path(s.out) / (r.id + ".json"), j.dump(2) + "\n");
    all.push_back(j);
    pass = pass && r.pass;
  }
  write_file(fs::path(s.out) / "params.json", params_json(p).dump(2) + "\n");
  if (s.format == "json") {
    std::cout << json{{"params", params_json(p)}, {"checks", all}}.dump(2) << "\n";
  } else if (s.format == "csv") {
    std::cout << "id,status,summary\n";
    for (const auto& r : results) std::cout << r.id << "," << (r.pass ? "PASS" : "FAIL") << "," << csv_field(r.summary) << "\n";
  } else {
    for (const auto& r : results) std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << "  " << r.summary << "\n";
  }
  return pass ? 0 : 1;
}

int cmd_list(const Settings& s) {
  if (s.format == "json") {
    json all = json::array();
    for (const auto& c : check_registry()) all.push_back({{"id", c.id}, {"topic", c.topic}, {"description", c.description}});
    std::cout << all.dump(2) << "\n";
  } else {
    for (const auto& c : check_registry()) std::cout << std::left << std::setw(15) << c.id << std::setw(28) << c.topic << c.description << "\n";
  }
  return 0;
}

int cmd_span(const Settings& s, const std::string& text, int copies, bool unitary, bool show_basis) {
  const Config c{copies, unitary};
  const SubspaceSpec spec = SubspaceSpec::parse(c, text);
  const int D = s.D < 0 ? s.d + 2 : s.D;
  const Basis b = compile_spec(spec, s.d, D);
  std::vector<int> entry_dims;
  for (int r = 1; r <= b.size(); ++r)
    for (int col = 1; col <= b.size(); ++col) entry_dims.push_back(b.entry_dim(r, col));
  json out = {{"spec", text}, {"copies", copies}, {"unitary", unitary}, {"d", s.d}, {"D", D}, {"dim", b.dim()},
              {"dims_by_degree", b.dims_by_degree()}, {"entry_dims", entry_dims}, {"hash", b.content_hash()}};
  if (show_basis) out["basis"] = b.to_json();
  if (s.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "dim " << b.dim() << "\ndims_by_degree " << json(b.dims_by_degree()).dump() << "\nentry_dims "
              << json(entry_dims).dump() << "\nhash " << b.content_hash() << "\n";
    if (show_basis)
      for (const auto& e : b.elements()) std::cout << e.to_string() << "\n";
  }
  return 0;
}

int cmd_explore(const Settings& s, bool t4) {
  // the embedded T4 units reach degree 3
  const int D = s.D >= 0 ? s.D : t4 ? std::max(s.d + 2, 3) : s.d + 2;
  const json out = t4 ? explore_t4(s.d, D, s.budget) : explore_cycle2(s.d, D, s.budget);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_report(const Settings& s, const std::string& output) {
  if (!fs::is_directory(s.out)) throw UsageError("no artifacts: directory '" + s.out + "' does not exist (run verify first)");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(s.out))
    if (e.path().extension() == ".json" && e.path().filename().string().rfind("C-", 0) == 0) files.push_back(e.path());
  if (files.empty()) throw UsageError("no check artifacts in '" + s.out + "' (run verify first)");
  std::sort(files.begin(), files.end());
  json checks = json::array();
  int passed = 0;
  for (const auto& f : files) {
    std::ifstream in(f);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw UsageError("malformed artifact " + f.string() + ": " + e.what());
    }
    if (j.value("status", "") == "PASS") ++passed;
    checks.push_back(j);
  }
  json params = nullptr;
  if (fs::exists(fs::path(s.out) / "params.json")) std::ifstream(fs::path(s.out) / "params.json") >> params;
  const std::string format = s.format == "csv" ? "csv" : "json";
  const fs::path target = output.empty() ? fs::path(s.out) / ("report." + format) : fs::path(output);
  if (format == "csv") {
    std::ostringstream body;
    body << "id,status,hash,summary\n";
    for (const auto& j : checks)
      body << j.value("id", "") << "," << j.value("status", "") << "," << j.value("hash", "") << "," << csv_field(j.value("summary", "")) << "\n";
    write_file(target, body.str());
  } else {
    json body = {{"params", params},
                 {"checks", checks},
                 {"totals", {{"checks", checks.size()}, {"passed", passed}, {"failed", static_cast<int>(checks.size()) - passed}}}};
    body["body_hash"] = sha256_hex(body.dump());
    body["generated_at"] = timestamp();
    write_file(target, body.dump(2) + "\n");
  }
  std::cout << target.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maxcover: exact and sampled checks for maximal C*-cover computations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "maxcover 1.0");

  std::map<std::string, std::string> flags;
  auto flag = [&](const std::string& name, const std::string& key, const std::string& help) {
    app.add_option_function<std::string>(name, [&flags, key](const std::string& v) { flags[key] = v; }, help)->type_name("VALUE");
  };
  flag("--k", "k", "matrix size k (default 3)");
  flag("--d", "d", "truncation degree d (default 2)");
  flag("--D", "D", "working degree D (default d + 2)");
  flag("--seed", "seed", "random seed (default 1)");
  flag("--samples", "samples", "sampled representations per setting (default 100)");
  flag("--dims", "dims", "comma-separated representation dimensions (default 1,2,4,8)");
  flag("--format", "format", "text, json or csv (default text)");
  flag("--budget", "budget", "row cap for generated algebras (default 4000000)");
  flag("--out", "out", "artifact directory (default maxcover-out)");
  flag("--threads", "threads", "worker threads (default: hardware concurrency)");
  std::string config_path;
  app.add_option("--config", config_path, "key = value settings file");

  auto* verify = app.add_subcommand("verify", "run checks by id, or all");
  verify->fallthrough();
  std::vector<std::string> ids;
  verify->add_option("ids", ids, "check ids, or 'all'");

  auto* list = app.add_subcommand("list-checks", "list registered checks");
  list->fallthrough();

  auto* span = app.add_subcommand("span", "compile an entrywise subspace description");
  span->fallthrough();
  std::string spec_text;
  int copies = 2;
  bool unitary = false, show_basis = false;
  span->add_option("spec", spec_text, "description, e.g. \"C<t1> & w1*C<t1> ; 0 & C<t1>\"")->required();
  span->add_option("--copies", copies, "number of copies of C[0,1]")->check(CLI::Range(1, 16));
  span->add_flag("--unitary", unitary, "enable the unitary letter u");
  span->add_flag("--basis", show_basis, "print the basis elements");

  auto* t4 = app.add_subcommand("explore-t4", "product form against the generated T4 algebra (data only)");
  t4->fallthrough();
  auto* cycle = app.add_subcommand("explore-cycle2", "2-cycle generated algebra against the candidate (data only)");
  cycle->fallthrough();

  auto* report = app.add_subcommand("report", "consolidate verify artifacts into JSON or CSV");
  report->fallthrough();
  std::string report_output;
  report->add_option("--output", report_output, "report path (default <out>/report.<format>)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Settings s;
    if (config_path.empty())
      if (const char* env = std::getenv("MAXCOVER_CONFIG")) config_path = env;
    if (!config_path.empty()) apply_config_file(s, config_path);
    for (const auto& [key, var] : kEnv)
      if (const char* env = std::getenv(var.c_str())) apply(s, key, env);
    for (const auto& [key, value] : flags) apply(s, key, value);
    validate(s);

    if (verify->parsed()) return cmd_verify(s, ids);
    if (list->parsed()) return cmd_list(s);
    if (span->parsed()) return cmd_span(s, spec_text, copies, unitary, show_basis);
    if (t4->parsed()) return cmd_explore(s, true);
    if (cycle->parsed()) return cmd_explore(s, false);
    if (report->parsed()) return cmd_report(s, report_output);
  } catch (const UsageError& e) {
    std::cerr << "maxcover: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "maxcover: parse error at position " << e.position() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "maxcover: error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
