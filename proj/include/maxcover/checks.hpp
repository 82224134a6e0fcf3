#pragma once

// Registry of verification checks and the data-only exploration commands.

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace maxcover {

struct CheckParams {
  int k = 3;
  int d = 2;
  /// Working degree; negative means d + 2.
  int D = -1;
  std::uint64_t seed = 1;
  int samples = 100;
  std::vector<int> dims = {1, 2, 4, 8};
  std::size_t budget = 4'000'000;

  int working_degree() const { return D < 0 ? d + 2 : D; }
};

struct CheckResult {
  std::string id;
  bool pass = false;
  std::string summary;
  nlohmann::json data;

  /// {id, status, summary, data, hash}; no timings, so equal inputs give equal bytes.
  nlohmann::json to_json() const;
};

struct CheckInfo {
  std::string id;
  std::string description;
  /// Topic key in data/claims_manifest.txt.
  std::string topic;
  std::function<CheckResult(const CheckParams&)> run;
};

/// All checks, sorted by id.
const std::vector<CheckInfo>& check_registry();
/// nullptr if unknown.
const CheckInfo* find_check(const std::string& id);

/// Runs the given checks on `threads` workers; results are returned in input order.
/// Exceptions inside a check become a failing result carrying the message.
std::vector<CheckResult> run_checks(const std::vector<const CheckInfo*>& checks, const CheckParams& params, int threads);

/// Per-degree dimensions of the product-form span w1 a w2 b w3 against the (1,4) entry
/// of the algebra generated by the embedded T4 matrix units.  Data only.
nlohmann::json explore_t4(int d, int D, std::size_t budget);
/// Algebra generated by the 2-cycle matrices inside (C<t1,t2> * C(T)) ⊗ M_2 against the
/// candidate description.  Data only, apart from the structural no-unitary flag.
nlohmann::json explore_cycle2(int d, int D, std::size_t budget);

/// Adds "hash": sha256 of the dump of the object without its hash field.
nlohmann::json with_hash(nlohmann::json j);

/// Expected entry dimensions of the T3 description at truncation d (row-major 3x3),
/// from a direct word count.
std::vector<int> tmax3_dimension_oracle(int d);

}  // namespace maxcover
