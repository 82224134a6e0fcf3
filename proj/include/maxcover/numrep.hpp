#pragma once

// Finite-dimensional *-representations: positive contractions T_i, W_i = sqrt(I - T_i),
// an optional unitary U.  Used for sampled evidence about norms and positivity.

#include "maxcover/freeprod.hpp"
#include "maxcover/matpoly.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace maxcover {

using CMatrix = Eigen::MatrixXcd;

struct Representation {
  int m = 1;
  Config config;
  std::vector<CMatrix> t;
  std::vector<CMatrix> w;
  std::optional<CMatrix> u;
  std::uint64_t seed = 0;
};

struct SampleOptions {
  /// Forces one eigenvalue of each T_i to 0 and one to 1 (when m >= 2).
  bool pin_endpoints = false;
  /// Independent stream index; (seed, task) determines the sample.
  std::uint64_t task = 0;
};

Representation sample(const Config& config, int m, std::uint64_t seed, const SampleOptions& options = {});
/// One-dimensional representation t_i -> s_i, w_i -> sqrt(1 - s_i), u -> e^{i theta}.
Representation character(const Config& config, const std::vector<double>& s, double theta = 0.0);

CMatrix eval(const Poly& p, const Representation& rep);
/// Blockwise evaluation: a (k m) x (k m) matrix.
CMatrix eval(const MatPoly& x, const Representation& rep);
CMatrix eval(const FPElement& x, const Representation& rep);

/// Largest singular value.  Throws std::invalid_argument on non-finite entries.
double op_norm(const CMatrix& x);

struct ContractivityOptions {
  int samples = 100;
  std::vector<int> dims = {1, 2, 4, 8};
  double tol = 1e-9;
  std::uint64_t seed = 1;
};

struct ContractivityReport {
  std::string check;
  int n = 2;
  int amplification = 1;
  int samples = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<int> dims;
  double tol = 0.0;
  /// max over samples of ||iota(X)|| - ||X|| (clamped below at 0).
  double max_violation = 0.0;
  int violations = 0;
  /// max | ||iota(X)|| - ||X|| | at the character s_i = 0.
  double character_gap = 0.0;
  bool pass = false;

  nlohmann::json to_json() const;
};

/// Evaluates (iota ⊗ id)(X) for an (n l) x (n l) block upper-triangular scalar matrix X:
/// block (i, j) becomes W_i ... W_{j-1} ⊗ X_ij.
CMatrix eval_triangular_embedding(const CMatrix& x, int n, int amplification, const Representation& rep);

ContractivityReport check_embedding_contractive(int n, int amplification, const ContractivityOptions& options);

}  // namespace maxcover
