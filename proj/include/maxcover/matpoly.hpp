#pragma once

// k x k matrices over the normalized polynomial algebra, the entry-pattern families
// A(j,k), B(j,k), D(k), and the maps lambda, E, F defined on them.

#include "maxcover/ncpoly.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace maxcover {

/// Square matrix with Poly entries.  Indices are 1-based, matching e_{r,s}.
class MatPoly {
public:
  MatPoly() = default;
  MatPoly(Config config, int k);

  static MatPoly identity(Config config, int k);
  /// e_{r,s} ⊗ entry.
  static MatPoly unit(Config config, int k, int r, int s, const Poly& entry);
  static MatPoly unit(Config config, int k, int r, int s);
  static MatPoly diagonal(Config config, const std::vector<Poly>& entries);

  int size() const { return k_; }
  const Config& config() const { return config_; }
  const Poly& operator()(int r, int s) const { return entries_[index(r, s)]; }
  Poly& at(int r, int s) { return entries_[index(r, s)]; }

  bool is_zero() const;
  int degree() const;
  MatPoly involute() const;
  MatPoly truncated(int d) const;

  MatPoly& operator+=(const MatPoly& other);
  MatPoly& operator-=(const MatPoly& other);
  MatPoly& operator*=(const GaussRational& c);
  friend MatPoly operator+(MatPoly a, const MatPoly& b) { return a += b; }
  friend MatPoly operator-(MatPoly a, const MatPoly& b) { return a -= b; }
  friend MatPoly operator*(MatPoly a, const GaussRational& c) { return a *= c; }
  friend MatPoly operator*(const GaussRational& c, MatPoly a) { return a *= c; }
  friend MatPoly operator*(const MatPoly& a, const MatPoly& b);
  friend bool operator==(const MatPoly&, const MatPoly&) = default;

  /// Row-major array of canonical Poly strings.
  nlohmann::json to_json() const;
  static MatPoly from_json(Config config, const nlohmann::json& j);
  std::string to_string() const { return to_json().dump(); }

private:
  std::size_t index(int r, int s) const;

  Config config_;
  int k_ = 0;
  std::vector<Poly> entries_;
};

inline MatPoly matmul(const MatPoly& a, const MatPoly& b) { return a * b; }
inline MatPoly matadd(const MatPoly& a, const MatPoly& b) { return a + b; }
inline MatPoly matinvolute(const MatPoly& a) { return a.involute(); }

enum class Family { A, B, D };
enum class EntryKind { Zero, Scalar, Function };

/// Entry pattern of A(j,k), B(j,k) or D(k).  A(j,k) for j < k carries functions on the
/// diagonal and on the 2x2 block {j, j+1}; A(k,k) uses the corner pair {1, k}.  B(j,k)
/// has the same mask with scalar entries; D(k) is the scalar diagonal.
struct AlgebraSpec {
  Family family = Family::D;
  int j = 0;
  int k = 1;
  /// Copy index used by function entries.
  int variable = 1;

  static AlgebraSpec A(int j, int k, int variable = 0);
  static AlgebraSpec B(int j, int k);
  static AlgebraSpec D(int k);

  /// The off-diagonal pair (a, b) with a < b; (0, 0) for D(k).
  std::pair<int, int> block() const;
  EntryKind kind(int r, int s) const;
  /// True if X has the pattern: zero entries vanish, scalar entries are constants,
  /// function entries use only the copy `variable`.
  bool admits(const MatPoly& x) const;
  std::string name() const;
};

/// diag(f, ..., f); f must use only copy j.
MatPoly lambda_embed(const Poly& f, int j, int k);

/// E_{j,k}(X) = diag(X_11, ..., X_11) for X admitted by `spec` (family A or B).
MatPoly cond_exp_E(const AlgebraSpec& spec, const MatPoly& x);

/// F(X) = sum_r eval0(X_rr) e_rr.
MatPoly cond_exp_F(const MatPoly& x);

/// Permutation matrix P with P A(m,k) P* = A(n,k) as patterns.  P = sum_i e_{sigma(i), i}
/// for the cyclic shift sigma(i) = i + (n - m) mod k.
MatPoly unitary_equiv(Config config, int m, int n, int k);

/// Row-major entry mask of P·X·P* for X with the pattern of `spec`.
std::vector<EntryKind> conjugate_pattern(const MatPoly& p, const AlgebraSpec& spec);

}  // namespace maxcover
