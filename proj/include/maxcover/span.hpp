#pragma once

// Exact truncated linear algebra over matrices of polynomials.  Vectors are sparse in
// coordinates (row, col, word); coordinates are ordered by word degree first, so the
// pivot of a row (its largest coordinate) decides its degree and span ∩ V_d is read
// off directly from an echelon form.

#include "maxcover/matpoly.hpp"

#include <json.hpp>

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace maxcover {

struct Coord {
  int row = 1;
  int col = 1;
  Word word;

  friend bool operator==(const Coord&, const Coord&) = default;
  friend std::strong_ordering operator<=>(const Coord& x, const Coord& y) {
    if (auto c = x.word.degree() <=> y.word.degree(); c != 0) return c;
    if (auto c = x.row <=> y.row; c != 0) return c;
    if (auto c = x.col <=> y.col; c != 0) return c;
    return x.word <=> y.word;
  }
};

/// Sorted ascending by coordinate, no zero coefficients.
using SparseVec = std::vector<std::pair<Coord, GaussRational>>;

SparseVec to_sparse(const MatPoly& m);
MatPoly from_sparse(Config config, int k, const SparseVec& v);
/// a + c·b
SparseVec axpy(const SparseVec& a, const GaussRational& c, const SparseVec& b);
inline int pivot_degree(const SparseVec& v) { return v.empty() ? -1 : v.back().first.word.degree(); }

/// Semi-echelon form keyed by pivot (largest coordinate); rows are scaled to pivot 1.
class Echelon {
public:
  /// Reduces v against the stored rows; a zero result means v is in the span.
  SparseVec reduce(SparseVec v) const;
  /// Inserts the reduction of v; returns the inserted (normalized) row or empty.
  SparseVec insert(SparseVec v);
  std::size_t size() const { return rows_.size(); }
  const std::map<Coord, SparseVec>& rows() const { return rows_; }

private:
  std::map<Coord, SparseVec> rows_;
};

/// Reduced echelon basis of a truncated span.  Rows are sorted by pivot, each pivot
/// coordinate occurs in exactly one row with coefficient 1, so two bases of the same
/// subspace (same k and configuration) have identical rows.
class Basis {
public:
  Basis() = default;
  Basis(Config config, int k, int d, int working_degree, std::vector<SparseVec> rref_rows);

  /// Builds the reduced basis of the rows with pivot degree <= d.
  static Basis from_echelon(Config config, int k, int d, int working_degree, const Echelon& e);

  const Config& config() const { return config_; }
  int size() const { return k_; }
  int d() const { return d_; }
  int working_degree() const { return D_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<SparseVec>& rows() const { return rows_; }

  /// Throws std::invalid_argument on size or configuration mismatch.
  bool contains(const MatPoly& x) const;
  bool contains(const SparseVec& v) const;
  /// Subspace of rows supported in entry (r, s) (exact when the basis is a direct sum of entries).
  Basis entry(int r, int s) const;
  /// dims[e] = dimension of the degree <= e part, e = 0..d.
  std::vector<int> dims_by_degree() const;
  int entry_dim(int r, int s) const;
  /// Sorted union of the supports of the rows.
  std::vector<Coord> coordinates() const;
  std::vector<MatPoly> elements() const;
  /// Intersection with V_e for e <= d.
  Basis restricted(int e) const;

  nlohmann::json to_json() const;
  /// SHA-256 of the canonical JSON body (without the hash field).
  std::string content_hash() const;

  friend bool operator==(const Basis& a, const Basis& b) {
    return a.k_ == b.k_ && a.config_ == b.config_ && a.rows_ == b.rows_;
  }

private:
  SparseVec reduce(SparseVec v) const;

  Config config_;
  int k_ = 0;
  int d_ = 0;
  int D_ = 0;
  std::vector<SparseVec> rows_;
  std::map<Coord, std::size_t> pivots_;
};

/// Span of the degree <= d parts of the elements; throws if an element has degree > D.
Basis span_of(Config config, int k, const std::vector<MatPoly>& elements, int d, int working_degree);

struct GenerateOptions {
  bool include_adjoints = true;
  /// Cap on the number of echelon rows kept during the fixpoint.
  std::size_t budget = 4'000'000;
};

/// Least subspace S of V_D containing 1 and the generators (and their adjoints) with
/// g·S ∩ V_D ⊆ S and S·g ∩ V_D ⊆ S, restricted to degree <= d.  Throws BudgetExceeded
/// when the row cap is hit.
Basis generated_algebra(Config config, int k, const std::vector<MatPoly>& generators, int d, int working_degree,
                        const GenerateOptions& options = {});

inline bool contains(const Basis& b, const MatPoly& x) { return b.contains(x); }
inline int dim(const Basis& b) { return b.dim(); }
/// Throws std::invalid_argument on coordinate mismatch (size or configuration).
bool equal(const Basis& a, const Basis& b);

}  // namespace maxcover
