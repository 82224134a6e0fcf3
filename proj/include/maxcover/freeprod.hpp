#pragma once

// Amalgamated free products over the diagonal D_k as linear combinations of reduced
// words.  A reduced word is a start index r0 followed by letters (factor f, r -> s, w)
// with chained indices and no two consecutive letters from the same factor.  A letter
// stands for the kernel element
//
//   e_rs ⊗ (w - [r = s] eval0(w))      (w a word in the factor's variable)
//
// of F, so the words form a basis of D_k ⊕ (⊕ ker F_{i1} ⊗_D ker F_{i2} ⊗_D ...).

#include "maxcover/matpoly.hpp"

#include <compare>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace maxcover {

enum class FactorKind {
  Function,    // A(j,k): functions on the diagonal and on the block {a, b}
  Scalar,      // B(j,k): scalars on the same mask
  Triangular,  // scalar diagonal plus the single entry (a, b); not *-closed
};

struct Factor {
  FactorKind kind = FactorKind::Function;
  int a = 1;
  int b = 2;
  /// Copy index carried by function entries.
  int variable = 0;

  EntryKind entry_kind(int r, int s) const;
  friend bool operator==(const Factor&, const Factor&) = default;
};

class FPFamily {
public:
  FPFamily(int k, std::vector<Factor> factors, bool cycle);

  /// A(1,k), ..., A(k-1,k), factor j in variable t_j.
  static FPFamily a_path(int k);
  /// A(1,k), ..., A(k,k).
  static FPFamily a_cycle(int k);
  static FPFamily b_path(int k);
  static FPFamily b_cycle(int k);
  /// T_2 blocks at {i, i+1}, i = 1..n-1 (plus the corner entry (n, 1) for the cycle).
  static FPFamily triangular_path(int n);
  static FPFamily triangular_cycle(int n);

  int k() const { return k_; }
  int factor_count() const { return static_cast<int>(factors_.size()); }
  /// 1-based factor access.
  const Factor& factor(int i) const { return factors_.at(static_cast<std::size_t>(i - 1)); }
  bool is_cycle() const { return cycle_; }
  bool all_function() const;
  bool star_closed() const;
  const Config& config() const { return config_; }
  std::string name() const;

  friend bool operator==(const FPFamily& x, const FPFamily& y) {
    return x.k_ == y.k_ && x.factors_ == y.factors_ && x.cycle_ == y.cycle_;
  }

private:
  int k_;
  std::vector<Factor> factors_;
  bool cycle_;
  Config config_;
};

struct FPLetter {
  int factor = 1;
  int r = 1;
  int s = 1;
  Word word;

  friend bool operator==(const FPLetter&, const FPLetter&) = default;
  friend std::strong_ordering operator<=>(const FPLetter&, const FPLetter&) = default;
};

struct FPWord {
  int start = 1;
  std::vector<FPLetter> letters;

  int end() const { return letters.empty() ? start : letters.back().s; }
  int degree() const;
  int length() const { return static_cast<int>(letters.size()); }

  friend bool operator==(const FPWord&, const FPWord&) = default;
  /// Degree, then length, then start, then letters.
  friend std::strong_ordering operator<=>(const FPWord& x, const FPWord& y) {
    if (auto c = x.degree() <=> y.degree(); c != 0) return c;
    if (auto c = x.letters.size() <=> y.letters.size(); c != 0) return c;
    if (auto c = x.start <=> y.start; c != 0) return c;
    return x.letters <=> y.letters;
  }
};

/// Kernel value w - [r = s] eval0(w) of a letter, as a Poly in the family configuration.
Poly letter_value(const FPFamily& family, const FPLetter& letter);
/// Throws std::invalid_argument if the word is not a valid reduced word of the family.
void validate_word(const FPFamily& family, const FPWord& word);

class FPElement {
public:
  using Terms = std::map<FPWord, GaussRational>;

  explicit FPElement(std::shared_ptr<const FPFamily> family);

  static FPElement one(std::shared_ptr<const FPFamily> family);
  /// e_rr ∈ D_k.
  static FPElement diagonal_unit(std::shared_ptr<const FPFamily> family, int r);
  static FPElement from_word(std::shared_ptr<const FPFamily> family, FPWord word, const GaussRational& c = GaussRational(1));
  /// Embeds a matrix in the pattern of factor i (splitting each entry into its F-part and kernel part).
  static FPElement factor_element(std::shared_ptr<const FPFamily> family, int i, const MatPoly& x);

  /// Parses `coef*[i| matrix ] * [j| matrix ] + ...`; `[0| matrix ]` is a D_k element.
  static FPElement parse(std::shared_ptr<const FPFamily> family, std::string_view text);
  std::string to_string() const;

  const FPFamily& family() const { return *family_; }
  const std::shared_ptr<const FPFamily>& family_ptr() const { return family_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  void add_term(const FPWord& w, const GaussRational& c);
  FPElement& operator+=(const FPElement& other);
  FPElement& operator-=(const FPElement& other);
  FPElement& operator*=(const GaussRational& c);
  friend FPElement operator+(FPElement a, const FPElement& b) { return a += b; }
  friend FPElement operator-(FPElement a, const FPElement& b) { return a -= b; }
  friend FPElement operator*(const GaussRational& c, FPElement a) { return a *= c; }
  friend FPElement operator*(const FPElement& a, const FPElement& b);
  friend bool operator==(const FPElement& a, const FPElement& b) {
    return *a.family_ == *b.family_ && a.terms_ == b.terms_;
  }

private:
  std::shared_ptr<const FPFamily> family_;
  Terms terms_;
};

/// A letter of an unreduced product: a matrix in the pattern of factor i.
struct FactorElement {
  int factor;
  MatPoly value;
};

/// Reduces a linear combination of products of factor elements.
FPElement reduce(std::shared_ptr<const FPFamily> family,
                 const std::vector<std::pair<GaussRational, std::vector<FactorElement>>>& raw);

inline FPElement fp_mul(const FPElement& x, const FPElement& y) { return x * y; }
/// Reverses words and transposes letters; throws for families that are not *-closed.
FPElement fp_involute(const FPElement& x);

/// All reduced words with at most `max_length` letters and total degree <= max_degree.
std::vector<FPWord> enumerate_reduced_words(const FPFamily& family, int max_length, int max_degree);

/// Configuration of the target free product C<t_1, ..., t_n>, n = number of factors.
Config boca_target_config(const FPFamily& family);
/// Letterwise E_i on reduced words: the (1,1) kernel values multiplied in the target,
/// 1 on e_11 and 0 on e_rr, r > 1.  Needs a family of function factors.
Poly boca_expectation(const FPElement& x);
/// Lift C<t_1..t_n> -> free product through the diagonal embeddings lambda_i.
FPElement lambda_lift(std::shared_ptr<const FPFamily> family, const Poly& p);

/// Matrix model: letter (f, r -> s, w) -> e_rs ⊗ (w - [r = s] eval0(w)) in variable t_f.
/// Throws for cycle families.
MatPoly concrete_model(const FPElement& x);

/// Evaluation points for the slotwise representation: each point is the value q of w
/// (so t = 1 - q^2).  block[f-1] is used on the 2x2 block of factor f and diag[f-1][r-1]
/// on the diagonal slot r outside that block.
struct SlotPoints {
  std::vector<GaussRational> block;
  std::vector<std::vector<GaussRational>> diag;
};

/// Scalar *-representation of the free product obtained by evaluating each summand of
/// each factor (A ≅ M_2(C[0,1]) ⊕ C[0,1]^{k-2}) at its own point.  Row-major k x k.
std::vector<GaussRational> slotwise_representation(const FPElement& x, const SlotPoints& points);

}  // namespace maxcover
