#pragma once

// Normalized noncommutative *-polynomials in letters t_i, w_i (= sqrt(1 - t_i)) for
// i = 1..n and an optional unitary u.  Relations: w_i t_i = t_i w_i, w_i^2 = 1 - t_i,
// u u^-1 = u^-1 u = 1.  Letters from different copies do not commute.

#include "maxcover/gauss_rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace maxcover {

struct Config {
  int copies = 1;
  bool unitary = false;
  friend bool operator==(const Config&, const Config&) = default;
};

enum class LetterKind : std::uint8_t { T, W, U };

/// Raw input letter.  For T/W `value` is the copy index i >= 1, for U it is the power z != 0.
struct Letter {
  LetterKind kind;
  int value;

  static Letter t(int i) { return {LetterKind::T, i}; }
  static Letter w(int i) { return {LetterKind::W, i}; }
  static Letter u(int z = 1) { return {LetterKind::U, z}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

// Words store their normal form as a sequence of unit letters.  Codes realise the
// letter order t1 < w1 < t2 < w2 < ... < u < u^-1.
using LetterCode = std::uint16_t;
inline constexpr LetterCode kUnitaryCode = 0xFFFE;
inline constexpr LetterCode kUnitaryInvCode = 0xFFFF;
inline constexpr int kMaxCopies = 0x7FFE;

constexpr LetterCode t_code(int i) { return static_cast<LetterCode>(2 * (i - 1)); }
constexpr LetterCode w_code(int i) { return static_cast<LetterCode>(2 * (i - 1) + 1); }
constexpr bool is_unitary_code(LetterCode c) { return c >= kUnitaryCode; }
constexpr bool is_w_code(LetterCode c) { return !is_unitary_code(c) && (c & 1) != 0; }
constexpr bool is_t_code(LetterCode c) { return !is_unitary_code(c) && (c & 1) == 0; }
/// Copy index of a letter code; 0 stands for the unitary factor.
constexpr int copy_of(LetterCode c) { return is_unitary_code(c) ? 0 : c / 2 + 1; }

/// Per-factor segment t_i^a w_i^b (copy >= 1) or u^z (copy == 0).
struct Syllable {
  int copy = 0;
  int a = 0;
  int b = 0;
  int z = 0;

  bool is_unitary() const { return copy == 0; }
  int degree() const { return is_unitary() ? (z < 0 ? -z : z) : a + b; }
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

class Word {
public:
  Word() = default;

  /// Builds a word from syllables; throws if the sequence is not alternating or a
  /// syllable is degenerate.
  static Word from_syllables(std::span<const Syllable> syllables);
  /// Wraps letter codes that are already in normal form (checked).
  static Word from_normal_letters(std::vector<LetterCode> letters);

  std::span<const LetterCode> letters() const { return letters_; }
  int degree() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }

  std::vector<Syllable> syllables() const;
  /// Highest copy index used (0 if none).
  int max_copy() const;
  bool has_unitary() const;
  /// True if every letter belongs to copy i.
  bool uses_only_copy(int i) const;
  /// Image under the character t -> 0, w -> 1, u -> 1.
  bool eval0_is_one() const;

  /// Adjoint word: syllables reversed, unitary powers negated (coefficient-free).
  Word adjoint() const;

  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  /// Graded lexicographic: degree first, then letters.
  friend std::strong_ordering operator<=>(const Word& x, const Word& y) {
    if (x.letters_.size() != y.letters_.size()) return x.letters_.size() <=> y.letters_.size();
    return x.letters_ <=> y.letters_;
  }

private:
  explicit Word(std::vector<LetterCode> letters) : letters_(std::move(letters)) {}
  std::vector<LetterCode> letters_;
  friend struct WordAccess;
};

/// Exact linear combination of normal words.  Zero coefficients are never stored, so
/// equality of term maps is equality of polynomials.
class Poly {
public:
  using Terms = std::map<Word, GaussRational>;

  explicit Poly(Config config = {}) : config_(config) {}

  static Poly constant(Config config, const GaussRational& c);
  static Poly one(Config config) { return constant(config, GaussRational(1)); }
  static Poly from_word(Config config, Word word, const GaussRational& c = GaussRational(1));
  static Poly letter(Config config, Letter letter);

  /// Parses the canonical textual syntax, e.g. `(3/2+1/2i)*t1*w1*t2 - u^-2 + 1`.
  static Poly parse(Config config, std::string_view text);

  const Config& config() const { return config_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Max word degree; 0 for the zero polynomial.
  int degree() const;
  GaussRational coefficient(const Word& w) const;
  GaussRational eval0() const;
  /// True if every word uses only letters of copy i.
  bool uses_only_copy(int i) const;
  bool has_unitary() const;

  void add_term(const Word& w, const GaussRational& c);

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const GaussRational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const GaussRational& c) { return a *= c; }
  friend Poly operator*(const GaussRational& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const { return *this * GaussRational(-1); }

  Poly involute() const;
  /// Keeps terms of degree <= d.
  Poly truncated(int d) const;

  /// Canonical printer: graded-lex order, lowest term first.
  std::string to_string() const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.config_ == b.config_ && a.terms_ == b.terms_;
  }

private:
  Config config_;
  Terms terms_;
};

/// Multiplies two normal words, adding c·(x·y) in normal form into `out`.
void multiply_words_into(const Word& x, const Word& y, const GaussRational& c, Poly::Terms& out);

/// Throws std::invalid_argument if the letter is not valid for the configuration.
void validate_letter(const Config& config, Letter letter);

Poly normalize(const Config& config, std::span<const Letter> raw,
               const GaussRational& coefficient = GaussRational(1));

inline Poly add(const Poly& p, const Poly& q) { return p + q; }
inline Poly scale(const GaussRational& c, const Poly& p) { return c * p; }
inline Poly mul(const Poly& p, const Poly& q) { return p * q; }
inline Poly involute(const Poly& p) { return p.involute(); }
inline int degree(const Poly& p) { return p.degree(); }

/// Letters admitted by an enumeration: per copy whether t_i / w_i may occur, plus u.
struct Alphabet {
  std::vector<bool> t;  // index i-1
  std::vector<bool> w;
  bool unitary = false;

  static Alphabet full(int copies, bool unitary);
  int copies() const { return static_cast<int>(t.size()); }
};

/// All normal words over the alphabet of degree <= d, graded-lex sorted.
std::vector<Word> enumerate_words(const Alphabet& alphabet, int d);
/// All normal words in n copies (+ optional unitary) of degree <= d, graded-lex sorted.
std::vector<Word> enumerate_basis(int n, bool unitary, int d);

}  // namespace maxcover
