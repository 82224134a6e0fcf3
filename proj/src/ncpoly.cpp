#include "maxcover/ncpoly.hpp"

#include "maxcover/errors.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace maxcover {

struct WordAccess {
  static Word make(std::vector<LetterCode> letters) { return Word(std::move(letters)); }
};

namespace {

bool is_normal(std::span<const LetterCode> s) {
  for (std::size_t k = 1; k < s.size(); ++k) {
    LetterCode x = s[k - 1], y = s[k];
    if (is_unitary_code(x) && is_unitary_code(y) && x != y) return false;
    if (!is_unitary_code(x) && is_w_code(x) && copy_of(x) == copy_of(y)) return false;
  }
  return true;
}

// Length of the trailing syllable of s[0, n).
std::size_t trailing_syllable(std::span<const LetterCode> s) {
  const int c = copy_of(s.back());
  std::size_t k = s.size();
  while (k > 0 && copy_of(s[k - 1]) == c) --k;
  return s.size() - k;
}

std::size_t leading_syllable(std::span<const LetterCode> s) {
  const int c = copy_of(s.front());
  std::size_t k = 0;
  while (k < s.size() && copy_of(s[k]) == c) ++k;
  return k;
}

void append_copy_syllable(std::vector<LetterCode>& out, int copy, int a, int b) {
  out.insert(out.end(), static_cast<std::size_t>(a), t_code(copy));
  if (b) out.push_back(w_code(copy));
}

void append_unitary(std::vector<LetterCode>& out, int z) {
  out.insert(out.end(), static_cast<std::size_t>(z < 0 ? -z : z), z < 0 ? kUnitaryInvCode : kUnitaryCode);
}

void accumulate(Poly::Terms& out, std::vector<LetterCode> letters, const GaussRational& c) {
  auto [it, inserted] = out.try_emplace(WordAccess::make(std::move(letters)), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) out.erase(it);
  }
}

std::vector<LetterCode> concat(std::span<const LetterCode> x, std::span<const LetterCode> mid,
                               std::span<const LetterCode> y) {
  std::vector<LetterCode> out;
  out.reserve(x.size() + mid.size() + y.size());
  out.insert(out.end(), x.begin(), x.end());
  out.insert(out.end(), mid.begin(), mid.end());
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

// Adds c * (x y) where x and y are normal; only the junction can be non-normal.
void join(std::span<const LetterCode> x, std::span<const LetterCode> y, const GaussRational& c,
          Poly::Terms& out) {
  if (x.empty() || y.empty() || copy_of(x.back()) != copy_of(y.front())) {
    accumulate(out, concat(x, {}, y), c);
    return;
  }
  const std::size_t lx = trailing_syllable(x);
  const std::size_t ly = leading_syllable(y);
  auto head = x.first(x.size() - lx);
  auto tail = y.subspan(ly);
  std::vector<LetterCode> mid;

  if (is_unitary_code(x.back())) {
    auto power = [](std::span<const LetterCode> s) {
      int z = 0;
      for (LetterCode l : s) z += (l == kUnitaryCode) ? 1 : -1;
      return z;
    };
    const int z = power(x.last(lx)) + power(y.first(ly));
    if (z == 0) {
      join(head, tail, c, out);
      return;
    }
    append_unitary(mid, z);
    accumulate(out, concat(head, mid, tail), c);
    return;
  }

  const int copy = copy_of(x.back());
  int a = 0, b = 0;
  for (LetterCode l : x.last(lx)) (is_w_code(l) ? b : a) += 1;
  for (LetterCode l : y.first(ly)) (is_w_code(l) ? b : a) += 1;
  if (b <= 1) {
    append_copy_syllable(mid, copy, a, b);
    accumulate(out, concat(head, mid, tail), c);
    return;
  }
  // w^2 = 1 - t:  t^a w^2 = t^a - t^(a+1)
  std::vector<LetterCode> next;
  append_copy_syllable(next, copy, a + 1, 0);
  accumulate(out, concat(head, next, tail), -c);
  if (a == 0) {
    join(head, tail, c, out);
  } else {
    append_copy_syllable(mid, copy, a, 0);
    accumulate(out, concat(head, mid, tail), c);
  }
}

}  // namespace

Word Word::from_syllables(std::span<const Syllable> syllables) {
  std::vector<LetterCode> letters;
  for (std::size_t k = 0; k < syllables.size(); ++k) {
    const Syllable& s = syllables[k];
    if (k > 0 && syllables[k - 1].copy == s.copy)
      throw std::invalid_argument("Word: adjacent syllables from the same copy");
    if (s.is_unitary()) {
      if (s.z == 0) throw std::invalid_argument("Word: unitary syllable with zero power");
      append_unitary(letters, s.z);
    } else {
      if (s.copy < 0 || s.copy > kMaxCopies) throw std::invalid_argument("Word: copy index out of range");
      if (s.a < 0 || s.b < 0 || s.b > 1 || s.a + s.b == 0)
        throw std::invalid_argument("Word: syllable exponents must satisfy a >= 0, b in {0,1}, (a,b) != (0,0)");
      append_copy_syllable(letters, s.copy, s.a, s.b);
    }
  }
  return Word(std::move(letters));
}

Word Word::from_normal_letters(std::vector<LetterCode> letters) {
  if (!is_normal(letters)) throw std::invalid_argument("Word: letters are not in normal form");
  return Word(std::move(letters));
}

std::vector<Syllable> Word::syllables() const {
  std::vector<Syllable> out;
  std::size_t k = 0;
  while (k < letters_.size()) {
    const int c = copy_of(letters_[k]);
    Syllable s;
    s.copy = c;
    for (; k < letters_.size() && copy_of(letters_[k]) == c; ++k) {
      LetterCode l = letters_[k];
      if (c == 0)
        s.z += (l == kUnitaryCode) ? 1 : -1;
      else
        (is_w_code(l) ? s.b : s.a) += 1;
    }
    out.push_back(s);
  }
  return out;
}

int Word::max_copy() const {
  int m = 0;
  for (LetterCode l : letters_) m = std::max(m, copy_of(l));
  return m;
}

bool Word::has_unitary() const {
  return std::any_of(letters_.begin(), letters_.end(), is_unitary_code);
}

bool Word::uses_only_copy(int i) const {
  return std::all_of(letters_.begin(), letters_.end(), [i](LetterCode l) { return copy_of(l) == i; });
}

bool Word::eval0_is_one() const {
  return std::none_of(letters_.begin(), letters_.end(), is_t_code);
}

Word Word::adjoint() const {
  auto syl = syllables();
  std::reverse(syl.begin(), syl.end());
  for (auto& s : syl) s.z = -s.z;
  std::vector<LetterCode> letters;
  letters.reserve(letters_.size());
  for (const auto& s : syl) {
    if (s.is_unitary())
      append_unitary(letters, s.z);
    else
      append_copy_syllable(letters, s.copy, s.a, s.b);
  }
  return Word(std::move(letters));
}

std::string Word::to_string() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (const auto& s : syllables()) {
    auto piece = [&out](const std::string& base, int power) {
      if (!out.empty()) out += "*";
      out += base;
      if (power != 1) out += "^" + std::to_string(power);
    };
    if (s.is_unitary()) {
      piece("u", s.z);
    } else {
      if (s.a > 0) piece("t" + std::to_string(s.copy), s.a);
      if (s.b > 0) piece("w" + std::to_string(s.copy), 1);
    }
  }
  return out;
}

void multiply_words_into(const Word& x, const Word& y, const GaussRational& c, Poly::Terms& out) {
  if (c.is_zero()) return;
  join(x.letters(), y.letters(), c, out);
}

// ---------------------------------------------------------------------------

Poly Poly::constant(Config config, const GaussRational& c) {
  Poly p(config);
  p.add_term(Word(), c);
  return p;
}

Poly Poly::from_word(Config config, Word word, const GaussRational& c) {
  if (word.max_copy() > config.copies) throw std::invalid_argument("Poly: word uses an unknown copy index");
  if (word.has_unitary() && !config.unitary) throw std::invalid_argument("Poly: unitary letter but unitary disabled");
  Poly p(config);
  p.add_term(word, c);
  return p;
}

void validate_letter(const Config& config, Letter letter) {
  switch (letter.kind) {
    case LetterKind::T:
    case LetterKind::W:
      if (letter.value < 1 || letter.value > config.copies)
        throw std::invalid_argument("unknown copy index " + std::to_string(letter.value));
      break;
    case LetterKind::U:
      if (!config.unitary) throw std::invalid_argument("unitary letter used while the unitary is disabled");
      if (letter.value == 0) throw std::invalid_argument("unitary power must be nonzero");
      break;
  }
}

Poly Poly::letter(Config config, Letter letter) {
  validate_letter(config, letter);
  std::vector<LetterCode> codes;
  switch (letter.kind) {
    case LetterKind::T: codes.push_back(t_code(letter.value)); break;
    case LetterKind::W: codes.push_back(w_code(letter.value)); break;
    case LetterKind::U: append_unitary(codes, letter.value); break;
  }
  Poly p(config);
  p.add_term(WordAccess::make(std::move(codes)), GaussRational(1));
  return p;
}

int Poly::degree() const {
  // graded order: the last term has the largest degree
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

GaussRational Poly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? GaussRational() : it->second;
}

GaussRational Poly::eval0() const {
  GaussRational sum;
  for (const auto& [w, c] : terms_)
    if (w.eval0_is_one()) sum += c;
  return sum;
}

bool Poly::uses_only_copy(int i) const {
  return std::all_of(terms_.begin(), terms_.end(), [i](const auto& kv) { return kv.first.uses_only_copy(i); });
}

bool Poly::has_unitary() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.first.has_unitary(); });
}

void Poly::add_term(const Word& w, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

namespace {
void require_same_config(const Poly& a, const Poly& b) {
  if (!(a.config() == b.config())) throw std::invalid_argument("Poly: configuration mismatch");
}
}  // namespace

Poly& Poly::operator+=(const Poly& other) {
  require_same_config(*this, other);
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  require_same_config(*this, other);
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

Poly& Poly::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coef] : terms_) coef *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_config(a, b);
  Poly out(a.config());
  for (const auto& [x, cx] : a.terms_)
    for (const auto& [y, cy] : b.terms_) multiply_words_into(x, y, cx * cy, out.terms_);
  return out;
}

Poly Poly::involute() const {
  Poly out(config_);
  for (const auto& [w, c] : terms_) out.add_term(w.adjoint(), c.conj());
  return out;
}

Poly Poly::truncated(int d) const {
  Poly out(config_);
  for (const auto& [w, c] : terms_)
    if (w.degree() <= d) out.terms_.emplace(w, c);
  return out;
}

namespace {

bool is_negative(const GaussRational& c) {
  return sgn(c.re()) < 0 || (sgn(c.re()) == 0 && sgn(c.im()) < 0);
}

std::string format_term(const GaussRational& c, const Word& w) {
  if (w.empty()) return c.to_string();
  if (c.is_one()) return w.to_string();
  return c.to_string() + "*" + w.to_string();
}

}  // namespace

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    const bool neg = is_negative(c);
    const std::string body = format_term(neg ? -c : c, w);
    if (first)
      out += neg ? "-" + body : body;
    else
      out += (neg ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser:  sum := [+-] product ([+-] product)* ; product := power ('*' power)* ;
//          power := atom ['^' int] ; atom := number['i'] | 'i' | t<int> | w<int> | u | '(' sum ')'

namespace {

class PolyParser {
public:
  PolyParser(Config config, std::string_view text) : config_(config), text_(text) {}

  Poly parse() {
    Poly p = sum();
    skip();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return p;
  }

private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip();
    std::string s;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) s.push_back(text_[pos_++]);
    return s;
  }

  long integer() {
    skip();
    const std::size_t at = pos_;
    bool neg = false;
    if (eat('-')) neg = true;
    std::string s = digits();
    if (s.empty()) throw ParseError("expected integer", at);
    if (s.size() > 9) throw ParseError("integer too large", at);
    long v = std::stol(s);
    return neg ? -v : v;
  }

  Poly sum() {
    skip();
    Poly acc(config_);
    bool negate = false;
    if (eat('-'))
      negate = true;
    else
      eat('+');
    acc += negate ? -product() : product();
    while (true) {
      if (eat('+'))
        acc += product();
      else if (eat('-'))
        acc -= product();
      else
        break;
    }
    return acc;
  }

  Poly product() {
    Poly acc = power();
    while (eat('*')) acc = acc * power();
    return acc;
  }

  Poly power() {
    skip();
    const std::size_t at = pos_;
    if (peek('u')) {
      ++pos_;
      long z = 1;
      if (eat('^')) z = integer();
      if (z == 0) return Poly::one(config_);
      check(Letter::u(static_cast<int>(z)), at);
      return Poly::letter(config_, Letter::u(static_cast<int>(z)));
    }
    Poly base = atom();
    if (eat('^')) {
      const std::size_t exp_at = pos_;
      long e = integer();
      if (e < 0) throw ParseError("negative exponent is only allowed on u", exp_at);
      Poly out = Poly::one(config_);
      for (long k = 0; k < e; ++k) out = out * base;
      return out;
    }
    return base;
  }

  void check(Letter l, std::size_t at) {
    try {
      validate_letter(config_, l);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), at);
    }
  }

  Poly atom() {
    skip();
    const std::size_t at = pos_;
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", at);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = sum();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return p;
    }
    if (c == 't' || c == 'w') {
      ++pos_;
      std::string s = digits();
      if (s.empty() || s.size() > 5) throw ParseError("expected copy index after '" + std::string(1, c) + "'", pos_);
      const int i = std::stoi(s);
      const Letter l = c == 't' ? Letter::t(i) : Letter::w(i);
      check(l, at);
      return Poly::letter(config_, l);
    }
    if (c == 'i') {
      ++pos_;
      return Poly::constant(config_, GaussRational::i());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::string den = digits();
        if (den.empty()) throw ParseError("expected denominator", pos_);
        num += "/" + den;
      }
      mpq_class q;
      if (q.set_str(num, 10) != 0 || sgn(q.get_den()) == 0) throw ParseError("invalid number '" + num + "'", at);
      q.canonicalize();
      if (eat('i')) return Poly::constant(config_, GaussRational(mpq_class(0), q));
      return Poly::constant(config_, GaussRational(q));
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", at);
  }

  Config config_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(Config config, std::string_view text) { return PolyParser(config, text).parse(); }

Poly normalize(const Config& config, std::span<const Letter> raw, const GaussRational& coefficient) {
  Poly acc = Poly::constant(config, coefficient);
  for (const Letter& l : raw) acc = acc * Poly::letter(config, l);
  return acc;
}

// ---------------------------------------------------------------------------

Alphabet Alphabet::full(int copies, bool unitary) {
  Alphabet a;
  a.t.assign(static_cast<std::size_t>(copies), true);
  a.w.assign(static_cast<std::size_t>(copies), true);
  a.unitary = unitary;
  return a;
}

namespace {

void extend_words(const Alphabet& alpha, int budget, int last_copy, std::vector<LetterCode>& cur,
                  std::vector<Word>& out) {
  out.push_back(WordAccess::make(cur));
  if (budget == 0) return;
  for (int copy = 1; copy <= alpha.copies(); ++copy) {
    if (copy == last_copy) continue;
    const bool ta = alpha.t[static_cast<std::size_t>(copy - 1)];
    const bool wa = alpha.w[static_cast<std::size_t>(copy - 1)];
    for (int deg = 1; deg <= budget; ++deg) {
      for (int b = 0; b <= 1; ++b) {
        const int a = deg - b;
        if ((b == 1 && !wa) || (a > 0 && !ta)) continue;
        const std::size_t mark = cur.size();
        append_copy_syllable(cur, copy, a, b);
        extend_words(alpha, budget - deg, copy, cur, out);
        cur.resize(mark);
      }
    }
  }
  if (alpha.unitary && last_copy != 0) {
    for (int deg = 1; deg <= budget; ++deg) {
      for (int z : {deg, -deg}) {
        const std::size_t mark = cur.size();
        append_unitary(cur, z);
        extend_words(alpha, budget - deg, 0, cur, out);
        cur.resize(mark);
      }
    }
  }
}

}  // namespace

std::vector<Word> enumerate_words(const Alphabet& alphabet, int d) {
  if (d < 0) throw std::invalid_argument("enumerate_words: negative degree");
  if (alphabet.w.size() != alphabet.t.size()) throw std::invalid_argument("enumerate_words: malformed alphabet");
  std::vector<Word> out;
  std::vector<LetterCode> cur;
  // last_copy = -1 marks "no previous syllable" so the unitary may lead
  extend_words(alphabet, d, -1, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Word> enumerate_basis(int n, bool unitary, int d) { return enumerate_words(Alphabet::full(n, unitary), d); }

}  // namespace maxcover
