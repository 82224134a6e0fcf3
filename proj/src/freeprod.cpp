#include "maxcover/freeprod.hpp"

#include "maxcover/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace maxcover {

EntryKind Factor::entry_kind(int r, int s) const {
  const bool in_block = (r == a && s == b) || (r == b && s == a);
  switch (kind) {
    case FactorKind::Function:
      return r == s || in_block ? EntryKind::Function : EntryKind::Zero;
    case FactorKind::Scalar:
      return r == s || in_block ? EntryKind::Scalar : EntryKind::Zero;
    case FactorKind::Triangular:
      return r == s || (r == a && s == b) ? EntryKind::Scalar : EntryKind::Zero;
  }
  return EntryKind::Zero;
}

FPFamily::FPFamily(int k, std::vector<Factor> factors, bool cycle)
    : k_(k), factors_(std::move(factors)), cycle_(cycle) {
  if (k < 1) throw std::invalid_argument("FPFamily: k must be positive");
  int copies = 1;
  for (const auto& f : factors_) {
    if (f.a < 1 || f.b < 1 || f.a > k || f.b > k || f.a == f.b)
      throw std::invalid_argument("FPFamily: factor block out of range");
    if (f.kind == FactorKind::Function) {
      if (f.variable < 1) throw std::invalid_argument("FPFamily: function factor needs a variable");
      copies = std::max(copies, f.variable);
    }
  }
  config_ = Config{copies, false};
}

namespace {

std::vector<Factor> chain_factors(FactorKind kind, int k, bool cycle) {
  std::vector<Factor> out;
  for (int j = 1; j < k; ++j) out.push_back({kind, j, j + 1, kind == FactorKind::Function ? j : 0});
  if (cycle) out.push_back({kind, 1, k, kind == FactorKind::Function ? k : 0});
  return out;
}

}  // namespace

FPFamily FPFamily::a_path(int k) { return FPFamily(k, chain_factors(FactorKind::Function, k, false), false); }
FPFamily FPFamily::a_cycle(int k) { return FPFamily(k, chain_factors(FactorKind::Function, k, true), true); }
FPFamily FPFamily::b_path(int k) { return FPFamily(k, chain_factors(FactorKind::Scalar, k, false), false); }
FPFamily FPFamily::b_cycle(int k) { return FPFamily(k, chain_factors(FactorKind::Scalar, k, true), true); }
FPFamily FPFamily::triangular_path(int n) { return FPFamily(n, chain_factors(FactorKind::Triangular, n, false), false); }

FPFamily FPFamily::triangular_cycle(int n) {
  auto f = chain_factors(FactorKind::Triangular, n, false);
  f.push_back({FactorKind::Triangular, n, 1, 0});
  return FPFamily(n, std::move(f), true);
}

bool FPFamily::all_function() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.kind == FactorKind::Function; });
}

bool FPFamily::star_closed() const {
  return std::none_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.kind == FactorKind::Triangular; });
}

std::string FPFamily::name() const {
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += " * ";
    const char* tag = f.kind == FactorKind::Function ? "A" : f.kind == FactorKind::Scalar ? "B" : "T";
    out += std::string(tag) + "{" + std::to_string(f.a) + "," + std::to_string(f.b) + "}";
    if (f.kind == FactorKind::Function) out += "[t" + std::to_string(f.variable) + "]";
  }
  return (out.empty() ? std::string("D") : out) + " over D_" + std::to_string(k_);
}

int FPWord::degree() const {
  int d = 0;
  for (const auto& l : letters) d += l.word.degree();
  return d;
}

Poly letter_value(const FPFamily& family, const FPLetter& letter) {
  Poly p = Poly::from_word(family.config(), letter.word);
  if (letter.r == letter.s) p -= Poly::constant(family.config(), p.eval0());
  return p;
}

void validate_word(const FPFamily& family, const FPWord& word) {
  const int k = family.k();
  if (word.start < 1 || word.start > k) throw std::invalid_argument("reduced word: start index out of range");
  int at = word.start;
  int last_factor = 0;
  for (const auto& l : word.letters) {
    if (l.factor < 1 || l.factor > family.factor_count()) throw std::invalid_argument("reduced word: unknown factor");
    if (l.r != at) throw std::invalid_argument("reduced word: indices do not chain");
    if (l.factor == last_factor) throw std::invalid_argument("reduced word: consecutive letters from one factor");
    const Factor& f = family.factor(l.factor);
    const EntryKind kind = f.entry_kind(l.r, l.s);
    if (kind == EntryKind::Zero) throw std::invalid_argument("reduced word: entry outside the factor pattern");
    if (kind == EntryKind::Scalar && !l.word.empty()) throw std::invalid_argument("reduced word: scalar entry with a word");
    if (l.r == l.s && l.word.empty()) throw std::invalid_argument("reduced word: diagonal letter needs a nonempty word");
    if (kind == EntryKind::Function && !l.word.empty() && !l.word.uses_only_copy(f.variable))
      throw std::invalid_argument("reduced word: letter uses a foreign variable");
    at = l.s;
    last_factor = l.factor;
  }
}

FPElement::FPElement(std::shared_ptr<const FPFamily> family) : family_(std::move(family)) {
  if (!family_) throw std::invalid_argument("FPElement: null family");
}

FPElement FPElement::one(std::shared_ptr<const FPFamily> family) {
  FPElement out(family);
  for (int r = 1; r <= family->k(); ++r) out.add_term(FPWord{r, {}}, GaussRational(1));
  return out;
}

FPElement FPElement::diagonal_unit(std::shared_ptr<const FPFamily> family, int r) {
  if (r < 1 || r > family->k()) throw std::invalid_argument("diagonal_unit: index out of range");
  return from_word(std::move(family), FPWord{r, {}});
}

FPElement FPElement::from_word(std::shared_ptr<const FPFamily> family, FPWord word, const GaussRational& c) {
  validate_word(*family, word);
  FPElement out(std::move(family));
  out.add_term(word, c);
  return out;
}

FPElement FPElement::factor_element(std::shared_ptr<const FPFamily> family, int i, const MatPoly& x) {
  const int k = family->k();
  if (x.size() != k || !(x.config() == family->config()))
    throw std::invalid_argument("factor_element: matrix size or configuration mismatch");
  FPElement out(family);
  for (int r = 1; r <= k; ++r)
    for (int s = 1; s <= k; ++s) {
      const Poly& e = x(r, s);
      if (e.is_zero()) continue;
      EntryKind kind = EntryKind::Scalar;
      int variable = 0;
      if (i == 0) {
        kind = r == s ? EntryKind::Scalar : EntryKind::Zero;
      } else {
        if (i < 0 || i > family->factor_count()) throw std::invalid_argument("factor_element: unknown factor");
        kind = family->factor(i).entry_kind(r, s);
        variable = family->factor(i).variable;
      }
      if (kind == EntryKind::Zero) throw std::invalid_argument("factor_element: pattern violation");
      if (kind == EntryKind::Scalar && e.degree() > 0) throw std::invalid_argument("factor_element: entry must be scalar");
      if (kind == EntryKind::Function && !e.uses_only_copy(variable))
        throw std::invalid_argument("factor_element: entry uses a foreign variable");
      for (const auto& [w, c] : e.terms()) {
        if (r == s) {
          out.add_term(FPWord{r, {}}, c * (w.eval0_is_one() ? GaussRational(1) : GaussRational(0)));
          if (!w.empty()) out.add_term(FPWord{r, {FPLetter{i, r, r, w}}}, c);
        } else {
          out.add_term(FPWord{r, {FPLetter{i, r, s, w}}}, c);
        }
      }
    }
  return out;
}

int FPElement::degree() const {
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.degree());
  return d;
}

void FPElement::add_term(const FPWord& w, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FPElement& FPElement::operator+=(const FPElement& other) {
  if (!(*family_ == *other.family_)) throw std::invalid_argument("FPElement: family mismatch");
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

FPElement& FPElement::operator-=(const FPElement& other) {
  if (!(*family_ == *other.family_)) throw std::invalid_argument("FPElement: family mismatch");
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

FPElement& FPElement::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

namespace {

void add_into(FPElement::Terms& out, const FPWord& w, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = out.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) out.erase(it);
  }
}

FPWord splice(const FPWord& x, const FPLetter* middle, const FPWord& y) {
  FPWord out{x.start, x.letters};
  if (middle) out.letters.push_back(*middle);
  out.letters.insert(out.letters.end(), y.letters.begin(), y.letters.end());
  return out;
}

void mul_words(const FPFamily& family, const FPWord& x, const FPWord& y, const GaussRational& c, FPElement::Terms& out) {
  if (x.end() != y.start) return;
  if (x.letters.empty()) return add_into(out, y, c);
  if (y.letters.empty()) return add_into(out, x, c);
  const FPLetter& last = x.letters.back();
  const FPLetter& first = y.letters.front();
  if (last.factor != first.factor) return add_into(out, splice(x, nullptr, y), c);

  const Poly p = letter_value(family, last) * letter_value(family, first);
  FPWord head{x.start, std::vector<FPLetter>(x.letters.begin(), x.letters.end() - 1)};
  FPWord tail{first.s, std::vector<FPLetter>(y.letters.begin() + 1, y.letters.end())};
  const int r = last.r, s = first.s;
  for (const auto& [w, cw] : p.terms()) {
    if (r == s && w.empty()) continue;
    const FPLetter merged{last.factor, r, s, w};
    add_into(out, splice(head, &merged, tail), c * cw);
  }
  if (r == s) {
    const GaussRational p0 = p.eval0();
    if (!p0.is_zero()) mul_words(family, head, tail, c * p0, out);
  }
}

}  // namespace

FPElement operator*(const FPElement& a, const FPElement& b) {
  if (!(*a.family_ == *b.family_)) throw std::invalid_argument("fp_mul: family mismatch");
  FPElement out(a.family_);
  for (const auto& [x, cx] : a.terms_)
    for (const auto& [y, cy] : b.terms_) mul_words(*a.family_, x, y, cx * cy, out.terms_);
  return out;
}

FPElement reduce(std::shared_ptr<const FPFamily> family,
                 const std::vector<std::pair<GaussRational, std::vector<FactorElement>>>& raw) {
  FPElement out(family);
  for (const auto& [c, product] : raw) {
    FPElement acc = FPElement::one(family);
    for (const auto& f : product) acc = acc * FPElement::factor_element(family, f.factor, f.value);
    out += c * acc;
  }
  return out;
}

FPElement fp_involute(const FPElement& x) {
  const FPFamily& fam = x.family();
  if (!fam.star_closed()) throw std::invalid_argument("fp_involute: family is not closed under the involution");
  FPElement out(x.family_ptr());
  for (const auto& [w, c] : x.terms()) {
    FPWord v{w.end(), {}};
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
      v.letters.push_back(FPLetter{it->factor, it->s, it->r, it->word.adjoint()});
    out.add_term(v, c.conj());
  }
  return out;
}

std::vector<FPWord> enumerate_reduced_words(const FPFamily& family, int max_length, int max_degree) {
  std::vector<FPWord> out;
  // words t^a w^b of one copy with 0 < a + b <= m, plus the empty word when allowed
  auto copy_words = [&](int variable, int m, bool with_empty) {
    std::vector<Word> ws;
    if (with_empty) ws.emplace_back();
    for (int deg = 1; deg <= m; ++deg)
      for (int b = 0; b <= 1 && b <= deg; ++b) {
        const Syllable syl{variable, deg - b, b, 0};
        ws.push_back(Word::from_syllables(std::span<const Syllable>(&syl, 1)));
      }
    return ws;
  };
  std::vector<FPWord> stack;
  for (int r = 1; r <= family.k(); ++r) stack.push_back(FPWord{r, {}});
  while (!stack.empty()) {
    FPWord w = std::move(stack.back());
    stack.pop_back();
    out.push_back(w);
    if (w.length() >= max_length) continue;
    const int budget = max_degree - w.degree();
    const int last = w.letters.empty() ? 0 : w.letters.back().factor;
    const int r = w.end();
    for (int f = 1; f <= family.factor_count(); ++f) {
      if (f == last) continue;
      const Factor& fac = family.factor(f);
      for (int s = 1; s <= family.k(); ++s) {
        const EntryKind kind = fac.entry_kind(r, s);
        if (kind == EntryKind::Zero) continue;
        std::vector<Word> ws;
        if (kind == EntryKind::Scalar) {
          if (r != s) ws.emplace_back();
        } else {
          ws = copy_words(fac.variable, budget, r != s);
        }
        for (const auto& word : ws) {
          FPWord next = w;
          next.letters.push_back(FPLetter{f, r, s, word});
          stack.push_back(std::move(next));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Config boca_target_config(const FPFamily& family) { return Config{std::max(1, family.factor_count()), false}; }

namespace {

Word recopy(const Word& w, int copy) {
  auto syl = w.syllables();
  for (auto& s : syl) s.copy = copy;
  return Word::from_syllables(syl);
}

}  // namespace

Poly boca_expectation(const FPElement& x) {
  const FPFamily& fam = x.family();
  if (!fam.all_function()) throw std::invalid_argument("boca_expectation: needs a family of function factors");
  const Config target = boca_target_config(fam);
  Poly out(target);
  for (const auto& [w, c] : x.terms()) {
    if (w.start != 1) continue;
    Poly term = Poly::constant(target, c);
    bool vanishes = false;
    for (const auto& l : w.letters) {
      if (l.r != 1 || l.s != 1) {
        vanishes = true;
        break;
      }
      Poly v = Poly::from_word(target, recopy(l.word, l.factor));
      v -= Poly::constant(target, v.eval0());
      term = term * v;
    }
    if (!vanishes) out += term;
  }
  return out;
}

FPElement lambda_lift(std::shared_ptr<const FPFamily> family, const Poly& p) {
  const FPFamily& fam = *family;
  FPElement out(family);
  for (const auto& [w, c] : p.terms()) {
    FPElement acc = FPElement::one(family);
    for (const auto& syl : w.syllables()) {
      if (syl.is_unitary()) throw std::invalid_argument("lambda_lift: unitary letters have no lift");
      if (syl.copy > fam.factor_count() || fam.factor(syl.copy).kind != FactorKind::Function)
        throw std::invalid_argument("lambda_lift: copy has no function factor");
      const Factor& f = fam.factor(syl.copy);
      Syllable moved = syl;
      moved.copy = f.variable;
      const Word word = Word::from_syllables(std::span<const Syllable>(&moved, 1));
      FPElement lam(family);
      for (int r = 1; r <= fam.k(); ++r) {
        if (word.eval0_is_one()) lam.add_term(FPWord{r, {}}, GaussRational(1));
        lam.add_term(FPWord{r, {FPLetter{syl.copy, r, r, word}}}, GaussRational(1));
      }
      acc = acc * lam;
    }
    out += c * acc;
  }
  return out;
}

MatPoly concrete_model(const FPElement& x) {
  const FPFamily& fam = x.family();
  if (fam.is_cycle()) throw std::invalid_argument("concrete_model: cycle families have no letterwise model");
  const Config& cfg = fam.config();
  const int k = fam.k();
  MatPoly out(cfg, k);
  for (const auto& [w, c] : x.terms()) {
    MatPoly m = MatPoly::unit(cfg, k, w.start, w.start);
    for (const auto& l : w.letters) m = m * MatPoly::unit(cfg, k, l.r, l.s, letter_value(fam, l));
    out += c * m;
  }
  return out;
}

namespace {

// Value of a single-copy word t^a w^b at w = q, t = 1 - q^2.
GaussRational eval_at(const Word& w, const GaussRational& q) {
  const GaussRational t = GaussRational(1) - q * q;
  GaussRational v(1);
  for (auto code : w.letters()) v *= is_w_code(code) ? q : t;
  return v;
}

}  // namespace

std::vector<GaussRational> slotwise_representation(const FPElement& x, const SlotPoints& points) {
  const FPFamily& fam = x.family();
  const int k = fam.k();
  const auto nf = static_cast<std::size_t>(fam.factor_count());
  if (points.block.size() < nf || points.diag.size() < nf)
    throw std::invalid_argument("slotwise_representation: missing points");
  std::vector<GaussRational> out(static_cast<std::size_t>(k) * k);
  for (const auto& [w, c] : x.terms()) {
    // a word image is a scalar times e_{start, end}
    GaussRational v = c;
    for (const auto& l : w.letters) {
      const Factor& f = fam.factor(l.factor);
      const bool block = (l.r == f.a || l.r == f.b) && (l.s == f.a || l.s == f.b);
      const auto fi = static_cast<std::size_t>(l.factor - 1);
      const GaussRational& q = block ? points.block[fi] : points.diag[fi].at(static_cast<std::size_t>(l.r - 1));
      GaussRational e = eval_at(l.word, q);
      if (l.r == l.s && l.word.eval0_is_one()) e -= GaussRational(1);
      v *= e;
      if (v.is_zero()) break;
    }
    out[static_cast<std::size_t>((w.start - 1) * k + (w.end() - 1))] += v;
  }
  return out;
}

// Text form -------------------------------------------------------------------------

std::string FPElement::to_string() const {
  if (terms_.empty()) return "0";
  const FPFamily& fam = *family_;
  std::string out;
  for (const auto& [w, c] : terms_) {
    if (!out.empty()) out += " + ";
    if (!c.is_one()) out += c.to_string() + "*";
    if (w.letters.empty()) {
      out += "[0|" + MatPoly::unit(fam.config(), fam.k(), w.start, w.start).to_string() + "]";
      continue;
    }
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
      const FPLetter& l = w.letters[i];
      if (i) out += "*";
      out += "[" + std::to_string(l.factor) + "|" +
             MatPoly::unit(fam.config(), fam.k(), l.r, l.s, letter_value(fam, l)).to_string() + "]";
    }
  }
  return out;
}

namespace {

class FPParser {
public:
  FPParser(std::shared_ptr<const FPFamily> family, std::string_view text) : family_(std::move(family)), text_(text) {}

  FPElement parse() {
    skip_ws();
    FPElement out(family_);
    if (pos_ < text_.size() && text_[pos_] == '0' && rest_is_blank(pos_ + 1)) return out;
    while (true) {
      out += term();
      skip_ws();
      if (pos_ == text_.size()) break;
      expect('+');
    }
    return out;
  }

private:
  bool rest_is_blank(std::size_t from) const {
    for (std::size_t i = from; i < text_.size(); ++i)
      if (text_[i] != ' ') return false;
    return true;
  }

  void skip_ws() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  void expect(char ch) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ch) throw ParseError(std::string("expected '") + ch + "'", pos_);
    ++pos_;
  }

  FPElement term() {
    skip_ws();
    GaussRational coef(1);
    if (pos_ < text_.size() && text_[pos_] != '[') {
      const std::size_t begin = pos_;
      int depth = 0;
      while (pos_ < text_.size()) {
        const char ch = text_[pos_];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == '*' && depth == 0) break;
        ++pos_;
      }
      if (pos_ == text_.size()) throw ParseError("expected '*' after coefficient", begin);
      std::string_view ctext = text_.substr(begin, pos_ - begin);
      while (!ctext.empty() && ctext.back() == ' ') ctext.remove_suffix(1);
      try {
        coef = ctext == "-" ? GaussRational(-1) : GaussRational::parse(ctext);
      } catch (const std::exception&) {
        throw ParseError("bad coefficient", begin);
      }
      ++pos_;
    }
    FPElement acc = FPElement::one(family_);
    while (true) {
      acc = acc * letter();
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    return coef * acc;
  }

  FPElement letter() {
    expect('[');
    skip_ws();
    const std::size_t begin = pos_;
    int factor = 0;
    bool digits = false;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      factor = factor * 10 + (text_[pos_] - '0');
      digits = true;
      ++pos_;
    }
    if (!digits) throw ParseError("expected factor index", begin);
    if (factor > family_->factor_count()) throw ParseError("unknown factor index", begin);
    expect('|');
    const std::size_t jbegin = pos_;
    int depth = 0;
    bool quoted = false;
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (ch == '"') quoted = !quoted;
      if (!quoted && ch == '[') ++depth;
      if (!quoted && ch == ']') {
        if (depth == 0) break;
        --depth;
      }
      ++pos_;
    }
    if (pos_ == text_.size()) throw ParseError("unterminated letter", jbegin);
    const std::string_view jtext = text_.substr(jbegin, pos_ - jbegin);
    ++pos_;
    try {
      const MatPoly m = MatPoly::from_json(family_->config(), nlohmann::json::parse(jtext));
      return FPElement::factor_element(family_, factor, m);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad factor matrix: ") + e.what(), jbegin);
    }
  }

  std::shared_ptr<const FPFamily> family_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FPElement FPElement::parse(std::shared_ptr<const FPFamily> family, std::string_view text) {
  return FPParser(std::move(family), text).parse();
}

}  // namespace maxcover
