#include "maxcover/checks.hpp"

#include "maxcover/freeprod.hpp"
#include "maxcover/hash.hpp"
#include "maxcover/models.hpp"
#include "maxcover/numrep.hpp"
#include "maxcover/rewrite.hpp"
#include "maxcover/span.hpp"
#include "maxcover/subspace_spec.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace maxcover {

using nlohmann::json;

json with_hash(json j) {
  j.erase("hash");
  j["hash"] = sha256_hex(j.dump());
  return j;
}

json CheckResult::to_json() const {
  return {{"id", id}, {"status", pass ? "PASS" : "FAIL"}, {"summary", summary}, {"data", data}, {"hash", sha256_hex(data.dump())}};
}

namespace {

// Helpers -----------------------------------------------------------------------------

GaussRational random_gr(std::mt19937_64& rng, bool complex = true) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  mpq_class re(num(rng), den(rng)), im(complex ? num(rng) : 0, den(rng));
  re.canonicalize();
  im.canonicalize();
  return {re, im};
}

std::vector<Letter> random_letters(std::mt19937_64& rng, const Config& c, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), copy(1, c.copies), kind(0, c.unitary ? 2 : 1);
  std::vector<Letter> out;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    switch (kind(rng)) {
      case 0: out.push_back(Letter::t(copy(rng))); break;
      case 1: out.push_back(Letter::w(copy(rng))); break;
      default: out.push_back(Letter::u(rng() % 2 ? 1 : -1)); break;
    }
  }
  return out;
}

Poly random_poly(std::mt19937_64& rng, const Config& c, int max_terms, int max_len) {
  Poly p(c);
  const int n = static_cast<int>(rng() % static_cast<unsigned>(max_terms + 1));
  for (int i = 0; i < n; ++i) {
    const auto letters = random_letters(rng, c, max_len);
    p += normalize(c, letters, random_gr(rng));
  }
  return p;
}

std::vector<Poly> copy_words(const Config& c, int j, int d) {
  Alphabet a;
  a.t.assign(static_cast<std::size_t>(c.copies), false);
  a.w.assign(static_cast<std::size_t>(c.copies), false);
  a.t[j - 1] = a.w[j - 1] = true;
  std::vector<Poly> out;
  for (const auto& w : enumerate_words(a, d)) out.push_back(Poly::from_word(c, w));
  return out;
}

std::vector<MatPoly> pattern_basis(const Config& c, const AlgebraSpec& spec, int d) {
  std::vector<MatPoly> out;
  for (int r = 1; r <= spec.k; ++r)
    for (int s = 1; s <= spec.k; ++s) {
      const EntryKind kind = spec.kind(r, s);
      if (kind == EntryKind::Zero) continue;
      if (kind == EntryKind::Scalar) {
        out.push_back(MatPoly::unit(c, spec.k, r, s));
        continue;
      }
      for (const auto& w : copy_words(c, spec.variable, d)) out.push_back(MatPoly::unit(c, spec.k, r, s, w));
    }
  return out;
}

template <class Key>
int exact_rank(const std::vector<std::map<Key, GaussRational>>& vectors) {
  std::map<Key, std::map<Key, GaussRational>> pivots;
  int rank = 0;
  for (auto v : vectors) {
    while (!v.empty()) {
      const Key key = v.rbegin()->first;
      auto it = pivots.find(key);
      if (it == pivots.end()) {
        const GaussRational inv = GaussRational(1) / v.rbegin()->second;
        for (auto& [kk, c] : v) c *= inv;
        pivots.emplace(key, std::move(v));
        ++rank;
        break;
      }
      const GaussRational c = v.rbegin()->second;
      for (const auto& [kk, x] : it->second) {
        auto jt = v.find(kk);
        if (jt == v.end()) {
          v.emplace(kk, -(c * x));
        } else {
          jt->second -= c * x;
          if (jt->second.is_zero()) v.erase(jt);
        }
      }
    }
  }
  return rank;
}

using FamilyPtr = std::shared_ptr<const FPFamily>;
FamilyPtr share(FPFamily f) { return std::make_shared<const FPFamily>(std::move(f)); }

std::vector<FPWord> all_words(const FPFamily& f, int max_degree) {
  // letters without a word move along a geodesic, so lengths are bounded by (d + 1) k
  return enumerate_reduced_words(f, (max_degree + 1) * f.k() + 1, max_degree);
}

std::vector<std::vector<GaussRational>> scalar_matrices(const std::vector<MatPoly>& xs) {
  std::vector<std::vector<GaussRational>> out;
  for (const auto& x : xs) {
    const int k = x.size();
    std::vector<GaussRational> m(static_cast<std::size_t>(k) * k);
    for (int r = 1; r <= k; ++r)
      for (int s = 1; s <= k; ++s) m[(r - 1) * k + (s - 1)] = x(r, s).eval0();
    out.push_back(std::move(m));
  }
  return out;
}

CheckResult result(const std::string& id, bool pass, std::string summary, json data) {
  return CheckResult{id, pass, std::move(summary), std::move(data)};
}

std::string join_ints(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out;
}

// Checks ------------------------------------------------------------------------------

CheckResult check_confluence(const CheckParams& p) {
  std::mt19937_64 rng(p.seed);
  const int trials = 1000;
  int mismatches = 0;
  std::size_t steps = 0;
  json first = nullptr;
  for (int i = 0; i < trials; ++i) {
    const Config c{1 + static_cast<int>(rng() % 3), true};
    const auto letters = random_letters(rng, c, 10);
    const GaussRational coef = random_gr(rng);
    RewriteStats sa, sb;
    const Poly a = rewrite_normalize(c, letters, coef, {RedexOrder::Random, rng()}, &sa);
    const Poly b = rewrite_normalize(c, letters, coef, {RedexOrder::Random, rng()}, &sb);
    const Poly ref = normalize(c, letters, coef);
    steps += sa.steps + sb.steps;
    if (!(a == b) || !(a == ref)) {
      if (mismatches++ == 0) first = {{"a", a.to_string()}, {"b", b.to_string()}, {"normalize", ref.to_string()}};
    }
  }
  return result("C-CONFLUENCE", mismatches == 0, std::to_string(trials) + " sequences, " + std::to_string(mismatches) + " mismatches",
                {{"sequences", trials}, {"mismatches", mismatches}, {"rewrite_steps", steps}, {"first_mismatch", first}});
}

CheckResult check_star(const CheckParams&) {
  const Config c{2, false};
  std::vector<Poly> words, low, letters;
  for (const auto& w : enumerate_basis(2, false, 3)) {
    words.push_back(Poly::from_word(c, w));
    if (w.degree() <= 2) low.push_back(words.back());
    if (w.degree() <= 1) letters.push_back(words.back());
  }
  const Poly one = Poly::one(c);
  std::vector<Poly> rels;
  for (int i = 1; i <= 2; ++i) {
    const Poly w = Poly::letter(c, Letter::w(i));
    rels.push_back(w * w + Poly::letter(c, Letter::t(i)));
  }
  long checks = 0, failures = 0;
  auto expect = [&](bool ok) {
    ++checks;
    if (!ok) ++failures;
  };
  for (const auto& rel : rels) expect(rel == one);
  for (const auto& x : words) {
    expect(x.involute().involute() == x);
    for (const auto& y : words) {
      const Poly xy = x * y;
      expect(xy.involute() == y.involute() * x.involute());
      for (const auto& z : letters) expect(xy * z == x * (y * z));
      for (const auto& rel : rels) expect(x * rel * y == xy);
    }
  }
  for (const auto& x : low)
    for (const auto& y : low)
      for (const auto& z : low) expect((x * y) * z == x * (y * z));
  return result("C-STAR", failures == 0, std::to_string(checks) + " identities over " + std::to_string(words.size()) + " words, " +
                                             std::to_string(failures) + " failures",
                {{"basis_words", words.size()}, {"identities", checks}, {"failures", failures}});
}

CheckResult check_omega(const CheckParams& p) {
  const Config c{3, false};
  auto P = [&](const char* s) { return Poly::parse(c, s); };
  json cases = json::array();
  bool ok = true;
  auto record = [&](const std::string& name, bool pass) {
    cases.push_back({{"case", name}, {"pass", pass}});
    ok = ok && pass;
  };
  for (int i = 1; i <= 3; ++i) {
    const Poly w = Poly::letter(c, Letter::w(i)), t = Poly::letter(c, Letter::t(i));
    record("w" + std::to_string(i) + "^2 + t" + std::to_string(i) + " = 1", w * w + t == Poly::one(c));
    record("w" + std::to_string(i) + " t" + std::to_string(i) + " = t" + std::to_string(i) + " w" + std::to_string(i), w * t == t * w);
  }
  const std::vector<Letter> wtw{Letter::w(1), Letter::t(1), Letter::w(1)};
  record("w1 t1 w1 = t1 - t1^2", normalize(c, wtw) == P("t1 - t1^2"));
  const std::vector<Letter> w121{Letter::w(1), Letter::w(2), Letter::w(1)};
  record("w1 w2 w1 is reduced", normalize(c, w121) == P("w1*w2*w1") && normalize(c, w121).terms().begin()->first.syllables().size() == 3);
  record("w1 t1 is one syllable", P("w1*t1").terms().begin()->first.syllables().size() == 1);
  double worst = 0.0;
  for (int m : {1, 3, 6}) {
    const Representation rep = sample(c, m, p.seed, {true, static_cast<std::uint64_t>(m)});
    for (int i = 1; i <= 3; ++i) {
      const CMatrix e = eval(P(("w" + std::to_string(i) + "*w" + std::to_string(i) + " + t" + std::to_string(i)).c_str()), rep);
      worst = std::max(worst, (e - CMatrix::Identity(m, m)).cwiseAbs().maxCoeff());
    }
  }
  record("sampled W^2 + T = I within 1e-12", worst <= 1e-12);
  return result("C-OMEGA", ok, std::to_string(cases.size()) + " relation cases", {{"cases", cases}, {"max_numeric_error", worst}});
}

// Letters are indexed t_i = 2(i-1), w_i = 2(i-1)+1, u = 2n, u^-1 = 2n+1.
bool forbidden_pair(int n, int x, int y) {
  if (x >= 2 * n || y >= 2 * n) return x >= 2 * n && y >= 2 * n && x != y;
  return (x % 2 == 1) && (x / 2 == y / 2);
}

// Brute force: letter strings without a forbidden adjacent pair are the normal words.
std::size_t count_normal_strings(int n, bool unitary, int d) {
  const int alphabet = 2 * n + (unitary ? 2 : 0);
  auto forbidden = [n](int x, int y) { return forbidden_pair(n, x, y); };
  std::size_t total = 0;
  std::vector<int> last_letters{-1};
  for (int len = 0; len <= d; ++len) {
    total += last_letters.size();
    std::vector<int> next;
    for (int s : last_letters)
      for (int a = 0; a < alphabet; ++a)
        if (s < 0 || !forbidden(s, a)) next.push_back(a);
    last_letters = std::move(next);
  }
  return total;
}

bool is_normal_string(int n, const Word& w) {
  const auto codes = w.letters();
  auto index = [n](LetterCode c) { return c == kUnitaryCode ? 2 * n : c == kUnitaryInvCode ? 2 * n + 1 : static_cast<int>(c); };
  for (std::size_t i = 1; i < codes.size(); ++i)
    if (forbidden_pair(n, index(codes[i - 1]), index(codes[i]))) return false;
  return true;
}

CheckResult check_dense(const CheckParams& p) {
  json table = json::array();
  bool ok = true;
  for (int n = 1; n <= 3; ++n)
    for (bool u : {false, true})
      for (int d = 0; d <= 4; ++d) {
        const auto words = enumerate_basis(n, u, d);
        const std::size_t oracle = count_normal_strings(n, u, d);
        const bool sorted = std::is_sorted(words.begin(), words.end()) &&
                            std::adjacent_find(words.begin(), words.end()) == words.end();
        ok = ok && sorted && words.size() == oracle;
        if (d == 4 || (n == 2 && !u)) table.push_back({{"n", n}, {"unitary", u}, {"d", d}, {"count", words.size()}, {"oracle", oracle}});
      }
  ok = ok && enumerate_basis(2, false, 1).size() == 5 && enumerate_basis(2, false, 2).size() == 17 &&
       enumerate_basis(1, false, 3).size() == 7;
  std::mt19937_64 rng(p.seed);
  int outside = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Config c{1 + static_cast<int>(rng() % 3), rng() % 2 == 0};
    const auto letters = random_letters(rng, c, 8);
    const Poly q = normalize(c, letters);
    for (const auto& [w, coef] : q.terms()) {
      if (w.degree() > static_cast<int>(letters.size())) ++outside;
      if (!is_normal_string(c.copies, w)) ++outside;
    }
  }
  ok = ok && outside == 0;
  return result("C-DENSE", ok, "basis counts match the string oracle; " + std::to_string(outside) + " normalize outputs that are not normal strings",
                {{"counts", table}, {"non_normal_outputs", outside}});
}

CheckResult check_lambda(const CheckParams&) {
  bool ok = true;
  long pairs = 0;
  for (int k = 2; k <= 4; ++k)
    for (int j = 1; j <= k; ++j) {
      const Config c{k, false};
      const auto fs = copy_words(c, j, 3);
      ok = ok && lambda_embed(Poly::one(c), j, k) == MatPoly::identity(c, k);
      for (const auto& f : fs) {
        const MatPoly lf = lambda_embed(f, j, k);
        ok = ok && lf(1, 1) == f && lf.involute() == lambda_embed(f.involute(), j, k) && AlgebraSpec::A(j, k).admits(lf);
        for (const auto& g : fs) {
          ok = ok && lambda_embed(f * g, j, k) == lf * lambda_embed(g, j, k);
          ++pairs;
        }
      }
    }
  // the induced map on the free product: G is a left inverse, and images are independent
  json lifts = json::array();
  for (int k = 3; k <= 4; ++k) {
    const auto fam = share(FPFamily::a_path(k));
    const Config target = boca_target_config(*fam);
    std::vector<std::map<FPWord, GaussRational>> images;
    bool left_inverse = true;
    const auto words = enumerate_basis(k - 1, false, 3);
    for (const auto& w : words) {
      const Poly q = Poly::from_word(target, w);
      const FPElement x = lambda_lift(fam, q);
      left_inverse = left_inverse && boca_expectation(x) == q;
      images.emplace_back(x.terms().begin(), x.terms().end());
    }
    const int rank = exact_rank(images);
    ok = ok && left_inverse && rank == static_cast<int>(words.size());
    lifts.push_back({{"k", k}, {"words", words.size()}, {"rank", rank}, {"left_inverse", left_inverse}});
  }
  return result("C-LAMBDA", ok, std::to_string(pairs) + " multiplicativity pairs; lifted words independent",
                {{"pairs", pairs}, {"lift", lifts}});
}

CheckResult check_expe(const CheckParams&) {
  long checks = 0, failures = 0;
  auto expect = [&](bool v) {
    ++checks;
    if (!v) ++failures;
  };
  for (int k = 2; k <= 4; ++k)
    for (int j = 1; j <= k; ++j) {
      const Config c{k, false};
      const AlgebraSpec spec = AlgebraSpec::A(j, k);
      const auto fs = copy_words(c, j, 3);
      expect(cond_exp_E(spec, MatPoly::identity(c, k)) == MatPoly::identity(c, k));
      for (int r = 1; r <= k; ++r) {
        const MatPoly e = cond_exp_E(spec, MatPoly::unit(c, k, r, r));
        expect(e == (r == 1 ? MatPoly::identity(c, k) : MatPoly(c, k)));
      }
      for (const auto& x : pattern_basis(c, spec, 3)) {
        const MatPoly ex = cond_exp_E(spec, x);
        expect(cond_exp_E(spec, ex) == ex);
        for (const auto& f : fs)
          for (const auto& g : fs) {
            const MatPoly lf = lambda_embed(f, j, k), lg = lambda_embed(g, j, k);
            expect(cond_exp_E(spec, lf * x * lg) == lf * ex * lg);
          }
      }
    }
  return result("C-EXPE", failures == 0, std::to_string(checks) + " identities, " + std::to_string(failures) + " failures",
                {{"identities", checks}, {"failures", failures}, {"k", {2, 3, 4}}});
}

CheckResult check_expf(const CheckParams& p) {
  std::mt19937_64 rng(p.seed);
  const Config c{2, false};
  long failures = 0;
  double worst = 0.0;
  const int per_k = 200;
  for (int k = 2; k <= 4; ++k)
    for (int trial = 0; trial < per_k; ++trial) {
      MatPoly x(c, k);
      for (int r = 1; r <= k; ++r)
        for (int s = 1; s <= k; ++s) x.at(r, s) = random_poly(rng, c, 2, 3);
      const MatPoly fx = cond_exp_F(x);
      if (!(cond_exp_F(fx) == fx)) ++failures;
      std::vector<Poly> d1, d2;
      for (int r = 1; r <= k; ++r) {
        d1.push_back(Poly::constant(c, random_gr(rng)));
        d2.push_back(Poly::constant(c, random_gr(rng)));
      }
      const MatPoly a = MatPoly::diagonal(c, d1), b = MatPoly::diagonal(c, d2);
      if (!(cond_exp_F(a * x * b) == a * fx * b)) ++failures;
      const MatPoly pos = cond_exp_F(x.involute() * x);
      const CMatrix at0 = eval(x, character(c, {0.0, 0.0}));
      for (int r = 1; r <= k; ++r) {
        const GaussRational v = pos(r, r).eval0();
        if (!v.is_real() || sgn(v.re()) < 0) ++failures;
        worst = std::max(worst, std::abs(fx(r, r).eval0().to_complex() - at0(r - 1, r - 1)));
      }
    }
  const bool ok = failures == 0 && worst <= 1e-12;
  return result("C-EXPF", ok, std::to_string(3 * per_k) + " random matrices, " + std::to_string(failures) + " failures",
                {{"samples_per_k", per_k}, {"failures", failures}, {"max_character_error", worst}});
}

CheckResult check_uniteq(const CheckParams&) {
  int pairs = 0, failures = 0;
  for (int k = 2; k <= 5; ++k) {
    const Config c{k, false};
    for (int m = 1; m <= k; ++m)
      for (int n = 1; n <= k; ++n) {
        ++pairs;
        const MatPoly perm = unitary_equiv(c, m, n, k);
        const auto mask = conjugate_pattern(perm, AlgebraSpec::A(m, k));
        const AlgebraSpec dst = AlgebraSpec::A(n, k);
        bool same = perm * perm.involute() == MatPoly::identity(c, k);
        for (int r = 1; r <= k; ++r)
          for (int s = 1; s <= k; ++s) same = same && mask[(r - 1) * k + (s - 1)] == dst.kind(r, s);
        if (!same) ++failures;
      }
  }
  return result("C-UNITEQ", failures == 0, std::to_string(pairs) + " (m, n, k) triples, " + std::to_string(failures) + " failures",
                {{"triples", pairs}, {"failures", failures}});
}

CheckResult check_mk(const CheckParams& p) {
  const int k = std::max(2, p.k);
  const Config c{1, false};
  const auto gens = b_factor_generators(c, k, k - 1);
  GenerateOptions opt;
  opt.budget = p.budget;
  const int dim = generated_algebra(c, k, gens, 0, 2, opt).dim();
  const int oracle = scalar_closure_dimension(k, scalar_matrices(gens));
  // the same matrix units inside the free product of the B factors
  const auto fam = share(FPFamily::b_path(k));
  const auto words = enumerate_reduced_words(*fam, 2 * k, 0);
  std::map<std::pair<int, int>, FPElement> units;
  for (const auto& w : words) units.emplace(std::make_pair(w.start, w.end()), FPElement::from_word(fam, w));
  bool relations = units.size() == static_cast<std::size_t>(k * k);
  FPElement sum(fam);
  for (int r = 1; r <= k && relations; ++r) {
    sum += units.at({r, r});
    for (int s = 1; s <= k; ++s)
      for (int m = 1; m <= k; ++m)
        for (int n = 1; n <= k; ++n) {
          const FPElement prod = units.at({r, s}) * units.at({m, n});
          relations = relations && (s == m ? prod == units.at({r, n}) : prod.is_zero());
        }
  }
  relations = relations && sum == FPElement::one(fam);
  const bool ok = dim == k * k && oracle == k * k && relations;
  return result("C-MK", ok, "k = " + std::to_string(k) + ", dim " + std::to_string(dim) + ", oracle " + std::to_string(oracle),
                {{"k", k}, {"dim", dim}, {"oracle", oracle}, {"free_product_words", words.size()}, {"matrix_unit_relations", relations}});
}

CheckResult check_cyclemu(const CheckParams& p) {
  const int k = std::max(2, p.k);
  const auto fam = share(FPFamily::b_cycle(k));
  const int max_len = 2 * k;
  const auto words = enumerate_reduced_words(*fam, max_len, 0);
  std::vector<int> per_length(static_cast<std::size_t>(max_len) + 1, 0);
  for (const auto& w : words) ++per_length[static_cast<std::size_t>(w.length())];
  bool counts = per_length[0] == k;
  for (int l = 1; l <= max_len; ++l) counts = counts && per_length[static_cast<std::size_t>(l)] == 2 * k;
  // the loop around the cycle from every vertex is a unitary with independent powers
  FPElement v(fam);
  for (int r = 1; r <= k; ++r) {
    FPWord w{r, {}};
    int at = r;
    for (int step = 0; step < k; ++step) {
      const int next = at == k ? 1 : at + 1;
      const int factor = at == k ? k : at;
      w.letters.push_back(FPLetter{factor, at, next, Word()});
      at = next;
    }
    v.add_term(w, GaussRational(1));
  }
  const FPElement one = FPElement::one(fam);
  const bool unitary = v * fp_involute(v) == one && fp_involute(v) * v == one;
  std::vector<std::map<FPWord, GaussRational>> powers;
  FPElement acc = one;
  for (int i = 0; i < 4; ++i) {
    powers.emplace_back(acc.terms().begin(), acc.terms().end());
    acc = acc * v;
  }
  const int rank = exact_rank(powers);
  const Config c{1, false};
  const auto gens = b_factor_generators(c, k, k);
  const int dim = generated_algebra(c, k, gens, 0, 2).dim();
  const int oracle = scalar_closure_dimension(k, scalar_matrices(gens));
  const bool ok = counts && unitary && rank == 4 && dim == k * k && oracle == k * k;
  return result("C-CYCLEMU", ok, "k = " + std::to_string(k) + ", loop unitary " + (unitary ? "yes" : "no") + ", power rank " + std::to_string(rank),
                {{"k", k}, {"words_per_length", per_length}, {"loop_unitary", unitary}, {"loop_power_rank", rank},
                 {"scalar_dim", dim}, {"oracle", oracle}});
}

CheckResult check_graphdecomp(const CheckParams& p) {
  const int n = std::max(2, p.k);
  const auto fam = share(FPFamily::triangular_path(n));
  const auto words = enumerate_reduced_words(*fam, 2 * n, 0);
  std::set<std::pair<int, int>> images;
  bool units = true;
  for (const auto& w : words) {
    const MatPoly m = concrete_model(FPElement::from_word(fam, w));
    units = units && w.start <= w.end() && m == MatPoly::unit(fam->config(), n, w.start, w.end());
    images.insert({w.start, w.end()});
  }
  bool hom = true;
  for (const auto& x : words)
    for (const auto& y : words) {
      const FPElement a = FPElement::from_word(fam, x), b = FPElement::from_word(fam, y);
      hom = hom && concrete_model(a * b) == concrete_model(a) * concrete_model(b);
    }
  const Config c{1, false};
  std::vector<MatPoly> gens;
  for (int r = 1; r <= n; ++r) gens.push_back(MatPoly::unit(c, n, r, r));
  for (int r = 1; r < n; ++r) gens.push_back(MatPoly::unit(c, n, r, r + 1));
  GenerateOptions opt;
  opt.include_adjoints = false;
  const int dim = generated_algebra(c, n, gens, 0, 1, opt).dim();
  const auto cyc = enumerate_reduced_words(FPFamily::triangular_cycle(n), 2 * n, 0);
  const bool cycle_counts = cyc.size() == static_cast<std::size_t>(n * (2 * n + 1));
  const int expect = n * (n + 1) / 2;
  const bool ok = words.size() == static_cast<std::size_t>(expect) && images.size() == words.size() && units && hom &&
                  dim == expect && cycle_counts;
  return result("C-GRAPHDECOMP", ok, "n = " + std::to_string(n) + ", " + std::to_string(words.size()) + " reduced words onto " +
                                         std::to_string(images.size()) + " matrix units",
                {{"n", n}, {"reduced_words", words.size()}, {"distinct_images", images.size()}, {"upper_triangular_dim", dim},
                 {"cycle_words_up_to_length_2n", cyc.size()}});
}

CheckResult check_maxfp(const CheckParams& p) {
  const int n = std::clamp(p.k, 2, 4);
  const Config c{n - 1, false};
  GenerateOptions opt;
  opt.budget = p.budget;
  std::vector<MatPoly> adjacent;
  for (int r = 1; r <= n; ++r) adjacent.push_back(triangular_unit(c, n, r, r));
  for (int r = 1; r < n; ++r) adjacent.push_back(triangular_unit(c, n, r, r + 1));
  const int D = p.working_degree();
  const Basis from_blocks = generated_algebra(c, n, adjacent, p.d, D, opt);
  const Basis from_all = generated_algebra(c, n, triangular_units(c, n), p.d, D, opt);
  const bool ok = from_blocks == from_all;
  return result("C-MAXFP", ok, "n = " + std::to_string(n) + ", blocks generate dim " + std::to_string(from_blocks.dim()) + " vs " + std::to_string(from_all.dim()),
                {{"n", n}, {"d", p.d}, {"D", D}, {"dim_from_blocks", from_blocks.dim()}, {"dim_from_all_units", from_all.dim()},
                 {"hash", from_blocks.content_hash()}});
}

bool closure_holds(const Basis& compiled, const Basis& doubled, long* products) {
  const auto elems = compiled.elements();
  for (const auto& x : elems)
    for (const auto& y : elems) {
      ++*products;
      if (!doubled.contains(x * y)) return false;
    }
  return true;
}

CheckResult check_tmax2(const CheckParams& p) {
  const Config c{1, false};
  const int D = p.working_degree();
  GenerateOptions opt;
  opt.budget = p.budget;
  const SubspaceSpec spec = SubspaceSpec::parse(c, tmax2_spec_text());
  const Basis compiled = compile_spec(spec, p.d, D);
  const Basis gen = generated_algebra(c, 2, triangular_units(c, 2), p.d, D, opt);
  long products = 0;
  const bool closed = closure_holds(compiled, compile_spec(spec, 2 * p.d, 2 * p.d + 2), &products);
  const bool ok = gen == compiled && closed;
  std::vector<int> dims;
  for (int r = 1; r <= 2; ++r)
    for (int s = 1; s <= 2; ++s) dims.push_back(gen.entry_dim(r, s));
  return result("C-TMAX2", ok, "d = " + std::to_string(p.d) + ", entry dims " + join_ints(dims),
                {{"d", p.d}, {"D", D}, {"entry_dims", dims}, {"compiled_dim", compiled.dim()}, {"generated_dim", gen.dim()},
                 {"closure_products", products}, {"closed", closed}, {"hash", gen.content_hash()}});
}

CheckResult check_tmax3(const CheckParams& p) {
  const Config c{2, false};
  const int D = p.working_degree();
  GenerateOptions opt;
  opt.budget = p.budget;
  const SubspaceSpec spec = SubspaceSpec::parse(c, tmax3_spec_text());
  const Basis compiled = compile_spec(spec, p.d, D);
  const Basis gen = generated_algebra(c, 3, triangular_units(c, 3), p.d, D, opt);
  long products = 0;
  const bool closed = closure_holds(compiled, compile_spec(spec, 2 * p.d, 2 * p.d + 2), &products);
  const auto oracle = tmax3_dimension_oracle(p.d);
  std::vector<int> gen_dims, spec_dims;
  for (int r = 1; r <= 3; ++r)
    for (int s = 1; s <= 3; ++s) {
      gen_dims.push_back(gen.entry_dim(r, s));
      spec_dims.push_back(compiled.entry_dim(r, s));
    }
  const bool ok = closed && gen == compiled && gen_dims == oracle && spec_dims == oracle;
  return result("C-TMAX3", ok, "d = " + std::to_string(p.d) + ", entry dims " + join_ints(gen_dims) + ", oracle " + join_ints(oracle),
                {{"d", p.d}, {"D", D}, {"generated_entry_dims", gen_dims}, {"compiled_entry_dims", spec_dims}, {"oracle_entry_dims", oracle},
                 {"generated_equals_compiled", gen == compiled}, {"closure_products", products}, {"closed", closed},
                 {"hash", gen.content_hash()}});
}

CheckResult check_contractive(const std::string& id, int n, const CheckParams& p) {
  ContractivityOptions o;
  o.samples = p.samples;
  o.dims = p.dims;
  o.seed = p.seed;
  json reports = json::array();
  bool ok = true;
  double worst = 0.0, gap = 0.0;
  for (int l = 1; l <= 3; ++l) {
    const auto r = check_embedding_contractive(n, l, o);
    ok = ok && r.pass;
    worst = std::max(worst, r.max_violation);
    gap = std::max(gap, r.character_gap);
    reports.push_back(r.to_json());
  }
  std::ostringstream s;
  s << "T" << n << ", amplifications 1..3, " << p.samples << " samples each, max violation " << worst << ", character gap " << gap;
  return result(id, ok, s.str(), {{"reports", reports}});
}

CheckResult check_boca(const CheckParams& p) {
  const int k = std::max(2, p.k);
  const auto fam = share(FPFamily::a_path(k));
  const Config target = boca_target_config(*fam);
  const auto words = all_words(*fam, 3);
  int idempotent_fail = 0, counted = 0;
  for (const auto& w : words) {
    if (w.length() > 3) continue;
    ++counted;
    const Poly g = boca_expectation(FPElement::from_word(fam, w));
    if (!(boca_expectation(lambda_lift(fam, g)) == g)) ++idempotent_fail;
  }
  int restriction_fail = 0, precondition_fail = 0;
  for (int i = 1; i <= fam->factor_count(); ++i) {
    const Config& cfg = fam->config();
    for (const auto& x : pattern_basis(cfg, AlgebraSpec::A(i, k, fam->factor(i).variable), 3)) {
      // E_i(x) = diag(x_11) in the variable of factor i, read in the target copy i
      Poly e11(target);
      for (const auto& [word, coef] : x(1, 1).terms()) {
        auto syl = word.syllables();
        for (auto& s : syl) s.copy = i;
        e11.add_term(Word::from_syllables(syl), coef);
      }
      if (!(boca_expectation(FPElement::factor_element(fam, i, x)) == e11)) ++restriction_fail;
    }
    for (int r = 1; r <= k; ++r)
      if (!(boca_expectation(FPElement::factor_element(fam, i, MatPoly::unit(cfg, k, r, r))) ==
            (r == 1 ? Poly::one(target) : Poly(target))))
        ++precondition_fail;
  }
  const bool unital = boca_expectation(FPElement::one(fam)) == Poly::one(target);
  std::vector<MatPoly> images;
  for (const auto& w : all_words(*fam, 2))
    if (w.length() <= 3) images.push_back(MatPoly::unit(target, 1, 1, 1, boca_expectation(FPElement::from_word(fam, w))));
  const int image_dim = span_of(target, 1, images, 2, 2).dim();
  const int target_dim = static_cast<int>(enumerate_basis(k - 1, false, 2).size());
  const bool ok = unital && idempotent_fail == 0 && restriction_fail == 0 && precondition_fail == 0 && image_dim == target_dim;
  return result("C-BOCA", ok, "k = " + std::to_string(k) + ", image dim " + std::to_string(image_dim) + " of " + std::to_string(target_dim),
                {{"k", k}, {"words_checked", counted}, {"idempotence_failures", idempotent_fail}, {"restriction_failures", restriction_fail},
                 {"precondition_failures", precondition_fail}, {"unital", unital}, {"image_dim_degree_2", image_dim},
                 {"target_dim_degree_2", target_dim}});
}

CheckResult check_model(const CheckParams& p) {
  std::mt19937_64 rng(p.seed);
  json per_k = json::array();
  bool hom_ok = true, inj_ok = true, gen_ok = true;
  const int total_pairs = 500;
  for (int k = 2; k <= 4; ++k) {
    const auto fam = share(FPFamily::a_path(k));
    const Config& cfg = fam->config();
    const auto words = all_words(*fam, 3);
    std::vector<FPWord> short_words;
    for (const auto& w : words)
      if (w.length() <= 3) short_words.push_back(w);
    // homomorphism on random pairs of short words
    const int pairs = k == 4 ? total_pairs - 2 * (total_pairs / 3) : total_pairs / 3;
    int hom_fail = 0;
    for (int i = 0; i < pairs; ++i) {
      const auto x = FPElement::from_word(fam, short_words[rng() % short_words.size()], random_gr(rng));
      const auto y = FPElement::from_word(fam, short_words[rng() % short_words.size()], random_gr(rng));
      if (!(concrete_model(x * y) == concrete_model(x) * concrete_model(y))) ++hom_fail;
    }
    hom_ok = hom_ok && hom_fail == 0;

    // independence of the images of distinct reduced words
    std::vector<MatPoly> images, block_images;
    std::map<std::string, FPWord> seen;
    json collision = nullptr;
    int collisions = 0;
    for (const auto& w : words) {
      const MatPoly m = concrete_model(FPElement::from_word(fam, w));
      images.push_back(m);
      bool block_only = true;
      for (const auto& l : w.letters) {
        const Factor& f = fam->factor(l.factor);
        block_only = block_only && (l.r == f.a || l.r == f.b) && (l.s == f.a || l.s == f.b);
      }
      if (block_only) block_images.push_back(m);
      auto [it, inserted] = seen.emplace(m.to_string(), w);
      if (!inserted && collisions++ == 0) {
        const FPElement a = FPElement::from_word(fam, it->second), b = FPElement::from_word(fam, w);
        SlotPoints pts;
        int q = 2;
        for (int f = 1; f <= fam->factor_count(); ++f) {
          pts.block.emplace_back(mpq_class(1, q++));
          std::vector<GaussRational> row;
          for (int r = 1; r <= k; ++r) row.emplace_back(mpq_class(1, q++));
          pts.diag.push_back(row);
        }
        collision = {{"first", a.to_string()},
                     {"second", b.to_string()},
                     {"image", m.to_string()},
                     {"separated_by_slotwise_representation", slotwise_representation(a, pts) != slotwise_representation(b, pts)}};
      }
    }
    const int rank = span_of(cfg, k, images, 3, 3).dim();
    const int block_rank = span_of(cfg, k, block_images, 3, 3).dim();
    const bool independent = rank == static_cast<int>(words.size());
    inj_ok = inj_ok && independent;

    // the images of the factor generators reach every e_rs ⊗ w of degree <= 2
    GenerateOptions opt;
    opt.budget = p.budget;
    const Basis gen = generated_algebra(cfg, k, a_path_model_generators(cfg, k), 2, 4, opt);
    const auto target_words = enumerate_basis(k - 1, false, 2);
    bool reaches = gen.dim() == k * k * static_cast<int>(target_words.size());
    for (int r = 1; r <= k && reaches; ++r)
      for (int s = 1; s <= k && reaches; ++s)
        for (const auto& w : target_words) reaches = reaches && gen.contains(MatPoly::unit(cfg, k, r, s, Poly::from_word(cfg, w)));
    gen_ok = gen_ok && reaches;

    per_k.push_back({{"k", k},
                     {"homomorphism_pairs", pairs},
                     {"homomorphism_failures", hom_fail},
                     {"reduced_words_degree_3", words.size()},
                     {"image_rank", rank},
                     {"rank_deficit", static_cast<int>(words.size()) - rank},
                     {"block_letter_words", block_images.size()},
                     {"block_letter_rank", block_rank},
                     {"identical_image_pairs", collisions},
                     {"example_identical_images", collision},
                     {"generated_dim_degree_2", gen.dim()},
                     {"reaches_all_units", reaches}});
  }
  const bool ok = hom_ok && inj_ok && gen_ok;
  std::string summary = std::string("homomorphism ") + (hom_ok ? "ok" : "FAILED") + ", injectivity on degree <= 3 words " +
                        (inj_ok ? "ok" : "FAILED") + ", generation " + (gen_ok ? "ok" : "FAILED");
  return result("C-MODEL", ok, summary,
                {{"per_k", per_k}, {"homomorphism", hom_ok}, {"injective_on_words", inj_ok}, {"generation", gen_ok}});
}

std::vector<CheckInfo> build_registry() {
  std::vector<CheckInfo> r = {
      {"C-BOCA", "free-product expectation G: unital, idempotent, E_i on factors, onto degree <= 2", "boca-expectation", check_boca},
      {"C-CONFLUENCE", "1000 random letter sequences rewrite to one normal form under two random strategies", "dense-word-decomposition",
       check_confluence},
      {"C-CYCLEMU", "B-cycle free product: matrix units, loop unitary with independent powers", "b-cycle-graph-algebra", check_cyclemu},
      {"C-DENSE", "normal words: counts, order and closure of normalize", "dense-word-decomposition", check_dense},
      {"C-EXPE", "E_{j,k}: idempotent, unital, lambda-bimodule, E(D_k) scalar", "expectation-E", check_expe},
      {"C-EXPF", "F_{j,k}: idempotent, D_k-bimodule, positive, equals the zero character", "expectation-F", check_expf},
      {"C-GRAPHDECOMP", "triangular factors over D_n: reduced words are the paths of the graph", "graph-decomposition",
       check_graphdecomp},
      {"C-LAMBDA", "lambda_{j,k} is a unital *-homomorphism; the induced free-product map is injective on words", "lambda-embedding",
       check_lambda},
      {"C-MAXFP", "the T2 blocks generate the whole embedded T_n algebra", "free-product-covers", check_maxfp},
      {"C-MK", "B-factor generators give k^2 matrix units", "b-path-graph-algebra", check_mk},
      {"C-MODEL", "matrix model of the A-path free product: homomorphism, injectivity on words, generation", "a-path-structure",
       check_model},
      {"C-OMEGA", "relations of w = sqrt(1 - t)", "omega-relation", check_omega},
      {"C-STAR", "*-algebra axioms over basis words of degree <= 3", "dense-word-decomposition", check_star},
      {"C-T2CC", "sampled contractivity of the T2 embedding", "tmax2-cover",
       [](const CheckParams& p) { return check_contractive("C-T2CC", 2, p); }},
      {"C-T3CC", "sampled contractivity of the T3 embedding", "tmax3-cover",
       [](const CheckParams& p) { return check_contractive("C-T3CC", 3, p); }},
      {"C-TMAX2", "generated algebra of the embedded T2 equals its description", "tmax2-cover", check_tmax2},
      {"C-TMAX3", "generated algebra of the embedded T3 equals its description; closure", "tmax3-cover", check_tmax3},
      {"C-UNITEQ", "permutations carry A(m,k) onto A(n,k)", "matrix-algebra-families", check_uniteq},
  };
  std::sort(r.begin(), r.end(), [](const CheckInfo& a, const CheckInfo& b) { return a.id < b.id; });
  return r;
}

// Exploration -------------------------------------------------------------------------

std::vector<int> per_degree(const std::vector<int>& cumulative) {
  std::vector<int> out;
  for (std::size_t i = 0; i < cumulative.size(); ++i) out.push_back(cumulative[i] - (i ? cumulative[i - 1] : 0));
  return out;
}

json basis_summary(const Basis& b) {
  std::vector<int> entry_dims;
  for (int r = 1; r <= b.size(); ++r)
    for (int s = 1; s <= b.size(); ++s) entry_dims.push_back(b.entry_dim(r, s));
  return {{"dim", b.dim()}, {"dims_by_degree", b.dims_by_degree()}, {"entry_dims", entry_dims}, {"hash", b.content_hash()}};
}

bool all_contained(const Basis& small, const Basis& big) {
  for (const auto& x : small.elements())
    if (!big.contains(x)) return false;
  return true;
}

bool product_in_entry(const Basis& scalar, const Basis& big, int r, int s) {
  for (const auto& x : scalar.elements())
    if (!big.contains(MatPoly::unit(big.config(), big.size(), r, s, x(1, 1)))) return false;
  return true;
}

}  // namespace

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> registry = build_registry();
  return registry;
}

const CheckInfo* find_check(const std::string& id) {
  for (const auto& c : check_registry())
    if (c.id == id) return &c;
  return nullptr;
}

std::vector<CheckResult> run_checks(const std::vector<const CheckInfo*>& checks, const CheckParams& params, int threads) {
  std::vector<CheckResult> out(checks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < checks.size(); i = next++) {
      try {
        out[i] = checks[i]->run(params);
      } catch (const std::exception& e) {
        out[i] = CheckResult{checks[i]->id, false, std::string("error: ") + e.what(), {{"error", e.what()}}};
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(checks.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

std::vector<int> tmax3_dimension_oracle(int d) {
  // t-words in two copies of degree <= m: 2^(m+1) - 1.  w1 x w1 with x a t-word lies in
  // C<t1> when x is a power of t1 and is a new word of degree |x| + 2 otherwise.
  auto t_words = [](int m) { return m < 0 ? 0 : (1 << (m + 1)) - 1; };
  auto t_words_with_t2 = [&](int m) { return m < 0 ? 0 : t_words(m) - (m + 1); };
  const int diag = (d + 1) + t_words_with_t2(d - 2);
  const int one_w = t_words(d - 1);
  const int two_w = t_words(d - 2);
  return {diag, one_w, two_w, one_w, t_words(d), one_w, two_w, one_w, diag};
}

json explore_t4(int d, int D, std::size_t budget) {
  if (d < 0 || D < d) throw std::invalid_argument("explore-t4 needs 0 <= d <= D");
  const Config c{3, false};
  GenerateOptions opt;
  opt.budget = budget;
  const Basis product = compile_spec(SubspaceSpec::parse(c, t4_product_spec_text()), d, D);
  const Basis gen = generated_algebra(c, 4, triangular_units(c, 4), d, D, opt);
  std::vector<int> prod_cum, gen_cum;
  for (int e = 0; e <= d; ++e) {
    prod_cum.push_back(product.restricted(e).dim());
    gen_cum.push_back(gen.restricted(e).entry_dim(1, 4));
  }
  const auto prod_deg = per_degree(prod_cum), gen_deg = per_degree(gen_cum);
  std::vector<int> gap;
  for (std::size_t i = 0; i < prod_deg.size(); ++i) gap.push_back(gen_deg[i] - prod_deg[i]);
  json out = {{"command", "explore-t4"},
              {"d", d},
              {"D", D},
              {"product_form", {{"description", t4_product_spec_text()}, {"dims_by_degree", prod_deg}, {"hash", product.content_hash()}}},
              {"generated_entry_1_4", {{"dims_by_degree", gen_deg}}},
              {"generated", basis_summary(gen)},
              {"gap_by_degree", gap},
              {"product_form_in_generated", product_in_entry(product, gen, 1, 4)}};
  return with_hash(out);
}

json explore_cycle2(int d, int D, std::size_t budget) {
  if (d < 0 || D < d) throw std::invalid_argument("explore-cycle2 needs 0 <= d <= D");
  const Config c{2, true};
  GenerateOptions opt;
  opt.budget = budget;
  const Basis gen = generated_algebra(c, 2, cycle2_generators(c), d, D, opt);
  const Basis cand = compile_spec(SubspaceSpec::parse(c, cycle2_candidate_spec_text()), d, D);
  bool unitary_letters = false;
  for (const auto& coord : gen.coordinates()) unitary_letters = unitary_letters || coord.word.has_unitary();
  json out = {{"command", "explore-cycle2"},
              {"d", d},
              {"D", D},
              {"generated", basis_summary(gen)},
              {"candidate", basis_summary(cand)},
              {"candidate_entry_1_1_dim_d1", cand.restricted(std::min(d, 1)).entry_dim(1, 1)},
              {"generated_has_unitary_letters", unitary_letters},
              {"generated_in_candidate", all_contained(gen, cand)},
              {"candidate_in_generated", all_contained(cand, gen)}};
  return with_hash(out);
}

}  // namespace maxcover
