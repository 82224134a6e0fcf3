#include "maxcover/errors.hpp"
#include "maxcover/ncpoly.hpp"
#include "maxcover/rewrite.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <set>

using namespace maxcover;
using maxcover::testing::cfg;
using maxcover::testing::P;

TEST_SUITE("ncpoly") {

TEST_CASE("normalize applies the fixed relations") {
  const Config c = cfg(2);
  const std::vector<Letter> ww{Letter::w(1), Letter::w(1)};
  CHECK(normalize(c, ww) == P(c, "1 - t1"));

  const std::vector<Letter> wt{Letter::w(1), Letter::t(1)};
  Poly p = normalize(c, wt);
  REQUIRE(p.terms().size() == 1);
  const auto syl = p.terms().begin()->first.syllables();
  REQUIRE(syl.size() == 1);
  CHECK(syl[0] == Syllable{1, 1, 1, 0});

  const std::vector<Letter> w121{Letter::w(1), Letter::w(2), Letter::w(1)};
  Poly q = normalize(c, w121);
  REQUIRE(q.terms().size() == 1);
  CHECK(q.terms().begin()->first.syllables().size() == 3);
  CHECK(q.to_string() == "w1*w2*w1");

  // commute then square-reduce: w t w = t w w = t (1 - t)
  const std::vector<Letter> wtw{Letter::w(1), Letter::t(1), Letter::w(1)};
  CHECK(normalize(c, wtw) == P(c, "t1 - t1^2"));
}

TEST_CASE("normalize collapses unitary blocks and re-merges neighbours") {
  const Config c = cfg(2, true);
  const std::vector<Letter> s{Letter::t(1), Letter::u(1), Letter::u(-1), Letter::t(1)};
  CHECK(normalize(c, s) == P(c, "t1^2"));
  const std::vector<Letter> s2{Letter::w(1), Letter::u(2), Letter::u(-2), Letter::w(1)};
  CHECK(normalize(c, s2) == P(c, "1 - t1"));
  const std::vector<Letter> s3{Letter::u(3), Letter::u(-1)};
  CHECK(normalize(c, s3).to_string() == "u^2");
}

TEST_CASE("normalize rejects letters outside the configuration") {
  const std::vector<Letter> bad{Letter::t(3)};
  CHECK_THROWS_AS(normalize(cfg(2), bad), std::invalid_argument);
  const std::vector<Letter> u{Letter::u(1)};
  CHECK_THROWS_AS(normalize(cfg(2, false), u), std::invalid_argument);
  const std::vector<Letter> zero{Letter::u(0)};
  CHECK_THROWS_AS(normalize(cfg(2, true), zero), std::invalid_argument);
}

TEST_CASE("add and scale") {
  const Config c = cfg(2);
  CHECK(P(c, "t1") + Poly(c) == P(c, "t1"));
  CHECK((P(c, "t1") + GaussRational(-1) * P(c, "t1")).is_zero());
  CHECK(P(c, "1 - t1") + P(c, "t1") == Poly::one(c));
  CHECK_THROWS_AS(P(c, "t1") + P(cfg(3), "t1"), std::invalid_argument);
}

TEST_CASE("mul") {
  const Config c = cfg(2);
  Poly t1t2 = P(c, "t1") * P(c, "t2");
  REQUIRE(t1t2.terms().size() == 1);
  CHECK(t1t2.terms().begin()->first.syllables().size() == 2);
  CHECK(P(c, "w1") * P(c, "w1") == P(c, "1 - t1"));
  // (t1 + t2)^2 expanded by hand
  Poly s = P(c, "t1 + t2");
  CHECK(s * s == P(c, "t1^2 + t1*t2 + t2*t1 + t2^2"));
  CHECK(s * s == P(c, "(t1 + t2)^2"));
  CHECK(Poly::one(c) * s == s);
}

TEST_CASE("involute") {
  const Config c = cfg(2, true);
  CHECK(P(c, "t1*t2").involute() == P(c, "t2*t1"));
  CHECK(P(c, "i*w1").involute() == P(c, "-i*w1"));
  CHECK(P(c, "u").involute() * P(c, "u") == Poly::one(c));
  CHECK(P(c, "t1*w1*t2").involute() == P(c, "t2*t1*w1"));
  CHECK(P(c, "u^2*w1").involute() == P(c, "w1*u^-2"));
}

TEST_CASE("degree") {
  const Config c = cfg(2);
  CHECK(P(c, "1 - t1").degree() == 1);
  CHECK(P(c, "w1*t2*w1").degree() == 3);
  CHECK(Poly(c).degree() == 0);
}

TEST_CASE("enumerate_basis matches the forbidden-pattern oracle") {
  auto d1 = enumerate_basis(2, false, 1);
  REQUIRE(d1.size() == 5);
  std::vector<std::string> names;
  for (const auto& w : d1) names.push_back(w.to_string());
  CHECK(names == std::vector<std::string>{"1", "t1", "w1", "t2", "w2"});

  CHECK(enumerate_basis(2, false, 2).size() == 17);
  CHECK(maxcover::testing::count_normal_strings(2, false, 2) == 17);

  auto n1 = enumerate_basis(1, false, 3);
  names.clear();
  for (const auto& w : n1) names.push_back(w.to_string());
  CHECK(names == std::vector<std::string>{"1", "t1", "w1", "t1^2", "t1*w1", "t1^3", "t1^2*w1"});

  for (int n = 1; n <= 3; ++n)
    for (bool u : {false, true})
      for (int d = 0; d <= 4; ++d)
        CHECK(enumerate_basis(n, u, d).size() == maxcover::testing::count_normal_strings(n, u, d));
}

TEST_CASE("enumerate_basis words are distinct, sorted, and cover normalize outputs") {
  const Config c = cfg(2, true);
  auto words = enumerate_basis(2, true, 5);
  std::set<Word> set(words.begin(), words.end());
  CHECK(set.size() == words.size());
  CHECK(std::is_sorted(words.begin(), words.end()));

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    auto letters = maxcover::testing::random_letters(rng, c, 5);
    Poly p = normalize(c, letters);
    CHECK(p.degree() <= static_cast<int>(letters.size()));
    for (const auto& [w, coef] : p.terms()) CHECK(set.count(w) == 1);
  }
}

TEST_CASE("degree does not increase under multiplication") {
  const Config c = cfg(3, true);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Poly p = maxcover::testing::random_poly(rng, c, 3, 4);
    Poly q = maxcover::testing::random_poly(rng, c, 3, 4);
    CHECK((p * q).degree() <= p.degree() + q.degree());
  }
}

TEST_CASE("*-algebra laws over all basis words of degree <= 4 (n = 2)") {
  const Config c = cfg(2);
  auto words = enumerate_basis(2, false, 4);
  std::vector<Poly> polys;
  for (const auto& w : words) polys.push_back(Poly::from_word(c, w));
  for (const auto& p : polys) {
    CHECK(p.involute().involute() == p);
    for (const auto& q : polys) CHECK((p * q).involute() == q.involute() * p.involute());
  }
  auto small = enumerate_basis(2, false, 2);
  for (const auto& x : small)
    for (const auto& y : small)
      for (const auto& z : small) {
        Poly px = Poly::from_word(c, x), py = Poly::from_word(c, y), pz = Poly::from_word(c, z);
        CHECK((px * py) * pz == px * (py * pz));
      }
}

TEST_CASE("relation consistency w_i^2 + t_i = 1") {
  for (int n = 1; n <= 4; ++n) {
    const Config c = cfg(n);
    for (int i = 1; i <= n; ++i) {
      Poly w = Poly::letter(c, Letter::w(i));
      CHECK(w * w + Poly::letter(c, Letter::t(i)) == Poly::one(c));
    }
  }
}

TEST_CASE("canonical printer and parser round-trip") {
  const Config c = cfg(3, true);
  CHECK(P(c, "(3/2+1/2i)*t1*w1*t2").to_string() == "(3/2+1/2i)*t1*w1*t2");
  CHECK(P(c, "  w2 ").to_string() == "w2");
  CHECK(P(c, "u^-2").to_string() == "u^-2");
  CHECK(P(c, "1").to_string() == "1");
  CHECK(P(c, "0").to_string() == "0");
  CHECK(P(c, "t1 - 1").to_string() == "-1 + t1");
  CHECK(P(c, "-i*t2 + 1/2").to_string() == "1/2 - i*t2");

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    Poly p = maxcover::testing::random_poly(rng, c, 4, 6);
    const std::string s = p.to_string();
    Poly back = Poly::parse(c, s);
    CHECK(back == p);
    CHECK(back.to_string() == s);
  }
}

TEST_CASE("parser reports positioned errors") {
  const Config c = cfg(2);
  CHECK_THROWS_AS(Poly::parse(c, "t1 + "), ParseError);
  CHECK_THROWS_AS(Poly::parse(c, "t3"), ParseError);
  CHECK_THROWS_AS(Poly::parse(c, "u"), ParseError);
  CHECK_THROWS_AS(Poly::parse(c, "t1 ^ -1"), ParseError);
  try {
    Poly::parse(c, "t1 + x");
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("eval0 is the character t -> 0, w -> 1, u -> 1") {
  const Config c = cfg(2, true);
  CHECK(P(c, "w1").eval0() == GaussRational(1));
  CHECK(P(c, "t1 + 3*w2*u").eval0() == GaussRational(3));
  CHECK(P(c, "w1*w1").eval0() == GaussRational(1));
  CHECK(P(c, "t1*w2").eval0() == GaussRational(0));
}

TEST_CASE("rewrite strategies agree with the syllable normalizer") {
  const Config c = cfg(3, true);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    auto letters = maxcover::testing::random_letters(rng, c, 10);
    const GaussRational one(1);
    Poly fast = normalize(c, letters);
    CHECK(rewrite_normalize(c, letters, one, {RedexOrder::Leftmost, 0}) == fast);
    CHECK(rewrite_normalize(c, letters, one, {RedexOrder::Rightmost, 0}) == fast);
    CHECK(rewrite_normalize(c, letters, one, {RedexOrder::Random, rng()}) == fast);
  }
}

}  // TEST_SUITE
