#include "maxcover/errors.hpp"
#include "maxcover/models.hpp"
#include "maxcover/subspace_spec.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace maxcover;
using maxcover::testing::cfg;
using maxcover::testing::P;

namespace {

// Independent dimension counts for the 𝔄 entries at truncation degree d.  t-words in
// two copies of degree <= m number 2^(m+1) - 1; w1 x and x w1 are distinct normal words
// of degree |x| + 1 for t-words x, w1 x w2 has degree |x| + 2, and w1 x w1 either lies
// in C<t1> (x = t1^a) or is a new word of degree |x| + 2 (x contains t2).
int t_words(int m) { return m < 0 ? 0 : (1 << (m + 1)) - 1; }
int t_words_with_t2(int m) { return m < 0 ? 0 : t_words(m) - (m + 1); }

std::vector<int> tmax3_oracle(int d) {
  const int diag = (d + 1) + t_words_with_t2(d - 2);
  const int one_w = t_words(d - 1);
  const int two_w = t_words(d - 2);
  return {diag, one_w, two_w, one_w, t_words(d), one_w, two_w, one_w, diag};
}

}  // namespace

TEST_SUITE("subspace_spec") {

TEST_CASE("compile examples") {
  const Config c = cfg(2);
  const Basis a = compile_spec(SubspaceSpec::parse(c, "w1*C<t1,t2>*w1"), 1, 3);
  CHECK(a.contains(MatPoly::unit(c, 1, 1, 1, P(c, "1 - t1"))));

  const Basis b = compile_spec(SubspaceSpec::parse(c, "C<t1>"), 2, 4);
  CHECK(b.dim() == 3);
  for (const char* w : {"1", "t1", "t1^2"}) CHECK(b.contains(MatPoly::unit(c, 1, 1, 1, P(c, w))));
  CHECK_FALSE(b.contains(MatPoly::unit(c, 1, 1, 1, P(c, "w1"))));

  CHECK(compile_spec(SubspaceSpec::parse(c, "0"), 3, 5).dim() == 0);
  CHECK(compile_spec(SubspaceSpec::parse(c, "w1*0*t2 + 0"), 3, 5).dim() == 0);
  CHECK(compile_spec(SubspaceSpec::parse(c, "1"), 3, 5).dim() == 1);
  CHECK(compile_spec(SubspaceSpec::parse(c, "C<t1,w1>"), 2, 4).dim() == 5);
}

TEST_CASE("membership in the T3 description") {
  const Config c = cfg(2);
  const SubspaceSpec spec = SubspaceSpec::parse(c, tmax3_spec_text());
  CHECK(spec.size() == 3);
  const Basis a1 = compile_spec(spec, 1, 3);
  CHECK(member(triangular_unit(c, 3, 1, 2), a1));
  CHECK_FALSE(member(MatPoly::unit(c, 3, 1, 1, P(c, "t2")), a1));
  CHECK(member(MatPoly(c, 3), a1));
  CHECK_THROWS_AS(member(MatPoly::unit(c, 3, 1, 1, P(c, "t1^2")), a1), std::invalid_argument);
  const Basis a2 = compile_spec(spec, 2, 4);
  CHECK(member(triangular_unit(c, 3, 1, 3), a2));
  CHECK(member(triangular_unit(c, 3, 2, 3).involute(), a2));
}

TEST_CASE("T3 entry dimensions match the counting oracle") {
  const Config c = cfg(2);
  const SubspaceSpec spec = SubspaceSpec::parse(c, tmax3_spec_text());
  for (int d = 0; d <= 4; ++d) {
    const Basis b = compile_spec(spec, d, d + 2);
    const auto expect = tmax3_oracle(d);
    for (int r = 1; r <= 3; ++r)
      for (int s = 1; s <= 3; ++s) CHECK(b.entry_dim(r, s) == expect[(r - 1) * 3 + (s - 1)]);
  }
}

TEST_CASE("compile_spec is monotone in d and stable in D") {
  const Config c = cfg(2);
  const SubspaceSpec spec = SubspaceSpec::parse(c, tmax3_spec_text());
  for (int d = 0; d <= 3; ++d) {
    const Basis b = compile_spec(spec, d, d + 2);
    CHECK(compile_spec(spec, d, d + 3) == b);
    CHECK(compile_spec(spec, d, d + 4) == b);
    if (d > 0)
      for (const auto& x : compile_spec(spec, d - 1, d + 1).elements()) CHECK(b.contains(x));
  }
}

TEST_CASE("parse errors") {
  const Config c = cfg(2);
  CHECK_THROWS_AS(SubspaceSpec::parse(c, "C<t1"), ParseError);
  CHECK_THROWS_AS(SubspaceSpec::parse(c, "C<t1> & 1"), ParseError);
  CHECK_THROWS_AS(SubspaceSpec::parse(c, "u"), ParseError);
  CHECK_THROWS_AS(SubspaceSpec::parse(c, "2"), ParseError);
  CHECK_THROWS_AS(SubspaceSpec::parse(c, "w1 w1"), ParseError);
  try {
    SubspaceSpec::parse(c, "w1*C<t1,t3>");
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.position() == 8);
    CHECK(std::string(e.what()).find("unknown variable t3") != std::string::npos);
  }
  CHECK(SubspaceSpec::parse(c, "[ 1 & 0 ; 0 & C<t2> ]").size() == 2);
}

}  // TEST_SUITE
