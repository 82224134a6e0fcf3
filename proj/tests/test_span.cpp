#include "maxcover/errors.hpp"
#include "maxcover/models.hpp"
#include "maxcover/span.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace maxcover;
using maxcover::testing::cfg;
using maxcover::testing::P;

namespace {

MatPoly scalar(const Config& c, const char* text) { return MatPoly::unit(c, 1, 1, 1, P(c, text)); }

// Oracle: the unital *-algebra generated by e_rr and a set of matrix units e_ab (plus
// adjoints) is the direct sum of full matrix algebras over the connected components.
int component_oracle(int k, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(static_cast<std::size_t>(k) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : edges) parent[find(a)] = find(b);
  std::vector<int> size(static_cast<std::size_t>(k) + 1, 0);
  for (int v = 1; v <= k; ++v) ++size[find(v)];
  int dim = 0;
  for (int s : size) dim += s * s;
  return dim;
}

}  // namespace

TEST_SUITE("span") {

TEST_CASE("span_of examples") {
  const Config c = cfg(2);
  Basis b = span_of(c, 1, {scalar(c, "1 - t1"), scalar(c, "t1")}, 2, 4);
  CHECK(b.contains(scalar(c, "1")));
  CHECK(span_of(c, 1, {scalar(c, "t1")}, 2, 4).dim() == 1);
  CHECK(span_of(c, 1, {scalar(c, "t1*t2"), scalar(c, "t2*t1")}, 2, 4).dim() == 2);
  CHECK_THROWS_AS(span_of(c, 1, {scalar(c, "t1^5")}, 2, 4), std::invalid_argument);
}

TEST_CASE("contains / dim / equal") {
  const Config c = cfg(2);
  Basis b = span_of(c, 1, {scalar(c, "t1")}, 2, 4);
  CHECK(contains(b, scalar(c, "2*t1")));
  CHECK_FALSE(contains(b, scalar(c, "t2")));
  CHECK(contains(b, MatPoly(c, 1)));
  CHECK_THROWS_AS(b.contains(MatPoly(c, 2)), std::invalid_argument);
  CHECK_THROWS_AS(b.contains(MatPoly(cfg(3), 1)), std::invalid_argument);

  Basis big = span_of(c, 2, {MatPoly::unit(c, 2, 1, 2, P(c, "t1 + w2*t1")), MatPoly::unit(c, 2, 2, 2, P(c, "1 - t2")),
                             MatPoly::unit(c, 2, 1, 2, P(c, "w2*t1 - 3*t2")), MatPoly::identity(c, 2)},
                      3, 3);
  CHECK(dim(big) == 4);
  CHECK(equal(big, span_of(c, 2, big.elements(), 3, 3)));
  CHECK(big.content_hash() == span_of(c, 2, big.elements(), 3, 3).content_hash());
}

TEST_CASE("reduced echelon form is canonical") {
  const Config c = cfg(2);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<MatPoly> xs;
    for (int m = 0; m < 5; ++m) xs.push_back(scalar(c, "0") + MatPoly::unit(c, 1, 1, 1, maxcover::testing::random_poly(rng, c, 3, 3)));
    // a dependent combination and a permutation give the same basis
    std::vector<MatPoly> ys = xs;
    ys.push_back(xs[0] + GaussRational(2) * xs[1]);
    std::reverse(ys.begin(), ys.end());
    CHECK(span_of(c, 1, xs, 3, 3) == span_of(c, 1, ys, 3, 3));
    const Basis b = span_of(c, 1, xs, 3, 3);
    for (const auto& row : b.rows()) CHECK(row.back().second.is_one());
  }
}

TEST_CASE("generated_algebra examples") {
  const Config c = cfg(1);
  Basis m2 = generated_algebra(c, 2, {MatPoly::unit(c, 2, 1, 1), MatPoly::unit(c, 2, 2, 2), MatPoly::unit(c, 2, 1, 2)}, 0, 2);
  CHECK(m2.dim() == 4);

  Basis m3 = generated_algebra(c, 3, b_factor_generators(c, 3, 2), 0, 2);
  CHECK(m3.dim() == 9);

  const Config c2 = cfg(2);
  Basis t = generated_algebra(c2, 3, {triangular_unit(c2, 3, 1, 1), triangular_unit(c2, 3, 1, 2)}, 1, 3);
  CHECK(t.contains(MatPoly::unit(c2, 3, 1, 1, P(c2, "t1"))));
}

TEST_CASE("generated_algebra agrees with the component oracle on scalar matrix units") {
  const Config c = cfg(1);
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 4);
    std::vector<std::pair<int, int>> edges;
    std::vector<MatPoly> gens;
    for (int r = 1; r <= k; ++r) gens.push_back(MatPoly::unit(c, k, r, r));
    const int m = static_cast<int>(rng() % static_cast<unsigned>(k));
    for (int i = 0; i < m; ++i) {
      const int a = 1 + static_cast<int>(rng() % static_cast<unsigned>(k));
      const int b = 1 + static_cast<int>(rng() % static_cast<unsigned>(k));
      if (a == b) continue;
      edges.emplace_back(a, b);
      gens.push_back(MatPoly::unit(c, k, a, b));
    }
    CHECK(generated_algebra(c, k, gens, 0, 2).dim() == component_oracle(k, edges));
  }
  for (int k = 2; k <= 5; ++k) CHECK(generated_algebra(c, k, b_factor_generators(c, k, k - 1), 0, 2).dim() == k * k);
}

TEST_CASE("generated_algebra without adjoints") {
  const Config c = cfg(1);
  for (int n = 2; n <= 5; ++n) {
    std::vector<MatPoly> gens;
    for (int r = 1; r <= n; ++r) gens.push_back(MatPoly::unit(c, n, r, r));
    for (int r = 1; r < n; ++r) gens.push_back(MatPoly::unit(c, n, r, r + 1));
    GenerateOptions opt;
    opt.include_adjoints = false;
    CHECK(generated_algebra(c, n, gens, 0, 1, opt).dim() == n * (n + 1) / 2);
  }
}

TEST_CASE("determinism and monotonicity") {
  const Config c = cfg(2);
  auto gens = triangular_units(c, 3);
  const Basis ref = generated_algebra(c, 3, gens, 2, 4);
  std::vector<MatPoly> rev(gens.rbegin(), gens.rend());
  CHECK(generated_algebra(c, 3, rev, 2, 4) == ref);
  rev.push_back(gens[1]);
  CHECK(generated_algebra(c, 3, rev, 2, 4).content_hash() == ref.content_hash());

  int last = 0;
  for (int d = 0; d <= 2; ++d) {
    const Basis b = generated_algebra(c, 3, gens, d, d + 2);
    CHECK(b.dim() >= last);
    last = b.dim();
    if (d > 0) {
      const Basis prev = generated_algebra(c, 3, gens, d - 1, d + 1);
      for (const auto& x : prev.elements()) CHECK(b.contains(x));
    }
  }
  CHECK(generated_algebra(c, 3, gens, 1, 4).dim() >= generated_algebra(c, 3, gens, 1, 3).dim());
  CHECK(ref.restricted(1) == generated_algebra(c, 3, gens, 1, 4));
}

TEST_CASE("closure soundness for D >= 2d") {
  const Config c = cfg(1);
  auto gens = triangular_units(c, 2);
  const int d = 2;
  const Basis b = generated_algebra(c, 2, gens, d, 2 * d);
  const auto elems = b.elements();
  for (const auto& x : elems)
    for (const auto& y : elems) {
      const MatPoly p = x * y;
      if (p.degree() <= d) CHECK(b.contains(p));
    }
}

TEST_CASE("budget") {
  const Config c = cfg(2);
  GenerateOptions opt;
  opt.budget = 10;
  CHECK_THROWS_AS(generated_algebra(c, 3, triangular_units(c, 3), 2, 4, opt), BudgetExceeded);
}

TEST_CASE("JSON dump") {
  const Config c = cfg(1);
  const Basis b = generated_algebra(c, 2, triangular_units(c, 2), 1, 3);
  const auto j = b.to_json();
  CHECK(j["dim"] == b.dim());
  CHECK(j["dims_by_degree"].size() == 2);
  CHECK(j["hash"].get<std::string>().size() == 64);
  CHECK(j["hash"] == b.content_hash());
  CHECK(j["entry_dims"][0][1] == b.entry_dim(1, 2));
}

}  // TEST_SUITE
