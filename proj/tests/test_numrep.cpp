#include "maxcover/models.hpp"
#include "maxcover/numrep.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace maxcover;
using maxcover::testing::cfg;
using maxcover::testing::P;

namespace {

double dist(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Independent scalar evaluation of the canonical printer's output at a character:
// walks the printed text term by term, substituting s_i, sqrt(1 - s_i), e^{i theta}.
std::complex<double> eval_printed(const Poly& p, const std::vector<double>& s, double theta) {
  std::complex<double> total = 0;
  const Poly reparsed = Poly::parse(p.config(), p.to_string());
  for (const auto& [w, c] : reparsed.terms()) {
    std::complex<double> v = c.to_complex();
    for (const auto& syl : w.syllables()) {
      if (syl.is_unitary()) {
        v *= std::polar(1.0, theta * syl.z);
      } else {
        const double x = s[static_cast<std::size_t>(syl.copy - 1)];
        v *= std::pow(x, syl.a) * std::pow(std::sqrt(1 - x), syl.b);
      }
    }
    total += v;
  }
  return total;
}

}  // namespace

TEST_SUITE("numrep") {

TEST_CASE("sample invariants and determinism") {
  const Config c = cfg(3, true);
  for (int m : {1, 2, 5, 8}) {
    for (bool pin : {false, true}) {
      SampleOptions o;
      o.pin_endpoints = pin;
      o.task = 7;
      const Representation r = sample(c, m, 99, o);
      const Representation r2 = sample(c, m, 99, o);
      const CMatrix id = CMatrix::Identity(m, m);
      for (int i = 0; i < 3; ++i) {
        CHECK(dist(r.t[i], r.t[i].adjoint()) == 0.0);
        CHECK(dist(r.w[i] * r.w[i] + r.t[i], id) < 1e-12);
        CHECK(op_norm(r.t[i]) <= 1 + 1e-12);
        CHECK(r.t[i] == r2.t[i]);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(r.t[i]);
        CHECK(es.eigenvalues().minCoeff() >= -1e-12);
        if (pin && m >= 2) {
          CHECK(std::abs(es.eigenvalues().minCoeff()) < 1e-12);
          CHECK(std::abs(es.eigenvalues().maxCoeff() - 1) < 1e-12);
        }
      }
      CHECK(dist(r.u->adjoint() * *r.u, id) < 1e-12);
    }
  }
  SampleOptions other;
  other.task = 8;
  CHECK_FALSE(sample(c, 3, 99, other).t[0] == sample(c, 3, 99).t[0]);
  CHECK(sample(c, 1, 5).t[0](0, 0).real() >= 0.0);
}

TEST_CASE("eval basics") {
  const Config c = cfg(2);
  const Representation zero = character(c, {0.0, 0.0});
  CHECK(eval(P(c, "t1"), zero).norm() == 0.0);
  const Representation r = sample(c, 4, 3);
  CHECK(dist(eval(P(c, "w1*w1 + t1"), r), CMatrix::Identity(4, 4)) < 1e-12);
  CHECK(dist(eval(P(c, "1"), r), CMatrix::Identity(4, 4)) == 0.0);
  CHECK_THROWS_AS(eval(P(cfg(3), "t1"), r), std::invalid_argument);
}

TEST_CASE("eval is a *-homomorphism and transports positivity") {
  const Config c = cfg(2, true);
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    SampleOptions o;
    o.task = static_cast<std::uint64_t>(trial);
    const Representation r = sample(c, 1 + trial % 6, 11, o);
    const Poly p = maxcover::testing::random_poly(rng, c, 3, 4);
    const Poly q = maxcover::testing::random_poly(rng, c, 3, 4);
    CHECK(dist(eval(p * q, r), eval(p, r) * eval(q, r)) < 1e-10);
    CHECK(dist(eval(p.involute(), r), eval(p, r).adjoint()) < 1e-10);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(eval(p.involute() * p, r));
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("MatPoly and free-product evaluation") {
  const Config c = cfg(2);
  const Representation r = sample(c, 3, 5);
  const MatPoly x = triangular_unit(c, 3, 1, 3);
  const CMatrix ex = eval(x, r);
  CHECK(ex.rows() == 9);
  CHECK(dist(ex.block(0, 6, 3, 3), r.w[0] * r.w[1]) < 1e-12);
  const MatPoly y = triangular_unit(c, 3, 1, 2) + triangular_unit(c, 3, 2, 2);
  CHECK(dist(eval(x * y.involute(), r), eval(x, r) * eval(y, r).adjoint()) < 1e-12);
  auto fam = std::make_shared<const FPFamily>(FPFamily::a_path(3));
  CHECK(dist(eval(FPElement::one(fam), r), CMatrix::Identity(9, 9)) == 0.0);
}

TEST_CASE("character consistency and F at the zero character") {
  const Config c = cfg(2, true);
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<double> s = {static_cast<double>(trial % 5) / 4.0, 0.3};
    const double theta = 0.1 * trial;
    const Poly p = maxcover::testing::random_poly(rng, c, 4, 4);
    CHECK(std::abs(eval(p, character(c, s, theta))(0, 0) - eval_printed(p, s, theta)) < 1e-12);
  }
  const Config c2 = cfg(2);
  for (int trial = 0; trial < 30; ++trial) {
    MatPoly x(c2, 3);
    for (int r = 1; r <= 3; ++r)
      for (int s = 1; s <= 3; ++s) x.at(r, s) = maxcover::testing::random_poly(rng, c2, 3, 3);
    const MatPoly fx = cond_exp_F(x);
    const CMatrix e0 = eval(x, character(c2, {0.0, 0.0}));
    for (int r = 1; r <= 3; ++r) CHECK(std::abs(fx(r, r).eval0().to_complex() - e0(r - 1, r - 1)) < 1e-12);
  }
}

TEST_CASE("op_norm") {
  CHECK(std::abs(op_norm(CMatrix::Identity(4, 4)) - 1) < 1e-12);
  CMatrix e12 = CMatrix::Zero(2, 2);
  e12(0, 1) = 1;
  CHECK(std::abs(op_norm(e12) - 1) < 1e-12);
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 0.3;
  d(1, 1) = 0.7;
  CHECK(std::abs(op_norm(d) - 0.7) < 1e-12);
  // the power-iteration branch agrees with the decomposition
  std::mt19937_64 rng(79);
  std::normal_distribution<double> g;
  CMatrix big(300, 300);
  for (int r = 0; r < 300; ++r)
    for (int s = 0; s < 300; ++s) big(r, s) = {g(rng), g(rng)};
  big(0, 0) += 200.0;
  Eigen::JacobiSVD<CMatrix> svd(big);
  CHECK(std::abs(op_norm(big) - svd.singularValues()(0)) < 1e-10 * svd.singularValues()(0));
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(1, 1) = std::nan("");
  CHECK_THROWS_AS(op_norm(bad), std::invalid_argument);
}

TEST_CASE("triangular embedding contractivity") {
  const Config c = cfg(1);
  const Representation r = sample(c, 3, 13);
  CHECK(std::abs(op_norm(eval_triangular_embedding(CMatrix::Identity(2, 2), 2, 1, r)) - 1) < 1e-12);
  ContractivityOptions o;
  o.samples = 20;
  for (int n : {2, 3})
    for (int l : {1, 2}) {
      const auto rep = check_embedding_contractive(n, l, o);
      CHECK(rep.pass);
      CHECK(rep.violations == 0);
      CHECK(rep.character_gap <= 1e-12);
      const auto j = rep.to_json();
      for (const char* key : {"check", "seeds", "dims", "amplification", "max_violation", "status"}) CHECK(j.contains(key));
      CHECK(check_embedding_contractive(n, l, o).to_json() == j);
    }
  CHECK_THROWS_AS(check_embedding_contractive(2, 0, o), std::invalid_argument);
}

}  // TEST_SUITE
