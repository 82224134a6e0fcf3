#include "maxcover/models.hpp"

#include <stdexcept>

namespace maxcover {

Poly omega_chain(Config config, int i, int j) {
  Poly p = Poly::one(config);
  for (int m = i; m < j; ++m) p = p * Poly::letter(config, Letter::w(m));
  return p;
}

MatPoly triangular_unit(Config config, int n, int i, int j) {
  if (i < 1 || j > n || i > j) throw std::invalid_argument("triangular_unit requires 1 <= i <= j <= n");
  if (config.copies < n - 1) throw std::invalid_argument("triangular_unit needs n - 1 copies");
  return MatPoly::unit(config, n, i, j, omega_chain(config, i, j));
}

MatPoly triangular_embed(Config config, const std::vector<std::vector<GaussRational>>& x) {
  const int n = static_cast<int>(x.size());
  MatPoly out(config, n);
  for (int i = 1; i <= n; ++i) {
    if (static_cast<int>(x[i - 1].size()) != n) throw std::invalid_argument("triangular_embed: matrix is not square");
    for (int j = i; j <= n; ++j)
      if (!x[i - 1][j - 1].is_zero()) out += x[i - 1][j - 1] * triangular_unit(config, n, i, j);
  }
  return out;
}

std::vector<MatPoly> triangular_units(Config config, int n) {
  std::vector<MatPoly> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) out.push_back(triangular_unit(config, n, i, j));
  return out;
}

std::string tmax2_spec_text() { return "C<t1> & w1*C<t1> ; C<t1>*w1 & C<t1>"; }

std::string tmax3_spec_text() {
  return "C<t1> + w1*C<t1,t2>*w1 & w1*C<t1,t2> & w1*C<t1,t2>*w2 ; "
         "C<t1,t2>*w1 & C<t1,t2> & C<t1,t2>*w2 ; "
         "w2*C<t1,t2>*w1 & w2*C<t1,t2> & C<t2> + w2*C<t1,t2>*w2";
}

std::string t4_product_spec_text() { return "w1*C<t1,t2>*w2*C<t2,t3>*w3"; }

std::string cycle2_candidate_spec_text() {
  const std::string f = "C<t1,w1,t2,w2>";
  const std::string off = f + "*w1*" + f + " + " + f + "*w2*" + f;
  return f + " & " + off + " ; " + off + " & " + f;
}

std::vector<MatPoly> b_factor_generators(Config config, int k, int l) {
  if (l < 1 || l > k) throw std::invalid_argument("b_factor_generators requires 1 <= l <= k");
  std::vector<MatPoly> out;
  for (int r = 1; r <= k; ++r) out.push_back(MatPoly::unit(config, k, r, r));
  for (int j = 1; j <= l; ++j) {
    const int a = j == k ? 1 : j;
    const int b = j == k ? k : j + 1;
    out.push_back(MatPoly::unit(config, k, a, b));
    out.push_back(MatPoly::unit(config, k, b, a));
  }
  return out;
}

std::vector<MatPoly> a_path_model_generators(Config config, int k) {
  if (config.copies < k - 1) throw std::invalid_argument("a_path_model_generators needs k - 1 copies");
  std::vector<MatPoly> out;
  for (int r = 1; r <= k; ++r) out.push_back(MatPoly::unit(config, k, r, r));
  for (int j = 1; j < k; ++j) {
    for (int r = 1; r <= k; ++r) {
      out.push_back(MatPoly::unit(config, k, r, r, Poly::letter(config, Letter::t(j))));
      out.push_back(MatPoly::unit(config, k, r, r, Poly::letter(config, Letter::w(j))));
    }
    out.push_back(MatPoly::unit(config, k, j, j + 1));
    out.push_back(MatPoly::unit(config, k, j + 1, j));
  }
  return out;
}

std::vector<MatPoly> cycle2_generators(Config config) {
  if (config.copies < 2) throw std::invalid_argument("cycle2_generators needs 2 copies");
  std::vector<MatPoly> out;
  out.push_back(MatPoly::unit(config, 2, 1, 2, Poly::letter(config, Letter::w(1))));
  out.push_back(MatPoly::unit(config, 2, 1, 2, Poly::letter(config, Letter::w(2))));
  for (int r = 1; r <= 2; ++r) {
    out.push_back(MatPoly::unit(config, 2, r, r));
    for (int i = 1; i <= 2; ++i) {
      out.push_back(MatPoly::unit(config, 2, r, r, Poly::letter(config, Letter::t(i))));
      out.push_back(MatPoly::unit(config, 2, r, r, Poly::letter(config, Letter::w(i))));
    }
  }
  return out;
}

namespace {

using Dense = std::vector<GaussRational>;

struct DenseBasis {
  std::vector<Dense> rows;
  std::vector<std::size_t> pivots;

  bool insert(Dense v) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const GaussRational c = v[pivots[i]];
      if (c.is_zero()) continue;
      for (std::size_t m = 0; m < v.size(); ++m) v[m] -= c * rows[i][m];
    }
    std::size_t p = 0;
    while (p < v.size() && v[p].is_zero()) ++p;
    if (p == v.size()) return false;
    const GaussRational inv = GaussRational(1) / v[p];
    for (auto& x : v) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const GaussRational c = rows[i][p];
      if (c.is_zero()) continue;
      for (std::size_t m = 0; m < v.size(); ++m) rows[i][m] -= c * v[m];
    }
    rows.push_back(std::move(v));
    pivots.push_back(p);
    return true;
  }
};

Dense dense_mul(int k, const Dense& a, const Dense& b) {
  Dense out(static_cast<std::size_t>(k) * k);
  for (int r = 0; r < k; ++r)
    for (int m = 0; m < k; ++m) {
      const GaussRational& x = a[r * k + m];
      if (x.is_zero()) continue;
      for (int s = 0; s < k; ++s) out[r * k + s] += x * b[m * k + s];
    }
  return out;
}

}  // namespace

int scalar_closure_dimension(int k, const std::vector<std::vector<GaussRational>>& matrices) {
  DenseBasis basis;
  Dense id(static_cast<std::size_t>(k) * k);
  for (int r = 0; r < k; ++r) id[r * k + r] = GaussRational(1);
  basis.insert(id);
  for (const auto& m : matrices) {
    if (static_cast<int>(m.size()) != k * k) throw std::invalid_argument("scalar_closure_dimension: wrong matrix size");
    basis.insert(m);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    const auto snapshot = basis.rows;
    for (const auto& x : snapshot)
      for (const auto& y : snapshot)
        if (basis.insert(dense_mul(k, x, y))) grew = true;
  }
  return static_cast<int>(basis.rows.size());
}

}  // namespace maxcover
