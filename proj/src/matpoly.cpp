#include "maxcover/matpoly.hpp"

#include <stdexcept>

namespace maxcover {

MatPoly::MatPoly(Config config, int k) : config_(config), k_(k) {
  if (k < 1) throw std::invalid_argument("matrix size must be positive");
  entries_.assign(static_cast<std::size_t>(k) * k, Poly(config));
}

MatPoly MatPoly::identity(Config config, int k) {
  MatPoly m(config, k);
  for (int r = 1; r <= k; ++r) m.at(r, r) = Poly::one(config);
  return m;
}

MatPoly MatPoly::unit(Config config, int k, int r, int s, const Poly& entry) {
  if (!(entry.config() == config)) throw std::invalid_argument("entry configuration mismatch");
  MatPoly m(config, k);
  m.at(r, s) = entry;
  return m;
}

MatPoly MatPoly::unit(Config config, int k, int r, int s) { return unit(config, k, r, s, Poly::one(config)); }

MatPoly MatPoly::diagonal(Config config, const std::vector<Poly>& entries) {
  MatPoly m(config, static_cast<int>(entries.size()));
  for (int r = 1; r <= m.k_; ++r) {
    if (!(entries[r - 1].config() == config)) throw std::invalid_argument("entry configuration mismatch");
    m.at(r, r) = entries[r - 1];
  }
  return m;
}

std::size_t MatPoly::index(int r, int s) const {
  if (r < 1 || r > k_ || s < 1 || s > k_) throw std::out_of_range("matrix index out of range");
  return static_cast<std::size_t>(r - 1) * k_ + (s - 1);
}

bool MatPoly::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

int MatPoly::degree() const {
  int d = 0;
  for (const auto& e : entries_) d = std::max(d, e.degree());
  return d;
}

MatPoly MatPoly::involute() const {
  MatPoly out(config_, k_);
  for (int r = 1; r <= k_; ++r)
    for (int s = 1; s <= k_; ++s) out.at(s, r) = (*this)(r, s).involute();
  return out;
}

MatPoly MatPoly::truncated(int d) const {
  MatPoly out = *this;
  for (auto& e : out.entries_) e = e.truncated(d);
  return out;
}

static void check_compatible(const MatPoly& a, const MatPoly& b) {
  if (a.size() != b.size()) throw std::invalid_argument("matrix size mismatch");
  if (!(a.config() == b.config())) throw std::invalid_argument("matrix configuration mismatch");
}

MatPoly& MatPoly::operator+=(const MatPoly& other) {
  check_compatible(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

MatPoly& MatPoly::operator-=(const MatPoly& other) {
  check_compatible(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

MatPoly& MatPoly::operator*=(const GaussRational& c) {
  for (auto& e : entries_) e *= c;
  return *this;
}

MatPoly operator*(const MatPoly& a, const MatPoly& b) {
  check_compatible(a, b);
  const int k = a.size();
  MatPoly out(a.config(), k);
  for (int r = 1; r <= k; ++r)
    for (int m = 1; m <= k; ++m) {
      const Poly& x = a(r, m);
      if (x.is_zero()) continue;
      for (int s = 1; s <= k; ++s) {
        const Poly& y = b(m, s);
        if (!y.is_zero()) out.at(r, s) += x * y;
      }
    }
  return out;
}

nlohmann::json MatPoly::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 1; r <= k_; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int s = 1; s <= k_; ++s) row.push_back((*this)(r, s).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

MatPoly MatPoly::from_json(Config config, const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix JSON must be a non-empty array of rows");
  const int k = static_cast<int>(j.size());
  MatPoly m(config, k);
  for (int r = 1; r <= k; ++r) {
    const auto& row = j[r - 1];
    if (!row.is_array() || static_cast<int>(row.size()) != k) throw std::invalid_argument("matrix JSON is not square");
    for (int s = 1; s <= k; ++s) {
      if (!row[s - 1].is_string()) throw std::invalid_argument("matrix entries must be strings");
      m.at(r, s) = Poly::parse(config, row[s - 1].get<std::string>());
    }
  }
  return m;
}

AlgebraSpec AlgebraSpec::A(int j, int k, int variable) {
  if (k < 2 || j < 1 || j > k) throw std::invalid_argument("A(j,k) requires 1 <= j <= k, k >= 2");
  return {Family::A, j, k, variable == 0 ? j : variable};
}

AlgebraSpec AlgebraSpec::B(int j, int k) {
  if (k < 2 || j < 1 || j > k) throw std::invalid_argument("B(j,k) requires 1 <= j <= k, k >= 2");
  return {Family::B, j, k, 0};
}

AlgebraSpec AlgebraSpec::D(int k) {
  if (k < 1) throw std::invalid_argument("D(k) requires k >= 1");
  return {Family::D, 0, k, 0};
}

std::pair<int, int> AlgebraSpec::block() const {
  if (family == Family::D) return {0, 0};
  if (j == k) return {1, k};
  return {j, j + 1};
}

EntryKind AlgebraSpec::kind(int r, int s) const {
  const auto [a, b] = block();
  const bool on = r == s || (r == a && s == b) || (r == b && s == a);
  if (!on) return EntryKind::Zero;
  return family == Family::A ? EntryKind::Function : EntryKind::Scalar;
}

bool AlgebraSpec::admits(const MatPoly& x) const {
  if (x.size() != k) return false;
  for (int r = 1; r <= k; ++r)
    for (int s = 1; s <= k; ++s) {
      const Poly& e = x(r, s);
      switch (kind(r, s)) {
        case EntryKind::Zero:
          if (!e.is_zero()) return false;
          break;
        case EntryKind::Scalar:
          if (e.degree() > 0) return false;
          break;
        case EntryKind::Function:
          if (!e.uses_only_copy(variable)) return false;
          break;
      }
    }
  return true;
}

std::string AlgebraSpec::name() const {
  switch (family) {
    case Family::A: return "A(" + std::to_string(j) + "," + std::to_string(k) + ")";
    case Family::B: return "B(" + std::to_string(j) + "," + std::to_string(k) + ")";
    case Family::D: return "D(" + std::to_string(k) + ")";
  }
  return {};
}

MatPoly lambda_embed(const Poly& f, int j, int k) {
  if (!f.uses_only_copy(j)) throw std::invalid_argument("lambda_embed: f uses a copy other than t" + std::to_string(j));
  return MatPoly::diagonal(f.config(), std::vector<Poly>(static_cast<std::size_t>(k), f));
}

MatPoly cond_exp_E(const AlgebraSpec& spec, const MatPoly& x) {
  if (spec.family == Family::D) throw std::invalid_argument("cond_exp_E is defined on A(j,k) and B(j,k)");
  if (!spec.admits(x)) throw std::invalid_argument("cond_exp_E: matrix outside the " + spec.name() + " pattern");
  return MatPoly::diagonal(x.config(), std::vector<Poly>(static_cast<std::size_t>(spec.k), x(1, 1)));
}

MatPoly cond_exp_F(const MatPoly& x) {
  MatPoly out(x.config(), x.size());
  for (int r = 1; r <= x.size(); ++r) out.at(r, r) = Poly::constant(x.config(), x(r, r).eval0());
  return out;
}

MatPoly unitary_equiv(Config config, int m, int n, int k) {
  if (k < 2 || m < 1 || m > k || n < 1 || n > k) throw std::invalid_argument("unitary_equiv requires 1 <= m, n <= k, k >= 2");
  const int shift = ((n - m) % k + k) % k;
  MatPoly p(config, k);
  for (int i = 1; i <= k; ++i) p.at((i - 1 + shift) % k + 1, i) = Poly::one(config);
  return p;
}

std::vector<EntryKind> conjugate_pattern(const MatPoly& p, const AlgebraSpec& spec) {
  const int k = spec.k;
  if (p.size() != k) throw std::invalid_argument("permutation size mismatch");
  // (P X P*)_{sigma(a), sigma(b)} = X_{a,b} for P = sum e_{sigma(i), i}
  std::vector<int> sigma(static_cast<std::size_t>(k) + 1, 0);
  for (int i = 1; i <= k; ++i)
    for (int r = 1; r <= k; ++r)
      if (!p(r, i).is_zero()) {
        if (!(p(r, i) == Poly::one(p.config())) || sigma[i] != 0)
          throw std::invalid_argument("not a permutation matrix");
        sigma[i] = r;
      }
  std::vector<EntryKind> out(static_cast<std::size_t>(k) * k, EntryKind::Zero);
  for (int a = 1; a <= k; ++a) {
    if (sigma[a] == 0) throw std::invalid_argument("not a permutation matrix");
    for (int b = 1; b <= k; ++b)
      out[static_cast<std::size_t>(sigma[a] - 1) * k + (sigma[b] - 1)] = spec.kind(a, b);
  }
  return out;
}

}  // namespace maxcover
