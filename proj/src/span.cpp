#include "maxcover/span.hpp"

#include "maxcover/errors.hpp"
#include "maxcover/hash.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace maxcover {

SparseVec to_sparse(const MatPoly& m) {
  SparseVec v;
  for (int r = 1; r <= m.size(); ++r)
    for (int s = 1; s <= m.size(); ++s)
      for (const auto& [w, c] : m(r, s).terms()) v.emplace_back(Coord{r, s, w}, c);
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

MatPoly from_sparse(Config config, int k, const SparseVec& v) {
  MatPoly m(config, k);
  for (const auto& [c, coef] : v) m.at(c.row, c.col).add_term(c.word, coef);
  return m;
}

SparseVec axpy(const SparseVec& a, const GaussRational& c, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, c * j->second);
      ++j;
    } else {
      GaussRational sum = i->second + c * j->second;
      if (!sum.is_zero()) out.emplace_back(i->first, std::move(sum));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec Echelon::reduce(SparseVec v) const {
  while (!v.empty()) {
    auto it = rows_.find(v.back().first);
    if (it == rows_.end()) break;
    v = axpy(v, -v.back().second, it->second);
  }
  return v;
}

SparseVec Echelon::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return v;
  if (!v.back().second.is_one()) {
    const GaussRational inv = GaussRational(1) / v.back().second;
    for (auto& [c, coef] : v) coef *= inv;
  }
  rows_.emplace(v.back().first, v);
  return v;
}

Basis::Basis(Config config, int k, int d, int working_degree, std::vector<SparseVec> rref_rows)
    : config_(config), k_(k), d_(d), D_(working_degree), rows_(std::move(rref_rows)) {
  std::sort(rows_.begin(), rows_.end(), [](const auto& a, const auto& b) { return a.back().first < b.back().first; });
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].empty() || !rows_[i].back().second.is_one()) throw std::invalid_argument("basis rows must be normalized");
    if (!pivots_.emplace(rows_[i].back().first, i).second) throw std::invalid_argument("duplicate pivot in basis");
  }
}

Basis Basis::from_echelon(Config config, int k, int d, int working_degree, const Echelon& e) {
  std::vector<SparseVec> reduced;
  std::map<Coord, std::size_t> pivots;
  for (const auto& [pivot, row] : e.rows()) {
    if (pivot.word.degree() > d) break;
    SparseVec v = row;
    for (std::size_t i = 0; i + 1 < row.size(); ++i) {
      auto it = pivots.find(row[i].first);
      if (it != pivots.end()) v = axpy(v, -row[i].second, reduced[it->second]);
    }
    pivots.emplace(pivot, reduced.size());
    reduced.push_back(std::move(v));
  }
  return Basis(config, k, d, working_degree, std::move(reduced));
}

SparseVec Basis::reduce(SparseVec v) const {
  // Rows are fully reduced, so eliminating pivots from the top never reintroduces one.
  // Entries above the current position are never touched by a later elimination.
  std::size_t from_top = 0;
  while (from_top < v.size()) {
    const auto& e = v[v.size() - 1 - from_top];
    auto it = pivots_.find(e.first);
    if (it == pivots_.end()) {
      ++from_top;
      continue;
    }
    const GaussRational c = -e.second;
    v = axpy(v, c, rows_[it->second]);
  }
  return v;
}

static void check_coordinates(const Config& config, int k, const Config& other_config, int other_k) {
  if (k != other_k) throw std::invalid_argument("coordinate mismatch: matrix sizes differ");
  if (!(config == other_config)) throw std::invalid_argument("coordinate mismatch: configurations differ");
}

bool Basis::contains(const MatPoly& x) const {
  check_coordinates(config_, k_, x.config(), x.size());
  return reduce(to_sparse(x)).empty();
}

bool Basis::contains(const SparseVec& v) const { return reduce(v).empty(); }

Basis Basis::entry(int r, int s) const {
  std::vector<SparseVec> rows;
  for (const auto& row : rows_)
    if (std::all_of(row.begin(), row.end(), [&](const auto& e) { return e.first.row == r && e.first.col == s; }))
      rows.push_back(row);
  return Basis(config_, k_, d_, D_, std::move(rows));
}

std::vector<int> Basis::dims_by_degree() const {
  std::vector<int> dims(static_cast<std::size_t>(d_) + 1, 0);
  for (const auto& row : rows_)
    for (int e = pivot_degree(row); e <= d_; ++e) ++dims[e];
  return dims;
}

int Basis::entry_dim(int r, int s) const {
  int n = 0;
  for (const auto& row : rows_)
    if (row.back().first.row == r && row.back().first.col == s) ++n;
  return n;
}

std::vector<Coord> Basis::coordinates() const {
  std::set<Coord> all;
  for (const auto& row : rows_)
    for (const auto& e : row) all.insert(e.first);
  return {all.begin(), all.end()};
}

std::vector<MatPoly> Basis::elements() const {
  std::vector<MatPoly> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(from_sparse(config_, k_, row));
  return out;
}

Basis Basis::restricted(int e) const {
  if (e > d_) throw std::invalid_argument("cannot restrict a basis beyond its truncation degree");
  std::vector<SparseVec> rows;
  for (const auto& row : rows_)
    if (pivot_degree(row) <= e) rows.push_back(row);
  return Basis(config_, k_, e, D_, std::move(rows));
}

static nlohmann::json basis_body(const Basis& b) {
  nlohmann::json j;
  j["k"] = b.size();
  j["copies"] = b.config().copies;
  j["unitary"] = b.config().unitary;
  j["d"] = b.d();
  j["D"] = b.working_degree();
  j["dim"] = b.dim();
  j["dims_by_degree"] = b.dims_by_degree();
  nlohmann::json entry_dims = nlohmann::json::array();
  for (int r = 1; r <= b.size(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int s = 1; s <= b.size(); ++s) row.push_back(b.entry_dim(r, s));
    entry_dims.push_back(std::move(row));
  }
  j["entry_dims"] = std::move(entry_dims);
  const auto coords = b.coordinates();
  std::map<Coord, std::size_t> index;
  nlohmann::json cj = nlohmann::json::array();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    index.emplace(coords[i], i);
    cj.push_back({coords[i].row, coords[i].col, coords[i].word.to_string()});
  }
  j["coordinates"] = std::move(cj);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : b.rows()) {
    nlohmann::json rj = nlohmann::json::array();
    for (const auto& [c, coef] : row) rj.push_back({index.at(c), coef.to_string()});
    rows.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows);
  return j;
}

nlohmann::json Basis::to_json() const {
  nlohmann::json j = basis_body(*this);
  j["hash"] = sha256_hex(j.dump());
  return j;
}

std::string Basis::content_hash() const { return sha256_hex(basis_body(*this).dump()); }

Basis span_of(Config config, int k, const std::vector<MatPoly>& elements, int d, int working_degree) {
  if (d > working_degree) throw std::invalid_argument("span_of requires d <= D");
  Echelon e;
  for (const auto& x : elements) {
    check_coordinates(config, k, x.config(), x.size());
    if (x.degree() > working_degree) throw std::invalid_argument("span_of: element degree exceeds the working degree");
    e.insert(to_sparse(x.truncated(d)));
  }
  return Basis::from_echelon(config, k, d, working_degree, e);
}

namespace {

struct GenEntry {
  int row;
  int col;
  Poly value;
};

using Generator = std::vector<GenEntry>;

SparseVec product(const Generator& g, const SparseVec& x, bool left) {
  std::map<std::pair<int, int>, Poly::Terms> acc;
  for (const auto& [c, coef] : x)
    for (const auto& e : g) {
      if (left) {
        if (e.col != c.row) continue;
        auto& out = acc[{e.row, c.col}];
        for (const auto& [w, cw] : e.value.terms()) multiply_words_into(w, c.word, cw * coef, out);
      } else {
        if (c.col != e.row) continue;
        auto& out = acc[{c.row, e.col}];
        for (const auto& [w, cw] : e.value.terms()) multiply_words_into(c.word, w, coef * cw, out);
      }
    }
  SparseVec v;
  for (auto& [rc, terms] : acc)
    for (auto& [w, coef] : terms) v.emplace_back(Coord{rc.first, rc.second, w}, std::move(coef));
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

}  // namespace

Basis generated_algebra(Config config, int k, const std::vector<MatPoly>& generators, int d, int working_degree,
                        const GenerateOptions& options) {
  if (d > working_degree) throw std::invalid_argument("generated_algebra requires d <= D");
  std::vector<MatPoly> all;
  for (const auto& g : generators) {
    check_coordinates(config, k, g.config(), g.size());
    if (g.degree() > working_degree) throw std::invalid_argument("generator degree exceeds the working degree");
    all.push_back(g);
    if (options.include_adjoints) all.push_back(g.involute());
  }
  // Deduplicate so the work does not depend on repeated generators.
  std::set<std::string> seen;
  std::vector<Generator> gens;
  std::vector<MatPoly> distinct;
  for (const auto& g : all) {
    if (g.is_zero() || !seen.insert(g.to_string()).second) continue;
    distinct.push_back(g);
    Generator gen;
    for (int r = 1; r <= k; ++r)
      for (int s = 1; s <= k; ++s)
        if (!g(r, s).is_zero()) gen.push_back({r, s, g(r, s)});
    gens.push_back(std::move(gen));
  }

  Echelon span;      // S, inside V_D
  Echelon products;  // all products g·x, x·g for x in S
  std::deque<SparseVec> work;
  auto admit = [&](SparseVec v) {
    SparseVec row = span.insert(std::move(v));
    if (!row.empty()) work.push_back(std::move(row));
    if (span.size() + products.size() > options.budget)
      throw BudgetExceeded("generated_algebra: echelon row budget of " + std::to_string(options.budget) + " exceeded");
  };
  admit(to_sparse(MatPoly::identity(config, k)));
  for (const auto& g : distinct) admit(to_sparse(g));

  while (!work.empty()) {
    SparseVec x = std::move(work.front());
    work.pop_front();
    for (const auto& g : gens)
      for (bool left : {true, false}) {
        SparseVec p = products.insert(product(g, x, left));
        if (!p.empty() && pivot_degree(p) <= working_degree) admit(std::move(p));
      }
  }
  return Basis::from_echelon(config, k, d, working_degree, span);
}

bool equal(const Basis& a, const Basis& b) {
  check_coordinates(a.config(), a.size(), b.config(), b.size());
  return a.rows() == b.rows();
}

}  // namespace maxcover
