#include "maxcover/numrep.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace maxcover {

namespace {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t task) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(task), static_cast<std::uint32_t>(task >> 32)};
  return std::mt19937_64(seq);
}

CMatrix haar_unitary(std::mt19937_64& rng, int m) {
  std::normal_distribution<double> g;
  CMatrix z(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) z(r, c) = {g(rng), g(rng)};
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(m, m);
  // fix the phases so that the distribution does not depend on the QR convention
  const CMatrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < m; ++c) {
    const std::complex<double> d = rmat(c, c);
    if (std::abs(d) > 0) q.col(c) *= d / std::abs(d);
  }
  return q;
}

CMatrix gauss_rational_to_matrix(const GaussRational& c, int m) {
  return CMatrix::Identity(m, m) * c.to_complex();
}

}  // namespace

Representation sample(const Config& config, int m, std::uint64_t seed, const SampleOptions& options) {
  if (m < 1) throw std::invalid_argument("sample: m must be positive");
  auto rng = make_rng(seed, options.task);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Representation rep;
  rep.m = m;
  rep.config = config;
  rep.seed = seed;
  for (int i = 0; i < config.copies; ++i) {
    Eigen::VectorXd lambda(m);
    for (int r = 0; r < m; ++r) lambda(r) = unif(rng);
    if (options.pin_endpoints && m >= 2) {
      lambda(0) = 0.0;
      lambda(1) = 1.0;
    }
    const CMatrix q = haar_unitary(rng, m);
    Eigen::VectorXd root = (Eigen::VectorXd::Ones(m) - lambda).cwiseMax(0.0).cwiseSqrt();
    CMatrix t = q * lambda.cast<std::complex<double>>().asDiagonal() * q.adjoint();
    CMatrix w = q * root.cast<std::complex<double>>().asDiagonal() * q.adjoint();
    rep.t.push_back(0.5 * (t + t.adjoint()));
    rep.w.push_back(0.5 * (w + w.adjoint()));
  }
  if (config.unitary) rep.u = haar_unitary(rng, m);
  return rep;
}

Representation character(const Config& config, const std::vector<double>& s, double theta) {
  if (static_cast<int>(s.size()) != config.copies) throw std::invalid_argument("character: one point per copy");
  Representation rep;
  rep.m = 1;
  rep.config = config;
  for (double x : s) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("character: points must lie in [0,1]");
    rep.t.push_back(CMatrix::Constant(1, 1, x));
    rep.w.push_back(CMatrix::Constant(1, 1, std::sqrt(1.0 - x)));
  }
  if (config.unitary) rep.u = CMatrix::Constant(1, 1, std::polar(1.0, theta));
  return rep;
}

CMatrix eval(const Poly& p, const Representation& rep) {
  if (!(p.config() == rep.config)) throw std::invalid_argument("eval: configuration mismatch");
  const int m = rep.m;
  CMatrix out = CMatrix::Zero(m, m);
  for (const auto& [word, c] : p.terms()) {
    CMatrix acc = gauss_rational_to_matrix(c, m);
    for (LetterCode code : word.letters()) {
      if (code == kUnitaryCode) {
        acc = acc * *rep.u;
      } else if (code == kUnitaryInvCode) {
        acc = acc * rep.u->adjoint();
      } else {
        const auto i = static_cast<std::size_t>(copy_of(code) - 1);
        acc = acc * (is_w_code(code) ? rep.w[i] : rep.t[i]);
      }
    }
    out += acc;
  }
  return out;
}

CMatrix eval(const MatPoly& x, const Representation& rep) {
  const int k = x.size(), m = rep.m;
  CMatrix out = CMatrix::Zero(k * m, k * m);
  for (int r = 1; r <= k; ++r)
    for (int s = 1; s <= k; ++s)
      if (!x(r, s).is_zero()) out.block((r - 1) * m, (s - 1) * m, m, m) = eval(x(r, s), rep);
  return out;
}

CMatrix eval(const FPElement& x, const Representation& rep) { return eval(concrete_model(x), rep); }

double op_norm(const CMatrix& x) {
  if (!x.allFinite()) throw std::invalid_argument("op_norm: non-finite entries");
  if (x.size() == 0) return 0.0;
  const Eigen::Index n = std::min(x.rows(), x.cols());
  if (n <= 256) {
    Eigen::BDCSVD<CMatrix> svd(x);
    return svd.singularValues()(0);
  }
  // power iteration on X* X from a fixed start vector
  const CMatrix g = x.adjoint() * x;
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(g.rows());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) += std::complex<double>(1e-3 * static_cast<double>(i % 7), 0.0);
  v.normalize();
  double last = 0.0;
  for (int it = 0; it < 100000; ++it) {
    Eigen::VectorXcd y = g * v;
    const double lambda = y.norm();
    if (lambda == 0.0) return 0.0;
    v = y / lambda;
    if (std::abs(lambda - last) <= 1e-15 * lambda) break;
    last = lambda;
  }
  return std::sqrt((v.adjoint() * g * v)(0).real());
}

CMatrix eval_triangular_embedding(const CMatrix& x, int n, int amplification, const Representation& rep) {
  const int l = amplification, m = rep.m;
  if (x.rows() != n * l || x.cols() != n * l) throw std::invalid_argument("eval_triangular_embedding: size mismatch");
  if (rep.config.copies < n - 1) throw std::invalid_argument("eval_triangular_embedding: representation needs n - 1 copies");
  CMatrix out = CMatrix::Zero(n * m * l, n * m * l);
  for (int i = 0; i < n; ++i) {
    CMatrix chain = CMatrix::Identity(m, m);
    for (int j = i; j < n; ++j) {
      if (j > i) chain = chain * rep.w[static_cast<std::size_t>(j - 1)];
      const CMatrix blk = x.block(i * l, j * l, l, l);
      out.block(i * m * l, j * m * l, m * l, m * l) = Eigen::kroneckerProduct(chain, blk);
    }
  }
  return out;
}

namespace {

CMatrix random_block_triangular(std::mt19937_64& rng, int n, int l) {
  std::normal_distribution<double> g;
  CMatrix x = CMatrix::Zero(n * l, n * l);
  for (int bi = 0; bi < n; ++bi)
    for (int bj = bi; bj < n; ++bj)
      for (int r = 0; r < l; ++r)
        for (int c = 0; c < l; ++c) x(bi * l + r, bj * l + c) = {g(rng), g(rng)};
  return x;
}

}  // namespace

nlohmann::json ContractivityReport::to_json() const {
  return {{"check", check},
          {"seeds", seeds},
          {"dims", dims},
          {"amplification", amplification},
          {"n", n},
          {"samples", samples},
          {"tol", tol},
          {"max_violation", max_violation},
          {"violations", violations},
          {"character_gap", character_gap},
          {"status", pass ? "PASS" : "FAIL"}};
}

ContractivityReport check_embedding_contractive(int n, int amplification, const ContractivityOptions& options) {
  if (n < 1) throw std::invalid_argument("check_embedding_contractive: n must be positive");
  if (amplification < 1) throw std::invalid_argument("check_embedding_contractive: amplification must be positive");
  if (options.dims.empty()) throw std::invalid_argument("check_embedding_contractive: no dimensions");
  ContractivityReport report;
  report.check = "T" + std::to_string(n) + "-embedding-l" + std::to_string(amplification);
  report.n = n;
  report.amplification = amplification;
  report.samples = options.samples;
  report.seeds = {options.seed};
  report.dims = options.dims;
  report.tol = options.tol;
  const Config config{std::max(1, n - 1), false};
  const std::uint64_t stream = 1000003ULL * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(amplification);
  auto xrng = make_rng(options.seed, stream);
  const Representation zero = character(config, std::vector<double>(static_cast<std::size_t>(config.copies), 0.0));
  for (int s = 0; s < options.samples; ++s) {
    const int m = options.dims[static_cast<std::size_t>(s) % options.dims.size()];
    SampleOptions so;
    so.pin_endpoints = (s % 2) == 1;
    so.task = stream * 100000ULL + static_cast<std::uint64_t>(s);
    const Representation rep = sample(config, m, options.seed, so);
    const CMatrix x = random_block_triangular(xrng, n, amplification);
    const double nx = op_norm(x);
    const double gap = op_norm(eval_triangular_embedding(x, n, amplification, rep)) - nx;
    report.max_violation = std::max(report.max_violation, gap);
    if (gap > options.tol) ++report.violations;
    report.character_gap =
        std::max(report.character_gap, std::abs(op_norm(eval_triangular_embedding(x, n, amplification, zero)) - nx));
  }
  report.pass = report.violations == 0 && report.character_gap <= 1e-12;
  return report;
}

}  // namespace maxcover
