#pragma once

// Shared generators and brute-force oracles for the unit tests.

#include "maxcover/ncpoly.hpp"

#include <random>
#include <string>
#include <vector>

namespace maxcover::testing {

inline Config cfg(int n, bool unitary = false) { return Config{n, unitary}; }

inline Poly P(const Config& c, const std::string& text) { return Poly::parse(c, text); }

inline std::vector<Letter> random_letters(std::mt19937_64& rng, const Config& c, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> copy(1, c.copies);
  std::uniform_int_distribution<int> kind(0, c.unitary ? 2 : 1);
  std::vector<Letter> out;
  const int n = len(rng);
  for (int k = 0; k < n; ++k) {
    switch (kind(rng)) {
      case 0: out.push_back(Letter::t(copy(rng))); break;
      case 1: out.push_back(Letter::w(copy(rng))); break;
      default: out.push_back(Letter::u(std::bernoulli_distribution(0.5)(rng) ? 1 : -1)); break;
    }
  }
  return out;
}

inline GaussRational random_coef(std::mt19937_64& rng, bool complex = true) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  mpq_class re(num(rng), den(rng));
  mpq_class im(complex ? num(rng) : 0, den(rng));
  re.canonicalize();
  im.canonicalize();
  return {re, im};
}

inline Poly random_poly(std::mt19937_64& rng, const Config& c, int max_terms, int max_len, bool complex = true) {
  Poly p(c);
  std::uniform_int_distribution<int> terms(0, max_terms);
  const int n = terms(rng);
  for (int k = 0; k < n; ++k) {
    auto letters = random_letters(rng, c, max_len);
    p += normalize(c, letters, random_coef(rng, complex));
  }
  return p;
}

/// Oracle: letter strings over {t_i, w_i, u, u^-1} of length <= d with no forbidden
/// adjacent pair (w_i t_i, w_i w_i, u u^-1, u^-1 u).  These are exactly normal words.
inline std::size_t count_normal_strings(int n, bool unitary, int d) {
  // letters 0..2n-1: t1,w1,...; 2n: u; 2n+1: u^-1
  const int alphabet = 2 * n + (unitary ? 2 : 0);
  auto forbidden = [n](int x, int y) {
    if (x >= 2 * n || y >= 2 * n) return x >= 2 * n && y >= 2 * n && x != y;
    return (x % 2 == 1) && (x / 2 == y / 2);
  };
  std::size_t total = 0;
  std::vector<std::vector<int>> layer{{}};
  for (int len = 0; len <= d; ++len) {
    total += layer.size();
    std::vector<std::vector<int>> next;
    for (const auto& s : layer)
      for (int a = 0; a < alphabet; ++a)
        if (s.empty() || !forbidden(s.back(), a)) {
          auto t = s;
          t.push_back(a);
          next.push_back(std::move(t));
        }
    layer = std::move(next);
  }
  return total;
}

}  // namespace maxcover::testing
