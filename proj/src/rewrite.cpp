#include "maxcover/rewrite.hpp"

#include <random>
#include <vector>

namespace maxcover {

namespace {

struct RawTerm {
  GaussRational coef;
  std::vector<LetterCode> letters;
};

bool is_redex(LetterCode x, LetterCode y) {
  if (is_unitary_code(x) || is_unitary_code(y)) return is_unitary_code(x) && is_unitary_code(y) && x != y;
  return is_w_code(x) && copy_of(x) == copy_of(y);
}

}  // namespace

Poly rewrite_normalize(const Config& config, std::span<const Letter> raw, const GaussRational& coefficient,
                       RewriteStrategy strategy, RewriteStats* stats) {
  std::vector<LetterCode> start;
  for (const Letter& l : raw) {
    validate_letter(config, l);
    switch (l.kind) {
      case LetterKind::T: start.push_back(t_code(l.value)); break;
      case LetterKind::W: start.push_back(w_code(l.value)); break;
      case LetterKind::U:
        for (int k = 0; k < (l.value < 0 ? -l.value : l.value); ++k)
          start.push_back(l.value < 0 ? kUnitaryInvCode : kUnitaryCode);
        break;
    }
  }

  std::mt19937_64 rng(strategy.seed);
  std::vector<RawTerm> pending{{coefficient, std::move(start)}};
  std::vector<RawTerm> done;
  std::size_t steps = 0;

  while (!pending.empty()) {
    std::size_t pick = pending.size() - 1;
    if (strategy.order == RedexOrder::Random)
      pick = std::uniform_int_distribution<std::size_t>(0, pending.size() - 1)(rng);
    std::swap(pending[pick], pending.back());
    RawTerm term = std::move(pending.back());
    pending.pop_back();

    std::vector<std::size_t> redexes;
    for (std::size_t k = 0; k + 1 < term.letters.size(); ++k)
      if (is_redex(term.letters[k], term.letters[k + 1])) redexes.push_back(k);
    if (redexes.empty()) {
      done.push_back(std::move(term));
      continue;
    }
    std::size_t at = redexes.front();
    if (strategy.order == RedexOrder::Rightmost) at = redexes.back();
    if (strategy.order == RedexOrder::Random)
      at = redexes[std::uniform_int_distribution<std::size_t>(0, redexes.size() - 1)(rng)];
    ++steps;

    auto& s = term.letters;
    const LetterCode x = s[at], y = s[at + 1];
    if (is_unitary_code(x)) {
      s.erase(s.begin() + static_cast<std::ptrdiff_t>(at), s.begin() + static_cast<std::ptrdiff_t>(at) + 2);
      pending.push_back(std::move(term));
    } else if (is_t_code(y)) {
      std::swap(s[at], s[at + 1]);
      pending.push_back(std::move(term));
    } else {
      // w w -> 1 - t
      const LetterCode t = t_code(copy_of(x));
      RawTerm minus{-term.coef, s};
      minus.letters.erase(minus.letters.begin() + static_cast<std::ptrdiff_t>(at));
      minus.letters[at] = t;
      s.erase(s.begin() + static_cast<std::ptrdiff_t>(at), s.begin() + static_cast<std::ptrdiff_t>(at) + 2);
      pending.push_back(std::move(term));
      pending.push_back(std::move(minus));
    }
  }

  if (stats) stats->steps = steps;
  Poly out(config);
  for (auto& term : done) out.add_term(Word::from_normal_letters(std::move(term.letters)), term.coef);
  return out;
}

}  // namespace maxcover
