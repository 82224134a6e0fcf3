#pragma once

// Letter-level term rewriting for the ncpoly relations.  This is an independent route
// to the normal form: local rules are applied one redex at a time in an order chosen by
// the strategy, which is what the confluence property is tested against.
//
//   w_i t_i  -> t_i w_i
//   w_i w_i  -> 1 - t_i
//   u u^-1   -> 1,   u^-1 u -> 1

#include "maxcover/ncpoly.hpp"

#include <cstdint>
#include <span>

namespace maxcover {

enum class RedexOrder { Leftmost, Rightmost, Random };

struct RewriteStrategy {
  RedexOrder order = RedexOrder::Leftmost;
  std::uint64_t seed = 0;
};

struct RewriteStats {
  std::size_t steps = 0;
};

Poly rewrite_normalize(const Config& config, std::span<const Letter> raw, const GaussRational& coefficient,
                       RewriteStrategy strategy, RewriteStats* stats = nullptr);

}  // namespace maxcover
