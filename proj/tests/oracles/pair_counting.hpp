#pragma once

// Adjusted Rand index from the four pair-agreement counts.

#include <vector>

namespace oracle {

inline double ari_pairs(const std::vector<int>& p, const std::vector<int>& q) {
  double a = 0, b = 0, c = 0, d = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      const bool sp = p[i] == p[j], sq = q[i] == q[j];
      if (sp && sq) a += 1;
      else if (sp) b += 1;
      else if (sq) c += 1;
      else d += 1;
    }
  }
  const double den = (a + b) * (b + d) + (a + c) * (c + d);
  if (den == 0.0) return 1.0;
  return 2.0 * (a * d - b * c) / den;
}

}  // namespace oracle
