#include "sigcore/common.hpp"

namespace sigcore {

std::string format_subset(mask_t s, int n) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < n; ++i) {
    if (s & (mask_t{1} << i)) {
      if (!first) out += ",";
      out += std::to_string(i + 1);
      first = false;
    }
  }
  out += "}";
  return out;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  // Products stay below 2^53 for n <= 20, so every step is exact.
  double result = 1.0;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return result;
}

std::vector<int> bit_positions(mask_t s) {
  std::vector<int> pos;
  pos.reserve(static_cast<std::size_t>(std::popcount(s)));
  while (s != 0) {
    pos.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return pos;
}

mask_t expand_bits(mask_t compact, const std::vector<int>& support_positions) {
  mask_t out = 0;
  for (std::size_t j = 0; j < support_positions.size(); ++j) {
    if (compact & (mask_t{1} << j)) out |= mask_t{1} << support_positions[j];
  }
  return out;
}

}  // namespace sigcore
