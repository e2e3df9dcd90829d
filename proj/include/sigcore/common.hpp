#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigcore {

/// Subsets of the component index set are bitmasks: bit i set iff
/// component i+1 is in the subset (components are 1-based at the API
/// boundary, bit positions 0-based internally).
using mask_t = std::uint32_t;

/// Hard cap on the component count; every dense table has 2^n entries.
inline constexpr int kMaxComponents = 20;

inline constexpr std::size_t table_size(int n) { return std::size_t{1} << n; }

inline int cardinality(mask_t s) { return std::popcount(s); }

inline mask_t full_mask(int n) { return static_cast<mask_t>((std::uint64_t{1} << n) - 1); }

/// Error category carried by every exception thrown by the library.
/// Values map onto the CLI exit-code contract (parse -> 2, mismatch -> 3,
/// numeric -> 4); `domain` covers invalid parameters and caps.
enum class errc { parse = 1, domain = 2, mismatch = 3, numeric = 4 };

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void throw_parse(const std::string& m) { throw error(errc::parse, m); }
[[noreturn]] inline void throw_domain(const std::string& m) { throw error(errc::domain, m); }
[[noreturn]] inline void throw_mismatch(const std::string& m) { throw error(errc::mismatch, m); }
[[noreturn]] inline void throw_numeric(const std::string& m) { throw error(errc::numeric, m); }

inline void require_component_count(int n) {
  if (n < 1 || n > kMaxComponents)
    throw_domain("component count must be in [1, " + std::to_string(kMaxComponents) +
                 "], got " + std::to_string(n));
}

/// Renders a mask as "{1,3,5}" with 1-based component indices.
std::string format_subset(mask_t s, int n);

/// Exact binomial coefficient as a double; n <= 20 keeps every value
/// well inside the exactly representable integer range.
double binomial(int n, int k);

/// Compensated (Kahan) accumulator for long alternating sums.
class kahan_sum {
 public:
  void add(double x) {
    const double y = x - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Next mask with the same popcount (Gosper's hack). v must be nonzero.
inline mask_t next_same_cardinality(mask_t v) {
  const mask_t c = v & (0u - v);
  const mask_t r = v + c;
  return r | (((v ^ r) >> 2) / c);
}

/// Visits every subset of [n] with exactly k elements in ascending mask
/// order. k = 0 visits only the empty mask.
template <typename F>
void for_each_subset_of_cardinality(int n, int k, F&& visit) {
  if (k == 0) {
    visit(mask_t{0});
    return;
  }
  if (k > n) return;
  mask_t m = full_mask(k);
  const mask_t limit = full_mask(n);
  while (true) {
    visit(m);
    if (k == n) break;
    const mask_t next = next_same_cardinality(m);
    if (next > limit) break;
    m = next;
  }
}

/// Positions (0-based, ascending) of the set bits of `s`.
std::vector<int> bit_positions(mask_t s);

/// Spreads the low bits of `compact` onto the set-bit positions of
/// `support`; monotone in `compact`, so ascending compact masks map to
/// ascending expanded masks.
mask_t expand_bits(mask_t compact, const std::vector<int>& support_positions);

}  // namespace sigcore
