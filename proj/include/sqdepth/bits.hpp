#pragma once

#include <bit>
#include <cstdint>
#include <type_traits>

namespace sqdepth {

using Mask = std::uint64_t;

inline constexpr int popcount(Mask m) noexcept { return std::popcount(m); }

inline constexpr Mask low_bits(int k) noexcept {
  return k >= 64 ? ~Mask{0} : (Mask{1} << k) - 1;
}

/// Next larger word with the same popcount (Gosper's hack). Caller must stop
/// before the result leaves the intended width; m must be nonzero.
inline constexpr Mask next_same_popcount(Mask m) noexcept {
  const Mask lowest = m & (~m + 1);
  const Mask ripple = m + lowest;
  return ripple | (((m ^ ripple) >> 2) / lowest);
}

/// Calls f(mask) for every k-subset of {0..width-1} in increasing numeric
/// order. Returning false from f stops the walk.
template <class F>
void for_each_subset_of_size(int width, int k, F&& f) {
  if (k < 0 || k > width) return;
  if (k == 0) {
    f(Mask{0});
    return;
  }
  const Mask limit = low_bits(width);
  Mask m = low_bits(k);
  while (true) {
    if constexpr (std::is_same_v<decltype(f(m)), bool>) {
      if (!f(m)) return;
    } else {
      f(m);
    }
    if (m == (limit & ~low_bits(width - k))) return;  // last k-subset
    m = next_same_popcount(m);
  }
}

/// Scatters the low bits of `local` onto the set bits of `support`
/// (software pdep).
inline Mask deposit(Mask local, Mask support) noexcept {
  Mask out = 0;
  for (Mask bit = 1; support != 0 && local != 0; bit <<= 1) {
    const Mask low = support & (~support + 1);
    if (local & bit) out |= low;
    local &= ~bit;
    support &= support - 1;
  }
  return out;
}

/// Gathers the bits of `value` that sit on `support` into the low bits
/// (software pext).
inline Mask extract(Mask value, Mask support) noexcept {
  Mask out = 0;
  Mask bit = 1;
  while (support != 0) {
    const Mask low = support & (~support + 1);
    if (value & low) out |= bit;
    bit <<= 1;
    support &= support - 1;
  }
  return out;
}

}  // namespace sqdepth
