#pragma once

#include <cstddef>

namespace credal::detail {

// Index of the minterm obtained from `i` by inserting a 0 bit at `bit`
// (used when one signature extends another by a single atom).
inline std::size_t splice_zero(std::size_t i, std::size_t bit) {
  std::size_t low = (std::size_t{1} << bit) - 1;
  return ((i & ~low) << 1) | (i & low);
}

}  // namespace credal::detail
