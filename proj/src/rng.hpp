#ifndef OCO_RNG_HPP
#define OCO_RNG_HPP

#include <cstdint>

namespace oco {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Independent, reproducible stream seeds keyed by (master, trial, stream tag).
// Trials derive their streams from the master seed only, so concurrent or
// reordered trial execution cannot change any stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial, std::uint64_t tag) {
  return splitmix64(splitmix64(master ^ splitmix64(tag)) ^ trial);
}

}  // namespace oco

#endif
