#ifndef ROADCOLOR_DETAIL_RANDOM_HPP_
#define ROADCOLOR_DETAIL_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace roadcolor::detail {

  // std::uniform_int_distribution and std::shuffle are implementation
  // defined; these helpers keep seeded output identical across toolchains.

  inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) noexcept {
    return splitmix64(seed ^ splitmix64(salt));
  }

  // Uniform in [0, bound), bound > 0.
  inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    std::uint64_t const limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t       x;
    do {
      x = rng();
    } while (x >= limit);
    return x % bound;
  }

  template <typename T>
  void shuffle(std::span<T> items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = uniform_below(rng, i);
      std::swap(items[i - 1], items[j]);
    }
  }

}  // namespace roadcolor::detail

#endif  // ROADCOLOR_DETAIL_RANDOM_HPP_
