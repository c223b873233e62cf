#include "wdn/random.hpp"

#include <limits>
#include <numeric>
#include <utility>

#include "wdn/errors.hpp"

namespace wdn {

std::uint64_t SeededSampler::bounded(std::uint64_t n) {
  if (n == 0) throw ParameterError("bounded() needs a positive range");
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = kMax - (kMax % n + 1) % n;
  std::uint64_t x = engine_();
  while (x > limit) x = engine_();
  return x % n;
}

std::vector<std::size_t> SeededSampler::sample(std::size_t n, std::size_t k) {
  if (k > n) throw ParameterError("cannot sample more items than exist");
  std::vector<std::size_t> items(n);
  std::iota(items.begin(), items.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(bounded(n - i));
    std::swap(items[i], items[j]);
  }
  items.resize(k);
  return items;
}

}  // namespace wdn
