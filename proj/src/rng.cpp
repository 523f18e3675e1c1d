#include "volfit/rng.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace volfit::rng {

double Stream::normal() {
  const double u1 = open01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void shuffle(std::vector<std::size_t>& indices, Stream& stream) {
  for (std::size_t i = indices.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(stream.below(i));
    std::swap(indices[i - 1], indices[j]);
  }
}

}  // namespace volfit::rng
