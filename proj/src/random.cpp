#include "matcoef/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace matcoef::rng {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t SplitMix64::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("SplitMix64::below: empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return x % n;
}

std::complex<double> SplitMix64::unit_disk() {
  const double rad = std::sqrt(uniform());
  const double ang = 2.0 * std::numbers::pi * uniform();
  return std::polar(rad, ang);
}

std::vector<std::complex<double>> unit_amplitudes(SplitMix64& g, std::size_t count) {
  std::vector<std::complex<double>> a(count);
  double norm2 = 0.0;
  for (auto& z : a) {
    z = g.unit_disk();
    norm2 += std::norm(z);
  }
  if (norm2 == 0.0) throw std::runtime_error("unit_amplitudes: all draws were zero");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& z : a) z *= inv;
  return a;
}

std::vector<int> choose_distinct(SplitMix64& g, std::span<const int> pool, std::size_t count) {
  if (count > pool.size()) throw std::invalid_argument("choose_distinct: pool too small");
  std::vector<int> p(pool.begin(), pool.end());
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(g.below(p.size() - i));
    std::swap(p[i], p[j]);
  }
  p.resize(count);
  return p;
}

}  // namespace matcoef::rng
