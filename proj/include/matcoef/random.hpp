#pragma once

// Pinned pseudo-random source for reproducible test vectors.
//
// SplitMix64: state += 0x9E3779B97F4A7C15, then the usual xor-shift-multiply
// finalizer. Doubles take the top 53 bits. A point of the unit disk is
// sqrt(u1) * exp(2 pi i u2) with u1 drawn before u2.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace matcoef::rng {

class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();                      // [0, 1)
  std::uint64_t below(std::uint64_t n);  // [0, n), by rejection
  std::complex<double> unit_disk();

private:
  std::uint64_t state_;
};

/// `count` disk-uniform amplitudes scaled to unit Euclidean norm.
std::vector<std::complex<double>> unit_amplitudes(SplitMix64& g, std::size_t count);

/// `count` distinct entries of `pool`, in draw order (partial Fisher-Yates).
std::vector<int> choose_distinct(SplitMix64& g, std::span<const int> pool, std::size_t count);

}  // namespace matcoef::rng
