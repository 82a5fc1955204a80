#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

namespace sosp {

/// Counter-based, splittable random stream.
///
/// Draw i of stream (seed, stream) is a SplitMix64 finalization of
/// key(seed, stream) + i * golden, so the sequence depends only on the pair
/// and the draw index. `split` derives child streams for parallel runs
/// without any shared state. Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  Rng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  Rng split(std::uint64_t child) const;

  double uniform();             // [0, 1)
  double uniform(double lo, double hi);
  double normal();              // standard Gaussian
  std::size_t index(std::size_t n);  // uniform over {0, ..., n-1}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Fair coin in {+1, -1}.
int rademacher(Rng& rng);

std::uint64_t mix64(std::uint64_t z);

}  // namespace sosp
