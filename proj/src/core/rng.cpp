#include "sosp/core/rng.hpp"

#include <random>

#include "sosp/core/error.hpp"

namespace sosp {
namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), key_(mix64(seed ^ mix64(stream + kGolden))) {}

Rng::result_type Rng::operator()() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

Rng Rng::split(std::uint64_t child) const {
  return Rng(mix64(key_ ^ (child * kGolden + 0x632BE59BD9B4E019ULL)), child);
}

double Rng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  std::normal_distribution<double> gaussian(0.0, 1.0);
  return gaussian(*this);
}

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw ContractError("Rng::index over an empty range");
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  return pick(*this);
}

int rademacher(Rng& rng) { return (rng() >> 63) != 0 ? 1 : -1; }

}  // namespace sosp
