#include "graphlim/rng.hpp"

#include <cmath>

#include "graphlim/errors.hpp"

namespace graphlim {
namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

// Stafford's Mix13 finalizer (the SplitMix64 output function).
std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

Seed Seed::sub(std::uint64_t tag) const {
  return Seed{seed, mix64(stream + kGamma * (tag + 1))};
}

Rng::Rng(Seed s) : key_(mix64(s.seed + kGamma) ^ mix64(mix64(s.stream) + 0x6a09e667f3bcc909ULL)) {}

std::uint64_t Rng::next_u64() { return mix64(key_ + kGamma * ++counter_); }

double Rng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool Rng::bernoulli(double p) { return next_unit() < p; }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw param_error("Rng::below: n must be positive");
  if ((n & (n - 1)) == 0) return next_u64() & (n - 1);
  const std::uint64_t limit = (~std::uint64_t{0} / n) * n;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

}  // namespace graphlim
