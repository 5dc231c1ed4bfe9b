#ifndef GRAPHLIM_RNG_HPP
#define GRAPHLIM_RNG_HPP

#include <cstdint>

namespace graphlim {

// Reproducibility handle. The same (seed, stream) always produces the same
// draw sequence; distinct streams are statistically independent.
struct Seed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  // Derives a disjoint stream, e.g. one per replication or worker block.
  Seed sub(std::uint64_t tag) const;
};

// Counter-based generator: output i is a SplitMix64-style avalanche of
// key + i * golden_gamma, where the key mixes (seed, stream). Stateless
// apart from the counter, so replications and parallel blocks can be keyed
// independently and reproduced bit-for-bit.
class Rng {
 public:
  explicit Rng(Seed s);

  std::uint64_t next_u64();

  // Uniform on [0,1) with 53 random bits.
  double next_unit();

  bool bernoulli(double p);

  // Uniform on {0, ..., n-1}, unbiased (rejection sampling). n >= 1.
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace graphlim

#endif
