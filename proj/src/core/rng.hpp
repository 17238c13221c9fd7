#pragma once

#include <cstdint>

namespace corrspec {

// Deterministic random number generation.
//
// Everything in the library that consumes randomness does so through the
// generator defined here, so that a (seed, draw-order) pair fully determines
// every output bit on every platform.  Two well-known algorithms are used:
//
//  * SplitMix64 (Steele, Lea & Flood 2014): a 64-bit mixing function used to
//    expand seeds into generator state and to derive child seeds.
//  * xoshiro256++ (Blackman & Vigna 2019): the stream generator used for all
//    variate draws.
//
// Both are implemented directly from their published reference code; the
// standard library's engines are avoided because their exact output is not
// specified identically across implementations for all of the distribution
// adapters we need.

/// The SplitMix64 finalizer: a bijective 64-bit hash with good avalanche.
std::uint64_t splitmix64_mix(std::uint64_t z);

/// One step of the SplitMix64 sequence: advances `state` by the golden-ratio
/// increment and returns the mixed output.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// Derives a child seed from a master seed and up to two stream labels.
///
/// The derivation is `mix(mix(mix(master + G) ^ a) ^ b)` where `mix` is the
/// SplitMix64 finalizer and G its golden-ratio constant.  Distinct
/// (master, a, b) triples give statistically independent child seeds, which
/// is how the sweep harness assigns one stream per (cell, trial) so results
/// do not depend on scheduling order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b = 0);

/// xoshiro256++ stream generator with distribution helpers.
///
/// The 256-bit state is expanded from the 64-bit seed with SplitMix64, as
/// recommended by the algorithm's authors.  Draw helpers consume the stream
/// in a fixed, documented order so callers can rely on reproducibility:
///  * `next()`       -- one 64-bit word
///  * `uniform01()`  -- one word, value in [0, 1)
///  * `uniform_open()` -- one word, value in (0, 1)
///  * `normal()`     -- Box-Muller; draws two words on every *odd* call and
///                      caches the second variate for the following call
///  * `laplace(b)`   -- one word (inverse CDF)
///  * `below(n)`     -- one word typically; rejection sampling removes
///                      modulo bias and may rarely consume more
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform on the open interval (0, 1); safe to pass to log().
  double uniform_open();

  /// Standard normal variate via the Box-Muller transform.
  double normal();

  /// Laplace variate with density (1/2b) exp(-|x|/b), via inverse CDF.
  double laplace(double b);

  /// Uniform integer in {0, 1, ..., n-1}; n must be positive.
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace corrspec
