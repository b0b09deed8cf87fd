// Shared deterministic generators for the property suites.
#pragma once

#include <asynlin/stepmat.hpp>

#include <random>

namespace testsup {

// Uniform-ish rational in [lo, hi] with denominator up to dmax.
inline asynlin::Rat random_rat(std::mt19937_64& rng, long lo, long hi,
                               long dmax = 12) {
  std::uniform_int_distribution<long> den(1, dmax);
  const long d = den(rng);
  std::uniform_int_distribution<long> num(lo * d, hi * d);
  return asynlin::Rat(num(rng), d);
}

inline asynlin::Rat random_period(std::mt19937_64& rng, long nmax = 6,
                                  long dmax = 4) {
  std::uniform_int_distribution<long> num(1, nmax);
  std::uniform_int_distribution<long> den(1, dmax);
  return asynlin::Rat(num(rng), den(rng));
}

inline asynlin::Mat2R random_rates(std::mt19937_64& rng, long bound = 2) {
  asynlin::Mat2R P;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) P(r, c) = random_rat(rng, -bound, bound);
  return P;
}

inline asynlin::SystemSpec random_spec(std::mt19937_64& rng,
                                       bool integer_periods = false) {
  const asynlin::Rat mu = integer_periods ? random_period(rng, 6, 1)
                                          : random_period(rng);
  const asynlin::Rat nu = integer_periods ? random_period(rng, 6, 1)
                                          : random_period(rng);
  return {mu, nu, random_rates(rng)};
}

}  // namespace testsup
