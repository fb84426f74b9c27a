#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <vector>

#include "linkhom/diagram.hpp"

namespace linkhom {

// Seeded braid sampler. Draws use plain modulo reduction of mt19937_64 output so
// that a seed gives the same corpus with every standard library.
class BraidSampler {
 public:
  explicit BraidSampler(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(rng_() % span);
  }

  // strands in [2, max_strands], letters in [min_letters, max_letters].
  BraidWord braid(int max_strands, int min_letters, int max_letters) {
    BraidWord b;
    b.strands = uniform(2, std::max(2, max_strands));
    int len = uniform(min_letters, max_letters);
    for (int i = 0; i < len; ++i) {
      int g = uniform(1, b.strands - 1);
      b.letters.push_back(uniform(0, 1) ? g : -g);
    }
    return b;
  }

  // Same sign on every letter.
  BraidWord homogeneous_braid(int max_strands, int min_letters, int max_letters, int sign) {
    BraidWord b = braid(max_strands, min_letters, max_letters);
    for (int& l : b.letters) l = sign * std::abs(l);
    return b;
  }

 private:
  std::mt19937_64 rng_;
};

inline std::vector<BraidWord> random_corpus(std::uint64_t seed, int count, int max_crossings, int max_strands = 4) {
  BraidSampler s(seed);
  std::vector<BraidWord> out;
  for (int i = 0; i < count; ++i) out.push_back(s.braid(max_strands, 1, max_crossings));
  return out;
}

}  // namespace linkhom
