// Copyright 2026 The crossgraph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace crossgraph {

// SplitMix64 finalizer. Used for counter-mode seed derivation and for the
// stateless hashing behind oblivious loss tensors.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Folds a list of words into one 64-bit key. Order matters.
inline std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x6a09e667f3bcc908ULL;
  for (std::uint64_t w : words) h = mix64(h ^ mix64(w));
  return h;
}

// Maps 64 random bits onto [0, 1) with 53 bits of precision.
constexpr double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double hash_uniform(std::initializer_list<std::uint64_t> words) {
  return to_unit(hash_words(words));
}

// Child seed for stream `index` under `tag`; independent of thread layout.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag,
                                 std::uint64_t index = 0) {
  return hash_words({master, tag, index});
}

// Stream tags. Each run draws contexts, arm samples and learner-internal coins
// from separate streams so algorithms compared under one seed see identical
// context sequences.
namespace stream {
inline constexpr std::uint64_t kContexts = 0x11;
inline constexpr std::uint64_t kActions = 0x22;
inline constexpr std::uint64_t kLearner = 0x33;
inline constexpr std::uint64_t kReplicate = 0x44;
inline constexpr std::uint64_t kGraph = 0x55;
inline constexpr std::uint64_t kOracle = 0x66;
}  // namespace stream

// Deterministic generator. Distribution sampling is done by hand (not through
// <random> distributions, whose output is implementation-defined) so traces
// are bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform() { return to_unit(engine_()); }
  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n). Lemire's multiply-shift; bias below 2^-40 for
  // the n this library uses.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace crossgraph
