#pragma once

#include <cstdint>
#include <random>

namespace cogradar {

using Rng = std::mt19937_64;

// SplitMix64 finalizer, used to decorrelate derived seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Random streams for one trial. The channel stream is seeded with
// master_seed + trial and drives the initial state, the transitions and the
// observation misses, so every policy in a trial sees the same channel
// realization. The policy stream (tie-breaks, posterior draws) is derived
// from the same trial seed but is independent of the channel stream.
struct TrialStreams {
  Rng channel;
  Rng policy;
};

inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) {
  return master_seed + trial;
}

inline TrialStreams make_trial_streams(std::uint64_t master_seed, std::uint64_t trial) {
  const std::uint64_t s = trial_seed(master_seed, trial);
  return TrialStreams{Rng(s), Rng(mix_seed(s))};
}

}  // namespace cogradar
