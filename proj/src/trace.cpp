#include "cogradar/trace.hpp"

namespace cogradar {

void EpisodeTrace::reserve(std::size_t n) {
  state.reserve(n);
  observation_missed.reserve(n);
  waveform.reserve(n);
  collision_count.reserve(n);
  missed_count.reserve(n);
  loss.reserve(n);
  sinr_db.reserve(n);
}

OccupancyVector EpisodeTrace::observation(std::size_t t,
                                          const std::vector<OccupancyVector>& states) const {
  const auto& s = states.at(state.at(t));
  return observation_missed[t] ? OccupancyVector::zeros(s.size()) : s;
}

std::uint64_t hash_realization(std::size_t initial_state, const std::vector<std::size_t>& states,
                               const std::vector<std::uint8_t>& missed) {
  // FNV-1a, 64 bit.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(initial_state);
  mix(states.size());
  for (std::size_t t = 0; t < states.size(); ++t) {
    mix(states[t]);
    mix(missed[t]);
  }
  return h;
}

}  // namespace cogradar
