#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cogradar/occupancy.hpp"
#include "cogradar/waveform.hpp"

namespace cogradar {

/// Per-PRI record of one episode. Observations are stored as a miss flag:
/// the radar sees either the true state or the all-zeros vector.
struct EpisodeTrace {
  std::string policy;
  std::size_t initial_state = 0;
  std::vector<std::size_t> state;
  std::vector<std::uint8_t> observation_missed;
  std::vector<Waveform> waveform;
  std::vector<std::size_t> collision_count;
  std::vector<std::size_t> missed_count;
  std::vector<double> loss;
  std::vector<double> sinr_db;
  /// Hash of the initial state, the state sequence and the miss flags. Two
  /// traces with equal hashes were run on the same channel realization.
  std::uint64_t state_hash = 0;

  std::size_t size() const { return state.size(); }
  void reserve(std::size_t n);

  OccupancyVector observation(std::size_t t, const std::vector<OccupancyVector>& states) const;
};

std::uint64_t hash_realization(std::size_t initial_state, const std::vector<std::size_t>& states,
                               const std::vector<std::uint8_t>& missed);

}  // namespace cogradar
