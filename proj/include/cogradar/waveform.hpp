#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cogradar/occupancy.hpp"
#include "cogradar/rng.hpp"

namespace cogradar {

/// Contiguous radar transmission over sub-bands [start, start + width).
struct Waveform {
  std::size_t start = 0;
  std::size_t width = 1;
  std::size_t d = 1;

  Waveform() = default;
  /// Throws ConfigError unless 1 <= width <= d and start + width <= d.
  Waveform(std::size_t start, std::size_t width, std::size_t d);

  /// "start:width", the trace serialization.
  static Waveform parse(std::string_view text, std::size_t d);

  bool covers(std::size_t band) const { return band >= start && band < start + width; }
  OccupancyVector support() const;
  std::string to_string() const;

  friend bool operator==(const Waveform&, const Waveform&) = default;
};

/// Number of contiguous waveforms over d sub-bands, d(d+1)/2.
constexpr std::size_t catalog_size(std::size_t d) { return d * (d + 1) / 2; }

/// All contiguous waveforms ordered by width descending, then start
/// ascending. This order defines arm indices for the learning policy.
std::vector<Waveform> enumerate_waveforms(std::size_t d);

/// Position of `w` in enumerate_waveforms(w.d).
std::size_t arm_index(const Waveform& w);

/// Length of the longest all-zero run (0 when fully occupied). Runs do not
/// wrap around from the last sub-band to the first.
std::size_t widest_vacancy_width(const OccupancyVector& s);

/// Every waveform that covers a maximal all-zero run of `o`. When `o` is
/// fully occupied this is every width-1 waveform: the radar still has to
/// transmit, so it falls back to the narrowest footprint.
std::vector<Waveform> widest_vacancy_candidates(const OccupancyVector& o);

/// One of widest_vacancy_candidates(o), chosen uniformly at random.
Waveform widest_vacancy(const OccupancyVector& o, Rng& rng);

}  // namespace cogradar
