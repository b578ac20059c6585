#pragma once

#include <cstddef>

#include "cogradar/occupancy.hpp"
#include "cogradar/waveform.hpp"

namespace cogradar {

struct SinrParams {
  double snr0_db = 10.0;  // full-band, collision-free SNR
  double inr_db = 14.0;   // interference-to-noise ratio per colliding sub-band
};

struct LossParams {
  double eta = 0.1;
  SinrParams sinr;

  /// Throws ConfigError unless 0 <= eta <= 1/d.
  void validate(std::size_t d) const;
};

struct PriOutcome {
  std::size_t collision_count = 0;
  bool collided = false;
  std::size_t missed_count = 0;
  bool missed = false;
  double loss = 0.0;
  double sinr_db = 0.0;
};

/// Sub-bands occupied by both the waveform and the interferer.
std::size_t collision_count(const Waveform& w, const OccupancyVector& s);

/// max(widest_vacancy_width(s) - width(w), 0).
std::size_t missed_opportunity_count(const Waveform& w, const OccupancyVector& s);

/// 1 on collision, otherwise eta times the missed sub-band count.
double loss(const Waveform& w, const OccupancyVector& s, const LossParams& params);

/// Range-equation SINR proxy: signal power is fixed so that a full-band,
/// collision-free waveform sees snr0. Noise grows with occupied bandwidth and
/// every colliding sub-band adds inr:
///   SINR = snr0 * d / (width + inr * N_c).
double sinr_db(const Waveform& w, const OccupancyVector& s, const LossParams& params);

PriOutcome evaluate(const Waveform& w, const OccupancyVector& s, const LossParams& params);

}  // namespace cogradar
