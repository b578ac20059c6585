#include "cogradar/loss.hpp"

#include <cmath>

#include "cogradar/errors.hpp"

namespace cogradar {

namespace {

void check_dimension(const Waveform& w, const OccupancyVector& s) {
  if (w.d != s.size()) {
    throw ConfigError("waveform over " + std::to_string(w.d) + " sub-bands scored against a " +
                      std::to_string(s.size()) + "-band state");
  }
}

double from_db(double db) { return std::pow(10.0, db / 10.0); }

double sinr_db_from_counts(const Waveform& w, std::size_t n_c, const LossParams& params) {
  const double signal = from_db(params.sinr.snr0_db) * static_cast<double>(w.d);
  const double noise =
      static_cast<double>(w.width) + from_db(params.sinr.inr_db) * static_cast<double>(n_c);
  return 10.0 * std::log10(signal / noise);
}

}  // namespace

void LossParams::validate(std::size_t d) const {
  if (!(eta >= 0.0 && eta <= 1.0 / static_cast<double>(d))) {
    throw ConfigError("eta must lie in [0, 1/d] = [0, " + std::to_string(1.0 / d) + "]");
  }
}

std::size_t collision_count(const Waveform& w, const OccupancyVector& s) {
  check_dimension(w, s);
  std::size_t n = 0;
  for (std::size_t i = w.start; i < w.start + w.width; ++i) n += s[i] ? 1 : 0;
  return n;
}

std::size_t missed_opportunity_count(const Waveform& w, const OccupancyVector& s) {
  check_dimension(w, s);
  const std::size_t best = widest_vacancy_width(s);
  return best > w.width ? best - w.width : 0;
}

double loss(const Waveform& w, const OccupancyVector& s, const LossParams& params) {
  if (collision_count(w, s) > 0) return 1.0;
  return params.eta * static_cast<double>(missed_opportunity_count(w, s));
}

double sinr_db(const Waveform& w, const OccupancyVector& s, const LossParams& params) {
  return sinr_db_from_counts(w, collision_count(w, s), params);
}

PriOutcome evaluate(const Waveform& w, const OccupancyVector& s, const LossParams& params) {
  PriOutcome out;
  out.collision_count = collision_count(w, s);
  out.collided = out.collision_count > 0;
  out.missed_count = missed_opportunity_count(w, s);
  out.missed = out.missed_count > 0;
  out.loss = out.collided ? 1.0 : params.eta * static_cast<double>(out.missed_count);
  out.sinr_db = sinr_db_from_counts(w, out.collision_count, params);
  return out;
}

}  // namespace cogradar
