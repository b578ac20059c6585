#include "cogradar/waveform.hpp"

#include <charconv>

#include "cogradar/errors.hpp"

namespace cogradar {

Waveform::Waveform(std::size_t start_, std::size_t width_, std::size_t d_)
    : start(start_), width(width_), d(d_) {
  if (width < 1 || width > d) {
    throw ConfigError("waveform width " + std::to_string(width) + " outside [1, " +
                      std::to_string(d) + "]");
  }
  if (start + width > d) {
    throw ConfigError("waveform " + to_string() + " extends past sub-band " +
                      std::to_string(d - 1));
  }
}

Waveform Waveform::parse(std::string_view text, std::size_t d) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("waveform '" + std::string(text) + "' is not of the form start:width");
  }
  auto to_size = [&](std::string_view part) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size()) {
      throw ConfigError("waveform '" + std::string(text) + "' has a non-integer field");
    }
    return v;
  };
  return Waveform(to_size(text.substr(0, colon)), to_size(text.substr(colon + 1)), d);
}

OccupancyVector Waveform::support() const {
  std::vector<std::uint8_t> bits(d, 0);
  for (std::size_t i = start; i < start + width; ++i) bits[i] = 1;
  return OccupancyVector(std::move(bits));
}

std::string Waveform::to_string() const {
  return std::to_string(start) + ":" + std::to_string(width);
}

std::vector<Waveform> enumerate_waveforms(std::size_t d) {
  if (d == 0) throw ConfigError("waveform catalog needs d >= 1");
  std::vector<Waveform> out;
  out.reserve(catalog_size(d));
  for (std::size_t width = d; width >= 1; --width) {
    for (std::size_t start = 0; start + width <= d; ++start) out.emplace_back(start, width, d);
  }
  return out;
}

std::size_t arm_index(const Waveform& w) {
  // Waveforms wider than w: sum over k in (w.width, d] of (d - k + 1).
  const std::size_t wider = w.d - w.width;
  return wider * (wider + 1) / 2 + w.start;
}

namespace {

struct Run {
  std::size_t start;
  std::size_t length;
};

std::vector<Run> zero_runs(const OccupancyVector& o) {
  std::vector<Run> runs;
  const std::size_t d = o.size();
  std::size_t i = 0;
  while (i < d) {
    if (o[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < d && !o[j]) ++j;
    runs.push_back({i, j - i});
    i = j;
  }
  return runs;
}

}  // namespace

std::size_t widest_vacancy_width(const OccupancyVector& s) {
  std::size_t best = 0;
  for (const auto& r : zero_runs(s)) best = std::max(best, r.length);
  return best;
}

std::vector<Waveform> widest_vacancy_candidates(const OccupancyVector& o) {
  const std::size_t d = o.size();
  const auto runs = zero_runs(o);
  std::vector<Waveform> out;
  if (runs.empty()) {
    for (std::size_t i = 0; i < d; ++i) out.emplace_back(i, 1, d);
    return out;
  }
  std::size_t best = 0;
  for (const auto& r : runs) best = std::max(best, r.length);
  for (const auto& r : runs) {
    if (r.length == best) out.emplace_back(r.start, r.length, d);
  }
  return out;
}

Waveform widest_vacancy(const OccupancyVector& o, Rng& rng) {
  auto candidates = widest_vacancy_candidates(o);
  if (candidates.size() == 1) return candidates.front();
  const auto k = std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng);
  return candidates[k];
}

}  // namespace cogradar
