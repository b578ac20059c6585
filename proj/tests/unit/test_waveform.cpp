#include <map>
#include <set>

#include "cogradar/errors.hpp"
#include "cogradar/waveform.hpp"
#include "doctest.h"

using namespace cogradar;

namespace {

// Longest all-zero substring by checking every (i, j) window.
std::size_t widest_run_bruteforce(const OccupancyVector& s) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i; j < s.size(); ++j) {
      bool clear = true;
      for (std::size_t k = i; k <= j; ++k) clear = clear && !s[k];
      if (clear) best = std::max(best, j - i + 1);
    }
  }
  return best;
}

OccupancyVector random_vector(std::size_t d, Rng& rng) {
  std::bernoulli_distribution b(0.4);
  std::vector<std::uint8_t> bits(d);
  for (auto& v : bits) v = b(rng) ? 1 : 0;
  return OccupancyVector(bits);
}

}  // namespace

TEST_CASE("catalog sizes and ordering") {
  CHECK(enumerate_waveforms(4).size() == 10);
  const auto one = enumerate_waveforms(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == Waveform(0, 1, 1));
  const auto five = enumerate_waveforms(5);
  CHECK(five.size() == 15);
  CHECK(five.front() == Waveform(0, 5, 5));
  CHECK(five.back() == Waveform(4, 1, 5));
  CHECK_THROWS_AS(enumerate_waveforms(0), ConfigError);
}

TEST_CASE("catalog equals brute-force contiguous bitmasks for d <= 12") {
  for (std::size_t d = 1; d <= 12; ++d) {
    std::set<unsigned> oracle;
    for (unsigned mask = 1; mask < (1U << d); ++mask) {
      const unsigned low = mask & -mask;
      const unsigned run = mask + low;  // carries through a single block of ones
      if ((run & mask) == 0) oracle.insert(mask);
    }
    const auto catalog = enumerate_waveforms(d);
    CHECK(catalog.size() == d * (d + 1) / 2);
    CHECK(catalog.size() == oracle.size());
    std::set<unsigned> produced;
    for (std::size_t k = 0; k < catalog.size(); ++k) {
      const auto& w = catalog[k];
      CHECK(w.width >= 1);
      CHECK(w.start + w.width <= d);
      CHECK(arm_index(w) == k);
      unsigned mask = 0;
      for (std::size_t i = w.start; i < w.start + w.width; ++i) mask |= 1U << i;
      produced.insert(mask);
      if (k > 0) {
        const auto& prev = catalog[k - 1];
        CHECK((prev.width > w.width || (prev.width == w.width && prev.start < w.start)));
      }
    }
    CHECK(produced == oracle);
  }
}

TEST_CASE("waveform validation and serialization") {
  CHECK_THROWS_AS(Waveform(3, 3, 5), ConfigError);
  CHECK_THROWS_AS(Waveform(0, 0, 5), ConfigError);
  const auto w = Waveform::parse("1:3", 5);
  CHECK(w == Waveform(1, 3, 5));
  CHECK(w.to_string() == "1:3");
  CHECK(w.support() == OccupancyVector{0, 1, 1, 1, 0});
  CHECK_THROWS_AS(Waveform::parse("13", 5), ConfigError);
  CHECK_THROWS_AS(Waveform::parse("a:3", 5), ConfigError);
}

TEST_CASE("widest vacancy examples") {
  Rng rng(1);
  CHECK(widest_vacancy(OccupancyVector{0, 0, 0, 0, 0}, rng) == Waveform(0, 5, 5));
  CHECK(widest_vacancy(OccupancyVector{1, 0, 0, 1, 0}, rng) == Waveform(1, 2, 5));

  const auto full = widest_vacancy(OccupancyVector{1, 1, 1}, rng);
  CHECK(full.width == 1);

  CHECK(widest_vacancy_width(OccupancyVector{1, 1, 1, 1}) == 0);
  CHECK(widest_vacancy_width(OccupancyVector{0, 0, 1, 0, 0}) == 2);
}

TEST_CASE("two-way tie is broken evenly") {
  Rng rng(99);
  int left = 0;
  constexpr int kDraws = 10'000;
  for (int i = 0; i < kDraws; ++i) {
    const auto w = widest_vacancy(OccupancyVector{0, 1, 0}, rng);
    CHECK(w.width == 1);
    CHECK((w.start == 0 || w.start == 2));
    left += w.start == 0 ? 1 : 0;
  }
  CHECK(std::abs(static_cast<double>(left) / kDraws - 0.5) < 0.02);
}

TEST_CASE("tie-break is uniform over maximal runs (chi-square)") {
  Rng rng(123);
  const OccupancyVector o{0, 0, 1, 0, 0, 1, 0, 0, 1, 1};
  std::map<std::size_t, int> counts;
  constexpr int kDraws = 10'000;
  for (int i = 0; i < kDraws; ++i) counts[widest_vacancy(o, rng).start]++;
  REQUIRE(counts.size() == 3);
  double chi2 = 0.0;
  const double expected = kDraws / 3.0;
  for (const auto& [start, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < 9.21);  // chi-square, 2 dof, p = 0.01

  std::map<std::size_t, int> fallback;
  for (int i = 0; i < kDraws; ++i) fallback[widest_vacancy(OccupancyVector{1, 1, 1, 1}, rng).start]++;
  REQUIRE(fallback.size() == 4);
  chi2 = 0.0;
  for (const auto& [start, c] : fallback) {
    chi2 += (c - kDraws / 4.0) * (c - kDraws / 4.0) / (kDraws / 4.0);
  }
  CHECK(chi2 < 11.34);  // 3 dof, p = 0.01
}

TEST_CASE("widest vacancy properties on random vectors") {
  Rng rng(7);
  for (int rep = 0; rep < 2000; ++rep) {
    const std::size_t d = 1 + static_cast<std::size_t>(rep % 20);
    const auto o = random_vector(d, rng);
    CHECK(widest_vacancy_width(o) == widest_run_bruteforce(o));
    if (o.all()) continue;
    const auto w = widest_vacancy(o, rng);
    CHECK(w.width == widest_vacancy_width(o));
    for (std::size_t i = w.start; i < w.start + w.width; ++i) CHECK_FALSE(o[i]);
  }
}
