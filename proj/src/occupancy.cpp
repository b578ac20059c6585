#include "cogradar/occupancy.hpp"

#include <algorithm>

#include "cogradar/errors.hpp"

namespace cogradar {

OccupancyVector::OccupancyVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw ConfigError("occupancy vector must have at least one sub-band");
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] > 1) {
      throw ConfigError("occupancy vector element " + std::to_string(i) + " is not 0 or 1");
    }
  }
}

OccupancyVector::OccupancyVector(std::initializer_list<int> bits) {
  std::vector<std::uint8_t> v;
  v.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw ConfigError("occupancy vector element is not 0 or 1");
    v.push_back(static_cast<std::uint8_t>(b));
  }
  *this = OccupancyVector(std::move(v));
}

OccupancyVector OccupancyVector::zeros(std::size_t d) {
  return OccupancyVector(std::vector<std::uint8_t>(d, 0));
}

OccupancyVector OccupancyVector::parse(std::string_view text) {
  std::vector<std::uint8_t> v;
  for (char c : text) {
    if (c == '0' || c == '1') {
      v.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (c != ',' && c != ' ') {
      throw ConfigError("invalid occupancy character '" + std::string(1, c) + "'");
    }
  }
  return OccupancyVector(std::move(v));
}

std::size_t OccupancyVector::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::string OccupancyVector::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

void require_same_dimension(const OccupancyVector& a, const OccupancyVector& b,
                            std::string_view what) {
  if (a.size() != b.size()) {
    throw ConfigError(std::string(what) + ": dimension mismatch (" + std::to_string(a.size()) +
                      " vs " + std::to_string(b.size()) + ")");
  }
}

}  // namespace cogradar
