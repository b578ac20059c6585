#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cogradar {

/// Binary occupancy of d sub-bands (1 = occupied). Used for interference
/// states, radar observations and waveform supports.
class OccupancyVector {
 public:
  OccupancyVector() = default;

  /// Throws ConfigError when empty or when an element is not 0/1.
  explicit OccupancyVector(std::vector<std::uint8_t> bits);
  OccupancyVector(std::initializer_list<int> bits);

  static OccupancyVector zeros(std::size_t d);
  /// Parses "10001" style strings.
  static OccupancyVector parse(std::string_view text);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  std::size_t count() const;
  bool any() const { return count() > 0; }
  bool all() const { return count() == size(); }

  std::string to_string() const;

  friend bool operator==(const OccupancyVector&, const OccupancyVector&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Throws ConfigError naming `what` when the sizes differ.
void require_same_dimension(const OccupancyVector& a, const OccupancyVector& b,
                            std::string_view what);

}  // namespace cogradar
