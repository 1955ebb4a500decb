#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sublin {

class RationalOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Exact positive rational num/den in lowest terms. Products and sums are
/// exact; results that do not fit in int64 throw RationalOverflow rather
/// than wrap or round.
class PositiveRational {
 public:
  /// Throws DomainError unless num > 0 and den > 0.
  PositiveRational(std::int64_t num, std::int64_t den = 1);

  /// k / 2^level.
  static PositiveRational dyadic(std::int64_t k, int level);
  /// 2^exponent, exponent in [-62, 62].
  static PositiveRational power_of_two(int exponent);
  /// Accepts "n" or "n/d".
  static PositiveRational parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  /// Nearest binary64, ties to even.
  double to_double() const noexcept;

  friend PositiveRational operator*(const PositiveRational& a, const PositiveRational& b);
  friend PositiveRational operator+(const PositiveRational& a, const PositiveRational& b);
  friend bool operator==(const PositiveRational&, const PositiveRational&) = default;
  friend std::strong_ordering operator<=>(const PositiveRational& a, const PositiveRational& b);

 private:
  struct Reduced {};
  PositiveRational(std::int64_t num, std::int64_t den, Reduced) : num_(num), den_(den) {}
  static PositiveRational make(__int128 num, __int128 den);

  std::int64_t num_;
  std::int64_t den_;
};

std::string to_string(const PositiveRational& r);

}  // namespace sublin
