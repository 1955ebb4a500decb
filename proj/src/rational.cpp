#include "sublin/rational.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "sublin/measurable.hpp"

namespace sublin {

namespace {

using u128 = unsigned __int128;

constexpr __int128 kInt64Max = std::numeric_limits<std::int64_t>::max();

__int128 gcd128(__int128 a, __int128 b) {
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int bit_length(std::uint64_t v) { return 64 - std::countl_zero(v); }

}  // namespace

PositiveRational::PositiveRational(std::int64_t num, std::int64_t den) {
  if (num <= 0 || den <= 0) {
    throw DomainError("positive rational needs positive numerator and denominator, got " +
                      std::to_string(num) + "/" + std::to_string(den));
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

PositiveRational PositiveRational::make(__int128 num, __int128 den) {
  const __int128 g = gcd128(num, den);
  num /= g;
  den /= g;
  if (num > kInt64Max || den > kInt64Max) throw RationalOverflow("rational arithmetic overflow");
  return PositiveRational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den), Reduced{});
}

PositiveRational PositiveRational::dyadic(std::int64_t k, int level) {
  if (level < 0 || level > 62) throw DomainError("dyadic level must be in [0, 62]");
  return PositiveRational(k, std::int64_t{1} << level);
}

PositiveRational PositiveRational::power_of_two(int exponent) {
  if (exponent < -62 || exponent > 62) throw DomainError("power of two exponent out of range");
  return exponent >= 0 ? PositiveRational(std::int64_t{1} << exponent, 1)
                       : PositiveRational(1, std::int64_t{1} << -exponent);
}

PositiveRational PositiveRational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw DomainError("not a positive rational: '" + std::string(text) + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return PositiveRational(parse_int(text), 1);
  return PositiveRational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

double PositiveRational::to_double() const noexcept {
  const auto num = static_cast<std::uint64_t>(num_);
  const auto den = static_cast<std::uint64_t>(den_);
  // Scale so the quotient q = floor(num * 2^shift / den) lies in [2^53, 2^55).
  const int shift = 54 - bit_length(num) + bit_length(den);
  u128 q;
  bool sticky;
  if (shift >= 0) {
    const u128 scaled = static_cast<u128>(num) << shift;
    q = scaled / den;
    sticky = (scaled % den) != 0;
  } else {
    const u128 scaled_den = static_cast<u128>(den) << -shift;
    q = num / scaled_den;
    sticky = (num % scaled_den) != 0;
  }
  const int extra = (q >> 54) ? 2 : 1;
  std::uint64_t mantissa = static_cast<std::uint64_t>(q >> extra);
  const std::uint64_t dropped = static_cast<std::uint64_t>(q) & ((1u << extra) - 1);
  const std::uint64_t half = 1u << (extra - 1);
  if (dropped > half || (dropped == half && (sticky || (mantissa & 1)))) ++mantissa;
  return std::ldexp(static_cast<double>(mantissa), extra - shift);
}

PositiveRational operator*(const PositiveRational& a, const PositiveRational& b) {
  return PositiveRational::make(static_cast<__int128>(a.num_) * b.num_,
                                static_cast<__int128>(a.den_) * b.den_);
}

PositiveRational operator+(const PositiveRational& a, const PositiveRational& b) {
  return PositiveRational::make(
      static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
      static_cast<__int128>(a.den_) * b.den_);
}

std::strong_ordering operator<=>(const PositiveRational& a, const PositiveRational& b) {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const PositiveRational& r) {
  if (r.den() == 1) return std::to_string(r.num());
  return std::to_string(r.num()) + "/" + std::to_string(r.den());
}

}  // namespace sublin
