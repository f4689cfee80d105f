#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace qdl {

/// A non-negative scalar stored as its base-10 logarithm.
///
/// Covers magnitudes far outside double range (the tractability constants
/// reach 10^5152589). A value is either exactly zero or positive with a finite
/// log10 magnitude; negative values are not representable.
class LogValue {
 public:
  /// Zero.
  constexpr LogValue() = default;

  static LogValue zero() { return {}; }
  static LogValue from_log10(double log10_magnitude);
  static LogValue from_log(double natural_log);
  /// Throws std::invalid_argument for negative or non-finite input.
  static LogValue from_double(double value);

  /// Parses "1.7E775", "1.7e775", "1.7x10^775", "1.7×10^775", "10^139333" or
  /// a plain decimal number.
  static LogValue parse(std::string_view text);

  bool is_zero() const { return zero_; }
  /// log10 of the magnitude; -infinity for zero.
  double log10() const;
  /// Natural log of the magnitude; -infinity for zero.
  double log() const;
  /// Converts to double; overflows to +infinity and underflows to 0.
  double to_double() const;

  /// Decimal mantissa m in [1, 10) and integer exponent e with value = m * 10^e.
  double mantissa() const;
  std::int64_t exponent() const;

  LogValue operator*(const LogValue& rhs) const;
  LogValue operator/(const LogValue& rhs) const;
  LogValue& operator*=(const LogValue& rhs) { return *this = *this * rhs; }
  LogValue pow(double exponent) const;

  std::partial_ordering operator<=>(const LogValue& rhs) const;
  bool operator==(const LogValue& rhs) const;

  /// "mEe" rendering with `significant_digits` digits in the mantissa, e.g.
  /// "1.7E775". Zero renders as "0".
  std::string to_string(int significant_digits = 17) const;

 private:
  bool zero_ = true;
  double log10_ = 0.0;
};

}  // namespace qdl
