#include "qdl/log_value.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace qdl {

namespace {

double parse_double(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("LogValue: cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

LogValue LogValue::from_log10(double log10_magnitude) {
  if (!std::isfinite(log10_magnitude)) {
    if (log10_magnitude == -std::numeric_limits<double>::infinity()) return {};
    throw std::invalid_argument("LogValue: log10 magnitude must be finite");
  }
  LogValue v;
  v.zero_ = false;
  v.log10_ = log10_magnitude;
  return v;
}

LogValue LogValue::from_log(double natural_log) {
  return from_log10(natural_log / std::log(10.0));
}

LogValue LogValue::from_double(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument("LogValue: value must be finite and non-negative");
  }
  if (value == 0.0) return {};
  return from_log10(std::log10(value));
}

LogValue LogValue::parse(std::string_view text) {
  // Separators accepted between mantissa and exponent, longest first.
  static constexpr std::string_view kSeparators[] = {"\xC3\x97" "10^", "x10^", "*10^", "E", "e"};
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  std::string_view s = compact;
  if (s.empty()) throw std::invalid_argument("LogValue: empty input");

  if (s.starts_with("10^")) {
    return from_log10(parse_double(s.substr(3)));
  }
  for (auto sep : kSeparators) {
    auto pos = s.find(sep);
    if (pos == std::string_view::npos || pos == 0) continue;
    const double mantissa = parse_double(s.substr(0, pos));
    const double exponent = parse_double(s.substr(pos + sep.size()));
    if (mantissa < 0.0) throw std::invalid_argument("LogValue: negative mantissa");
    if (mantissa == 0.0) return {};
    return from_log10(exponent + std::log10(mantissa));
  }
  return from_double(parse_double(s));
}

double LogValue::log10() const {
  return zero_ ? -std::numeric_limits<double>::infinity() : log10_;
}

double LogValue::log() const {
  return zero_ ? -std::numeric_limits<double>::infinity() : log10_ * std::log(10.0);
}

double LogValue::to_double() const {
  if (zero_) return 0.0;
  return std::pow(10.0, log10_);
}

double LogValue::mantissa() const {
  if (zero_) return 0.0;
  return std::pow(10.0, log10_ - std::floor(log10_));
}

std::int64_t LogValue::exponent() const {
  if (zero_) return 0;
  return static_cast<std::int64_t>(std::floor(log10_));
}

LogValue LogValue::operator*(const LogValue& rhs) const {
  if (zero_ || rhs.zero_) return {};
  return from_log10(log10_ + rhs.log10_);
}

LogValue LogValue::operator/(const LogValue& rhs) const {
  if (rhs.zero_) throw std::domain_error("LogValue: division by zero");
  if (zero_) return {};
  return from_log10(log10_ - rhs.log10_);
}

LogValue LogValue::pow(double exponent) const {
  if (zero_) {
    if (exponent <= 0.0) throw std::domain_error("LogValue: zero to a non-positive power");
    return {};
  }
  return from_log10(log10_ * exponent);
}

std::partial_ordering LogValue::operator<=>(const LogValue& rhs) const {
  if (zero_ || rhs.zero_) {
    return static_cast<int>(!zero_) <=> static_cast<int>(!rhs.zero_);
  }
  return log10_ <=> rhs.log10_;
}

bool LogValue::operator==(const LogValue& rhs) const {
  if (zero_ || rhs.zero_) return zero_ == rhs.zero_;
  return log10_ == rhs.log10_;
}

std::string LogValue::to_string(int significant_digits) const {
  if (zero_) return "0";
  if (significant_digits < 1) significant_digits = 1;
  std::int64_t e = exponent();
  double m = std::pow(10.0, log10_ - static_cast<double>(e));
  // Rounding the mantissa may carry into the next decade.
  std::string mant = fmt::format("{:.{}g}", m, significant_digits);
  if (parse_double(mant) >= 10.0) {
    ++e;
    mant = fmt::format("{:.{}g}", m / 10.0, significant_digits);
  }
  return fmt::format("{}E{}", mant, e);
}

}  // namespace qdl
