#include "rrscore/rational.hpp"

#include <cctype>
#include <cstdio>

namespace rrscore {

double to_double(const Rat& r) { return r.convert_to<double>(); }

namespace {

bool parse_unsigned_digits(std::string_view s, BigInt* out) {
  if (s.empty()) return false;
  BigInt v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    v = v * 10 + (c - '0');
  }
  *out = v;
  return true;
}

}  // namespace

std::optional<Rat> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;

  Rat value;
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    BigInt num, den;
    if (!parse_unsigned_digits(text.substr(0, slash), &num)) return std::nullopt;
    if (!parse_unsigned_digits(text.substr(slash + 1), &den)) return std::nullopt;
    if (den == 0) return std::nullopt;
    value = Rat(num, den);
  } else {
    auto dot = text.find('.');
    if (dot == std::string_view::npos) {
      BigInt num;
      if (!parse_unsigned_digits(text, &num)) return std::nullopt;
      value = Rat(num);
    } else {
      std::string_view whole = text.substr(0, dot);
      std::string_view frac = text.substr(dot + 1);
      if (whole.empty() && frac.empty()) return std::nullopt;
      BigInt w = 0, f = 0;
      if (!whole.empty() && !parse_unsigned_digits(whole, &w)) return std::nullopt;
      if (!frac.empty() && !parse_unsigned_digits(frac, &f)) return std::nullopt;
      BigInt scale = 1;
      for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
      value = Rat(w * scale + f, scale);
    }
  }
  if (negative) value = -value;
  return value;
}

std::string format_rational(const Rat& r) {
  std::string num = numerator(r).str();
  if (denominator(r) == 1) return num;
  return num + "/" + denominator(r).str();
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace rrscore
