// Copyright 2026 The ParityLens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "paritylens/rational.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <string>

#include "paritylens/errors.hpp"

namespace paritylens {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Parses an unsigned decimal such as "12", "0.25", ".5", "3e2", "1.5E-3".
std::optional<Rational> parse_decimal(std::string_view s) {
  std::string_view mantissa = s;
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = s.substr(0, e);
    std::string_view exp_text = s.substr(e + 1);
    bool negative = false;
    if (!exp_text.empty() && (exp_text[0] == '+' || exp_text[0] == '-')) {
      negative = exp_text[0] == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) return std::nullopt;
    exponent = std::stol(std::string(exp_text));
    if (negative) exponent = -exponent;
  }
  std::string digits;
  long fraction_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view whole = mantissa.substr(0, dot);
    std::string_view frac = mantissa.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (!whole.empty() && !all_digits(whole)) return std::nullopt;
    if (!frac.empty() && !all_digits(frac)) return std::nullopt;
    digits = std::string(whole) + std::string(frac);
    fraction_digits = static_cast<long>(frac.size());
  } else {
    if (!all_digits(mantissa)) return std::nullopt;
    digits = std::string(mantissa);
  }
  if (digits.empty()) return std::nullopt;
  mpz_class num(digits, 10);
  long scale = exponent - fraction_digits;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  Rational out;
  if (scale >= 0) {
    out = Rational(num * pow10);
  } else {
    out = Rational(num, pow10);
  }
  out.canonicalize();
  return out;
}

}  // namespace

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("denominator", "must be nonzero");
  Rational r(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw DomainError("number", "cannot parse '" + std::string(text) + "' as a rational");
  };
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) return fail();
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = parse_decimal(s.substr(0, slash));
    auto den = parse_decimal(s.substr(slash + 1));
    if (!num || !den || *den == 0) return fail();
    value = *num / *den;
  } else {
    auto dec = parse_decimal(s);
    if (!dec) return fail();
    value = *dec;
  }
  if (negative) value = -value;
  return value;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("number", "non-finite value");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

std::string to_fraction_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str(10);
}

std::string to_decimal_string(const Rational& value, int places) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  Rational scaled = abs(value) * scale + Rational(1, 2);
  mpz_class rounded = scaled.get_num() / scaled.get_den();  // floor for nonnegative
  std::string digits = rounded.get_str(10);
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, static_cast<std::size_t>(places + 1) - digits.size(), '0');
  }
  std::string out;
  if (value < 0 && rounded != 0) out.push_back('-');
  out += digits.substr(0, digits.size() - static_cast<std::size_t>(places));
  if (places > 0) {
    out.push_back('.');
    out += digits.substr(digits.size() - static_cast<std::size_t>(places));
  }
  return out;
}

double to_double(const Rational& value) { return value.get_d(); }

Rational abs_diff(const Rational& a, const Rational& b) {
  Rational d = a - b;
  return abs(d);
}

std::string format_rate(const Rate& rate) {
  return rate ? to_fraction_string(*rate) : std::string("UNDEFINED");
}

Rate safe_ratio(const Rational& num, const Rational& den) {
  if (den == 0) return std::nullopt;
  return Rational(num / den);
}

Rational from_count(std::uint64_t count) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return Rational(mpz_class(static_cast<unsigned long>(count)));
}

Rate count_ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  Rational r(mpz_class(static_cast<unsigned long>(num)), mpz_class(static_cast<unsigned long>(den)));
  r.canonicalize();
  return r;
}

}  // namespace paritylens
