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

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace paritylens {

/// Exact rational number. All probabilities in the library are carried in
/// this type; conversion to floating point happens only at report time.
using Rational = mpq_class;

/// A rate that may be UNDEFINED (zero denominator). An empty optional is the
/// UNDEFINED value.
using Rate = std::optional<Rational>;

/// Builds num/den in canonical form. Throws DomainError on den == 0.
Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Parses "3/10", "-2", "0.3", "1.5e-2" exactly. Decimal input is read as
/// the exact decimal it spells, never through a binary double.
Rational parse_rational(std::string_view text);

/// Exact rational value of the shortest decimal that round-trips `value`,
/// so 0.3 becomes 3/10 rather than 5404319552844595/18014398509481984.
Rational rational_from_double(double value);

/// "4/5", "1", "-2/3".
std::string to_fraction_string(const Rational& value);

/// Fixed-point text with `places` digits, rounded half away from zero using
/// exact arithmetic, so the output is platform independent.
std::string to_decimal_string(const Rational& value, int places = 6);

double to_double(const Rational& value);

Rational abs_diff(const Rational& a, const Rational& b);

/// "UNDEFINED" for an empty rate, otherwise the fraction.
std::string format_rate(const Rate& rate);

/// Divides, returning UNDEFINED when the denominator is zero.
Rate safe_ratio(const Rational& num, const Rational& den);

Rational from_count(std::uint64_t count);

/// num/den for counts; UNDEFINED when den == 0.
Rate count_ratio(std::uint64_t num, std::uint64_t den);

}  // namespace paritylens
