// Copyright 2026 The bpmeasure Authors
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

#include "bpmeasure/rational.hpp"

#include <charconv>
#include <limits>

#include "bpmeasure/error.hpp"

namespace bpm {
namespace {

__extension__ using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

constexpr i128 kWideLimit = (static_cast<i128>(1) << 125);

void check_wide(i128 v) {
  if (v > kWideLimit || v < -kWideLimit) throw ArithmeticError("rational overflow");
}

i128 mul_checked(i128 a, i128 b) {
  if (a == 0 || b == 0) return 0;
  i128 abs_a = a < 0 ? -a : a;
  i128 abs_b = b < 0 ? -b : b;
  if (abs_a > kWideLimit / abs_b) throw ArithmeticError("rational overflow");
  return a * b;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ArithmeticError("division by zero");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(i128 num, i128 den) {
  if (den == 0) throw ArithmeticError("division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits64(num) || !fits64(den)) throw ArithmeticError("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::operator-() const { return from_wide(-static_cast<i128>(num_), den_); }

Rational& Rational::operator+=(const Rational& rhs) {
  i128 n = mul_checked(num_, rhs.den_) + mul_checked(rhs.num_, den_);
  check_wide(n);
  *this = from_wide(n, mul_checked(den_, rhs.den_));
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  *this = from_wide(mul_checked(num_, rhs.num_), mul_checked(den_, rhs.den_));
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw ArithmeticError("division by zero");
  *this = from_wide(mul_checked(num_, rhs.den_), mul_checked(den_, rhs.num_));
  return *this;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  i128 l = static_cast<i128>(lhs.num_) * rhs.den_;
  i128 r = static_cast<i128>(rhs.num_) * lhs.den_;
  return l <=> r;
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rational::round_to_integer() const {
  std::int64_t fl = floor();
  Rational frac = *this - Rational(fl);
  auto cmp = frac <=> Rational(1, 2);
  if (cmp < 0) return fl;
  if (cmp > 0) return fl + 1;
  return (fl % 2 == 0) ? fl : fl + 1;
}

Rational Rational::round_half_even(int decimals) const {
  std::int64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  Rational scaled = *this * Rational(scale);
  return Rational(scaled.round_to_integer(), scale);
}

std::string Rational::to_fixed(int decimals) const {
  Rational r = round_half_even(decimals);
  std::int64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  i128 scaled = static_cast<i128>(r.num_) * (scale / r.den_);
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  auto int_part = static_cast<std::uint64_t>(scaled / scale);
  auto frac_part = static_cast<std::uint64_t>(scaled % scale);
  std::string out = neg ? "-" : "";
  out += std::to_string(int_part);
  if (decimals > 0) {
    std::string frac = std::to_string(frac_part);
    out += '.';
    out.append(static_cast<std::size_t>(decimals) - frac.size(), '0');
    out += frac;
  }
  return out;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  std::int64_t d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  int places = twos > fives ? twos : fives;
  if (d != 1 || places > 18) return std::to_string(num_) + "/" + std::to_string(den_);
  return to_fixed(places);
}

std::optional<Rational> Rational::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto n = parse(text.substr(0, slash));
    auto d = parse(text.substr(slash + 1));
    if (!n || !d || d->is_zero() || !n->is_integer() || !d->is_integer()) return std::nullopt;
    try {
      return *n / *d;
    } catch (const ArithmeticError&) {
      return std::nullopt;
    }
  }
  bool neg = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    neg = text[0] == '-';
    i = 1;
  }
  i128 num = 0;
  i128 den = 1;
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_point) return std::nullopt;
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') return std::nullopt;
    seen_digit = true;
    num = num * 10 + (c - '0');
    if (seen_point) den *= 10;
    if (num > kWideLimit || den > kWideLimit) return std::nullopt;
  }
  if (!seen_digit) return std::nullopt;
  if (neg) num = -num;
  try {
    return from_wide(num, den);
  } catch (const ArithmeticError&) {
    return std::nullopt;
  }
}

}  // namespace bpm
