#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The vcbundle Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "vcb/error.hpp"

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

namespace vcb {

__extension__ using Wide = __int128;

/// Exact rational with 64-bit numerator and positive denominator, always reduced.
class Rational
{
public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value)  // NOLINT(google-explicit-constructor)
    : num_(value)
  {}

  Rational(std::int64_t num, std::int64_t den)
    : num_(num)
    , den_(den)
  {
    if (den_ == 0)
    {
      throw InvalidInput("rational with zero denominator");
    }
    normalize();
  }

  constexpr std::int64_t num() const noexcept
  {
    return num_;
  }
  constexpr std::int64_t den() const noexcept
  {
    return den_;
  }

  bool is_integer() const noexcept
  {
    return den_ == 1;
  }

  /// Largest integer not above the value.
  std::int64_t floor() const noexcept
  {
    std::int64_t q = num_ / den_;
    if ((num_ % den_ != 0) && (num_ < 0))
    {
      --q;
    }
    return q;
  }

  std::int64_t ceil() const noexcept
  {
    return -Rational(-num_, den_).floor();
  }

  double to_double() const noexcept
  {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string str() const
  {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(Rational const &a, Rational const &b)
  {
    return from_wide(static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_,
                     static_cast<Wide>(a.den_) * b.den_);
  }
  friend Rational operator-(Rational const &a, Rational const &b)
  {
    return a + Rational(-b.num_, b.den_);
  }
  friend Rational operator*(Rational const &a, Rational const &b)
  {
    return from_wide(static_cast<Wide>(a.num_) * b.num_, static_cast<Wide>(a.den_) * b.den_);
  }
  friend Rational operator/(Rational const &a, Rational const &b)
  {
    if (b.num_ == 0)
    {
      throw InvalidInput("division by zero rational");
    }
    return from_wide(static_cast<Wide>(a.num_) * b.den_, static_cast<Wide>(a.den_) * b.num_);
  }
  Rational &operator+=(Rational const &o)
  {
    return *this = *this + o;
  }

  friend bool operator==(Rational const &a, Rational const &b) noexcept
  {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(Rational const &a, Rational const &b) noexcept
  {
    Wide const lhs = static_cast<Wide>(a.num_) * b.den_;
    Wide const rhs = static_cast<Wide>(b.num_) * a.den_;
    if (lhs < rhs)
    {
      return std::strong_ordering::less;
    }
    if (lhs > rhs)
    {
      return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  friend std::ostream &operator<<(std::ostream &os, Rational const &r)
  {
    return os << r.str();
  }

private:
  static Rational from_wide(Wide num, Wide den)
  {
    if (den == 0)
    {
      throw InvalidInput("rational with zero denominator");
    }
    if (den < 0)
    {
      num = -num;
      den = -den;
    }
    Wide a = num < 0 ? -num : num;
    Wide b = den;
    while (b != 0)
    {
      Wide t = a % b;
      a          = b;
      b          = t;
    }
    if (a > 1)
    {
      num /= a;
      den /= a;
    }
    constexpr Wide limit = INT64_MAX;
    if (num > limit || num < -limit || den > limit)
    {
      throw BudgetExceeded("rational overflow");
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  void normalize()
  {
    if (den_ < 0)
    {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t const g = std::gcd(num_, den_);
    if (g > 1)
    {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_{0};
  std::int64_t den_{1};
};

}  // namespace vcb
