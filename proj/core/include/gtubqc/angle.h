// Copyright 2026 The gtubqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <ostream>
#include <string_view>

namespace gtubqc {

/// Reduced fraction with positive denominator.
struct Rational {
    int64_t num = 0;
    int64_t den = 1;

    Rational() = default;
    Rational(int64_t n, int64_t d = 1);

    double to_double() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    bool is_integer() const {
        return den == 1;
    }

    Rational operator+(const Rational &other) const;
    Rational operator-(const Rational &other) const;
    Rational operator*(const Rational &other) const;
    Rational operator-() const {
        return {-num, den};
    }
    bool operator==(const Rational &other) const = default;
};

/// Floor division of a rational by an integer modulus, e.g. floor(r / 2).
int64_t floor_div(const Rational &r, int64_t modulus);

/// An angle in radians. Angles that are rational multiples of pi are kept
/// exactly (so pi/4-grid bookkeeping never drifts); anything else is a double.
class Angle {
   public:
    Angle() = default;

    /// num/den * pi.
    static Angle pi(int64_t num, int64_t den = 1);
    static Angle pi(Rational multiple);
    static Angle from_radians(double value);
    static Angle zero() {
        return pi(0);
    }

    double radians() const;
    bool is_exact() const {
        return exact_.has_value();
    }
    /// The multiple of pi, when exact.
    const std::optional<Rational> &pi_multiple() const {
        return exact_;
    }
    /// True when exactly k*pi/4 for an integer k.
    bool on_quarter_pi_grid() const;
    /// k with angle = k*pi/4, reduced into [0, 8). Requires on_quarter_pi_grid().
    int grid_index() const;
    /// True when exactly k*pi for an integer k.
    bool is_pi_multiple() const;

    Angle operator+(const Angle &other) const;
    Angle operator-(const Angle &other) const;
    Angle operator-() const;
    /// Multiplies by (-1)^bit.
    Angle signed_by(bool negate) const {
        return negate ? -*this : *this;
    }
    Angle scaled(Rational factor) const;

    /// Exact equality for exact angles; bitwise double equality otherwise.
    bool operator==(const Angle &other) const;

    /// "3pi/4", "-pi", "0" for exact angles; a round-trippable decimal otherwise.
    std::string to_string() const;
    /// Inverse of to_string. Also accepts plain decimals ("0.25") as radians.
    static Angle parse(std::string_view text);

   private:
    std::optional<Rational> exact_;
    double value_ = 0;
};

/// Result of folding an angle into [0, 2pi): angle = reduced + 2pi * wraps.
struct ReducedAngle {
    Angle reduced;
    int64_t wraps;
};
ReducedAngle reduce_mod_2pi(const Angle &angle);

std::ostream &operator<<(std::ostream &out, const Angle &angle);

/// Folds an angle into (-pi, pi].
double wrap_to_pi(double radians);

}  // namespace gtubqc
