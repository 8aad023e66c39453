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

#include "gtubqc/angle.h"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

using namespace gtubqc;

Rational::Rational(int64_t n, int64_t d) {
    if (d == 0) {
        throw std::invalid_argument("Rational with zero denominator.");
    }
    if (d < 0) {
        n = -n;
        d = -d;
    }
    int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) {
        g = 1;
    }
    num = n / g;
    den = d / g;
}

Rational Rational::operator+(const Rational &other) const {
    int64_t l = std::lcm(den, other.den);
    return {num * (l / den) + other.num * (l / other.den), l};
}

Rational Rational::operator-(const Rational &other) const {
    return *this + (-other);
}

Rational Rational::operator*(const Rational &other) const {
    return {num * other.num, den * other.den};
}

int64_t gtubqc::floor_div(const Rational &r, int64_t modulus) {
    // floor(num / (den * modulus))
    int64_t d = r.den * modulus;
    int64_t q = r.num / d;
    if ((r.num % d != 0) && ((r.num < 0) != (d < 0))) {
        q -= 1;
    }
    return q;
}

Angle Angle::pi(int64_t num, int64_t den) {
    return pi(Rational(num, den));
}

Angle Angle::pi(Rational multiple) {
    Angle a;
    a.exact_ = multiple;
    a.value_ = multiple.to_double() * std::numbers::pi;
    return a;
}

Angle Angle::from_radians(double value) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument("Angle must be finite.");
    }
    Angle a;
    a.value_ = value;
    return a;
}

double Angle::radians() const {
    return value_;
}

bool Angle::on_quarter_pi_grid() const {
    return exact_.has_value() && (4 % exact_->den == 0);
}

bool Angle::is_pi_multiple() const {
    return exact_.has_value() && exact_->den == 1;
}

int Angle::grid_index() const {
    if (!on_quarter_pi_grid()) {
        throw std::invalid_argument("Angle " + to_string() + " is not on the pi/4 grid.");
    }
    int64_t k = exact_->num * (4 / exact_->den);
    k %= 8;
    if (k < 0) {
        k += 8;
    }
    return static_cast<int>(k);
}

Angle Angle::operator+(const Angle &other) const {
    if (exact_ && other.exact_) {
        return pi(*exact_ + *other.exact_);
    }
    return from_radians(value_ + other.value_);
}

Angle Angle::operator-(const Angle &other) const {
    return *this + (-other);
}

Angle Angle::operator-() const {
    if (exact_) {
        return pi(-*exact_);
    }
    return from_radians(-value_);
}

Angle Angle::scaled(Rational factor) const {
    if (exact_) {
        return pi(*exact_ * factor);
    }
    return from_radians(value_ * factor.to_double());
}

bool Angle::operator==(const Angle &other) const {
    if (exact_.has_value() != other.exact_.has_value()) {
        return false;
    }
    if (exact_) {
        return *exact_ == *other.exact_;
    }
    return value_ == other.value_;
}

std::string Angle::to_string() const {
    if (exact_) {
        const Rational &r = *exact_;
        if (r.num == 0) {
            return "0";
        }
        std::string out;
        if (r.num == -1) {
            out = "-pi";
        } else if (r.num == 1) {
            out = "pi";
        } else {
            out = std::to_string(r.num) + "pi";
        }
        if (r.den != 1) {
            out += "/" + std::to_string(r.den);
        }
        return out;
    }
    std::ostringstream ss;
    ss << std::setprecision(17) << value_;
    return ss.str();
}

namespace {

int64_t parse_int(std::string_view text, std::string_view whole) {
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("Malformed angle '" + std::string(whole) + "'.");
    }
    return v;
}

}  // namespace

Angle Angle::parse(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("Empty angle.");
    }
    size_t p = text.find("pi");
    if (p == std::string_view::npos) {
        std::string s(text);
        size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != s.size()) {
            throw std::invalid_argument("Malformed angle '" + s + "'.");
        }
        if (v == 0) {
            return zero();
        }
        return from_radians(v);
    }
    std::string_view head = text.substr(0, p);
    std::string_view tail = text.substr(p + 2);
    int64_t num = 1;
    if (head == "-") {
        num = -1;
    } else if (!head.empty()) {
        num = parse_int(head, text);
    }
    int64_t den = 1;
    if (!tail.empty()) {
        if (tail[0] != '/') {
            throw std::invalid_argument("Malformed angle '" + std::string(text) + "'.");
        }
        den = parse_int(tail.substr(1), text);
        if (den <= 0) {
            throw std::invalid_argument("Malformed angle '" + std::string(text) + "'.");
        }
    }
    return pi(num, den);
}

ReducedAngle gtubqc::reduce_mod_2pi(const Angle &angle) {
    if (angle.is_exact()) {
        const Rational &r = *angle.pi_multiple();
        int64_t wraps = floor_div(r, 2);
        return {Angle::pi(r - Rational(2 * wraps)), wraps};
    }
    double two_pi = 2 * std::numbers::pi;
    double v = angle.radians();
    auto wraps = static_cast<int64_t>(std::floor(v / two_pi));
    double reduced = v - two_pi * static_cast<double>(wraps);
    if (reduced >= two_pi) {
        reduced -= two_pi;
        wraps += 1;
    } else if (reduced < 0) {
        reduced += two_pi;
        wraps -= 1;
    }
    return {Angle::from_radians(reduced), wraps};
}

double gtubqc::wrap_to_pi(double radians) {
    double two_pi = 2 * std::numbers::pi;
    double r = std::fmod(radians, two_pi);
    if (r <= -std::numbers::pi) {
        r += two_pi;
    } else if (r > std::numbers::pi) {
        r -= two_pi;
    }
    return r;
}

std::ostream &gtubqc::operator<<(std::ostream &out, const Angle &angle) {
    return out << angle.to_string();
}
