// Copyright 2026 The cvcluster Authors
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

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace cvcluster {

namespace detail {

inline int64_t checked_add(int64_t x, int64_t y) {
    int64_t r;
    if (__builtin_add_overflow(x, y, &r)) {
        throw std::overflow_error("ExactScalar: integer overflow in addition");
    }
    return r;
}

inline int64_t checked_mul(int64_t x, int64_t y) {
    int64_t r;
    if (__builtin_mul_overflow(x, y, &r)) {
        throw std::overflow_error("ExactScalar: integer overflow in multiplication");
    }
    return r;
}

inline int64_t checked_neg(int64_t x) { return checked_mul(x, -1); }

}  // namespace detail

/// An element (a + b√2) / √2^m of the ring Z[1/√2].
///
/// Always stored normalized, so equality is component-wise. Zero is (0, 0, 0).
class ExactScalar {
   public:
    constexpr ExactScalar() = default;

    /// Integer value.
    ExactScalar(int64_t value) : a_(value) {}  // NOLINT(google-explicit-constructor)

    static ExactScalar from_parts(int64_t a, int64_t b, int m) {
        if (m < 0) {
            throw std::invalid_argument("ExactScalar: negative √2 exponent");
        }
        ExactScalar r;
        r.a_ = a;
        r.b_ = b;
        r.m_ = m;
        r.normalize();
        return r;
    }

    static ExactScalar sqrt2() { return from_parts(0, 1, 0); }
    static ExactScalar inv_sqrt2() { return from_parts(1, 0, 1); }
    static ExactScalar half() { return from_parts(1, 0, 2); }

    int64_t a() const { return a_; }
    int64_t b() const { return b_; }
    int m() const { return m_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }

    /// -1, 0 or +1, decided exactly.
    int sign() const {
        if (a_ >= 0 && b_ >= 0) {
            return is_zero() ? 0 : 1;
        }
        if (a_ <= 0 && b_ <= 0) {
            return -1;
        }
        __int128 a2 = static_cast<__int128>(a_) * a_;
        __int128 b2 = 2 * static_cast<__int128>(b_) * b_;
        // a and b have opposite signs; a² = 2b² is impossible unless both vanish.
        bool a_dominates = a2 > b2;
        if (a_ > 0) {
            return a_dominates ? 1 : -1;
        }
        return a_dominates ? -1 : 1;
    }

    ExactScalar abs() const { return sign() < 0 ? -*this : *this; }

    double to_double() const {
        double numer = static_cast<double>(a_) + static_cast<double>(b_) * std::sqrt(2.0);
        double r = std::ldexp(numer, -(m_ / 2));
        if (m_ % 2 == 1) {
            r /= std::sqrt(2.0);
        }
        return r;
    }

    ExactScalar operator-() const {
        ExactScalar r = *this;
        r.a_ = detail::checked_neg(a_);
        r.b_ = detail::checked_neg(b_);
        return r;
    }

    friend ExactScalar operator+(const ExactScalar &x, const ExactScalar &y) {
        int m = std::max(x.m_, y.m_);
        auto [xa, xb] = x.numerator_at(m);
        auto [ya, yb] = y.numerator_at(m);
        return from_parts(detail::checked_add(xa, ya), detail::checked_add(xb, yb), m);
    }

    friend ExactScalar operator-(const ExactScalar &x, const ExactScalar &y) { return x + (-y); }

    friend ExactScalar operator*(const ExactScalar &x, const ExactScalar &y) {
        using detail::checked_add;
        using detail::checked_mul;
        // (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
        int64_t a = checked_add(checked_mul(x.a_, y.a_), checked_mul(2, checked_mul(x.b_, y.b_)));
        int64_t b = checked_add(checked_mul(x.a_, y.b_), checked_mul(x.b_, y.a_));
        return from_parts(a, b, x.m_ + y.m_);
    }

    ExactScalar &operator+=(const ExactScalar &y) { return *this = *this + y; }
    ExactScalar &operator-=(const ExactScalar &y) { return *this = *this - y; }
    ExactScalar &operator*=(const ExactScalar &y) { return *this = *this * y; }

    friend bool operator==(const ExactScalar &, const ExactScalar &) = default;

    friend std::strong_ordering operator<=>(const ExactScalar &x, const ExactScalar &y) {
        int s = (x - y).sign();
        if (s < 0) {
            return std::strong_ordering::less;
        }
        return s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    /// "(a+b√2)/√2^m", e.g. "(1-1√2)/√2^2".
    std::string str() const {
        std::string s = "(" + std::to_string(a_);
        s += b_ < 0 ? "-" : "+";
        s += std::to_string(b_ < 0 ? -b_ : b_);
        s += "√2)/√2^" + std::to_string(m_);
        return s;
    }

    /// Inverse of str(); the input need not be normalized.
    static ExactScalar parse(std::string_view text) {
        auto fail = [&]() -> ExactScalar {
            throw std::invalid_argument("ExactScalar: cannot parse '" + std::string(text) + "'");
        };
        constexpr std::string_view tail = "√2)/√2^";
        if (text.size() < 2 || text.front() != '(') {
            return fail();
        }
        size_t pos = 1;
        auto read_int = [&](int64_t &out) {
            size_t start = pos;
            if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
                ++pos;
            }
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
                ++pos;
            }
            if (pos == start) {
                return false;
            }
            out = std::stoll(std::string(text.substr(start, pos - start)));
            return true;
        };
        int64_t a = 0;
        int64_t b = 0;
        int64_t m = 0;
        if (!read_int(a) || pos >= text.size() || (text[pos] != '+' && text[pos] != '-')) {
            return fail();
        }
        if (!read_int(b) || text.substr(pos, tail.size()) != tail) {
            return fail();
        }
        pos += tail.size();
        if (!read_int(m) || pos != text.size() || m < 0) {
            return fail();
        }
        return from_parts(a, b, static_cast<int>(m));
    }

   private:
    void normalize() {
        if (a_ == 0 && b_ == 0) {
            m_ = 0;
            return;
        }
        while (m_ >= 1 && a_ % 2 == 0) {
            int64_t next_b = a_ / 2;
            a_ = b_;
            b_ = next_b;
            --m_;
        }
    }

    /// Numerator (a', b') of the same value written over √2^target, target >= m.
    std::pair<int64_t, int64_t> numerator_at(int target) const {
        int64_t a = a_;
        int64_t b = b_;
        for (int k = m_; k < target; ++k) {
            int64_t next_a = detail::checked_mul(2, b);
            b = a;
            a = next_a;
        }
        return {a, b};
    }

    int64_t a_ = 0;
    int64_t b_ = 0;
    int m_ = 0;
};

}  // namespace cvcluster
