// Copyright 2026 The spinrecouple Authors
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

#include <deque>
#include <mutex>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "spinrecouple/errors.hpp"

namespace spinrecouple {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator; zero is 0/1.
using Rational = boost::multiprecision::cpp_rational;

/// Rational from a numerator/denominator pair. Rejects a zero denominator and
/// normalizes the sign into the numerator.
inline Rational make_rational(BigInt num, BigInt den) {
    if (den == 0) {
        throw DomainError("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

inline BigInt rational_num(const Rational& q) {
    return numerator(q);
}

inline BigInt rational_den(const Rational& q) {
    return denominator(q);
}

inline Rational abs_rational(const Rational& q) {
    return q < 0 ? Rational(-q) : q;
}

/// Parses a decimal integer string (optional leading '-').
inline BigInt parse_bigint(const std::string& text) {
    if (text.empty()) {
        throw DomainError("empty integer literal");
    }
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (i == 0 && ch == '-' && text.size() > 1) {
            continue;
        }
        if (ch < '0' || ch > '9') {
            throw DomainError("bad integer literal: '" + text + "'");
        }
    }
    return BigInt(text);
}

/// n! over big integers, memoized process-wide. The deque never invalidates
/// references to already-computed entries, so returned references stay valid
/// across concurrent extension.
inline const BigInt& factorial(int n) {
    if (n < 0) {
        throw DomainError("factorial of negative argument " + std::to_string(n));
    }
    static std::mutex mutex;
    static std::deque<BigInt> table{BigInt(1), BigInt(1)};
    std::scoped_lock lock(mutex);
    while (static_cast<int>(table.size()) <= n) {
        table.push_back(table.back() * static_cast<int>(table.size()));
    }
    return table[static_cast<std::size_t>(n)];
}

}  // namespace spinrecouple
