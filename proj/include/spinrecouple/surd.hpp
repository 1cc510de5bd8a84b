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

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "spinrecouple/rational.hpp"

namespace spinrecouple {

/// Splits n > 0 as n = square * square * squarefree by trial division and
/// returns {square, squarefree}. The radicands produced by angular momentum
/// couplings are products of small factorials, hence smooth, so trial
/// division terminates after the primes below the largest spin sum.
inline std::pair<BigInt, BigInt> extract_square_part(BigInt n) {
    if (n <= 0) {
        throw DomainError("square extraction needs a positive integer");
    }
    BigInt square = 1;
    BigInt free_part = 1;
    for (BigInt d = 2; d * d <= n; ++d) {
        if (n % d != 0) {
            continue;
        }
        int count = 0;
        while (n % d == 0) {
            n /= d;
            ++count;
        }
        for (int i = 0; i < count / 2; ++i) {
            square *= d;
        }
        if (count % 2 != 0) {
            free_part *= d;
        }
    }
    free_part *= n;  // leftover is 1 or prime
    return {square, free_part};
}

/// An exact real number of the form sum_i c_i * sqrt(r_i) with rational c_i
/// and distinct square-free integer radicands r_i >= 1 (r = 1 is the rational
/// part). The representation is unique: no zero coefficients, the empty sum
/// is 0, and structural equality coincides with equality of the represented
/// reals. Values are immutable and safe to share across threads.
class SurdSum {
  public:
    using TermMap = std::map<BigInt, Rational>;

    SurdSum() = default;  // zero

    static SurdSum of_rational(const Rational& value) {
        SurdSum s;
        if (value != 0) {
            s.terms_.emplace(BigInt(1), value);
        }
        return s;
    }

    static SurdSum of_int(long long value) {
        return of_rational(Rational(value));
    }

    /// coefficient * sqrt(radicand), with the radicand reduced to square-free
    /// form. Rejects radicand <= 0.
    static SurdSum of_surd(const Rational& coefficient, const BigInt& radicand) {
        if (radicand <= 0) {
            throw DomainError("surd radicand must be a positive integer");
        }
        SurdSum s;
        if (coefficient == 0) {
            return s;
        }
        auto [square, free_part] = extract_square_part(radicand);
        Rational coeff = coefficient * Rational(square);
        s.terms_.emplace(free_part, std::move(coeff));
        return s;
    }

    /// sqrt of a non-negative rational: sqrt(p/q) = sqrt(p*q)/q.
    static SurdSum sqrt_rational(const Rational& value) {
        if (value < 0) {
            throw DomainError("square root of a negative rational");
        }
        if (value == 0) {
            return SurdSum();
        }
        const BigInt num = rational_num(value);
        const BigInt den = rational_den(value);
        return of_surd(make_rational(1, den), num * den);
    }

    bool is_zero() const {
        return terms_.empty();
    }

    bool is_rational() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
    }

    /// The value as a rational; throws unless is_rational().
    Rational as_rational() const {
        if (terms_.empty()) {
            return Rational(0);
        }
        if (!is_rational()) {
            throw DomainError("surd sum is irrational");
        }
        return terms_.begin()->second;
    }

    const TermMap& terms() const {
        return terms_;
    }

    SurdSum& operator+=(const SurdSum& other) {
        for (const auto& [radicand, coeff] : other.terms_) {
            add_term(radicand, coeff);
        }
        return *this;
    }

    SurdSum& operator-=(const SurdSum& other) {
        for (const auto& [radicand, coeff] : other.terms_) {
            add_term(radicand, -coeff);
        }
        return *this;
    }

    SurdSum operator-() const {
        SurdSum result(*this);
        for (auto& [radicand, coeff] : result.terms_) {
            coeff = -coeff;
        }
        return result;
    }

    SurdSum& operator*=(const Rational& scalar) {
        if (scalar == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [radicand, coeff] : terms_) {
            coeff *= scalar;
        }
        return *this;
    }

    friend SurdSum operator+(SurdSum lhs, const SurdSum& rhs) {
        lhs += rhs;
        return lhs;
    }

    friend SurdSum operator-(SurdSum lhs, const SurdSum& rhs) {
        lhs -= rhs;
        return lhs;
    }

    friend SurdSum operator*(const SurdSum& lhs, const SurdSum& rhs) {
        SurdSum result;
        for (const auto& [ra, ca] : lhs.terms_) {
            for (const auto& [rb, cb] : rhs.terms_) {
                // ra, rb square-free: with g = gcd, ra*rb = g^2 * (ra/g)(rb/g)
                // and the cofactors are coprime, so the product radicand is
                // already square-free.
                BigInt g = gcd(ra, rb);
                result.add_term((ra / g) * (rb / g), ca * cb * Rational(g));
            }
        }
        return result;
    }

    friend SurdSum operator*(SurdSum lhs, const Rational& scalar) {
        lhs *= scalar;
        return lhs;
    }

    friend SurdSum operator*(const Rational& scalar, SurdSum rhs) {
        rhs *= scalar;
        return rhs;
    }

    friend bool operator==(const SurdSum& lhs, const SurdSum& rhs) {
        return lhs.terms_ == rhs.terms_;
    }

    friend bool operator!=(const SurdSum& lhs, const SurdSum& rhs) {
        return !(lhs == rhs);
    }

    struct Approximation {
        Rational value;        // exact rational approximation
        Rational error_bound;  // |value - represented real| <= error_bound
    };

    /// Rational approximation with each sqrt evaluated to precision_bits
    /// fractional bits; error_bound <= (#terms) * max|coeff| * 2^-precision_bits.
    Approximation approximate(unsigned precision_bits) const {
        if (precision_bits < 1) {
            throw DomainError("precision_bits must be positive");
        }
        const BigInt scale = BigInt(1) << precision_bits;
        Approximation out{Rational(0), Rational(0)};
        for (const auto& [radicand, coeff] : terms_) {
            if (radicand == 1) {
                out.value += coeff;  // exact
                continue;
            }
            // floor(sqrt(r) * 2^bits): 0 <= sqrt(r) - s/2^bits < 2^-bits
            const BigInt shifted = radicand << (2 * precision_bits);
            const BigInt s = sqrt(shifted);
            out.value += coeff * make_rational(s, scale);
            out.error_bound += abs_rational(coeff) * make_rational(1, scale);
        }
        return out;
    }

    struct FloatValue {
        double value = 0.0;
        double error_bound = 0.0;  // guaranteed |value - represented real| <= error_bound
    };

    /// Double approximation with a certified absolute error bound. The bound
    /// combines the sqrt truncation error with the final rounding to double
    /// and shrinks monotonically as precision_bits grows.
    FloatValue to_double(unsigned precision_bits = 53) const {
        if (precision_bits < 16) {
            throw DomainError("precision_bits must be at least 16");
        }
        if (terms_.empty()) {
            return FloatValue{0.0, 0.0};
        }
        const Approximation approx = approximate(precision_bits);
        FloatValue out;
        out.value = approx.value.convert_to<double>();
        if (approx.error_bound == 0 && Rational(out.value) == approx.value) {
            return out;  // exactly representable rational
        }
        double bound = approx.error_bound.convert_to<double>();
        // conversion of the bound itself may round down; bump two ulps up
        bound = std::nextafter(std::nextafter(bound, std::numeric_limits<double>::infinity()),
                               std::numeric_limits<double>::infinity());
        // rounding of value to double: within one ulp of the rational
        const double mag = std::max(std::fabs(out.value), std::numeric_limits<double>::min());
        bound += std::ldexp(mag, -52);
        out.error_bound = bound;
        return out;
    }

    std::string str() const {
        if (terms_.empty()) {
            return "0";
        }
        std::ostringstream out;
        bool first = true;
        for (const auto& [radicand, coeff] : terms_) {
            if (!first) {
                out << (coeff < 0 ? " - " : " + ");
            } else if (coeff < 0) {
                out << "-";
            }
            first = false;
            const Rational mag = abs_rational(coeff);
            if (radicand == 1) {
                out << mag;
            } else {
                if (mag != 1) {
                    out << mag << "*";
                }
                out << "sqrt(" << radicand << ")";
            }
        }
        return out.str();
    }

  private:
    void add_term(const BigInt& radicand, const Rational& coeff) {
        if (coeff == 0) {
            return;
        }
        auto it = terms_.find(radicand);
        if (it == terms_.end()) {
            terms_.emplace(radicand, coeff);
            return;
        }
        it->second += coeff;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }

    TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& out, const SurdSum& s) {
    return out << s.str();
}

/// True when the two values agree within the combined certified bounds at the
/// given precision. For exact values built from bounded rationals this is an
/// equality test at high precision.
inline bool agrees_at_precision(const SurdSum& a, const SurdSum& b, unsigned precision_bits) {
    const auto pa = a.approximate(precision_bits);
    const auto pb = b.approximate(precision_bits);
    const Rational diff = abs_rational(pa.value - pb.value);
    return diff <= pa.error_bound + pb.error_bound;
}

}  // namespace spinrecouple
