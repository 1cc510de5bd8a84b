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

#include <compare>
#include <ostream>
#include <string>

#include "spinrecouple/errors.hpp"

namespace spinrecouple {

/// An angular momentum j stored as the integer 2j, so half-integers are exact.
/// j is an integer iff twice() is even.
class TwiceSpin {
  public:
    constexpr TwiceSpin() = default;

    explicit TwiceSpin(int twice) : twice_(twice) {
        if (twice < 0) {
            throw DomainError("spin must be non-negative, got 2j=" + std::to_string(twice));
        }
    }

    constexpr int twice() const {
        return twice_;
    }

    /// True when j is a whole integer.
    constexpr bool integral() const {
        return twice_ % 2 == 0;
    }

    /// 2j + 1, the dimension of the spin-j irrep.
    constexpr int dimension() const {
        return twice_ + 1;
    }

    std::string str() const {
        if (twice_ % 2 == 0) {
            return std::to_string(twice_ / 2);
        }
        return std::to_string(twice_) + "/2";
    }

    friend constexpr auto operator<=>(const TwiceSpin&, const TwiceSpin&) = default;

  private:
    int twice_ = 0;
};

inline std::ostream& operator<<(std::ostream& out, const TwiceSpin& j) {
    return out << j.str();
}

}  // namespace spinrecouple
