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

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support/oracles.hpp"

using namespace spinrecouple;
using testsupport::matches_float_oracle;
using testsupport::random_admissible_sixj;

namespace {

const TwiceSpin kHalf(1);
const TwiceSpin kOne(2);
const TwiceSpin kZero(0);

SurdSum half_int(int num, int den) {
    return SurdSum::of_rational(make_rational(num, den));
}

/// All 24 tetrahedral images of {a b f; c e d}: column permutations composed
/// with upper/lower flips of two columns.
std::vector<SixSpins> tetrahedral_images(const SixSpins& s) {
    const std::array<std::array<TwiceSpin, 2>, 3> cols = {
        std::array<TwiceSpin, 2>{s.a, s.c}, {s.b, s.e}, {s.f, s.d}};
    static constexpr std::array<std::array<int, 3>, 6> perms = {
        std::array<int, 3>{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    static constexpr std::array<std::array<bool, 3>, 4> flips = {
        std::array<bool, 3>{false, false, false}, {true, true, false}, {true, false, true},
        {false, true, true}};
    std::vector<SixSpins> out;
    for (const auto& perm : perms) {
        for (const auto& flip : flips) {
            std::array<TwiceSpin, 3> upper, lower;
            for (int i = 0; i < 3; ++i) {
                const auto& col = cols[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
                upper[static_cast<std::size_t>(i)] = flip[static_cast<std::size_t>(i)] ? col[1] : col[0];
                lower[static_cast<std::size_t>(i)] = flip[static_cast<std::size_t>(i)] ? col[0] : col[1];
            }
            out.push_back(SixSpins{upper[0], upper[1], upper[2], lower[0], lower[1], lower[2]});
        }
    }
    return out;
}

}  // namespace

TEST_CASE("triangle admissibility") {
    CHECK(triangle_admissible(kHalf, kHalf, kOne));
    CHECK_FALSE(triangle_admissible(kHalf, kHalf, kHalf));   // parity
    CHECK_FALSE(triangle_admissible(kHalf, kHalf, TwiceSpin(6)));  // triangle
    CHECK(triangle_admissible(kZero, kZero, kZero));
}

TEST_CASE("delta coefficients") {
    CHECK(delta_coeff(SpinTriple{kZero, kZero, kZero}) == SurdSum::of_int(1));
    CHECK(delta_coeff(SpinTriple{kHalf, kHalf, kZero}) ==
          SurdSum::sqrt_rational(make_rational(1, 2)));
    CHECK(delta_coeff(SpinTriple{kHalf, kHalf, kOne}) ==
          SurdSum::sqrt_rational(make_rational(1, 6)));
    CHECK_THROWS_AS(delta_coeff(SpinTriple{kHalf, kHalf, kHalf}), DomainError);
}

TEST_CASE("6j values") {
    CHECK(sixj(SixSpins{kHalf, kHalf, kZero, kHalf, kHalf, kZero}) == half_int(-1, 2));
    CHECK(sixj(SixSpins{kHalf, kHalf, kOne, kHalf, kHalf, kOne}) == half_int(1, 6));
    CHECK(sixj(SixSpins{kHalf, kHalf, TwiceSpin(6), kHalf, kHalf, kZero}).is_zero());
}

TEST_CASE("6j zero-argument reduction") {
    // {a b c; 0 c b} = (-1)^(a+b+c) / sqrt((2b+1)(2c+1))
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const SixSpins base = random_admissible_sixj(rng, 10);
        const TwiceSpin a = base.a, b = base.b, c = base.f;
        const SixSpins reduced{a, b, c, kZero, c, b};
        SurdSum expected = SurdSum::sqrt_rational(
            make_rational(1, static_cast<long long>(b.dimension()) * c.dimension()));
        if (((a.twice() + b.twice() + c.twice()) / 2) % 2 != 0) {
            expected = -expected;
        }
        CHECK(sixj(reduced) == expected);
    }
}

TEST_CASE("6j agrees with the 128-bit Racah float oracle") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const SixSpins s = random_admissible_sixj(rng, 16);
        CHECK(matches_float_oracle(sixj(s), s));
    }
}

TEST_CASE("6j respects the 24 tetrahedral symmetries") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 60; ++i) {
        const SixSpins s = random_admissible_sixj(rng, 12);
        const SurdSum reference = sixj(s);
        const auto images = tetrahedral_images(s);
        CHECK(images.size() == 24);
        for (const SixSpins& image : images) {
            CHECK(sixj(image) == reference);
        }
    }
}

TEST_CASE("6j cache is transparent") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        const SixSpins s = random_admissible_sixj(rng, 12);
        CHECK(sixj_cached(s) == sixj(s));
    }
}

TEST_CASE("recoupling tensor values") {
    CHECK(recoupling_tensor(SixSpins{kHalf, kHalf, kOne, kHalf, kHalf, kZero}) ==
          SurdSum::of_surd(make_rational(1, 2), 3));
    CHECK(recoupling_tensor(SixSpins{kHalf, kHalf, kZero, kHalf, kHalf, kZero}) ==
          half_int(-1, 2));
    CHECK(recoupling_tensor(SixSpins{kHalf, kHalf, TwiceSpin(6), kHalf, kHalf, kZero}).is_zero());
}

TEST_CASE("recoupling matrices are exactly orthogonal") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        const TwiceSpin a = testsupport::random_spin(rng, 8);
        const TwiceSpin b = testsupport::random_spin(rng, 8);
        const TwiceSpin c = testsupport::random_spin(rng, 8);
        const TwiceSpin e = testsupport::random_spin(rng, 8);
        std::vector<int> fs, ds;
        for (int t = 0; t <= a.twice() + b.twice(); ++t) {
            if (triangle_admissible(a, b, TwiceSpin(t)) &&
                triangle_admissible(c, e, TwiceSpin(t))) {
                fs.push_back(t);
            }
        }
        for (int t = 0; t <= a.twice() + e.twice(); ++t) {
            if (triangle_admissible(a, e, TwiceSpin(t)) &&
                triangle_admissible(c, b, TwiceSpin(t))) {
                ds.push_back(t);
            }
        }
        if (fs.empty() || ds.empty()) {
            continue;
        }
        CHECK(fs.size() == ds.size());
        testsupport::SurdMatrix m(fs.size(), std::vector<SurdSum>(ds.size()));
        for (std::size_t i = 0; i < fs.size(); ++i) {
            for (std::size_t j = 0; j < ds.size(); ++j) {
                m[i][j] = recoupling_tensor(SixSpins{a, b, TwiceSpin(fs[i]), c, e, TwiceSpin(ds[j])});
            }
        }
        testsupport::SurdMatrix mt(ds.size(), std::vector<SurdSum>(fs.size()));
        for (std::size_t i = 0; i < fs.size(); ++i) {
            for (std::size_t j = 0; j < ds.size(); ++j) {
                mt[j][i] = m[i][j];
            }
        }
        CHECK(testsupport::surd_is_identity(testsupport::surd_multiply(mt, m)));
    }
}

TEST_CASE("twist phases") {
    CHECK(twist_phase(kHalf, kHalf, kZero) == SurdSum::of_int(-1));
    CHECK(twist_phase(kHalf, kHalf, kOne) == SurdSum::of_int(1));
    CHECK(twist_phase(kOne, kOne, TwiceSpin(4)) == SurdSum::of_int(1));
    CHECK_THROWS_AS(twist_phase(kHalf, kHalf, kHalf), DomainError);
}

TEST_CASE("Biedenharn-Elliott residual vanishes") {
    CHECK(biedenharn_elliott_residual(kZero, kZero, kZero, kZero, kZero, kZero, kZero, kZero,
                                      kZero)
              .is_zero());
    CHECK(biedenharn_elliott_residual(kHalf, kHalf, kHalf, kHalf, kHalf, kHalf, kZero, kOne, kOne)
              .is_zero());

    std::mt19937_64 rng(51);
    int tested = 0;
    while (tested < 100) {
        // build a tuple admissible for the RHS symbols so the identity is nontrivial
        const SixSpins lhs = random_admissible_sixj(rng, 10);  // {g h j; e a d}
        const TwiceSpin g = lhs.a, h = lhs.b, j = lhs.f, e = lhs.c, a = lhs.e, d = lhs.d;
        // find b, c, f admissible for {g h j; f b c}
        const SixSpins rhs = random_admissible_sixj(rng, 10);
        const TwiceSpin f = rhs.c, b = rhs.e, c = rhs.d;
        if (!SixSpins{g, h, j, f, b, c}.admissible()) {
            continue;
        }
        ++tested;
        CHECK(biedenharn_elliott_residual(a, b, c, d, e, f, g, h, j).is_zero());
    }
}
