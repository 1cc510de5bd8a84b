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

#include <algorithm>
#include <array>
#include <cstdlib>
#include <shared_mutex>
#include <unordered_map>

#include "spinrecouple/surd.hpp"
#include "spinrecouple/twice_spin.hpp"

namespace spinrecouple {

/// Three spins meeting at a coupling node.
struct SpinTriple {
    TwiceSpin a, b, c;
};

/// Coupling rules of angular momentum addition: the three spins must sum to
/// an integer and satisfy the triangle inequality.
inline bool triangle_admissible(const SpinTriple& t) {
    const int ta = t.a.twice(), tb = t.b.twice(), tc = t.c.twice();
    if ((ta + tb + tc) % 2 != 0) {
        return false;
    }
    return std::abs(ta - tb) <= tc && tc <= ta + tb;
}

inline bool triangle_admissible(TwiceSpin a, TwiceSpin b, TwiceSpin c) {
    return triangle_admissible(SpinTriple{a, b, c});
}

/// sqrt(Delta(a,b,c)) with Delta = (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!.
inline SurdSum delta_coeff(const SpinTriple& t) {
    if (!triangle_admissible(t)) {
        throw DomainError("delta coefficient of inadmissible triple (" + t.a.str() + ", " +
                          t.b.str() + ", " + t.c.str() + ")");
    }
    const int ta = t.a.twice(), tb = t.b.twice(), tc = t.c.twice();
    const BigInt num = factorial((ta + tb - tc) / 2) * factorial((ta - tb + tc) / 2) *
                       factorial((-ta + tb + tc) / 2);
    const BigInt den = factorial((ta + tb + tc) / 2 + 1);
    return SurdSum::sqrt_rational(make_rational(num, den));
}

/// Six spins in the layout {a b f; c e d}: columns (a,c), (b,e), (f,d) pair
/// opposite tetrahedron edges, and the symbol is nonzero only when the triads
/// (a,b,f), (a,e,d), (c,b,d), (c,e,f) are all admissible.
struct SixSpins {
    TwiceSpin a, b, f, c, e, d;

    std::array<SpinTriple, 4> triads() const {
        return {SpinTriple{a, b, f}, SpinTriple{a, e, d}, SpinTriple{c, b, d},
                SpinTriple{c, e, f}};
    }

    bool admissible() const {
        for (const SpinTriple& t : triads()) {
            if (!triangle_admissible(t)) {
                return false;
            }
        }
        return true;
    }
};

/// Wigner 6j symbol by the Racah single-sum formula, evaluated exactly in the
/// surd ring. Returns 0 when any triad is inadmissible.
inline SurdSum sixj(const SixSpins& s) {
    if (!s.admissible()) {
        return SurdSum();
    }
    SurdSum prefactor = SurdSum::of_int(1);
    for (const SpinTriple& t : s.triads()) {
        prefactor = prefactor * delta_coeff(t);
    }

    const int ta = s.a.twice(), tb = s.b.twice(), tf = s.f.twice();
    const int tc = s.c.twice(), te = s.e.twice(), td = s.d.twice();
    const std::array<int, 4> triad_sums = {ta + tb + tf, ta + te + td, tc + tb + td,
                                           tc + te + tf};
    const std::array<int, 3> pair_sums = {ta + tb + tc + te, tb + tf + te + td,
                                          tf + ta + td + tc};
    const int lo = *std::max_element(triad_sums.begin(), triad_sums.end());
    const int hi = *std::min_element(pair_sums.begin(), pair_sums.end());

    Rational sum = 0;
    for (int t2 = lo; t2 <= hi; t2 += 2) {
        const int t = t2 / 2;
        BigInt den = 1;
        for (int triad : triad_sums) {
            den *= factorial((t2 - triad) / 2);
        }
        for (int pair : pair_sums) {
            den *= factorial((pair - t2) / 2);
        }
        const Rational term = make_rational(factorial(t + 1), den);
        if (t % 2 != 0) {
            sum -= term;
        } else {
            sum += term;
        }
    }
    return prefactor * SurdSum::of_rational(sum);
}

namespace detail {

using SixJKey = std::array<int, 6>;

struct SixJKeyHash {
    std::size_t operator()(const SixJKey& k) const {
        std::size_t h = 0;
        for (int v : k) {
            h = h * 1000003u + static_cast<std::size_t>(v);
        }
        return h;
    }
};

/// Lexicographically smallest of the 24 tetrahedral images of the symbol:
/// the 6 column permutations composed with flipping upper/lower entries in
/// any two columns.
inline SixJKey canonical_sixj_key(const SixSpins& s) {
    // columns of {a b f; c e d}
    const std::array<std::array<int, 2>, 3> cols = {
        std::array<int, 2>{s.a.twice(), s.c.twice()},
        std::array<int, 2>{s.b.twice(), s.e.twice()},
        std::array<int, 2>{s.f.twice(), s.d.twice()}};
    static constexpr std::array<std::array<int, 3>, 6> kPerms = {
        std::array<int, 3>{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    static constexpr std::array<std::array<bool, 3>, 4> kFlips = {
        std::array<bool, 3>{false, false, false},
        {true, true, false},
        {true, false, true},
        {false, true, true}};
    SixJKey best{};
    bool have = false;
    for (const auto& perm : kPerms) {
        for (const auto& flip : kFlips) {
            SixJKey key{};
            for (int i = 0; i < 3; ++i) {
                const auto& col = cols[perm[i]];
                key[i] = flip[i] ? col[1] : col[0];
                key[i + 3] = flip[i] ? col[0] : col[1];
            }
            if (!have || key < best) {
                best = key;
                have = true;
            }
        }
    }
    return best;
}

}  // namespace detail

/// sixj with a process-wide memo keyed by the canonical symmetry
/// representative. Concurrent lookups share the map; fills are idempotent.
inline SurdSum sixj_cached(const SixSpins& s) {
    if (!s.admissible()) {
        return SurdSum();
    }
    static std::shared_mutex mutex;
    static std::unordered_map<detail::SixJKey, SurdSum, detail::SixJKeyHash> cache;
    const detail::SixJKey key = detail::canonical_sixj_key(s);
    {
        std::shared_lock lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) {
            return it->second;
        }
    }
    SurdSum value = sixj(s);
    {
        std::unique_lock lock(mutex);
        cache.emplace(key, value);
    }
    return value;
}

/// The recoupling tensor [a b f; c e d] = (-1)^(a+b+c+e) sqrt((2d+1)(2f+1))
/// {a b f; c e d}: the matrix element of a tree re-association between the
/// (a,b)-coupled and (b,c)-coupled bases. Zero when inadmissible.
inline SurdSum recoupling_tensor(const SixSpins& s) {
    if (!s.admissible()) {
        return SurdSum();
    }
    // a+b+c+e is an integer for admissible symbols
    const int phase2 = s.a.twice() + s.b.twice() + s.c.twice() + s.e.twice();
    const long long dims =
        static_cast<long long>(s.d.dimension()) * static_cast<long long>(s.f.dimension());
    SurdSum value = sixj_cached(s) * SurdSum::sqrt_rational(Rational(dims));
    if ((phase2 / 2) % 2 != 0) {
        value = -value;
    }
    return value;
}

/// Phase picked up when the two subsystems coupled as (j1, j2) -> j are
/// exchanged: (-1)^(j1+j2-j), always +1 or -1 for admissible triples.
inline SurdSum twist_phase(TwiceSpin j1, TwiceSpin j2, TwiceSpin j) {
    if (!triangle_admissible(j1, j2, j)) {
        throw DomainError("twist of inadmissible triple (" + j1.str() + ", " + j2.str() + ", " +
                          j.str() + ")");
    }
    const int exponent = (j1.twice() + j2.twice() - j.twice()) / 2;
    return SurdSum::of_int(exponent % 2 == 0 ? 1 : -1);
}

/// LHS minus RHS of the Biedenharn-Elliott identity
///   sum_x (-1)^phi (2x+1) {a b x; c d g} {c d x; e f h} {e f x; b a j}
///     = {g h j; e a d} {g h j; f b c},
/// phi = a+b+c+d+e+f+g+h+x+j. Identically zero; exposed as a property-test
/// helper.
inline SurdSum biedenharn_elliott_residual(TwiceSpin a, TwiceSpin b, TwiceSpin c, TwiceSpin d,
                                           TwiceSpin e, TwiceSpin f, TwiceSpin g, TwiceSpin h,
                                           TwiceSpin j) {
    const int ta = a.twice(), tb = b.twice(), tc = c.twice(), td = d.twice(), te = e.twice(),
              tf = f.twice(), tg = g.twice(), th = h.twice(), tj = j.twice();

    SurdSum lhs;
    const int lo = std::max({std::abs(ta - tb), std::abs(tc - td), std::abs(te - tf)});
    const int hi = std::min({ta + tb, tc + td, te + tf});
    for (int tx = lo; tx <= hi; ++tx) {
        const TwiceSpin x(tx);
        const SixSpins s1{a, b, x, c, d, g};
        const SixSpins s2{c, d, x, e, f, h};
        const SixSpins s3{e, f, x, b, a, j};
        if (!s1.admissible() || !s2.admissible() || !s3.admissible()) {
            continue;
        }
        // phi is an integer whenever all three symbols are admissible
        const int phi2 = ta + tb + tc + td + te + tf + tg + th + tx + tj;
        SurdSum term = sixj_cached(s1) * sixj_cached(s2) * sixj_cached(s3);
        term *= Rational(tx + 1);
        if ((phi2 / 2) % 2 != 0) {
            term = -term;
        }
        lhs += term;
    }

    const SurdSum rhs = sixj_cached(SixSpins{g, h, j, e, a, d}) *
                        sixj_cached(SixSpins{g, h, j, f, b, c});
    return lhs - rhs;
}

}  // namespace spinrecouple
