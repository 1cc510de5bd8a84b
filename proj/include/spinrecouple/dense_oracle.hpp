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
#include <unordered_map>

#include "spinrecouple/engine.hpp"

namespace spinrecouple {

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> with M = m1+m2, in the
/// Condon-Shortley convention. All spins and projections are passed as twice
/// their value. The factorial ratios are accumulated exactly as rationals and
/// rounded once at the end, so there is no catastrophic cancellation.
inline double clebsch_gordan(int tj1, int tm1, int tj2, int tm2, int tj, int tm) {
    if (tm1 + tm2 != tm) {
        return 0.0;
    }
    if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm) > tj) {
        return 0.0;
    }
    if ((tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0 || (tj + tm) % 2 != 0) {
        return 0.0;
    }
    if (!triangle_admissible(TwiceSpin(tj1), TwiceSpin(tj2), TwiceSpin(tj))) {
        return 0.0;
    }

    const Rational radicand =
        make_rational(BigInt(tj + 1) * factorial((tj1 + tj2 - tj) / 2) *
                          factorial((tj1 - tj2 + tj) / 2) * factorial((-tj1 + tj2 + tj) / 2),
                      factorial((tj1 + tj2 + tj) / 2 + 1)) *
        Rational(factorial((tj + tm) / 2) * factorial((tj - tm) / 2) *
                 factorial((tj1 + tm1) / 2) * factorial((tj1 - tm1) / 2) *
                 factorial((tj2 + tm2) / 2) * factorial((tj2 - tm2) / 2));

    const int k_lo = std::max({0, -(tj - tj2 + tm1) / 2, -(tj - tj1 - tm2) / 2});
    const int k_hi = std::min({(tj1 + tj2 - tj) / 2, (tj1 - tm1) / 2, (tj2 + tm2) / 2});
    Rational sum = 0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const BigInt den = factorial(k) * factorial((tj1 + tj2 - tj) / 2 - k) *
                           factorial((tj1 - tm1) / 2 - k) * factorial((tj2 + tm2) / 2 - k) *
                           factorial((tj - tj2 + tm1) / 2 + k) *
                           factorial((tj - tj1 - tm2) / 2 + k);
        if (k % 2 != 0) {
            sum -= make_rational(1, den);
        } else {
            sum += make_rational(1, den);
        }
    }
    if (sum == 0) {
        return 0.0;
    }
    const double magnitude = std::sqrt((sum * sum * radicand).convert_to<double>());
    return sum < 0 ? -magnitude : magnitude;
}

namespace detail {

using DenseState = std::unordered_map<std::uint32_t, double>;

/// State of the subtree coupled to its labeled total spin with projection
/// tm, as amplitudes over computational basis masks (bit q-1 set = particle
/// q down). All leaves must be spin-1/2.
inline DenseState dense_subtree_state(const LabeledTree& tree, const TreeShape::ChildRef& node,
                                      int tm) {
    DenseState state;
    if (node.is_leaf) {
        if (tm == 1) {
            state.emplace(0u, 1.0);
        } else {
            state.emplace(1u << (node.index - 1), 1.0);
        }
        return state;
    }
    const TreeShape::ChildRef left = tree.shape.left_child(node.index);
    const TreeShape::ChildRef right = tree.shape.right_child(node.index);
    const int tja = left.is_leaf ? tree.leaf_spin(left.index).twice()
                                 : tree.edge_labels.at(left.index).twice();
    const int tjb = right.is_leaf ? tree.leaf_spin(right.index).twice()
                                  : tree.edge_labels.at(right.index).twice();
    const int tj = node.index == tree.shape.root_gap() ? tree.root_label.twice()
                                                       : tree.edge_labels.at(node.index).twice();

    for (int tma = -tja; tma <= tja; tma += 2) {
        const int tmb = tm - tma;
        if (std::abs(tmb) > tjb) {
            continue;
        }
        const double coeff = clebsch_gordan(tja, tma, tjb, tmb, tj, tm);
        if (coeff == 0.0) {
            continue;
        }
        const DenseState left_state = dense_subtree_state(tree, left, tma);
        const DenseState right_state = dense_subtree_state(tree, right, tmb);
        for (const auto& [mask_l, amp_l] : left_state) {
            for (const auto& [mask_r, amp_r] : right_state) {
                state[mask_l | mask_r] += coeff * amp_l * amp_r;
            }
        }
    }
    return state;
}

inline DenseState dense_tree_state(const LabeledTree& tree) {
    if (tree.shape.single_leaf()) {
        DenseState state;
        state.emplace(0u, 1.0);  // highest weight of a single spin-1/2
        return state;
    }
    return dense_subtree_state(tree, TreeShape::ChildRef{false, tree.shape.root_gap()},
                               tree.root_label.twice());
}

}  // namespace detail

inline constexpr int kDenseOracleMaxLeaves = 14;

/// Independent check on the move engine: builds both tree states as explicit
/// vectors in the highest-weight sector m = J by recursive Clebsch-Gordan
/// coupling, permutes tensor factors, and takes the inner product. Only
/// defined for spin-1/2 leaves and small n.
inline double dense_oracle_amplitude(const LabeledTree& lambda, const Permutation& p,
                                     const LabeledTree& lambda_prime) {
    const int n = lambda.shape.leaf_count();
    if (n > kDenseOracleMaxLeaves) {
        throw ResourceError("dense oracle supports at most " +
                            std::to_string(kDenseOracleMaxLeaves) + " leaves");
    }
    for (int q = 1; q <= n; ++q) {
        if (lambda.leaf_spin(q).twice() != 1 || lambda_prime.leaf_spin(q).twice() != 1) {
            throw DomainError("dense oracle needs spin-1/2 leaves");
        }
    }
    detail::check_amplitude_inputs(lambda, p, lambda_prime);
    if (lambda.root_label != lambda_prime.root_label) {
        return 0.0;
    }

    const detail::DenseState initial = detail::dense_tree_state(lambda);
    const detail::DenseState target = detail::dense_tree_state(lambda_prime);

    // <target| P(p) |initial>: P(p) maps |z> to |w> with w_i = z_{p(i)}
    double overlap = 0.0;
    for (const auto& [mask, amp] : initial) {
        std::uint32_t permuted = 0;
        for (int i = 1; i <= n; ++i) {
            if (mask & (1u << (p(i) - 1))) {
                permuted |= 1u << (i - 1);
            }
        }
        auto it = target.find(permuted);
        if (it != target.end()) {
            overlap += amp * it->second;
        }
    }
    return overlap;
}

}  // namespace spinrecouple
