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
#include <random>

#include "spinrecouple/engine.hpp"

namespace spinrecouple {

/// Two-row Young diagram [row1, row2]; the overhang row1 - row2 equals twice
/// the total spin J of the matching angular momentum eigenspace.
struct TwoRowDiagram {
    int row1 = 0;
    int row2 = 0;

    TwoRowDiagram(int r1, int r2) : row1(r1), row2(r2) {
        if (r2 < 0 || r1 < r2 || r1 + r2 < 1) {
            throw DomainError("two-row diagram needs row1 >= row2 >= 0 and at least one box");
        }
    }

    int n() const {
        return row1 + row2;
    }

    TwiceSpin total_spin() const {
        return TwiceSpin(row1 - row2);
    }

    friend bool operator==(const TwoRowDiagram&, const TwoRowDiagram&) = default;
};

/// Standard Young tableau of a two-row shape, stored as the row (1 or 2) of
/// each entry 1..n. Standardness is the ballot condition: every prefix has at
/// least as many 1s as 2s.
struct TwoRowTableau {
    TwoRowDiagram diagram;
    std::vector<int> row_of;

    TwoRowTableau(TwoRowDiagram d, std::vector<int> rows)
        : diagram(d), row_of(std::move(rows)) {
        if (static_cast<int>(row_of.size()) != diagram.n()) {
            throw DomainError("tableau length does not match the diagram");
        }
        int ones = 0, twos = 0;
        for (int r : row_of) {
            if (r == 1) {
                ++ones;
            } else if (r == 2) {
                ++twos;
            } else {
                throw DomainError("tableau rows must be 1 or 2");
            }
            if (twos > ones) {
                throw DomainError("tableau violates the column condition (prefix with more "
                                  "second-row entries)");
            }
        }
        if (ones != diagram.row1 || twos != diagram.row2) {
            throw DomainError("tableau row counts do not match the diagram");
        }
    }

    /// Overhang after the first k entries; o_n is twice the total spin.
    int overhang(int k) const {
        int o = 0;
        for (int i = 0; i < k; ++i) {
            o += row_of[static_cast<std::size_t>(i)] == 1 ? 1 : -1;
        }
        return o;
    }

    friend bool operator==(const TwoRowTableau&, const TwoRowTableau&) = default;
    friend bool operator<(const TwoRowTableau& a, const TwoRowTableau& b) {
        return a.row_of < b.row_of;
    }
};

/// The caterpillar tree of a standard tableau: entry k becomes leaf k, and
/// the coupling of the first k spins carries the overhang after k boxes,
/// divided by two.
inline LabeledTree tableau_to_tree(const TwoRowTableau& t) {
    const int n = t.diagram.n();
    std::vector<int> particles(static_cast<std::size_t>(n));
    std::iota(particles.begin(), particles.end(), 1);
    LabeledTree tree;
    tree.shape = TreeShape::left_comb(particles);
    int o = 0;
    for (int k = 1; k <= n; ++k) {
        o += t.row_of[static_cast<std::size_t>(k - 1)] == 1 ? 1 : -1;
        if (k >= 2 && k <= n - 1) {
            tree.edge_labels.emplace(k - 1, TwiceSpin(o));
        }
    }
    tree.root_label = t.diagram.total_spin();
    return tree;
}

/// Inverse of tableau_to_tree: reads the overhang path off a labeled
/// caterpillar with spin-1/2 leaves in identity order.
inline TwoRowTableau tree_to_tableau(const LabeledTree& tree) {
    const int n = tree.shape.leaf_count();
    if (!is_left_comb(tree.shape)) {
        throw DomainError("tableau correspondence needs the caterpillar shape");
    }
    for (int i = 0; i < n; ++i) {
        if (tree.shape.leaf_order()[static_cast<std::size_t>(i)] != i + 1) {
            throw DomainError("tableau correspondence needs leaves 1..n in order");
        }
        if (tree.leaf_spin(i + 1).twice() != 1) {
            throw DomainError("tableau correspondence needs spin-1/2 leaves");
        }
    }
    if (auto violation = labeling_violation(tree)) {
        throw DomainError("invalid labeling: " + *violation);
    }
    std::vector<int> rows;
    int prev = 0;
    for (int k = 1; k <= n; ++k) {
        int o;
        if (k == 1) {
            o = 1;
        } else if (k == n) {
            o = tree.root_label.twice();
        } else {
            o = tree.edge_labels.at(k - 1).twice();
        }
        rows.push_back(o > prev ? 1 : 2);
        prev = o;
    }
    const int tj = tree.root_label.twice();
    return TwoRowTableau(TwoRowDiagram((n + tj) / 2, (n - tj) / 2), std::move(rows));
}

namespace detail {

/// counts[k][o]: ballot paths from overhang o after k entries to overhang 2J
/// after n entries.
inline std::vector<std::vector<BigInt>> ballot_completions(const TwoRowDiagram& d) {
    const int n = d.n();
    const int target = d.total_spin().twice();
    std::vector<std::vector<BigInt>> counts(static_cast<std::size_t>(n) + 1,
                                            std::vector<BigInt>(static_cast<std::size_t>(n) + 2,
                                                                BigInt(0)));
    counts[static_cast<std::size_t>(n)][static_cast<std::size_t>(target)] = 1;
    for (int k = n - 1; k >= 0; --k) {
        for (int o = 0; o <= k; ++o) {
            BigInt total = counts[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(o + 1)];
            if (o > 0) {
                total += counts[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(o - 1)];
            }
            counts[static_cast<std::size_t>(k)][static_cast<std::size_t>(o)] = total;
        }
    }
    return counts;
}

}  // namespace detail

/// Number of standard Young tableaux of the shape, by the ballot-path
/// dynamic program.
inline BigInt dimension_two_row(const TwoRowDiagram& d) {
    return detail::ballot_completions(d)[0][0];
}

/// All standard tableaux of the shape in lexicographic row_of order.
inline std::vector<TwoRowTableau> enumerate_tableaux(const TwoRowDiagram& d) {
    const int n = d.n();
    const int target = d.total_spin().twice();
    std::vector<TwoRowTableau> out;
    std::vector<int> rows;
    const auto reachable = [&](int k, int o) {
        return o >= 0 && std::abs(target - o) <= n - k;
    };
    std::function<void(int, int)> extend = [&](int k, int o) {
        if (k == n) {
            out.emplace_back(d, rows);
            return;
        }
        if (reachable(k + 1, o + 1)) {  // place k+1 in row 1
            rows.push_back(1);
            extend(k + 1, o + 1);
            rows.pop_back();
        }
        if (reachable(k + 1, o - 1)) {  // place k+1 in row 2
            rows.push_back(2);
            extend(k + 1, o - 1);
            rows.pop_back();
        }
    };
    extend(0, 0);
    return out;
}

inline constexpr int kMaxRepresentationDimension = 10000;

namespace detail {

struct YofContext {
    std::vector<TwoRowTableau> tableaux;
    std::vector<LabeledTree> trees;
    TreeShape caterpillar;
    TreeShape twisted;  // caterpillar with leaves renamed through p^{-1}
    MovePlan plan;
};

inline YofContext yof_context(const TwoRowDiagram& d, const Permutation& p) {
    if (p.size() != d.n()) {
        throw DomainError("permutation size does not match the diagram");
    }
    if (dimension_two_row(d) > kMaxRepresentationDimension) {
        throw ResourceError("representation dimension exceeds " +
                            std::to_string(kMaxRepresentationDimension));
    }
    YofContext ctx;
    ctx.tableaux = enumerate_tableaux(d);
    for (const TwoRowTableau& t : ctx.tableaux) {
        ctx.trees.push_back(tableau_to_tree(t));
    }
    ctx.caterpillar = ctx.trees.front().shape;
    const Permutation p_inv = p.inverse();
    ctx.twisted = ctx.caterpillar.relabel_leaves([&](int q) { return p_inv(q); });
    ctx.plan = plan_moves(ctx.caterpillar, p, ctx.caterpillar);
    return ctx;
}

/// Evolves the basis state of column tableau `col` under the shared plan.
inline Superposition yof_column(const YofContext& ctx, std::size_t col, int threads) {
    LabeledTree start = ctx.trees[col];
    start.shape = ctx.twisted;  // same structure, renamed leaves, same labels
    Superposition state = Superposition::basis_state(start);
    return apply_plan(std::move(state), ctx.plan, threads);
}

}  // namespace detail

/// One entry <tree(row_t)| U_p |tree(col_t)> of Young's orthogonal form,
/// computed exactly through the spin engine.
inline SurdSum yof_matrix_element(const TwoRowDiagram& d, const Permutation& p,
                                  const TwoRowTableau& row_t, const TwoRowTableau& col_t,
                                  int threads = 1) {
    if (row_t.diagram != d || col_t.diagram != d) {
        throw DomainError("tableau shape does not match the diagram");
    }
    return evaluate_amplitude(tableau_to_tree(col_t), p, tableau_to_tree(row_t), threads);
}

/// The full representation matrix of p, rows and columns indexed by the
/// standard tableaux in lexicographic order. Exactly orthogonal.
inline std::vector<std::vector<SurdSum>> yof_full_matrix(const TwoRowDiagram& d,
                                                         const Permutation& p, int threads = 1) {
    const detail::YofContext ctx = detail::yof_context(d, p);
    const std::size_t dim = ctx.tableaux.size();
    std::vector<std::vector<SurdSum>> matrix(dim, std::vector<SurdSum>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        const Superposition state = detail::yof_column(ctx, col, threads);
        for (std::size_t row = 0; row < dim; ++row) {
            auto it = state.amplitudes.find(ctx.trees[row].label_key());
            if (it != state.amplitudes.end()) {
                matrix[row][col] = it->second;
            }
        }
    }
    return matrix;
}

/// Character chi(p) of the two-row irrep: the sum of the diagonal matrix
/// elements. Always an integer.
inline SurdSum character_exact(const TwoRowDiagram& d, const Permutation& p, int threads = 1) {
    const detail::YofContext ctx = detail::yof_context(d, p);
    SurdSum total;
    for (std::size_t col = 0; col < ctx.tableaux.size(); ++col) {
        const Superposition state = detail::yof_column(ctx, col, threads);
        auto it = state.amplitudes.find(ctx.trees[col].label_key());
        if (it != state.amplitudes.end()) {
            total += it->second;
        }
    }
    return total;
}

namespace detail {

/// Uniform integer in [0, bound) drawn from 64-bit words by rejection; the
/// standard engine makes results reproducible across platforms.
inline BigInt uniform_below(std::mt19937_64& rng, const BigInt& bound) {
    if (bound <= 0) {
        throw DomainError("uniform draw from an empty range");
    }
    if (bound == 1) {
        return BigInt(0);
    }
    const unsigned bits = msb(bound - 1) + 1;
    const unsigned words = (bits + 63) / 64;
    while (true) {
        BigInt r = 0;
        for (unsigned w = 0; w < words; ++w) {
            r <<= 64;
            r |= BigInt(rng());
        }
        r >>= (words * 64 - bits);
        if (r < bound) {
            return r;
        }
    }
}

inline TwoRowTableau sample_tableau(const TwoRowDiagram& d,
                                    const std::vector<std::vector<BigInt>>& counts,
                                    std::mt19937_64& rng) {
    const int n = d.n();
    std::vector<int> rows;
    int o = 0;
    for (int k = 0; k < n; ++k) {
        const BigInt up = counts[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(o + 1)];
        const BigInt down =
            o > 0 ? counts[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(o - 1)]
                  : BigInt(0);
        const BigInt total = up + down;
        if (total == 0) {
            throw DomainError("no tableau completion exists");  // unreachable for valid shapes
        }
        if (uniform_below(rng, total) < up) {
            rows.push_back(1);
            ++o;
        } else {
            rows.push_back(2);
            --o;
        }
    }
    return TwoRowTableau(d, std::move(rows));
}

}  // namespace detail

/// Exact uniform sample over the standard tableaux of the shape via
/// sequential conditional sampling on the ballot-path counts. Deterministic
/// for a fixed generator state.
inline TwoRowTableau sample_tableau_uniform(const TwoRowDiagram& d, std::mt19937_64& rng) {
    const auto counts = detail::ballot_completions(d);
    if (counts[0][0] == 0) {
        throw DomainError("diagram has no standard tableaux");
    }
    return detail::sample_tableau(d, counts, rng);
}

inline TwoRowTableau sample_tableau_uniform(const TwoRowDiagram& d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_tableau_uniform(d, rng);
}

/// Monte Carlo estimate of the normalized character chi(p)/dim: draws
/// N = ceil(ln(2/delta) / (2 epsilon^2)) uniform tableaux and averages their
/// exact diagonal elements, each in [-1, 1]. By Hoeffding the estimate is
/// within epsilon of the truth with probability at least 1 - delta. This is
/// the classical simulation of the interferometric character estimator.
inline double character_estimate(const TwoRowDiagram& d, const Permutation& p, double epsilon,
                                 double delta, std::uint64_t seed, int threads = 1) {
    if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0)) {
        throw DomainError("character estimation needs 0 < epsilon < 1 and 0 < delta < 1");
    }
    const long long samples =
        static_cast<long long>(std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon)));
    const auto counts = detail::ballot_completions(d);
    if (counts[0][0] == 0) {
        throw DomainError("diagram has no standard tableaux");
    }
    std::mt19937_64 rng(seed);
    std::map<std::vector<int>, double> diagonal_cache;
    double sum = 0.0;
    for (long long i = 0; i < samples; ++i) {
        const TwoRowTableau t = detail::sample_tableau(d, counts, rng);
        auto it = diagonal_cache.find(t.row_of);
        if (it == diagonal_cache.end()) {
            const LabeledTree tree = tableau_to_tree(t);
            const SurdSum value = evaluate_amplitude(tree, p, tree, threads);
            it = diagonal_cache.emplace(t.row_of, value.to_double().value).first;
        }
        sum += it->second;
    }
    return sum / static_cast<double>(samples);
}

}  // namespace spinrecouple
