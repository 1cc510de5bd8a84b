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

#include <numeric>
#include <set>
#include <thread>
#include <variant>
#include <vector>

#include "spinrecouple/trees.hpp"

namespace spinrecouple {

/// A permutation of 1..n in one-line notation: images()[i-1] is p(i). The
/// induced operator sends the basis state |z_1 .. z_n> to the state with
/// z_{p(i)} in slot i.
class Permutation {
  public:
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        const int n = static_cast<int>(images_.size());
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (int v : images_) {
            if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)]) {
                throw DomainError("permutation images must be a bijection of 1..n");
            }
            seen[static_cast<std::size_t>(v - 1)] = true;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> images(static_cast<std::size_t>(n));
        std::iota(images.begin(), images.end(), 1);
        return Permutation(std::move(images));
    }

    /// Adjacent transposition of positions i and i+1.
    static Permutation adjacent(int n, int i) {
        Permutation p = identity(n);
        if (i < 1 || i >= n) {
            throw DomainError("adjacent transposition out of range");
        }
        std::swap(p.images_[static_cast<std::size_t>(i - 1)],
                  p.images_[static_cast<std::size_t>(i)]);
        return p;
    }

    int size() const {
        return static_cast<int>(images_.size());
    }

    int operator()(int i) const {
        return images_[static_cast<std::size_t>(i - 1)];
    }

    const std::vector<int>& images() const {
        return images_;
    }

    bool is_identity() const {
        for (int i = 1; i <= size(); ++i) {
            if ((*this)(i) != i) {
                return false;
            }
        }
        return true;
    }

    Permutation inverse() const {
        std::vector<int> inv(images_.size());
        for (int i = 1; i <= size(); ++i) {
            inv[static_cast<std::size_t>((*this)(i)-1)] = i;
        }
        return Permutation(std::move(inv));
    }

    /// Operator product: the permutation whose induced operator equals
    /// applying `first` and then `second`. In one-line notation the result
    /// maps i to first(second(i)).
    static Permutation product(const Permutation& second, const Permutation& first) {
        if (second.size() != first.size()) {
            throw DomainError("product of permutations of different sizes");
        }
        std::vector<int> images(second.images_.size());
        for (int i = 1; i <= second.size(); ++i) {
            images[static_cast<std::size_t>(i - 1)] = first(second(i));
        }
        return Permutation(std::move(images));
    }

    friend bool operator==(const Permutation& a, const Permutation& b) {
        return a.images_ == b.images_;
    }

  private:
    std::vector<int> images_;
};

/// Adjacent transpositions s_i (positions i, i+1) whose operator product,
/// applied in the returned order, realizes p. The length equals the
/// inversion number of p.
inline std::vector<int> decompose_bubblesort(const Permutation& p) {
    std::vector<int> arr = p.inverse().images();
    const int n = static_cast<int>(arr.size());
    std::vector<int> swaps;
    bool moved = true;
    while (moved) {
        moved = false;
        for (int i = 1; i < n; ++i) {
            if (arr[static_cast<std::size_t>(i - 1)] > arr[static_cast<std::size_t>(i)]) {
                std::swap(arr[static_cast<std::size_t>(i - 1)], arr[static_cast<std::size_t>(i)]);
                swaps.push_back(i);
                moved = true;
            }
        }
    }
    return swaps;
}

/// One sibling exchange: the children of the node swap places and each
/// labeling picks up the twist phase of the local triple.
struct SiblingSwapMove {
    int node_gap = 0;
};

/// A compiled program of rotations (recouplings) and sibling swaps (twists).
using Move = std::variant<Rotation, SiblingSwapMove>;

struct MovePlan {
    std::vector<Move> moves;
};

/// A sparse exact superposition over the admissible labelings of one fixed
/// tree shape. Keys are internal labels in edge-id order; leaf spins and the
/// root label never change under moves.
struct Superposition {
    TreeShape shape;
    std::map<int, TwiceSpin> leaf_spins;  // complete: one entry per particle
    TwiceSpin root_label;
    std::map<std::vector<int>, SurdSum> amplitudes;

    static Superposition basis_state(const LabeledTree& t) {
        if (auto violation = labeling_violation(t)) {
            throw DomainError("invalid labeling: " + *violation);
        }
        Superposition s;
        s.shape = t.shape;
        for (int particle : t.shape.leaf_order()) {
            s.leaf_spins.emplace(particle, t.leaf_spin(particle));
        }
        s.root_label = t.root_label;
        s.amplitudes.emplace(t.label_key(), SurdSum::of_int(1));
        return s;
    }

    TwiceSpin resolve(const LabelSlot& slot, const std::map<int, TwiceSpin>& edge_values) const {
        switch (slot.kind) {
            case LabelSlot::Kind::Leaf:
                return leaf_spins.at(slot.index);
            case LabelSlot::Kind::Edge:
                return edge_values.at(slot.index);
            case LabelSlot::Kind::Root:
                return root_label;
        }
        throw DomainError("unreachable label slot kind");
    }
};

namespace detail {

inline std::map<int, TwiceSpin> key_to_edges(const TreeShape& shape,
                                             const std::vector<int>& key) {
    std::map<int, TwiceSpin> edges;
    const std::vector<int> ids = shape.internal_edge_ids();
    for (std::size_t i = 0; i < ids.size(); ++i) {
        edges.emplace(ids[i], TwiceSpin(key[i]));
    }
    return edges;
}

inline std::vector<int> edges_to_key(const TreeShape& shape,
                                     const std::map<int, TwiceSpin>& edges) {
    std::vector<int> key;
    for (int id : shape.internal_edge_ids()) {
        key.push_back(edges.at(id).twice());
    }
    return key;
}

using Contribution = std::pair<std::vector<int>, SurdSum>;

inline std::vector<Contribution> rotate_entry(const Superposition& s, const RotationInfo& info,
                                              const std::vector<int>& key, const SurdSum& amp) {
    const std::map<int, TwiceSpin> edges = key_to_edges(s.shape, key);
    const TwiceSpin a = s.resolve(info.a, edges);
    const TwiceSpin b = s.resolve(info.b, edges);
    const TwiceSpin c = s.resolve(info.c, edges);
    const TwiceSpin e = info.pivot_is_root ? s.root_label : edges.at(info.e_edge_old);
    const TwiceSpin old_label = edges.at(info.coupled_edge_old);

    std::map<int, TwiceSpin> base = edges;
    base.erase(info.coupled_edge_old);
    if (!info.pivot_is_root) {
        base.erase(info.e_edge_old);
        base.emplace(info.e_edge_new, e);
    }

    // candidate range for the summed label from its two triangle constraints
    int lo, hi, parity;
    if (info.old_label_in_f_slot) {
        // old label is f on the (A,B) edge; sum over d with triads (a,e,d), (c,b,d)
        lo = std::max(std::abs(a.twice() - e.twice()), std::abs(c.twice() - b.twice()));
        hi = std::min(a.twice() + e.twice(), c.twice() + b.twice());
        parity = (a.twice() + e.twice()) % 2;
    } else {
        // old label is d on the (B,C) edge; sum over f with triads (a,b,f), (c,e,f)
        lo = std::max(std::abs(a.twice() - b.twice()), std::abs(c.twice() - e.twice()));
        hi = std::min(a.twice() + b.twice(), c.twice() + e.twice());
        parity = (a.twice() + b.twice()) % 2;
    }
    if (lo % 2 != parity) {
        ++lo;
    }

    std::vector<Contribution> out;
    for (int t = lo; t <= hi; t += 2) {
        const TwiceSpin candidate(t);
        const SixSpins symbol = info.old_label_in_f_slot
                                    ? SixSpins{a, b, old_label, c, e, candidate}
                                    : SixSpins{a, b, candidate, c, e, old_label};
        const SurdSum coeff = recoupling_tensor(symbol);
        if (coeff.is_zero()) {
            continue;
        }
        std::map<int, TwiceSpin> edited = base;
        edited.emplace(info.coupled_edge_new, candidate);
        out.emplace_back(edges_to_key(info.result, edited), coeff * amp);
    }
    return out;
}

inline Contribution swap_entry(const Superposition& s, const SiblingSwapInfo& info,
                               const std::vector<int>& key, const SurdSum& amp) {
    const std::map<int, TwiceSpin> edges = key_to_edges(s.shape, key);
    const TwiceSpin a = s.resolve(info.a, edges);
    const TwiceSpin b = s.resolve(info.b, edges);
    const TwiceSpin out_label = info.node_is_root ? s.root_label : edges.at(info.out_edge_old);
    const SurdSum phase = twist_phase(a, b, out_label);

    std::map<int, TwiceSpin> remapped;
    for (const auto& [edge, value] : edges) {
        remapped.emplace(info.edge_map.at(edge), value);
    }
    return {edges_to_key(info.result, remapped), phase * amp};
}

}  // namespace detail

/// Applies one move to the superposition. Rotations expand each labeling in
/// the recoupled basis, sibling swaps multiply by the twist phase; exact
/// zeros are pruned. With threads > 1 the entries are processed in parallel
/// blocks; exact arithmetic makes the merged result independent of the
/// partition.
inline Superposition apply_move(const Superposition& s, const Move& move, int threads = 1) {
    Superposition out;
    out.leaf_spins = s.leaf_spins;
    out.root_label = s.root_label;

    std::vector<detail::Contribution> entries(s.amplitudes.begin(), s.amplitudes.end());
    std::vector<std::vector<detail::Contribution>> results(entries.size());

    auto process = [&](auto&& info, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            if constexpr (std::is_same_v<std::decay_t<decltype(info)>, RotationInfo>) {
                results[i] = detail::rotate_entry(s, info, entries[i].first, entries[i].second);
            } else {
                results[i] = {detail::swap_entry(s, info, entries[i].first, entries[i].second)};
            }
        }
    };

    auto run = [&](auto&& info) {
        out.shape = info.result;
        const std::size_t count = entries.size();
        const int workers = std::max(1, threads);
        if (workers == 1 || count < 64) {
            process(info, 0, count);
        } else {
            std::vector<std::thread> pool;
            const std::size_t chunk = (count + workers - 1) / workers;
            for (int w = 0; w < workers; ++w) {
                const std::size_t begin = std::min(count, w * chunk);
                const std::size_t end = std::min(count, begin + chunk);
                if (begin < end) {
                    pool.emplace_back([&, begin, end] { process(info, begin, end); });
                }
            }
            for (std::thread& t : pool) {
                t.join();
            }
        }
    };

    if (std::holds_alternative<Rotation>(move)) {
        run(rotation_info(s.shape, std::get<Rotation>(move)));
    } else {
        run(sibling_swap_info(s.shape, std::get<SiblingSwapMove>(move).node_gap));
    }

    for (const auto& block : results) {
        for (const auto& [key, value] : block) {
            auto [it, inserted] = out.amplitudes.try_emplace(key, value);
            if (!inserted) {
                it->second += value;
                if (it->second.is_zero()) {
                    out.amplitudes.erase(it);
                }
            }
        }
    }
    return out;
}

inline Superposition apply_plan(Superposition s, const MovePlan& plan, int threads = 1) {
    for (const Move& move : plan.moves) {
        s = apply_move(s, move, threads);
    }
    return s;
}

namespace detail {

/// Inverts a rotation plan that starts from `initial`: replays it to learn
/// each intermediate shape, then emits the reversed, direction-flipped moves.
inline std::vector<Rotation> invert_rotation_plan(const TreeShape& initial,
                                                  const std::vector<Rotation>& plan) {
    std::vector<Rotation> inverted;
    TreeShape cur = initial;
    std::vector<Rotation> forward;
    for (const Rotation& move : plan) {
        RotationInfo info = rotation_info(cur, move);
        // after the move the subtree root sits at the consumed edge's gap
        const RotationDirection flipped = move.direction == RotationDirection::Left
                                              ? RotationDirection::Right
                                              : RotationDirection::Left;
        forward.push_back(Rotation{info.coupled_edge_old, flipped});
        cur = std::move(info.result);
    }
    inverted.assign(forward.rbegin(), forward.rend());
    return inverted;
}

/// Emits the caterpillar realization of the adjacent transposition of leaf
/// positions (k, k+1): rotate the pair into siblings, swap, rotate back.
inline void emit_adjacent_swap(std::vector<Move>& moves, int k) {
    if (k == 1) {
        moves.emplace_back(SiblingSwapMove{1});
        return;
    }
    moves.emplace_back(Rotation{k, RotationDirection::Right});
    moves.emplace_back(SiblingSwapMove{k});
    moves.emplace_back(Rotation{k - 1, RotationDirection::Left});
}

}  // namespace detail

/// Compiles the evaluation of <lambda'|U_p|lambda> into moves applicable to
/// the permuted initial tree (lambda with leaves relabeled through p^{-1}):
/// rotate to the caterpillar, realize p as adjacent swaps, rotate into the
/// target shape.
inline MovePlan plan_moves(const TreeShape& lambda_shape, const Permutation& p,
                           const TreeShape& lambda_prime_shape) {
    const int n = lambda_shape.leaf_count();
    if (lambda_prime_shape.leaf_count() != n || p.size() != n) {
        throw DomainError("move planning needs equal particle counts");
    }
    if (!lambda_shape.canonical_particles() || !lambda_prime_shape.canonical_particles()) {
        throw DomainError("move planning needs leaves labeled 1..n");
    }

    const Permutation p_inv = p.inverse();
    const TreeShape twisted =
        lambda_shape.relabel_leaves([&](int particle) { return p_inv(particle); });

    MovePlan plan;
    TreeShape cur = twisted;
    for (const Rotation& move : rotation_plan_to_caterpillar(twisted)) {
        plan.moves.emplace_back(move);
        cur = apply_rotation(cur, move);
    }

    // sort the caterpillar's leaf order into the target order
    std::vector<int> target_pos(static_cast<std::size_t>(n) + 1, 0);
    const std::vector<int>& target = lambda_prime_shape.leaf_order();
    for (int i = 0; i < n; ++i) {
        target_pos[static_cast<std::size_t>(target[static_cast<std::size_t>(i)])] = i;
    }
    std::vector<int> ranks;
    for (int particle : cur.leaf_order()) {
        ranks.push_back(target_pos[static_cast<std::size_t>(particle)]);
    }
    bool moved = true;
    while (moved) {
        moved = false;
        for (int i = 1; i < n; ++i) {
            if (ranks[static_cast<std::size_t>(i - 1)] > ranks[static_cast<std::size_t>(i)]) {
                std::swap(ranks[static_cast<std::size_t>(i - 1)], ranks[static_cast<std::size_t>(i)]);
                detail::emit_adjacent_swap(plan.moves, i);
                moved = true;
            }
        }
    }

    for (const Rotation& move : detail::invert_rotation_plan(
             lambda_prime_shape, rotation_plan_to_caterpillar(lambda_prime_shape))) {
        plan.moves.emplace_back(move);
    }
    return plan;
}

namespace detail {

inline void check_amplitude_inputs(const LabeledTree& lambda, const Permutation& p,
                                   const LabeledTree& lambda_prime) {
    if (auto violation = labeling_violation(lambda)) {
        throw DomainError("lambda: " + *violation);
    }
    if (auto violation = labeling_violation(lambda_prime)) {
        throw DomainError("lambda_prime: " + *violation);
    }
    const int n = lambda.shape.leaf_count();
    if (lambda_prime.shape.leaf_count() != n || p.size() != n) {
        throw DomainError("amplitude needs matching particle counts");
    }
    if (!lambda.shape.canonical_particles() || !lambda_prime.shape.canonical_particles()) {
        throw DomainError("amplitude needs leaves labeled 1..n");
    }
    for (int q = 1; q <= n; ++q) {
        if (lambda.leaf_spin(q) != lambda_prime.leaf_spin(q)) {
            throw DomainError("leaf spins of particle " + std::to_string(q) + " differ");
        }
        if (lambda.leaf_spin(q) != lambda.leaf_spin(p(q))) {
            throw DomainError("permutation moves particle " + std::to_string(q) +
                              " onto a different spin");
        }
    }
}

}  // namespace detail

/// Exact transition amplitude <lambda'|U_p|lambda>: initializes a basis
/// superposition at the permuted initial tree, runs the compiled move plan,
/// and reads off the coefficient of lambda'.
inline SurdSum evaluate_amplitude(const LabeledTree& lambda, const Permutation& p,
                                  const LabeledTree& lambda_prime, int threads = 1) {
    detail::check_amplitude_inputs(lambda, p, lambda_prime);
    if (lambda.root_label != lambda_prime.root_label) {
        return SurdSum();
    }

    const Permutation p_inv = p.inverse();
    LabeledTree twisted = lambda;
    twisted.shape = lambda.shape.relabel_leaves([&](int particle) { return p_inv(particle); });
    // spins are p-invariant, so the per-particle map is unchanged

    Superposition state = Superposition::basis_state(twisted);
    const MovePlan plan = plan_moves(lambda.shape, p, lambda_prime.shape);
    state = apply_plan(std::move(state), plan, threads);
    if (state.shape != lambda_prime.shape) {
        throw std::logic_error("move plan did not reach the target shape");
    }
    auto it = state.amplitudes.find(lambda_prime.label_key());
    return it == state.amplitudes.end() ? SurdSum() : it->second;
}

}  // namespace spinrecouple
