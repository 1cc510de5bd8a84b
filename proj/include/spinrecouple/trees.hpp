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
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spinrecouple/recoupling.hpp"
#include "spinrecouple/twice_spin.hpp"

namespace spinrecouple {

/// Where a coupling label is stored: on a leaf (the particle's spin), on an
/// internal edge, or on the tree root (the total spin).
struct LabelSlot {
    enum class Kind { Leaf, Edge, Root };
    Kind kind = Kind::Root;
    int index = -1;  // particle id for Leaf, edge id for Edge
};

enum class RotationDirection { Left, Right };

/// A re-association at an internal node, pivoting at the subtree root:
/// Left turns (A,(B,C)) into ((A,B),C); Right is the inverse. Neither
/// reorders leaves.
struct Rotation {
    int node_gap = 0;
    RotationDirection direction = RotationDirection::Left;
};

struct RotationInfo;
struct SiblingSwapInfo;

/// A full binary coupling tree whose leaves carry distinct particle indices
/// 1..n; left-to-right leaf order is semantic.
///
/// Internal nodes are addressed by their in-order position: the node at gap g
/// sits between the g-th and (g+1)-th leaf (1－based), and every gap 1..n-1
/// hosts exactly one internal node. An internal edge is identified by the gap
/// of its lower node. Rotations preserve the in-order sequence, so all edge
/// ids away from the rotation site are stable across moves.
class TreeShape {
  public:
    TreeShape() = default;

    static TreeShape leaf(int particle) {
        TreeShape t;
        Node n;
        n.particle = particle;
        t.nodes_.push_back(n);
        t.root_ = 0;
        t.finalize();
        return t;
    }

    static TreeShape join(const TreeShape& left, const TreeShape& right) {
        if (left.nodes_.empty() || right.nodes_.empty()) {
            throw DomainError("join of an empty tree shape");
        }
        TreeShape t;
        t.nodes_ = left.nodes_;
        const int offset = static_cast<int>(left.nodes_.size());
        for (Node n : right.nodes_) {
            if (n.left >= 0) {
                n.left += offset;
                n.right += offset;
            }
            t.nodes_.push_back(n);
        }
        Node root;
        root.left = left.root_;
        root.right = right.root_ + offset;
        t.root_ = static_cast<int>(t.nodes_.size());
        t.nodes_.push_back(root);
        t.finalize();
        return t;
    }

    /// The caterpillar ((..(p1,p2),p3)..,pn) coupling one particle at a time.
    static TreeShape left_comb(const std::vector<int>& particles) {
        if (particles.empty()) {
            throw DomainError("tree shape needs at least one leaf");
        }
        TreeShape t = leaf(particles[0]);
        for (std::size_t i = 1; i < particles.size(); ++i) {
            t = join(t, leaf(particles[i]));
        }
        return t;
    }

    int leaf_count() const {
        return static_cast<int>(leaf_order_.size());
    }

    const std::vector<int>& leaf_order() const {
        return leaf_order_;
    }

    bool single_leaf() const {
        return leaf_count() == 1;
    }

    int root_gap() const {
        if (single_leaf()) {
            throw DomainError("single-leaf tree has no internal node");
        }
        return gap_of(root_);
    }

    /// Sorted ids of the labeled internal edges (all gaps except the root's).
    std::vector<int> internal_edge_ids() const {
        std::vector<int> ids;
        const int n = leaf_count();
        if (n < 2) {
            return ids;
        }
        const int root = root_gap();
        for (int g = 1; g <= n - 1; ++g) {
            if (g != root) {
                ids.push_back(g);
            }
        }
        return ids;
    }

    struct ChildRef {
        bool is_leaf = false;
        int index = 0;  // particle id if leaf, gap id if internal
    };

    ChildRef left_child(int gap) const {
        return child_ref(nodes_[node_at_gap(gap)].left);
    }

    ChildRef right_child(int gap) const {
        return child_ref(nodes_[node_at_gap(gap)].right);
    }

    /// Gap of the parent node, or -1 for the root.
    int parent_gap(int gap) const {
        const int parent = nodes_[node_at_gap(gap)].parent;
        return parent < 0 ? -1 : gap_of(parent);
    }

    bool is_left_child(int gap) const {
        const int node = node_at_gap(gap);
        const int parent = nodes_[node].parent;
        if (parent < 0) {
            throw DomainError("root node has no parent");
        }
        return nodes_[parent].left == node;
    }

    int subtree_first_leaf(int gap) const {  // 0-based leaf position
        return nodes_[node_at_gap(gap)].first_leaf;
    }

    int subtree_leaf_count(int gap) const {
        return nodes_[node_at_gap(gap)].leaf_span;
    }

    /// Canonical preorder encoding; equal encodings mean equal shapes with
    /// equal leaf order.
    std::vector<int> encode() const {
        std::vector<int> out;
        encode_node(root_, out);
        return out;
    }

    friend bool operator==(const TreeShape& lhs, const TreeShape& rhs) {
        return lhs.encode() == rhs.encode();
    }

    friend bool operator!=(const TreeShape& lhs, const TreeShape& rhs) {
        return !(lhs == rhs);
    }

    /// Same structure with leaf particle q replaced by rename(q).
    TreeShape relabel_leaves(const std::function<int(int)>& rename) const {
        TreeShape t(*this);
        for (Node& n : t.nodes_) {
            if (n.left < 0) {
                n.particle = rename(n.particle);
            }
        }
        t.finalize();
        return t;
    }

    /// True when the leaves are exactly the particle indices 1..n. Required
    /// at the evaluation and serialization boundaries; relaxed during
    /// construction so that subtrees can be built bottom-up.
    bool canonical_particles() const {
        std::vector<int> sorted = leaf_order_;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
            if (sorted[i] != i + 1) {
                return false;
            }
        }
        return true;
    }

    friend RotationInfo rotation_info(const TreeShape& shape, const Rotation& rotation);
    friend SiblingSwapInfo sibling_swap_info(const TreeShape& shape, int node_gap);

  private:
    struct Node {
        int left = -1;
        int right = -1;
        int parent = -1;
        int particle = 0;
        int first_leaf = 0;
        int leaf_span = 1;
    };

    struct Nested {
        int particle = 0;
        std::unique_ptr<Nested> left, right;
        bool is_leaf() const {
            return left == nullptr;
        }
    };

    ChildRef child_ref(int node) const {
        const Node& n = nodes_[node];
        if (n.left < 0) {
            return ChildRef{true, n.particle};
        }
        return ChildRef{false, gap_of(node)};
    }

    int gap_of(int node) const {
        return nodes_[nodes_[node].right].first_leaf;  // 1..n-1
    }

    int node_at_gap(int gap) const {
        if (gap < 1 || gap > static_cast<int>(gap_node_.size())) {
            throw DomainError("no internal node at gap " + std::to_string(gap));
        }
        return gap_node_[gap - 1];
    }

    void encode_node(int node, std::vector<int>& out) const {
        const Node& n = nodes_[node];
        if (n.left < 0) {
            out.push_back(n.particle);
            return;
        }
        out.push_back(-1);
        encode_node(n.left, out);
        encode_node(n.right, out);
    }

    void finalize() {
        fill_info(root_, -1);
        leaf_order_.clear();
        collect_leaves(root_);
        const int n = static_cast<int>(leaf_order_.size());
        std::vector<int> sorted = leaf_order_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw DomainError("tree leaves must carry distinct particle indices");
        }
        gap_node_.assign(n > 0 ? n - 1 : 0, -1);
        for (int idx = 0; idx < static_cast<int>(nodes_.size()); ++idx) {
            if (nodes_[idx].left >= 0) {
                gap_node_[gap_of(idx) - 1] = idx;
            }
        }
    }

    void fill_info(int node, int parent) {
        Node& n = nodes_[node];
        n.parent = parent;
        if (n.left < 0) {
            n.leaf_span = 1;
            return;
        }
        fill_info(n.left, node);
        fill_info(n.right, node);
        n.first_leaf = nodes_[n.left].first_leaf;
        n.leaf_span = nodes_[n.left].leaf_span + nodes_[n.right].leaf_span;
    }

    void collect_leaves(int node) {
        Node& n = nodes_[node];
        if (n.left < 0) {
            n.first_leaf = static_cast<int>(leaf_order_.size());
            leaf_order_.push_back(n.particle);
            return;
        }
        collect_leaves(n.left);
        n.first_leaf = nodes_[n.left].first_leaf;
        collect_leaves(n.right);
    }

    std::unique_ptr<Nested> to_nested(int node) const {
        auto out = std::make_unique<Nested>();
        const Node& n = nodes_[node];
        if (n.left < 0) {
            out->particle = n.particle;
            return out;
        }
        out->left = to_nested(n.left);
        out->right = to_nested(n.right);
        return out;
    }

    static void append_nested(TreeShape& t, const Nested& nested, int parent_slot_is_left,
                              std::vector<int>& stack);

    static TreeShape from_nested(const Nested& nested) {
        TreeShape t;
        t.root_ = t.build_nested(nested);
        t.finalize();
        return t;
    }

    int build_nested(const Nested& nested) {
        if (nested.is_leaf()) {
            Node n;
            n.particle = nested.particle;
            nodes_.push_back(n);
            return static_cast<int>(nodes_.size()) - 1;
        }
        const int left = build_nested(*nested.left);
        const int right = build_nested(*nested.right);
        Node n;
        n.left = left;
        n.right = right;
        nodes_.push_back(n);
        return static_cast<int>(nodes_.size()) - 1;
    }

    /// Path of left(false)/right(true) steps from the root to the node.
    std::vector<bool> path_to(int node) const {
        std::vector<bool> path;
        int cur = node;
        while (nodes_[cur].parent >= 0) {
            path.push_back(nodes_[nodes_[cur].parent].right == cur);
            cur = nodes_[cur].parent;
        }
        std::reverse(path.begin(), path.end());
        return path;
    }

    static Nested* descend(Nested* node, const std::vector<bool>& path) {
        for (bool right : path) {
            node = right ? node->right.get() : node->left.get();
        }
        return node;
    }

    std::vector<Node> nodes_;
    int root_ = -1;
    std::vector<int> gap_node_;
    std::vector<int> leaf_order_;
};

/// Data needed to carry labels across a rotation. Writing the move as the
/// re-association between (A,(B,C)) and ((A,B),C): f is the label on the
/// (A,B) edge, d the label on the (B,C) edge, and the matrix element between
/// them is recoupling_tensor({a b f; c e d}) in either direction. The pivot's
/// out-label e keeps its value but its edge id swaps with the recoupled edge.
struct RotationInfo {
    TreeShape result;
    LabelSlot a, b, c;           // subtree out-labels; ids valid in both shapes
    bool pivot_is_root = false;  // e is the root label
    int e_edge_old = -1;         // e's edge id before the move (unless root)
    int e_edge_new = -1;         // e's edge id after the move (unless root)
    int coupled_edge_old = -1;   // edge consumed by the move
    int coupled_edge_new = -1;   // edge created by the move
    bool old_label_in_f_slot = false;  // true for Right rotations
};

inline RotationInfo rotation_info(const TreeShape& shape, const Rotation& rotation) {
    const int pivot = shape.node_at_gap(rotation.node_gap);
    const auto& nodes = shape.nodes_;
    RotationInfo info;

    int node_a, node_b, node_c, inner;
    if (rotation.direction == RotationDirection::Left) {
        inner = nodes[pivot].right;
        if (inner < 0 || nodes[inner].left < 0) {
            throw DomainError("left rotation at gap " + std::to_string(rotation.node_gap) +
                              " needs an internal right child");
        }
        node_a = nodes[pivot].left;
        node_b = nodes[inner].left;
        node_c = nodes[inner].right;
        info.coupled_edge_old = shape.gap_of(inner);      // (B,C) edge carries d
        info.coupled_edge_new = rotation.node_gap;        // (A,B) edge carries f
        info.old_label_in_f_slot = false;
    } else {
        inner = nodes[pivot].left;
        if (inner < 0 || nodes[inner].left < 0) {
            throw DomainError("right rotation at gap " + std::to_string(rotation.node_gap) +
                              " needs an internal left child");
        }
        node_a = nodes[inner].left;
        node_b = nodes[inner].right;
        node_c = nodes[pivot].right;
        info.coupled_edge_old = shape.gap_of(inner);      // (A,B) edge carries f
        info.coupled_edge_new = rotation.node_gap;        // (B,C) edge carries d
        info.old_label_in_f_slot = true;
    }

    info.a = shape.nodes_[node_a].left < 0
                 ? LabelSlot{LabelSlot::Kind::Leaf, nodes[node_a].particle}
                 : LabelSlot{LabelSlot::Kind::Edge, shape.gap_of(node_a)};
    info.b = shape.nodes_[node_b].left < 0
                 ? LabelSlot{LabelSlot::Kind::Leaf, nodes[node_b].particle}
                 : LabelSlot{LabelSlot::Kind::Edge, shape.gap_of(node_b)};
    info.c = shape.nodes_[node_c].left < 0
                 ? LabelSlot{LabelSlot::Kind::Leaf, nodes[node_c].particle}
                 : LabelSlot{LabelSlot::Kind::Edge, shape.gap_of(node_c)};

    if (nodes[pivot].parent < 0) {
        info.pivot_is_root = true;
    } else {
        info.e_edge_old = rotation.node_gap;
        info.e_edge_new = info.coupled_edge_old;
    }

    // rebuild the shape with the subtree re-associated
    auto nested = shape.to_nested(shape.root_);
    TreeShape::Nested* site = TreeShape::descend(nested.get(), shape.path_to(pivot));
    if (rotation.direction == RotationDirection::Left) {
        // (A,(B,C)) -> ((A,B),C)
        auto right = std::move(site->right);
        auto new_left = std::make_unique<TreeShape::Nested>();
        new_left->left = std::move(site->left);
        new_left->right = std::move(right->left);
        site->left = std::move(new_left);
        site->right = std::move(right->right);
    } else {
        // ((A,B),C) -> (A,(B,C))
        auto left = std::move(site->left);
        auto new_right = std::make_unique<TreeShape::Nested>();
        new_right->left = std::move(left->right);
        new_right->right = std::move(site->right);
        site->left = std::move(left->left);
        site->right = std::move(new_right);
    }
    info.result = TreeShape::from_nested(*nested);
    return info;
}

inline TreeShape apply_rotation(const TreeShape& shape, const Rotation& rotation) {
    return rotation_info(shape, rotation).result;
}

/// Data needed to carry labels across a sibling swap at one node: the node's
/// children exchange places, leaf order changes, and every edge id inside the
/// subtree shifts by the width of the block that moved past it.
struct SiblingSwapInfo {
    TreeShape result;
    LabelSlot a, b;             // left/right child out-labels before the swap
    bool node_is_root = false;
    int out_edge_old = -1;      // node's own out-edge ids (unless root)
    int out_edge_new = -1;
    std::map<int, int> edge_map;  // old edge id -> new edge id, all edges
};

inline SiblingSwapInfo sibling_swap_info(const TreeShape& shape, int node_gap) {
    const int pivot = shape.node_at_gap(node_gap);
    const auto& nodes = shape.nodes_;
    SiblingSwapInfo info;

    const int node_a = nodes[pivot].left;
    const int node_b = nodes[pivot].right;
    info.a = nodes[node_a].left < 0 ? LabelSlot{LabelSlot::Kind::Leaf, nodes[node_a].particle}
                                    : LabelSlot{LabelSlot::Kind::Edge, shape.gap_of(node_a)};
    info.b = nodes[node_b].left < 0 ? LabelSlot{LabelSlot::Kind::Leaf, nodes[node_b].particle}
                                    : LabelSlot{LabelSlot::Kind::Edge, shape.gap_of(node_b)};

    auto nested = shape.to_nested(shape.root_);
    TreeShape::Nested* site = TreeShape::descend(nested.get(), shape.path_to(pivot));
    std::swap(site->left, site->right);
    info.result = TreeShape::from_nested(*nested);

    const int span_a = nodes[node_a].leaf_span;
    const int span_b = nodes[node_b].leaf_span;
    const int first = nodes[pivot].first_leaf;

    // identity outside the swapped subtree
    if (!shape.single_leaf()) {
        const int n = shape.leaf_count();
        for (int g = 1; g <= n - 1; ++g) {
            info.edge_map[g] = g;
        }
    }
    // block A shifts right past B, block B shifts left past A
    for (int g = first + 1; g <= first + span_a - 1; ++g) {
        info.edge_map[g] = g + span_b;
    }
    for (int g = first + span_a + 1; g <= first + span_a + span_b - 1; ++g) {
        info.edge_map[g] = g - span_a;
    }
    info.edge_map[node_gap] = first + span_b;  // the pivot itself

    if (nodes[pivot].parent < 0) {
        info.node_is_root = true;
        info.edge_map.erase(node_gap);  // the root gap is not an edge id
    } else {
        info.out_edge_old = node_gap;
        info.out_edge_new = first + span_b;
    }
    return info;
}

inline TreeShape apply_sibling_swap(const TreeShape& shape, int node_gap) {
    return sibling_swap_info(shape, node_gap).result;
}

/// True for the left comb: every internal node's right child is a leaf.
inline bool is_left_comb(const TreeShape& shape) {
    const int n = shape.leaf_count();
    for (int g = 1; g <= n - 1; ++g) {
        if (!shape.right_child(g).is_leaf) {
            return false;
        }
    }
    return true;
}

/// Rotations bringing the shape to the left comb over its current leaf
/// order. At most n-2 rotations: each left rotation permanently shrinks the
/// right subtree at the working position.
inline std::vector<Rotation> rotation_plan_to_caterpillar(const TreeShape& shape) {
    std::vector<Rotation> plan;
    if (shape.leaf_count() < 3) {
        return plan;
    }
    TreeShape cur = shape;
    int gap = cur.root_gap();
    while (true) {
        while (!cur.right_child(gap).is_leaf) {
            const Rotation move{gap, RotationDirection::Left};
            RotationInfo info = rotation_info(cur, move);
            plan.push_back(move);
            gap = info.coupled_edge_old;  // the subtree root's gap after the move
            cur = std::move(info.result);
        }
        const TreeShape::ChildRef left = cur.left_child(gap);
        if (left.is_leaf) {
            break;
        }
        gap = left.index;
    }
    return plan;
}

/// Number of binary coupling trees on n leaves: the Catalan number C_{n-1}.
inline BigInt count_tree_shapes(int n) {
    if (n < 1) {
        throw DomainError("tree shapes need n >= 1 leaves");
    }
    const int m = n - 1;
    return factorial(2 * m) / (factorial(m + 1) * factorial(m));
}

/// All shapes over the given left-to-right leaf sequence.
inline std::vector<TreeShape> enumerate_tree_shapes(const std::vector<int>& particles) {
    if (particles.empty()) {
        throw DomainError("tree shapes need at least one leaf");
    }
    if (particles.size() == 1) {
        return {TreeShape::leaf(particles[0])};
    }
    std::vector<TreeShape> out;
    for (std::size_t split = 1; split < particles.size(); ++split) {
        const std::vector<int> left(particles.begin(), particles.begin() + split);
        const std::vector<int> right(particles.begin() + split, particles.end());
        for (const TreeShape& l : enumerate_tree_shapes(left)) {
            for (const TreeShape& r : enumerate_tree_shapes(right)) {
                out.push_back(TreeShape::join(l, r));
            }
        }
    }
    return out;
}

/// A coupling tree with spin labels: leaf spins per particle (default 1/2),
/// one label per internal edge, and the total spin at the root.
struct LabeledTree {
    TreeShape shape;
    std::map<int, TwiceSpin> leaf_spins;   // particle -> spin; absent means 1/2
    std::map<int, TwiceSpin> edge_labels;  // edge id -> label
    TwiceSpin root_label;

    TwiceSpin leaf_spin(int particle) const {
        auto it = leaf_spins.find(particle);
        return it == leaf_spins.end() ? TwiceSpin(1) : it->second;
    }

    /// Internal labels in edge-id order; the superposition key.
    std::vector<int> label_key() const {
        std::vector<int> key;
        for (int id : shape.internal_edge_ids()) {
            auto it = edge_labels.find(id);
            if (it == edge_labels.end()) {
                throw DomainError("labeling is missing edge " + std::to_string(id));
            }
            key.push_back(it->second.twice());
        }
        return key;
    }
};

namespace detail {

inline TwiceSpin resolve_child_label(const LabeledTree& t, const TreeShape::ChildRef& child,
                                     bool& known) {
    known = true;
    if (child.is_leaf) {
        return t.leaf_spin(child.index);
    }
    auto it = t.edge_labels.find(child.index);
    if (it == t.edge_labels.end()) {
        known = false;
        return TwiceSpin(0);
    }
    return it->second;
}

inline std::optional<std::string> labeling_violation_at(const LabeledTree& t, int gap,
                                                        const std::string& path) {
    bool known_left = false, known_right = false, known_out = true;
    const TwiceSpin left = resolve_child_label(t, t.shape.left_child(gap), known_left);
    const TwiceSpin right = resolve_child_label(t, t.shape.right_child(gap), known_right);
    TwiceSpin out = t.root_label;
    if (gap != t.shape.root_gap()) {
        auto it = t.edge_labels.find(gap);
        known_out = it != t.edge_labels.end();
        if (known_out) {
            out = it->second;
        }
    }
    if (!known_left || !known_right || !known_out) {
        return path + ": missing edge label";
    }
    if (!triangle_admissible(left, right, out)) {
        return path + ": labels (" + left.str() + ", " + right.str() + ", " + out.str() +
               ") violate the coupling rules";
    }
    const TreeShape::ChildRef lc = t.shape.left_child(gap);
    const TreeShape::ChildRef rc = t.shape.right_child(gap);
    if (!lc.is_leaf) {
        if (auto v = labeling_violation_at(t, lc.index, path + ".left")) {
            return v;
        }
    }
    if (!rc.is_leaf) {
        if (auto v = labeling_violation_at(t, rc.index, path + ".right")) {
            return v;
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Description of the first coupling violation (with a node path), or
/// nullopt when the labeling is fully admissible.
inline std::optional<std::string> labeling_violation(const LabeledTree& t) {
    if (t.shape.single_leaf()) {
        const int particle = t.shape.leaf_order()[0];
        if (t.leaf_spin(particle) != t.root_label) {
            return std::string("root: single-leaf tree must carry the leaf spin as root label");
        }
        return std::nullopt;
    }
    for (const auto& [edge, label] : t.edge_labels) {
        const auto ids = t.shape.internal_edge_ids();
        if (std::find(ids.begin(), ids.end(), edge) == ids.end()) {
            return "edge " + std::to_string(edge) + ": not an internal edge of this shape";
        }
    }
    return detail::labeling_violation_at(t, t.shape.root_gap(), "root");
}

/// True iff every internal node's spin triple is admissible.
inline bool validate_labeling(const LabeledTree& t) {
    return !labeling_violation(t).has_value();
}

namespace detail {

struct SubtreeLabelings {
    // out-label (twice) -> set of edge labelings of the subtree
    std::map<int, std::vector<std::map<int, TwiceSpin>>> by_out;
};

inline SubtreeLabelings enumerate_subtree(const TreeShape& shape,
                                          const std::map<int, TwiceSpin>& leaf_spins,
                                          const TreeShape::ChildRef& node) {
    SubtreeLabelings out;
    if (node.is_leaf) {
        auto it = leaf_spins.find(node.index);
        const TwiceSpin spin = it == leaf_spins.end() ? TwiceSpin(1) : it->second;
        out.by_out[spin.twice()].push_back({});
        return out;
    }
    const SubtreeLabelings left = enumerate_subtree(shape, leaf_spins, shape.left_child(node.index));
    const SubtreeLabelings right =
        enumerate_subtree(shape, leaf_spins, shape.right_child(node.index));
    const TreeShape::ChildRef lc = shape.left_child(node.index);
    const TreeShape::ChildRef rc = shape.right_child(node.index);
    for (const auto& [lt, lsets] : left.by_out) {
        for (const auto& [rt, rsets] : right.by_out) {
            const int lo = std::abs(lt - rt), hi = lt + rt;
            for (int ot = lo; ot <= hi; ot += 2) {
                for (const auto& lmap : lsets) {
                    for (const auto& rmap : rsets) {
                        std::map<int, TwiceSpin> merged = lmap;
                        merged.insert(rmap.begin(), rmap.end());
                        if (!lc.is_leaf) {
                            merged.emplace(lc.index, TwiceSpin(lt));
                        }
                        if (!rc.is_leaf) {
                            merged.emplace(rc.index, TwiceSpin(rt));
                        }
                        out.by_out[ot].push_back(std::move(merged));
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace detail

/// All admissible labelings of the shape with the given root label, sorted
/// lexicographically by the internal labels in edge-id order.
inline std::vector<LabeledTree> enumerate_labelings(const TreeShape& shape,
                                                    const std::map<int, TwiceSpin>& leaf_spins,
                                                    TwiceSpin root_label) {
    std::vector<LabeledTree> out;
    if (shape.single_leaf()) {
        const int particle = shape.leaf_order()[0];
        auto it = leaf_spins.find(particle);
        const TwiceSpin spin = it == leaf_spins.end() ? TwiceSpin(1) : it->second;
        if (spin == root_label) {
            out.push_back(LabeledTree{shape, leaf_spins, {}, root_label});
        }
        return out;
    }
    detail::SubtreeLabelings all = detail::enumerate_subtree(
        shape, leaf_spins, TreeShape::ChildRef{false, shape.root_gap()});
    auto it = all.by_out.find(root_label.twice());
    if (it != all.by_out.end()) {
        for (auto& labels : it->second) {
            out.push_back(LabeledTree{shape, leaf_spins, std::move(labels), root_label});
        }
    }
    std::sort(out.begin(), out.end(), [](const LabeledTree& x, const LabeledTree& y) {
        return x.label_key() < y.label_key();
    });
    return out;
}

}  // namespace spinrecouple
