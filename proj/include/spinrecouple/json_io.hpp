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

#include <limits>
#include <string>

#include <json.hpp>

#include "spinrecouple/ponzano_regge.hpp"
#include "spinrecouple/symrep.hpp"

namespace spinrecouple {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

/// Canonical SurdSum document: terms sorted by radicand ascending, integer
/// parts as decimal strings, plus a double evaluation.
inline OrderedJson surd_to_json(const SurdSum& value, unsigned precision_bits = 53) {
    OrderedJson terms = OrderedJson::array();
    for (const auto& [radicand, coeff] : value.terms()) {
        if (radicand > BigInt(std::numeric_limits<long long>::max())) {
            throw DomainError("surd radicand too large to serialize");
        }
        OrderedJson term;
        term["radicand"] = radicand.convert_to<long long>();
        term["num"] = rational_num(coeff).str();
        term["den"] = rational_den(coeff).str();
        terms.push_back(std::move(term));
    }
    OrderedJson doc;
    doc["terms"] = std::move(terms);
    doc["float"] = value.to_double(precision_bits).value;
    return doc;
}

namespace detail {

inline const Json& require_field(const Json& doc, const std::string& key,
                                 const std::string& what) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        throw DomainError(what + ": missing field '" + key + "'");
    }
    return *it;
}

inline void reject_unknown_fields(const Json& doc, std::initializer_list<const char*> known,
                                  const std::string& what) {
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        bool ok = false;
        for (const char* key : known) {
            if (it.key() == key) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw DomainError(what + ": unknown field '" + it.key() + "'");
        }
    }
}

inline int int_field(const Json& value, const std::string& what) {
    if (!value.is_number_integer()) {
        throw DomainError(what + ": expected an integer");
    }
    return value.get<int>();
}

inline int int_key(const std::string& key, const std::string& what) {
    try {
        std::size_t used = 0;
        const int value = std::stoi(key, &used);
        if (used != key.size()) {
            throw DomainError(what + ": bad integer key '" + key + "'");
        }
        return value;
    } catch (const std::exception&) {
        throw DomainError(what + ": bad integer key '" + key + "'");
    }
}

inline TreeShape shape_from_json(const Json& node, const std::string& path) {
    if (node.is_number_integer()) {
        const int particle = node.get<int>();
        if (particle < 1) {
            throw DomainError(path + ": leaf indices must be positive");
        }
        return TreeShape::leaf(particle);
    }
    if (!node.is_array() || node.size() != 2) {
        throw DomainError(path + ": shape nodes are leaf integers or pairs");
    }
    return TreeShape::join(shape_from_json(node[0], path + "[0]"),
                           shape_from_json(node[1], path + "[1]"));
}

inline OrderedJson shape_to_json(const TreeShape& shape, const TreeShape::ChildRef& node) {
    if (node.is_leaf) {
        return OrderedJson(node.index);
    }
    OrderedJson pair = OrderedJson::array();
    pair.push_back(shape_to_json(shape, shape.left_child(node.index)));
    pair.push_back(shape_to_json(shape, shape.right_child(node.index)));
    return pair;
}

}  // namespace detail

/// Parses the labeled-tree document {"leaves", "shape", "leaf_spins",
/// "labels", "root"}. Spins cross the boundary as twice-integers. Rejects
/// unknown fields, non-canonical leaves, and inadmissible labelings (with the
/// offending node path in the message).
inline LabeledTree tree_from_json(const Json& doc, const std::string& what = "tree") {
    if (!doc.is_object()) {
        throw DomainError(what + ": expected an object");
    }
    detail::reject_unknown_fields(doc, {"leaves", "shape", "leaf_spins", "labels", "root"}, what);

    LabeledTree tree;
    tree.shape = detail::shape_from_json(detail::require_field(doc, "shape", what), what + ".shape");
    if (!tree.shape.canonical_particles()) {
        throw DomainError(what + ": leaves must be the particle indices 1..n exactly once");
    }
    if (auto it = doc.find("leaves"); it != doc.end()) {
        std::vector<int> leaves;
        for (const Json& leaf : *it) {
            leaves.push_back(detail::int_field(leaf, what + ".leaves"));
        }
        if (leaves != tree.shape.leaf_order()) {
            throw DomainError(what + ": 'leaves' disagrees with the shape's left-to-right order");
        }
    }
    if (auto it = doc.find("leaf_spins"); it != doc.end()) {
        for (auto entry = it->begin(); entry != it->end(); ++entry) {
            const int particle = detail::int_key(entry.key(), what + ".leaf_spins");
            const auto& order = tree.shape.leaf_order();
            if (std::find(order.begin(), order.end(), particle) == order.end()) {
                throw DomainError(what + ".leaf_spins: no leaf " + entry.key());
            }
            tree.leaf_spins.emplace(particle,
                                    TwiceSpin(detail::int_field(*entry, what + ".leaf_spins")));
        }
    }
    if (auto it = doc.find("labels"); it != doc.end()) {
        const std::vector<int> ids = tree.shape.internal_edge_ids();
        for (auto entry = it->begin(); entry != it->end(); ++entry) {
            const int edge = detail::int_key(entry.key(), what + ".labels");
            if (std::find(ids.begin(), ids.end(), edge) == ids.end()) {
                throw DomainError(what + ".labels: no internal edge " + entry.key());
            }
            tree.edge_labels.emplace(edge, TwiceSpin(detail::int_field(*entry, what + ".labels")));
        }
    }
    tree.root_label = TwiceSpin(detail::int_field(detail::require_field(doc, "root", what),
                                                  what + ".root"));
    if (auto violation = labeling_violation(tree)) {
        throw DomainError(what + ": " + *violation);
    }
    return tree;
}

/// Canonical labeled-tree document; parse followed by serialize is the
/// identity on this form.
inline OrderedJson tree_to_json(const LabeledTree& tree) {
    OrderedJson doc;
    doc["leaves"] = tree.shape.leaf_order();
    if (tree.shape.single_leaf()) {
        doc["shape"] = tree.shape.leaf_order()[0];
    } else {
        doc["shape"] = detail::shape_to_json(tree.shape,
                                             TreeShape::ChildRef{false, tree.shape.root_gap()});
    }
    // object keys sorted numerically for stable bytes
    OrderedJson spins = OrderedJson::object();
    std::vector<int> particles = tree.shape.leaf_order();
    std::sort(particles.begin(), particles.end());
    for (int particle : particles) {
        spins[std::to_string(particle)] = tree.leaf_spin(particle).twice();
    }
    doc["leaf_spins"] = std::move(spins);
    OrderedJson labels = OrderedJson::object();
    for (int edge : tree.shape.internal_edge_ids()) {
        labels[std::to_string(edge)] = tree.edge_labels.at(edge).twice();
    }
    doc["labels"] = std::move(labels);
    doc["root"] = tree.root_label.twice();
    return doc;
}

inline OrderedJson move_plan_to_json(const MovePlan& plan) {
    OrderedJson moves = OrderedJson::array();
    for (const Move& move : plan.moves) {
        OrderedJson entry;
        if (std::holds_alternative<Rotation>(move)) {
            const Rotation& r = std::get<Rotation>(move);
            entry["type"] = "rotate";
            entry["node"] = r.node_gap;
            entry["dir"] = r.direction == RotationDirection::Left ? "left" : "right";
        } else {
            entry["type"] = "swap";
            entry["node"] = std::get<SiblingSwapMove>(move).node_gap;
        }
        moves.push_back(std::move(entry));
    }
    return moves;
}

inline FlipCobordism cobordism_from_json(const Json& doc) {
    if (!doc.is_object()) {
        throw DomainError("cobordism: expected an object");
    }
    detail::reject_unknown_fields(doc, {"start", "flips", "end"}, "cobordism");
    FlipCobordism c{tree_from_json(detail::require_field(doc, "start", "cobordism"), "start"),
                    {},
                    tree_from_json(detail::require_field(doc, "end", "cobordism"), "end")};
    for (const Json& flip : detail::require_field(doc, "flips", "cobordism")) {
        c.flips.push_back(detail::int_field(flip, "cobordism.flips"));
    }
    return c;
}

inline ClosedTriangulation closed_triangulation_from_json(const Json& doc) {
    if (!doc.is_object()) {
        throw DomainError("closed triangulation: expected an object");
    }
    detail::reject_unknown_fields(doc, {"tets", "num_edges", "face_gluings"},
                                  "closed triangulation");
    ClosedTriangulation m;
    for (const Json& tet : detail::require_field(doc, "tets", "closed triangulation")) {
        if (!tet.is_array() || tet.size() != 6) {
            throw DomainError("closed triangulation: each tetrahedron lists six edge ids");
        }
        std::array<int, 6> ids{};
        for (int i = 0; i < 6; ++i) {
            ids[static_cast<std::size_t>(i)] = detail::int_field(tet[static_cast<std::size_t>(i)],
                                                                 "closed triangulation.tets");
        }
        m.tets.push_back(ids);
    }
    m.num_edges =
        detail::int_field(detail::require_field(doc, "num_edges", "closed triangulation"),
                          "closed triangulation.num_edges");
    for (const Json& gluing : detail::require_field(doc, "face_gluings", "closed triangulation")) {
        if (!gluing.is_array() || gluing.size() != 2 || !gluing[0].is_array() ||
            gluing[0].size() != 2 || !gluing[1].is_array() || gluing[1].size() != 2) {
            throw DomainError("closed triangulation: gluings are pairs of [tet, face]");
        }
        m.face_gluings.push_back(
            {ClosedTriangulation::FaceRef{
                 detail::int_field(gluing[0][0], "closed triangulation.face_gluings"),
                 detail::int_field(gluing[0][1], "closed triangulation.face_gluings")},
             ClosedTriangulation::FaceRef{
                 detail::int_field(gluing[1][0], "closed triangulation.face_gluings"),
                 detail::int_field(gluing[1][1], "closed triangulation.face_gluings")}});
    }
    m.validate();
    return m;
}

}  // namespace spinrecouple
