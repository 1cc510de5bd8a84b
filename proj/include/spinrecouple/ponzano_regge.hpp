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

#include <array>
#include <set>

#include "spinrecouple/engine.hpp"

namespace spinrecouple {

/// Spins on the six edges of one tetrahedron in the 6j layout {a b f; c e d}:
/// the column pairs (a,c), (b,e), (f,d) sit on opposite (non-adjacent) edges.
struct TetLabels {
    TwiceSpin a, b, f, c, e, d;

    SixSpins as_six_spins() const {
        return SixSpins{a, b, f, c, e, d};
    }
};

/// Boundary-to-boundary matrix element of a single tetrahedron viewed as a
/// cobordism between two-triangle discs: the recoupling tensor [a b f; c e d].
/// Zero for inadmissible labels.
inline SurdSum tet_matrix_element(const TetLabels& t) {
    return recoupling_tensor(t.as_six_spins());
}

/// A cobordism built by gluing tetrahedra two faces at a time onto a
/// triangulated surface whose dual is a labeled binary tree. Each glued
/// tetrahedron flips one internal edge; on the dual tree the flip is a
/// re-association at that edge.
struct FlipCobordism {
    LabeledTree start;
    std::vector<int> flips;  // internal-edge ids, applied in order
    LabeledTree end;
};

namespace detail {

inline Move flip_to_move(const TreeShape& shape, int edge_id) {
    const std::vector<int> ids = shape.internal_edge_ids();
    if (std::find(ids.begin(), ids.end(), edge_id) == ids.end()) {
        throw DomainError("flip names edge " + std::to_string(edge_id) +
                          " which is not an internal edge of the current dual tree");
    }
    const int parent = shape.parent_gap(edge_id);
    const RotationDirection direction =
        shape.is_left_child(edge_id) ? RotationDirection::Right : RotationDirection::Left;
    return Rotation{parent, direction};
}

}  // namespace detail

/// Exact Ponzano-Regge transition amplitude of the flip cobordism: evolves
/// the start boundary state through the dual-tree recoupling of each flip and
/// reads off the coefficient of the end boundary labeling.
inline SurdSum flip_cobordism_amplitude(const FlipCobordism& c, int threads = 1) {
    if (auto violation = labeling_violation(c.start)) {
        throw DomainError("start boundary: " + *violation);
    }
    if (auto violation = labeling_violation(c.end)) {
        throw DomainError("end boundary: " + *violation);
    }
    if (c.start.shape.leaf_count() != c.end.shape.leaf_count() ||
        c.start.shape.leaf_order() != c.end.shape.leaf_order()) {
        throw DomainError("start and end boundaries must share the same perimeter edges");
    }
    if (c.start.root_label != c.end.root_label) {
        throw DomainError("start and end boundaries must agree on the root edge label");
    }
    for (int particle : c.start.shape.leaf_order()) {
        if (c.start.leaf_spin(particle) != c.end.leaf_spin(particle)) {
            throw DomainError("start and end boundaries must agree on perimeter labels");
        }
    }

    Superposition state = Superposition::basis_state(c.start);
    for (int edge : c.flips) {
        state = apply_move(state, detail::flip_to_move(state.shape, edge), threads);
    }
    if (state.shape != c.end.shape) {
        throw DomainError("flip sequence does not reach the end boundary triangulation");
    }
    auto it = state.amplitudes.find(c.end.label_key());
    return it == state.amplitudes.end() ? SurdSum() : it->second;
}

/// A closed triangulated 3-manifold: tetrahedra as 6-tuples of global edge
/// ids in the {a b f; c e d} layout, plus the pairing of their faces. Faces
/// 0..3 of a tetrahedron are the triads (a,b,f), (a,e,d), (c,b,d), (c,e,f).
struct ClosedTriangulation {
    struct FaceRef {
        int tet = 0;
        int face = 0;
        friend auto operator<=>(const FaceRef&, const FaceRef&) = default;
    };

    std::vector<std::array<int, 6>> tets;
    int num_edges = 0;
    std::vector<std::pair<FaceRef, FaceRef>> face_gluings;

    static constexpr std::array<std::array<int, 3>, 4> kFaceSlots = {
        std::array<int, 3>{0, 1, 2},  // (a, b, f)
        std::array<int, 3>{0, 4, 5},  // (a, e, d)
        std::array<int, 3>{3, 1, 5},  // (c, b, d)
        std::array<int, 3>{3, 4, 2},  // (c, e, f)
    };

    std::array<int, 3> face_edges(const FaceRef& ref) const {
        const auto& slots = kFaceSlots[static_cast<std::size_t>(ref.face)];
        const auto& tet = tets[static_cast<std::size_t>(ref.tet)];
        return {tet[static_cast<std::size_t>(slots[0])], tet[static_cast<std::size_t>(slots[1])],
                tet[static_cast<std::size_t>(slots[2])]};
    }

    void validate() const {
        if (tets.empty() || num_edges <= 0) {
            throw DomainError("closed triangulation needs tetrahedra and edges");
        }
        std::vector<bool> used(static_cast<std::size_t>(num_edges), false);
        for (const auto& tet : tets) {
            for (int edge : tet) {
                if (edge < 0 || edge >= num_edges) {
                    throw DomainError("tetrahedron uses edge id " + std::to_string(edge) +
                                      " outside 0.." + std::to_string(num_edges - 1));
                }
                used[static_cast<std::size_t>(edge)] = true;
            }
        }
        for (int e = 0; e < num_edges; ++e) {
            if (!used[static_cast<std::size_t>(e)]) {
                throw DomainError("edge " + std::to_string(e) + " belongs to no tetrahedron");
            }
        }
        std::set<FaceRef> seen;
        for (const auto& [lhs, rhs] : face_gluings) {
            for (const FaceRef& ref : {lhs, rhs}) {
                if (ref.tet < 0 || ref.tet >= static_cast<int>(tets.size()) || ref.face < 0 ||
                    ref.face > 3) {
                    throw DomainError("face gluing references a missing face");
                }
                if (!seen.insert(ref).second) {
                    throw DomainError("face glued more than once");
                }
            }
            std::array<int, 3> a = face_edges(lhs);
            std::array<int, 3> b = face_edges(rhs);
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b) {
                throw DomainError("glued faces must carry the same edge triple");
            }
        }
        if (seen.size() != 4 * tets.size()) {
            throw DomainError("closed manifold needs every face glued exactly once");
        }
    }
};

struct ClosedAmplitude {
    SurdSum value;
    /// True when some admissible labeling used a label at the cutoff, i.e.
    /// the truncated sum may not have converged.
    bool cutoff_contact = false;
};

/// Truncated state sum over labelings with 2j <= cutoff on every edge:
/// Z = sum prod_edges (-1)^{2j} (2j+1) prod_faces (-1)^{j1+j2+j3}
///     prod_tets {6j}. Faces are counted once per gluing. Inadmissible
/// labelings are skipped.
inline ClosedAmplitude closed_amplitude_truncated(const ClosedTriangulation& m, TwiceSpin cutoff) {
    m.validate();
    const int edges = m.num_edges;
    std::vector<int> label(static_cast<std::size_t>(edges), 0);
    ClosedAmplitude out;

    const auto admissible = [&]() {
        for (const auto& tet : m.tets) {
            const SixSpins s{TwiceSpin(label[static_cast<std::size_t>(tet[0])]),
                             TwiceSpin(label[static_cast<std::size_t>(tet[1])]),
                             TwiceSpin(label[static_cast<std::size_t>(tet[2])]),
                             TwiceSpin(label[static_cast<std::size_t>(tet[3])]),
                             TwiceSpin(label[static_cast<std::size_t>(tet[4])]),
                             TwiceSpin(label[static_cast<std::size_t>(tet[5])])};
            if (!s.admissible()) {
                return false;
            }
        }
        return true;
    };

    while (true) {
        if (admissible()) {
            int max_label = 0;
            long long edge_weight = 1;
            int sign2 = 0;  // accumulated phase exponent, in twice units
            for (int e = 0; e < edges; ++e) {
                const int t = label[static_cast<std::size_t>(e)];
                max_label = std::max(max_label, t);
                edge_weight *= (t % 2 != 0) ? -(t + 1) : (t + 1);
            }
            for (const auto& [lhs, rhs] : m.face_gluings) {
                const std::array<int, 3> face = m.face_edges(lhs);
                sign2 += label[static_cast<std::size_t>(face[0])] +
                         label[static_cast<std::size_t>(face[1])] +
                         label[static_cast<std::size_t>(face[2])];
            }
            SurdSum term = SurdSum::of_rational(Rational(edge_weight));
            if ((sign2 / 2) % 2 != 0) {
                term = -term;
            }
            for (const auto& tet : m.tets) {
                term = term * sixj_cached(SixSpins{
                                  TwiceSpin(label[static_cast<std::size_t>(tet[0])]),
                                  TwiceSpin(label[static_cast<std::size_t>(tet[1])]),
                                  TwiceSpin(label[static_cast<std::size_t>(tet[2])]),
                                  TwiceSpin(label[static_cast<std::size_t>(tet[3])]),
                                  TwiceSpin(label[static_cast<std::size_t>(tet[4])]),
                                  TwiceSpin(label[static_cast<std::size_t>(tet[5])])});
                if (term.is_zero()) {
                    break;
                }
            }
            out.value += term;
            if (max_label == cutoff.twice()) {
                out.cutoff_contact = true;
            }
        }
        // odometer over labelings
        int pos = 0;
        while (pos < edges && label[static_cast<std::size_t>(pos)] == cutoff.twice()) {
            label[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == edges) {
            break;
        }
        ++label[static_cast<std::size_t>(pos)];
    }
    return out;
}

/// Genus of a closed orientable triangulated surface from its Euler
/// characteristic: V - E + F = 2 - 2g.
inline int genus(int vertices, int edges, int faces) {
    const int chi = vertices - edges + faces;
    if (chi % 2 != 0 || chi > 2) {
        throw DomainError("Euler characteristic " + std::to_string(chi) +
                          " is not that of a closed orientable surface");
    }
    return (2 - chi) / 2;
}

}  // namespace spinrecouple
