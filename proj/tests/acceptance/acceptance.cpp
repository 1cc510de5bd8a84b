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

// Acceptance runner: one line per criterion, nonzero exit when any fails.
// Each criterion carries its tolerance and a wall-clock budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"

using namespace spinrecouple;
namespace ts = testsupport;

namespace {

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<bool(std::string&)> run;
};

std::vector<int> iota_particles(int n) {
    std::vector<int> out(static_cast<std::size_t>(n));
    std::iota(out.begin(), out.end(), 1);
    return out;
}

std::vector<TwoRowDiagram> diagrams_up_to(int max_n) {
    std::vector<TwoRowDiagram> out;
    for (int n = 1; n <= max_n; ++n) {
        for (int row2 = 0; 2 * row2 <= n; ++row2) {
            out.emplace_back(n - row2, row2);
        }
    }
    return out;
}

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
                upper[static_cast<std::size_t>(i)] =
                    flip[static_cast<std::size_t>(i)] ? col[1] : col[0];
                lower[static_cast<std::size_t>(i)] =
                    flip[static_cast<std::size_t>(i)] ? col[0] : col[1];
            }
            out.push_back(SixSpins{upper[0], upper[1], upper[2], lower[0], lower[1], lower[2]});
        }
    }
    return out;
}

ts::SurdMatrix transpose(const ts::SurdMatrix& m) {
    ts::SurdMatrix out(m.size(), std::vector<SurdSum>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            out[j][i] = m[i][j];
        }
    }
    return out;
}

// --------------------------------------------------------------------------

bool sixj_correctness(std::string& detail) {
    std::mt19937_64 rng(20260801);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        const SixSpins s = ts::random_admissible_sixj(rng, 16);
        const SurdSum value = sixj(s);
        if (!ts::matches_float_oracle(value, s)) {
            detail = "oracle mismatch";
            return false;
        }
        for (const SixSpins& image : tetrahedral_images(s)) {
            if (sixj(image) != value) {
                detail = "symmetry violation";
                return false;
            }
        }
        ++checked;
    }
    detail = "1000 symbols, 24 symmetries each";
    return true;
}

bool biedenharn_elliott(std::string& detail) {
    std::mt19937_64 rng(20260802);
    int tested = 0;
    while (tested < 500) {
        const SixSpins lhs = ts::random_admissible_sixj(rng, 16);
        const TwiceSpin g = lhs.a, h = lhs.b, j = lhs.f, e = lhs.c, a = lhs.e, d = lhs.d;
        const SixSpins rhs = ts::random_admissible_sixj(rng, 16);
        const TwiceSpin f = rhs.c, b = rhs.e, c = rhs.d;
        if (!SixSpins{g, h, j, f, b, c}.admissible()) {
            continue;
        }
        if (!biedenharn_elliott_residual(a, b, c, d, e, f, g, h, j).is_zero()) {
            detail = "nonzero residual";
            return false;
        }
        ++tested;
    }
    detail = "500 admissible tuples, residual exactly 0";
    return true;
}

bool recoupling_unitarity(std::string& detail) {
    std::mt19937_64 rng(20260803);
    int tested = 0;
    while (tested < 200) {
        const TwiceSpin a = ts::random_spin(rng, 10);
        const TwiceSpin b = ts::random_spin(rng, 10);
        const TwiceSpin c = ts::random_spin(rng, 10);
        const TwiceSpin e = ts::random_spin(rng, 10);
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
        if (fs.size() != ds.size()) {
            detail = "recoupling matrix is not square";
            return false;
        }
        ts::SurdMatrix m(fs.size(), std::vector<SurdSum>(ds.size()));
        for (std::size_t i = 0; i < fs.size(); ++i) {
            for (std::size_t jx = 0; jx < ds.size(); ++jx) {
                m[i][jx] =
                    recoupling_tensor(SixSpins{a, b, TwiceSpin(fs[i]), c, e, TwiceSpin(ds[jx])});
            }
        }
        if (!ts::surd_is_identity(ts::surd_multiply(transpose(m), m))) {
            detail = "MtM != I for legs (" + a.str() + "," + b.str() + "," + c.str() + "," +
                     e.str() + ")";
            return false;
        }
        ++tested;
    }
    detail = "200 leg choices, MtM = I exactly";
    return true;
}

bool worked_example(std::string& detail) {
    const TreeShape rc3 = TreeShape::join(
        TreeShape::leaf(1), TreeShape::join(TreeShape::leaf(2), TreeShape::leaf(3)));
    const LabeledTree lambda{rc3, {}, {{2, TwiceSpin(0)}}, TwiceSpin(1)};
    const LabeledTree lambda_prime{rc3, {}, {{2, TwiceSpin(2)}}, TwiceSpin(1)};
    const Permutation swap12({2, 1, 3});
    const SurdSum amp = evaluate_amplitude(lambda, swap12, lambda_prime);
    if (amp != SurdSum::of_surd(make_rational(1, 2), 3)) {
        detail = "exact value is not sqrt(3)/2";
        return false;
    }
    const double value = amp.to_double().value;
    if (std::abs(value - 0.8660254037844386) > 1e-12) {
        detail = "float value off";
        return false;
    }
    const double dense = dense_oracle_amplitude(lambda, swap12, lambda_prime);
    if (std::abs(value - dense) > 1e-12) {
        detail = "dense oracle disagrees";
        return false;
    }
    detail = "amplitude = sqrt(3)/2 exactly; dense oracle within 1e-12";
    return true;
}

bool engine_oracle_equivalence(std::string& detail) {
    std::mt19937_64 rng(20260805);
    int random_cases = 0;
    while (random_cases < 200) {
        const int n = 3 + static_cast<int>(rng() % 4);
        const TreeShape sa = ts::random_tree_shape(rng, iota_particles(n));
        const TreeShape sb = ts::random_tree_shape(rng, iota_particles(n));
        const TwiceSpin root = ts::random_reachable_root(rng, n);
        const auto las = enumerate_labelings(sa, {}, root);
        const auto lbs = enumerate_labelings(sb, {}, root);
        if (las.empty() || lbs.empty()) {
            continue;
        }
        const LabeledTree la = las[rng() % las.size()];
        const LabeledTree lb = lbs[rng() % lbs.size()];
        const Permutation p = ts::random_permutation(rng, n);
        const double exact = evaluate_amplitude(la, p, lb).to_double().value;
        const double dense = dense_oracle_amplitude(la, p, lb);
        if (std::abs(exact - dense) > 1e-10) {
            detail = "random instance off by more than 1e-10";
            return false;
        }
        ++random_cases;
    }

    // exhaustive at n = 4: all shape pairs, all equal-root labeling pairs,
    // all 24 permutations
    const auto shapes = enumerate_tree_shapes(iota_particles(4));
    std::vector<Permutation> perms;
    std::vector<int> base = {1, 2, 3, 4};
    std::sort(base.begin(), base.end());
    do {
        perms.push_back(Permutation(base));
    } while (std::next_permutation(base.begin(), base.end()));

    long long exhaustive = 0;
    for (const TreeShape& sa : shapes) {
        for (const TreeShape& sb : shapes) {
            for (int tj : {0, 2, 4}) {
                const auto las = enumerate_labelings(sa, {}, TwiceSpin(tj));
                const auto lbs = enumerate_labelings(sb, {}, TwiceSpin(tj));
                for (const LabeledTree& la : las) {
                    for (const LabeledTree& lb : lbs) {
                        for (const Permutation& p : perms) {
                            const double exact = evaluate_amplitude(la, p, lb).to_double().value;
                            const double dense = dense_oracle_amplitude(la, p, lb);
                            if (std::abs(exact - dense) > 1e-10) {
                                detail = "exhaustive n=4 mismatch";
                                return false;
                            }
                            ++exhaustive;
                        }
                    }
                }
            }
        }
    }
    std::ostringstream out;
    out << "200 random (n<=6) + " << exhaustive << " exhaustive n=4 amplitudes within 1e-10";
    detail = out.str();
    return true;
}

bool plan_independence_and_unitarity(std::string& detail) {
    std::mt19937_64 rng(20260806);

    // distinct plans, exact agreement
    int plan_cases = 0;
    while (plan_cases < 40) {
        const int n = 3 + static_cast<int>(rng() % 3);
        const TreeShape sa = ts::random_tree_shape(rng, iota_particles(n));
        const TreeShape sb = ts::random_tree_shape(rng, iota_particles(n));
        const TwiceSpin root = ts::random_reachable_root(rng, n);
        const auto las = enumerate_labelings(sa, {}, root);
        const auto lbs = enumerate_labelings(sb, {}, root);
        if (las.empty() || lbs.empty()) {
            continue;
        }
        const LabeledTree la = las[rng() % las.size()];
        const Permutation p = ts::random_permutation(rng, n);
        const Permutation p_inv = p.inverse();
        LabeledTree twisted = la;
        twisted.shape = la.shape.relabel_leaves([&](int q) { return p_inv(q); });

        const MovePlan plan = plan_moves(la.shape, p, sb);
        MovePlan padded;
        padded.moves.emplace_back(SiblingSwapMove{1});
        {
            const SiblingSwapInfo info = sibling_swap_info(twisted.shape, 1);
            padded.moves.emplace_back(
                SiblingSwapMove{info.node_is_root ? info.result.root_gap() : info.out_edge_new});
        }
        for (const Move& move : plan.moves) {
            padded.moves.push_back(move);
        }
        const Superposition a = apply_plan(Superposition::basis_state(twisted), plan);
        const Superposition b = apply_plan(Superposition::basis_state(twisted), padded);
        if (a.shape != b.shape || a.amplitudes != b.amplitudes) {
            detail = "two valid plans disagree";
            return false;
        }
        ++plan_cases;
    }

    // exact orthogonality and the homomorphism property, n <= 5
    for (int n = 3; n <= 5; ++n) {
        for (int trial = 0; trial < 6; ++trial) {
            const TreeShape shape = ts::random_tree_shape(rng, iota_particles(n));
            const TwiceSpin root = ts::random_reachable_root(rng, n);
            const auto basis = enumerate_labelings(shape, {}, root);
            if (basis.empty()) {
                continue;
            }
            const Permutation p1 = ts::random_permutation(rng, n);
            const Permutation p2 = ts::random_permutation(rng, n);
            const auto matrix_of = [&](const Permutation& p) {
                ts::SurdMatrix m(basis.size(), std::vector<SurdSum>(basis.size()));
                for (std::size_t col = 0; col < basis.size(); ++col) {
                    for (std::size_t row = 0; row < basis.size(); ++row) {
                        m[row][col] = evaluate_amplitude(basis[col], p, basis[row]);
                    }
                }
                return m;
            };
            const auto m1 = matrix_of(p1);
            const auto m2 = matrix_of(p2);
            if (!ts::surd_is_identity(ts::surd_multiply(transpose(m1), m1))) {
                detail = "amplitude matrix not orthogonal";
                return false;
            }
            if (ts::surd_multiply(m2, m1) != matrix_of(Permutation::product(p2, p1))) {
                detail = "homomorphism violated";
                return false;
            }
        }
    }
    detail = "40 plan pairs agree exactly; matrices orthogonal and multiplicative (n<=5)";
    return true;
}

bool youngs_orthogonal_form(std::string& detail) {
    std::mt19937_64 rng(20260807);
    long long compared = 0;
    for (const TwoRowDiagram& d : diagrams_up_to(8)) {
        for (int trial = 0; trial < 50; ++trial) {
            const Permutation p = ts::random_permutation(rng, d.n());
            if (yof_full_matrix(d, p) != ts::yor_matrix_oracle(d, p)) {
                detail = "axial-distance oracle mismatch on [" + std::to_string(d.row1) + "," +
                         std::to_string(d.row2) + "]";
                return false;
            }
            ++compared;
        }
        // Coxeter relations for this diagram's generators
        const int n = d.n();
        if (n < 2) {
            continue;
        }
        std::vector<ts::SurdMatrix> gens;
        for (int k = 1; k < n; ++k) {
            gens.push_back(yof_full_matrix(d, Permutation::adjacent(n, k)));
        }
        for (std::size_t k = 0; k < gens.size(); ++k) {
            if (!ts::surd_is_identity(ts::surd_multiply(gens[k], gens[k]))) {
                detail = "S_k^2 != I";
                return false;
            }
            if (k + 1 < gens.size()) {
                const auto lhs = ts::surd_multiply(gens[k], ts::surd_multiply(gens[k + 1], gens[k]));
                const auto rhs = ts::surd_multiply(gens[k + 1], ts::surd_multiply(gens[k], gens[k + 1]));
                if (lhs != rhs) {
                    detail = "braid relation violated";
                    return false;
                }
            }
            for (std::size_t m = k + 2; m < gens.size(); ++m) {
                if (ts::surd_multiply(gens[k], gens[m]) != ts::surd_multiply(gens[m], gens[k])) {
                    detail = "distant generators do not commute";
                    return false;
                }
            }
        }
    }
    std::ostringstream out;
    out << compared << " matrices match the axial-distance oracle; Coxeter relations exact";
    detail = out.str();
    return true;
}

bool characters(std::string& detail) {
    std::mt19937_64 rng(20260808);
    // exact character = full-matrix trace, every two-row diagram with n <= 8
    for (const TwoRowDiagram& d : diagrams_up_to(8)) {
        for (int trial = 0; trial < 5; ++trial) {
            const Permutation p = ts::random_permutation(rng, d.n());
            const auto matrix = yof_full_matrix(d, p);
            SurdSum trace;
            for (std::size_t i = 0; i < matrix.size(); ++i) {
                trace += matrix[i][i];
            }
            if (character_exact(d, p) != trace) {
                detail = "trace mismatch";
                return false;
            }
        }
    }

    // estimator: 100 runs on [4,2] with random 6-cycles, epsilon 0.05 delta 0.01
    const TwoRowDiagram d42(4, 2);
    const double epsilon = 0.05, delta = 0.01;
    int within = 0;
    for (int run = 0; run < 100; ++run) {
        // random 6-cycle: rotate a shuffled arrangement one step
        std::vector<int> order = iota_particles(6);
        for (int i = 5; i > 0; --i) {
            std::swap(order[static_cast<std::size_t>(i)],
                      order[static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(i + 1))]);
        }
        std::vector<int> images(6);
        for (int i = 0; i < 6; ++i) {
            images[static_cast<std::size_t>(order[static_cast<std::size_t>(i)] - 1)] =
                order[static_cast<std::size_t>((i + 1) % 6)];
        }
        const Permutation cycle(images);
        const double exact =
            (character_exact(d42, cycle).as_rational() / Rational(dimension_two_row(d42)))
                .convert_to<double>();
        const double estimate = character_estimate(d42, cycle, epsilon, delta, rng());
        if (std::abs(estimate - exact) <= epsilon) {
            ++within;
        }
    }
    if (within < 99) {
        detail = "estimator landed within epsilon only " + std::to_string(within) + "/100 times";
        return false;
    }
    detail = "traces exact (all diagrams n<=8); estimator within epsilon " +
             std::to_string(within) + "/100 runs";
    return true;
}

bool ponzano_regge(std::string& detail) {
    // single flip = tetrahedron element for every admissible boundary with 2j <= 4
    long long flips_checked = 0;
    for (int ta = 0; ta <= 4; ++ta) {
        for (int tb = 0; tb <= 4; ++tb) {
            for (int tc = 0; tc <= 4; ++tc) {
                for (int te = 0; te <= 4; ++te) {
                    for (int tf = 0; tf <= 4; ++tf) {
                        for (int td = 0; td <= 4; ++td) {
                            const SixSpins s{TwiceSpin(ta), TwiceSpin(tb), TwiceSpin(tf),
                                             TwiceSpin(tc), TwiceSpin(te), TwiceSpin(td)};
                            if (!s.admissible()) {
                                continue;
                            }
                            const std::map<int, TwiceSpin> spins = {
                                {1, TwiceSpin(ta)}, {2, TwiceSpin(tb)}, {3, TwiceSpin(tc)}};
                            const LabeledTree start{TreeShape::left_comb({1, 2, 3}),
                                                    spins,
                                                    {{1, TwiceSpin(tf)}},
                                                    TwiceSpin(te)};
                            const LabeledTree end{
                                TreeShape::join(TreeShape::leaf(1),
                                                TreeShape::join(TreeShape::leaf(2),
                                                                TreeShape::leaf(3))),
                                spins,
                                {{2, TwiceSpin(td)}},
                                TwiceSpin(te)};
                            const SurdSum amp =
                                flip_cobordism_amplitude(FlipCobordism{start, {1}, end});
                            if (amp != tet_matrix_element(TetLabels{TwiceSpin(ta), TwiceSpin(tb),
                                                                    TwiceSpin(tf), TwiceSpin(tc),
                                                                    TwiceSpin(te), TwiceSpin(td)})) {
                                detail = "single flip disagrees with the tetrahedron element";
                                return false;
                            }
                            ++flips_checked;
                        }
                    }
                }
            }
        }
    }

    // functoriality on 4-leaf duals
    const TreeShape s1 = TreeShape::left_comb({1, 2, 3, 4});
    const TreeShape s2 = apply_rotation(s1, Rotation{2, RotationDirection::Right});
    const TreeShape s4 = apply_rotation(apply_rotation(s2, Rotation{3, RotationDirection::Right}),
                                        Rotation{3, RotationDirection::Right});
    for (int troot : {0, 2, 4}) {
        const auto basis1 = enumerate_labelings(s1, {}, TwiceSpin(troot));
        const auto basis2 = enumerate_labelings(s2, {}, TwiceSpin(troot));
        const auto basis4 = enumerate_labelings(s4, {}, TwiceSpin(troot));
        const auto matrix = [&](const std::vector<LabeledTree>& from,
                                const std::vector<LabeledTree>& to,
                                const std::vector<int>& flips) {
            ts::SurdMatrix m(to.size(), std::vector<SurdSum>(from.size()));
            for (std::size_t col = 0; col < from.size(); ++col) {
                for (std::size_t row = 0; row < to.size(); ++row) {
                    m[row][col] = flip_cobordism_amplitude(FlipCobordism{from[col], flips, to[row]});
                }
            }
            return m;
        };
        const auto leg1 = matrix(basis1, basis2, {1});
        const auto leg2 = matrix(basis2, basis4, {1, 2});
        const auto whole = matrix(basis1, basis4, {1, 1, 2});
        // rectangular product
        ts::SurdMatrix composed(basis4.size(), std::vector<SurdSum>(basis1.size()));
        for (std::size_t i = 0; i < basis4.size(); ++i) {
            for (std::size_t k = 0; k < basis2.size(); ++k) {
                if (leg2[i][k].is_zero()) {
                    continue;
                }
                for (std::size_t j = 0; j < basis1.size(); ++j) {
                    composed[i][j] += leg2[i][k] * leg1[k][j];
                }
            }
        }
        if (composed != whole) {
            detail = "flip composition is not functorial";
            return false;
        }
    }

    // closed two-tetrahedron sum at cutoff 2 against the direct float oracle
    ClosedTriangulation doubled;
    doubled.tets = {{0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4, 5}};
    doubled.num_edges = 6;
    for (int face = 0; face < 4; ++face) {
        doubled.face_gluings.push_back({{0, face}, {1, face}});
    }
    const ClosedAmplitude closed = closed_amplitude_truncated(doubled, TwiceSpin(2));
    const ts::BigFloat oracle = ts::closed_sum_float_oracle(doubled, 2);
    if (abs(ts::to_bigfloat(closed.value) - oracle) > ts::BigFloat("1e-12")) {
        detail = "closed sum disagrees with the direct oracle";
        return false;
    }

    std::ostringstream out;
    out << flips_checked << " single-flip labelings; functorial composition; closed sum within 1e-12";
    detail = out.str();
    return true;
}

bool combinatorics(std::string& detail) {
    for (int n = 1; n <= 10; ++n) {
        if (count_tree_shapes(n) != BigInt(enumerate_tree_shapes(iota_particles(n)).size())) {
            detail = "Catalan count mismatch at n=" + std::to_string(n);
            return false;
        }
    }
    for (int n = 1; n <= 12; ++n) {
        for (int row2 = 0; 2 * row2 <= n; ++row2) {
            const TwoRowDiagram d(n - row2, row2);
            if (dimension_two_row(d) != BigInt(enumerate_tableaux(d).size())) {
                detail = "dimension vs tableau enumeration mismatch";
                return false;
            }
            if (n >= 2) {
                const auto labelings =
                    enumerate_labelings(TreeShape::left_comb(iota_particles(n)), {}, d.total_spin());
                if (dimension_two_row(d) != BigInt(labelings.size())) {
                    detail = "dimension vs caterpillar labeling count mismatch";
                    return false;
                }
            }
        }
    }
    if (genus(4, 6, 4) != 0 || genus(6, 12, 8) != 0 || genus(7, 21, 14) != 1) {
        detail = "genus values wrong";
        return false;
    }
    detail = "Catalan n<=10; dimensions n<=12; genus fixtures";
    return true;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"6j-correctness", 60.0, sixj_correctness},
        {"biedenharn-elliott", 120.0, biedenharn_elliott},
        {"recoupling-unitarity", 30.0, recoupling_unitarity},
        {"worked-example", 300.0, worked_example},
        {"engine-oracle-equivalence", 300.0, engine_oracle_equivalence},
        {"plan-independence-unitarity", 300.0, plan_independence_and_unitarity},
        {"youngs-orthogonal-form", 300.0, youngs_orthogonal_form},
        {"characters", 300.0, characters},
        {"ponzano-regge", 300.0, ponzano_regge},
        {"combinatorics", 60.0, combinatorics},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > criterion.budget_seconds) {
            ok = false;
            detail += " [exceeded budget]";
        }
        std::printf("[%s] %-28s %7.2fs/%gs  %s\n", ok ? "PASS" : "FAIL", criterion.name.c_str(),
                    elapsed, criterion.budget_seconds, detail.c_str());
        std::fflush(stdout);
        if (!ok) {
            ++failures;
        }
    }
    return failures;
}
