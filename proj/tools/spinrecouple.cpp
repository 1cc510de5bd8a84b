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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spinrecouple/spinrecouple.hpp"

namespace {

using namespace spinrecouple;

int max_particles() {
    const char* env = std::getenv("SPINRECOUPLE_MAX_N");
    if (env == nullptr || *env == '\0') {
        return 20;
    }
    try {
        return std::stoi(env);
    } catch (const std::exception&) {
        throw DomainError("SPINRECOUPLE_MAX_N must be an integer");
    }
}

void check_size(int n, const std::string& what) {
    const int cap = max_particles();
    if (n > cap) {
        throw ResourceError(what + " has n=" + std::to_string(n) + " but SPINRECOUPLE_MAX_N=" +
                            std::to_string(cap));
    }
}

Json load_input(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        text = buffer.str();
    } else {
        std::ifstream in(path);
        if (!in) {
            throw DomainError("cannot open input file '" + path + "'");
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        text = buffer.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw DomainError(std::string("malformed JSON: ") + e.what());
    }
}

TwiceSpin arg_spin(int twice, const std::string& what) {
    if (twice < 0) {
        throw DomainError(what + " must be a non-negative twice-spin integer");
    }
    return TwiceSpin(twice);
}

Permutation parse_permutation(const std::string& text) {
    std::istringstream in(text);
    std::vector<int> images;
    int value = 0;
    while (in >> value) {
        images.push_back(value);
    }
    if (!in.eof()) {
        throw DomainError("permutation must be space-separated integers");
    }
    if (images.empty()) {
        throw DomainError("permutation is empty");
    }
    return Permutation(images);
}

TwoRowDiagram parse_diagram(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw DomainError("diagram must be 'ROW1,ROW2'");
    }
    try {
        return TwoRowDiagram(std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1)));
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception&) {
        throw DomainError("diagram must be 'ROW1,ROW2' with integer rows");
    }
}

TwoRowTableau parse_tableau(const TwoRowDiagram& d, const std::string& text) {
    std::vector<int> rows;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            rows.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw DomainError("tableau must be comma-separated row numbers, got '" + text + "'");
        }
    }
    return TwoRowTableau(d, std::move(rows));
}

void emit(const OrderedJson& doc) {
    std::cout << doc.dump() << "\n";
}

struct Options {
    // sixj / recouple / twist spins (twice values)
    std::vector<int> spins;
    // amplitude / pr inputs
    std::string input;
    bool dump_moves = false;
    int parallel = 1;
    // trees
    int n = 0;
    bool count = false;
    // yof / character
    std::string diagram;
    std::string perm;
    std::vector<std::string> element;
    bool full = false;
    bool exact = false;
    double epsilon = 0.0;
    double delta = 0.0;
    std::uint64_t seed = 0;
    // pr-closed
    int cutoff = 0;
    // genus
    int vertices = 0;
    int edges = 0;
    int faces = 0;
};

int run_sixj(const Options& opt, bool dressed) {
    const SixSpins s{arg_spin(opt.spins[0], "a"), arg_spin(opt.spins[1], "b"),
                     arg_spin(opt.spins[2], "f"), arg_spin(opt.spins[3], "c"),
                     arg_spin(opt.spins[4], "e"), arg_spin(opt.spins[5], "d")};
    const SurdSum value = dressed ? recoupling_tensor(s) : sixj(s);
    OrderedJson doc;
    doc["value"] = surd_to_json(value);
    doc["float"] = value.to_double().value;
    emit(doc);
    return 0;
}

int run_twist(const Options& opt) {
    const SurdSum value = twist_phase(arg_spin(opt.spins[0], "j1"), arg_spin(opt.spins[1], "j2"),
                                      arg_spin(opt.spins[2], "j"));
    OrderedJson doc;
    doc["value"] = surd_to_json(value);
    doc["float"] = value.to_double().value;
    emit(doc);
    return 0;
}

int run_amplitude(const Options& opt) {
    const Json input = load_input(opt.input);
    if (!input.is_object()) {
        throw DomainError("amplitude input must be an object");
    }
    detail::reject_unknown_fields(input, {"lambda", "pi", "lambda_prime"}, "amplitude input");
    const LabeledTree lambda =
        tree_from_json(detail::require_field(input, "lambda", "amplitude input"), "lambda");
    const LabeledTree lambda_prime = tree_from_json(
        detail::require_field(input, "lambda_prime", "amplitude input"), "lambda_prime");
    std::vector<int> images;
    for (const Json& v : detail::require_field(input, "pi", "amplitude input")) {
        images.push_back(detail::int_field(v, "pi"));
    }
    const Permutation p(images);
    check_size(lambda.shape.leaf_count(), "amplitude");

    const SurdSum value = evaluate_amplitude(lambda, p, lambda_prime, opt.parallel);
    OrderedJson doc;
    doc["amplitude"] = surd_to_json(value);
    doc["float"] = value.to_double().value;
    if (opt.dump_moves) {
        doc["moves"] = move_plan_to_json(plan_moves(lambda.shape, p, lambda_prime.shape));
    }
    emit(doc);
    return 0;
}

int run_trees(const Options& opt) {
    if (!opt.count) {
        throw DomainError("trees: nothing to do (pass --count)");
    }
    if (opt.n < 1) {
        throw DomainError("trees: --n must be at least 1");
    }
    OrderedJson doc;
    doc["count"] = count_tree_shapes(opt.n).str();
    emit(doc);
    return 0;
}

int run_yof(const Options& opt) {
    const TwoRowDiagram d = parse_diagram(opt.diagram);
    const Permutation p = parse_permutation(opt.perm);
    check_size(d.n(), "yof");
    if (opt.full == !opt.element.empty()) {
        // exactly one of --full / --element
        throw DomainError("yof: pass exactly one of --element or --full");
    }
    OrderedJson doc;
    if (opt.full) {
        const auto matrix = yof_full_matrix(d, p, opt.parallel);
        OrderedJson tableaux = OrderedJson::array();
        for (const TwoRowTableau& t : enumerate_tableaux(d)) {
            std::string key;
            for (std::size_t i = 0; i < t.row_of.size(); ++i) {
                if (i > 0) {
                    key += ",";
                }
                key += std::to_string(t.row_of[i]);
            }
            tableaux.push_back(key);
        }
        OrderedJson rows = OrderedJson::array();
        for (const auto& row : matrix) {
            OrderedJson cells = OrderedJson::array();
            for (const SurdSum& cell : row) {
                cells.push_back(surd_to_json(cell));
            }
            rows.push_back(std::move(cells));
        }
        doc["tableaux"] = std::move(tableaux);
        doc["matrix"] = std::move(rows);
    } else {
        const TwoRowTableau row_t = parse_tableau(d, opt.element[0]);
        const TwoRowTableau col_t = parse_tableau(d, opt.element[1]);
        const SurdSum value = yof_matrix_element(d, p, row_t, col_t, opt.parallel);
        doc["element"] = surd_to_json(value);
        doc["float"] = value.to_double().value;
    }
    emit(doc);
    return 0;
}

int run_character(const Options& opt, bool estimate_requested) {
    const TwoRowDiagram d = parse_diagram(opt.diagram);
    const Permutation p = parse_permutation(opt.perm);
    check_size(d.n(), "character");
    OrderedJson doc;
    if (opt.exact == estimate_requested) {
        throw DomainError("character: pass either --exact or --epsilon/--delta/--seed");
    }
    if (opt.exact) {
        const SurdSum value = character_exact(d, p, opt.parallel);
        const Rational chi = value.as_rational();  // always an integer
        doc["character"] = rational_num(chi).str();
        const BigInt dim = dimension_two_row(d);
        doc["normalized"] = (chi / Rational(dim)).convert_to<double>();
    } else {
        const double estimate =
            character_estimate(d, p, opt.epsilon, opt.delta, opt.seed, opt.parallel);
        doc["estimate"] = estimate;
        doc["samples"] = static_cast<long long>(
            std::ceil(std::log(2.0 / opt.delta) / (2.0 * opt.epsilon * opt.epsilon)));
    }
    emit(doc);
    return 0;
}

int run_pr_amplitude(const Options& opt) {
    const FlipCobordism c = cobordism_from_json(load_input(opt.input));
    check_size(c.start.shape.leaf_count(), "pr-amplitude");
    const SurdSum value = flip_cobordism_amplitude(c, opt.parallel);
    OrderedJson doc;
    doc["amplitude"] = surd_to_json(value);
    doc["float"] = value.to_double().value;
    emit(doc);
    return 0;
}

int run_pr_closed(const Options& opt) {
    const ClosedTriangulation m = closed_triangulation_from_json(load_input(opt.input));
    check_size(m.num_edges, "pr-closed (edge count)");
    if (opt.cutoff < 0) {
        throw DomainError("cutoff must be a non-negative twice-spin integer");
    }
    const ClosedAmplitude result = closed_amplitude_truncated(m, TwiceSpin(opt.cutoff));
    OrderedJson doc;
    doc["value"] = surd_to_json(result.value);
    doc["float"] = result.value.to_double().value;
    doc["cutoff_contact"] = result.cutoff_contact;
    emit(doc);
    return 0;
}

int run_genus(const Options& opt) {
    OrderedJson doc;
    doc["genus"] = genus(opt.vertices, opt.edges, opt.faces);
    emit(doc);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact spin-network evaluator for the permutational model"};
    app.require_subcommand(1);
    Options opt;

    auto* sixj_cmd = app.add_subcommand("sixj", "Wigner 6j symbol {a b f; c e d}");
    sixj_cmd->add_option("spins", opt.spins, "six twice-spin integers a b f c e d")
        ->expected(6)
        ->required();

    auto* recouple_cmd = app.add_subcommand("recouple", "recoupling tensor [a b f; c e d]");
    recouple_cmd->add_option("spins", opt.spins, "six twice-spin integers a b f c e d")
        ->expected(6)
        ->required();

    auto* twist_cmd = app.add_subcommand("twist", "exchange phase of a coupled pair");
    twist_cmd->add_option("spins", opt.spins, "three twice-spin integers j1 j2 j")
        ->expected(3)
        ->required();

    auto* amplitude_cmd =
        app.add_subcommand("amplitude", "transition amplitude <lambda'|U_pi|lambda>");
    amplitude_cmd->add_option("--input", opt.input, "JSON file ('-' for stdin)")->required();
    amplitude_cmd->add_flag("--moves", opt.dump_moves, "include the compiled move plan");
    amplitude_cmd->add_option("--parallel", opt.parallel, "worker threads");

    auto* trees_cmd = app.add_subcommand("trees", "coupling-tree combinatorics");
    trees_cmd->add_option("--n", opt.n, "number of leaves")->required();
    trees_cmd->add_flag("--count", opt.count, "count the binary coupling trees");

    auto* yof_cmd = app.add_subcommand("yof", "Young's orthogonal form matrix elements");
    yof_cmd->add_option("--diagram", opt.diagram, "two-row diagram ROW1,ROW2")->required();
    yof_cmd->add_option("--perm", opt.perm, "permutation images 'i1 i2 ... in'")->required();
    yof_cmd->add_option("--element", opt.element, "row and column tableaux, e.g. 1,1,2 1,2,1")
        ->expected(2);
    yof_cmd->add_flag("--full", opt.full, "emit the whole matrix");
    yof_cmd->add_option("--parallel", opt.parallel, "worker threads");

    auto* character_cmd = app.add_subcommand("character", "two-row irrep characters");
    character_cmd->add_option("--diagram", opt.diagram, "two-row diagram ROW1,ROW2")->required();
    character_cmd->add_option("--perm", opt.perm, "permutation images 'i1 i2 ... in'")->required();
    character_cmd->add_flag("--exact", opt.exact, "exact character");
    auto* eps_opt = character_cmd->add_option("--epsilon", opt.epsilon, "additive precision");
    character_cmd->add_option("--delta", opt.delta, "failure probability")->needs(eps_opt);
    character_cmd->add_option("--seed", opt.seed, "sampling seed");
    character_cmd->add_option("--parallel", opt.parallel, "worker threads");

    auto* pr_amp_cmd = app.add_subcommand("pr-amplitude", "flip-cobordism state-sum amplitude");
    pr_amp_cmd->add_option("--input", opt.input, "cobordism JSON file ('-' for stdin)")->required();
    pr_amp_cmd->add_option("--parallel", opt.parallel, "worker threads");

    auto* pr_closed_cmd =
        app.add_subcommand("pr-closed", "truncated closed-manifold state sum");
    pr_closed_cmd->add_option("--input", opt.input, "triangulation JSON file ('-' for stdin)")
        ->required();
    pr_closed_cmd->add_option("--cutoff", opt.cutoff, "largest twice-spin label")->required();

    auto* genus_cmd = app.add_subcommand("genus", "genus from a surface triangulation's counts");
    genus_cmd->add_option("--v", opt.vertices, "vertex count")->required();
    genus_cmd->add_option("--e", opt.edges, "edge count")->required();
    genus_cmd->add_option("--f", opt.faces, "face count")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        OrderedJson doc;
        doc["error"] = "invalid_input";
        doc["detail"] = e.what();
        emit(doc);
        return 2;
    }

    try {
        if (opt.parallel < 1) {
            throw DomainError("--parallel must be at least 1");
        }
        if (sixj_cmd->parsed()) {
            return run_sixj(opt, false);
        }
        if (recouple_cmd->parsed()) {
            return run_sixj(opt, true);
        }
        if (twist_cmd->parsed()) {
            return run_twist(opt);
        }
        if (amplitude_cmd->parsed()) {
            return run_amplitude(opt);
        }
        if (trees_cmd->parsed()) {
            return run_trees(opt);
        }
        if (yof_cmd->parsed()) {
            return run_yof(opt);
        }
        if (character_cmd->parsed()) {
            return run_character(opt, eps_opt->count() > 0);
        }
        if (pr_amp_cmd->parsed()) {
            return run_pr_amplitude(opt);
        }
        if (pr_closed_cmd->parsed()) {
            return run_pr_closed(opt);
        }
        if (genus_cmd->parsed()) {
            return run_genus(opt);
        }
        throw DomainError("no subcommand");
    } catch (const ResourceError& e) {
        OrderedJson doc;
        doc["error"] = "resource_limit";
        doc["detail"] = e.what();
        emit(doc);
        return 3;
    } catch (const DomainError& e) {
        OrderedJson doc;
        doc["error"] = "invalid_input";
        doc["detail"] = e.what();
        emit(doc);
        return 2;
    } catch (const std::exception& e) {
        OrderedJson doc;
        doc["error"] = "internal";
        doc["detail"] = e.what();
        emit(doc);
        return 1;
    }
}
