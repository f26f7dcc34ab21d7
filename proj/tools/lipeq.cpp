#include "lipeq/commands.hpp"
#include "lipeq/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace lipeq;

int emit(CommandResult result) {
    std::cout << result.report.dump(2) << "\n";
    return result.exit_code;
}

int run(int argc, char** argv) {
    CLI::App app{"Lipschitz equivalence toolkit for self-similar sets with complete overlaps"};
    app.require_subcommand(1);

    std::string path_a, path_b, out_path;

    auto* validate = app.add_subcommand("validate", "check the overlap class conditions");
    validate->add_option("spec", path_a, "spec file")->required();

    auto* gamma = app.add_subcommand("gamma", "report overlap levels and counts");
    gamma->add_option("spec", path_a, "spec file")->required();

    int graph_depth = 0;
    auto* graph = app.add_subcommand("graph", "build and verify the graph-directed system");
    graph->add_option("spec", path_a, "spec file")->required();
    graph->add_option("--depth", graph_depth, "cover verification depth (default: spec params)");

    EquivOptions equiv_options;
    std::optional<std::uint64_t> seed;
    auto* equiv = app.add_subcommand("equiv", "decide Lipschitz equivalence");
    equiv->add_option("spec_a", path_a, "first spec file")->required();
    equiv->add_option("spec_b", path_b, "second spec file")->required();
    equiv->add_option("--depth", equiv_options.word_depth, "sampled edge-word length");
    equiv->add_option("--pairs", equiv_options.pairs, "number of sampled word pairs");
    equiv->add_option("--seed", seed, "sampling seed");

    DimOptions dim_options;
    auto* dim = app.add_subcommand("dim", "spectral and box-counting dimension");
    dim->add_option("spec", path_a, "spec file")->required();
    dim->add_option("--depth", dim_options.box_depth, "box-counting depth (default 8)");
    dim->add_option("--tol", dim_options.tol, "power iteration tolerance");
    std::optional<long long> cap;
    dim->add_option("--cap", cap, "cylinder enumeration budget (or env LIPEQ_CAP)");

    auto* render = app.add_subcommand("render", "draw the map images and overlaps as SVG");
    render->add_option("spec_a", path_a, "spec file")->required();
    render->add_option("spec_b", path_b, "optional second spec file");
    render->add_option("-o,--output", out_path, "output .svg path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Keep --help at 0 but fold CLI11's assorted usage codes into 1.
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    if (*validate) return emit(cmd_validate(load_spec_file(path_a)));
    if (*gamma) return emit(cmd_gamma(load_spec_file(path_a)));
    if (*graph) return emit(cmd_graph(load_spec_file(path_a), graph_depth));
    if (*equiv) {
        equiv_options.seed = seed;
        return emit(cmd_equiv(load_spec_file(path_a), load_spec_file(path_b), equiv_options));
    }
    if (*dim) {
        dim_options.cap = cap;
        return emit(cmd_dim(load_spec_file(path_a), dim_options));
    }
    if (*render) {
        SpecFile a = load_spec_file(path_a);
        if (!path_b.empty()) {
            SpecFile b = load_spec_file(path_b);
            return emit(cmd_render(a, &b, out_path));
        }
        return emit(cmd_render(a, nullptr, out_path));
    }
    return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ClassViolationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    } catch (const EquationMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    } catch (const DisjointnessError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
