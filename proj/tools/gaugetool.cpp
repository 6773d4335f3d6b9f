#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "gk/commands.hpp"
#include "gk/exprparse.hpp"

#ifndef GK_EXAMPLES_DIR
#define GK_EXAMPLES_DIR "examples"
#endif

namespace {

int emit(const gk::CommandResult& r, const std::string& json_path) {
    std::cout << r.text;
    if (!json_path.empty()) {
        std::string body = r.report.dump(2) + "\n";
        if (json_path == "-") {
            std::cout << body;
        } else {
            std::ofstream out(json_path);
            if (!out) {
                std::cerr << "error: cannot write " << json_path << "\n";
                return gk::kInputError;
            }
            out << body;
        }
    }
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Value functions, gauges and involutions on algebras over valued fields"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string json_path;
    std::uint64_t budget = 0, seed = 0;
    bool strict = false;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--budget", budget, "anisotropy enumeration cap")->check(CLI::PositiveNumber);
        sub->add_option("--json", json_path, "write the machine-readable report to this path (- for stdout)");
        sub->add_option("--seed", seed, "seed for randomized sampling");
        sub->add_flag("--strict", strict, "treat undecided verdicts as failures");
    };

    const std::vector<std::pair<std::string, std::string>> single = {
        {"check-gauge", "norm, surmultiplicativity, graded semisimplicity, tameness"},
        {"check-invariant", "invariance of the value function under the involution"},
        {"check-special", "special gauge test with witness, and existence probe"},
        {"springer", "residue and graded anisotropy of the involution"},
        {"graded-dump", "table of the associated graded algebra and its involution"},
        {"compose", "gauge test across the coarsening of a rank-2 valuation"},
        {"extend", "separability idempotent and scalar extension checks"},
        {"isotropy", "isotropy of sigma (x) g on D (x) L"},
        {"descent", "descent of a norm along a quadratic extension"},
    };
    std::string instance_path;
    for (const auto& [name, help] : single) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("instance", instance_path, "instance file")->required();
        add_common(sub);
    }
    std::vector<std::string> suite_args;
    auto* suite = app.add_subcommand("suite", "run every bundled instance and compare with its expectations");
    suite->add_option("paths", suite_args, "instance files or directories (default: bundled examples)");
    add_common(suite);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : gk::kInputError;
    }

    gk::RunOptions ro;
    ro.strict = strict;
    for (auto* sub : app.get_subcommands()) {
        if (sub->count("--budget")) ro.budget = budget;
        if (sub->count("--seed")) ro.seed = seed;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        if (cmd == "suite") {
            std::vector<std::string> files;
            if (suite_args.empty()) suite_args.push_back(GK_EXAMPLES_DIR);
            for (const auto& p : suite_args) {
                if (std::filesystem::is_directory(p)) {
                    auto fs = gk::suite_files(p);
                    files.insert(files.end(), fs.begin(), fs.end());
                } else {
                    files.push_back(p);
                }
            }
            return emit(gk::run_suite(files, ro), json_path);
        }
        gk::Instance inst = gk::load_instance(instance_path);
        return emit(gk::run_command(cmd, inst, ro), json_path);
    } catch (const gk::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const gk::InstanceError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const gk::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return gk::kInputError;
}
