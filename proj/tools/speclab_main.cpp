#include "speclab/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"speclab: eigenfunction-expansion convergence laboratory"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> subcommands = {
        {"or-index", "estimate Matuszewska indices of the [or] weight"},
        {"embed-check", "classify the embedding integral of the [or] weight"},
        {"weyl", "lattice counts against the unit-ball volume law"},
        {"synth", "synthesize a certified member field and write its CSV"},
        {"converge", "truncation-error table, bound, and decay verdict"},
        {"stress", "rearrangement stress of unconditional convergence"},
        {"abstract", "batch verification of the diagonal-model estimate"},
    };

    speclab::RunOptions options;
    options.output_dir = ".";
    std::uint64_t seed = 0;
    for (const auto& [name, description] : subcommands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--config", options.config_path, "experiment config path")->required();
        sub->add_option("--out", options.output_dir, "output directory");
        sub->add_option("--seed", seed, "override every seed in the config");
        sub->add_flag("--quiet", options.quiet, "suppress progress output");
        sub->callback([&options, name = name] { options.subcommand = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors map to exit 2, --help to 0
    }
    for (const auto& [name, description] : subcommands)
        if (app.got_subcommand(name) && app.get_subcommand(name)->count("--seed") > 0)
            options.seed_override = seed;

    return speclab::run(options);
}
