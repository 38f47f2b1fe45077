#ifndef SPECLAB_CLI_HPP
#define SPECLAB_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace speclab {

struct RunOptions {
    std::string subcommand;
    std::string config_path;
    std::string output_dir;
    std::optional<std::uint64_t> seed_override;
    bool quiet = false;
};

// Batch front-end. Subcommands: or-index, embed-check, weyl, synth,
// converge, stress, abstract. Exit codes: 0 all checks passed, 1 a
// theorem-shaped check failed (bound violation, non-monotone residual,
// refused hypothesis), 2 usage or config error.
int run(const RunOptions& options);

}  // namespace speclab

#endif  // SPECLAB_CLI_HPP
