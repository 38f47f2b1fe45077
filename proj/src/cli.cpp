#include "speclab/cli.hpp"

#include "speclab/config.hpp"
#include "speclab/convergence.hpp"
#include "speclab/diagonal_model.hpp"
#include "speclab/report.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace speclab {

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const fs::path& dir, const std::string& name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    return out;
}

void say(const RunOptions& opt, const std::string& line) {
    if (!opt.quiet) std::cout << line << '\n';
}

int run_or_index(const RunOptions& opt, const ExperimentConfig& config, const fs::path& dir) {
    const ORFunction alpha = config.or_function();
    const auto params = config.index_params();
    const std::vector<double> grid = params.lambda_grid.empty()
                                         ? default_index_lambda_grid(params.t_max)
                                         : params.lambda_grid;
    const IndexEstimate estimate =
        estimate_indices(alpha, params.t_max, grid, params.t_grid_size);
    auto out = open_output(dir, "or_index.txt");
    write_index_report(out, estimate);
    say(opt, "or-index: s_lo=" + format_double(estimate.s_lo) +
                 " s_hi=" + format_double(estimate.s_hi) +
                 " residual=" + format_double(estimate.residual));
    return 0;
}

int run_embed_check(const RunOptions& opt, const ExperimentConfig& config, const fs::path& dir) {
    const ORFunction alpha = config.or_function();
    const int n = config.field_params().n;
    const int ell = config.norm_spec(alpha).ell;
    const EmbeddingVerdict verdict = classify_embedding(alpha, ell, n, config.index_params().t_max);
    auto out = open_output(dir, "embed_check.txt");
    write_embedding_report(out, verdict);
    std::ostringstream echo;
    write_embedding_report(echo, verdict);
    say(opt, echo.str());
    return 0;
}

int run_weyl(const RunOptions& opt, const ExperimentConfig& config, const fs::path& dir) {
    const int n = config.field_params().n;
    const auto schedule = config.schedule_params();
    if (schedule.lambdas.empty())
        throw std::invalid_argument("weyl: [schedule] must list lambdas");
    auto out = open_output(dir, "weyl.csv");
    write_weyl_csv(out, n, schedule.lambdas);
    say(opt, "weyl: wrote " + std::to_string(schedule.lambdas.size()) + " rows");
    return 0;
}

FourierField synthesize_from_config(const ExperimentConfig& config, const ORFunction& alpha) {
    const auto fp = config.field_params();
    return synthesize_member(alpha, fp.n, fp.epsilon, fp.radius, fp.seed);
}

int run_synth(const RunOptions& opt, const ExperimentConfig& config, const fs::path& dir) {
    const ORFunction alpha = config.or_function();
    const FourierField field = synthesize_from_config(config, alpha);
    auto out = open_output(dir, "field.csv");
    write_field_csv(out, field);
    say(opt, "synth: " + std::to_string(field.entries().size()) + " modes, radius " +
                 format_double(field.support_radius()));
    return 0;
}

int run_converge(const RunOptions& opt, const ExperimentConfig& config, const fs::path& dir) {
    const ORFunction alpha = config.or_function();
    const FourierField field = synthesize_from_config(config, alpha);
    const NormSpec spec = config.norm_spec(alpha);
    const auto schedule = config.schedule_params();
    const std::vector<double> lambdas = schedule.lambdas.empty()
                                            ? default_lambda_schedule(field.support_radius())
                                            : schedule.lambdas;

    const TruncationTable table =
        truncation_curve(field, alpha, spec, schedule.m, lambdas, config.beta_function());
    {
        auto out = open_output(dir, "table.csv");
        write_table_csv(out, table);
    }
    {
        auto out = open_output(dir, "table.svg");
        emit_svg(out, table, "truncation error vs bound, alpha = " + table.alpha_description);
    }
    {
        auto out = open_output(dir, "field.csv");
        write_field_csv(out, field);
    }

    long positive = 0;
    for (const auto& row : table.rows)
        if (row.err_target > 0.0) ++positive;
    if (positive < 4) {
        say(opt, "converge: " + std::to_string(table.rows.size()) +
                     " rows (too few positive errors for a decay verdict)");
        return 0;
    }
    const DecayVerdict verdict = verify_decay(table);
    say(opt, std::string("converge: ") + (verdict.pass ? "pass" : "FAIL") +
                 " slope=" + format_double(verdict.slope) +
                 " max/median=" + format_double(verdict.max_over_median));
    return verdict.pass ? 0 : 1;
}

int run_stress(const RunOptions& opt, const ExperimentConfig& config, const fs::path& dir) {
    const ORFunction alpha = config.or_function();
    const FourierField field = synthesize_from_config(config, alpha);
    const NormSpec spec = config.norm_spec(alpha);
    const auto schedule = config.schedule_params();
    const auto stress = config.stress_params();

    const StressReport report = rearrangement_stress(field, spec, alpha, schedule.m,
                                                     stress.trials, stress.seed,
                                                     config.beta_function());
    {
        auto out = open_output(dir, "stress.txt");
        write_stress_report(out, report);
    }
    if (report.bound_violations > 0) {
        auto out = open_output(dir, "stress_replay_field.csv");
        write_field_csv(out, field);
    }
    say(opt, "stress: trials=" + std::to_string(report.trials) +
                 " violations=" + std::to_string(report.bound_violations) +
                 " worst_ratio=" + format_double(report.worst_prefix_ratio));
    return report.bound_violations == 0 ? 0 : 1;
}

int run_abstract(const RunOptions& opt, const ExperimentConfig& config, const fs::path& dir) {
    const auto params = config.abstract_params();
    long violations = 0;
    double worst_margin = 0.0;
    for (int i = 0; i < params.configs; ++i) {
        const ModelReplay replay = random_model_case(
            params.dimension, params.q, mix_seed(params.seed, static_cast<std::uint64_t>(i)));
        const MasterEstimate estimate =
            master_estimate_check(replay.model, replay.symbols, replay.g, replay.upsilon);
        if (estimate.rhs > 0.0)
            worst_margin = std::max(worst_margin, estimate.lhs / estimate.rhs);

        // Residual monotonicity along a seeded inclusion chain.
        bool monotone = true;
        {
            std::mt19937_64 rng(mix_seed(params.seed, 0x10000u + static_cast<std::uint64_t>(i)));
            std::vector<std::size_t> order(replay.model.size());
            for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
            for (std::size_t j = order.size(); j > 1; --j)
                std::swap(order[j - 1],
                          order[std::min<std::size_t>(
                              static_cast<std::size_t>(uniform01(rng) * j), j - 1)]);
            std::vector<IndexSet> chain;
            IndexSet acc;
            for (std::size_t j : order) {
                acc.insert(j);
                chain.push_back(acc);
            }
            const std::vector<double> trace = net_convergence_trace(replay.model, replay.g, chain);
            for (std::size_t j = 1; j < trace.size(); ++j)
                if (trace[j] > trace[j - 1] + 1e-15) monotone = false;
            if (!trace.empty() && trace.back() != 0.0) monotone = false;
        }

        if (!estimate.pass || !monotone) {
            ++violations;
            auto out = open_output(dir, "abstract_replay_" + std::to_string(i) + ".txt");
            write_model_replay(out, replay);
        }
    }
    {
        auto out = open_output(dir, "abstract.txt");
        out << "configs=" << params.configs << '\n'
            << "violations=" << violations << '\n'
            << "worst_margin=" << format_double(worst_margin) << '\n';
    }
    say(opt, "abstract: configs=" + std::to_string(params.configs) +
                 " violations=" + std::to_string(violations) +
                 " worst_margin=" + format_double(worst_margin));
    return violations == 0 ? 0 : 1;
}

}  // namespace

int run(const RunOptions& options) {
    try {
        ExperimentConfig config = ExperimentConfig::parse_file(options.config_path);
        if (options.seed_override) config.override_seeds(*options.seed_override);

        const fs::path dir = options.output_dir.empty() ? fs::path(".") : fs::path(options.output_dir);
        fs::create_directories(dir);

        if (options.subcommand == "or-index") return run_or_index(options, config, dir);
        if (options.subcommand == "embed-check") return run_embed_check(options, config, dir);
        if (options.subcommand == "weyl") return run_weyl(options, config, dir);
        if (options.subcommand == "synth") return run_synth(options, config, dir);
        if (options.subcommand == "converge") return run_converge(options, config, dir);
        if (options.subcommand == "stress") return run_stress(options, config, dir);
        if (options.subcommand == "abstract") return run_abstract(options, config, dir);
        std::cerr << "unknown subcommand: " << options.subcommand << '\n';
        return 2;
    } catch (const HypothesisError& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace speclab
