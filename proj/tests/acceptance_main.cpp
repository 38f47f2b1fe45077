// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit code 0 only when all pass.

#include "speclab/convergence.hpp"
#include "speclab/diagonal_model.hpp"
#include "speclab/fourier_field.hpp"
#include "speclab/lattice.hpp"
#include "speclab/numeric.hpp"
#include "speclab/or_function.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace speclab;

namespace {

int failures = 0;

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void report(int id, const std::string& label, bool pass, const std::string& detail) {
    std::printf("%s  criterion %2d  %-38s %s\n", pass ? "PASS" : "FAIL", id, label.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* format, ...) {
    char buffer[256];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buffer, sizeof buffer, format, args);
    va_end(args);
    return buffer;
}

// 1. Master estimate over 1000 random diagonal-model configurations.
void criterion_master_estimate() {
    const Stopwatch timer;
    const double qs[] = {1.2, 2.0, 3.0, std::numeric_limits<double>::infinity()};
    int checked = 0, holds = 0;
    bool saw_empty = false, saw_full = false;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const ModelReplay c =
            random_model_case(64, qs[i % 4], mix_seed(20250809, static_cast<std::uint64_t>(i)));
        const MasterEstimate est = master_estimate_check(c.model, c.symbols, c.g, c.upsilon);
        ++checked;
        if (est.pass) ++holds;
        if (est.rhs > 0.0) worst = std::max(worst, est.lhs / est.rhs);
        saw_empty = saw_empty || c.upsilon.empty();
        saw_full = saw_full || c.upsilon.size() == c.model.size();
    }
    const double elapsed = timer.seconds();
    const bool pass = holds == checked && saw_empty && saw_full && elapsed < 30.0;
    report(1, "master estimate, 1000 random models",
           pass, fmt("%d/%d hold, worst lhs/rhs %.6f, %.2fs", holds, checked, worst, elapsed));
}

// 2. Proof-quantity exactness: eta tail sup and residual monotonicity.
void criterion_proof_quantities() {
    double worst_gap = 0.0;
    for (int i = 0; i < 200; ++i) {
        const ModelReplay c = random_model_case(48, 2.0, mix_seed(77, static_cast<std::uint64_t>(i)));
        const double sup = eta_tail_sup(c.model, c.symbols, c.upsilon);
        const double op = eta_tail_operator_norm(c.model, c.symbols, c.upsilon);
        worst_gap = std::max(worst_gap, std::abs(sup - op));
    }

    int monotone_chains = 0;
    for (int i = 0; i < 200; ++i) {
        std::mt19937_64 rng(mix_seed(78, static_cast<std::uint64_t>(i)));
        const std::size_t m = 2 + static_cast<std::size_t>(uniform01(rng) * 31.0);
        std::vector<Complex> eigenvalues(m), g(m);
        std::vector<double> weights(m, 1.0);
        for (std::size_t j = 0; j < m; ++j) {
            eigenvalues[j] = Complex(uniform01(rng), uniform01(rng));
            g[j] = Complex(uniform01(rng) - 0.5, uniform01(rng) - 0.5);
        }
        const DiagonalModel model(eigenvalues, weights, 2.0);
        std::vector<std::size_t> order(m);
        for (std::size_t j = 0; j < m; ++j) order[j] = j;
        for (std::size_t j = m; j > 1; --j)
            std::swap(order[j - 1],
                      order[std::min<std::size_t>(static_cast<std::size_t>(uniform01(rng) * j), j - 1)]);
        std::vector<IndexSet> chain;
        IndexSet acc;
        for (std::size_t j : order) {
            acc.insert(j);
            chain.push_back(acc);
        }
        const std::vector<double> trace = net_convergence_trace(model, g, chain);
        bool ok = trace.back() == 0.0;
        for (std::size_t k = 1; k < trace.size(); ++k) ok = ok && trace[k] <= trace[k - 1] + 1e-15;
        if (ok) ++monotone_chains;
    }
    const bool pass = worst_gap <= 1e-15 && monotone_chains == 200;
    report(2, "proof quantities exact",
           pass, fmt("eta gap %.1e, %d/200 chains monotone to 0", worst_gap, monotone_chains));
}

// 3. Parseval vs quadrature on 100 random fields.
void criterion_parseval() {
    double worst = 0.0;
    int index = 0;
    for (int i = 0; i < 100; ++i) {
        const int n = 1 + i % 3;
        const double radius = (n == 1) ? 12.0 : (n == 2) ? 6.0 : 3.0;
        std::mt19937_64 rng(mix_seed(300, static_cast<std::uint64_t>(i)));
        std::vector<FourierField::Entry> entries;
        for (const LatticeMode& j : modes_in_ball(n, radius)) {
            if (uniform01(rng) < 0.25) continue;
            entries.push_back({j, Complex(uniform01(rng) - 0.5, uniform01(rng) - 0.5)});
        }
        const FourierField f(n, radius, std::move(entries));
        const double by_coeff = measure_norm(f, NormSpec::l2());
        const double by_quad = measure_norm(f, NormSpec::lp(2.0, 2));
        if (by_coeff > 0.0) worst = std::max(worst, std::abs(by_quad - by_coeff) / by_coeff);
        ++index;
    }
    report(3, "Parseval vs quadrature, 100 fields", worst <= 1e-8,
           fmt("%d fields, worst relative gap %.2e", index, worst));
}

// 4. Lattice counting and the ball-volume law.
void criterion_weyl() {
    const Stopwatch timer;
    const std::size_t count = modes_in_ball(2, 10.0).size();

    // independent brute-force count
    long oracle = 0;
    for (int a = -10; a <= 10; ++a)
        for (int b = -10; b <= 10; ++b)
            if (a * a + b * b <= 100) ++oracle;

    const double ratio2 = weyl_count_ratio(2, 100.0);
    const double ratio3 = weyl_count_ratio(3, 30.0);
    const double elapsed = timer.seconds();
    const bool pass = count == 317 && oracle == 317 && std::abs(ratio2 - 1.0) <= 0.01 &&
                      std::abs(ratio3 - 1.0) <= 0.02 && elapsed < 5.0;
    report(4, "lattice counts and volume law", pass,
           fmt("|B(10)|=%zu, ratio2=%.5f, ratio3=%.5f, %.2fs", count, ratio2, ratio3, elapsed));
}

// 5. Matuszewska index estimation.
void criterion_indices() {
    const auto grid = default_index_lambda_grid(1e6);
    const IndexEstimate power = estimate_indices(ORFunction::power_log(1.5), 1e6, grid);
    const IndexEstimate osc = estimate_indices(ORFunction::oscillating(0.5, 1.0), 1e6, grid);
    const bool pass = std::abs(power.s_lo - 1.5) <= 0.05 && std::abs(power.s_hi - 1.5) <= 0.05 &&
                      osc.s_lo <= 0.6 && osc.s_hi >= 0.9;
    report(5, "Matuszewska indices", pass,
           fmt("power (%.4f, %.4f), oscillating (%.4f, %.4f)", power.s_lo, power.s_hi, osc.s_lo,
               osc.s_hi));
}

// 6. Mean-convergence decay experiment.
void criterion_mean_decay() {
    const Stopwatch timer;
    const ORFunction alpha = ORFunction::power_log(0.75);
    const FourierField f = synthesize_member(alpha, 2, 0.25, 32.0, 2027);
    const TruncationTable table =
        truncation_curve(f, alpha, NormSpec::lp(4.0), 2.0, {4.0, 6.0, 8.0, 11.0, 16.0});
    const DecayVerdict verdict = verify_decay(table);
    const double elapsed = timer.seconds();
    const bool pass = verdict.pass && elapsed < 60.0;
    report(6, "mean-convergence decay bound", pass,
           fmt("slope %.4f, max/median %.3f, %.2fs", verdict.slope, verdict.max_over_median,
               elapsed));
}

// 7. Uniform-convergence decay with a factorized weight.
void criterion_uniform_decay() {
    const ORFunction alpha = ORFunction::power_log(0.5, {1.2}, 1.0);
    const ORFunction beta = ORFunction::power_log(0.5, {0.8}, 1.0);
    const EmbeddingVerdict embedding = classify_embedding(beta, 0, 1, 1e6);

    const FourierField f = synthesize_member(alpha, 1, 0.25, 128.0, 2027);
    const TruncationTable table =
        truncation_curve(f, alpha, NormSpec::cl(0), 2.0, default_lambda_schedule(128.0), beta);
    const DecayVerdict verdict = verify_decay(table);
    const bool pass =
        embedding.verdict == EmbeddingVerdict::Verdict::Convergent && verdict.pass;
    report(7, "uniform-convergence decay bound", pass,
           fmt("beta %s, slope %.4f, max/median %.3f",
               embedding.verdict == EmbeddingVerdict::Verdict::Convergent ? "Convergent"
                                                                          : "not convergent",
               verdict.slope, verdict.max_over_median));
}

// 8. Absolute convergence bound (Cauchy-Schwarz, exact).
void criterion_absolute_sum() {
    struct Case {
        ORFunction alpha;
        int n;
        double radius;
    };
    const std::vector<Case> cases = {
        {ORFunction::power_log(0.6), 1, 64.0},
        {ORFunction::power_log(1.0, {0.7}, 1.0), 2, 24.0},
        {ORFunction::power_log(1.0, {0.65}, 1.0), 2, 32.0},
        {ORFunction::power_log(1.6), 3, 12.0},
        {ORFunction::power_log(1.5, {0.8}, 1.0), 3, 10.0},
    };
    bool pass = true;
    double worst = 0.0;
    int checked = 0;
    for (const Case& c : cases) {
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            const FourierField f = synthesize_member(c.alpha, c.n, 0.3, c.radius, seed);
            const AbsoluteSumCheck check = absolute_sum_check(f, c.alpha, c.n);
            pass = pass && check.pass;
            if (check.rhs > 0.0) worst = std::max(worst, check.lhs / check.rhs);
            ++checked;
        }
    }
    report(8, "absolute convergence bound", pass,
           fmt("%d synthesized fields, worst lhs/rhs %.6f", checked, worst));
}

// 9. Rearrangement stress in L2.
void criterion_rearrangement() {
    const Stopwatch timer;
    const ORFunction alpha = ORFunction::power_log(0.75);
    const FourierField f = synthesize_member(alpha, 2, 0.25, 32.0, 2027);
    const StressReport report_l2 = rearrangement_stress(f, NormSpec::l2(), alpha, 2.0, 50, 404);
    const double elapsed = timer.seconds();
    const bool pass = report_l2.bound_violations == 0 && report_l2.l2_prefix_mismatch <= 1e-12 &&
                      report_l2.final_residual == 0.0;
    report(9, "rearrangement stress, 50 trials", pass,
           fmt("violations %ld, prefix mismatch %.2e, %.2fs", report_l2.bound_violations,
               report_l2.l2_prefix_mismatch, elapsed));
}

// 10. Eigenspace basis independence.
void criterion_rotation() {
    const ORFunction alpha = ORFunction::power_log(0.75);
    const FourierField plane = synthesize_member(alpha, 2, 0.25, 32.0, 2027);
    long level25 = 0;
    for (const auto& e : plane.entries())
        if (norm_squared(e.mode) == 25) ++level25;
    const double disc_plane = eigenspace_rotation_stress(plane, 17);

    const FourierField line = synthesize_member(alpha, 1, 0.25, 64.0, 2028);
    const double disc_line = eigenspace_rotation_stress(line, 18);

    const bool pass = level25 == 12 && disc_plane <= 1e-10 && disc_line <= 1e-10;
    report(10, "eigenspace basis independence", pass,
           fmt("level 25 multiplicity %ld, discrepancies %.2e / %.2e", level25, disc_plane,
               disc_line));
}

}  // namespace

int main() {
    std::printf("speclab acceptance suite\n");
    criterion_master_estimate();
    criterion_proof_quantities();
    criterion_parseval();
    criterion_weyl();
    criterion_indices();
    criterion_mean_decay();
    criterion_uniform_decay();
    criterion_absolute_sum();
    criterion_rearrangement();
    criterion_rotation();
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
