#ifndef SPECLAB_CONVERGENCE_HPP
#define SPECLAB_CONVERGENCE_HPP

#include "speclab/fourier_field.hpp"
#include "speclab/or_function.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace speclab {

// A theorem hypothesis failed to verify, so the experiment refuses to run.
// Distinct from argument errors so callers can map it to the right exit code.
struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TruncationRow {
    double lambda = 0.0;      // spectral cutoff; retained modes have |j| <= lambda^(1/m)
    double err_target = 0.0;  // ||f - S_lambda f|| in the target norm
    double err_l2 = 0.0;      // exact Parseval tail
    double bound = 0.0;       // c_free * ||f||_{H,alpha} * h(lambda^(1/m))
    double ratio = 0.0;       // err_target / (||f||_{H,alpha} * h(lambda^(1/m)))
};

struct TruncationTable {
    std::vector<TruncationRow> rows;
    double m = 1.0;  // operator order
    NormSpec spec;
    std::string alpha_description;
    double field_norm = 0.0;  // ||f||_{H,alpha}
    double c_free = 0.0;      // max ratio over the schedule (reported, not assumed)
};

// Default geometric cutoff schedule lambda_k = 4 * 2^(k/2), capped at
// support_radius / 2 so the spectral tail is never empty.
std::vector<double> default_lambda_schedule(double support_radius);

// Truncation-error experiment against the decay bound. The Lp path requires
// the decay weight's monotone-vanishing flag; the Cl path requires a
// factorization beta = alpha * h with a Convergent embedding integral for
// beta (supply beta via cl_beta) and a nonincreasing h = beta/alpha. A failed
// hypothesis refuses the run with an exception naming the violated condition.
TruncationTable truncation_curve(const FourierField& f, const ORFunction& alpha,
                                 const NormSpec& spec, double m,
                                 const std::vector<double>& lambda_schedule,
                                 const std::optional<ORFunction>& cl_beta = std::nullopt);

struct DecayVerdict {
    bool pass = false;
    double slope = 0.0;           // fitted log-ratio slope against log lambda
    double sup_ratio = 0.0;       // max ratio over positive rows
    double max_over_median = 0.0; // dispersion of the ratios
};

// Boundedness gate for the constant in the decay estimate: the fitted slope
// of log ratio vs log lambda must stay <= 0.05 and the max ratio <= 3x the
// median. Needs at least four rows with positive error.
DecayVerdict verify_decay(const TruncationTable& table);

struct StressReport {
    int trials = 0;
    double worst_prefix_ratio = 0.0;  // max measured/bound over all prefixes
    long bound_violations = 0;        // prefixes with error > bound * (1 + 1e-9)
    double final_residual = 0.0;      // r at the full prefix (0 by construction)
    // L2 targets only: worst relative gap between the permuted-suffix error
    // and the canonical-order complement coefficient norm.
    double l2_prefix_mismatch = 0.0;
};

// Unconditional-convergence stress: random rearrangements of the support,
// with every prefix checked against the master-estimate bound computed
// exactly from coefficients (eta from the decay factorization; the
// operator-norm constant is exact for L2 and calibrated from a ball
// truncation reference otherwise).
StressReport rearrangement_stress(const FourierField& f, const NormSpec& spec,
                                  const ORFunction& alpha, double m, int trials,
                                  std::uint64_t seed,
                                  const std::optional<ORFunction>& cl_beta = std::nullopt);

// Recomputes each degenerate eigenspace's contribution in a randomly rotated
// orthonormal basis of the eigenspace and returns the largest coefficient
// discrepancy against the unrotated sum. Multiplicity-one levels are
// basis-independent up to phase and contribute exactly 0.
double eigenspace_rotation_stress(const FourierField& f, std::uint64_t seed);

struct AbsoluteSumCheck {
    double lhs = 0.0;  // sum |c_j|
    double rhs = 0.0;  // ||f||_{H,alpha} * (1 + sum_{0<|j|<=R} alpha(|j|)^-2)^(1/2)
    bool pass = false;
};

// Cauchy-Schwarz absolute-convergence bound; refuses unless the embedding
// integral for alpha classifies Convergent.
AbsoluteSumCheck absolute_sum_check(const FourierField& f, const ORFunction& alpha,
                                    int n, int ell = 0);

}  // namespace speclab

#endif  // SPECLAB_CONVERGENCE_HPP
