#ifndef SPECLAB_OR_FUNCTION_HPP
#define SPECLAB_OR_FUNCTION_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace speclab {

// Sequence 1 = theta_1 < theta_2 < ... -> inf driving the oscillating
// weight's switch points (the switches sit at cumulative products
// P_k = theta_1 * ... * theta_k).
struct ThetaSequence {
    enum class Family { Geometric, Arithmetic };
    Family family = Family::Geometric;
    double param = 2.0;  // ratio for Geometric, step for Arithmetic

    double theta(int k) const;              // k >= 1, theta(1) == 1
    static ThetaSequence powers_of_two() { return {Family::Geometric, 2.0}; }
    static ThetaSequence geometric(double ratio) { return {Family::Geometric, ratio}; }
    static ThetaSequence arithmetic(double step) { return {Family::Arithmetic, step}; }
};

// A represented O-regularly varying weight alpha: [1,inf) -> (0,inf).
//
// Three constructors cover the families the experiments need:
//  * PowerLog:       t^s * log^{s1}(t+shift) * loglog^{s2}(t+shift) * ...
//                    frozen at its value at the crossover t0 below t0.
//  * OscillatingGamma: exp(beta + int_1^t gamma(tau)/tau dtau) with gamma
//                    switching between r and s on blocks delimited by the
//                    cumulative products of a theta sequence.
//  * ExplicitRepresentation: exp(beta(t) + int_1^t gamma(tau)/tau dtau) with
//                    beta, gamma piecewise constant on a knot grid, so the
//                    integral is an exact sum of gamma * log-ratios.
class ORFunction {
public:
    enum class Kind { PowerLog, OscillatingGamma, ExplicitRepresentation };

    static ORFunction power_log(double s, std::vector<double> log_exponents = {},
                                double log_shift = 0.0,
                                std::optional<double> crossover = std::nullopt);
    static ORFunction oscillating(double r, double s,
                                  ThetaSequence theta = ThetaSequence::powers_of_two(),
                                  double beta_const = 1.0);
    static ORFunction explicit_representation(std::vector<double> knots,
                                              std::vector<double> beta_values,
                                              std::vector<double> gamma_values);

    double operator()(double t) const;  // alpha(t); throws std::domain_error for t < 1

    Kind kind() const { return kind_; }
    // Crossover below which a PowerLog is frozen (1 for the other kinds).
    double crossover() const { return crossover_; }
    // Number of iterated-log factors of a PowerLog (0 otherwise).
    int log_depth() const { return static_cast<int>(log_exponents_.size()); }

    double power_exponent() const { return s_; }
    const std::vector<double>& log_exponents() const { return log_exponents_; }
    double log_shift() const { return log_shift_; }
    double oscillation_low() const { return r_; }
    double oscillation_high() const { return s_; }

    // sup|beta| and the range of gamma over the represented pieces
    // (ExplicitRepresentation only).
    double beta_sup() const;
    std::pair<double, double> gamma_range() const;

    // Pointwise product with matching structure. Defined when both operands
    // are PowerLog with the same shift (exponents add); used to form
    // beta = alpha * h factorizations.
    ORFunction multiply_power_log(const ORFunction& other) const;

    std::string describe() const;

private:
    ORFunction() = default;

    double eval_power_log(double t) const;
    double gamma_log_integral(double t) const;  // int_1^t gamma(tau)/tau dtau

    Kind kind_ = Kind::PowerLog;
    // PowerLog
    double s_ = 0.0;
    std::vector<double> log_exponents_;
    double log_shift_ = 0.0;
    double crossover_ = 1.0;
    // OscillatingGamma (reuses s_ for the high value)
    double r_ = 0.0;
    ThetaSequence theta_;
    double beta_const_ = 1.0;
    // ExplicitRepresentation
    std::vector<double> knots_;
    std::vector<double> beta_values_;
    std::vector<double> gamma_values_;
};

struct IndexEstimate {
    double s_lo = 0.0;  // estimate of the lower Matuszewska index
    double s_hi = 0.0;  // estimate of the upper Matuszewska index
    std::pair<double, double> t_range{1.0, 1.0};
    std::pair<double, double> lambda_range{1.0, 1.0};
    double residual = 0.0;  // max |fit residual| in log coordinates
};

// Default lambda grid for index estimation: 12 points 2^(1/3) .. 16,
// clipped to the sqrt(t_max) precondition.
std::vector<double> default_index_lambda_grid(double t_max);

// Extremal-ratio slope estimation of the Matuszewska indices. For each
// lambda, the extremes of alpha(lambda*t)/alpha(t) are taken over a
// log-spaced t grid; the indices are the fitted slopes of the extremal
// log-ratios against log lambda. When the plain line fit shows curvature,
// the fit is repeated with iterated-log correction regressors that absorb
// slowly varying factors (t^s log^k t data is then recovered exactly).
IndexEstimate estimate_indices(const ORFunction& alpha, double t_max,
                               const std::vector<double>& lambda_grid,
                               int t_grid_size = 257);

struct BoundViolation {
    double t = 0.0;
    double lambda = 0.0;
    double ratio = 0.0;  // alpha(lambda*t)/alpha(t)
    double lower = 0.0;  // c0 * lambda^s0
    double upper = 0.0;  // c1 * lambda^s1
};

struct BoundCheck {
    bool ok = true;
    std::optional<BoundViolation> violation;
};

// Samples c0*lambda^s0 <= alpha(lambda t)/alpha(t) <= c1*lambda^s1 on a
// log-spaced (t, lambda) grid with lambda*t <= t_max and reports the first
// violation in scan order.
BoundCheck check_or_bounds(const ORFunction& alpha, double s0, double c0, double s1,
                           double c1, double t_max, int grid_size = 64);

struct EmbeddingVerdict {
    enum class Verdict { Convergent, Divergent, Indeterminate };
    enum class Method { IndexRule, NumericTail, ClosedForm };
    Verdict verdict = Verdict::Indeterminate;
    double partial_integral = 0.0;  // int_1^{t_max} t^{2l+n-1}/alpha^2(t) dt
    Method method = Method::NumericTail;
};

// Classifies the embedding integral int_1^inf t^{2l+n-1}/alpha^2(t) dt.
// PowerLog inputs use the exact log-scale integral criterion; otherwise the
// index rule decides when the estimated indices clear l + n/2, and the
// remaining cases fall back to a geometric-window ratio test.
EmbeddingVerdict classify_embedding(const ORFunction& alpha, int ell, int n,
                                    double t_max);

struct DecayWeight {
    std::function<double(double)> h;  // h(t) = t^(l + n/2 - n/p) / alpha(t)
    double exponent = 0.0;            // l + n/2 - n/p
    // True when h is nonincreasing on the sample grid and h(t_max) < h(1)/10.
    bool decreasing_to_zero = false;
};

// Decay weight of the mean-convergence estimate. The monotonicity flag is a
// sampled proxy (4096 log-spaced points on [1, t_max]) for "h decreases to 0".
DecayWeight decay_weight_h(const ORFunction& alpha, int ell, int n, double p,
                           double t_max = 1e6);

}  // namespace speclab

#endif  // SPECLAB_OR_FUNCTION_HPP
