#include "speclab/or_function.hpp"

#include "speclab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace speclab {

namespace {

constexpr double kEuler = 2.718281828459045235360287471353;

// d-times iterated natural log; d = 1 is plain log.
double iterated_log(double x, int d) {
    double v = x;
    for (int i = 0; i < d; ++i) v = std::log(v);
    return v;
}

// exp iterated k times starting from 1: 1, e, e^e, ...
double iterated_exp_of_one(int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v = std::exp(v);
    return v;
}

void require_finite(const std::vector<double>& values, const char* what) {
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite value");
}

}  // namespace

double ThetaSequence::theta(int k) const {
    if (k < 1) throw std::invalid_argument("ThetaSequence: k must be >= 1");
    switch (family) {
        case Family::Geometric:
            return std::pow(param, k - 1);
        case Family::Arithmetic:
            return 1.0 + param * (k - 1);
    }
    return 1.0;
}

ORFunction ORFunction::power_log(double s, std::vector<double> log_exponents,
                                 double log_shift, std::optional<double> crossover) {
    if (!std::isfinite(s)) throw std::invalid_argument("power_log: bad exponent");
    require_finite(log_exponents, "power_log");
    if (log_shift < 0.0) throw std::invalid_argument("power_log: negative log shift");
    if (log_exponents.size() > 3)
        throw std::invalid_argument("power_log: at most three iterated logs supported");
    ORFunction f;
    f.kind_ = Kind::PowerLog;
    f.s_ = s;
    f.log_exponents_ = std::move(log_exponents);
    f.log_shift_ = log_shift;
    if (crossover) {
        if (*crossover < 1.0) throw std::invalid_argument("power_log: crossover < 1");
        f.crossover_ = *crossover;
    } else {
        // No freezing when every log factor is already strictly positive at
        // t = 1 (e.g. log(t+1) families); otherwise freeze at the smallest
        // point where every iterated log exceeds 1.
        const int k = static_cast<int>(f.log_exponents_.size());
        bool positive_at_one = true;
        double v = 1.0 + log_shift;
        for (int d = 0; d < k; ++d) {
            v = std::log(v);
            if (!(v > 0.0)) {
                positive_at_one = false;
                break;
            }
        }
        f.crossover_ = positive_at_one ? 1.0 : std::max(1.0, iterated_exp_of_one(k) - log_shift);
    }
    return f;
}

ORFunction ORFunction::oscillating(double r, double s, ThetaSequence theta,
                                   double beta_const) {
    if (!(r < s)) throw std::invalid_argument("oscillating: requires r < s");
    if (!std::isfinite(beta_const)) throw std::invalid_argument("oscillating: bad beta");
    const bool increasing = (theta.family == ThetaSequence::Family::Geometric)
                                ? theta.param > 1.0
                                : theta.param > 0.0;
    if (!increasing)
        throw std::invalid_argument("oscillating: theta sequence must increase without bound");
    ORFunction f;
    f.kind_ = Kind::OscillatingGamma;
    f.r_ = r;
    f.s_ = s;
    f.theta_ = theta;
    f.beta_const_ = beta_const;
    return f;
}

ORFunction ORFunction::explicit_representation(std::vector<double> knots,
                                               std::vector<double> beta_values,
                                               std::vector<double> gamma_values) {
    if (knots.empty() || knots.front() != 1.0)
        throw std::invalid_argument("explicit_representation: knots must start at 1");
    if (!std::is_sorted(knots.begin(), knots.end()) ||
        std::adjacent_find(knots.begin(), knots.end()) != knots.end())
        throw std::invalid_argument("explicit_representation: knots must be strictly increasing");
    if (beta_values.size() != knots.size() || gamma_values.size() != knots.size())
        throw std::invalid_argument("explicit_representation: one beta/gamma value per knot");
    require_finite(beta_values, "explicit_representation beta");
    require_finite(gamma_values, "explicit_representation gamma");
    ORFunction f;
    f.kind_ = Kind::ExplicitRepresentation;
    f.knots_ = std::move(knots);
    f.beta_values_ = std::move(beta_values);
    f.gamma_values_ = std::move(gamma_values);
    return f;
}

double ORFunction::eval_power_log(double t) const {
    const double tt = std::max(t, crossover_);
    double value = std::pow(tt, s_);
    double inner = tt + log_shift_;
    for (double e : log_exponents_) {
        inner = std::log(inner);
        value *= std::pow(inner, e);
    }
    return value;
}

double ORFunction::gamma_log_integral(double t) const {
    if (kind_ == Kind::OscillatingGamma) {
        double acc = 0.0;
        double piece_start = 1.0;  // P_1
        int piece = 1;
        while (piece_start < t) {
            const double piece_end = piece_start * theta_.theta(piece + 1);
            const double hi = std::min(t, piece_end);
            const double g = (piece % 2 == 1) ? r_ : s_;
            acc += g * std::log(hi / piece_start);
            piece_start = piece_end;
            ++piece;
            if (piece_start > 1e300) break;
        }
        return acc;
    }
    // Piecewise-constant gamma on the knot grid: exact sum of log-ratios.
    double acc = 0.0;
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        const double lo = knots_[i];
        if (lo >= t) break;
        const double hi = (i + 1 < knots_.size()) ? std::min(t, knots_[i + 1]) : t;
        acc += gamma_values_[i] * std::log(hi / lo);
    }
    return acc;
}

double ORFunction::operator()(double t) const {
    if (!(t >= 1.0)) throw std::domain_error("ORFunction: t must be >= 1");
    switch (kind_) {
        case Kind::PowerLog:
            return eval_power_log(t);
        case Kind::OscillatingGamma:
            return std::exp(beta_const_ + gamma_log_integral(t));
        case Kind::ExplicitRepresentation: {
            const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
            const std::size_t piece = static_cast<std::size_t>(it - knots_.begin()) - 1;
            return std::exp(beta_values_[piece] + gamma_log_integral(t));
        }
    }
    return 1.0;
}

double ORFunction::beta_sup() const {
    if (kind_ == Kind::OscillatingGamma) return std::abs(beta_const_);
    if (kind_ != Kind::ExplicitRepresentation)
        throw std::logic_error("beta_sup: no represented beta");
    double m = 0.0;
    for (double b : beta_values_) m = std::max(m, std::abs(b));
    return m;
}

std::pair<double, double> ORFunction::gamma_range() const {
    if (kind_ == Kind::OscillatingGamma) return {r_, s_};
    if (kind_ != Kind::ExplicitRepresentation)
        throw std::logic_error("gamma_range: no represented gamma");
    double lo = gamma_values_.front(), hi = gamma_values_.front();
    for (double g : gamma_values_) {
        lo = std::min(lo, g);
        hi = std::max(hi, g);
    }
    return {lo, hi};
}

ORFunction ORFunction::multiply_power_log(const ORFunction& other) const {
    if (kind_ != Kind::PowerLog || other.kind_ != Kind::PowerLog)
        throw std::invalid_argument("multiply_power_log: both factors must be PowerLog");
    if (log_shift_ != other.log_shift_)
        throw std::invalid_argument("multiply_power_log: mismatched log shifts");
    std::vector<double> exps = log_exponents_;
    if (other.log_exponents_.size() > exps.size()) exps.resize(other.log_exponents_.size(), 0.0);
    for (std::size_t i = 0; i < other.log_exponents_.size(); ++i) exps[i] += other.log_exponents_[i];
    while (!exps.empty() && exps.back() == 0.0) exps.pop_back();
    ORFunction f = power_log(s_ + other.s_, std::move(exps), log_shift_);
    f.crossover_ = std::max(crossover_, other.crossover_);
    return f;
}

std::string ORFunction::describe() const {
    std::ostringstream out;
    switch (kind_) {
        case Kind::PowerLog: {
            out << "t^" << s_;
            int depth = 0;
            for (double e : log_exponents_) {
                ++depth;
                out << " * ";
                for (int i = 0; i < depth; ++i) out << "log ";
                out.seekp(-1, std::ios_base::cur);
                out << "^" << e << "(t";
                if (log_shift_ != 0.0) out << "+" << log_shift_;
                out << ")";
            }
            break;
        }
        case Kind::OscillatingGamma:
            out << "osc(r=" << r_ << ", s=" << s_ << ")";
            break;
        case Kind::ExplicitRepresentation:
            out << "explicit(" << knots_.size() << " knots)";
            break;
    }
    return out.str();
}

std::vector<double> default_index_lambda_grid(double t_max) {
    const double cap = std::sqrt(t_max);
    std::vector<double> grid;
    for (int i = 1; i <= 12; ++i) {
        const double lam = std::pow(2.0, static_cast<double>(i) / 3.0);
        if (lam > cap) break;
        grid.push_back(lam);
    }
    return grid;
}

namespace {

struct RatioExtremes {
    std::vector<double> x;        // log lambda
    std::vector<double> y_max;    // log of max ratio
    std::vector<double> y_min;    // log of min ratio
    std::vector<double> t_at_max; // window base attaining the max
    std::vector<double> t_at_min;
};

RatioExtremes extremal_ratios(const ORFunction& alpha, double t_max,
                              const std::vector<double>& lambda_grid, int t_grid_size) {
    RatioExtremes out;
    // Windows start at the crossover so the frozen head of a PowerLog does
    // not pollute the at-infinity indices.
    const double base = alpha.crossover();
    for (double lam : lambda_grid) {
        const double t_hi = t_max / lam;
        const double t_lo = std::max(1.0, std::min(base, t_hi / 2.0));
        std::vector<double> ts = log_spaced(t_lo, t_hi, t_grid_size);
        double best_max = -std::numeric_limits<double>::infinity();
        double best_min = std::numeric_limits<double>::infinity();
        double arg_max = t_lo, arg_min = t_lo;
        for (double t : ts) {
            const double rho = std::log(alpha(lam * t) / alpha(t));
            if (rho > best_max) {
                best_max = rho;
                arg_max = t;
            }
            if (rho < best_min) {
                best_min = rho;
                arg_min = t;
            }
        }
        out.x.push_back(std::log(lam));
        out.y_max.push_back(best_max);
        out.y_min.push_back(best_min);
        out.t_at_max.push_back(arg_max);
        out.t_at_min.push_back(arg_min);
    }
    return out;
}

// Iterated log of (t + shift), d >= 1 applications.
double shifted_iterated_log(double t, double shift, int d) {
    return iterated_log(t + shift, d);
}

// Slope of the extremal log-ratios against log lambda. For a PowerLog,
// log alpha(lambda t) - log alpha(t) = s*log(lambda)
//   + sum_d s_d * [G_{d+1}(lambda t) - G_{d+1}(t)]
// with G_d the d-times iterated log of (t + shift), so regressing on those
// shapes evaluated at the attained window base recovers s exactly and
// removes the slowly varying contamination. For the other kinds the same
// columns act as a generic curvature absorber; the residual reports the fit
// quality either way.
std::pair<double, double> fit_index_slope(const ORFunction& alpha,
                                          const std::vector<double>& x,
                                          const std::vector<double>& y,
                                          const std::vector<double>& t_attained) {
    const LineFit plain = fit_line(x, y);
    const bool power_log = alpha.kind() == ORFunction::Kind::PowerLog;
    const int depth = power_log ? std::max(alpha.log_depth(), 1) : 1;
    const double shift = power_log ? alpha.log_shift() : 0.0;
    const std::size_t n_cols = 2 + static_cast<std::size_t>(depth);
    if (x.size() < n_cols + 2) return {plain.slope, plain.max_abs_residual};

    // Regressor bases are clamped so that the deepest iterated log stays
    // finite (matters for pure powers and kinds without a crossover).
    const double base_floor = std::max(1.0, iterated_exp_of_one(depth) - shift);
    std::vector<std::vector<double>> cols(n_cols, std::vector<double>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lam = std::exp(x[i]);
        const double t_base = std::max(t_attained[i], base_floor);
        cols[0][i] = 1.0;
        cols[1][i] = x[i];
        for (int d = 1; d <= depth; ++d)
            cols[1 + static_cast<std::size_t>(d)][i] =
                shifted_iterated_log(lam * t_base, shift, d + 1) -
                shifted_iterated_log(t_base, shift, d + 1);
    }
    const MultiFit corrected = fit_columns(cols, y);
    return {corrected.coefficients[1], corrected.max_abs_residual};
}

}  // namespace

IndexEstimate estimate_indices(const ORFunction& alpha, double t_max,
                               const std::vector<double>& lambda_grid, int t_grid_size) {
    if (!(t_max >= 100.0)) throw std::invalid_argument("estimate_indices: t_max must be >= 100");
    if (lambda_grid.empty()) throw std::invalid_argument("estimate_indices: empty lambda grid");
    if (t_grid_size < 2) throw std::invalid_argument("estimate_indices: empty t grid");
    const double cap = std::sqrt(t_max);
    for (double lam : lambda_grid)
        if (!(lam > 1.0) || lam > cap * (1.0 + 1e-12))
            throw std::invalid_argument("estimate_indices: lambda values must lie in (1, sqrt(t_max)]");

    const RatioExtremes data = extremal_ratios(alpha, t_max, lambda_grid, t_grid_size);
    const auto [s_hi, res_hi] = fit_index_slope(alpha, data.x, data.y_max, data.t_at_max);
    const auto [s_lo, res_lo] = fit_index_slope(alpha, data.x, data.y_min, data.t_at_min);

    IndexEstimate est;
    est.s_lo = s_lo;
    est.s_hi = s_hi;
    est.t_range = {1.0, t_max};
    est.lambda_range = {*std::min_element(lambda_grid.begin(), lambda_grid.end()),
                        *std::max_element(lambda_grid.begin(), lambda_grid.end())};
    est.residual = std::max(res_hi, res_lo);
    return est;
}

BoundCheck check_or_bounds(const ORFunction& alpha, double s0, double c0, double s1,
                           double c1, double t_max, int grid_size) {
    if (!(c0 > 0.0) || !(c1 > 0.0)) throw std::invalid_argument("check_or_bounds: c0, c1 must be positive");
    if (!(s0 <= s1)) throw std::invalid_argument("check_or_bounds: requires s0 <= s1");
    if (!(t_max > 1.0) || grid_size < 2) throw std::invalid_argument("check_or_bounds: bad grid");

    const std::vector<double> ts = log_spaced(1.0, t_max, grid_size);
    const std::vector<double> lambdas = log_spaced(1.0, t_max, grid_size);
    constexpr double kSlack = 1e-9;
    for (double t : ts) {
        const double at = alpha(t);
        for (double lam : lambdas) {
            if (lam * t > t_max) break;
            const double ratio = alpha(lam * t) / at;
            const double lower = c0 * std::pow(lam, s0);
            const double upper = c1 * std::pow(lam, s1);
            if (ratio < lower * (1.0 - kSlack) || ratio > upper * (1.0 + kSlack)) {
                BoundCheck out;
                out.ok = false;
                out.violation = BoundViolation{t, lam, ratio, lower, upper};
                return out;
            }
        }
    }
    return {};
}

namespace {

// Window integral of t^(2l+n-1)/alpha^2 over [lo, hi] by composite Simpson
// in log coordinates.
double embedding_window(const ORFunction& alpha, int ell, int n, double lo, double hi) {
    constexpr int kPanels = 64;  // 2*kPanels+1 nodes
    const double u0 = std::log(lo), u1 = std::log(hi);
    const double du = (u1 - u0) / (2 * kPanels);
    const double power = 2.0 * ell + n;
    auto g = [&](double u) {
        const double t = std::exp(u);
        const double a = alpha(t);
        return std::exp(power * u) / (a * a);
    };
    double acc = g(u0) + g(u1);
    for (int i = 1; i < 2 * kPanels; ++i) acc += g(u0 + i * du) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * du / 3.0;
}

// Exact convergence test of int t^a * prod log_i^{b_i} dt at infinity.
bool log_power_integral_converges(double a, const std::vector<double>& b) {
    constexpr double kTol = 1e-12;
    if (a < -1.0 - kTol) return true;
    if (a > -1.0 + kTol) return false;
    for (double bi : b) {
        if (bi < -1.0 - kTol) return true;
        if (bi > -1.0 + kTol) return false;
    }
    return false;  // all exponents exactly -1 diverge
}

}  // namespace

EmbeddingVerdict classify_embedding(const ORFunction& alpha, int ell, int n, double t_max) {
    if (ell < 0 || n < 1) throw std::invalid_argument("classify_embedding: bad l or n");
    if (!(t_max >= 1e3)) throw std::invalid_argument("classify_embedding: t_max must be >= 1e3");

    EmbeddingVerdict out;

    // Partial integral over [1, t_max] accumulated over geometric windows,
    // so it is nondecreasing in t_max by construction.
    std::vector<double> windows;
    double lo = 1.0;
    while (lo < t_max) {
        const double hi = std::min(lo * 2.0, t_max);
        windows.push_back(embedding_window(alpha, ell, n, lo, hi));
        lo = hi;
    }
    out.partial_integral = pairwise_sum(windows);

    if (alpha.kind() == ORFunction::Kind::PowerLog) {
        out.method = EmbeddingVerdict::Method::ClosedForm;
        const double a = 2.0 * ell + n - 1.0 - 2.0 * alpha.power_exponent();
        std::vector<double> b;
        for (double e : alpha.log_exponents()) b.push_back(-2.0 * e);
        out.verdict = log_power_integral_converges(a, b)
                          ? EmbeddingVerdict::Verdict::Convergent
                          : EmbeddingVerdict::Verdict::Divergent;
        return out;
    }

    const IndexEstimate est =
        estimate_indices(alpha, t_max, default_index_lambda_grid(t_max));
    const double critical = ell + 0.5 * n;
    // The margin keeps the rule from deciding the critical boundary on
    // estimation noise; boundary cases fall through to the window test.
    const double margin = 0.01 + est.residual;
    if (est.s_lo > critical + margin) {
        out.method = EmbeddingVerdict::Method::IndexRule;
        out.verdict = EmbeddingVerdict::Verdict::Convergent;
        return out;
    }
    if (est.s_hi < critical - margin) {
        out.method = EmbeddingVerdict::Method::IndexRule;
        out.verdict = EmbeddingVerdict::Verdict::Divergent;
        return out;
    }

    out.method = EmbeddingVerdict::Method::NumericTail;
    const std::size_t tail = std::min<std::size_t>(5, windows.size() - 1);
    if (tail < 2) {
        out.verdict = EmbeddingVerdict::Verdict::Indeterminate;
        return out;
    }
    bool all_below = true, all_at_least_one = true;
    for (std::size_t i = windows.size() - tail; i < windows.size(); ++i) {
        const double ratio = windows[i] / windows[i - 1];
        all_below = all_below && ratio <= 0.95;
        all_at_least_one = all_at_least_one && ratio >= 1.0 - 1e-9;
    }
    if (all_below)
        out.verdict = EmbeddingVerdict::Verdict::Convergent;
    else if (all_at_least_one)
        out.verdict = EmbeddingVerdict::Verdict::Divergent;
    else
        out.verdict = EmbeddingVerdict::Verdict::Indeterminate;
    return out;
}

DecayWeight decay_weight_h(const ORFunction& alpha, int ell, int n, double p, double t_max) {
    if (!(p > 2.0)) throw std::invalid_argument("decay_weight_h: requires p > 2");
    const double exponent = ell + 0.5 * n - n / p;
    DecayWeight w;
    w.exponent = exponent;
    w.h = [alpha, exponent](double t) { return std::pow(t, exponent) / alpha(t); };

    constexpr int kSamples = 4096;
    const std::vector<double> ts = log_spaced(1.0, t_max, kSamples);
    bool nonincreasing = true;
    double prev = w.h(ts.front());
    const double first = prev;
    double last = prev;
    for (std::size_t i = 1; i < ts.size(); ++i) {
        const double cur = w.h(ts[i]);
        if (cur > prev * (1.0 + 1e-12)) {
            nonincreasing = false;
            break;
        }
        prev = cur;
        last = cur;
    }
    w.decreasing_to_zero = nonincreasing && (last < first / 10.0);
    return w;
}

}  // namespace speclab
