#ifndef SPECLAB_NUMERIC_HPP
#define SPECLAB_NUMERIC_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace speclab {

using Complex = std::complex<double>;

// Deterministic fixed-order pairwise summation. Error grows like
// O(log n * eps) instead of O(n * eps) for plain accumulation, which keeps
// coefficient-space norms within the 1e-12 tolerances used by the checks.
double pairwise_sum(std::span<const double> values);

// Compensated (Kahan) accumulator for incremental tail/prefix sums.
class KahanSum {
public:
    void add(double x) {
        const double y = x - compensation_;
        const double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double max_abs_residual = 0.0;
};

// Least-squares line y = a + b*x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Least-squares fit of y against the given regressor columns (first column is
// expected to be all-ones if an intercept is wanted). Returns coefficients and
// the max absolute residual. Columns are scaled to unit max before solving.
struct MultiFit {
    std::vector<double> coefficients;
    double max_abs_residual = 0.0;
};
MultiFit fit_columns(const std::vector<std::vector<double>>& columns,
                     std::span<const double> y);

// Median of an unsorted range (average of the two middle values for even n).
double median(std::vector<double> values);

// Log-spaced grid on [lo, hi] with `size` points, endpoints included exactly.
std::vector<double> log_spaced(double lo, double hi, int size);

// 64-bit SplitMix step, used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Deterministic uniform double in [0, 1) from raw engine output
// (53 mantissa bits, no distribution object involved).
template <class Engine>
double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Unit-modulus complex number with a uniformly random phase.
template <class Engine>
Complex random_unit_phase(Engine& eng) {
    const double angle = 6.283185307179586476925286766559 * uniform01(eng);
    return Complex(std::cos(angle), std::sin(angle));
}

}  // namespace speclab

#endif  // SPECLAB_NUMERIC_HPP
