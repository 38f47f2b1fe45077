#include "speclab/numeric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace speclab {

namespace {

double pairwise_sum_rec(const double* data, std::size_t n) {
    if (n <= 32) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += data[i];
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_rec(data, half) + pairwise_sum_rec(data + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
    return pairwise_sum_rec(values.data(), values.size());
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need at least two samples");
    const auto n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(r));
    }
    return fit;
}

MultiFit fit_columns(const std::vector<std::vector<double>>& columns,
                     std::span<const double> y) {
    if (columns.empty()) throw std::invalid_argument("fit_columns: no regressors");
    const std::size_t rows = y.size();
    const std::size_t cols = columns.size();
    if (rows < cols) throw std::invalid_argument("fit_columns: underdetermined system");

    Eigen::MatrixXd a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    std::vector<double> scale(cols, 1.0);
    for (std::size_t c = 0; c < cols; ++c) {
        if (columns[c].size() != rows)
            throw std::invalid_argument("fit_columns: ragged regressor columns");
        double m = 0.0;
        for (double v : columns[c]) m = std::max(m, std::abs(v));
        scale[c] = (m > 0.0) ? m : 1.0;
        for (std::size_t r = 0; r < rows; ++r)
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                columns[c][r] / scale[c];
    }
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(rows));
    for (std::size_t r = 0; r < rows; ++r) rhs(static_cast<Eigen::Index>(r)) = y[r];

    const Eigen::VectorXd sol = a.colPivHouseholderQr().solve(rhs);

    MultiFit fit;
    fit.coefficients.resize(cols);
    for (std::size_t c = 0; c < cols; ++c)
        fit.coefficients[c] = sol(static_cast<Eigen::Index>(c)) / scale[c];
    const Eigen::VectorXd resid = rhs - a * sol;
    for (Eigen::Index r = 0; r < resid.size(); ++r)
        fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(resid(r)));
    return fit;
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median: empty range");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<double> log_spaced(double lo, double hi, int size) {
    if (!(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("log_spaced: bad range");
    if (size < 2) return {lo};
    std::vector<double> grid(static_cast<std::size_t>(size));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < size; ++i)
        grid[static_cast<std::size_t>(i)] =
            std::exp(llo + (lhi - llo) * static_cast<double>(i) / (size - 1));
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace speclab
