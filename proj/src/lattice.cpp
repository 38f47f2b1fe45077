#include "speclab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace speclab {

std::vector<LatticeMode> modes_in_ball(int n, double lambda) {
    if (n < 1 || n > 3) throw std::invalid_argument("modes_in_ball: n must be 1, 2, or 3");
    if (!(lambda >= 0.0)) throw std::invalid_argument("modes_in_ball: lambda must be >= 0");

    const int jmax = static_cast<int>(std::floor(lambda));
    const double r2 = lambda * lambda;
    std::vector<LatticeMode> modes;
    const int lo2 = (n >= 2) ? -jmax : 0, hi2 = (n >= 2) ? jmax : 0;
    const int lo3 = (n >= 3) ? -jmax : 0, hi3 = (n >= 3) ? jmax : 0;
    for (int j1 = -jmax; j1 <= jmax; ++j1)
        for (int j2 = lo2; j2 <= hi2; ++j2)
            for (int j3 = lo3; j3 <= hi3; ++j3) {
                const LatticeMode j{j1, j2, j3};
                if (static_cast<double>(norm_squared(j)) <= r2) modes.push_back(j);
            }
    std::sort(modes.begin(), modes.end(), ModeOrder{});
    return modes;
}

double weyl_count_ratio(int n, double lambda) {
    if (!(lambda >= 1.0)) throw std::invalid_argument("weyl_count_ratio: lambda must be >= 1");
    constexpr double kPi = 3.141592653589793238462643383280;
    const double volume = (n == 1) ? 2.0 : (n == 2) ? kPi : 4.0 * kPi / 3.0;
    const double count = static_cast<double>(modes_in_ball(n, lambda).size());
    return count / (volume * std::pow(lambda, n));
}

}  // namespace speclab
