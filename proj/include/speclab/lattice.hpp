#ifndef SPECLAB_LATTICE_HPP
#define SPECLAB_LATTICE_HPP

#include <array>
#include <cstdint>
#include <vector>

namespace speclab {

// Lattice mode j in Z^n, zero-padded to three components so the same type
// serves n = 1, 2, 3. Unused components stay 0.
using LatticeMode = std::array<int, 3>;

inline std::int64_t norm_squared(const LatticeMode& j) {
    return static_cast<std::int64_t>(j[0]) * j[0] + static_cast<std::int64_t>(j[1]) * j[1] +
           static_cast<std::int64_t>(j[2]) * j[2];
}

// Canonical deterministic total order: by |j|^2, then lexicographically.
struct ModeOrder {
    bool operator()(const LatticeMode& a, const LatticeMode& b) const {
        const auto na = norm_squared(a), nb = norm_squared(b);
        if (na != nb) return na < nb;
        return a < b;
    }
};

// All modes with |j| <= lambda in canonical order.
std::vector<LatticeMode> modes_in_ball(int n, double lambda);

// |modes_in_ball(n, lambda)| / (V_n * lambda^n) with V_1 = 2, V_2 = pi,
// V_3 = 4*pi/3; tends to 1 as lambda grows.
double weyl_count_ratio(int n, double lambda);

}  // namespace speclab

#endif  // SPECLAB_LATTICE_HPP
