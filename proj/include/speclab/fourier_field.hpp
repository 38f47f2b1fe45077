#ifndef SPECLAB_FOURIER_FIELD_HPP
#define SPECLAB_FOURIER_FIELD_HPP

#include "speclab/lattice.hpp"
#include "speclab/numeric.hpp"
#include "speclab/or_function.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace speclab {

// Finitely supported map from lattice modes to complex coefficients,
// representing f(tau) = sum_j c_j * (2*pi)^(-n/2) * e^(i j.tau) on the
// n-torus. Entries are kept in canonical mode order with no explicit zeros;
// fields are immutable after construction.
class FourierField {
public:
    struct Entry {
        LatticeMode mode{};
        Complex coeff{};
    };

    FourierField(int n, double support_radius, std::vector<Entry> entries);

    static FourierField zero(int n) { return FourierField(n, 0.0, {}); }

    int dim() const { return dim_; }
    double support_radius() const { return support_radius_; }
    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    Complex coeff(const LatticeMode& mode) const;  // 0 when absent

private:
    int dim_ = 1;
    double support_radius_ = 0.0;
    std::vector<Entry> entries_;
};

FourierField operator+(const FourierField& a, const FourierField& b);
FourierField operator-(const FourierField& a, const FourierField& b);
FourierField operator*(double scale, const FourierField& f);

struct NormSpec {
    enum class Kind { L2, Lp, Cl, Hoermander };
    Kind kind = Kind::L2;
    double p = 2.0;  // Lp only; any p >= 1 is measurable
    int ell = 0;     // Cl only
    std::optional<ORFunction> alpha;  // Hoermander only
    int grid_per_axis = 0;  // 0 = derive from oversample and support radius
    int oversample = 8;

    static NormSpec l2() { return {}; }
    static NormSpec lp(double p, int oversample = 8, int grid = 0) {
        return {Kind::Lp, p, 0, std::nullopt, grid, oversample};
    }
    static NormSpec cl(int ell, int oversample = 8, int grid = 0) {
        return {Kind::Cl, 2.0, ell, std::nullopt, grid, oversample};
    }
    static NormSpec hoermander(ORFunction alpha) {
        return {Kind::Hoermander, 2.0, 0, std::move(alpha), 0, 8};
    }
};

// Coefficient-side Hoermander norm (|c_0|^2 + sum_{j!=0} alpha(|j|)^2 |c_j|^2)^(1/2).
double hoermander_norm(const FourierField& f, const ORFunction& alpha);

// Magnitude profile |c_j| = alpha(max(|j|,1))^(-1) * (1+|j|)^(-(n/2+eps))
// over the ball |j| <= support_radius (all phases equal to one).
FourierField synthesize_profile(const ORFunction& alpha, int n, double epsilon,
                                double support_radius);

// Profile modulated by seeded unit-modulus phases; deterministic per seed.
FourierField synthesize_member(const ORFunction& alpha, int n, double epsilon,
                               double support_radius, std::uint64_t seed);

// Modes with |j| <= lambda retained, the rest dropped.
FourierField partial_sum(const FourierField& f, double lambda);

// Modes with |j| > lambda retained (the complement of partial_sum).
FourierField spectral_tail(const FourierField& f, double lambda);

// Coefficient map of the partial derivative: c_j -> prod_k (i*j_k)^rho_k * c_j.
FourierField differentiate(const FourierField& f, const std::array<int, 3>& rho);

// Samples of f on the uniform grid tau_k = 2*pi*k/grid, flattened with the
// first axis slowest. The grid must satisfy grid >= 2*support_radius + 1.
// The default path uses an FFT; the direct path sums modes one by one and is
// kept as an independent reference (both agree to ~1e-10).
std::vector<Complex> evaluate_on_grid(const FourierField& f, int grid_per_axis);
std::vector<Complex> evaluate_on_grid_direct(const FourierField& f, int grid_per_axis);

// Norm measurement per NormSpec. L2 is the exact coefficient norm; Lp and Cl
// are grid quadrature/sup subject to the oversampling precondition;
// Hoermander delegates to hoermander_norm.
double measure_norm(const FourierField& f, const NormSpec& spec);

}  // namespace speclab

#endif  // SPECLAB_FOURIER_FIELD_HPP
