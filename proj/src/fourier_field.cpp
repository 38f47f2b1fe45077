#include "speclab/fourier_field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace speclab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double mode_norm(const LatticeMode& j) {
    return std::sqrt(static_cast<double>(norm_squared(j)));
}

void check_dim(int n) {
    if (n < 1 || n > 3) throw std::invalid_argument("FourierField: dimension must be 1, 2, or 3");
}

std::size_t grid_points(int grid, int n) {
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(grid);
    return total;
}

void check_aliasing(const FourierField& f, int grid) {
    if (grid < 2 || static_cast<double>(grid) < 2.0 * f.support_radius() + 1.0 - 1e-9)
        throw std::invalid_argument("evaluate_on_grid: grid violates the 2R+1 aliasing bound");
}

int resolve_grid(const FourierField& f, const NormSpec& spec) {
    if (spec.oversample < 2) throw std::invalid_argument("measure_norm: oversample must be >= 2");
    const int diameter = 2 * static_cast<int>(std::ceil(f.support_radius())) + 1;
    if (spec.grid_per_axis == 0) return spec.oversample * diameter;
    const double needed = spec.oversample * (2.0 * f.support_radius() + 1.0);
    if (static_cast<double>(spec.grid_per_axis) < needed - 1e-9)
        throw std::invalid_argument("measure_norm: grid_per_axis below oversample*(2R+1)");
    return spec.grid_per_axis;
}

}  // namespace

FourierField::FourierField(int n, double support_radius, std::vector<Entry> entries)
    : dim_(n), support_radius_(support_radius), entries_(std::move(entries)) {
    check_dim(n);
    if (!(support_radius >= 0.0))
        throw std::invalid_argument("FourierField: negative support radius");
    const double r2 = support_radius * support_radius;
    for (auto& e : entries_) {
        for (int axis = n; axis < 3; ++axis)
            if (e.mode[static_cast<std::size_t>(axis)] != 0)
                throw std::invalid_argument("FourierField: mode uses axes beyond the dimension");
        if (static_cast<double>(norm_squared(e.mode)) > r2 * (1.0 + 1e-12))
            throw std::invalid_argument("FourierField: mode outside the support radius");
    }
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return ModeOrder{}(a.mode, b.mode); });
    for (std::size_t i = 1; i < entries_.size(); ++i)
        if (entries_[i - 1].mode == entries_[i].mode)
            throw std::invalid_argument("FourierField: duplicate mode");
    std::erase_if(entries_, [](const Entry& e) { return e.coeff == Complex(0.0, 0.0); });
}

Complex FourierField::coeff(const LatticeMode& mode) const {
    const auto it = std::lower_bound(
        entries_.begin(), entries_.end(), mode,
        [](const Entry& e, const LatticeMode& m) { return ModeOrder{}(e.mode, m); });
    if (it != entries_.end() && it->mode == mode) return it->coeff;
    return {0.0, 0.0};
}

FourierField operator+(const FourierField& a, const FourierField& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("field addition: dimension mismatch");
    std::vector<FourierField::Entry> merged;
    merged.reserve(a.entries().size() + b.entries().size());
    auto ia = a.entries().begin(), ib = b.entries().begin();
    const ModeOrder less{};
    while (ia != a.entries().end() || ib != b.entries().end()) {
        if (ib == b.entries().end() || (ia != a.entries().end() && less(ia->mode, ib->mode))) {
            merged.push_back(*ia++);
        } else if (ia == a.entries().end() || less(ib->mode, ia->mode)) {
            merged.push_back(*ib++);
        } else {
            merged.push_back({ia->mode, ia->coeff + ib->coeff});
            ++ia;
            ++ib;
        }
    }
    return FourierField(a.dim(), std::max(a.support_radius(), b.support_radius()),
                        std::move(merged));
}

FourierField operator-(const FourierField& a, const FourierField& b) {
    return a + (-1.0 * b);
}

FourierField operator*(double scale, const FourierField& f) {
    std::vector<FourierField::Entry> scaled = f.entries();
    for (auto& e : scaled) e.coeff *= scale;
    return FourierField(f.dim(), f.support_radius(), std::move(scaled));
}

double hoermander_norm(const FourierField& f, const ORFunction& alpha) {
    std::vector<double> terms;
    terms.reserve(f.entries().size());
    for (const auto& e : f.entries()) {
        const double mag = std::abs(e.coeff);
        if (e.mode == LatticeMode{0, 0, 0}) {
            terms.push_back(mag * mag);
        } else {
            const double w = alpha(mode_norm(e.mode));
            terms.push_back(w * w * mag * mag);
        }
    }
    return std::sqrt(pairwise_sum(terms));
}

FourierField synthesize_profile(const ORFunction& alpha, int n, double epsilon,
                                double support_radius) {
    check_dim(n);
    if (!(epsilon > 0.0)) throw std::invalid_argument("synthesize: epsilon must be positive");
    const double cap = (n == 1) ? 128.0 : (n == 2) ? 64.0 : 24.0;
    if (support_radius > cap)
        throw std::invalid_argument("synthesize: support radius above the per-dimension cap");
    std::vector<FourierField::Entry> entries;
    for (const LatticeMode& j : modes_in_ball(n, support_radius)) {
        const double nj = mode_norm(j);
        const double mag =
            std::pow(1.0 + nj, -(0.5 * n + epsilon)) / alpha(std::max(nj, 1.0));
        entries.push_back({j, Complex(mag, 0.0)});
    }
    return FourierField(n, support_radius, std::move(entries));
}

FourierField synthesize_member(const ORFunction& alpha, int n, double epsilon,
                               double support_radius, std::uint64_t seed) {
    if (!(support_radius >= 4.0))
        throw std::invalid_argument("synthesize_member: support radius must be >= 4");
    const FourierField profile = synthesize_profile(alpha, n, epsilon, support_radius);
    std::mt19937_64 rng(seed);
    std::vector<FourierField::Entry> entries = profile.entries();
    for (auto& e : entries) e.coeff *= random_unit_phase(rng);
    return FourierField(n, support_radius, std::move(entries));
}

FourierField partial_sum(const FourierField& f, double lambda) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("partial_sum: lambda must be >= 0");
    const double r2 = lambda * lambda;
    std::vector<FourierField::Entry> kept;
    for (const auto& e : f.entries())
        if (static_cast<double>(norm_squared(e.mode)) <= r2) kept.push_back(e);
    return FourierField(f.dim(), std::min(f.support_radius(), lambda), std::move(kept));
}

FourierField spectral_tail(const FourierField& f, double lambda) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("spectral_tail: lambda must be >= 0");
    const double r2 = lambda * lambda;
    std::vector<FourierField::Entry> kept;
    for (const auto& e : f.entries())
        if (static_cast<double>(norm_squared(e.mode)) > r2) kept.push_back(e);
    return FourierField(f.dim(), f.support_radius(), std::move(kept));
}

FourierField differentiate(const FourierField& f, const std::array<int, 3>& rho) {
    for (int r : rho)
        if (r < 0) throw std::invalid_argument("differentiate: negative multi-index");
    std::vector<FourierField::Entry> out;
    out.reserve(f.entries().size());
    for (const auto& e : f.entries()) {
        Complex factor(1.0, 0.0);
        for (std::size_t axis = 0; axis < 3; ++axis) {
            const Complex ij(0.0, static_cast<double>(e.mode[axis]));
            for (int k = 0; k < rho[axis]; ++k) factor *= ij;
        }
        if (factor != Complex(0.0, 0.0)) out.push_back({e.mode, factor * e.coeff});
    }
    return FourierField(f.dim(), f.support_radius(), std::move(out));
}

std::vector<Complex> evaluate_on_grid_direct(const FourierField& f, int grid_per_axis) {
    check_aliasing(f, grid_per_axis);
    const int n = f.dim();
    const int g = grid_per_axis;
    const std::size_t total = grid_points(g, n);
    std::vector<Complex> samples(total, Complex(0.0, 0.0));

    // Per-axis phase table e^(i j tau_k) for every j in the support range.
    const int jmax = static_cast<int>(std::floor(f.support_radius()));
    std::vector<Complex> phase(static_cast<std::size_t>(2 * jmax + 1) *
                               static_cast<std::size_t>(g));
    for (int j = -jmax; j <= jmax; ++j)
        for (int k = 0; k < g; ++k)
            phase[static_cast<std::size_t>(j + jmax) * g + k] =
                std::polar(1.0, kTwoPi * j * k / g);
    auto ph = [&](int j, int k) -> Complex {
        return phase[static_cast<std::size_t>(j + jmax) * g + k];
    };

    const double scale = std::pow(kTwoPi, -0.5 * n);
    for (const auto& e : f.entries()) {
        const Complex c = scale * e.coeff;
        if (n == 1) {
            for (int k = 0; k < g; ++k) samples[static_cast<std::size_t>(k)] += c * ph(e.mode[0], k);
        } else if (n == 2) {
            for (int k1 = 0; k1 < g; ++k1) {
                const Complex c1 = c * ph(e.mode[0], k1);
                Complex* row = samples.data() + static_cast<std::size_t>(k1) * g;
                for (int k2 = 0; k2 < g; ++k2) row[k2] += c1 * ph(e.mode[1], k2);
            }
        } else {
            for (int k1 = 0; k1 < g; ++k1)
                for (int k2 = 0; k2 < g; ++k2) {
                    const Complex c12 = c * ph(e.mode[0], k1) * ph(e.mode[1], k2);
                    Complex* row =
                        samples.data() + (static_cast<std::size_t>(k1) * g + k2) * g;
                    for (int k3 = 0; k3 < g; ++k3) row[k3] += c12 * ph(e.mode[2], k3);
                }
        }
    }
    return samples;
}

std::vector<Complex> evaluate_on_grid(const FourierField& f, int grid_per_axis) {
    check_aliasing(f, grid_per_axis);
    const int n = f.dim();
    const int g = grid_per_axis;
    const std::size_t total = grid_points(g, n);

    fftw_complex* buf = fftw_alloc_complex(total);
    if (buf == nullptr) throw std::bad_alloc();
    for (std::size_t i = 0; i < total; ++i) buf[i][0] = buf[i][1] = 0.0;

    for (const auto& e : f.entries()) {
        std::size_t index = 0;
        for (int axis = 0; axis < n; ++axis) {
            const int bin = ((e.mode[static_cast<std::size_t>(axis)] % g) + g) % g;
            index = index * static_cast<std::size_t>(g) + static_cast<std::size_t>(bin);
        }
        buf[index][0] += e.coeff.real();
        buf[index][1] += e.coeff.imag();
    }

    int dims[3] = {g, g, g};
    fftw_plan plan = fftw_plan_dft(n, dims, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    const double scale = std::pow(kTwoPi, -0.5 * n);
    std::vector<Complex> samples(total);
    for (std::size_t i = 0; i < total; ++i)
        samples[i] = Complex(scale * buf[i][0], scale * buf[i][1]);
    fftw_free(buf);
    return samples;
}

namespace {

// All multi-indices with |rho| = order over the first n axes.
void enumerate_multi_indices(int n, int order, std::vector<std::array<int, 3>>& out) {
    for (int r1 = order; r1 >= 0; --r1) {
        if (n == 1) {
            if (r1 == order) out.push_back({r1, 0, 0});
            continue;
        }
        for (int r2 = order - r1; r2 >= 0; --r2) {
            if (n == 2) {
                if (r1 + r2 == order) out.push_back({r1, r2, 0});
                continue;
            }
            out.push_back({r1, r2, order - r1 - r2});
        }
    }
}

double grid_sup_abs(const std::vector<Complex>& samples) {
    double sup = 0.0;
    for (const Complex& v : samples) sup = std::max(sup, std::abs(v));
    return sup;
}

}  // namespace

double measure_norm(const FourierField& f, const NormSpec& spec) {
    switch (spec.kind) {
        case NormSpec::Kind::L2: {
            std::vector<double> terms;
            terms.reserve(f.entries().size());
            for (const auto& e : f.entries()) terms.push_back(std::norm(e.coeff));
            return std::sqrt(pairwise_sum(terms));
        }
        case NormSpec::Kind::Hoermander: {
            if (!spec.alpha) throw std::invalid_argument("measure_norm: Hoermander needs alpha");
            return hoermander_norm(f, *spec.alpha);
        }
        case NormSpec::Kind::Lp: {
            if (!(spec.p >= 1.0)) throw std::invalid_argument("measure_norm: Lp needs p >= 1");
            const int g = resolve_grid(f, spec);
            const std::vector<Complex> samples = evaluate_on_grid(f, g);
            std::vector<double> terms(samples.size());
            for (std::size_t i = 0; i < samples.size(); ++i)
                terms[i] = std::pow(std::abs(samples[i]), spec.p);
            const double cell = std::pow(kTwoPi / g, f.dim());
            return std::pow(cell * pairwise_sum(terms), 1.0 / spec.p);
        }
        case NormSpec::Kind::Cl: {
            if (spec.ell < 0) throw std::invalid_argument("measure_norm: Cl needs ell >= 0");
            const int g = resolve_grid(f, spec);
            double total = 0.0;
            for (int order = 0; order <= spec.ell; ++order) {
                std::vector<std::array<int, 3>> rhos;
                enumerate_multi_indices(f.dim(), order, rhos);
                double level = 0.0;
                for (const auto& rho : rhos)
                    level = std::max(level, grid_sup_abs(evaluate_on_grid(differentiate(f, rho), g)));
                total += level;
            }
            return total;
        }
    }
    throw std::logic_error("measure_norm: unknown norm kind");
}

}  // namespace speclab
