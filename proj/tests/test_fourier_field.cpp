#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "speclab/fourier_field.hpp"
#include "speclab/report.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace speclab;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

FourierField random_field(int n, double radius, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<FourierField::Entry> entries;
    for (const LatticeMode& j : modes_in_ball(n, radius)) {
        if (uniform01(rng) < 0.3) continue;  // leave holes in the support
        entries.push_back({j, Complex(uniform01(rng) - 0.5, uniform01(rng) - 0.5)});
    }
    return FourierField(n, radius, std::move(entries));
}

// 4th-order central difference along one axis of grid samples.
std::vector<Complex> axis_derivative_fd(const std::vector<Complex>& samples, int grid, int n,
                                        int axis) {
    std::vector<Complex> out(samples.size());
    const double dt = kTwoPi / grid;
    std::size_t stride = 1;
    for (int a = n - 1; a > axis; --a) stride *= static_cast<std::size_t>(grid);
    const std::size_t block = stride * static_cast<std::size_t>(grid);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const std::size_t base = i - (i % block);
        const std::size_t offset = i % block;
        auto wrap = [&](long step) {
            const long pos = static_cast<long>(offset / stride) + step;
            const long wrapped = ((pos % grid) + grid) % grid;
            return base + static_cast<std::size_t>(wrapped) * stride + offset % stride;
        };
        out[i] = (samples[wrap(-2)] - 8.0 * samples[wrap(-1)] + 8.0 * samples[wrap(1)] -
                  samples[wrap(2)]) /
                 (12.0 * dt);
    }
    return out;
}

}  // namespace

TEST_CASE("canonical form of fields") {
    FourierField f(2, 3.0,
                   {{{1, 0, 0}, Complex(1.0, 0.0)},
                    {{0, 0, 0}, Complex(0.0, 0.0)},  // dropped
                    {{-1, 2, 0}, Complex(0.0, 2.0)}});
    REQUIRE(f.entries().size() == 2);
    CHECK(f.entries()[0].mode == LatticeMode{1, 0, 0});
    CHECK(f.entries()[1].mode == LatticeMode{-1, 2, 0});
    CHECK(f.coeff({0, 0, 0}) == Complex(0.0, 0.0));
    CHECK(f.coeff({-1, 2, 0}) == Complex(0.0, 2.0));

    CHECK_THROWS_AS(FourierField(2, 1.0, {{{2, 0, 0}, Complex(1.0, 0.0)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(FourierField(1, 3.0, {{{0, 1, 0}, Complex(1.0, 0.0)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(FourierField(1, 3.0,
                                 {{{1, 0, 0}, Complex(1.0, 0.0)}, {{1, 0, 0}, Complex(2.0, 0.0)}}),
                    std::invalid_argument);
}

TEST_CASE("synthesized profile magnitudes") {
    const ORFunction one = ORFunction::power_log(0.0);
    const FourierField f = synthesize_profile(one, 1, 0.5, 2.0);
    CHECK(f.coeff({0, 0, 0}).real() == doctest::Approx(1.0));
    CHECK(f.coeff({1, 0, 0}).real() == doctest::Approx(0.5));
    CHECK(f.coeff({-1, 0, 0}).real() == doctest::Approx(0.5));
    CHECK(f.coeff({2, 0, 0}).real() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("hoermander norm") {
    const ORFunction square = ORFunction::power_log(2.0);
    const FourierField spike(1, 0.0, {{{0, 0, 0}, Complex(3.0, 0.0)}});
    CHECK(hoermander_norm(spike, square) == doctest::Approx(3.0));

    const FourierField mode34(2, 5.0, {{{3, 4, 0}, Complex(1.0, 0.0)}});
    CHECK(hoermander_norm(mode34, square) == doctest::Approx(25.0).epsilon(1e-13));

    // hand sum: 1 + 2*(1/2)^2 + 2*(1/3)^2 = 31/18
    const ORFunction one = ORFunction::power_log(0.0);
    const FourierField prof = synthesize_profile(one, 1, 0.5, 2.0);
    CHECK(hoermander_norm(prof, one) == doctest::Approx(std::sqrt(31.0 / 18.0)).epsilon(1e-14));
}

TEST_CASE("synthesized member norm bound") {
    // |u_j| = 1 makes the weighted norm at most (sum (1+|j|)^-(n+2eps))^(1/2)
    // whenever alpha(1) >= 1.
    const std::vector<ORFunction> alphas = {ORFunction::power_log(0.75),
                                            ORFunction::power_log(1.0, {2.0}),
                                            ORFunction::oscillating(0.5, 1.0)};
    for (int n : {1, 2}) {
        const double radius = (n == 1) ? 12.0 : 6.0;
        const double eps = 0.35;
        double bound_sq = 0.0;
        for (const LatticeMode& j : modes_in_ball(n, radius))
            bound_sq += std::pow(1.0 + std::sqrt(static_cast<double>(norm_squared(j))),
                                 -(n + 2.0 * eps));
        for (const auto& alpha : alphas) {
            REQUIRE(alpha(1.0) >= 1.0);
            for (std::uint64_t seed : {1u, 7u, 99u}) {
                const FourierField f = synthesize_member(alpha, n, eps, radius, seed);
                CHECK(hoermander_norm(f, alpha) <= std::sqrt(bound_sq) * (1 + 1e-12));
            }
        }
    }
}

TEST_CASE("synthesized member determinism") {
    const ORFunction alpha = ORFunction::power_log(0.75);
    const FourierField a = synthesize_member(alpha, 2, 0.25, 8.0, 7);
    const FourierField b = synthesize_member(alpha, 2, 0.25, 8.0, 7);
    const FourierField c = synthesize_member(alpha, 2, 0.25, 8.0, 8);
    REQUIRE(a.entries().size() == b.entries().size());
    bool identical = true, differs = false;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        identical = identical && a.entries()[i].mode == b.entries()[i].mode &&
                    a.entries()[i].coeff == b.entries()[i].coeff;
        differs = differs || a.entries()[i].coeff != c.entries()[i].coeff;
    }
    CHECK(identical);
    CHECK(differs);

    CHECK_THROWS_AS(synthesize_member(alpha, 2, 0.25, 2.0, 7), std::invalid_argument);
    CHECK_THROWS_AS(synthesize_member(alpha, 2, -0.1, 8.0, 7), std::invalid_argument);
    CHECK_THROWS_AS(synthesize_member(alpha, 3, 0.25, 40.0, 7), std::invalid_argument);
}

TEST_CASE("partial sums") {
    const FourierField f = random_field(2, 10.0, 5);
    const FourierField all = partial_sum(f, 10.0);
    CHECK(all.entries().size() == f.entries().size());

    const FourierField dc = partial_sum(f, 0.0);
    for (const auto& e : dc.entries()) CHECK(e.mode == LatticeMode{0, 0, 0});

    const FourierField five = partial_sum(f, 5.0);
    long oracle = 0;
    for (const auto& e : f.entries())
        if (norm_squared(e.mode) <= 25) ++oracle;
    CHECK(static_cast<long>(five.entries().size()) == oracle);
    // complement plus retained reassemble f
    const FourierField tail = spectral_tail(f, 5.0);
    CHECK(tail.entries().size() + five.entries().size() == f.entries().size());

    // full ball support at radius 5 has 81 modes
    const ORFunction one = ORFunction::power_log(0.0);
    const FourierField dense = synthesize_profile(one, 2, 0.5, 10.0);
    CHECK(partial_sum(dense, 5.0).entries().size() == 81);
}

TEST_CASE("differentiation multipliers") {
    const FourierField f(1, 3.0, {{{3, 0, 0}, Complex(1.0, 0.0)}});
    const FourierField df = differentiate(f, {1, 0, 0});
    CHECK(df.coeff({3, 0, 0}) == Complex(0.0, 3.0));

    const FourierField g(2, 3.0, {{{2, -1, 0}, Complex(1.0, 0.0)}});
    const FourierField dg = differentiate(g, {1, 2, 0});
    // (2i) * (-i)^2 = -2i
    CHECK(dg.coeff({2, -1, 0}).real() == doctest::Approx(0.0));
    CHECK(dg.coeff({2, -1, 0}).imag() == doctest::Approx(-2.0));

    const FourierField same = differentiate(g, {0, 0, 0});
    CHECK(same.coeff({2, -1, 0}) == Complex(1.0, 0.0));

    CHECK_THROWS_AS(differentiate(g, {-1, 0, 0}), std::invalid_argument);
}

TEST_CASE("differentiation against finite differences") {
    const FourierField f(2, 3.0,
                         {{{2, -1, 0}, Complex(0.7, 0.3)}, {{1, 2, 0}, Complex(-0.2, 0.5)}});
    const int grid = 256;
    const auto samples = evaluate_on_grid(f, grid);

    // d/dtau_1 then twice d/dtau_2, all via 4th-order stencils
    auto fd = axis_derivative_fd(samples, grid, 2, 0);
    fd = axis_derivative_fd(fd, grid, 2, 1);
    fd = axis_derivative_fd(fd, grid, 2, 1);

    const auto exact = evaluate_on_grid(differentiate(f, {1, 2, 0}), grid);
    double max_err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        max_err = std::max(max_err, std::abs(exact[i] - fd[i]));
        scale = std::max(scale, std::abs(exact[i]));
    }
    CHECK(max_err / scale < 1e-6);
}

TEST_CASE("differentiate commutes with partial_sum") {
    const FourierField f = random_field(2, 8.0, 17);
    const std::array<int, 3> rho = {1, 1, 0};
    const FourierField a = differentiate(partial_sum(f, 5.0), rho);
    const FourierField b = partial_sum(differentiate(f, rho), 5.0);
    REQUIRE(a.entries().size() == b.entries().size());
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        CHECK(a.entries()[i].mode == b.entries()[i].mode);
        CHECK(a.entries()[i].coeff == b.entries()[i].coeff);
    }
}

TEST_CASE("grid evaluation basics") {
    // constant field: c_0 = (2*pi)^(n/2) gives f == 1
    for (int n : {1, 2}) {
        const FourierField f(n, 0.0,
                             {{{0, 0, 0}, Complex(std::pow(kTwoPi, 0.5 * n), 0.0)}});
        for (const Complex& v : evaluate_on_grid(f, 8))
            CHECK(std::abs(v - Complex(1.0, 0.0)) < 1e-12);
    }

    const FourierField wave(1, 1.0, {{{1, 0, 0}, Complex(std::sqrt(kTwoPi), 0.0)}});
    const int grid = 9;
    const auto samples = evaluate_on_grid(wave, grid);
    for (int k = 0; k < grid; ++k) {
        const double tau = kTwoPi * k / grid;
        CHECK(std::abs(samples[static_cast<std::size_t>(k)] -
                       Complex(std::cos(tau), std::sin(tau))) < 1e-12);
    }

    CHECK_THROWS_AS(evaluate_on_grid(random_field(1, 8.0, 3), 9), std::invalid_argument);
}

TEST_CASE("direct and transform paths agree") {
    for (const auto& [n, radius] : std::vector<std::pair<int, double>>{{1, 8.0}, {2, 5.0}, {3, 3.0}}) {
        const FourierField f = random_field(n, radius, 23 + static_cast<std::uint64_t>(n));
        const int grid = static_cast<int>(4 * radius);
        const auto direct = evaluate_on_grid_direct(f, grid);
        const auto fast = evaluate_on_grid(f, grid);
        REQUIRE(direct.size() == fast.size());
        double max_diff = 0.0;
        for (std::size_t i = 0; i < direct.size(); ++i)
            max_diff = std::max(max_diff, std::abs(direct[i] - fast[i]));
        CHECK(max_diff < 1e-10);
    }
}

TEST_CASE("norm measurements") {
    const FourierField spike(2, 2.0, {{{1, 1, 0}, Complex(3.0, 4.0)}});
    CHECK(measure_norm(spike, NormSpec::l2()) == doctest::Approx(5.0));

    // f == 1: every Lp norm is (2*pi)^(n/p)
    const FourierField flat(1, 0.0, {{{0, 0, 0}, Complex(std::sqrt(kTwoPi), 0.0)}});
    CHECK(measure_norm(flat, NormSpec::lp(4.0)) ==
          doctest::Approx(std::pow(kTwoPi, 0.25)).epsilon(1e-12));
    CHECK(measure_norm(flat, NormSpec::lp(1.0)) == doctest::Approx(kTwoPi).epsilon(1e-12));

    // f = cos tau: ||f||_4 = (3*pi/4)^(1/4)
    const double half = std::sqrt(kTwoPi) / 2.0;
    const FourierField cosine(1, 1.0,
                              {{{1, 0, 0}, Complex(half, 0.0)}, {{-1, 0, 0}, Complex(half, 0.0)}});
    CHECK(measure_norm(cosine, NormSpec::lp(4.0)) ==
          doctest::Approx(std::pow(3.0 * 3.141592653589793 / 4.0, 0.25)).epsilon(1e-12));

    // C0 of cos is 1; C1 adds the sup of |sin| = 1
    CHECK(measure_norm(cosine, NormSpec::cl(0)) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(measure_norm(cosine, NormSpec::cl(1)) == doctest::Approx(2.0).epsilon(1e-6));

    const ORFunction alpha = ORFunction::power_log(1.0);
    CHECK(measure_norm(spike, NormSpec::hoermander(alpha)) ==
          doctest::Approx(hoermander_norm(spike, alpha)));

    NormSpec tight = NormSpec::lp(4.0);
    tight.grid_per_axis = 4;  // below oversample*(2R+1)
    CHECK_THROWS_AS(measure_norm(spike, tight), std::invalid_argument);
}

TEST_CASE("parseval identity on 100 random fields") {
    for (int n : {1, 2, 3}) {
        for (std::uint64_t seed = 0; seed < 34; ++seed) {
            const double radius = (n == 1) ? 10.0 : (n == 2) ? 6.0 : 3.0;
            const FourierField f = random_field(n, radius, 100 * static_cast<std::uint64_t>(n) + seed);
            double sum_sq = 0.0;
            for (const auto& e : f.entries()) sum_sq += std::norm(e.coeff);
            const double parseval = measure_norm(f, NormSpec::l2());
            CHECK(parseval * parseval == doctest::Approx(sum_sq).epsilon(1e-12));
        }
    }
}

TEST_CASE("quadrature agrees with the coefficient norm") {
    for (int n : {1, 2, 3}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const double radius = (n == 1) ? 10.0 : (n == 2) ? 6.0 : 3.0;
            const FourierField f = random_field(n, radius, 100 * static_cast<std::uint64_t>(n) + seed);
            const double parseval = measure_norm(f, NormSpec::l2());
            const double quad = measure_norm(f, NormSpec::lp(2.0, 2));
            CHECK(std::abs(quad - parseval) <= 1e-8 * parseval);
        }
    }
}

TEST_CASE("triangle inequality for every norm kind") {
    const ORFunction alpha = ORFunction::power_log(0.75);
    const std::vector<NormSpec> specs = {NormSpec::l2(), NormSpec::lp(3.0), NormSpec::lp(4.0),
                                         NormSpec::cl(1), NormSpec::hoermander(alpha)};
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const FourierField f = random_field(2, 6.0, 500 + seed);
        const FourierField g = random_field(2, 6.0, 600 + seed);
        const FourierField sum = f + g;
        for (const NormSpec& spec : specs) {
            const double lhs = measure_norm(sum, spec);
            const double rhs = measure_norm(f, spec) + measure_norm(g, spec);
            CHECK(lhs <= rhs * (1 + 1e-10));
        }
    }
}

TEST_CASE("hoermander norm monotone in alpha") {
    const ORFunction lo = ORFunction::power_log(0.5);
    const ORFunction hi = ORFunction::power_log(0.75);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const FourierField f = random_field(2, 8.0, 700 + seed);
        CHECK(hoermander_norm(f, lo) <= hoermander_norm(f, hi) * (1 + 1e-12));
    }
}

TEST_CASE("field csv round-trips bit-exactly") {
    for (int n : {1, 2, 3}) {
        const double radius = (n == 3) ? 3.0 : 6.0;
        const FourierField f = random_field(n, radius, 40 + static_cast<std::uint64_t>(n));
        std::stringstream buffer;
        write_field_csv(buffer, f);
        const FourierField g = read_field_csv(buffer, f.support_radius());
        REQUIRE(g.dim() == f.dim());
        REQUIRE(g.entries().size() == f.entries().size());
        for (std::size_t i = 0; i < f.entries().size(); ++i) {
            CHECK(g.entries()[i].mode == f.entries()[i].mode);
            CHECK(g.entries()[i].coeff.real() == f.entries()[i].coeff.real());
            CHECK(g.entries()[i].coeff.imag() == f.entries()[i].coeff.imag());
        }
        // writing the reread field reproduces the bytes
        std::stringstream second;
        write_field_csv(second, g);
        CHECK(second.str() == buffer.str());
    }
}
