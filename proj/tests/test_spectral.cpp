#include <doctest.h>

#include <cmath>
#include <numbers>

#include "treeharm/spectral.hpp"

using namespace treeharm;
using Complex = std::complex<double>;

TEST_CASE("c-function value at the interval midpoint") {
    for (const int q : {2, 3, 5}) {
        const auto c = c_function(q, spectral_period(q) / 2.0);
        CHECK(std::abs(c - Complex{0.5, 0.0}) < 1e-12);
    }
}

TEST_CASE("c-function blows up like 1/s at the left endpoint") {
    for (const int q : {2, 3}) {
        // s |c(s)| -> (q-1) / (2 (q+1) ln q)
        const double limit = (q - 1.0) / (2.0 * (q + 1) * std::log(static_cast<double>(q)));
        const double s = 1e-5;
        CHECK(std::abs(s * std::abs(c_function(q, s)) - limit) < 1e-6 * limit);
        CHECK(std::abs(c_function(q, 1e-5)) > 9.0 * std::abs(c_function(q, 1e-4)));
    }
}

TEST_CASE("conjugate symmetry |c(s)|^2 = c(s) c(-s) on the real line") {
    for (const int q : {2, 3})
        for (double t = 0.05; t < 1.0; t += 0.09) {
            const double s = t * spectral_period(q);
            const Complex prod = c_function(q, s) * c_function(q, -s);
            const double mod2 = std::norm(c_function(q, s));
            CHECK(std::abs(prod - Complex{mod2, 0.0}) < 1e-12 * (1.0 + mod2));
        }
}

TEST_CASE("poles of the c-function are detected") {
    CHECK_THROWS_AS(c_function(2, 0.0), std::domain_error);
    CHECK_THROWS_AS(c_function(2, spectral_period(2)), std::domain_error);
    CHECK_THROWS_AS(c_function(3, -2.0 * spectral_period(3)), std::domain_error);
    CHECK_NOTHROW(c_function(2, Complex{0.0, 0.3}));  // off the real lattice
}

TEST_CASE("density spot values against the high-precision oracle") {
    // frozen 40-digit evaluations of prefactor/|c|^2
    struct Spot {
        int q;
        double frac;  // s = frac * tau
        double value;
    };
    const Spot spots[] = {
        {2, 0.5, 0.2941808002035354578619419},
        {3, 0.5, 0.5245487288490896669962069},
        {5, 0.5, 0.8538333312112935791272183},
        {2, 0.25, 0.2647627201831819120757477},
        {3, 0.25, 0.4196389830792717335969655},
    };
    for (const auto& sp : spots) {
        const double v = plancherel_density(sp.q, sp.frac * spectral_period(sp.q));
        CHECK(std::abs(v - sp.value) < 1e-14 * sp.value);
    }
    // midpoint value in closed form: 2 q ln q / (pi (q+1))
    for (const int q : {2, 3, 5}) {
        const double mid = 2.0 * q * std::log(static_cast<double>(q)) /
                           (std::numbers::pi * (q + 1));
        CHECK(plancherel_density(q, spectral_period(q) / 2.0) == doctest::Approx(mid).epsilon(1e-14));
    }
}

TEST_CASE("density equals its trigonometric closed form") {
    for (const int q : {2, 3, 5}) {
        const double b = std::log(static_cast<double>(q));
        const double A2 = q - 2.0 + 1.0 / q;
        for (double t = 0.01; t < 1.0; t += 0.013) {
            const double s = t * spectral_period(q);
            const double sin2 = std::pow(std::sin(s * b), 2);
            const double closed = 2.0 * b * (q + 1) / std::numbers::pi * sin2 / (A2 + 4.0 * sin2);
            CHECK(plancherel_density(q, s) == doctest::Approx(closed).epsilon(1e-13));
        }
    }
}

TEST_CASE("density is nonnegative and vanishes quadratically at the endpoints") {
    for (const int q : {2, 3}) {
        const double tau = spectral_period(q);
        for (double t = 0.001; t < 1.0; t += 0.007) CHECK(plancherel_density(q, t * tau) >= 0.0);
        CHECK(plancherel_density(q, 2e-4) / plancherel_density(q, 1e-4) == doctest::Approx(4.0).epsilon(1e-2));
        CHECK(plancherel_density(q, tau - 2e-4) / plancherel_density(q, tau - 1e-4) ==
              doctest::Approx(4.0).epsilon(1e-2));
        CHECK_THROWS_AS(plancherel_density(q, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(plancherel_density(q, tau), std::invalid_argument);
        CHECK_THROWS_AS(plancherel_density(q, -0.1), std::invalid_argument);
    }
}

TEST_CASE("gauss-legendre rules reproduce the classical low orders") {
    std::vector<double> x, w;
    gauss_legendre(2, x, w);
    CHECK(x[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(x[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-15));
    gauss_legendre(3, x, w);
    CHECK(x[1] == 0.0);
    CHECK(x[2] == doctest::Approx(std::sqrt(0.6)).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
    CHECK(w[2] == doctest::Approx(5.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("grids: interior ascending nodes, nonnegative weights, unit mass") {
    for (const int q : {2, 3})
        for (const int M : {2, 8, 64, 256}) {
            const auto grid = build_grid(q, M);
            CHECK(grid.M == M);
            double base_total = 0.0;
            for (int m = 0; m < M; ++m) {
                CHECK(grid.nodes[m] > 0.0);
                CHECK(grid.nodes[m] < grid.tau);
                if (m) CHECK(grid.nodes[m] > grid.nodes[m - 1]);
                CHECK(grid.plancherel_weights[m] >= 0.0);
                base_total += grid.base_weights[m];
            }
            CHECK(base_total == doctest::Approx(grid.tau).epsilon(1e-14));
        }
    CHECK(std::abs(total_mass(build_grid(2, 256)) - 1.0) < 1e-10);
    CHECK(std::abs(total_mass(build_grid(3, 256)) - 1.0) < 1e-10);
    CHECK_THROWS_AS(build_grid(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(1, 16), std::invalid_argument);
}

TEST_CASE("mass error decays through the coarse regime") {
    for (const int q : {2, 3}) {
        const double e8 = std::abs(total_mass(build_grid(q, 8)) - 1.0);
        const double e16 = std::abs(total_mass(build_grid(q, 16)) - 1.0);
        CHECK(e8 > 1e-7);  // visibly unconverged
        CHECK(e16 < e8);
    }
}

TEST_CASE("rule-level mass error against the extended-precision oracle") {
    // frozen 90-digit evaluations of |rule - 1|
    CHECK(quadrature_rule_mass_error(2, 128) == doctest::Approx(7.603146367e-54).epsilon(1e-8));
    CHECK(quadrature_rule_mass_error(3, 128) == doctest::Approx(2.790376468e-68).epsilon(1e-8));
    // strict improvement under doubling, measured well above any float floor
    CHECK(quadrature_rule_mass_error(2, 256) < 1e-100);
    CHECK(quadrature_rule_mass_error(2, 64) == doctest::Approx(8.79184e-28).epsilon(1e-5));
}
