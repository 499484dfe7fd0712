#include "treeharm/spectral.hpp"

#include <cmath>
#include <numbers>
#include <mpfr.h>
#include <stdexcept>

namespace treeharm {

namespace {

void check_q(int q) {
    if (q < 2) throw std::invalid_argument("spectral: q must be >= 2");
}

}  // namespace

double spectral_period(int q) {
    check_q(q);
    return std::numbers::pi / std::log(static_cast<double>(q));
}

double plancherel_prefactor(int q) {
    check_q(q);
    const double lq = std::log(static_cast<double>(q));
    return q * lq / (2.0 * std::numbers::pi * (q + 1));
}

std::complex<double> c_function(int q, std::complex<double> z) {
    check_q(q);
    const double lq = std::log(static_cast<double>(q));
    const std::complex<double> i{0.0, 1.0};
    const auto qpow = [lq](std::complex<double> w) { return std::exp(w * lq); };

    const std::complex<double> den = qpow(i * z) - qpow(-i * z);
    if (std::abs(den) < 1e-13)
        throw std::domain_error("c_function: pole at z in tau*Z");
    const std::complex<double> num = qpow(0.5 + i * z) - qpow(-0.5 - i * z);
    return std::sqrt(static_cast<double>(q)) / (q + 1) * num / den;
}

double plancherel_density(int q, double s) {
    const double tau = spectral_period(q);
    if (!(s > 0.0 && s < tau))
        throw std::invalid_argument("plancherel_density: s must lie strictly inside (0, tau)");
    const double ac = std::abs(c_function(q, s));
    return plancherel_prefactor(q) / (ac * ac);
}

namespace {

// Extended-precision node/weight pipeline: Newton on P_n in long double so
// the stored double values are correctly rounded.
void gauss_legendre_ld(int n, std::vector<long double>& nodes, std::vector<long double>& weights) {
    nodes.assign(n, 0.0L);
    weights.assign(n, 0.0L);
    const long double pi = 3.14159265358979323846264338327950288L;
    const int half = (n + 1) / 2;
    for (int k = 0; k < half; ++k) {
        // Newton iteration from the Chebyshev-angle estimate of the k-th root.
        long double x = std::cos(pi * (k + 0.75L) / (n + 0.5L));
        long double dp = 0.0L;
        for (int iter = 0; iter < 100; ++iter) {
            long double p0 = 1.0L, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const long double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0L);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        nodes[k] = -x;
        nodes[n - 1 - k] = x;
        const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
        weights[k] = w;
        weights[n - 1 - k] = w;
    }
    if (n % 2 == 1) nodes[n / 2] = 0.0L;  // exact symmetry at the center
}

// Same displayed formulas as c_function/plancherel_density, in long double.
long double density_ld(int q, long double s) {
    const long double lq = std::log(static_cast<long double>(q));
    const std::complex<long double> i{0.0L, 1.0L};
    const auto qpow = [lq](std::complex<long double> w) { return std::exp(w * lq); };
    const std::complex<long double> z{s, 0.0L};
    const std::complex<long double> c = std::sqrt(static_cast<long double>(q)) /
                                        static_cast<long double>(q + 1) *
                                        (qpow(0.5L + i * z) - qpow(-0.5L - i * z)) /
                                        (qpow(i * z) - qpow(-i * z));
    const long double prefactor =
        q * lq / (2.0L * 3.14159265358979323846264338327950288L * (q + 1));
    return prefactor / std::norm(c);
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
    std::vector<long double> x, w;
    gauss_legendre_ld(n, x, w);
    nodes.assign(x.begin(), x.end());
    weights.assign(w.begin(), w.end());
}

SpectralGrid build_grid(int q, int M) {
    check_q(q);
    if (M < 2) throw std::invalid_argument("build_grid: need M >= 2");

    SpectralGrid grid;
    grid.q = q;
    grid.tau = spectral_period(q);
    grid.M = M;

    std::vector<long double> x, w;
    gauss_legendre_ld(M, x, w);
    grid.nodes.resize(M);
    grid.base_weights.resize(M);
    grid.plancherel_weights.resize(M);
    const long double tau_ld = 3.14159265358979323846264338327950288L / std::log(static_cast<long double>(q));
    const long double half = 0.5L * tau_ld;
    for (int m = 0; m < M; ++m) {
        grid.nodes[m] = static_cast<double>(half * (x[m] + 1.0L));
        grid.base_weights[m] = static_cast<double>(half * w[m]);
        // weight of the stored (double) node, rounded once
        grid.plancherel_weights[m] =
            static_cast<double>(half * w[m] * density_ld(q, static_cast<long double>(grid.nodes[m])));
    }
    return grid;
}

double total_mass(const SpectralGrid& grid) {
    // Neumaier-compensated sum: the mass is compared against 1 at the
    // last-ulp level in convergence checks.
    double sum = 0.0, comp = 0.0;
    for (const double w : grid.plancherel_weights) {
        const double t = sum + w;
        comp += (std::abs(sum) >= std::abs(w)) ? (sum - t) + w : (w - t) + sum;
        sum = t;
    }
    return sum + comp;
}

double quadrature_rule_mass_error(int q, int M) {
    check_q(q);
    if (M < 1) throw std::invalid_argument("quadrature_rule_mass_error: need M >= 1");
    constexpr mpfr_prec_t prec = 512;
    mpfr_t pi, lq, a2, pre, x, p0, p1, p2, dp, dx, w, sb, sin2, dens, total, t1, t2;
    mpfr_inits2(prec, pi, lq, a2, pre, x, p0, p1, p2, dp, dx, w, sb, sin2, dens, total, t1, t2,
                static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_set_si(lq, q, MPFR_RNDN);
    mpfr_log(lq, lq, MPFR_RNDN);
    // (sqrt(q) - 1/sqrt(q))^2 = q - 2 + 1/q
    mpfr_set_si(t1, q, MPFR_RNDN);
    mpfr_si_div(t2, 1, t1, MPFR_RNDN);
    mpfr_add(a2, t1, t2, MPFR_RNDN);
    mpfr_sub_si(a2, a2, 2, MPFR_RNDN);
    // the density in closed real form is pre * sin^2(s ln q) / (a2 + 4 sin^2),
    // pre = 2 (q+1) ln q / pi; and s ln q = pi (x+1)/2 on the mapped nodes
    mpfr_mul_si(pre, lq, 2 * (q + 1), MPFR_RNDN);
    mpfr_div(pre, pre, pi, MPFR_RNDN);

    std::vector<double> xd, wd;
    gauss_legendre(M, xd, wd);
    mpfr_set_zero(total, 1);
    for (int m = 0; m < M; ++m) {
        mpfr_set_d(x, xd[m], MPFR_RNDN);
        // Newton refinement of the double seed; each step doubles the digits
        for (int iter = 0; iter < 5; ++iter) {
            mpfr_set_si(p0, 1, MPFR_RNDN);
            mpfr_set(p1, x, MPFR_RNDN);
            for (int j = 2; j <= M; ++j) {
                mpfr_mul(t1, x, p1, MPFR_RNDN);
                mpfr_mul_si(t1, t1, 2 * j - 1, MPFR_RNDN);
                mpfr_mul_si(t2, p0, j - 1, MPFR_RNDN);
                mpfr_sub(p2, t1, t2, MPFR_RNDN);
                mpfr_div_si(p2, p2, j, MPFR_RNDN);
                mpfr_set(p0, p1, MPFR_RNDN);
                mpfr_set(p1, p2, MPFR_RNDN);
            }
            mpfr_mul(t1, x, p1, MPFR_RNDN);
            mpfr_sub(t1, t1, p0, MPFR_RNDN);
            mpfr_mul_si(t1, t1, M, MPFR_RNDN);
            mpfr_mul(t2, x, x, MPFR_RNDN);
            mpfr_sub_si(t2, t2, 1, MPFR_RNDN);
            mpfr_div(dp, t1, t2, MPFR_RNDN);
            mpfr_div(dx, p1, dp, MPFR_RNDN);
            mpfr_sub(x, x, dx, MPFR_RNDN);
        }
        // w = 2 / ((1 - x^2) dp^2), then fold in the [0, tau] half-length tau/2
        mpfr_mul(t1, x, x, MPFR_RNDN);
        mpfr_si_sub(t1, 1, t1, MPFR_RNDN);
        mpfr_mul(t2, dp, dp, MPFR_RNDN);
        mpfr_mul(t1, t1, t2, MPFR_RNDN);
        mpfr_si_div(w, 2, t1, MPFR_RNDN);
        mpfr_div(t1, pi, lq, MPFR_RNDN);
        mpfr_div_si(t1, t1, 2, MPFR_RNDN);
        mpfr_mul(w, w, t1, MPFR_RNDN);
        // sb = pi (x + 1) / 2
        mpfr_add_si(sb, x, 1, MPFR_RNDN);
        mpfr_mul(sb, sb, pi, MPFR_RNDN);
        mpfr_div_si(sb, sb, 2, MPFR_RNDN);
        mpfr_sin(sin2, sb, MPFR_RNDN);
        mpfr_mul(sin2, sin2, sin2, MPFR_RNDN);
        mpfr_mul_si(t1, sin2, 4, MPFR_RNDN);
        mpfr_add(t1, t1, a2, MPFR_RNDN);
        mpfr_mul(dens, pre, sin2, MPFR_RNDN);
        mpfr_div(dens, dens, t1, MPFR_RNDN);
        mpfr_mul(dens, dens, w, MPFR_RNDN);
        mpfr_add(total, total, dens, MPFR_RNDN);
    }
    mpfr_sub_si(total, total, 1, MPFR_RNDN);
    mpfr_abs(total, total, MPFR_RNDN);
    const double err = mpfr_get_d(total, MPFR_RNDN);
    mpfr_clears(pi, lq, a2, pre, x, p0, p1, p2, dp, dx, w, sb, sin2, dens, total, t1, t2,
                static_cast<mpfr_ptr>(nullptr));
    return err;
}

}  // namespace treeharm
