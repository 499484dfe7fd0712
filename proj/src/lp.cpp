#include "treeharm/lp.hpp"

#include <algorithm>
#include <cmath>

namespace treeharm {

namespace {

constexpr double kRatioSlack = 1e-12;  // relative slack absorbing float roundoff in <= checks

std::vector<double> magnitudes(const TreeFunction& f) {
    std::vector<double> m(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i) m[i] = std::abs(f.values[i]);
    return m;
}

void check_exponent(double p, const char* what) {
    if (!(p >= 1.0)) throw std::invalid_argument(std::string(what) + ": exponent must be >= 1");
}

}  // namespace

DistributionProfile::DistributionProfile(const TreeFunction& f) : mags_(magnitudes(f)) {
    std::sort(mags_.begin(), mags_.end());
}

double DistributionProfile::count_above(double lambda) const {
    const auto it = std::upper_bound(mags_.begin(), mags_.end(), lambda);
    return static_cast<double>(mags_.end() - it);
}

double lp_norm(const TreeFunction& f, double p) {
    if (std::isinf(p)) return max_abs(f);
    check_exponent(p, "lp_norm");
    double acc = 0.0;
    for (const auto& v : f.values) {
        const double a = std::abs(v);
        if (a > 0.0) acc += std::pow(a, p);
    }
    return std::pow(acc, 1.0 / p);
}

double layercake_residual(const TreeFunction& f, double p) {
    check_exponent(p, "layercake_residual");
    const DistributionProfile prof(f);
    const auto& mags = prof.sorted_magnitudes();

    double direct = 0.0;
    for (const double a : mags)
        if (a > 0.0) direct += std::pow(a, p);

    // Breakpoints of m are the distinct magnitudes; on [a_i, a_{i+1}) the
    // count is constant, so each interval contributes m_i (a_{i+1}^p - a_i^p).
    double layer = 0.0;
    double prev = 0.0;
    std::size_t i = 0;
    while (i < mags.size()) {
        std::size_t j = i;
        while (j < mags.size() && mags[j] == mags[i]) ++j;
        const double a = mags[i];
        if (a > prev) {
            const double count = static_cast<double>(mags.size() - i);
            layer += count * (std::pow(a, p) - std::pow(prev, p));
            prev = a;
        }
        i = j;
    }
    return std::abs(direct - layer);
}

double weak_norm(const TreeFunction& f, double q_exp) {
    check_exponent(q_exp, "weak_norm");
    auto mags = magnitudes(f);
    std::sort(mags.begin(), mags.end(), std::greater<>());
    double best = 0.0;
    for (std::size_t k = 0; k < mags.size(); ++k) {
        if (mags[k] == 0.0) break;
        best = std::max(best, mags[k] * std::pow(static_cast<double>(k + 1), 1.0 / q_exp));
    }
    return best;
}

TreeFunction apply_kernel(const KernelMatrix& K, const TreeFunction& f) {
    if (K.cols() != static_cast<Eigen::Index>(f.values.size()))
        throw std::invalid_argument("apply_kernel: dimension mismatch");
    TreeFunction out = f;
    Eigen::Map<const Eigen::VectorXcd> fv(f.values.data(), K.cols());
    Eigen::Map<Eigen::VectorXcd> ov(out.values.data(), K.rows());
    ov = K * fv;
    return out;
}

double weak_constant(const KernelMatrix& K, double p, double q_exp,
                     const std::vector<TreeFunction>& family) {
    check_exponent(p, "weak_constant");
    check_exponent(q_exp, "weak_constant");
    if (family.empty()) throw std::invalid_argument("weak_constant: family must be nonempty");
    double best = 0.0;
    for (const auto& f : family) {
        const double fp = lp_norm(f, p);
        if (fp == 0.0) throw std::invalid_argument("weak_constant: family contains the zero function");
        best = std::max(best, weak_norm(apply_kernel(K, f), q_exp) / fp);
    }
    return best;
}

WeakTypeReport strong_type_check(const KernelMatrix& K, double p, double q_exp,
                                 const std::vector<TreeFunction>& family) {
    if (!(p > q_exp)) throw std::invalid_argument("strong_type_check: requires p > q_exp");
    check_exponent(q_exp, "strong_type_check");

    WeakTypeReport rep;
    rep.p = p;
    rep.q_exp = q_exp;
    rep.weak_const = weak_constant(K, p, q_exp, family);
    rep.bound = std::pow(2.0, (p - q_exp) / p) * rep.weak_const * std::pow(p / (p - q_exp), 1.0 / p);
    for (std::size_t i = 0; i < family.size(); ++i) {
        const double ratio = lp_norm(apply_kernel(K, family[i]), p) / lp_norm(family[i], p);
        if (ratio > rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_index = static_cast<int>(i);
        }
    }
    rep.pass = rep.worst_ratio <= rep.bound * (1.0 + kRatioSlack);
    return rep;
}

namespace {

// sum_{j >= N} j^{-s} for s > 1 by Euler-Maclaurin; the neglected term is
// below s^6 N^{-s-5}/30240, far under 1e-12 at N = 2000.
double zeta_tail(double s, double N) {
    const double f = std::pow(N, -s);
    return N * f / (s - 1.0) + 0.5 * f + s * f / (12.0 * N) -
           s * (s + 1.0) * (s + 2.0) * f / (720.0 * N * N * N);
}

}  // namespace

double weak_series_sum(double q_exp, double r) {
    if (!(r > q_exp + 1.0)) throw std::invalid_argument("weak_series_sum: requires r > q_exp + 1");
    // Direct partial sum, then the exact tail of sum_{j>=N} (j+1)^q/j^r via
    // the binomial series (1 + 1/j)^q: the plain term-count stopping rule
    // would need ~1e12 terms at r = q+2 to push the remainder under 1e-12.
    constexpr long long N = 2000;
    double acc = 0.0;
    for (long long k = 2; k <= N; ++k)
        acc += std::pow(static_cast<double>(k), q_exp) / std::pow(static_cast<double>(k - 1), r);
    double coeff = 1.0;
    for (int i = 0; i <= 16; ++i) {
        if (i > 0) coeff *= (q_exp - (i - 1)) / i;
        if (coeff == 0.0) break;
        acc += coeff * zeta_tail(r - q_exp + i, static_cast<double>(N));
    }
    return acc;
}

WeakTypeReport lr_embedding_check(const KernelMatrix& K, double p, double q_exp, double r,
                                  const std::vector<TreeFunction>& family) {
    if (!(r > q_exp + 1.0))
        throw std::invalid_argument("lr_embedding_check: requires r > q_exp + 1 (series diverges otherwise)");
    check_exponent(p, "lr_embedding_check");
    check_exponent(q_exp, "lr_embedding_check");

    std::vector<TreeFunction> unit = family;
    for (auto& f : unit) {
        const double fp = lp_norm(f, p);
        if (fp == 0.0) throw std::invalid_argument("lr_embedding_check: family contains the zero function");
        for (auto& v : f.values) v /= fp;
    }

    WeakTypeReport rep;
    rep.p = p;
    rep.q_exp = q_exp;
    rep.r = r;
    rep.weak_const = weak_constant(K, p, q_exp, unit);
    rep.series_value = weak_series_sum(q_exp, r);
    rep.bound = std::pow(rep.weak_const, q_exp / r) *
                std::pow(rep.series_value + std::pow(2.0 * rep.weak_const, r), 1.0 / r);

    for (std::size_t i = 0; i < unit.size(); ++i) {
        const TreeFunction Kf = apply_kernel(K, unit[i]);
        const double ratio = lp_norm(Kf, r);
        if (ratio > rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_index = static_cast<int>(i);
        }
        rep.max_abs = std::max(rep.max_abs, max_abs(Kf));
    }
    rep.intermediate_pass = rep.max_abs <= 2.0 * rep.weak_const + 1e-9;
    rep.pass = rep.intermediate_pass && rep.worst_ratio <= rep.bound * (1.0 + kRatioSlack);
    return rep;
}

KernelLqReport kernel_lq_bound_check(const KernelMatrix& K, double p,
                                     const std::vector<TreeFunction>& family) {
    if (!(p > 2.0)) throw std::invalid_argument("kernel_lq_bound_check: requires p > 2");
    KernelLqReport rep;
    rep.p = p;
    rep.q_exp = p / (p - 1.0);

    double acc = 0.0;
    for (Eigen::Index i = 0; i < K.rows(); ++i)
        for (Eigen::Index j = 0; j < K.cols(); ++j) {
            const double a = std::abs(K(i, j));
            if (a > 0.0) acc += std::pow(a, rep.q_exp);
        }
    rep.bound = std::pow(acc, 1.0 / rep.q_exp);

    for (std::size_t i = 0; i < family.size(); ++i) {
        const double fp = lp_norm(family[i], p);
        if (fp == 0.0) throw std::invalid_argument("kernel_lq_bound_check: family contains the zero function");
        const double ratio = lp_norm(apply_kernel(K, family[i]), rep.q_exp) / fp;
        if (ratio > rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_index = static_cast<int>(i);
        }
    }
    rep.pass = rep.worst_ratio <= rep.bound * (1.0 + kRatioSlack);
    return rep;
}

}  // namespace treeharm
