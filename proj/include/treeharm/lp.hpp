#pragma once

#include <vector>

#include "treeharm/psdo.hpp"

namespace treeharm {

/// Distribution data of |f| under the counting measure on the ball:
/// m(lambda) = #{x : |f(x)| > lambda}, a nonincreasing right-continuous step
/// function evaluated by binary search over the sorted magnitudes.
class DistributionProfile {
public:
    explicit DistributionProfile(const TreeFunction& f);

    double count_above(double lambda) const;
    const std::vector<double>& sorted_magnitudes() const { return mags_; }  // ascending
    double max_magnitude() const { return mags_.empty() ? 0.0 : mags_.back(); }

private:
    std::vector<double> mags_;
};

/// (sum_x |f(x)|^p)^{1/p} for p >= 1; the max norm for p = infinity.
double lp_norm(const TreeFunction& f, double p);

/// |  ||f||_p^p  -  p * integral_0^inf lambda^{p-1} m(lambda) d lambda  |,
/// the integral summed in closed form over the intervals between the
/// breakpoints of m (no quadrature).
double layercake_residual(const TreeFunction& f, double p);

/// sup_lambda lambda * m(lambda)^{1/q}; attained at a breakpoint, so computed
/// as max_k k^{1/q} |f|_(k) over the descending rearrangement.
double weak_norm(const TreeFunction& f, double q_exp);

/// Smallest constant C making m_{Kf}(lambda) <= (C ||f||_p / lambda)^q hold
/// across the family: max_f weak_norm(Kf, q) / lp_norm(f, p).
double weak_constant(const KernelMatrix& K, double p, double q_exp,
                     const std::vector<TreeFunction>& family);

struct WeakTypeReport {
    double p = 0.0;
    double q_exp = 0.0;
    double r = 0.0;            // 0 when the check has no r exponent
    double weak_const = 0.0;   // C measured on the family
    double bound = 0.0;        // operator-norm bound asserted by the check
    double series_value = 0.0; // sum_{k>=2} k^q/(k-1)^r, embedding check only
    double worst_ratio = 0.0;  // max ||Kf||_target / ||f||_p
    int worst_index = -1;
    double max_abs = 0.0;      // max_f max_x |Kf(x)| (embedding check)
    bool intermediate_pass = true;  // max_abs <= 2C + 1e-9 (embedding check)
    bool pass = false;
};

/// Verifies ||Kf||_p <= 2^{(p-q)/p} C (p/(p-q))^{1/p} ||f||_p over the family,
/// with C the measured weak constant on the same family. Requires p > q >= 1.
WeakTypeReport strong_type_check(const KernelMatrix& K, double p, double q_exp,
                                 const std::vector<TreeFunction>& family);

/// Verifies ||Kf||_r <= C^{q/r} (sum_{k>=2} k^q/(k-1)^r + (2C)^r)^{1/r} on the
/// L^p-normalized family, along with the pointwise step max|Kf| <= 2C.
/// Requires r > q + 1.
WeakTypeReport lr_embedding_check(const KernelMatrix& K, double p, double q_exp, double r,
                                  const std::vector<TreeFunction>& family);

/// sum_{k>=2} k^q/(k-1)^r summed until the integral-comparison tail bound
/// drops below 1e-12.
double weak_series_sum(double q_exp, double r);

struct KernelLqReport {
    double p = 0.0;
    double q_exp = 0.0;        // conjugate exponent p/(p-1)
    double bound = 0.0;        // (sum_{x,y} |K(x,y)|^q)^{1/q}
    double worst_ratio = 0.0;  // max ||Kf||_q / ||f||_p
    int worst_index = -1;
    bool pass = false;
};

/// Verifies ||Kf||_q <= (sum_{x,y} |K(x,y)|^q)^{1/q} ||f||_p for the family,
/// with 1/p + 1/q = 1 and p > 2.
KernelLqReport kernel_lq_bound_check(const KernelMatrix& K, double p,
                                     const std::vector<TreeFunction>& family);

/// K applied to f as a matrix-vector product.
TreeFunction apply_kernel(const KernelMatrix& K, const TreeFunction& f);

}  // namespace treeharm
