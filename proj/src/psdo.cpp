#include "treeharm/psdo.hpp"

#include <Eigen/SVD>

#include "treeharm/lp.hpp"
#include "treeharm/rng.hpp"

namespace treeharm {

namespace {

void check_symbol(const GridSymbol& s) {
    if (s.ball == nullptr || s.part == nullptr || s.grid == nullptr ||
        s.values.size() != static_cast<std::size_t>(s.ball->size()) * s.part->count() * s.grid->M)
        throw std::invalid_argument("grid symbol does not match its ball/partition/grid");
    require_resolving(*s.part);
}

void check_shared_context(const TreeBall& ball, const CylinderPartition& part) {
    if (&part.ball() != &ball && part.ball().size() != ball.size())
        throw std::invalid_argument("partition built over a different ball");
    require_resolving(part);
}

// Spectral moments a |-> t[h] = sum_m a_m * q^{(1/2 + i s_m) h} shared by the
// kernel-type assemblies below. `a` must already carry the quadrature weights.
struct HeightAccumulator {
    const HeightPowerTable& pw;
    int hmax;
    int M;
    std::vector<Complex> t;  // indexed by h + hmax

    HeightAccumulator(const HeightPowerTable& p, int M_) : pw(p), hmax(p.hmax()), M(M_), t(2 * p.hmax() + 1) {}

    void accumulate_plus(const Complex* a) {
        for (int h = -hmax; h <= hmax; ++h) {
            const Complex* row = pw.row(h);
            Complex acc{};
            for (int m = 0; m < M; ++m) acc += a[m] * row[m];
            t[h + hmax] = acc;
        }
    }
    void accumulate_minus(const Complex* a) {
        for (int h = -hmax; h <= hmax; ++h) {
            const Complex* row = pw.row(h);
            Complex acc{};
            for (int m = 0; m < M; ++m) acc += a[m] * std::conj(row[m]);
            t[h + hmax] = acc;
        }
    }
    Complex at(int h) const { return t[h + hmax]; }
};

Eigen::VectorXd thresholded_singular_values(const KernelMatrix& K) {
    Eigen::JacobiSVD<KernelMatrix> svd(K);
    Eigen::VectorXd s = svd.singularValues();
    if (s.size() > 0) {
        const double cut = 1e-12 * s(0);
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) < cut) s(i) = 0.0;
    }
    return s;
}

}  // namespace

GridSymbol GridSymbol::zero(const TreeBall& b, const CylinderPartition& p, const SpectralGrid& g) {
    GridSymbol s;
    s.ball = &b;
    s.part = &p;
    s.grid = &g;
    s.values.assign(static_cast<std::size_t>(b.size()) * p.count() * g.M, Complex{});
    return s;
}

double nuclear_norm_bound(const NuclearDecomposition& dec, double p1, double p2) {
    if (p1 < 1.0 || p2 < 1.0) throw std::invalid_argument("nuclear_norm_bound: exponents must be >= 1");
    const double p1c = p1 == 1.0 ? std::numeric_limits<double>::infinity() : p1 / (p1 - 1.0);
    double acc = 0.0;
    for (const auto& [f, g] : dec.pairs) acc += lp_norm(g, p1c) * lp_norm(f, p2);
    return acc;
}

TreeFunction apply(const GridSymbol& sigma, const TreeFunction& f) {
    check_symbol(sigma);
    const auto F = fh_forward(f, *sigma.part, *sigma.grid);
    const auto& part = *sigma.part;
    const auto& grid = *sigma.grid;
    const HeightPowerTable pw(grid.q, grid, part.depth());
    const double nu = part.weight();

    auto out = TreeFunction::zero(*sigma.ball);
    for (int x = 0; x < sigma.ball->size(); ++x) {
        Complex acc{};
        for (int c = 0; c < part.count(); ++c) {
            const Complex* row = pw.row(part.height_unchecked(x, c));
            const Complex* sg = sigma.row(x, c);
            const Complex* Fc = F.row(c);
            Complex cell{};
            for (int m = 0; m < grid.M; ++m)
                cell += grid.plancherel_weights[m] * std::conj(row[m]) * sg[m] * Fc[m];
            acc += cell;
        }
        out.values[x] = nu * acc;
    }
    return out;
}

KernelMatrix kernel_from_symbol(const GridSymbol& sigma) {
    check_symbol(sigma);
    const auto& part = *sigma.part;
    const auto& grid = *sigma.grid;
    const int n = sigma.ball->size();
    const int M = grid.M;
    const HeightPowerTable pw(grid.q, grid, part.depth());
    HeightAccumulator acc(pw, M);
    const double nu = part.weight();

    KernelMatrix K = KernelMatrix::Zero(n, n);
    std::vector<Complex> a(M);
    for (int x = 0; x < n; ++x) {
        for (int c = 0; c < part.count(); ++c) {
            const Complex* row = pw.row(part.height_unchecked(x, c));
            const Complex* sg = sigma.row(x, c);
            for (int m = 0; m < M; ++m) a[m] = grid.plancherel_weights[m] * std::conj(row[m]) * sg[m];
            acc.accumulate_plus(a.data());
            for (int y = 0; y < n; ++y) K(x, y) += nu * acc.at(part.height_unchecked(y, c));
        }
    }
    return K;
}

GridSymbol symbol_from_decomposition(const NuclearDecomposition& dec, const TreeBall& ball,
                                     const CylinderPartition& part, const SpectralGrid& grid) {
    check_shared_context(ball, part);
    auto sigma = GridSymbol::zero(ball, part, grid);
    const int M = grid.M;
    const HeightPowerTable pw(grid.q, grid, part.depth());

    std::vector<SpectralFunction> Hgbar;
    Hgbar.reserve(dec.pairs.size());
    for (const auto& [f, g] : dec.pairs) {
        auto gbar = g;
        for (auto& v : gbar.values) v = std::conj(v);
        Hgbar.push_back(fh_forward(gbar, part, grid));
    }

    for (int x = 0; x < ball.size(); ++x) {
        for (int c = 0; c < part.count(); ++c) {
            Complex* out = sigma.row(x, c);
            for (std::size_t k = 0; k < dec.pairs.size(); ++k) {
                const Complex fx = dec.pairs[k].first.values[x];
                if (fx == Complex{}) continue;
                const Complex* Gk = Hgbar[k].row(c);
                for (int m = 0; m < M; ++m) out[m] += fx * std::conj(Gk[m]);
            }
            // divide out the forward weight: q^{-(1/2 - i s) h} = conj(q^{(1/2 + i s)(-h)})
            const Complex* row = pw.row(-part.height_unchecked(x, c));
            for (int m = 0; m < M; ++m) out[m] *= std::conj(row[m]);
        }
    }
    return sigma;
}

GridSymbol b_function(const GridSymbol& sigma) {
    check_symbol(sigma);
    const auto& part = *sigma.part;
    const auto& grid = *sigma.grid;
    const HeightPowerTable pw(grid.q, grid, part.depth());
    auto b = GridSymbol::zero(*sigma.ball, part, grid);
    for (int x = 0; x < sigma.ball->size(); ++x)
        for (int c = 0; c < part.count(); ++c) {
            const Complex* row = pw.row(part.height_unchecked(x, c));
            const Complex* in = sigma.row(x, c);
            Complex* out = b.row(x, c);
            for (int m = 0; m < grid.M; ++m) out[m] = std::conj(in[m]) * row[m];
        }
    return b;
}

double hs_norm_via_b(const GridSymbol& sigma) {
    const auto b = b_function(sigma);
    const auto& part = *sigma.part;
    const auto& grid = *sigma.grid;
    double acc = 0.0;
    for (int x = 0; x < sigma.ball->size(); ++x)
        for (int c = 0; c < part.count(); ++c) {
            const Complex* row = b.row(x, c);
            double cell = 0.0;
            for (int m = 0; m < grid.M; ++m) cell += grid.plancherel_weights[m] * std::norm(row[m]);
            acc += part.weight() * cell;
        }
    return std::sqrt(acc);
}

double hs_norm_via_kernel(const KernelMatrix& K) { return K.norm(); }

Eigen::VectorXd singular_values(const KernelMatrix& K) {
    Eigen::JacobiSVD<KernelMatrix> svd(K);
    return svd.singularValues();
}

double schatten_norm(const KernelMatrix& K, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("schatten_norm: order r must be positive");
    const Eigen::VectorXd s = thresholded_singular_values(K);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > 0.0) acc += std::pow(s(i), r);
    return std::pow(acc, 1.0 / r);
}

double lemma_schatten_power_check(const KernelMatrix& K, double r, double t) {
    if (!(r > 0.0) || !(t > 0.0))
        throw std::invalid_argument("lemma_schatten_power_check: orders must be positive");

    // Route one: S_r norm of K, raised to r.
    const Eigen::VectorXd s = thresholded_singular_values(K);
    double lhs = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > 0.0) lhs += std::pow(s(i), r);

    // Route two: build |K|^{r/t} = V diag(s^{r/t}) V^H and take its S_t norm
    // to the t through a fresh factorization.
    Eigen::JacobiSVD<KernelMatrix> svd(K, Eigen::ComputeThinV);
    Eigen::VectorXd sp = svd.singularValues();
    if (sp.size() > 0) {
        const double cut = 1e-12 * sp(0);
        for (Eigen::Index i = 0; i < sp.size(); ++i)
            sp(i) = sp(i) < cut ? 0.0 : std::pow(sp(i), r / t);
    }
    const KernelMatrix power = svd.matrixV() * sp.asDiagonal() * svd.matrixV().adjoint();
    const Eigen::VectorXd s2 = thresholded_singular_values(power);
    double rhs = 0.0;
    for (Eigen::Index i = 0; i < s2.size(); ++i)
        if (s2(i) > 0.0) rhs += std::pow(s2(i), t);

    return std::abs(lhs - rhs);
}

Complex trace_via_symbol(const GridSymbol& sigma) {
    check_symbol(sigma);
    const auto& part = *sigma.part;
    const auto& grid = *sigma.grid;
    const int D = part.depth();
    std::vector<double> qpow(2 * D + 1);
    for (int h = -D; h <= D; ++h) qpow[h + D] = std::pow(static_cast<double>(grid.q), h);

    Complex acc{};
    for (int x = 0; x < sigma.ball->size(); ++x)
        for (int c = 0; c < part.count(); ++c) {
            const double w = qpow[part.height_unchecked(x, c) + D];
            const Complex* row = sigma.row(x, c);
            Complex cell{};
            for (int m = 0; m < grid.M; ++m) cell += grid.plancherel_weights[m] * row[m];
            acc += part.weight() * w * cell;
        }
    return acc;
}

Complex trace_via_kernel(const KernelMatrix& K) { return K.trace(); }

GridSymbol adjoint_symbol(const NuclearDecomposition& dec, const TreeBall& ball,
                          const CylinderPartition& part, const SpectralGrid& grid) {
    check_shared_context(ball, part);
    auto star = GridSymbol::zero(ball, part, grid);
    const int M = grid.M;
    const HeightPowerTable pw(grid.q, grid, part.depth());

    std::vector<SpectralFunction> Hf;
    Hf.reserve(dec.pairs.size());
    for (const auto& [f, g] : dec.pairs) Hf.push_back(fh_forward(f, part, grid));

    for (int x = 0; x < ball.size(); ++x) {
        for (int c = 0; c < part.count(); ++c) {
            Complex* out = star.row(x, c);
            for (std::size_t k = 0; k < dec.pairs.size(); ++k) {
                const Complex gx = std::conj(dec.pairs[k].second.values[x]);
                if (gx == Complex{}) continue;
                const Complex* Fk = Hf[k].row(c);
                for (int m = 0; m < M; ++m) out[m] += gx * std::conj(Fk[m]);
            }
            const Complex* row = pw.row(-part.height_unchecked(x, c));
            for (int m = 0; m < M; ++m) out[m] *= std::conj(row[m]);
        }
    }
    return star;
}

GridSymbol adjoint_symbol_direct(const GridSymbol& sigma) {
    check_symbol(sigma);
    const auto& ball = *sigma.ball;
    const auto& part = *sigma.part;
    const auto& grid = *sigma.grid;
    const int n = ball.size();
    const int M = grid.M;
    const int D = part.depth();
    const HeightPowerTable pw(grid.q, grid, D);
    HeightAccumulator acc(pw, M);
    const double nu = part.weight();

    // Inner double integral I(x, y) = sum_c nu sum_m w_m conj(sigma(x,c,m))
    //   * q^{(1/2 + i s_m) h_c(x)} q^{(1/2 - i s_m) h_c(y)}.
    KernelMatrix inner = KernelMatrix::Zero(n, n);
    std::vector<Complex> a(M);
    for (int x = 0; x < n; ++x)
        for (int c = 0; c < part.count(); ++c) {
            const Complex* row = pw.row(part.height_unchecked(x, c));
            const Complex* sg = sigma.row(x, c);
            for (int m = 0; m < M; ++m) a[m] = grid.plancherel_weights[m] * std::conj(sg[m]) * row[m];
            acc.accumulate_minus(a.data());
            for (int y = 0; y < n; ++y) inner(x, y) += nu * acc.at(part.height_unchecked(y, c));
        }

    // Group the outer vertex sum by height: J(h1, c1, y) = sum over x at
    // height h1 in cell c1 of I(x, y).
    const int nh = 2 * D + 1;
    std::vector<Complex> J(static_cast<std::size_t>(nh) * part.count() * n, Complex{});
    for (int x = 0; x < n; ++x)
        for (int c1 = 0; c1 < part.count(); ++c1) {
            const int h1 = part.height_unchecked(x, c1) + D;
            Complex* Jrow = J.data() + (static_cast<std::size_t>(h1) * part.count() + c1) * n;
            for (int y = 0; y < n; ++y) Jrow[y] += inner(x, y);
        }

    auto star = GridSymbol::zero(ball, part, grid);
    for (int y = 0; y < n; ++y)
        for (int c1 = 0; c1 < part.count(); ++c1) {
            const Complex* wrow = pw.row(-part.height_unchecked(y, c1));
            Complex* out = star.row(y, c1);
            for (int h1 = -D; h1 <= D; ++h1) {
                const Complex Jv = J[(static_cast<std::size_t>(h1 + D) * part.count() + c1) * n + y];
                if (Jv == Complex{}) continue;
                const Complex* hrow = pw.row(h1);
                for (int m = 0; m < M; ++m) out[m] += std::conj(hrow[m]) * Jv;
            }
            for (int m = 0; m < M; ++m) out[m] *= std::conj(wrow[m]);
        }
    return star;
}

GridSymbol product_symbol(const NuclearDecomposition& eta, const NuclearDecomposition& sigma,
                          const TreeBall& ball, const CylinderPartition& part, const SpectralGrid& grid) {
    check_shared_context(ball, part);
    const int n = ball.size();
    const int M = grid.M;
    const int D = part.depth();
    const HeightPowerTable pw(grid.q, grid, D);
    const double nu = part.weight();

    const GridSymbol eta_star = adjoint_symbol(eta, ball, part, grid);
    const GridSymbol sigma_grid = symbol_from_decomposition(sigma, ball, part, grid);

    // G(x, b) = (H^{-1} eta'(x, ., .))(b) with eta'(x,c,m) = q^{(1/2+is)h_c(x)} conj(eta*(x,c,m)).
    HeightAccumulator acc(pw, M);
    KernelMatrix G(n, n);
    std::vector<Complex> a(M);
    for (int x = 0; x < n; ++x) {
        G.row(x).setZero();
        for (int c = 0; c < part.count(); ++c) {
            const Complex* row = pw.row(part.height_unchecked(x, c));
            const Complex* es = eta_star.row(x, c);
            for (int m = 0; m < M; ++m)
                a[m] = grid.plancherel_weights[m] * row[m] * std::conj(es[m]);
            acc.accumulate_minus(a.data());
            for (int b = 0; b < n; ++b) G(x, b) += nu * acc.at(part.height_unchecked(b, c));
        }
    }

    // lambda(b, c, m) = q^{-(1/2 - i s_m) h_c(b)} sum_x q^{(1/2 - i s_m) h_c(x)} sigma(x,c,m) G(x,b)
    auto lambda = GridSymbol::zero(ball, part, grid);
    KernelMatrix S(M, n);
    for (int c = 0; c < part.count(); ++c) {
        for (int x = 0; x < n; ++x) {
            const Complex* row = pw.row(part.height_unchecked(x, c));
            const Complex* sg = sigma_grid.row(x, c);
            for (int m = 0; m < M; ++m) S(m, x) = std::conj(row[m]) * sg[m];
        }
        const KernelMatrix L = S * G;  // (m, b)
        for (int b = 0; b < n; ++b) {
            const Complex* wrow = pw.row(-part.height_unchecked(b, c));
            Complex* out = lambda.row(b, c);
            for (int m = 0; m < M; ++m) out[m] = std::conj(wrow[m]) * L(m, b);
        }
    }
    return lambda;
}

double selfadjoint_residual(const KernelMatrix& K) {
    return (K - K.adjoint()).cwiseAbs().maxCoeff();
}

double normal_residual(const KernelMatrix& K) {
    return (K * K.adjoint() - K.adjoint() * K).cwiseAbs().maxCoeff();
}

double operator_norm_estimate(const KernelMatrix& K, std::uint64_t seed, int max_iters, double rel_tol) {
    const int n = static_cast<int>(K.rows());
    if (n == 0) return 0.0;
    SplitMix64 rng(seed);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(rng.symmetric(), rng.symmetric());
    if (v.norm() == 0.0) v.setOnes();
    v.normalize();

    double est = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        Eigen::VectorXcd w = K.adjoint() * (K * v);
        const double lambda = w.norm();  // Rayleigh quotient of K^H K at unit v
        if (lambda == 0.0) return 0.0;
        v = w / lambda;
        const double next = std::sqrt(lambda);
        if (it > 0 && std::abs(next - est) <= rel_tol * std::max(next, 1e-300)) {
            est = next;
            break;
        }
        est = next;
    }
    return est;
}

L2BoundReport l2_bound_check(const GridSymbol& sigma, const TreeFunction& v, double C) {
    check_symbol(sigma);
    if (!(C > 0.0)) throw std::invalid_argument("l2_bound_check: constant C must be positive");
    if (v.ball == nullptr || static_cast<int>(v.values.size()) != sigma.ball->size())
        throw std::invalid_argument("l2_bound_check: v does not match the symbol's ball");

    const auto& part = *sigma.part;
    const auto& grid = *sigma.grid;
    const int D = part.depth();
    std::vector<double> half_pow(2 * D + 1);
    for (int h = -D; h <= D; ++h) half_pow[h + D] = std::pow(static_cast<double>(grid.q), 0.5 * h);

    L2BoundReport rep;
    constexpr int kMaxWitnesses = 8;
    for (int x = 0; x < sigma.ball->size(); ++x) {
        const double bound = C * std::abs(v.values[x]);
        for (int c = 0; c < part.count(); ++c) {
            const double w = half_pow[part.height_unchecked(x, c) + D];
            const Complex* row = sigma.row(x, c);
            for (int m = 0; m < grid.M; ++m) {
                const double lhs = w * std::abs(row[m]);
                if (lhs > bound) {
                    ++rep.violation_count;
                    if (static_cast<int>(rep.witnesses.size()) < kMaxWitnesses)
                        rep.witnesses.push_back({x, c, m, lhs, bound});
                }
            }
        }
    }
    rep.premise_holds = rep.violation_count == 0;
    rep.op_norm = operator_norm_estimate(kernel_from_symbol(sigma));
    rep.v_norm = l2_norm(v);
    rep.measured_ratio = rep.v_norm > 0.0 ? rep.op_norm / rep.v_norm : 0.0;
    return rep;
}

OperatorReport operator_report(const GridSymbol& sigma, const std::vector<double>& schatten_orders) {
    const KernelMatrix K = kernel_from_symbol(sigma);
    OperatorReport rep;
    rep.frobenius = hs_norm_via_kernel(K);
    rep.hs_via_b = hs_norm_via_b(sigma);
    rep.singular = singular_values(K);
    for (const double r : schatten_orders) rep.schatten.emplace_back(r, schatten_norm(K, r));
    rep.trace_symbol = trace_via_symbol(sigma);
    rep.trace_kernel = trace_via_kernel(K);
    rep.op_norm = operator_norm_estimate(K);
    rep.selfadjoint_resid = selfadjoint_residual(K);
    rep.normal_resid = normal_residual(K);
    return rep;
}

}  // namespace treeharm
