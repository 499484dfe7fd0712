#include "treeharm/suite.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "treeharm/lp.hpp"
#include "treeharm/oracle.hpp"
#include "treeharm/rng.hpp"

namespace treeharm {

namespace {

using Clock = std::chrono::steady_clock;

struct Workspace {
    std::unique_ptr<TreeBall> ball;
    std::unique_ptr<CylinderPartition> part;
};

double max_abs_diff(const KernelMatrix& A, const KernelMatrix& B) {
    return (A - B).cwiseAbs().maxCoeff();
}

double max_abs_diff(const GridSymbol& a, const GridSymbol& b) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        best = std::max(best, std::abs(a.values[i] - b.values[i]));
    return best;
}

NuclearDecomposition identity_decomposition(const TreeBall& ball) {
    NuclearDecomposition dec;
    dec.pairs.reserve(static_cast<std::size_t>(ball.size()));
    for (int a = 0; a < ball.size(); ++a)
        dec.pairs.emplace_back(TreeFunction::delta(ball, a), TreeFunction::delta(ball, a));
    return dec;
}

class SuiteRunner {
public:
    explicit SuiteRunner(const RunConfig& cfg) : cfg_(cfg) {}

    std::vector<CheckResult> run() {
        rows_.clear();
        check_plancherel_mass();
        check_c_function();
        check_round_trip();
        check_plancherel_identity();
        check_decomposition_identities();
        check_products();
        check_schatten();
        check_layer_cake();
        check_weak_type();
        check_kernel_lq();
        return rows_;
    }

private:
    const RunConfig& cfg_;
    std::vector<CheckResult> rows_;
    std::map<std::pair<int, int>, Workspace> spaces_;
    std::map<int, SpectralGrid> grids_;

    int capped(int R) const { return std::min(R, cfg_.R); }

    const SpectralGrid& grid(int q) {
        auto it = grids_.find(q);
        if (it == grids_.end()) it = grids_.emplace(q, build_grid(q, cfg_.M)).first;
        return it->second;
    }

    const Workspace& space(int q, int R) {
        auto it = spaces_.find({q, R});
        if (it == spaces_.end()) {
            Workspace ws;
            ws.ball = std::make_unique<TreeBall>(q, R);
            ws.part = std::make_unique<CylinderPartition>(*ws.ball, R);
            it = spaces_.emplace(std::make_pair(q, R), std::move(ws)).first;
        }
        return it->second;
    }

    std::string digest_for(const std::string& detail) const {
        std::ostringstream os;
        os << "M=" << cfg_.M << ";seed=" << cfg_.seed << ";" << detail;
        return hex_digest(fnv1a64(os.str()));
    }

    CheckResult& add_row(const std::string& name, const std::string& claim,
                         const std::string& detail) {
        rows_.push_back({name, claim, digest_for(detail)});
        return rows_.back();
    }

    template <typename Fn>
    void timed(CheckResult& row, Fn&& body) {
        const auto t0 = Clock::now();
        body(row);
        row.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    }

    SplitMix64 stream(const std::string& tag) const { return SplitMix64(derive_seed(cfg_.seed, tag)); }

    // criterion 1
    void check_plancherel_mass() {
        const double tol = cfg_.tolerance("plancherel-mass", 1e-10);
        for (const int q : {2, 3}) {
            auto& row = add_row("plancherel-mass.q" + std::to_string(q), "spectral.total-mass",
                                "plancherel-mass;q=" + std::to_string(q));
            timed(row, [&](CheckResult& r) {
                r.lhs = total_mass(grid(q));
                r.rhs = 1.0;
                r.residual = std::abs(r.lhs - 1.0);
                r.tol = tol;
                r.pass = r.residual <= r.tol;
            });
            auto& conv = add_row("plancherel-mass.q" + std::to_string(q) + ".converges",
                                 "spectral.total-mass", "plancherel-mass-converges;q=" + std::to_string(q));
            timed(conv, [&](CheckResult& r) {
                // The rule error is far below the double rounding floor at
                // these M (the double-precision mass is exactly 1 at both),
                // so the strict improvement is measured on the rule itself
                // in extended precision.
                const int half = std::max(2, cfg_.M / 2);
                r.lhs = quadrature_rule_mass_error(q, half);    // error at M/2
                r.rhs = quadrature_rule_mass_error(q, cfg_.M);  // error at M
                r.residual = r.rhs - r.lhs;                     // negative when the error shrank
                r.tol = 0.0;
                r.pass = r.rhs < r.lhs;
            });
        }
    }

    // criterion 2
    void check_c_function() {
        const double tol = cfg_.tolerance("c-function", 1e-12);
        for (const int q : {2, 3, 5}) {
            auto& row = add_row("c-function.q" + std::to_string(q), "spectral.c-value",
                                "c-function;q=" + std::to_string(q));
            timed(row, [&](CheckResult& r) {
                r.lhs = std::abs(c_function(q, spectral_period(q) / 2.0));
                r.rhs = 0.5;
                r.residual = std::abs(c_function(q, spectral_period(q) / 2.0) - Complex{0.5, 0.0});
                r.tol = tol;
                r.pass = r.residual <= r.tol;
            });
        }
    }

    // criterion 3
    void check_round_trip() {
        const double tol = cfg_.tolerance("round-trip", 1e-8);
        for (const int q : {2, 3})
            for (int R = 1; R <= capped(4); ++R) {
                const std::string tag =
                    "round-trip:q=" + std::to_string(q) + ":R=" + std::to_string(R);
                auto& row = add_row("round-trip.q" + std::to_string(q) + ".R" + std::to_string(R),
                                    "fh.inversion", tag);
                timed(row, [&](CheckResult& r) {
                    const auto& ws = space(q, R);
                    auto rng = stream(tag);
                    double worst = 0.0;
                    for (int i = 0; i < 20; ++i) {
                        const auto f = random_tree_function(*ws.ball, rng);
                        const auto back = fh_inverse(fh_forward(f, *ws.part, grid(q)), *ws.ball);
                        double err = 0.0;
                        for (std::size_t v = 0; v < f.values.size(); ++v)
                            err = std::max(err, std::abs(f.values[v] - back.values[v]));
                        worst = std::max(worst, err / max_abs(f));
                    }
                    r.lhs = worst;
                    r.rhs = 0.0;
                    r.residual = worst;
                    r.tol = tol;
                    r.pass = worst <= tol;
                });
            }
    }

    // criterion 4
    void check_plancherel_identity() {
        const double tol = cfg_.tolerance("plancherel-identity", 1e-8);
        for (const int q : {2, 3}) {
            const int R = capped(4);
            const std::string tag =
                "plancherel-identity:q=" + std::to_string(q) + ":R=" + std::to_string(R);
            auto& row = add_row("plancherel-identity.q" + std::to_string(q), "fh.plancherel", tag);
            timed(row, [&](CheckResult& r) {
                const auto& ws = space(q, R);
                auto rng = stream(tag);
                double worst = 0.0;
                for (int i = 0; i < 20; ++i) {
                    const auto f = random_tree_function(*ws.ball, rng);
                    const auto g = random_tree_function(*ws.ball, rng);
                    const auto F = fh_forward(f, *ws.part, grid(q));
                    const auto G = fh_forward(g, *ws.part, grid(q));
                    const double err = std::abs(plancherel_pairing(F, G) - inner_product(f, g));
                    worst = std::max(worst, err / (l2_norm(f) * l2_norm(g)));
                }
                r.lhs = worst;
                r.rhs = 0.0;
                r.residual = worst;
                r.tol = tol;
                r.pass = worst <= tol;
            });
        }
    }

    // criteria 5, 6, 7, 8 share the seeded decompositions at each operator config
    void check_decomposition_identities() {
        const double tol_kernel = cfg_.tolerance("nuclear-kernel", 1e-6);
        const double tol_hs = cfg_.tolerance("hs-equality", 1e-6);
        const double tol_trace = cfg_.tolerance("trace", 1e-6);
        const double tol_trace_abs = cfg_.tolerance("trace-abs", 1e-8);
        const double tol_adj = cfg_.tolerance("adjoint", 1e-6);
        const int sizes[10] = {1, 3, 8, 1, 3, 8, 1, 3, 8, 1};

        for (const auto& [q, Rfull] : {std::pair{2, 4}, std::pair{3, 3}}) {
            const int R = capped(Rfull);
            const auto& ws = space(q, R);
            const auto& g = grid(q);
            const std::string cfg_tag = "q=" + std::to_string(q) + ":R=" + std::to_string(R);
            const std::string suffix = ".q" + std::to_string(q);
            auto rng = stream("decompositions:" + cfg_tag);

            double worst_kernel = 0.0;
            double worst_hs = 0.0;
            // worst trace instance: residual relative to the effective
            // tolerance max(rel * |trace|, abs), recorded with that tolerance
            struct TraceWorst {
                double score = -1.0, residual = 0.0, tol = 0.0;
                void update(double res, double tol_eff) {
                    if (res / tol_eff > score) {
                        score = res / tol_eff;
                        residual = res;
                        tol = tol_eff;
                    }
                }
            } trace_sk, trace_kd;
            double worst_adj_dec = 0.0, worst_adj_dir = 0.0, worst_adj_agree = 0.0;

            const auto t0 = Clock::now();
            for (int i = 0; i < 10; ++i) {
                const auto dec = random_decomposition(*ws.ball, sizes[i], rng);
                const auto oracle = outer_product_kernel(dec, ws.ball->size());

                const auto sigma = symbol_from_decomposition(dec, *ws.ball, *ws.part, g);
                const auto K = kernel_from_symbol(sigma);
                double scale = 0.0;
                for (const auto& [f, gg] : dec.pairs) scale += max_abs(f) * max_abs(gg);
                worst_kernel = std::max(worst_kernel, max_abs_diff(K, oracle) / scale);

                const double frob = oracle.norm();
                worst_hs = std::max(worst_hs, std::abs(hs_norm_via_b(sigma) - frob) / frob);

                const Complex ts = trace_via_symbol(sigma);
                const Complex tk = trace_via_kernel(K);
                const Complex td = direct_trace(dec);
                const double tol_eff = std::max(tol_trace * std::abs(td), tol_trace_abs);
                trace_sk.update(std::abs(ts - tk), tol_eff);
                trace_kd.update(std::abs(tk - td), tol_eff);

                const auto star_dec = adjoint_symbol(dec, *ws.ball, *ws.part, g);
                const auto star_dir = adjoint_symbol_direct(sigma);
                const KernelMatrix KH = K.adjoint();
                worst_adj_dec = std::max(worst_adj_dec, max_abs_diff(kernel_from_symbol(star_dec), KH));
                worst_adj_dir = std::max(worst_adj_dir, max_abs_diff(kernel_from_symbol(star_dir), KH));
                worst_adj_agree = std::max(worst_adj_agree, max_abs_diff(star_dec, star_dir));
            }
            const double elapsed = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

            const auto add = [&](const std::string& name, const std::string& claim, double residual,
                                 double tol) {
                auto& r = add_row(name + suffix, claim, name + ";" + cfg_tag);
                r.lhs = residual;
                r.rhs = 0.0;
                r.residual = residual;
                r.tol = tol;
                r.pass = residual <= tol;
                r.wall_ms = elapsed / 8.0;
            };
            add("nuclear-kernel", "psdo.kernel-decomposition", worst_kernel, tol_kernel);
            add("hs-equality", "psdo.hs-equality", worst_hs, tol_hs);
            add("trace.symbol-vs-kernel", "psdo.trace", trace_sk.residual, trace_sk.tol);
            add("trace.kernel-vs-direct", "psdo.trace", trace_kd.residual, trace_kd.tol);
            add("adjoint.decomposition", "psdo.adjoint", worst_adj_dec, tol_adj);
            add("adjoint.direct", "psdo.adjoint", worst_adj_dir, tol_adj);
            add("adjoint.forms-agree", "psdo.adjoint", worst_adj_agree, tol_adj);
        }
    }

    // criterion 9
    void check_products() {
        const double tol = cfg_.tolerance("product", 1e-5);
        struct Case {
            int q, R, pairs;
            bool identity;
        };
        const Case cases[] = {{2, 3, 4, false}, {2, 3, 1, true},  {3, 2, 3, false},
                              {3, 2, 1, true},  {2, 4, 1, false}};
        int index = 0;
        for (const auto& cs : cases) {
            const int R = capped(cs.R);
            const std::string tag = "product:q=" + std::to_string(cs.q) + ":R=" + std::to_string(R) +
                                    ":i=" + std::to_string(index);
            const std::string name = cs.identity
                                          ? "product.identity.q" + std::to_string(cs.q)
                                          : "product.q" + std::to_string(cs.q) + ".R" + std::to_string(R);
            auto& row = add_row(name, "psdo.product", tag);
            timed(row, [&](CheckResult& r) {
                const auto& ws = space(cs.q, R);
                const auto& g = grid(cs.q);
                auto rng = stream(tag);
                double worst = 0.0;
                for (int i = 0; i < cs.pairs; ++i) {
                    const auto eta = cs.identity ? identity_decomposition(*ws.ball)
                                                 : random_decomposition(*ws.ball, 3, rng);
                    const auto sig = random_decomposition(*ws.ball, 3, rng);
                    const auto lambda = product_symbol(eta, sig, *ws.ball, *ws.part, g);
                    const auto K_lambda = kernel_from_symbol(lambda);
                    const auto K_eta = outer_product_kernel(eta, ws.ball->size());
                    const auto K_sig = outer_product_kernel(sig, ws.ball->size());
                    worst = std::max(worst, max_abs_diff(K_lambda, K_eta * K_sig));
                }
                r.lhs = worst;
                r.rhs = 0.0;
                r.residual = worst;
                r.tol = tol;
                r.pass = worst <= tol;
            });
            ++index;
        }
    }

    // criterion 10
    void check_schatten() {
        const double tol_s2 = cfg_.tolerance("schatten-s2", 1e-10);
        const double tol_lemma = cfg_.tolerance("schatten-lemma", 1e-8);
        const int n = TreeBall(2, capped(3)).size();
        const std::string tag = "schatten:n=" + std::to_string(n);

        auto& s2 = add_row("schatten.s2-frobenius", "psdo.schatten", tag + ":s2");
        timed(s2, [&](CheckResult& r) {
            auto rng = stream(tag);
            double worst = 0.0;
            for (int i = 0; i < 10; ++i) {
                const auto K = random_kernel(n, rng);
                worst = std::max(worst, std::abs(schatten_norm(K, 2.0) - K.norm()) / K.norm());
            }
            r.lhs = worst;
            r.rhs = 0.0;
            r.residual = worst;
            r.tol = tol_s2;
            r.pass = worst <= tol_s2;
        });

        const std::pair<double, double> orders[] = {{2.0 / 3.0, 2.0}, {1.0, 2.0}, {2.0, 1.0}};
        int oi = 0;
        for (const auto& [rr, tt] : orders) {
            auto& row = add_row("schatten.lemma." + std::to_string(oi), "psdo.schatten-lemma",
                                tag + ":lemma:" + std::to_string(oi));
            timed(row, [&, rr, tt](CheckResult& r) {
                auto rng = stream(tag);  // same 10 kernels for every (r, t) pair
                double worst = 0.0;
                for (int i = 0; i < 10; ++i)
                    worst = std::max(worst, lemma_schatten_power_check(random_kernel(n, rng), rr, tt));
                r.lhs = worst;
                r.rhs = 0.0;
                r.residual = worst;
                r.tol = tol_lemma;
                r.pass = worst <= tol_lemma;
            });
            ++oi;
        }
    }

    // criterion 11
    void check_layer_cake() {
        const double tol = cfg_.tolerance("layer-cake", 1e-10);
        const auto& ws = space(2, capped(4));
        for (const double p : {1.0, 2.0, 3.5}) {
            std::ostringstream name;
            name << "layer-cake.p" << p;
            const std::string tag = "layer-cake:p=" + format_float(p);
            auto& row = add_row(name.str(), "lp.layer-cake", tag);
            timed(row, [&, p](CheckResult& r) {
                auto rng = stream(tag);
                double worst = 0.0;
                for (int i = 0; i < 20; ++i) {
                    const auto f = random_tree_function(*ws.ball, rng);
                    const double scale = std::pow(lp_norm(f, p), p);
                    worst = std::max(worst, layercake_residual(f, p) / scale);
                }
                r.lhs = worst;
                r.rhs = 0.0;
                r.residual = worst;
                r.tol = tol;
                r.pass = worst <= tol;
            });
        }
    }

    // criterion 12
    void check_weak_type() {
        for (const auto& [q, Rfull] : {std::pair{2, 4}, std::pair{3, 3}}) {
            const int R = capped(Rfull);
            const auto& ws = space(q, R);
            const std::string cfg_tag = "q=" + std::to_string(q) + ":R=" + std::to_string(R);
            const std::string suffix = ".q" + std::to_string(q);
            auto krng = stream("weak-kernel:" + cfg_tag);
            const auto K = random_kernel(ws.ball->size(), krng);

            auto frng = stream("weak-family:" + cfg_tag);
            std::vector<TreeFunction> family;
            family.reserve(50);
            for (int i = 0; i < 50; ++i) family.push_back(random_tree_function(*ws.ball, frng));

            for (const auto& [p, qe] : {std::pair{2.0, 1.0}, std::pair{3.0, 2.0}}) {
                std::ostringstream name;
                name << "weak-type.strong.p" << p << "q" << qe << suffix;
                auto& row = add_row(name.str(), "lp.weak-strong", "strong:" + cfg_tag);
                timed(row, [&, p, qe](CheckResult& r) {
                    const auto rep = strong_type_check(K, p, qe, family);
                    r.lhs = rep.worst_ratio;
                    r.rhs = rep.bound;
                    r.residual = std::max(0.0, rep.worst_ratio - rep.bound);
                    r.tol = 0.0;
                    r.pass = rep.pass;
                });
            }

            auto& emb = add_row("weak-type.embedding.p2q1r3" + suffix, "lp.weak-embedding",
                                "embedding:" + cfg_tag);
            auto& mid = add_row("weak-type.intermediate" + suffix, "lp.weak-embedding",
                                "intermediate:" + cfg_tag);
            const auto t0 = Clock::now();
            const auto rep = lr_embedding_check(K, 2.0, 1.0, 3.0, family);
            const double elapsed = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
            emb.lhs = rep.worst_ratio;
            emb.rhs = rep.bound;
            emb.residual = std::max(0.0, rep.worst_ratio - rep.bound);
            emb.tol = 0.0;
            emb.pass = rep.worst_ratio <= rep.bound * (1.0 + 1e-12);
            emb.wall_ms = elapsed;
            mid.lhs = rep.max_abs;
            mid.rhs = 2.0 * rep.weak_const;
            mid.residual = std::max(0.0, rep.max_abs - 2.0 * rep.weak_const);
            mid.tol = cfg_.tolerance("weak-intermediate", 1e-9);
            mid.pass = rep.intermediate_pass;
            mid.wall_ms = 0.0;
        }
    }

    // criterion 13
    void check_kernel_lq() {
        const auto& ws = space(2, capped(4));
        const std::string tag = "kernel-lq:q=2:R=" + std::to_string(capped(4));
        auto& rnd = add_row("kernel-lq.random", "lp.kernel-bound", tag);
        timed(rnd, [&](CheckResult& r) {
            auto krng = stream(tag + ":kernel");
            const auto K = random_kernel(ws.ball->size(), krng);
            auto frng = stream(tag + ":family");
            std::vector<TreeFunction> family;
            family.reserve(100);
            for (int i = 0; i < 100; ++i) family.push_back(random_tree_function(*ws.ball, frng));
            const auto rep = kernel_lq_bound_check(K, 4.0, family);
            r.lhs = rep.worst_ratio;
            r.rhs = rep.bound;
            r.residual = std::max(0.0, rep.worst_ratio - rep.bound);
            r.tol = 0.0;
            r.pass = rep.pass;
        });

        auto& tight = add_row("kernel-lq.tight", "lp.kernel-bound", tag + ":tight");
        timed(tight, [&](CheckResult& r) {
            KernelMatrix K = KernelMatrix::Zero(ws.ball->size(), ws.ball->size());
            const int a = 1, b = 2;
            K(a, b) = 1.0;
            const auto rep = kernel_lq_bound_check(K, 4.0, {TreeFunction::delta(*ws.ball, b)});
            r.lhs = rep.worst_ratio;
            r.rhs = rep.bound;
            r.residual = std::abs(rep.worst_ratio - 1.0);
            r.tol = cfg_.tolerance("kernel-lq-tight", 1e-12);
            r.pass = rep.pass && r.residual <= r.tol;
        });
    }
};

void append_json_row(std::string& out, const CheckResult& r) {
    out += "{\"name\":\"" + r.name + "\",\"claim\":\"" + r.claim + "\",\"digest\":\"" + r.digest +
           "\",\"lhs\":" + format_float(r.lhs) + ",\"rhs\":" + format_float(r.rhs) +
           ",\"residual\":" + format_float(r.residual) + ",\"tol\":" + format_float(r.tol) +
           ",\"pass\":" + (r.pass ? "true" : "false") + "}\n";
}

}  // namespace

std::string rows_to_jsonl(const std::vector<CheckResult>& rows) {
    std::string out;
    for (const auto& r : rows) append_json_row(out, r);
    return out;
}

std::string rows_to_csv(const std::vector<CheckResult>& rows) {
    std::ostringstream os;
    os << "name,claim,pass,lhs,rhs,residual,tol,wall_ms\n";
    for (const auto& r : rows) {
        char wall[32];
        std::snprintf(wall, sizeof(wall), "%.3f", r.wall_ms);
        os << r.name << ',' << r.claim << ',' << (r.pass ? "pass" : "FAIL") << ','
           << format_float(r.lhs) << ',' << format_float(r.rhs) << ',' << format_float(r.residual)
           << ',' << format_float(r.tol) << ',' << wall << '\n';
    }
    return os.str();
}

const std::vector<std::pair<std::string, std::string>>& criterion_groups() {
    static const std::vector<std::pair<std::string, std::string>> groups = {
        {"plancherel-mass", "criterion-01 spectral measure has unit mass, improving with M"},
        {"c-function", "criterion-02 c(tau/2) = 1/2"},
        {"round-trip", "criterion-03 inverse transform undoes the forward transform"},
        {"plancherel-identity", "criterion-04 spectral pairing equals the vertex inner product"},
        {"nuclear-kernel", "criterion-05 decomposition symbol reproduces the rank-K kernel"},
        {"hs-equality", "criterion-06 Hilbert-Schmidt norm via b equals the Frobenius norm"},
        {"trace", "criterion-07 trace via symbol, kernel diagonal, and direct sum agree"},
        {"adjoint", "criterion-08 adjoint symbols produce the conjugate-transpose kernel"},
        {"product", "criterion-09 product symbol composes the kernels"},
        {"schatten", "criterion-10 Schatten norms match the singular-value oracle"},
        {"layer-cake", "criterion-11 layer-cake integral equals the direct p-norm"},
        {"weak-type", "criterion-12 weak-type bounds hold with the stated constants"},
        {"kernel-lq", "criterion-13 kernel lq bound holds and is tight on a rank-one kernel"},
        {"determinism", "criterion-14 identical configs produce identical report bytes"},
    };
    return groups;
}

SuiteResult run_suite(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.R < 1) throw std::invalid_argument("suite: needs R >= 1 to build cell partitions");

    SuiteResult result;
    {
        SuiteRunner first(cfg);
        result.rows = first.run();
    }
    const std::string pass1 = rows_to_jsonl(result.rows);

    const auto t0 = std::chrono::steady_clock::now();
    std::string pass2;
    {
        SuiteRunner second(cfg);
        pass2 = rows_to_jsonl(second.run());
    }
    CheckResult det;
    det.name = "determinism";
    det.claim = "cli.determinism";
    det.digest = hex_digest(fnv1a64(pass1));
    det.lhs = static_cast<double>(fnv1a64(pass1) >> 12);
    det.rhs = static_cast<double>(fnv1a64(pass2) >> 12);
    det.residual = pass1 == pass2 ? 0.0 : 1.0;
    det.tol = 0.0;
    det.pass = pass1 == pass2;
    det.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    result.rows.push_back(det);

    result.all_pass = true;
    for (const auto& r : result.rows) result.all_pass = result.all_pass && r.pass;
    result.jsonl = rows_to_jsonl(result.rows);
    result.csv = rows_to_csv(result.rows);
    return result;
}

}  // namespace treeharm
