#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "treeharm/lp.hpp"
#include "treeharm/oracle.hpp"
#include "treeharm/rng.hpp"
#include "treeharm/suite.hpp"

namespace th = treeharm;
namespace fs = std::filesystem;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;

struct Session {
    th::RunConfig cfg;
    std::unique_ptr<th::TreeBall> ball;
    std::unique_ptr<th::CylinderPartition> part;
    th::SpectralGrid grid;

    void open() {
        cfg.validate();
        ball = std::make_unique<th::TreeBall>(cfg.q, cfg.R);
        if (cfg.R >= 1) part = std::make_unique<th::CylinderPartition>(*ball, cfg.cylinder_depth());
        grid = th::build_grid(cfg.q, cfg.M);
        fs::create_directories(cfg.out_dir);
    }
    std::string path(const std::string& name) const { return (fs::path(cfg.out_dir) / name).string(); }
};

void write_reports(const Session& s, const std::string& base, const std::vector<th::CheckResult>& rows) {
    std::ofstream jl(s.path(base + "_report.jsonl"));
    jl << th::rows_to_jsonl(rows);
    std::ofstream cs(s.path(base + "_summary.csv"));
    cs << th::rows_to_csv(rows);
}

int finish(const Session& s, const std::string& base, const std::vector<th::CheckResult>& rows) {
    write_reports(s, base, rows);
    bool all = true;
    for (const auto& r : rows) {
        std::cout << (r.pass ? "pass  " : "FAIL  ") << r.name << "  residual=" << th::format_float(r.residual)
                  << " tol=" << th::format_float(r.tol) << "\n";
        all = all && r.pass;
    }
    return all ? kExitPass : kExitCheckFailure;
}

th::CheckResult make_row(const th::RunConfig& cfg, const std::string& name, const std::string& claim,
                         double residual, double tol) {
    th::CheckResult r;
    r.name = name;
    r.claim = claim;
    r.digest = th::hex_digest(th::fnv1a64("q=" + std::to_string(cfg.q) + ";R=" + std::to_string(cfg.R) +
                                          ";M=" + std::to_string(cfg.M) + ";seed=" + std::to_string(cfg.seed) +
                                          ";" + name));
    r.lhs = residual;
    r.rhs = 0.0;
    r.residual = residual;
    r.tol = tol;
    r.pass = residual <= tol;
    return r;
}

th::NuclearDecomposition load_or_seed_decomposition(Session& s, const std::string& file, int pairs,
                                                    const std::string& tag) {
    if (!file.empty()) return th::read_decomposition(file, *s.ball);
    auto rng = th::SplitMix64(th::derive_seed(s.cfg.seed, tag));
    return th::random_decomposition(*s.ball, pairs, rng);
}

double kernel_max_diff(const th::KernelMatrix& A, const th::KernelMatrix& B) {
    return (A - B).cwiseAbs().maxCoeff();
}

// --- subcommand bodies -------------------------------------------------------

int cmd_build(Session& s) {
    s.open();
    {
        std::ofstream out(s.path("ball.csv"));
        out << "# q=" << s.cfg.q << " R=" << s.cfg.R << " D=" << s.cfg.cylinder_depth()
            << " M=" << s.cfg.M << "\nvertex,depth,parent\n";
        for (int v = 0; v < s.ball->size(); ++v)
            out << v << ',' << s.ball->depth(v) << ',' << s.ball->parent(v) << '\n';
    }
    if (s.part) {
        std::ofstream out(s.path("cells.csv"));
        out << "# q=" << s.cfg.q << " R=" << s.cfg.R << " D=" << s.cfg.cylinder_depth()
            << " M=" << s.cfg.M << "\ncell,vertex,weight\n";
        for (int c = 0; c < s.part->count(); ++c)
            out << c << ',' << s.part->cylinder_vertex(c) << ',' << th::format_float(s.part->weight())
                << '\n';
    }
    th::write_grid_csv(s.path("grid.csv"), s.grid, s.cfg);
    std::cout << "ball: " << s.ball->size() << " vertices;  cells: " << (s.part ? s.part->count() : 0)
              << ";  nodes: " << s.grid.M << ";  spectral mass: " << th::format_float(th::total_mass(s.grid))
              << "\n";
    return kExitPass;
}

int cmd_transform(Session& s, const std::string& in, std::string out) {
    s.open();
    if (!s.part) throw std::invalid_argument("transform: needs R >= 1");
    const auto f = th::read_tree_function(in, *s.ball);
    const auto F = th::fh_forward(f, *s.part, s.grid);
    if (out.empty()) out = s.path("spectral.csv");
    th::write_spectral_function(out, F, s.cfg);
    std::cout << "wrote " << out << "\n";
    return kExitPass;
}

int cmd_invert(Session& s, const std::string& in, std::string out) {
    s.open();
    if (!s.part) throw std::invalid_argument("invert: needs R >= 1");
    const auto F = th::read_spectral_function(in, *s.part, s.grid);
    const auto f = th::fh_inverse(F, *s.ball);
    if (out.empty()) out = s.path("function.json");
    th::write_tree_function(out, f, s.cfg);
    std::cout << "wrote " << out << "\n";
    return kExitPass;
}

int cmd_plancherel(Session& s, int count) {
    s.open();
    if (!s.part) throw std::invalid_argument("plancherel: needs R >= 1");
    std::vector<th::CheckResult> rows;

    auto mass = make_row(s.cfg, "plancherel-mass", "spectral.total-mass",
                         std::abs(th::total_mass(s.grid) - 1.0),
                         s.cfg.tolerance("plancherel-mass", 1e-10));
    mass.lhs = th::total_mass(s.grid);
    mass.rhs = 1.0;
    rows.push_back(mass);

    auto rng = th::SplitMix64(th::derive_seed(s.cfg.seed, "cli:plancherel"));
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const auto f = th::random_tree_function(*s.ball, rng);
        const auto g = th::random_tree_function(*s.ball, rng);
        const auto F = th::fh_forward(f, *s.part, s.grid);
        const auto G = th::fh_forward(g, *s.part, s.grid);
        const double err = std::abs(th::plancherel_pairing(F, G) - th::inner_product(f, g)) /
                           (th::l2_norm(f) * th::l2_norm(g));
        worst = std::max(worst, err);
    }
    rows.push_back(make_row(s.cfg, "plancherel-identity", "fh.plancherel", worst,
                            s.cfg.tolerance("plancherel-identity", 1e-8)));
    return finish(s, "plancherel", rows);
}

int cmd_kernel(Session& s, const std::string& dec_file, int pairs) {
    s.open();
    if (!s.part) throw std::invalid_argument("kernel: needs R >= 1");
    const auto dec = load_or_seed_decomposition(s, dec_file, pairs, "cli:kernel");
    const auto sigma = th::symbol_from_decomposition(dec, *s.ball, *s.part, s.grid);
    const auto K = th::kernel_from_symbol(sigma);
    th::write_kernel_csv(s.path("kernel.csv"), K, s.cfg);

    const auto oracle = th::outer_product_kernel(dec, s.ball->size());
    double scale = 0.0;
    for (const auto& [f, g] : dec.pairs) scale += th::max_abs(f) * th::max_abs(g);
    const double rel = scale > 0.0 ? kernel_max_diff(K, oracle) / scale : kernel_max_diff(K, oracle);
    return finish(s, "kernel",
                  {make_row(s.cfg, "nuclear-kernel", "psdo.kernel-decomposition", rel,
                            s.cfg.tolerance("nuclear-kernel", 1e-6))});
}

int cmd_hs_check(Session& s, const std::string& dec_file, int pairs) {
    s.open();
    if (!s.part) throw std::invalid_argument("hs-check: needs R >= 1");
    const auto dec = load_or_seed_decomposition(s, dec_file, pairs, "cli:hs");
    const auto sigma = th::symbol_from_decomposition(dec, *s.ball, *s.part, s.grid);
    const double via_b = th::hs_norm_via_b(sigma);
    const double frob = th::outer_product_kernel(dec, s.ball->size()).norm();
    std::cout << "nuclear norm bound (p1 = p2 = 2): "
              << th::format_float(th::nuclear_norm_bound(dec, 2.0, 2.0)) << "\n";
    auto row = make_row(s.cfg, "hs-equality", "psdo.hs-equality",
                        frob > 0.0 ? std::abs(via_b - frob) / frob : via_b,
                        s.cfg.tolerance("hs-equality", 1e-6));
    row.lhs = via_b;
    row.rhs = frob;
    return finish(s, "hs", {row});
}

int cmd_trace_check(Session& s, const std::string& dec_file, int pairs) {
    s.open();
    if (!s.part) throw std::invalid_argument("trace-check: needs R >= 1");
    const auto dec = load_or_seed_decomposition(s, dec_file, pairs, "cli:trace");
    const auto sigma = th::symbol_from_decomposition(dec, *s.ball, *s.part, s.grid);
    const auto K = th::kernel_from_symbol(sigma);
    const th::Complex ts = th::trace_via_symbol(sigma);
    const th::Complex tk = th::trace_via_kernel(K);
    const th::Complex td = th::direct_trace(dec);
    const double tol = std::max(s.cfg.tolerance("trace", 1e-6) * std::abs(td),
                                s.cfg.tolerance("trace-abs", 1e-8));
    auto a = make_row(s.cfg, "trace.symbol-vs-kernel", "psdo.trace", std::abs(ts - tk), tol);
    a.lhs = std::abs(ts);
    a.rhs = std::abs(tk);
    auto b = make_row(s.cfg, "trace.kernel-vs-direct", "psdo.trace", std::abs(tk - td), tol);
    b.lhs = std::abs(tk);
    b.rhs = std::abs(td);
    return finish(s, "trace", {a, b});
}

int cmd_adjoint_check(Session& s, const std::string& dec_file, int pairs) {
    s.open();
    if (!s.part) throw std::invalid_argument("adjoint-check: needs R >= 1");
    const auto dec = load_or_seed_decomposition(s, dec_file, pairs, "cli:adjoint");
    const auto sigma = th::symbol_from_decomposition(dec, *s.ball, *s.part, s.grid);
    const th::KernelMatrix KH = th::kernel_from_symbol(sigma).adjoint();
    const auto star_dec = th::adjoint_symbol(dec, *s.ball, *s.part, s.grid);
    const auto star_dir = th::adjoint_symbol_direct(sigma);
    const double tol = s.cfg.tolerance("adjoint", 1e-6);
    double agree = 0.0;
    for (std::size_t i = 0; i < star_dec.values.size(); ++i)
        agree = std::max(agree, std::abs(star_dec.values[i] - star_dir.values[i]));
    return finish(s, "adjoint",
                  {make_row(s.cfg, "adjoint.decomposition", "psdo.adjoint",
                            kernel_max_diff(th::kernel_from_symbol(star_dec), KH), tol),
                   make_row(s.cfg, "adjoint.direct", "psdo.adjoint",
                            kernel_max_diff(th::kernel_from_symbol(star_dir), KH), tol),
                   make_row(s.cfg, "adjoint.forms-agree", "psdo.adjoint", agree, tol)});
}

int cmd_product_check(Session& s, const std::string& eta_file, const std::string& sigma_file, int pairs) {
    s.open();
    if (!s.part) throw std::invalid_argument("product-check: needs R >= 1");
    const auto eta = load_or_seed_decomposition(s, eta_file, pairs, "cli:product:eta");
    const auto sig = load_or_seed_decomposition(s, sigma_file, pairs, "cli:product:sigma");
    const auto lambda = th::product_symbol(eta, sig, *s.ball, *s.part, s.grid);
    const auto K_lambda = th::kernel_from_symbol(lambda);
    const auto K_eta = th::outer_product_kernel(eta, s.ball->size());
    const auto K_sig = th::outer_product_kernel(sig, s.ball->size());
    th::write_kernel_csv(s.path("product_kernel.csv"), K_lambda, s.cfg);
    return finish(s, "product",
                  {make_row(s.cfg, "product", "psdo.product", kernel_max_diff(K_lambda, K_eta * K_sig),
                            s.cfg.tolerance("product", 1e-5))});
}

int cmd_schatten(Session& s, const std::string& kernel_file, std::vector<double> orders) {
    s.open();
    th::KernelMatrix K;
    if (!kernel_file.empty()) {
        K = th::read_kernel_csv(kernel_file);
    } else {
        auto rng = th::SplitMix64(th::derive_seed(s.cfg.seed, "cli:schatten"));
        K = th::random_kernel(s.ball->size(), rng);
    }
    if (orders.empty()) orders = {2.0 / 3.0, 1.0, 2.0};

    {
        const auto sv = th::singular_values(K);
        std::ofstream out(s.path("singular_values.csv"));
        out << "# q=" << s.cfg.q << " R=" << s.cfg.R << " D=" << s.cfg.cylinder_depth()
            << " M=" << s.cfg.M << "\nindex,value\n";
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            out << i << ',' << th::format_float(sv(i)) << '\n';
    }
    for (const double r : orders)
        std::cout << "schatten r=" << th::format_float(r) << ": "
                  << th::format_float(th::schatten_norm(K, r)) << "\n";

    auto s2 = make_row(s.cfg, "schatten.s2-frobenius", "psdo.schatten",
                       std::abs(th::schatten_norm(K, 2.0) - K.norm()) / std::max(K.norm(), 1e-300),
                       s.cfg.tolerance("schatten-s2", 1e-10));
    std::vector<th::CheckResult> rows{s2};
    const std::pair<double, double> lemma_orders[] = {{2.0 / 3.0, 2.0}, {1.0, 2.0}, {2.0, 1.0}};
    int i = 0;
    for (const auto& [r, t] : lemma_orders)
        rows.push_back(make_row(s.cfg, "schatten.lemma." + std::to_string(i++), "psdo.schatten-lemma",
                                th::lemma_schatten_power_check(K, r, t),
                                s.cfg.tolerance("schatten-lemma", 1e-8)));
    return finish(s, "schatten", rows);
}

int cmd_lp_report(Session& s, const std::string& kernel_file, int family_size) {
    s.open();
    th::KernelMatrix K;
    if (!kernel_file.empty()) {
        K = th::read_kernel_csv(kernel_file);
    } else {
        auto rng = th::SplitMix64(th::derive_seed(s.cfg.seed, "cli:lp:kernel"));
        K = th::random_kernel(s.ball->size(), rng);
    }
    auto frng = th::SplitMix64(th::derive_seed(s.cfg.seed, "cli:lp:family"));
    std::vector<th::TreeFunction> family;
    for (int i = 0; i < family_size; ++i) family.push_back(th::random_tree_function(*s.ball, frng));

    std::vector<th::CheckResult> rows;
    for (const double p : {1.0, 2.0, 3.5}) {
        double worst = 0.0;
        for (const auto& f : family)
            worst = std::max(worst, th::layercake_residual(f, p) / std::pow(th::lp_norm(f, p), p));
        rows.push_back(make_row(s.cfg, "layer-cake.p" + th::format_float(p), "lp.layer-cake", worst,
                                s.cfg.tolerance("layer-cake", 1e-10)));
    }
    for (const auto& [p, qe] : {std::pair{2.0, 1.0}, std::pair{3.0, 2.0}}) {
        const auto rep = th::strong_type_check(K, p, qe, family);
        auto row = make_row(s.cfg, "weak-type.strong.p" + th::format_float(p) + "q" + th::format_float(qe),
                            "lp.weak-strong", std::max(0.0, rep.worst_ratio - rep.bound), 0.0);
        row.lhs = rep.worst_ratio;
        row.rhs = rep.bound;
        row.pass = rep.pass;
        rows.push_back(row);
    }
    {
        const auto rep = th::lr_embedding_check(K, 2.0, 1.0, 3.0, family);
        auto row = make_row(s.cfg, "weak-type.embedding.p2q1r3", "lp.weak-embedding",
                            std::max(0.0, rep.worst_ratio - rep.bound), 0.0);
        row.lhs = rep.worst_ratio;
        row.rhs = rep.bound;
        row.pass = rep.pass;
        rows.push_back(row);
        auto mid = make_row(s.cfg, "weak-type.intermediate", "lp.weak-embedding",
                            std::max(0.0, rep.max_abs - 2.0 * rep.weak_const),
                            s.cfg.tolerance("weak-intermediate", 1e-9));
        mid.lhs = rep.max_abs;
        mid.rhs = 2.0 * rep.weak_const;
        mid.pass = rep.intermediate_pass;
        rows.push_back(mid);
    }
    {
        const auto rep = th::kernel_lq_bound_check(K, 4.0, family);
        auto row = make_row(s.cfg, "kernel-lq", "lp.kernel-bound",
                            std::max(0.0, rep.worst_ratio - rep.bound), 0.0);
        row.lhs = rep.worst_ratio;
        row.rhs = rep.bound;
        row.pass = rep.pass;
        rows.push_back(row);
    }
    return finish(s, "lp", rows);
}

int cmd_suite(Session& s) {
    s.cfg.validate();
    fs::create_directories(s.cfg.out_dir);
    const auto result = th::run_suite(s.cfg);
    {
        std::ofstream jl(s.path("suite_report.jsonl"));
        jl << result.jsonl;
        std::ofstream cs(s.path("suite_summary.csv"));
        cs << result.csv;
    }
    for (const auto& [prefix, label] : th::criterion_groups()) {
        bool pass = true, seen = false;
        double worst = 0.0;
        for (const auto& r : result.rows)
            if (r.name.rfind(prefix, 0) == 0) {
                seen = true;
                pass = pass && r.pass;
                worst = std::max(worst, r.residual);
            }
        if (!seen) continue;
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << label
                  << "  (worst residual " << th::format_float(worst) << ")\n";
    }
    std::cout << (result.all_pass ? "suite: all checks passed\n" : "suite: FAILURES present\n");
    if (!result.all_pass) {
        for (const auto& r : result.rows)
            if (!r.pass)
                std::cout << "  failing: " << r.name << " residual=" << th::format_float(r.residual)
                          << " tol=" << th::format_float(r.tol) << "\n";
    }
    return result.all_pass ? kExitPass : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Harmonic analysis on homogeneous trees: transforms, operator calculus, and checks"};
    app.require_subcommand(1);

    Session s;
    app.set_config("--config")->configurable(false);
    app.add_option("--q", s.cfg.q, "Tree branching parameter (degree q+1)")->capture_default_str();
    app.add_option("--R", s.cfg.R, "Ball radius")->capture_default_str();
    app.add_option("--D", s.cfg.D, "Cell depth (default: R)");
    app.add_option("--M", s.cfg.M, "Spectral node count")->capture_default_str();
    app.add_option("--seed", s.cfg.seed, "Master seed for generated test data")->capture_default_str();
    app.add_option("--out", s.cfg.out_dir, "Output directory")->capture_default_str();
    for (const char* id : {"plancherel-mass", "c-function", "round-trip", "plancherel-identity",
                           "nuclear-kernel", "hs-equality", "trace", "trace-abs", "adjoint", "product",
                           "schatten-s2", "schatten-lemma", "layer-cake", "weak-intermediate",
                           "kernel-lq-tight"}) {
        app.add_option("--tol." + std::string(id),
                       [&s, id](const std::vector<std::string>& vals) {
                           s.cfg.tol[id] = std::stod(vals.at(0));
                           return true;
                       },
                       "Tolerance override for " + std::string(id));
    }

    std::string in_file, out_file, dec_file, dec2_file, kernel_file;
    int pairs = 3, count = 20, family_size = 50;
    std::vector<double> orders;

    auto* build = app.add_subcommand("build", "Construct the ball, cells, and spectral grid; write CSVs");
    auto* transform = app.add_subcommand("transform", "Forward transform of a tree function file");
    transform->add_option("--in", in_file, "Tree function JSON")->required();
    transform->add_option("--out-file", out_file, "Output spectral CSV");
    auto* invert = app.add_subcommand("invert", "Inverse transform of a spectral function file");
    invert->add_option("--in", in_file, "Spectral function CSV")->required();
    invert->add_option("--out-file", out_file, "Output tree function JSON");
    auto* plancherel = app.add_subcommand("plancherel", "Spectral mass and pairing identity checks");
    plancherel->add_option("--count", count, "Number of seeded function pairs")->capture_default_str();
    auto* kernel = app.add_subcommand("kernel", "Assemble the kernel of a decomposition symbol");
    kernel->add_option("--dec", dec_file, "Decomposition JSON (default: seeded)");
    kernel->add_option("--pairs", pairs, "Seeded decomposition size")->capture_default_str();
    auto* hs = app.add_subcommand("hs-check", "Hilbert-Schmidt norm identity check");
    hs->add_option("--dec", dec_file, "Decomposition JSON (default: seeded)");
    hs->add_option("--pairs", pairs, "Seeded decomposition size")->capture_default_str();
    auto* trace = app.add_subcommand("trace-check", "Trace consistency check");
    trace->add_option("--dec", dec_file, "Decomposition JSON (default: seeded)");
    trace->add_option("--pairs", pairs, "Seeded decomposition size")->capture_default_str();
    auto* adjoint = app.add_subcommand("adjoint-check", "Adjoint symbol identity checks");
    adjoint->add_option("--dec", dec_file, "Decomposition JSON (default: seeded)");
    adjoint->add_option("--pairs", pairs, "Seeded decomposition size")->capture_default_str();
    auto* product = app.add_subcommand("product-check", "Product symbol composition check");
    product->add_option("--dec", dec_file, "Left decomposition JSON (default: seeded)");
    product->add_option("--dec2", dec2_file, "Right decomposition JSON (default: seeded)");
    product->add_option("--pairs", pairs, "Seeded decomposition size")->capture_default_str();
    auto* schatten = app.add_subcommand("schatten", "Singular values, Schatten norms, power lemma");
    schatten->add_option("--kernel", kernel_file, "Kernel CSV (default: seeded random)");
    schatten->add_option("--r", orders, "Schatten orders to report");
    auto* lp = app.add_subcommand("lp-report", "Layer-cake, weak-type, and kernel-bound reports");
    lp->add_option("--kernel", kernel_file, "Kernel CSV (default: seeded random)");
    lp->add_option("--family", family_size, "Seeded family size")->capture_default_str();
    auto* suite = app.add_subcommand("suite", "Run the full acceptance suite");

    // global flags may appear after the subcommand name
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (*build) return cmd_build(s);
        if (*transform) return cmd_transform(s, in_file, out_file);
        if (*invert) return cmd_invert(s, in_file, out_file);
        if (*plancherel) return cmd_plancherel(s, count);
        if (*kernel) return cmd_kernel(s, dec_file, pairs);
        if (*hs) return cmd_hs_check(s, dec_file, pairs);
        if (*trace) return cmd_trace_check(s, dec_file, pairs);
        if (*adjoint) return cmd_adjoint_check(s, dec_file, pairs);
        if (*product) return cmd_product_check(s, dec_file, dec2_file, pairs);
        if (*schatten) return cmd_schatten(s, kernel_file, orders);
        if (*lp) return cmd_lp_report(s, kernel_file, family_size);
        if (*suite) return cmd_suite(s);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitConfigError;
}
