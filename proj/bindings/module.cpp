#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "treeharm/lp.hpp"
#include "treeharm/oracle.hpp"
#include "treeharm/rng.hpp"
#include "treeharm/suite.hpp"

namespace py = pybind11;
using namespace treeharm;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

TreeFunction tree_function_from(const TreeBall& ball, const CArray& arr) {
    if (arr.ndim() != 1 || arr.shape(0) != ball.size())
        throw std::invalid_argument("expected a 1-d complex array of length ball.size()");
    TreeFunction f = TreeFunction::zero(ball);
    std::copy(arr.data(), arr.data() + ball.size(), f.values.begin());
    return f;
}

py::array_t<Complex> array_from(const TreeFunction& f) {
    py::array_t<Complex> out(static_cast<py::ssize_t>(f.values.size()));
    std::copy(f.values.begin(), f.values.end(), out.mutable_data());
    return out;
}

SpectralFunction spectral_from(const CylinderPartition& part, const SpectralGrid& grid, const CArray& arr) {
    if (arr.ndim() != 2 || arr.shape(0) != part.count() || arr.shape(1) != grid.M)
        throw std::invalid_argument("expected a complex array of shape (cells, nodes)");
    auto F = SpectralFunction::zero(part, grid);
    std::copy(arr.data(), arr.data() + F.values.size(), F.values.begin());
    return F;
}

py::array_t<Complex> array_from(const SpectralFunction& F) {
    py::array_t<Complex> out({static_cast<py::ssize_t>(F.part->count()), static_cast<py::ssize_t>(F.grid->M)});
    std::copy(F.values.begin(), F.values.end(), out.mutable_data());
    return out;
}

GridSymbol symbol_from(const TreeBall& ball, const CylinderPartition& part, const SpectralGrid& grid,
                       const CArray& arr) {
    if (arr.ndim() != 3 || arr.shape(0) != ball.size() || arr.shape(1) != part.count() ||
        arr.shape(2) != grid.M)
        throw std::invalid_argument("expected a complex array of shape (vertices, cells, nodes)");
    auto s = GridSymbol::zero(ball, part, grid);
    std::copy(arr.data(), arr.data() + s.values.size(), s.values.begin());
    return s;
}

py::array_t<Complex> array_from(const GridSymbol& s) {
    py::array_t<Complex> out({static_cast<py::ssize_t>(s.ball->size()),
                              static_cast<py::ssize_t>(s.part->count()),
                              static_cast<py::ssize_t>(s.grid->M)});
    std::copy(s.values.begin(), s.values.end(), out.mutable_data());
    return out;
}

NuclearDecomposition dec_from(const TreeBall& ball, const std::vector<std::pair<CArray, CArray>>& pairs) {
    NuclearDecomposition dec;
    for (const auto& [f, g] : pairs)
        dec.pairs.emplace_back(tree_function_from(ball, f), tree_function_from(ball, g));
    return dec;
}

std::vector<TreeFunction> family_from(const TreeBall& ball, const std::vector<CArray>& arrs) {
    std::vector<TreeFunction> out;
    out.reserve(arrs.size());
    for (const auto& a : arrs) out.push_back(tree_function_from(ball, a));
    return out;
}

py::dict dict_from(const WeakTypeReport& r) {
    py::dict d;
    d["p"] = r.p;
    d["q_exp"] = r.q_exp;
    d["r"] = r.r;
    d["weak_const"] = r.weak_const;
    d["bound"] = r.bound;
    d["series_value"] = r.series_value;
    d["worst_ratio"] = r.worst_ratio;
    d["worst_index"] = r.worst_index;
    d["max_abs"] = r.max_abs;
    d["intermediate_pass"] = r.intermediate_pass;
    d["pass"] = r.pass;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Harmonic analysis on homogeneous trees: transforms, operator calculus, norm checks";

    py::register_exception<truncation_error>(m, "TruncationError", PyExc_ValueError);

    py::class_<TreeBall>(m, "TreeBall")
        .def(py::init<int, int>(), py::arg("q"), py::arg("R"))
        .def_property_readonly("q", &TreeBall::q)
        .def_property_readonly("R", &TreeBall::radius)
        .def("__len__", &TreeBall::size)
        .def_property_readonly("size", &TreeBall::size)
        .def("depth", &TreeBall::depth, py::arg("v"))
        .def("parent", &TreeBall::parent, py::arg("v"))
        .def("children", &TreeBall::children, py::arg("v"))
        .def("confluence", &TreeBall::confluence, py::arg("x"), py::arg("y"))
        .def("distance", &TreeBall::distance, py::arg("x"), py::arg("y"))
        .def("geodesic", &TreeBall::geodesic, py::arg("x"), py::arg("y"))
        .def_static("ball_size", &TreeBall::ball_size, py::arg("q"), py::arg("R"));

    py::class_<CylinderPartition>(m, "CylinderPartition")
        .def(py::init<const TreeBall&, int>(), py::arg("ball"), py::arg("D"), py::keep_alive<1, 2>())
        .def_property_readonly("D", &CylinderPartition::depth)
        .def_property_readonly("count", &CylinderPartition::count)
        .def("cylinder_vertex", &CylinderPartition::cylinder_vertex, py::arg("c"))
        .def_property_readonly("weight", &CylinderPartition::weight)
        .def("height", &CylinderPartition::height, py::arg("x"), py::arg("c"))
        .def("height_rel", &CylinderPartition::height_rel, py::arg("x"), py::arg("x0"), py::arg("c"))
        .def("radon_nikodym",
             [](const CylinderPartition& p, int x, int y, int c) {
                 const Rational v = p.radon_nikodym(x, y, c);
                 return std::pair<long long, long long>(v.numerator(), v.denominator());
             },
             py::arg("x"), py::arg("y"), py::arg("c"),
             "Exact value as a (numerator, denominator) pair")
        .def("ancestor_at", &CylinderPartition::ancestor_at, py::arg("c"), py::arg("n"));

    m.def("level_set_measure", [](int q, int j) {
        const Rational v = level_set_measure(q, j);
        return std::pair<long long, long long>(v.numerator(), v.denominator());
    }, py::arg("q"), py::arg("j"), "Exact value as a (numerator, denominator) pair");

    m.def("averaging", [](const CylinderPartition& part, const CArray& values, int n) {
        BoundaryFunction F{&part, std::vector<Complex>(values.data(), values.data() + values.shape(0))};
        if (F.values.size() != static_cast<std::size_t>(part.count()))
            throw std::invalid_argument("expected one value per cell");
        const auto out = averaging(part, F, n);
        py::array_t<Complex> res(static_cast<py::ssize_t>(out.values.size()));
        std::copy(out.values.begin(), out.values.end(), res.mutable_data());
        return res;
    }, py::arg("part"), py::arg("values"), py::arg("n"));

    m.def("boundary_integral", [](const CylinderPartition& part, const CArray& values) {
        BoundaryFunction F{&part, std::vector<Complex>(values.data(), values.data() + values.shape(0))};
        if (F.values.size() != static_cast<std::size_t>(part.count()))
            throw std::invalid_argument("expected one value per cell");
        return boundary_integral(part, F);
    }, py::arg("part"), py::arg("values"));

    py::class_<SpectralGrid>(m, "SpectralGrid")
        .def_readonly("q", &SpectralGrid::q)
        .def_readonly("tau", &SpectralGrid::tau)
        .def_readonly("M", &SpectralGrid::M)
        .def_property_readonly("nodes", [](const SpectralGrid& g) { return py::cast(g.nodes); })
        .def_property_readonly("base_weights", [](const SpectralGrid& g) { return py::cast(g.base_weights); })
        .def_property_readonly("plancherel_weights",
                               [](const SpectralGrid& g) { return py::cast(g.plancherel_weights); });

    m.def("spectral_period", &spectral_period, py::arg("q"));
    m.def("plancherel_prefactor", &plancherel_prefactor, py::arg("q"));
    m.def("c_function", &c_function, py::arg("q"), py::arg("z"));
    m.def("plancherel_density", &plancherel_density, py::arg("q"), py::arg("s"));
    m.def("build_grid", &build_grid, py::arg("q"), py::arg("M") = 256);
    m.def("total_mass", &total_mass, py::arg("grid"));

    m.def("fh_forward", [](const TreeBall& ball, const CylinderPartition& part, const SpectralGrid& grid,
                           const CArray& f) {
        return array_from(fh_forward(tree_function_from(ball, f), part, grid));
    }, py::arg("ball"), py::arg("part"), py::arg("grid"), py::arg("f"));

    m.def("fh_inverse", [](const TreeBall& ball, const CylinderPartition& part, const SpectralGrid& grid,
                           const CArray& F) {
        return array_from(fh_inverse(spectral_from(part, grid, F), ball));
    }, py::arg("ball"), py::arg("part"), py::arg("grid"), py::arg("F"));

    m.def("plancherel_pairing", [](const CylinderPartition& part, const SpectralGrid& grid,
                                   const CArray& F, const CArray& G) {
        return plancherel_pairing(spectral_from(part, grid, F), spectral_from(part, grid, G));
    }, py::arg("part"), py::arg("grid"), py::arg("F"), py::arg("G"));

    m.def("apply_symbol", [](const TreeBall& ball, const CylinderPartition& part, const SpectralGrid& grid,
                             const CArray& sigma, const CArray& f) {
        return array_from(apply(symbol_from(ball, part, grid, sigma), tree_function_from(ball, f)));
    }, py::arg("ball"), py::arg("part"), py::arg("grid"), py::arg("sigma"), py::arg("f"));

    m.def("kernel_from_symbol", [](const TreeBall& ball, const CylinderPartition& part,
                                   const SpectralGrid& grid, const CArray& sigma) {
        return KernelMatrix(kernel_from_symbol(symbol_from(ball, part, grid, sigma)));
    }, py::arg("ball"), py::arg("part"), py::arg("grid"), py::arg("sigma"));

    m.def("symbol_from_decomposition", [](const TreeBall& ball, const CylinderPartition& part,
                                          const SpectralGrid& grid,
                                          const std::vector<std::pair<CArray, CArray>>& pairs) {
        return array_from(symbol_from_decomposition(dec_from(ball, pairs), ball, part, grid));
    }, py::arg("ball"), py::arg("part"), py::arg("grid"), py::arg("pairs"));

    m.def("b_function", [](const TreeBall& ball, const CylinderPartition& part, const SpectralGrid& grid,
                           const CArray& sigma) {
        return array_from(b_function(symbol_from(ball, part, grid, sigma)));
    }, py::arg("ball"), py::arg("part"), py::arg("grid"), py::arg("sigma"));

    m.def("hs_norm_via_b", [](const TreeBall& ball, const CylinderPartition& part, const SpectralGrid& grid,
                              const CArray& sigma) {
        return hs_norm_via_b(symbol_from(ball, part, grid, sigma));
    }, py::arg("ball"), py::arg("part"), py::arg("grid"), py::arg("sigma"));

    m.def("hs_norm_via_kernel", &hs_norm_via_kernel, py::arg("K"));
    m.def("singular_values", &singular_values, py::arg("K"));
    m.def("schatten_norm", &schatten_norm, py::arg("K"), py::arg("r"));
    m.def("lemma_schatten_power_check", &lemma_schatten_power_check, py::arg("K"), py::arg("r"), py::arg("t"));
    m.def("trace_via_kernel", &trace_via_kernel, py::arg("K"));
    m.def("selfadjoint_residual", &selfadjoint_residual, py::arg("K"));
    m.def("normal_residual", &normal_residual, py::arg("K"));
    m.def("operator_norm_estimate", &operator_norm_estimate, py::arg("K"),
          py::arg("seed") = 0x746f6c73746f79ULL, py::arg("max_iters") = 200, py::arg("rel_tol") = 1e-12);

    m.def("trace_via_symbol", [](const TreeBall& ball, const CylinderPartition& part,
                                 const SpectralGrid& grid, const CArray& sigma) {
        return trace_via_symbol(symbol_from(ball, part, grid, sigma));
    }, py::arg("ball"), py::arg("part"), py::arg("grid"), py::arg("sigma"));

    m.def("operator_report", [](const TreeBall& ball, const CylinderPartition& part,
                                const SpectralGrid& grid, const CArray& sigma,
                                const std::vector<double>& schatten_orders) {
        const auto rep = operator_report(symbol_from(ball, part, grid, sigma), schatten_orders);
        py::dict d;
        d["frobenius"] = rep.frobenius;
        d["hs_via_b"] = rep.hs_via_b;
        d["singular_values"] = rep.singular;
        py::dict sn;
        for (const auto& [r, v] : rep.schatten) sn[py::cast(r)] = v;
        d["schatten"] = sn;
        d["trace_symbol"] = rep.trace_symbol;
        d["trace_kernel"] = rep.trace_kernel;
        d["op_norm"] = rep.op_norm;
        d["selfadjoint_residual"] = rep.selfadjoint_resid;
        d["normal_residual"] = rep.normal_resid;
        return d;
    }, py::arg("ball"), py::arg("part"), py::arg("grid"), py::arg("sigma"),
       py::arg("schatten_orders") = std::vector<double>{1.0, 2.0});

    m.def("adjoint_symbol", [](const TreeBall& ball, const CylinderPartition& part, const SpectralGrid& grid,
                               const std::vector<std::pair<CArray, CArray>>& pairs) {
        return array_from(adjoint_symbol(dec_from(ball, pairs), ball, part, grid));
    }, py::arg("ball"), py::arg("part"), py::arg("grid"), py::arg("pairs"));

    m.def("adjoint_symbol_direct", [](const TreeBall& ball, const CylinderPartition& part,
                                      const SpectralGrid& grid, const CArray& sigma) {
        return array_from(adjoint_symbol_direct(symbol_from(ball, part, grid, sigma)));
    }, py::arg("ball"), py::arg("part"), py::arg("grid"), py::arg("sigma"));

    m.def("product_symbol", [](const TreeBall& ball, const CylinderPartition& part, const SpectralGrid& grid,
                               const std::vector<std::pair<CArray, CArray>>& eta,
                               const std::vector<std::pair<CArray, CArray>>& sigma) {
        return array_from(product_symbol(dec_from(ball, eta), dec_from(ball, sigma), ball, part, grid));
    }, py::arg("ball"), py::arg("part"), py::arg("grid"), py::arg("eta"), py::arg("sigma"));

    m.def("outer_product_kernel", [](const TreeBall& ball,
                                     const std::vector<std::pair<CArray, CArray>>& pairs) {
        return KernelMatrix(outer_product_kernel(dec_from(ball, pairs), ball.size()));
    }, py::arg("ball"), py::arg("pairs"));

    m.def("nuclear_norm_bound", [](const TreeBall& ball, const std::vector<std::pair<CArray, CArray>>& pairs,
                                   double p1, double p2) {
        return nuclear_norm_bound(dec_from(ball, pairs), p1, p2);
    }, py::arg("ball"), py::arg("pairs"), py::arg("p1"), py::arg("p2"));

    m.def("l2_bound_check", [](const TreeBall& ball, const CylinderPartition& part, const SpectralGrid& grid,
                               const CArray& sigma, const CArray& v, double C) {
        const auto rep = l2_bound_check(symbol_from(ball, part, grid, sigma), tree_function_from(ball, v), C);
        py::dict d;
        d["premise_holds"] = rep.premise_holds;
        d["violation_count"] = rep.violation_count;
        py::list wit;
        for (const auto& w : rep.witnesses) wit.append(py::make_tuple(w.x, w.c, w.m, w.lhs, w.rhs));
        d["witnesses"] = wit;
        d["op_norm"] = rep.op_norm;
        d["v_norm"] = rep.v_norm;
        d["measured_ratio"] = rep.measured_ratio;
        return d;
    }, py::arg("ball"), py::arg("part"), py::arg("grid"), py::arg("sigma"), py::arg("v"), py::arg("C"));

    // L^p machinery: functions take the ball plus plain arrays.
    m.def("lp_norm", [](const TreeBall& ball, const CArray& f, double p) {
        return lp_norm(tree_function_from(ball, f), p);
    }, py::arg("ball"), py::arg("f"), py::arg("p"));
    m.def("layercake_residual", [](const TreeBall& ball, const CArray& f, double p) {
        return layercake_residual(tree_function_from(ball, f), p);
    }, py::arg("ball"), py::arg("f"), py::arg("p"));
    m.def("weak_norm", [](const TreeBall& ball, const CArray& f, double q_exp) {
        return weak_norm(tree_function_from(ball, f), q_exp);
    }, py::arg("ball"), py::arg("f"), py::arg("q_exp"));
    m.def("weak_constant", [](const TreeBall& ball, const KernelMatrix& K, double p, double q_exp,
                              const std::vector<CArray>& family) {
        return weak_constant(K, p, q_exp, family_from(ball, family));
    }, py::arg("ball"), py::arg("K"), py::arg("p"), py::arg("q_exp"), py::arg("family"));
    m.def("strong_type_check", [](const TreeBall& ball, const KernelMatrix& K, double p, double q_exp,
                                  const std::vector<CArray>& family) {
        return dict_from(strong_type_check(K, p, q_exp, family_from(ball, family)));
    }, py::arg("ball"), py::arg("K"), py::arg("p"), py::arg("q_exp"), py::arg("family"));
    m.def("lr_embedding_check", [](const TreeBall& ball, const KernelMatrix& K, double p, double q_exp,
                                   double r, const std::vector<CArray>& family) {
        return dict_from(lr_embedding_check(K, p, q_exp, r, family_from(ball, family)));
    }, py::arg("ball"), py::arg("K"), py::arg("p"), py::arg("q_exp"), py::arg("r"), py::arg("family"));
    m.def("kernel_lq_bound_check", [](const TreeBall& ball, const KernelMatrix& K, double p,
                                      const std::vector<CArray>& family) {
        const auto rep = kernel_lq_bound_check(K, p, family_from(ball, family));
        py::dict d;
        d["p"] = rep.p;
        d["q_exp"] = rep.q_exp;
        d["bound"] = rep.bound;
        d["worst_ratio"] = rep.worst_ratio;
        d["worst_index"] = rep.worst_index;
        d["pass"] = rep.pass;
        return d;
    }, py::arg("ball"), py::arg("K"), py::arg("p"), py::arg("family"));
    m.def("weak_series_sum", &weak_series_sum, py::arg("q_exp"), py::arg("r"));

    // Seeded generators (SplitMix64 substreams; see the README for the recipe).
    m.def("random_tree_function", [](const TreeBall& ball, std::uint64_t seed) {
        SplitMix64 rng(seed);
        return array_from(random_tree_function(ball, rng));
    }, py::arg("ball"), py::arg("seed"));
    m.def("random_decomposition", [](const TreeBall& ball, int pairs, std::uint64_t seed) {
        SplitMix64 rng(seed);
        const auto dec = random_decomposition(ball, pairs, rng);
        py::list out;
        for (const auto& [f, g] : dec.pairs) out.append(py::make_tuple(array_from(f), array_from(g)));
        return out;
    }, py::arg("ball"), py::arg("pairs"), py::arg("seed"));
    m.def("random_kernel", [](int n, std::uint64_t seed) {
        SplitMix64 rng(seed);
        return KernelMatrix(random_kernel(n, rng));
    }, py::arg("n"), py::arg("seed"));
    m.def("derive_seed", [](std::uint64_t master, const std::string& tag) { return derive_seed(master, tag); },
          py::arg("master"), py::arg("tag"));

    m.def("run_suite", [](int R, int M, std::uint64_t seed) {
        RunConfig cfg;
        cfg.R = R;
        cfg.M = M;
        cfg.seed = seed;
        const auto result = run_suite(cfg);
        py::list rows;
        for (const auto& r : result.rows) {
            py::dict d;
            d["name"] = r.name;
            d["claim"] = r.claim;
            d["digest"] = r.digest;
            d["lhs"] = r.lhs;
            d["rhs"] = r.rhs;
            d["residual"] = r.residual;
            d["tol"] = r.tol;
            d["pass"] = r.pass;
            d["wall_ms"] = r.wall_ms;
            rows.append(d);
        }
        py::dict out;
        out["all_pass"] = result.all_pass;
        out["rows"] = rows;
        out["jsonl"] = result.jsonl;
        return out;
    }, py::arg("R") = 4, py::arg("M") = 256, py::arg("seed") = 42,
       "Run the acceptance checks; heavy at defaults, pass a smaller R/M for a quick pass");
}
