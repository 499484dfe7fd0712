#include "treeharm/transform.hpp"

#include <cmath>

namespace treeharm {

HeightPowerTable::HeightPowerTable(int q, const SpectralGrid& grid, int hmax)
    : hmax_(hmax), M_(grid.M), table_(static_cast<std::size_t>(2 * hmax + 1) * grid.M) {
    const double lq = std::log(static_cast<double>(q));
    for (int h = -hmax; h <= hmax; ++h) {
        Complex* r = table_.data() + static_cast<std::size_t>(h + hmax) * M_;
        const double mag = std::exp(0.5 * h * lq);
        for (int m = 0; m < M_; ++m)
            r[m] = std::polar(mag, grid.nodes[m] * h * lq);
    }
}

void require_resolving(const CylinderPartition& part) {
    if (part.depth() < part.ball().radius())
        throw truncation_error("partition depth D < ball radius R: heights would be truncated");
}

namespace {

void check_tree_function(const TreeFunction& f) {
    if (f.ball == nullptr || static_cast<int>(f.values.size()) != f.ball->size())
        throw std::invalid_argument("tree function does not match its ball");
}

void check_spectral_function(const SpectralFunction& F) {
    if (F.part == nullptr || F.grid == nullptr ||
        F.values.size() != static_cast<std::size_t>(F.part->count()) * F.grid->M)
        throw std::invalid_argument("spectral function does not match its partition/grid");
}

}  // namespace

SpectralFunction fh_forward(const TreeFunction& f, const CylinderPartition& part, const SpectralGrid& grid) {
    check_tree_function(f);
    require_resolving(part);
    if (&part.ball() != f.ball && part.ball().size() != f.ball->size())
        throw std::invalid_argument("fh_forward: partition built over a different ball");

    const int M = grid.M;
    const HeightPowerTable pw(grid.q, grid, part.depth());
    auto F = SpectralFunction::zero(part, grid);
    for (int y = 0; y < f.ball->size(); ++y) {
        const Complex fy = f.values[y];
        if (fy == Complex{}) continue;
        for (int c = 0; c < part.count(); ++c) {
            const Complex* row = pw.row(part.height_unchecked(y, c));
            Complex* out = F.row(c);
            for (int m = 0; m < M; ++m) out[m] += fy * row[m];
        }
    }
    return F;
}

TreeFunction fh_inverse(const SpectralFunction& F, const TreeBall& ball) {
    check_spectral_function(F);
    const auto& part = *F.part;
    require_resolving(part);
    if (&part.ball() != &ball && part.ball().size() != ball.size())
        throw std::invalid_argument("fh_inverse: spectral function lives over a different ball");

    const auto& grid = *F.grid;
    const int M = grid.M;
    const HeightPowerTable pw(grid.q, grid, part.depth());
    const double nu = part.weight();

    auto f = TreeFunction::zero(ball);
    for (int x = 0; x < ball.size(); ++x) {
        Complex acc{};
        for (int c = 0; c < part.count(); ++c) {
            const Complex* row = pw.row(part.height_unchecked(x, c));
            const Complex* Fc = F.row(c);
            Complex cell{};
            for (int m = 0; m < M; ++m) cell += grid.plancherel_weights[m] * std::conj(row[m]) * Fc[m];
            acc += cell;
        }
        f.values[x] = nu * acc;
    }
    return f;
}

Complex plancherel_pairing(const SpectralFunction& F, const SpectralFunction& G) {
    check_spectral_function(F);
    check_spectral_function(G);
    if (F.part->count() != G.part->count() || F.grid->M != G.grid->M)
        throw std::invalid_argument("plancherel_pairing: dimension mismatch");
    const auto& grid = *F.grid;
    Complex acc{};
    for (int c = 0; c < F.part->count(); ++c) {
        const Complex* Fc = F.row(c);
        const Complex* Gc = G.row(c);
        Complex cell{};
        for (int m = 0; m < grid.M; ++m) cell += grid.plancherel_weights[m] * Fc[m] * std::conj(Gc[m]);
        acc += cell;
    }
    return F.part->weight() * acc;
}

SpectralFunction averaging(const SpectralFunction& F, int n) {
    check_spectral_function(F);
    const int M = F.grid->M;
    SpectralFunction out = F;
    for (const auto& [begin, end] : cell_groups(*F.part, n)) {
        for (int m = 0; m < M; ++m) {
            Complex sum{};
            for (int c = begin; c < end; ++c) sum += F.at(c, m);
            const Complex mean = sum / static_cast<double>(end - begin);
            for (int c = begin; c < end; ++c) out.at(c, m) = mean;
        }
    }
    return out;
}

Complex inner_product(const TreeFunction& f, const TreeFunction& g) {
    check_tree_function(f);
    check_tree_function(g);
    if (f.values.size() != g.values.size())
        throw std::invalid_argument("inner_product: dimension mismatch");
    Complex acc{};
    for (std::size_t i = 0; i < f.values.size(); ++i) acc += f.values[i] * std::conj(g.values[i]);
    return acc;
}

double l2_norm(const TreeFunction& f) {
    check_tree_function(f);
    double acc = 0.0;
    for (const auto& v : f.values) acc += std::norm(v);
    return std::sqrt(acc);
}

double max_abs(const TreeFunction& f) {
    check_tree_function(f);
    double acc = 0.0;
    for (const auto& v : f.values) acc = std::max(acc, std::abs(v));
    return acc;
}

}  // namespace treeharm
