#pragma once

#include <complex>
#include <vector>

#include "treeharm/boundary.hpp"
#include "treeharm/spectral.hpp"
#include "treeharm/tree.hpp"

namespace treeharm {

/// Complex function on the vertices of a ball (finitely supported by construction).
struct TreeFunction {
    const TreeBall* ball = nullptr;
    std::vector<Complex> values;

    static TreeFunction zero(const TreeBall& b) {
        return {&b, std::vector<Complex>(static_cast<std::size_t>(b.size()), Complex{})};
    }
    static TreeFunction delta(const TreeBall& b, int vertex) {
        auto f = zero(b);
        f.values.at(static_cast<std::size_t>(vertex)) = 1.0;
        return f;
    }
};

/// Complex function on the (cell, spectral node) grid.
struct SpectralFunction {
    const CylinderPartition* part = nullptr;
    const SpectralGrid* grid = nullptr;
    std::vector<Complex> values;  // (cell, node) row-major

    Complex& at(int c, int m) { return values[static_cast<std::size_t>(c) * grid->M + m]; }
    Complex at(int c, int m) const { return values[static_cast<std::size_t>(c) * grid->M + m]; }
    Complex* row(int c) { return values.data() + static_cast<std::size_t>(c) * grid->M; }
    const Complex* row(int c) const { return values.data() + static_cast<std::size_t>(c) * grid->M; }

    static SpectralFunction zero(const CylinderPartition& p, const SpectralGrid& g) {
        return {&p, &g, std::vector<Complex>(static_cast<std::size_t>(p.count()) * g.M, Complex{})};
    }
};

/// Lookup table of q^{(1/2 + i s_m) h} for integer heights |h| <= hmax.
/// The (1/2 - is) variant is the complex conjugate.
class HeightPowerTable {
public:
    HeightPowerTable(int q, const SpectralGrid& grid, int hmax);

    /// q^{(1/2 + i s_m) h}
    Complex plus(int h, int m) const { return row(h)[m]; }
    /// q^{(1/2 - i s_m) h}
    Complex minus(int h, int m) const { return std::conj(row(h)[m]); }
    const Complex* row(int h) const { return table_.data() + static_cast<std::size_t>(h + hmax_) * M_; }
    int hmax() const { return hmax_; }

private:
    int hmax_;
    int M_;
    std::vector<Complex> table_;
};

/// Forward transform: F(c, m) = sum_y f(y) q^{(1/2 + i s_m) h_c(y)}.
/// Exact in the boundary variable (heights are constant on cells); requires
/// the partition to resolve the whole ball (D >= R).
SpectralFunction fh_forward(const TreeFunction& f, const CylinderPartition& part, const SpectralGrid& grid);

/// Inverse transform: f(x) = sum_c nu_c sum_m w_m q^{(1/2 - i s_m) h_c(x)} F(c, m).
TreeFunction fh_inverse(const SpectralFunction& F, const TreeBall& ball);

/// sum_c nu_c sum_m w_m F(c, m) conj(G(c, m)).
Complex plancherel_pairing(const SpectralFunction& F, const SpectralFunction& G);

/// Depth-n averaging applied per spectral node.
SpectralFunction averaging(const SpectralFunction& F, int n);

/// sum_x f(x) conj(g(x)).
Complex inner_product(const TreeFunction& f, const TreeFunction& g);

double l2_norm(const TreeFunction& f);
double max_abs(const TreeFunction& f);

/// Throws truncation_error unless the partition resolves the ball (D >= R).
void require_resolving(const CylinderPartition& part);

}  // namespace treeharm
