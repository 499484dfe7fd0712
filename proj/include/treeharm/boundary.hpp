#pragma once

#include <boost/rational.hpp>
#include <complex>
#include <stdexcept>
#include <vector>

#include "treeharm/tree.hpp"

namespace treeharm {

using Rational = boost::rational<long long>;
using Complex = std::complex<double>;

/// Requested vertex is deeper than the cylinder partition resolves.
struct truncation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// q^e as an exact rational, e of either sign.
Rational rational_q_power(int q, int e);

/// Boundary mass of the set of rays whose confluence with a vertex sits at
/// depth >= j (equivalently: rays through the depth-j ancestor, j >= 1):
/// q / ((q+1) q^j). Also the exact level-set mass at j = 0 and j = |x|.
Rational level_set_measure(int q, int j);

/// Depth-D discretization of the tree boundary: one cell per depth-D vertex y
/// (all rays through y), each carrying mass 1/((q+1) q^{D-1}).
/// Heights h_c(x) = 2 depth(confluence(x, y_c)) - depth(x) are exact for
/// every vertex with depth(x) <= D and are precomputed.
/// Immutable after construction; concurrent reads are safe.
class CylinderPartition {
public:
    CylinderPartition(const TreeBall& ball, int D);

    const TreeBall& ball() const { return *ball_; }
    int depth() const { return D_; }
    int count() const { return static_cast<int>(cyl_.size()); }
    int cylinder_vertex(int c) const { return cyl_[check_cyl(c)]; }

    Rational weight_exact() const { return weight_exact_; }
    double weight() const { return weight_; }

    /// h_c(x); requires depth(x) <= D, else truncation_error.
    int height(int x, int c) const;
    /// h_c(x) - h_c(x0); requires depth(x), depth(x0) <= D.
    int height_rel(int x, int x0, int c) const;
    /// Density of the x-based against the y-based boundary measure on the
    /// cell: q^{h_c(y) - h_c(x)}. Multiplicative cocycle in (x, y).
    Rational radon_nikodym(int x, int y, int c) const;

    /// Depth-n ancestor of the cell's representative vertex, 0 <= n <= D.
    int ancestor_at(int c, int n) const;

    /// Unchecked height lookup for vertices known to satisfy depth(x) <= D.
    int height_unchecked(int x, int c) const { return heights_[static_cast<std::size_t>(x) * cyl_.size() + c]; }

private:
    int check_cyl(int c) const {
        if (c < 0 || c >= count()) throw std::out_of_range("CylinderPartition: cell index out of range");
        return c;
    }
    void check_depth(int x) const;

    const TreeBall* ball_;
    int D_;
    std::vector<int> cyl_;        // depth-D vertices, BFS order
    std::vector<int> heights_;    // (x, c) row-major; rows with depth(x) > D are unset
    Rational weight_exact_;
    double weight_;
};

/// Complex values on the cells of a partition (s-independent boundary data).
struct BoundaryFunction {
    const CylinderPartition* part = nullptr;
    std::vector<Complex> values;

    static BoundaryFunction zero(const CylinderPartition& p) {
        return {&p, std::vector<Complex>(static_cast<std::size_t>(p.count()), Complex{})};
    }
};

/// Conditional expectation onto depth-n cells: replaces F on each group of
/// cells sharing a depth-n ancestor by the mass-weighted group average.
/// n = D is the identity, n = 0 the global mean.
BoundaryFunction averaging(const CylinderPartition& part, const BoundaryFunction& F, int n);

/// Grouping of cells by their depth-n ancestor: contiguous [begin, end) index
/// ranges in cell order.
std::vector<std::pair<int, int>> cell_groups(const CylinderPartition& part, int n);

/// Mass-weighted sum realizing the boundary integral of F.
Complex boundary_integral(const CylinderPartition& part, const BoundaryFunction& F);

}  // namespace treeharm
