#include "treeharm/boundary.hpp"

namespace treeharm {

Rational rational_q_power(int q, int e) {
    long long p = 1;
    for (int i = 0; i < std::abs(e); ++i) p *= q;
    return e >= 0 ? Rational(p) : Rational(1, p);
}

Rational level_set_measure(int q, int j) {
    if (q < 2) throw std::invalid_argument("level_set_measure: q must be >= 2");
    if (j < 0) throw std::invalid_argument("level_set_measure: j must be >= 0");
    return Rational(q) / (Rational(q + 1) * rational_q_power(q, j));
}

CylinderPartition::CylinderPartition(const TreeBall& ball, int D) : ball_(&ball), D_(D) {
    if (D < 1) throw std::invalid_argument("CylinderPartition: depth D must be >= 1");
    if (D > ball.radius()) throw std::invalid_argument("CylinderPartition: depth D exceeds ball radius");

    for (int v = 0; v < ball.size(); ++v)
        if (ball.depth(v) == D) cyl_.push_back(v);

    weight_exact_ = Rational(1) / (Rational(ball.q() + 1) * rational_q_power(ball.q(), D - 1));
    weight_ = boost::rational_cast<double>(weight_exact_);

    const auto ncyl = cyl_.size();
    heights_.assign(static_cast<std::size_t>(ball.size()) * ncyl, 0);
    for (int x = 0; x < ball.size(); ++x) {
        if (ball.depth(x) > D) continue;
        for (std::size_t c = 0; c < ncyl; ++c)
            heights_[static_cast<std::size_t>(x) * ncyl + c] =
                2 * ball.depth(ball.confluence(x, cyl_[c])) - ball.depth(x);
    }
}

void CylinderPartition::check_depth(int x) const {
    if (ball_->depth(x) > D_)
        throw truncation_error("CylinderPartition: vertex deeper than partition depth D");
}

int CylinderPartition::height(int x, int c) const {
    check_cyl(c);
    check_depth(x);
    return height_unchecked(x, c);
}

int CylinderPartition::height_rel(int x, int x0, int c) const {
    return height(x, c) - height(x0, c);
}

Rational CylinderPartition::radon_nikodym(int x, int y, int c) const {
    return rational_q_power(ball_->q(), height_rel(y, x, c));
}

int CylinderPartition::ancestor_at(int c, int n) const {
    if (n < 0 || n > D_) throw std::invalid_argument("CylinderPartition: ancestor depth out of range");
    int v = cyl_[check_cyl(c)];
    while (ball_->depth(v) > n) v = ball_->parent(v);
    return v;
}

std::vector<std::pair<int, int>> cell_groups(const CylinderPartition& part, int n) {
    if (n < 0 || n > part.depth())
        throw std::invalid_argument("averaging: level n must satisfy 0 <= n <= D");
    // Cells sharing a depth-n ancestor are contiguous in BFS order.
    std::vector<std::pair<int, int>> groups;
    int begin = 0;
    while (begin < part.count()) {
        const int anchor = part.ancestor_at(begin, n);
        int end = begin;
        while (end < part.count() && part.ancestor_at(end, n) == anchor) ++end;
        groups.emplace_back(begin, end);
        begin = end;
    }
    return groups;
}

BoundaryFunction averaging(const CylinderPartition& part, const BoundaryFunction& F, int n) {
    if (F.part != &part || static_cast<int>(F.values.size()) != part.count())
        throw std::invalid_argument("averaging: boundary function does not match partition");

    // All cells carry equal mass, so the weighted average is the plain mean.
    BoundaryFunction out = F;
    for (const auto& [begin, end] : cell_groups(part, n)) {
        Complex sum{};
        for (int c = begin; c < end; ++c) sum += F.values[c];
        const Complex mean = sum / static_cast<double>(end - begin);
        for (int c = begin; c < end; ++c) out.values[c] = mean;
    }
    return out;
}

Complex boundary_integral(const CylinderPartition& part, const BoundaryFunction& F) {
    if (F.part != &part || static_cast<int>(F.values.size()) != part.count())
        throw std::invalid_argument("boundary_integral: boundary function does not match partition");
    Complex sum{};
    for (const auto& v : F.values) sum += v;
    return part.weight() * sum;
}

}  // namespace treeharm
