#include <doctest.h>

#include "treeharm/boundary.hpp"
#include "treeharm/rng.hpp"

using namespace treeharm;

namespace {

// deepest descendant of v along first children, used to pick a cell under v
int first_cell_under(const CylinderPartition& part, int v) {
    for (int c = 0; c < part.count(); ++c) {
        int u = part.cylinder_vertex(c);
        while (part.ball().depth(u) > part.ball().depth(v)) u = part.ball().parent(u);
        if (u == v) return c;
    }
    FAIL("no cell under vertex");
    return -1;
}

}  // namespace

TEST_CASE("cell counts and exact unit mass") {
    for (const int q : {2, 3, 5})
        for (int D = 1; D <= 4; ++D) {
            const TreeBall ball(q, D);
            const CylinderPartition part(ball, D);
            int expect = q + 1;
            for (int j = 1; j < D; ++j) expect *= q;
            CHECK(part.count() == expect);
            Rational total(0);
            for (int c = 0; c < part.count(); ++c) total += part.weight_exact();
            CHECK(total == Rational(1));
        }
}

TEST_CASE("heights: examples, parity, range, truncation") {
    const TreeBall ball(2, 3);
    const CylinderPartition part(ball, 3);
    for (int c = 0; c < part.count(); ++c) CHECK(part.height(0, c) == 0);

    const int x = ball.children(ball.children(0)[0])[0];  // depth 2
    CHECK(part.height(x, first_cell_under(part, x)) == 2);
    const int other_branch = ball.children(0)[1];
    CHECK(part.height(x, first_cell_under(part, other_branch)) == -2);

    for (int v = 0; v < ball.size(); ++v)
        for (int c = 0; c < part.count(); ++c) {
            const int h = part.height(v, c);
            CHECK(std::abs(h) <= ball.depth(v));
            CHECK((h - ball.depth(v)) % 2 == 0);
        }

    const CylinderPartition shallow(ball, 2);
    CHECK_THROWS_AS(shallow.height(part.cylinder_vertex(0), 0), truncation_error);
    CHECK_NOTHROW(shallow.height(x, 0));
}

TEST_CASE("relative heights") {
    const TreeBall ball(2, 3);
    const CylinderPartition part(ball, 3);
    SplitMix64 rng(7);
    for (int i = 0; i < 50; ++i) {
        const int x = static_cast<int>(rng.next() % ball.size());
        const int y = static_cast<int>(rng.next() % ball.size());
        const int c = static_cast<int>(rng.next() % part.count());
        CHECK(part.height_rel(x, x, c) == 0);
        CHECK(part.height_rel(x, 0, c) == part.height(x, c));
        CHECK(part.height_rel(x, y, c) == -part.height_rel(y, x, c));
    }
}

TEST_CASE("reference-point density is the q-power cocycle") {
    const TreeBall ball(2, 3);
    const CylinderPartition part(ball, 3);

    const int y = ball.children(0)[0];
    const int c_under_y = first_cell_under(part, y);
    CHECK(part.radon_nikodym(0, y, c_under_y) == Rational(2));

    for (int x = 0; x < ball.size(); ++x)
        for (int c = 0; c < part.count(); ++c) CHECK(part.radon_nikodym(x, x, c) == Rational(1));

    // full cocycle identity over the ball, exact rationals, exhaustive
    bool cocycle = true;
    for (int x = 0; x < ball.size(); ++x)
        for (int y2 = 0; y2 < ball.size(); ++y2)
            for (int z = 0; z < ball.size(); ++z)
                for (int c = 0; c < part.count(); ++c)
                    cocycle = cocycle && part.radon_nikodym(x, y2, c) * part.radon_nikodym(y2, z, c) ==
                                             part.radon_nikodym(x, z, c);
    CHECK(cocycle);
}

TEST_CASE("level-set masses by exact enumeration") {
    CHECK(level_set_measure(2, 0) == Rational(2, 3));
    CHECK(level_set_measure(2, 1) == Rational(1, 3));

    for (const int q : {2, 3, 5}) {
        const int D = q == 5 ? 3 : 4;
        const TreeBall ball(q, D);
        const CylinderPartition part(ball, D);
        // pick x on the first branch at each depth 1..D
        int x = 0;
        for (int depth_x = 1; depth_x <= D; ++depth_x) {
            x = ball.children(x)[0];
            // exact masses of {cells whose confluence with x has depth exactly j}
            std::vector<Rational> level(depth_x + 1, Rational(0));
            std::vector<Rational> superlevel(depth_x + 1, Rational(0));
            for (int c = 0; c < part.count(); ++c) {
                const int j = ball.depth(ball.confluence(x, part.cylinder_vertex(c)));
                level[std::min(j, depth_x)] += part.weight_exact();
                for (int jj = 0; jj <= std::min(j, depth_x); ++jj)
                    superlevel[jj] += part.weight_exact();
            }
            // superlevel mass matches the displayed value for 1 <= j <= |x|
            for (int j = 1; j <= depth_x; ++j) CHECK(superlevel[j] == level_set_measure(q, j));
            // exact level masses: the displayed value at j = 0 and j = |x|,
            // consecutive differences in between
            CHECK(level[0] == level_set_measure(q, 0));
            for (int j = 1; j < depth_x; ++j)
                CHECK(level[j] == level_set_measure(q, j) - level_set_measure(q, j + 1));
            CHECK(level[depth_x] ==
                  Rational(1) / (Rational(q + 1) * rational_q_power(q, depth_x - 1)));
            Rational total(0);
            for (const auto& m : level) total += m;
            CHECK(total == Rational(1));
        }
    }
}

TEST_CASE("averaging operators") {
    const TreeBall ball(2, 3);
    const CylinderPartition part(ball, 3);
    SplitMix64 rng(11);
    auto F = BoundaryFunction::zero(part);
    for (auto& v : F.values) v = rng.complex_symmetric();

    const auto same = averaging(part, F, part.depth());
    for (int c = 0; c < part.count(); ++c) CHECK(same.values[c] == F.values[c]);

    const auto flat = averaging(part, F, 0);
    const Complex mean = boundary_integral(part, F);
    for (int c = 0; c < part.count(); ++c) CHECK(std::abs(flat.values[c] - mean) < 1e-14);

    for (int n = 0; n <= part.depth(); ++n) {
        const auto En = averaging(part, F, n);
        // mass preserved and max norm contracted
        CHECK(std::abs(boundary_integral(part, En) - mean) < 1e-14);
        double mx = 0.0, mf = 0.0;
        for (int c = 0; c < part.count(); ++c) {
            mx = std::max(mx, std::abs(En.values[c]));
            mf = std::max(mf, std::abs(F.values[c]));
        }
        CHECK(mx <= mf + 1e-14);
        for (int m = 0; m <= part.depth(); ++m) {
            const auto nested = averaging(part, averaging(part, F, m), n);
            const auto direct = averaging(part, F, std::min(n, m));
            for (int c = 0; c < part.count(); ++c)
                CHECK(std::abs(nested.values[c] - direct.values[c]) < 1e-13);
        }
    }
    CHECK_THROWS_AS(averaging(part, F, part.depth() + 1), std::invalid_argument);
    CHECK_THROWS_AS(averaging(part, F, -1), std::invalid_argument);
}

TEST_CASE("boundary integral") {
    const TreeBall ball(2, 3);
    const CylinderPartition part(ball, 3);
    auto ones = BoundaryFunction::zero(part);
    for (auto& v : ones.values) v = 1.0;
    CHECK(std::abs(boundary_integral(part, ones) - 1.0) < 1e-15);

    auto ind = BoundaryFunction::zero(part);
    ind.values[3] = 1.0;
    CHECK(std::abs(boundary_integral(part, ind) - part.weight()) < 1e-16);

    // indicator of the rays whose confluence with x sits at depth exactly j
    const int x = ball.children(ball.children(ball.children(0)[0])[0])[0];  // depth 3
    for (int j = 1; j < ball.depth(x); ++j) {
        auto level = BoundaryFunction::zero(part);
        for (int c = 0; c < part.count(); ++c)
            if (ball.depth(ball.confluence(x, part.cylinder_vertex(c))) == j) level.values[c] = 1.0;
        const double expect =
            boost::rational_cast<double>(level_set_measure(2, j) - level_set_measure(2, j + 1));
        CHECK(std::abs(boundary_integral(part, level) - expect) < 1e-15);
    }
}
