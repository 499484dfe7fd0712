#include <doctest.h>

#include "treeharm/tree.hpp"

using treeharm::TreeBall;

TEST_CASE("ball sizes match the geometric series") {
    CHECK(TreeBall(2, 3).size() == 22);   // 1 + 3*(1+2+4)
    CHECK(TreeBall(2, 0).size() == 1);
    CHECK(TreeBall(3, 2).size() == 17);   // 1 + 4*(1+3)
    CHECK(TreeBall(5, 2).size() == 37);   // 1 + 6*(1+5)
    CHECK(TreeBall::ball_size(2, 10) == 1 + 3 * (1024 - 1));
}

TEST_CASE("construction rejects bad parameters") {
    CHECK_THROWS_AS(TreeBall(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(TreeBall(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(TreeBall(2, -1), std::invalid_argument);
    CHECK_THROWS_AS(TreeBall::ball_size(2, 40), std::overflow_error);
}

TEST_CASE("degree structure") {
    for (const int q : {2, 3}) {
        const TreeBall ball(q, 3);
        CHECK(static_cast<int>(ball.children(0).size()) == q + 1);
        for (int v = 1; v < ball.size(); ++v) {
            CHECK(ball.depth(ball.parent(v)) == ball.depth(v) - 1);
            if (ball.depth(v) < ball.radius())
                CHECK(static_cast<int>(ball.children(v).size()) == q);
            else
                CHECK(ball.children(v).empty());
        }
        // depth equals the length of the parent chain
        for (int v = 0; v < ball.size(); ++v) {
            int hops = 0;
            for (int u = v; ball.parent(u) != -1; u = ball.parent(u)) ++hops;
            CHECK(hops == ball.depth(v));
        }
    }
}

TEST_CASE("sphere sizes are (q+1) q^{j-1}") {
    for (const int q : {2, 3}) {
        const TreeBall ball(q, 3);
        std::vector<int> count(4, 0);
        for (int v = 0; v < ball.size(); ++v) ++count[ball.depth(v)];
        int expect = q + 1;
        for (int j = 1; j <= 3; ++j) {
            CHECK(count[j] == expect);
            expect *= q;
        }
    }
}

TEST_CASE("confluence basics") {
    const TreeBall ball(2, 3);
    const int c1 = ball.children(0)[0];
    const int c2 = ball.children(0)[1];
    CHECK(ball.confluence(5, 5) == 5);
    CHECK(ball.confluence(0, 7) == 0);
    CHECK(ball.confluence(c1, c2) == 0);
    for (int x = 0; x < ball.size(); ++x)
        for (int y = 0; y < ball.size(); ++y) {
            const int c = ball.confluence(x, y);
            CHECK(c == ball.confluence(y, x));
            CHECK(ball.depth(c) <= std::min(ball.depth(x), ball.depth(y)));
        }
}

TEST_CASE("distance examples and triangle inequality") {
    const TreeBall ball(2, 3);
    const int c1 = ball.children(0)[0];
    const int c2 = ball.children(0)[1];
    CHECK(ball.distance(4, 4) == 0);
    for (int x = 0; x < ball.size(); ++x) CHECK(ball.distance(0, x) == ball.depth(x));
    CHECK(ball.distance(c1, c2) == 2);
    for (int x = 0; x < ball.size(); ++x)
        for (int y = 0; y < ball.size(); ++y) {
            CHECK(ball.distance(x, y) == ball.distance(y, x));
            CHECK((ball.distance(x, y) == 0) == (x == y));
            for (int z = 0; z < ball.size(); ++z)
                CHECK(ball.distance(x, z) <= ball.distance(x, y) + ball.distance(y, z));
        }
}

TEST_CASE("geodesics join through the confluence point") {
    const TreeBall ball(2, 3);
    const int c1 = ball.children(0)[0];
    const int c2 = ball.children(0)[1];
    CHECK(ball.geodesic(6, 6) == std::vector<int>{6});
    CHECK(ball.geodesic(0, c1) == std::vector<int>{0, c1});
    CHECK(ball.geodesic(c1, c2) == std::vector<int>{c1, 0, c2});
    for (int x = 0; x < ball.size(); ++x)
        for (int y = 0; y < ball.size(); ++y) {
            const auto path = ball.geodesic(x, y);
            CHECK(static_cast<int>(path.size()) == ball.distance(x, y) + 1);
            CHECK(path.front() == x);
            CHECK(path.back() == y);
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                const bool adjacent = ball.parent(path[i]) == path[i + 1] ||
                                      ball.parent(path[i + 1]) == path[i];
                CHECK(adjacent);
            }
        }
}
