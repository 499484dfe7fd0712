#include "treeharm/tree.hpp"

#include <algorithm>
#include <limits>

namespace treeharm {

std::int64_t TreeBall::ball_size(int q, int R) {
    if (q < 2) throw std::invalid_argument("TreeBall: branching parameter q must be >= 2");
    if (R < 0) throw std::invalid_argument("TreeBall: radius R must be >= 0");
    std::int64_t count = 1;
    std::int64_t sphere = q + 1;  // size of sphere at depth j, starting at j = 1
    for (int j = 1; j <= R; ++j) {
        count += sphere;
        if (count > std::numeric_limits<int>::max())
            throw std::overflow_error("TreeBall: vertex count overflows index type");
        sphere *= q;
    }
    return count;
}

TreeBall::TreeBall(int q, int R) : q_(q), R_(R) {
    const auto n = ball_size(q, R);
    depth_.reserve(static_cast<std::size_t>(n));
    parent_.reserve(static_cast<std::size_t>(n));
    children_.resize(static_cast<std::size_t>(n));

    depth_.push_back(0);
    parent_.push_back(-1);
    int begin = 0, end = 1;  // current frontier [begin, end)
    for (int d = 1; d <= R; ++d) {
        const int next_begin = end;
        for (int v = begin; v < end; ++v) {
            const int nc = (v == 0) ? q + 1 : q;
            for (int i = 0; i < nc; ++i) {
                const int idx = static_cast<int>(depth_.size());
                depth_.push_back(d);
                parent_.push_back(v);
                children_[v].push_back(idx);
            }
        }
        begin = next_begin;
        end = static_cast<int>(depth_.size());
    }
}

int TreeBall::confluence(int x, int y) const {
    check_index(x);
    check_index(y);
    while (depth_[x] > depth_[y]) x = parent_[x];
    while (depth_[y] > depth_[x]) y = parent_[y];
    while (x != y) {
        x = parent_[x];
        y = parent_[y];
    }
    return x;
}

int TreeBall::distance(int x, int y) const {
    return depth(x) + depth(y) - 2 * depth_[confluence(x, y)];
}

std::vector<int> TreeBall::geodesic(int x, int y) const {
    const int c = confluence(x, y);
    std::vector<int> path;
    for (int v = x; v != c; v = parent_[v]) path.push_back(v);
    path.push_back(c);
    std::vector<int> tail;
    for (int v = y; v != c; v = parent_[v]) tail.push_back(v);
    path.insert(path.end(), tail.rbegin(), tail.rend());
    return path;
}

}  // namespace treeharm
