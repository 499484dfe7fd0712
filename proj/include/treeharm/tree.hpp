#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace treeharm {

/// Finite radius-R ball of the homogeneous tree of degree q+1, rooted at the
/// reference vertex o = index 0. Vertices are indexed breadth-first with
/// children in creation order, so the layout is identical across runs.
/// Immutable after construction; concurrent reads are safe.
class TreeBall {
public:
    TreeBall(int q, int R);

    int q() const { return q_; }
    int radius() const { return R_; }
    int size() const { return static_cast<int>(depth_.size()); }

    int depth(int v) const { return depth_[check_index(v)]; }
    /// Parent index, -1 for the root.
    int parent(int v) const { return parent_[check_index(v)]; }
    const std::vector<int>& children(int v) const { return children_[check_index(v)]; }

    bool contains(int v) const { return v >= 0 && v < size(); }

    /// Deepest vertex lying on both root paths [o,x] and [o,y].
    int confluence(int x, int y) const;
    /// Edge-count distance: depth(x) + depth(y) - 2 depth(confluence).
    int distance(int x, int y) const;
    /// Vertex path x -> confluence -> y (distance+1 entries).
    std::vector<int> geodesic(int x, int y) const;

    /// 1 + (q+1)(q^R - 1)/(q - 1); throws std::overflow_error when the count
    /// does not fit the index type.
    static std::int64_t ball_size(int q, int R);

private:
    int check_index(int v) const {
        if (!contains(v)) throw std::out_of_range("TreeBall: vertex index out of range");
        return v;
    }

    int q_;
    int R_;
    std::vector<int> depth_;
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
};

}  // namespace treeharm
