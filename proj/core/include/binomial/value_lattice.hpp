#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "binomial/error.hpp"
#include "binomial/lattice_model.hpp"

namespace binomial {

/// Number of nodes in a recombining lattice with `n_periods` steps.
constexpr std::size_t node_count(int n_periods) noexcept {
    const auto n = static_cast<std::size_t>(n_periods);
    return (n + 1) * (n + 2) / 2;
}

/// Row-major triangular storage: level n occupies [n(n+1)/2, n(n+1)/2 + n].
constexpr std::size_t node_index(NodeId node) noexcept {
    const auto n = static_cast<std::size_t>(node.time);
    return n * (n + 1) / 2 + static_cast<std::size_t>(node.up_count);
}

constexpr bool in_lattice(NodeId node, int n_periods) noexcept {
    return node.time >= 0 && node.time <= n_periods && node.up_count >= 0 &&
           node.up_count <= node.time;
}

/// Scalar field over the nodes of a recombining lattice.
template <class T>
class NodeField {
public:
    NodeField() = default;
    NodeField(int n_periods, T fill) : n_periods_(n_periods), data_(node_count(n_periods), fill) {}

    int n_periods() const noexcept { return n_periods_; }
    std::size_t size() const noexcept { return data_.size(); }

    decltype(auto) operator[](NodeId node) { return data_[node_index(node)]; }
    decltype(auto) operator[](NodeId node) const { return data_[node_index(node)]; }

    /// Bounds-checked access; throws Error{NodeOutOfRange}.
    decltype(auto) at(NodeId node) const {
        if (!in_lattice(node, n_periods_)) {
            throw Error(ErrorCode::NodeOutOfRange,
                        "node " + to_string(node) + " is outside a lattice of " +
                            std::to_string(n_periods_) + " periods");
        }
        return (*this)[node];
    }

    const std::vector<T>& data() const noexcept { return data_; }

private:
    int n_periods_ = 0;
    std::vector<T> data_;
};

/// Values per node plus, for American prices, the exercise-optimal flags.
struct ValueLattice {
    NodeField<double> values;
    NodeField<bool> exercise;  // all false for European prices

    int n_periods() const noexcept { return values.n_periods(); }
    double root() const { return values[NodeId{0, 0}]; }
    double operator[](NodeId node) const { return values[node]; }
};

/// Calls `fn(NodeId)` for every node in output order: by time, then by
/// up_count descending (top of the rendered tree first).
template <class Fn>
void for_each_node(int n_periods, Fn&& fn) {
    for (int n = 0; n <= n_periods; ++n) {
        for (int j = n; j >= 0; --j) {
            fn(NodeId{n, j});
        }
    }
}

}  // namespace binomial
