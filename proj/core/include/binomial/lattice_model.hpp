#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace binomial {

/// Unchecked model fields as they arrive from a caller or an input document.
struct RawModel {
    double s0 = 0.0;
    double u = 0.0;
    double d = 0.0;
    double r = 0.0;
    int n_periods = 0;
};

/// A validated binomial market: spot s0, up/down factors, per-period bank
/// rate and horizon, together with the derived risk-neutral up-weight
///   q = (1 + r - d) / (u - d).
///
/// Only `validate_model` constructs one, so every instance satisfies
/// s0 > 0, 0 < d < u and r > -1. `arbitrage_free()` is true exactly when
/// d < 1 + r < u, in which case q lies strictly inside (0, 1).
class ModelParams {
public:
    double s0() const noexcept { return s0_; }
    double u() const noexcept { return u_; }
    double d() const noexcept { return d_; }
    double r() const noexcept { return r_; }
    int n_periods() const noexcept { return n_periods_; }

    double q() const noexcept { return q_; }
    double growth() const noexcept { return 1.0 + r_; }
    bool arbitrage_free() const noexcept { return arbitrage_free_; }

    /// Same market with a different horizon.
    ModelParams with_periods(int n_periods) const;

    RawModel raw() const noexcept { return {s0_, u_, d_, r_, n_periods_}; }

    /// Human-readable statement of which no-arbitrage inequality fails,
    /// empty when the model is arbitrage-free.
    std::string arbitrage_violation() const;

private:
    friend ModelParams validate_model(const RawModel& raw);
    ModelParams() = default;

    double s0_ = 0.0;
    double u_ = 0.0;
    double d_ = 0.0;
    double r_ = 0.0;
    int n_periods_ = 0;
    double q_ = 0.0;
    bool arbitrage_free_ = false;
};

/// Throws Error{InvalidModel} naming the violated condition.
ModelParams validate_model(const RawModel& raw);

/// Node (n, j): time step n and number of up-moves j, 0 <= j <= n.
/// Children are (n + 1, j + 1) for an up-move and (n + 1, j) for a down-move.
struct NodeId {
    int time = 0;
    int up_count = 0;

    NodeId up() const noexcept { return {time + 1, up_count + 1}; }
    NodeId down() const noexcept { return {time + 1, up_count}; }

    friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

std::string to_string(NodeId node);

enum class Move : char { Up = 'u', Down = 'd' };
using Path = std::vector<Move>;

/// Node reached from the root by following `moves`.
NodeId node_after(std::span<const Move> moves) noexcept;

std::string to_string(std::span<const Move> moves);

/// s0 * u^j * d^(n-j). Throws Error{NodeOutOfRange} for nodes outside the lattice.
double asset_price(const ModelParams& params, NodeId node);

/// Same values as asset_price, with the powers tabulated once so whole-lattice
/// sweeps avoid a pow per node. Unchecked: callers stay inside the lattice.
class AssetPrices {
public:
    explicit AssetPrices(const ModelParams& params);
    double operator()(NodeId node) const noexcept {
        return static_cast<double>(s0_ * up_[static_cast<std::size_t>(node.up_count)] *
                                   down_[static_cast<std::size_t>(node.time - node.up_count)]);
    }

private:
    long double s0_;
    std::vector<long double> up_;
    std::vector<long double> down_;
};

/// A zero-cost one-period portfolio whose terminal values are both
/// nonnegative and not both zero.
struct ArbitrageWitness {
    double a = 0.0;
    double b = 0.0;
    double v1_up = 0.0;
    double v1_down = 0.0;
};

/// Empty exactly when the model is arbitrage-free. Otherwise returns a
/// witness with |a| = 1: long the asset when d >= 1 + r, short it when
/// u <= 1 + r.
std::optional<ArbitrageWitness> find_arbitrage(const ModelParams& params);

/// Throws Error{ArbitrageModel} describing the violated inequality and the
/// witness portfolio.
void require_arbitrage_free(const ModelParams& params);

}  // namespace binomial
