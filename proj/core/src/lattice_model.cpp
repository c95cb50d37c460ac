#include "binomial/lattice_model.hpp"

#include <cmath>
#include <sstream>

#include "binomial/error.hpp"

namespace binomial {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidModel: return "InvalidModel";
        case ErrorCode::NodeOutOfRange: return "NodeOutOfRange";
        case ErrorCode::ArbitrageModel: return "ArbitrageModel";
        case ErrorCode::NegativePerturbation: return "NegativePerturbation";
        case ErrorCode::IncompleteFloors: return "IncompleteFloors";
        case ErrorCode::PathLengthMismatch: return "PathLengthMismatch";
        case ErrorCode::InvalidOption: return "InvalidOption";
        case ErrorCode::MissingPayoffEntry: return "MissingPayoffEntry";
        case ErrorCode::InvalidProbability: return "InvalidProbability";
        case ErrorCode::NegativeWealth: return "NegativeWealth";
        case ErrorCode::RequiresNonnegativeRate: return "RequiresNonnegativeRate";
        case ErrorCode::TreeTooDeep: return "TreeTooDeep";
    }
    return "Unknown";
}

namespace {

std::string fmt_num(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

}  // namespace

ModelParams validate_model(const RawModel& raw) {
    auto reject = [](const std::string& what) { throw Error(ErrorCode::InvalidModel, what); };

    if (!std::isfinite(raw.s0) || !std::isfinite(raw.u) || !std::isfinite(raw.d) ||
        !std::isfinite(raw.r)) {
        reject("model fields must be finite numbers");
    }
    if (raw.s0 <= 0.0) reject("s0 must be > 0 (got " + fmt_num(raw.s0) + ")");
    if (raw.u <= raw.d) {
        reject("u must be > d (got u=" + fmt_num(raw.u) + ", d=" + fmt_num(raw.d) + ")");
    }
    if (raw.r <= -1.0) reject("r must be > -1 (got " + fmt_num(raw.r) + ")");
    // Asset prices must stay positive for the one-period system to have a
    // sign-definite arbitrage witness.
    if (raw.d <= 0.0) reject("d must be > 0 (got " + fmt_num(raw.d) + ")");
    if (raw.n_periods < 0) reject("periods must be >= 0 (got " + std::to_string(raw.n_periods) + ")");

    ModelParams m;
    m.s0_ = raw.s0;
    m.u_ = raw.u;
    m.d_ = raw.d;
    m.r_ = raw.r;
    m.n_periods_ = raw.n_periods;
    m.q_ = (1.0 + raw.r - raw.d) / (raw.u - raw.d);
    m.arbitrage_free_ = raw.d < 1.0 + raw.r && 1.0 + raw.r < raw.u;
    return m;
}

ModelParams ModelParams::with_periods(int n_periods) const {
    auto raw = this->raw();
    raw.n_periods = n_periods;
    return validate_model(raw);
}

std::string ModelParams::arbitrage_violation() const {
    if (arbitrage_free_) return {};
    const auto growth_str = fmt_num(growth());
    if (d_ >= growth()) {
        return "no-arbitrage requires d < 1+r < u, but d=" + fmt_num(d_) + " >= 1+r=" + growth_str;
    }
    return "no-arbitrage requires d < 1+r < u, but u=" + fmt_num(u_) + " <= 1+r=" + growth_str;
}

std::string to_string(NodeId node) {
    return "(" + std::to_string(node.time) + "," + std::to_string(node.up_count) + ")";
}

NodeId node_after(std::span<const Move> moves) noexcept {
    NodeId node;
    for (auto m : moves) node = (m == Move::Up) ? node.up() : node.down();
    return node;
}

std::string to_string(std::span<const Move> moves) {
    std::string out;
    out.reserve(moves.size());
    for (auto m : moves) out.push_back(static_cast<char>(m));
    return out;
}

double asset_price(const ModelParams& params, NodeId node) {
    if (node.time < 0 || node.time > params.n_periods() || node.up_count < 0 ||
        node.up_count > node.time) {
        throw Error(ErrorCode::NodeOutOfRange,
                    "node " + to_string(node) + " is outside a lattice of " +
                        std::to_string(params.n_periods()) + " periods");
    }
    // Evaluated in extended precision so the result is rounded once.
    return static_cast<double>(static_cast<long double>(params.s0()) *
                               std::pow(static_cast<long double>(params.u()), node.up_count) *
                               std::pow(static_cast<long double>(params.d()), node.time - node.up_count));
}

AssetPrices::AssetPrices(const ModelParams& params) : s0_(params.s0()) {
    const auto count = static_cast<std::size_t>(params.n_periods()) + 1;
    up_.reserve(count);
    down_.reserve(count);
    for (int k = 0; k <= params.n_periods(); ++k) {
        up_.push_back(std::pow(static_cast<long double>(params.u()), k));
        down_.push_back(std::pow(static_cast<long double>(params.d()), k));
    }
}

std::optional<ArbitrageWitness> find_arbitrage(const ModelParams& params) {
    if (params.arbitrage_free()) return std::nullopt;

    // Zero cost: b = -a s0. One period later the portfolio is worth
    // a s0 (u - (1+r)) up and a s0 (d - (1+r)) down.
    const double a = (params.d() >= params.growth()) ? 1.0 : -1.0;
    ArbitrageWitness w;
    w.a = a;
    w.b = -a * params.s0();
    w.v1_up = a * params.u() * params.s0() + w.b * params.growth();
    w.v1_down = a * params.d() * params.s0() + w.b * params.growth();
    return w;
}

void require_arbitrage_free(const ModelParams& params) {
    const auto witness = find_arbitrage(params);
    if (!witness) return;
    std::ostringstream os;
    os.precision(12);
    os << params.arbitrage_violation() << "; witness portfolio a=" << witness->a
       << ", b=" << witness->b << " costs 0 and pays up=" << witness->v1_up
       << ", down=" << witness->v1_down;
    throw Error(ErrorCode::ArbitrageModel, os.str());
}

}  // namespace binomial
