#include "binomial/cli/app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "binomial/analytics.hpp"
#include "binomial/cli/documents.hpp"
#include "binomial/error.hpp"
#include "binomial/oracle.hpp"

namespace binomial::cli {
namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ModelParams load_model(const std::string& path) {
    return validate_model(parse_model_document(read_file(path), path));
}

OptionSpec load_option(const std::string& path, const ModelParams& params) {
    OptionSpec spec = parse_option_document(read_file(path), path);
    validate_option(params, spec);
    return spec;
}

struct Options {
    std::string model;
    std::string option;
    std::string format = "table";
    std::string path;
    std::string strike;
    std::optional<int> periods;
    std::string v0;
    std::string p;
    std::optional<double> tolerance;
    bool inject_fault = false;
};

int cmd_price(const Options& o, std::ostream& out) {
    const auto params = load_model(o.model);
    const auto format = parse_format(o.format);
    require_arbitrage_free(params);
    const auto spec = load_option(o.option, params);
    const auto lattice = price(params, spec);
    out << emit_lattice(make_lattice_document(params, lattice), params, spec, format);
    return kExitOk;
}

int cmd_hedge(const Options& o, std::ostream& out) {
    const auto params = load_model(o.model);
    const auto format = parse_format(o.format);
    require_arbitrage_free(params);
    const auto spec = load_option(o.option, params);
    const auto plan = superhedge(params, exercise_floors(params, spec));
    std::optional<double> shortfall;
    if (params.n_periods() <= oracle::kMaxPathDepth) shortfall = oracle::oracle_hedge_replay(params, plan, spec);
    out << emit_plan(make_plan_document(plan, shortfall), format);
    return kExitOk;
}

int cmd_advise(const Options& o, std::ostream& out) {
    const auto params = load_model(o.model);
    const auto format = parse_format(o.format);
    const Path path = parse_path(o.path, "--path");
    require_arbitrage_free(params);
    const auto spec = load_option(o.option, params);
    out << emit_advice(advise_exercise(params, spec, path), format);
    return kExitOk;
}

// Shifts one interior value of the call lattice so the parity check has
// something to find.
void corrupt(ValueLattice& lattice) {
    const int n = lattice.n_periods() > 0 ? lattice.n_periods() - 1 : 0;
    lattice.values[NodeId{n, 0}] += 1e-3;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
    ModelParams params = load_model(o.model);
    const auto format = parse_format(o.format);
    if (o.strike.empty()) throw InputError("--strike", "required");
    const double strike = parse_number(o.strike, "--strike");
    if (o.periods) {
        if (*o.periods < 0) throw InputError("--periods", "must be >= 0");
        params = params.with_periods(*o.periods);
    }
    const double tol = o.tolerance.value_or(kCheckTolerance);
    const int N = params.n_periods();

    auto reports = run_all_checks(params, strike, N, tol);
    if (o.inject_fault) {
        auto call = price_european(params, OptionSpec::call(strike, ExerciseStyle::European));
        const auto put = price_european(params, OptionSpec::put(strike, ExerciseStyle::European));
        corrupt(call);
        reports.front() = check_european_parity(params, strike, call, put, tol);
    }
    out << emit_reports(reports, format);

    bool all_passed = true;
    for (const auto& r : reports) {
        if (r.passed) continue;
        all_passed = false;
        err << "check failed: " << r.name << " worst violation " << r.worst_violation << " at node "
            << to_string(r.worst_node) << " (" << r.worst_condition << ")\n";
    }
    return all_passed ? kExitOk : kExitCheck;
}

int cmd_optimize(const Options& o, std::ostream& out) {
    const auto params = load_model(o.model);
    const auto format = parse_format(o.format);
    if (o.v0.empty()) throw InputError("--v0", "required");
    if (o.p.empty()) throw InputError("--p", "required");
    const OptimizationProblem problem{params, parse_number(o.v0, "--v0"), parse_number(o.p, "--p")};
    out << emit_portfolio(optimize(problem), format);
    return kExitOk;
}

int cmd_oracle(const Options& o, std::ostream& out, std::ostream& err) {
    const auto params = load_model(o.model);
    const auto format = parse_format(o.format);
    require_arbitrage_free(params);
    const auto spec = load_option(o.option, params);
    const double tol = o.tolerance.value_or(1e-10);

    const double lattice_value = price(params, spec).root();
    const double oracle_value =
        spec.is_american() ? oracle::oracle_american(params, spec) : oracle::oracle_european(params, spec);
    const double diff = std::abs(lattice_value - oracle_value);
    const bool agree = diff <= tol;

    std::ostringstream os;
    os.precision(17);
    if (format == Format::Structured) {
        os << "{\n  \"lattice_price\": " << lattice_value << ",\n  \"oracle_price\": " << oracle_value
           << ",\n  \"difference\": " << diff << ",\n  \"tolerance\": " << tol
           << ",\n  \"agree\": " << (agree ? "true" : "false") << "\n}\n";
    } else {
        os << "lattice_price " << lattice_value << "\noracle_price " << oracle_value << "\ndifference "
           << diff << "\ntolerance " << tol << "\nstatus " << (agree ? "agree" : "DISAGREE") << "\n";
    }
    out << os.str();
    if (!agree) {
        err << "oracle disagreement: |lattice - oracle| = " << diff << " exceeds " << tol << "\n";
        return kExitCheck;
    }
    return kExitOk;
}

int exit_code_for(ErrorCode code) {
    return code == ErrorCode::ArbitrageModel ? kExitArbitrage : kExitInput;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Binomial lattice pricing, hedging and consistency checks", "binomial"};
    app.require_subcommand(1);
    Options o;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", o.format, "table | structured | tree")->capture_default_str();
    };
    auto add_model = [&](CLI::App* cmd) { cmd->add_option("--model", o.model, "model document")->required(); };
    auto add_option = [&](CLI::App* cmd) { cmd->add_option("--option", o.option, "option document")->required(); };

    auto* price_cmd = app.add_subcommand("price", "value lattice and root price");
    add_model(price_cmd);
    add_option(price_cmd);
    add_format(price_cmd);

    auto* hedge_cmd = app.add_subcommand("hedge", "per-node hedge positions with replay summary");
    add_model(hedge_cmd);
    add_option(hedge_cmd);
    add_format(hedge_cmd);

    auto* advise_cmd = app.add_subcommand("advise", "early-exercise recommendation along a path");
    add_model(advise_cmd);
    add_option(advise_cmd);
    add_format(advise_cmd);
    advise_cmd->add_option("--path", o.path, "comma-separated u/d moves");

    auto* check_cmd = app.add_subcommand("check", "parity, early-exercise and bound checks");
    add_model(check_cmd);
    add_format(check_cmd);
    check_cmd->add_option("--strike", o.strike, "strike (decimal or fraction)")->required();
    check_cmd->add_option("--periods", o.periods, "horizon; defaults to the model's");
    check_cmd->add_option("--tolerance", o.tolerance, "absolute tolerance");
    check_cmd->add_flag("--inject-fault", o.inject_fault)->group("");

    auto* optimize_cmd = app.add_subcommand("optimize", "one-period expected-wealth portfolio");
    add_model(optimize_cmd);
    add_format(optimize_cmd);
    optimize_cmd->add_option("--v0", o.v0, "initial wealth")->required();
    optimize_cmd->add_option("--p", o.p, "real-world up probability")->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "compare the lattice price with path enumeration");
    add_model(oracle_cmd);
    add_option(oracle_cmd);
    add_format(oracle_cmd);
    oracle_cmd->add_option("--tolerance", o.tolerance, "absolute tolerance");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (price_cmd->parsed()) return cmd_price(o, out);
        if (hedge_cmd->parsed()) return cmd_hedge(o, out);
        if (advise_cmd->parsed()) return cmd_advise(o, out);
        if (check_cmd->parsed()) return cmd_check(o, out, err);
        if (optimize_cmd->parsed()) return cmd_optimize(o, out);
        if (oracle_cmd->parsed()) return cmd_oracle(o, out, err);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    }
    return kExitInput;
}

}  // namespace binomial::cli
