#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "klstress/dist.hpp"
#include "klstress/dominance.hpp"
#include "klstress/errors.hpp"
#include "klstress/io.hpp"
#include "klstress/oracle.hpp"
#include "klstress/scenario.hpp"
#include "klstress/solver.hpp"
#include "klstress/tilt.hpp"

namespace {

using namespace klstress;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;

struct Options {
    std::string input;
    std::string output;
    std::vector<double> lambdas;
    double epsilon = 0.0;
    double target = 0.0;
    double a = 0.0;
    std::uint64_t n = 1;
    std::uint64_t seed = 0;
    double grid = 0.005;
    double tol = 1e-6;
    int instances = 500;
    double bracket_lo = 1e-3;
    double bracket_hi = 1e3;
};

void write_out(const Options& opt, const std::string& text) {
    if (opt.output.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) {
        throw InvalidInput("cannot open output file: " + opt.output);
    }
    out << text << "\n";
}

// Echo block for audit reproducibility: command, flags, input digest.
std::string inputs_block(const std::string& command, const Options& opt,
                         const std::vector<std::string>& flags) {
    std::string out = "{\"command\":\"" + command + "\"";
    if (!opt.input.empty()) {
        out += ",\"input\":\"" + opt.input + "\"";
        out += ",\"digest\":\"" + io::file_digest(opt.input) + "\"";
    }
    for (const auto& f : flags) out += "," + f;
    out += "}";
    return out;
}

std::string flag(const std::string& name, double value) {
    return "\"" + name + "\":" + io::format_double(value);
}

std::string flag_u(const std::string& name, std::uint64_t value) {
    return "\"" + name + "\":" + std::to_string(value);
}

DiscreteDistribution random_distribution(std::mt19937_64& rng, int max_atoms) {
    std::uniform_int_distribution<int> size_dist(1, max_atoms);
    std::uniform_real_distribution<double> value_dist(-5.0, 5.0);
    std::uniform_real_distribution<double> weight_dist(0.05, 1.0);
    int n = size_dist(rng);
    std::vector<double> values(n), weights(n);
    for (int i = 0; i < n; ++i) {
        values[i] = value_dist(rng);
        weights[i] = weight_dist(rng);
    }
    return DiscreteDistribution::from_samples(values, weights);
}

int cmd_verify(const Options& opt) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> lambda_dist(0.05, 5.0);
    std::uniform_real_distribution<double> a_dist(-6.0, 6.0);
    double max_duality_gap = 0.0;
    double max_kl_gap = 0.0;
    for (int i = 0; i < opt.instances; ++i) {
        auto p = random_distribution(rng, 8);
        auto q = random_distribution(rng, 8);
        double gap = std::abs(min_coupling_cost(p, q).cost - sup_diff(p, q).value);
        max_duality_gap = std::max(max_duality_gap, gap);

        TiltParams params{lambda_dist(rng), a_dist(rng)};
        auto t = tilt(p, params);
        auto tilted = DiscreteDistribution::from_samples(p.values(), t.tilted_probs());
        double kl_gap = std::abs(kl_of_tilt(p, params) - kl_direct(tilted, p));
        max_kl_gap = std::max(max_kl_gap, kl_gap);
    }
    bool ok = max_duality_gap <= 1e-10 && max_kl_gap <= 1e-10;
    std::string report = "{";
    report += flag_u("instances", static_cast<std::uint64_t>(opt.instances));
    report += "," + flag_u("seed", opt.seed);
    report += ",\"max_duality_gap\":" + io::format_double(max_duality_gap);
    report += ",\"max_kl_gap\":" + io::format_double(max_kl_gap);
    report += ",\"ok\":";
    report += ok ? "true" : "false";
    report += "}";
    write_out(opt, report);
    return ok ? kExitOk : kExitInternal;
}

int dispatch(const std::string& command, const Options& opt) {
    if (command == "verify") return cmd_verify(opt);

    auto d = io::load_distribution(opt.input);

    if (command == "tilt") {
        TiltParams params{opt.lambdas.at(0), opt.a};
        auto t = tilt(d, params);
        auto inputs = inputs_block(command, opt,
                                   {flag("lambda", params.lambda), flag("a", opt.a)});
        write_out(opt, io::tilted_measure_json(t, inputs));
    } else if (command == "solve") {
        auto report = value_eps(d, opt.epsilon);
        auto inputs = inputs_block(command, opt, {flag("epsilon", opt.epsilon)});
        write_out(opt, io::stress_report_json(report, inputs));
    } else if (command == "sweep") {
        auto rows = severity_sweep(d, opt.lambdas);
        bool csv = opt.output.size() >= 4 &&
                   opt.output.compare(opt.output.size() - 4, 4, ".csv") == 0;
        if (csv) {
            write_out(opt, io::sweep_csv(rows));
        } else {
            auto inputs = inputs_block(command, opt, {});
            write_out(opt, io::sweep_json(rows, inputs));
        }
    } else if (command == "lambda-boundary") {
        double boundary = lambda_boundary(d, {opt.bracket_lo, opt.bracket_hi});
        auto inputs = inputs_block(command, opt, {});
        write_out(opt, "{\"lambda_boundary\":" + io::format_double(boundary) +
                           ",\"inputs\":" + inputs + "}");
    } else if (command == "eps-crit") {
        double eps = eps_crit(d, opt.target, opt.tol);
        auto inputs = inputs_block(command, opt,
                                   {flag("target", opt.target), flag("tol", opt.tol)});
        write_out(opt, "{\"eps_crit\":" + io::format_double(eps) +
                           ",\"inputs\":" + inputs + "}");
    } else if (command == "check-fsd") {
        TiltParams params{opt.lambdas.at(0), opt.a};
        auto t = tilt(d, params);
        auto result = check_fsd(d, t);
        auto inputs = inputs_block(command, opt,
                                   {flag("lambda", params.lambda), flag("a", opt.a)});
        write_out(opt, io::fsd_json(result, params, inputs));
    } else if (command == "scenarios") {
        TiltParams params{opt.lambdas.at(0), opt.a};
        auto t = tilt(d, params);
        auto set = sample(t, opt.n, opt.seed);
        bool csv = opt.output.size() >= 4 &&
                   opt.output.compare(opt.output.size() - 4, 4, ".csv") == 0;
        if (csv) {
            write_out(opt, io::scenario_csv(set));
        } else {
            auto inputs = inputs_block(
                command, opt,
                {flag("lambda", params.lambda), flag("a", opt.a),
                 flag_u("n", opt.n), flag_u("seed", opt.seed)});
            write_out(opt, io::scenario_json(set, inputs));
        }
    } else if (command == "weights") {
        TiltParams params{opt.lambdas.at(0), opt.a};
        auto t = tilt(d, params);
        write_out(opt, io::weights_csv(d.values(), importance_weights(t)));
    } else {
        return kExitInternal;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Worst-case stochastic outperformance under KL ambiguity"};
    app.require_subcommand(1);

    Options opt;
    std::string command;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", opt.input, "Baseline data (CSV or JSON)")
            ->required();
        sub->add_option("--output", opt.output, "Output path (default stdout)");
    };

    auto* tilt_cmd = app.add_subcommand("tilt", "Build the tilted measure");
    add_input(tilt_cmd);
    tilt_cmd->add_option("--lambda", opt.lambdas, "Tilt multiplier")->required();
    tilt_cmd->add_option("--a", opt.a, "Threshold")->required();

    auto* solve_cmd = app.add_subcommand("solve", "Radius-constrained value V_eps");
    add_input(solve_cmd);
    solve_cmd->add_option("--epsilon", opt.epsilon, "KL radius")->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "Severity sweep over lambdas");
    add_input(sweep_cmd);
    sweep_cmd->add_option("--lambda", opt.lambdas, "Lambda grid (repeatable)")
        ->required();

    auto* boundary_cmd =
        app.add_subcommand("lambda-boundary", "Crossing of max phi at 1/2");
    add_input(boundary_cmd);
    boundary_cmd->add_option("--bracket-lo", opt.bracket_lo, "Lower lambda bracket");
    boundary_cmd->add_option("--bracket-hi", opt.bracket_hi, "Upper lambda bracket");

    auto* crit_cmd = app.add_subcommand("eps-crit", "Critical KL radius");
    add_input(crit_cmd);
    crit_cmd->add_option("--target", opt.target, "Stress level p in [0.5,1)")
        ->required();
    crit_cmd->add_option("--tol", opt.tol, "Bisection tolerance on eps");

    auto* fsd_cmd = app.add_subcommand("check-fsd", "First-order dominance check");
    add_input(fsd_cmd);
    fsd_cmd->add_option("--lambda", opt.lambdas, "Tilt multiplier")->required();
    fsd_cmd->add_option("--a", opt.a, "Threshold")->required();

    auto* scen_cmd = app.add_subcommand("scenarios", "Stressed scenario draws");
    add_input(scen_cmd);
    scen_cmd->add_option("--lambda", opt.lambdas, "Tilt multiplier")->required();
    scen_cmd->add_option("--a", opt.a, "Threshold")->required();
    scen_cmd->add_option("--n", opt.n, "Number of draws")->required();
    scen_cmd->add_option("--seed", opt.seed, "RNG seed");

    auto* weights_cmd =
        app.add_subcommand("weights", "Per-atom importance weights (CSV)");
    add_input(weights_cmd);
    weights_cmd->add_option("--lambda", opt.lambdas, "Tilt multiplier")->required();
    weights_cmd->add_option("--a", opt.a, "Threshold")->required();

    auto* verify_cmd =
        app.add_subcommand("verify", "Oracle-vs-dual equivalence on random instances");
    verify_cmd->add_option("--instances", opt.instances, "Instance count");
    verify_cmd->add_option("--seed", opt.seed, "RNG seed");
    verify_cmd->add_option("--output", opt.output, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }
    command = app.get_subcommands().front()->get_name();

    try {
        return dispatch(command, opt);
    } catch (const NoBoundary& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const TargetUnreachable& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const FlatThreshold& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const DepletionUnderflow& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
