#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "otrforge/experiment.hpp"
#include "otrforge/selftest.hpp"

namespace {

using otrforge::AttackKind;
using otrforge::ExperimentConfig;

// CSV goes to --out when given (summary then on stdout), otherwise CSV on
// stdout and summary on stderr, so `otrforge attack-otr > runs.csv` stays
// machine-readable either way.
int run_experiment(const ExperimentConfig& cfg, const std::string& out_path) {
    std::ofstream file;
    std::ostream* csv = &std::cout;
    std::ostream* summary = &std::cerr;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) {
            std::cerr << "cannot open " << out_path << " for writing\n";
            return 2;
        }
        csv = &file;
        summary = &std::cout;
    }
    const otrforge::ExperimentSummary s = otrforge::run_attack_experiment(cfg, *csv);
    otrforge::write_summary(*summary, s);
    return s.passed ? 0 : 1;
}

int run_curve(const std::vector<int>& bits, const std::vector<double>& cs, int trials,
              std::uint64_t seed, const std::string& out_path) {
    std::ofstream file;
    std::ostream* csv = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) {
            std::cerr << "cannot open " << out_path << " for writing\n";
            return 2;
        }
        csv = &file;
    }
    otrforge::run_prob_curve(bits, cs, trials, seed, *csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forgery experiments against two-round authenticated encryption"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "plain key=value file; flags override it");

    int bits = 8;
    std::size_t blocks = 0;
    int trials = 100;
    double c_factor = 4.0;
    std::uint64_t seed = 1;
    std::optional<std::uint32_t> poly;
    std::string out_path;

    app.add_option("--bits", bits, "block width in bits");
    app.add_option("--blocks", blocks, "message length in blocks where configurable");
    app.add_option("--trials", trials, "independent attack runs");
    app.add_option("--c", c_factor, "sample budget factor: ceil(c*bits) per recovery");
    app.add_option("--seed", seed, "master seed; per-trial seeds derive from it");
    app.add_option("--poly", poly, "field modulus bit pattern override");
    app.add_option("--out", out_path, "write CSV here instead of stdout");

    const auto add_attack = [&](const char* name, const char* what) {
        return app.add_subcommand(name, what);
    };
    CLI::App* otr = add_attack("attack-otr", "five-block forgery via a hidden period");
    CLI::App* otr4 = add_attack("attack-otr-d4", "four-block forgery variant");
    CLI::App* prost = add_attack("attack-prost", "full key recovery, then forge at will");
    CLI::App* demo = add_attack("simon-demo", "period recovery on planted tables");
    CLI::App* curve = add_attack("prob-curve", "analytic bound vs live success rate");
    CLI::App* self = add_attack("selftest", "fast invariant checks");

    std::vector<int> curve_bits{6, 8, 10, 12, 14, 16};
    std::vector<double> curve_cs{1, 2, 3, 4};
    curve->add_option("--bits", curve_bits, "widths, repeat or comma-separate")
        ->delimiter(',');
    curve->add_option("--c", curve_cs, "budget factors, repeat or comma-separate")
        ->delimiter(',');
    int curve_trials = 200;
    curve->add_option("--trials", curve_trials, "live trials per (n, c) row");

    std::optional<std::uint32_t> inject_coeff4;
    self->add_option("--inject-coeff4", inject_coeff4,
                     "deliberately wrong four-block tag coefficient")
        ->group("");  // mutation hook for the test suite, hidden from help

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*self) {
            otrforge::SelftestOptions opts;
            opts.coeff4_override = inject_coeff4;
            const int failures = otrforge::selftest(std::cerr, opts);
            return failures == 0 ? 0 : 3;
        }
        if (*curve) return run_curve(curve_bits, curve_cs, curve_trials, seed, out_path);

        ExperimentConfig cfg;
        cfg.bits = bits;
        cfg.blocks = blocks;
        cfg.trials = trials;
        cfg.c_factor = c_factor;
        cfg.seed = seed;
        cfg.poly = poly;
        if (*otr) cfg.attack = AttackKind::OtrFiveBlock;
        if (*otr4) cfg.attack = AttackKind::OtrFourBlock;
        if (*prost) cfg.attack = AttackKind::ProstRecovery;
        if (*demo) cfg.attack = AttackKind::SimonDemo;
        return run_experiment(cfg, out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
