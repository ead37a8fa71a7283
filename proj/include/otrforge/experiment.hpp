#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "otrforge/gf2n.hpp"

namespace otrforge {

enum class AttackKind { OtrFiveBlock, OtrFourBlock, ProstRecovery, SimonDemo };

const char* attack_name(AttackKind k);

struct ExperimentConfig {
    AttackKind attack = AttackKind::OtrFiveBlock;
    int bits = 8;
    std::size_t blocks = 0;  // 0 picks the attack's natural message length
    int trials = 100;
    double c_factor = 4.0;  // recovery budget is ceil(c_factor * bits) samples
    std::uint64_t seed = 1;
    std::optional<std::uint32_t> poly;  // field modulus override
};

struct TrialRecord {
    int trial = 0;
    bool success = false;
    int queries = 0;  // measurement samples spent, all recoveries and retries
    std::optional<Word> period;
    long long millis = 0;
};

struct ExperimentSummary {
    AttackKind attack = AttackKind::OtrFiveBlock;
    int bits = 0;
    int trials = 0;
    int successes = 0;
    double success_rate = 0.0;
    double mean_queries = 0.0;
    int max_queries = 0;
    int budget = 0;          // samples allowed per single period recovery
    double bound = 0.0;      // per-trial analytic lower bound, all stages
    double threshold = 0.0;  // bound minus three binomial sigmas, floored at 0
    bool passed = false;     // success_rate >= threshold
    std::vector<TrialRecord> records;
};

// Runs cfg.trials independent attack worlds (instance, message, attacker
// randomness all derived from per-trial seeds) and streams one CSV row per
// trial after the exact header `trial,success,queries,period_hex,millis`.
// Every trial's success flag is cross-checked against the genuine verifier,
// never against attacker-side state alone. Output bytes are a pure function
// of the config. Invalid configs throw std::invalid_argument.
ExperimentSummary run_attack_experiment(const ExperimentConfig& cfg, std::ostream& csv);

// Human-readable aggregate, one stable line per quantity.
void write_summary(std::ostream& os, const ExperimentSummary& s);

// One CSV row per (n, c) pair after the exact header `n,c,bound,empirical`.
// bound is the analytic single-recovery success floor; empirical is a live
// rate of single-shot period recovery inside the five-block forgery, filled
// for 6 <= n <= 10 when the budget ceil(c*n) is at least n, empty otherwise.
void run_prob_curve(const std::vector<int>& n_list, const std::vector<double>& c_list,
                    int trials, std::uint64_t seed, std::ostream& csv);

}  // namespace otrforge
