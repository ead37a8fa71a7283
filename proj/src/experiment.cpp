#include "otrforge/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "otrforge/attacks.hpp"
#include "otrforge/cipher.hpp"
#include "otrforge/otr.hpp"
#include "otrforge/rng.hpp"
#include "otrforge/simon.hpp"

namespace otrforge {

namespace {

int recovery_budget(double c_factor, int bits) {
    const int budget = static_cast<int>(std::ceil(c_factor * bits));
    if (budget < bits)
        throw std::invalid_argument("c factor leaves the budget below the width");
    return budget;
}

Word fresh_nonce(int bits, SplitMix64& world) {
    return world.next_bits(bits);
}

Blocks random_blocks(std::size_t d, int bits, SplitMix64& world) {
    Blocks m(d);
    for (auto& b : m) b = world.next_bits(bits);
    return m;
}

// One world per trial. The instance key material, nonce, message, and the
// attacker's sampler all come from disjoint draws of the trial generator, so
// any single trial replays in isolation from (master seed, index).
TrialRecord run_otr_trial(const ExperimentConfig& cfg, const FieldSpec& fs, int trial,
                          int budget, std::size_t d) {
    SplitMix64 world(trial_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
    const KeyedCipher cipher(cfg.bits, world.next());
    Word nonce = fresh_nonce(cfg.bits, world);
    const Blocks m = random_blocks(d, cfg.bits, world);
    SplitMix64 attacker(world.next());

    TrialRecord rec;
    rec.trial = trial;
    for (;;) {
        try {
            const OtrInstance inst(cipher, fs, nonce);
            const TaggedCiphertext ct = inst.encrypt(m);
            const OtrTagOracle oracle(inst, TagOracle::Mode::CiphertextInput);
            const ForgeryOutcome out = d == 5
                                           ? forge_otr(ct, oracle, attacker, budget)
                                           : forge_otr_d4(ct, oracle, attacker, budget);
            rec.queries = out.queries;
            rec.period = out.period;
            rec.success = out.verified && out.distinct &&
                          inst.verify(TaggedCiphertext{out.forged, ct.tag});
            return rec;
        } catch (const DegenerateNonce&) {
            nonce = (nonce + 1) & fs.mask();
        }
    }
}

TrialRecord run_prost_trial(const ExperimentConfig& cfg, const FieldSpec& fs, int trial,
                            int budget, std::size_t demo_len) {
    SplitMix64 world(trial_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
    const Permutation pub = Permutation::random(cfg.bits, world.next());
    const Word k1 = world.next_bits(cfg.bits);
    const Word k2 = world.next_bits(cfg.bits);
    const EvenMansourCipher em(pub, k1, k2);
    Word nonce = fresh_nonce(cfg.bits, world);
    const Blocks demo = random_blocks(demo_len, cfg.bits, world);
    SplitMix64 attacker(world.next());

    TrialRecord rec;
    rec.trial = trial;
    for (;;) {
        try {
            const ProstOtrInstance inst(em, fs, nonce);
            const ProstTagOracle oracle(inst, TagOracle::Mode::PlaintextInput);
            ProstKeyRecovery out =
                recover_prost_keys(oracle, pub, fs, nonce, attacker, budget);
            rec.queries = out.queries;
            rec.period = out.gap_period;
            out.exact = out.l && out.l->value() == inst.l().value() && out.k1 == k1 &&
                        out.k2 == k2;
            bool ok = out.verified && out.exact && out.gap_period;
            if (ok) {
                // The recovered mask must close the mask-gap relation and the
                // reconstructed instance must forge like the genuine one.
                ok = (fs.element(10) * inst.l()).value() ==
                     (*out.gap_period ^ out.gap_constant);
                const TaggedCiphertext forged = universal_forge(demo, nonce, out, pub, fs);
                ok = ok && forged == inst.encrypt(demo);
            }
            rec.success = ok;
            return rec;
        } catch (const DegenerateNonce&) {
            nonce = (nonce + 1) & fs.mask();
        }
    }
}

TrialRecord run_simon_trial(const ExperimentConfig& cfg, int trial, int budget) {
    SplitMix64 world(trial_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
    const Word mask = (Word{1} << cfg.bits) - 1;
    const Word planted = 1 + static_cast<Word>(world.next_below(mask));
    const BooleanFunctionTable table = planted_period_table(cfg.bits, planted, world);
    SplitMix64 attacker(world.next());

    TrialRecord rec;
    rec.trial = trial;
    const PeriodResult res = recover_period(table, attacker, budget);
    rec.queries = res.queries;
    rec.period = res.period;
    rec.success = res.period && *res.period == planted;
    return rec;
}

std::size_t natural_blocks(const ExperimentConfig& cfg) {
    switch (cfg.attack) {
        case AttackKind::OtrFiveBlock:
            if (cfg.blocks && cfg.blocks != 5)
                throw std::invalid_argument("this forgery is defined on five blocks");
            return 5;
        case AttackKind::OtrFourBlock:
            if (cfg.blocks && cfg.blocks != 4)
                throw std::invalid_argument("this forgery is defined on four blocks");
            return 4;
        case AttackKind::ProstRecovery: {
            const std::size_t d = cfg.blocks ? cfg.blocks : 5;
            if (d < 2 || d > 64)
                throw std::invalid_argument("demo message length out of range (2..64)");
            return d;
        }
        case AttackKind::SimonDemo:
            return 0;
    }
    throw std::invalid_argument("unknown attack kind");
}

int recovery_stages(AttackKind k) {
    return k == AttackKind::ProstRecovery ? 2 : 1;
}

void append_row(std::ostream& csv, const TrialRecord& r) {
    char period[16] = "";
    if (r.period) std::snprintf(period, sizeof period, "%x", unsigned{*r.period});
    char row[96];
    std::snprintf(row, sizeof row, "%d,%d,%d,%s,%lld\n", r.trial, r.success ? 1 : 0,
                  r.queries, period, r.millis);
    csv << row;
}

}  // namespace

const char* attack_name(AttackKind k) {
    switch (k) {
        case AttackKind::OtrFiveBlock: return "attack-otr";
        case AttackKind::OtrFourBlock: return "attack-otr-d4";
        case AttackKind::ProstRecovery: return "attack-prost";
        case AttackKind::SimonDemo: return "simon-demo";
    }
    return "?";
}

ExperimentSummary run_attack_experiment(const ExperimentConfig& cfg, std::ostream& csv) {
    const bool needs_field = cfg.attack != AttackKind::SimonDemo;
    const int lo = needs_field ? 6 : 2;
    if (cfg.bits < lo || cfg.bits > 16)
        throw std::invalid_argument("block width out of range");
    if (cfg.trials < 1) throw std::invalid_argument("need at least one trial");
    if (!(cfg.c_factor > 0)) throw std::invalid_argument("c factor must be positive");
    const int budget = recovery_budget(cfg.c_factor, cfg.bits);
    const std::size_t d = natural_blocks(cfg);
    std::optional<FieldSpec> fs;
    if (needs_field)
        fs = cfg.poly ? FieldSpec(cfg.bits, *cfg.poly) : FieldSpec::standard(cfg.bits);
    else if (cfg.poly)
        throw std::invalid_argument("the planted-period demo takes no field modulus");

    ExperimentSummary s;
    s.attack = cfg.attack;
    s.bits = cfg.bits;
    s.trials = cfg.trials;
    s.budget = budget;

    csv << "trial,success,queries,period_hex,millis\n";
    long long total_queries = 0;
    for (int t = 0; t < cfg.trials; ++t) {
        const auto start = std::chrono::steady_clock::now();
        TrialRecord rec;
        switch (cfg.attack) {
            case AttackKind::OtrFiveBlock:
            case AttackKind::OtrFourBlock:
                rec = run_otr_trial(cfg, *fs, t, budget, d);
                break;
            case AttackKind::ProstRecovery:
                rec = run_prost_trial(cfg, *fs, t, budget, d);
                break;
            case AttackKind::SimonDemo:
                rec = run_simon_trial(cfg, t, budget);
                break;
        }
        rec.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
        append_row(csv, rec);
        s.successes += rec.success ? 1 : 0;
        total_queries += rec.queries;
        s.max_queries = std::max(s.max_queries, rec.queries);
        s.records.push_back(std::move(rec));
    }
    s.success_rate = double(s.successes) / double(s.trials);
    s.mean_queries = double(total_queries) / double(s.trials);
    s.bound = std::pow(prob_lower_bound(cfg.bits, cfg.c_factor),
                       recovery_stages(cfg.attack));
    const double sigma = std::sqrt(s.bound * (1.0 - s.bound) / double(s.trials));
    s.threshold = std::max(0.0, s.bound - 3.0 * sigma);
    s.passed = s.success_rate >= s.threshold;
    return s;
}

void write_summary(std::ostream& os, const ExperimentSummary& s) {
    char line[160];
    std::snprintf(line, sizeof line, "%s n=%d trials=%d budget=%d/recovery\n",
                  attack_name(s.attack), s.bits, s.trials, s.budget);
    os << line;
    std::snprintf(line, sizeof line, "successes %d/%d rate=%.6f\n", s.successes,
                  s.trials, s.success_rate);
    os << line;
    std::snprintf(line, sizeof line, "queries mean=%.2f max=%d\n", s.mean_queries,
                  s.max_queries);
    os << line;
    std::snprintf(line, sizeof line, "bound=%.9f threshold=%.9f verdict=%s\n", s.bound,
                  s.threshold, s.passed ? "PASS" : "BELOW-THRESHOLD");
    os << line;
}

void run_prob_curve(const std::vector<int>& n_list, const std::vector<double>& c_list,
                    int trials, std::uint64_t seed, std::ostream& csv) {
    if (n_list.empty() || c_list.empty())
        throw std::invalid_argument("need at least one width and one c value");
    for (int n : n_list)
        if (n < 1) throw std::invalid_argument("widths must be positive");
    csv << "n,c,bound,empirical\n";
    std::uint64_t row = 0;
    for (int n : n_list) {
        for (double c : c_list) {
            if (!(c > 0)) throw std::invalid_argument("c values must be positive");
            const double bound = prob_lower_bound(n, c);
            char empirical[16] = "";
            const int budget = static_cast<int>(std::ceil(c * n));
            if (n >= 6 && n <= 10 && budget >= n && trials >= 1) {
                const FieldSpec fs = FieldSpec::standard(n);
                const std::uint64_t row_seed = trial_seed(seed, row);
                int hits = 0;
                for (int t = 0; t < trials; ++t) {
                    SplitMix64 world(trial_seed(row_seed, static_cast<std::uint64_t>(t)));
                    const KeyedCipher cipher(n, world.next());
                    Word nonce = world.next_bits(n);
                    const Blocks m = random_blocks(5, n, world);
                    SplitMix64 attacker(world.next());
                    for (;;) {
                        try {
                            const OtrInstance inst(cipher, fs, nonce);
                            const TaggedCiphertext ct = inst.encrypt(m);
                            const OtrTagOracle oracle(inst,
                                                      TagOracle::Mode::CiphertextInput);
                            const BooleanFunctionTable table =
                                tag_swap_table(ct, oracle, 2, 4);
                            const PeriodResult res =
                                recover_period(table, attacker, budget);
                            hits += res.period ? 1 : 0;
                            break;
                        } catch (const DegenerateNonce&) {
                            nonce = (nonce + 1) & fs.mask();
                        }
                    }
                }
                std::snprintf(empirical, sizeof empirical, "%.6f",
                              double(hits) / double(trials));
            }
            char line[96];
            std::snprintf(line, sizeof line, "%d,%g,%.9f,%s\n", n, c, bound, empirical);
            csv << line;
            ++row;
        }
    }
}

}  // namespace otrforge
