// Acceptance gate: seven scaled-down criteria, one pass/fail line each.
// Exit status is the number of failed criteria. Info lines record observed
// verdicts that are reported rather than asserted.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "otrforge/attacks.hpp"
#include "otrforge/experiment.hpp"
#include "otrforge/rng.hpp"
#include "otrforge/selftest.hpp"
#include "otrforge/stats.hpp"

using namespace otrforge;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

OtrInstance make_otr(int width, std::uint64_t key, Word nonce) {
    const FieldSpec fs = FieldSpec::standard(width);
    const KeyedCipher cipher(width, key);
    for (;;) {
        try {
            return OtrInstance(cipher, fs, nonce);
        } catch (const DegenerateNonce&) {
            nonce = (nonce + 1) & fs.mask();
        }
    }
}

ProstOtrInstance make_prost(const EvenMansourCipher& em, const FieldSpec& fs,
                            Word nonce) {
    for (;;) {
        try {
            return ProstOtrInstance(em, fs, nonce);
        } catch (const DegenerateNonce&) {
            nonce = (nonce + 1) & fs.mask();
        }
    }
}

Word scaled_delta(const OtrInstance& inst, unsigned k) {
    return (inst.field().element(k) * inst.delta()).value();
}

Word predicted_period_d5(const OtrInstance& inst, const Blocks& c) {
    const Word mu1 = inst.cipher().encrypt(scaled_delta(inst, 5) ^ c[0]);
    const Word mu2 = inst.cipher().encrypt(scaled_delta(inst, 9) ^ c[2]);
    return scaled_delta(inst, 12) ^ (c[1] ^ c[3]) ^ mu1 ^ mu2;
}

bool criterion1_mode_consistency() {
    const auto t0 = std::chrono::steady_clock::now();
    SplitMix64 rng(0xC1);
    long long mismatches = 0;
    for (int width : {6, 8, 10}) {
        const OtrInstance inst = make_otr(width, rng.next(), rng.next_bits(width));
        for (std::size_t d : {2u, 4u, 5u, 7u}) {
            for (int i = 0; i < 1000; ++i) {
                Blocks m(d);
                for (auto& b : m) b = rng.next_bits(width);
                const TaggedCiphertext ct = inst.encrypt(m);
                if (inst.decrypt(ct.c) != m) ++mismatches;
                if (inst.tag_from_ciphertext(ct.c) != ct.tag) ++mismatches;
                if (!inst.verify(ct)) ++mismatches;
            }
        }
    }
    const double secs = seconds_since(t0);
    const bool ok = mismatches == 0 && secs < 30.0;
    std::printf("[%s] 1 mode consistency: 12000 messages, %lld mismatches, %.1fs\n",
                ok ? "PASS" : "FAIL", mismatches, secs);
    return ok;
}

bool criterion2_orthogonality() {
    const auto t0 = std::chrono::steady_clock::now();
    SplitMix64 rng(0xC2);

    long long violations = 0;
    const Word s8 = 1 + static_cast<Word>(rng.next_below(255));
    const BooleanFunctionTable f8 = planted_period_table(8, s8, rng);
    for (int i = 0; i < 10000; ++i)
        if (std::popcount(simon_sample(f8, rng) & s8) % 2 != 0) ++violations;

    double min_p = 1.0;
    for (int n : {5, 6}) {
        const Word s = 1 + static_cast<Word>(rng.next_below((Word{1} << n) - 1));
        const BooleanFunctionTable f = planted_period_table(n, s, rng);
        std::map<Word, long long> counts;
        for (Word y = 0; y < (Word{1} << n); ++y)
            if (std::popcount(y & s) % 2 == 0) counts[y] = 0;
        const int draws = 100000;
        for (int i = 0; i < draws; ++i) {
            const Word y = simon_sample(f, rng);
            const auto it = counts.find(y);
            if (it == counts.end()) {
                ++violations;
                continue;
            }
            ++it->second;
        }
        const double expected = double(draws) / double(counts.size());
        double stat = 0;
        for (const auto& [y, c] : counts)
            stat += (double(c) - expected) * (double(c) - expected) / expected;
        min_p = std::min(min_p, chi_square_pvalue(stat, int(counts.size()) - 1));
    }

    const double secs = seconds_since(t0);
    const bool ok = violations == 0 && min_p > 0.001;
    std::printf("[%s] 2 sample orthogonality: 0 required violations got %lld, "
                "uniformity min p=%.4f, %.1fs\n",
                ok ? "PASS" : "FAIL", violations, min_p, secs);
    return ok;
}

bool criterion3_linear_queries() {
    const auto t0 = std::chrono::steady_clock::now();
    SplitMix64 rng(0xC3);
    bool ok = true;
    std::string detail;
    for (int n : {6, 8, 10, 12}) {
        long long total = 0;
        for (int i = 0; i < 1000; ++i) {
            const Word s = 1 + static_cast<Word>(rng.next_below((Word{1} << n) - 1));
            const BooleanFunctionTable f = planted_period_table(n, s, rng);
            const PeriodResult res = recover_period(f, rng);
            total += res.queries;
            if (!res.period || *res.period != s) ok = false;
        }
        const double mean = double(total) / 1000.0;
        if (mean > 3.0 * n) ok = false;
        char buf[32];
        std::snprintf(buf, sizeof buf, " n=%d:%.2f", n, mean);
        detail += buf;
    }
    const double secs = seconds_since(t0);
    std::printf("[%s] 3 linear query cost: mean samples%s (limit 3n), %.1fs\n",
                ok ? "PASS" : "FAIL", detail.c_str(), secs);
    return ok;
}

bool criterion4_otr_forgeries() {
    bool all_ok = true;
    for (const std::size_t d : {std::size_t{5}, std::size_t{4}}) {
        const auto t0 = std::chrono::steady_clock::now();
        SplitMix64 master(0xC4 + d);
        int verified = 0, indistinct = 0, alt_form = 0;
        for (int rep = 0; rep < 100; ++rep) {
            SplitMix64 rng(master.next());
            const OtrInstance inst = make_otr(8, rng.next(), rng.next_bits(8));
            const OtrTagOracle oracle(inst, TagOracle::Mode::CiphertextInput);
            Blocks m(d);
            for (auto& b : m) b = rng.next_bits(8);
            const TaggedCiphertext ct = inst.encrypt(m);
            const ForgeryOutcome out = d == 5 ? forge_otr(ct, oracle, rng)
                                              : forge_otr_d4(ct, oracle, rng);
            if (out.verified && inst.verify(TaggedCiphertext{out.forged, ct.tag})) {
                ++verified;
                if (!out.distinct || out.forged == ct.c) ++indistinct;
            }

            // verdict only: the cross-swap form with fixed offsets, built
            // with ground-truth masks, counted but never required
            const Word w13 = scaled_delta(inst, 13);
            const Word w12 = scaled_delta(inst, 12);
            Blocks alt = d == 5 ? Blocks{w13 ^ ct.c[2], w12 ^ ct.c[3], w13 ^ ct.c[0],
                                         w12 ^ ct.c[1], ct.c[4]}
                                : Blocks{w13 ^ ct.c[3], w12 ^ ct.c[2], w12 ^ ct.c[1],
                                         w13 ^ ct.c[0]};
            if (alt != ct.c && inst.verify(TaggedCiphertext{alt, ct.tag})) ++alt_form;
        }
        const double secs = seconds_since(t0);
        const bool ok = verified >= 95 && indistinct == 0 && secs < 120.0;
        all_ok = all_ok && ok;
        std::printf("[%s] 4 existential forgery d=%zu: %d/100 verified distinct, "
                    "%.1fs\n",
                    ok ? "PASS" : "FAIL", d, verified, secs);
        std::printf("[info] d=%zu cross-swap fixed-offset form verified %d/100\n", d,
                    alt_form);
    }
    return all_ok;
}

bool criterion5_key_recovery() {
    const auto t0 = std::chrono::steady_clock::now();
    SplitMix64 master(0xC5);
    const FieldSpec fs = FieldSpec::standard(8);
    int exact = 0, relation_failures = 0;
    long long forge_mismatches = 0;
    for (int rep = 0; rep < 100; ++rep) {
        SplitMix64 rng(master.next());
        const Permutation pub = Permutation::random(8, rng.next());
        const Word k1 = rng.next_bits(8), k2 = rng.next_bits(8);
        const EvenMansourCipher em(pub, k1, k2);
        const ProstOtrInstance inst = make_prost(em, fs, rng.next_bits(8));
        const ProstTagOracle oracle(inst, TagOracle::Mode::PlaintextInput);
        const ProstKeyRecovery rec =
            recover_prost_keys(oracle, pub, fs, inst.nonce(), rng);
        if (!(rec.verified && rec.l && rec.l->value() == inst.l().value() &&
              rec.k1 == k1 && rec.k2 == k2))
            continue;
        ++exact;
        if (!rec.gap_period ||
            (fs.element(10) * inst.l()).value() != (*rec.gap_period ^ rec.gap_constant))
            ++relation_failures;
        for (int i = 0; i < 100; ++i) {
            Blocks msg(2 + rng.next_below(8));  // d uniform in 2..9
            for (auto& b : msg) b = rng.next_bits(8);
            if (universal_forge(msg, inst.nonce(), rec, pub, fs) != inst.encrypt(msg))
                ++forge_mismatches;
        }
    }
    const double secs = seconds_since(t0);
    const bool ok =
        exact >= 95 && relation_failures == 0 && forge_mismatches == 0 && secs < 180.0;
    std::printf("[%s] 5 key recovery: %d/100 exact, %lld forge mismatches, "
                "%d mask relation failures, %.1fs\n",
                ok ? "PASS" : "FAIL", exact, forge_mismatches, relation_failures, secs);
    return ok;
}

bool criterion6_success_bound() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = prob_lower_bound(128, 4.0) >= 1.0 - std::ldexp(1.0, -128);

    std::ostringstream csv;
    const int trials = 200;
    run_prob_curve({6, 8, 10, 128}, {1.0, 2.0, 3.0, 4.0}, trials, 0xC6, csv);
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    if (line != "n,c,bound,empirical") ok = false;
    int prev_n = -1;
    double prev_bound = -1, row84_bound = -1, row84_emp = -1;
    while (std::getline(in, line)) {
        int n;
        double c, bound;
        char emp[32] = "";
        if (std::sscanf(line.c_str(), "%d,%lf,%lf,%31s", &n, &c, &bound, emp) < 3) {
            ok = false;
            continue;
        }
        if (n == prev_n && bound < prev_bound) ok = false;
        prev_n = n;
        prev_bound = bound;
        if (n == 8 && c == 4.0) {
            row84_bound = bound;
            row84_emp = std::atof(emp);
        }
    }
    const double sigma = std::sqrt(row84_bound * (1.0 - row84_bound) / trials);
    if (row84_emp < 0 || row84_emp < row84_bound - 3.0 * sigma) ok = false;

    const double secs = seconds_since(t0);
    std::printf("[%s] 6 analytic bound: wide-block floor holds, curve monotone, "
                "empirical(8,4)=%.4f >= %.4f, %.1fs\n",
                ok ? "PASS" : "FAIL", row84_emp, row84_bound - 3.0 * sigma, secs);
    return ok;
}

// Expected period set of a table against ground truth, degeneracy-aware: a
// collapsed (constant) table is periodic under every nonzero shift.
bool periods_as_predicted(const BooleanFunctionTable& f, Word predicted,
                          int* degenerate) {
    const std::vector<Word> got = brute_force_periods(f);
    if (predicted == 0) {
        ++*degenerate;
        return f.is_constant() && got.size() == f.size() - 1;
    }
    return got.size() == 1 && got[0] == predicted;
}

bool criterion7_ground_truth() {
    const auto t0 = std::chrono::steady_clock::now();
    const FieldSpec fs = FieldSpec::standard(8);
    bool ok = true;
    int degenerate = 0;

    {  // even-position swap template on five-block ciphertexts
        SplitMix64 rng(0xC701);
        for (int rep = 0; rep < 100; ++rep) {
            const OtrInstance inst = make_otr(8, rng.next(), rng.next_bits(8));
            const OtrTagOracle oracle(inst, TagOracle::Mode::CiphertextInput);
            Blocks m(5);
            for (auto& b : m) b = rng.next_bits(8);
            const TaggedCiphertext ct = inst.encrypt(m);
            const BooleanFunctionTable f = tag_swap_table(ct, oracle, 2, 4);
            if (!periods_as_predicted(f, predicted_period_d5(inst, ct.c), &degenerate))
                ok = false;
        }
    }
    {  // mask-gap table between the two- and four-block tag masks
        SplitMix64 rng(0xC702);
        for (int rep = 0; rep < 100; ++rep) {
            const Permutation pub = Permutation::random(8, rng.next());
            const EvenMansourCipher em(pub, rng.next_bits(8), rng.next_bits(8));
            const ProstOtrInstance inst = make_prost(em, fs, rng.next_bits(8));
            const ProstTagOracle oracle(inst, TagOracle::Mode::PlaintextInput);
            const Word c = rng.next_bits(8);
            const BooleanFunctionTable f =
                mask_gap_table(oracle, c, rng.next_bits(8), rng.next_bits(8));
            const Word predicted = c ^ (fs.element(10) * inst.l()).value();
            if (!periods_as_predicted(f, predicted, &degenerate)) ok = false;
        }
    }
    {  // whitening-gap table whose period is the input key itself
        SplitMix64 rng(0xC703);
        for (int rep = 0; rep < 100; ++rep) {
            const Permutation pub = Permutation::random(8, rng.next());
            const Word k1 = rng.next_bits(8);
            const EvenMansourCipher em(pub, k1, rng.next_bits(8));
            const ProstOtrInstance inst = make_prost(em, fs, rng.next_bits(8));
            const ProstTagOracle oracle(inst, TagOracle::Mode::PlaintextInput);
            const BooleanFunctionTable f =
                whitening_gap_table(oracle, pub, inst.l(), rng.next_bits(8));
            if (!periods_as_predicted(f, k1, &degenerate)) ok = false;
        }
    }

    // odd-position swap template: adjudicated, reported, never required
    int aperiodic = 0, offset_form = 0;
    {
        SplitMix64 rng(0xC704);
        for (int rep = 0; rep < 100; ++rep) {
            const OtrInstance inst = make_otr(8, rng.next(), rng.next_bits(8));
            const OtrTagOracle oracle(inst, TagOracle::Mode::CiphertextInput);
            Blocks m(5);
            for (auto& b : m) b = rng.next_bits(8);
            const TaggedCiphertext ct = inst.encrypt(m);
            const BooleanFunctionTable f = tag_swap_table(ct, oracle, 1, 3);
            const std::vector<Word> got = brute_force_periods(f);
            if (got.empty()) ++aperiodic;
            const Word claim = scaled_delta(inst, 13) ^ ct.c[0] ^ ct.c[2];
            if (claim != 0 && std::count(got.begin(), got.end(), claim)) ++offset_form;
        }
    }

    const double secs = seconds_since(t0);
    std::printf("[%s] 7 brute-force adjudication: 300 tables match predictions "
                "(%d degenerate draws), %.1fs\n",
                ok ? "PASS" : "FAIL", degenerate, secs);
    std::printf("[info] odd-position swap template: %d/100 aperiodic, fixed-offset "
                "period present %d/100\n",
                aperiodic, offset_form);
    return ok;
}

}  // namespace

int main() {
    int failures = 0;
    failures += !criterion1_mode_consistency();
    failures += !criterion2_orthogonality();
    failures += !criterion3_linear_queries();
    failures += !criterion4_otr_forgeries();
    failures += !criterion5_key_recovery();
    failures += !criterion6_success_bound();
    failures += !criterion7_ground_truth();
    std::printf("%d of 7 criteria failed\n", failures);
    return failures;
}
