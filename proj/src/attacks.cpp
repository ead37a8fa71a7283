#include "otrforge/attacks.hpp"

#include <stdexcept>

namespace otrforge {

namespace {

void require_mode(const TagOracle& oracle, TagOracle::Mode want, const char* who) {
    if (oracle.mode() != want)
        throw std::invalid_argument(std::string(who) + ": oracle has the wrong input mode");
}

}  // namespace

BooleanFunctionTable tag_swap_table(const TaggedCiphertext& ct, const TagOracle& oracle,
                                    std::size_t pos_a, std::size_t pos_b) {
    require_mode(oracle, TagOracle::Mode::CiphertextInput, "tag_swap_table");
    const std::size_t d = ct.c.size();
    if (pos_a < 1 || pos_b < 1 || pos_a > d || pos_b > d || pos_a == pos_b)
        throw std::invalid_argument("tag_swap_table: positions out of range");
    const int n = oracle.width();
    const Word offset = ct.c[pos_a - 1] ^ ct.c[pos_b - 1];
    const std::size_t size = std::size_t{1} << n;
    std::vector<Word> values(size);
    Blocks probe = ct.c;
    for (Word x = 0; x < size; ++x) {
        probe[pos_a - 1] = x;
        probe[pos_b - 1] = x ^ offset;
        values[x] = oracle.query(probe);
    }
    return BooleanFunctionTable(n, std::move(values));
}

namespace {

// Shared driver: recover a period of the swap table for the given position
// pair, XOR it into both positions, confirm the original tag still
// authenticates. A spurious candidate that slips past the recovery's spot
// checks is caught here and triggers another recovery round.
ForgeryOutcome forge_by_swap(const TaggedCiphertext& ct, const TagOracle& oracle,
                             SplitMix64& rng, int max_queries, std::size_t pos_a,
                             std::size_t pos_b) {
    ForgeryOutcome out;
    out.original = ct;
    out.forged = ct.c;
    const BooleanFunctionTable table = tag_swap_table(ct, oracle, pos_a, pos_b);
    for (int attempt = 0; attempt < 4; ++attempt) {
        const PeriodResult res = recover_period(table, rng, max_queries);
        out.queries += res.queries;
        if (!res.period) continue;
        Blocks cand = ct.c;
        cand[pos_a - 1] ^= *res.period;
        cand[pos_b - 1] ^= *res.period;
        if (oracle.query(cand) != ct.tag) continue;
        out.period = *res.period;
        out.forged = std::move(cand);
        out.verified = true;
        out.distinct = out.forged != ct.c;
        break;
    }
    return out;
}

}  // namespace

ForgeryOutcome forge_otr(const TaggedCiphertext& ct, const TagOracle& oracle,
                         SplitMix64& rng, int max_queries_per_recovery) {
    if (ct.c.size() != 5)
        throw std::invalid_argument("forge_otr: expects a five-block ciphertext");
    return forge_by_swap(ct, oracle, rng, max_queries_per_recovery, 2, 4);
}

ForgeryOutcome forge_otr_d4(const TaggedCiphertext& ct, const TagOracle& oracle,
                            SplitMix64& rng, int max_queries_per_recovery) {
    if (ct.c.size() != 4)
        throw std::invalid_argument("forge_otr_d4: expects a four-block ciphertext");
    return forge_by_swap(ct, oracle, rng, max_queries_per_recovery, 2, 3);
}

BooleanFunctionTable mask_gap_table(const TagOracle& oracle, Word c, Word filler1,
                                    Word filler3, QueryLog* log) {
    require_mode(oracle, TagOracle::Mode::PlaintextInput, "mask_gap_table");
    const int n = oracle.width();
    const std::size_t size = std::size_t{1} << n;
    std::vector<Word> values(size);
    for (Word x = 0; x < size; ++x) {
        const Blocks two{filler1, x};
        const Blocks four{filler1, x, filler3, c};
        const Word t2 = oracle.query(two);
        const Word t4 = oracle.query(four);
        if (log) {
            log->emplace_back(two, t2);
            log->emplace_back(four, t4);
        }
        values[x] = t2 ^ t4;
    }
    return BooleanFunctionTable(n, std::move(values));
}

BooleanFunctionTable whitening_gap_table(const TagOracle& oracle,
                                         const Permutation& public_perm,
                                         const FieldElement& l, Word filler1,
                                         QueryLog* log) {
    require_mode(oracle, TagOracle::Mode::PlaintextInput, "whitening_gap_table");
    const int n = oracle.width();
    if (public_perm.width() != n || l.spec().width != n)
        throw std::invalid_argument("whitening_gap_table: width mismatch");
    const Word shift = (l.spec().element(16) * l).value();
    const std::size_t size = std::size_t{1} << n;
    std::vector<Word> values(size);
    for (Word x = 0; x < size; ++x) {
        const Blocks two{filler1, x ^ shift};
        const Word t = oracle.query(two);
        if (log) log->emplace_back(two, t);
        values[x] = t ^ public_perm.apply(x);
    }
    return BooleanFunctionTable(n, std::move(values));
}

ProstKeyRecovery recover_prost_keys(const TagOracle& oracle,
                                    const Permutation& public_perm,
                                    const FieldSpec& fs, Word nonce, SplitMix64& rng,
                                    int max_queries_per_recovery) {
    require_mode(oracle, TagOracle::Mode::PlaintextInput, "recover_prost_keys");
    if (oracle.width() != fs.width || public_perm.width() != fs.width)
        throw std::invalid_argument("recover_prost_keys: width mismatch");
    const int n = fs.width;
    ProstKeyRecovery rec;
    QueryLog log;

    // Stage 1: the base mask. The two-block and four-block tag masks differ
    // by 10L, so the mask-gap period s satisfies s = c ^ 10L. A constant
    // table means the draw hit c = 10L, which pins nothing; redraw c.
    std::optional<FieldElement> l;
    for (int attempt = 0; attempt < 4 && !l; ++attempt) {
        const Word c = rng.next_bits(n);
        const Word f1 = rng.next_bits(n);
        const Word f3 = rng.next_bits(n);
        const BooleanFunctionTable gap = mask_gap_table(oracle, c, f1, f3, &log);
        if (gap.is_constant()) continue;
        const PeriodResult res = recover_period(gap, rng, max_queries_per_recovery);
        rec.queries += res.queries;
        if (!res.period) continue;
        l = fs.element(*res.period ^ c) * fs.element(10).inverse();
        rec.gap_period = *res.period;
        rec.gap_constant = c;
    }
    if (!l || l->value() == 0) return rec;

    // Stage 2: the input whitening key. A constant table is not a failure
    // here: it is exactly the k1 = 0 signature.
    Word k1 = 0;
    const Word fw = rng.next_bits(n);
    const BooleanFunctionTable wgap = whitening_gap_table(oracle, public_perm, *l, fw, &log);
    if (!wgap.is_constant()) {
        bool found = false;
        for (int attempt = 0; attempt < 4 && !found; ++attempt) {
            const PeriodResult res = recover_period(wgap, rng, max_queries_per_recovery);
            rec.queries += res.queries;
            if (!res.period) continue;
            k1 = *res.period;
            found = true;
        }
        if (!found) return rec;
    }

    // Stage 3: one classical query strips the output whitening.
    const Word shift = (fs.element(16) * *l).value();
    const Word x0 = rng.next_bits(n);
    const Blocks probe{fw, x0 ^ shift};
    const Word t0 = oracle.query(probe);
    log.emplace_back(probe, t0);
    const Word k2 = public_perm.apply(x0 ^ k1) ^ t0;

    rec.l = l;
    rec.k1 = k1;
    rec.k2 = k2;

    // Replay every answer the oracle gave against a reconstruction under the
    // recovered keys. The mask must also match, or the reconstruction tags
    // with the wrong schedule even if the whitening keys line up.
    const EvenMansourCipher em(public_perm, k1, k2);
    if (em.encrypt(nonce) != l->value()) return rec;
    const ProstOtrInstance replay(em, fs, nonce);
    for (const auto& [blocks, tag] : log)
        if (replay.encrypt(blocks).tag != tag) return rec;
    rec.verified = true;
    return rec;
}

TaggedCiphertext universal_forge(const Blocks& m, Word nonce,
                                 const ProstKeyRecovery& rec,
                                 const Permutation& public_perm, const FieldSpec& fs) {
    if (!rec.verified || !rec.l)
        throw std::logic_error("universal_forge: recovery did not verify");
    const EvenMansourCipher em(public_perm, rec.k1, rec.k2);
    const ProstOtrInstance inst(em, fs, nonce);
    return inst.encrypt(m);
}

}  // namespace otrforge
