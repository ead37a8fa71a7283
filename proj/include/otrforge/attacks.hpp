#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "otrforge/otr.hpp"
#include "otrforge/simon.hpp"

namespace otrforge {

// Everything the adversary touches goes through this interface; instance
// secrets never cross it. Ciphertext-input oracles answer "which tag would
// authenticate these blocks" (the receiver's check), plaintext-input
// oracles answer "which tag does encrypting these blocks produce". Building
// a full truth table through an oracle models superposition access and is
// not charged against the query budget; only measurement samples are.
class TagOracle {
public:
    enum class Mode { CiphertextInput, PlaintextInput };

    virtual ~TagOracle() = default;
    Mode mode() const { return mode_; }
    virtual int width() const = 0;

    Word query(const Blocks& blocks) const {
        ++calls_;
        return evaluate(blocks);
    }
    std::uint64_t calls() const { return calls_; }

protected:
    explicit TagOracle(Mode m) : mode_(m) {}
    virtual Word evaluate(const Blocks&) const = 0;

private:
    Mode mode_;
    mutable std::uint64_t calls_ = 0;
};

class OtrTagOracle final : public TagOracle {
public:
    OtrTagOracle(const OtrInstance& inst, Mode m) : TagOracle(m), inst_(inst) {}
    int width() const override { return inst_.field().width; }

private:
    Word evaluate(const Blocks& b) const override {
        return mode() == Mode::CiphertextInput ? inst_.tag_from_ciphertext(b)
                                               : inst_.encrypt(b).tag;
    }
    const OtrInstance& inst_;
};

class ProstTagOracle final : public TagOracle {
public:
    ProstTagOracle(const ProstOtrInstance& inst, Mode m) : TagOracle(m), inst_(inst) {}
    int width() const override { return inst_.field().width; }

private:
    Word evaluate(const Blocks& b) const override {
        return mode() == Mode::CiphertextInput ? inst_.tag_from_ciphertext(b)
                                               : inst_.encrypt(b).tag;
    }
    const ProstOtrInstance& inst_;
};

using QueryLog = std::vector<std::pair<Blocks, Word>>;

// Tag of the intercepted ciphertext with the blocks at 1-based positions
// pos_a and pos_b replaced by x and x ^ (C[pos_a] ^ C[pos_b]); every other
// position keeps its intercepted block. A period of this table is a
// correction under which the two positions swap without disturbing the tag.
// Needs a ciphertext-input oracle.
BooleanFunctionTable tag_swap_table(const TaggedCiphertext& ct, const TagOracle& oracle,
                                    std::size_t pos_a, std::size_t pos_b);

struct ForgeryOutcome {
    TaggedCiphertext original;
    Blocks forged;                // equals original.c until a forgery lands
    std::optional<Word> period;   // the recovered swap correction
    int queries = 0;              // measurement samples across all attempts
    bool verified = false;        // oracle confirms forged blocks carry the tag
    bool distinct = false;        // forged differs from the intercepted blocks
};

// Forgery against a five-block ciphertext: recover the swap correction for
// positions (2,4) from the tag-swap table, then XOR it into those blocks.
// Up to three retries re-run period recovery with fresh randomness.
// max_queries_per_recovery 0 picks the 4n default.
ForgeryOutcome forge_otr(const TaggedCiphertext& ct, const TagOracle& oracle,
                         SplitMix64& rng, int max_queries_per_recovery = 0);

// Four-block variant: the two middle positions (2,3) carry the correction.
ForgeryOutcome forge_otr_d4(const TaggedCiphertext& ct, const TagOracle& oracle,
                            SplitMix64& rng, int max_queries_per_recovery = 0);

// XOR of the tags of a two-block and a four-block message sharing the same
// varying second block; the fixed fourth block is c. The tag masks differ
// by (16 ^ 26) L = 10 L, so the table's period is c ^ 10L. Plaintext-input
// oracle. Odd-position fillers never enter a tag.
BooleanFunctionTable mask_gap_table(const TagOracle& oracle, Word c, Word filler1,
                                    Word filler3, QueryLog* log = nullptr);

// Tag of the two-block message with second block x ^ 16L, XORed with the
// public permutation at x. The keyed and unkeyed calls line up, leaving
// k2 ^ P(x ^ k1) ^ P(x): the period is the input whitening key k1.
BooleanFunctionTable whitening_gap_table(const TagOracle& oracle,
                                         const Permutation& public_perm,
                                         const FieldElement& l, Word filler1,
                                         QueryLog* log = nullptr);

struct ProstKeyRecovery {
    std::optional<FieldElement> l;
    Word k1 = 0, k2 = 0;
    std::optional<Word> gap_period;  // period of the mask-gap table
    Word gap_constant = 0;           // the c the successful attempt used
    int queries = 0;                 // measurement samples, both stages
    bool verified = false;  // reconstruction replays every observed oracle answer
    bool exact = false;      // set by harnesses holding the true secrets
};

// Full key recovery against the Even-Mansour instance behind a
// plaintext-input oracle: the mask-gap period yields L, the whitening-gap
// period yields k1 (a constant table means k1 = 0), one classical query
// yields k2. The recovered triple is then replayed against every oracle
// answer observed during the attack.
ProstKeyRecovery recover_prost_keys(const TagOracle& oracle,
                                    const Permutation& public_perm,
                                    const FieldSpec& fs, Word nonce, SplitMix64& rng,
                                    int max_queries_per_recovery = 0);

// Encrypt-and-tag any message with the recovered keys; refuses unless the
// recovery verified.
TaggedCiphertext universal_forge(const Blocks& m, Word nonce,
                                 const ProstKeyRecovery& rec,
                                 const Permutation& public_perm, const FieldSpec& fs);

}  // namespace otrforge
