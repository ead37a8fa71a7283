#pragma once

#include <cstdint>
#include <vector>

#include "otrforge/gf2n.hpp"
#include "otrforge/rng.hpp"

namespace otrforge {

// Bijection on n-bit words with both directions tabulated.
class Permutation {
public:
    // Uniform random permutation from a seeded Fisher-Yates shuffle.
    // Same (width, seed) always yields the same table. Width 6..16: this is
    // the lab's stand-in for an ideal cipher, so it follows the mode floor.
    static Permutation random(int width, std::uint64_t seed);

    // Explicit table, any width 1..16; validates bijectivity.
    static Permutation from_table(int width, std::vector<Word> forward);

    Word apply(Word x) const;
    Word invert(Word y) const;
    int width() const { return width_; }
    const std::vector<Word>& table() const { return forward_; }

    bool operator==(const Permutation&) const = default;

private:
    Permutation(int width, std::vector<Word> fwd, std::vector<Word> inv);
    int width_;
    std::vector<Word> forward_, inverse_;
};

// "Ideal cipher" at one fixed key: a seeded random permutation. The AEAD
// mode only ever calls the forward direction.
class KeyedCipher {
public:
    KeyedCipher(int width, std::uint64_t key);

    Word encrypt(Word x) const { return perm_.apply(x); }
    int width() const { return perm_.width(); }
    std::uint64_t key() const { return key_; }
    const Permutation& permutation() const { return perm_; }

private:
    std::uint64_t key_;
    Permutation perm_;
};

// Single-permutation Even-Mansour: E(x) = k2 ^ P(x ^ k1) over a public P.
class EvenMansourCipher {
public:
    EvenMansourCipher(Permutation p, Word k1, Word k2);

    Word encrypt(Word x) const;
    Word decrypt(Word y) const;
    int width() const { return perm_.width(); }
    Word k1() const { return k1_; }
    Word k2() const { return k2_; }
    const Permutation& permutation() const { return perm_; }

private:
    Permutation perm_;
    Word k1_, k2_;
};

}  // namespace otrforge
