#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "otrforge/cipher.hpp"
#include "otrforge/gf2n.hpp"

namespace otrforge {

using Blocks = std::vector<Word>;

struct TaggedCiphertext {
    Blocks c;
    Word tag = 0;
    bool operator==(const TaggedCiphertext&) const = default;
};

// Nonce derivation hit a zero mask; the caller picks another nonce.
struct DegenerateNonce : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Tag-mask coefficient for a d-block message: 16 for d=2, 26 for d=4,
// 3*(2^(ceil(d/2)+1) xor 1) xor 1 (carry-less, reduced in-field) otherwise.
// The d=4 value is the same number the general formula produces; both short
// cases are pinned explicitly because the attacks lean on 16 ^ 26 = 10.
FieldElement tag_coefficient(const FieldSpec& fs, std::size_t d);

// Two-round Feistel AEAD over full n-bit blocks, keyed per nonce.
//
//   delta = E(nonce), L = E(nonce^1), L* = L ^ delta;  all masks are field
//   multiples of delta, doubled from pair to pair. Pair i (blocks 2i-1, 2i;
//   1-based) encrypts as
//       C[2i-1] = E(2^(i+1) delta ^ M[2i-1]) ^ M[2i]
//       C[2i]   = E((2^(i+1)+1) delta ^ C[2i-1]) ^ M[2i-1]
//   except that the last pair of an even-length message runs mirrored
//   (C[d] from the first call, C[d-1] from the second) and an odd-length
//   message ends with the tail block C[d] = E(2^(ceil(d/2)+1) delta) ^ M[d].
//   The tag is E(mask ^ Sigma) where Sigma XORs the even-indexed plaintext
//   blocks (plus the tail block when d is odd) and mask is 3L* ^ delta for
//   odd d, tag_coefficient(d) * delta for even d.
//
// Decryption needs only the forward direction of E. Instances are immutable.
class OtrInstance {
public:
    OtrInstance(KeyedCipher e, FieldSpec fs, Word nonce);

    TaggedCiphertext encrypt(const Blocks& m) const;
    Blocks decrypt(const Blocks& c) const;
    bool verify(const TaggedCiphertext& ct) const;

    // The tag that authenticates the given ciphertext blocks. For d = 4 and
    // d = 5 this evaluates the unrolled closed form of the tag (the route the
    // forgery analysis works with); otherwise decrypt-then-tag. Both routes
    // agree everywhere; tests pin that.
    Word tag_from_ciphertext(const Blocks& c) const;

    const FieldElement& delta() const { return delta_; }
    const FieldElement& l() const { return l_; }
    const FieldElement& lstar() const { return lstar_; }
    Word nonce() const { return nonce_; }
    const KeyedCipher& cipher() const { return cipher_; }
    const FieldSpec& field() const { return fs_; }

private:
    KeyedCipher cipher_;
    FieldSpec fs_;
    Word nonce_;
    FieldElement delta_, l_, lstar_;
};

// Same block structure with the block cipher replaced by single-permutation
// Even-Mansour and every mask a multiple of L = E(nonce); the tag is
// E(tag_coefficient(d) * L ^ Sigma) for every d.
class ProstOtrInstance {
public:
    ProstOtrInstance(EvenMansourCipher em, FieldSpec fs, Word nonce);

    TaggedCiphertext encrypt(const Blocks& m) const;
    Blocks decrypt(const Blocks& c) const;
    bool verify(const TaggedCiphertext& ct) const;
    Word tag_from_ciphertext(const Blocks& c) const;  // decrypt-then-tag

    const FieldElement& l() const { return l_; }
    Word nonce() const { return nonce_; }
    const EvenMansourCipher& cipher() const { return em_; }
    const FieldSpec& field() const { return fs_; }

private:
    EvenMansourCipher em_;
    FieldSpec fs_;
    Word nonce_;
    FieldElement l_;
};

namespace detail {
// Closed-form tag routes, exposed so the self-check can re-evaluate the
// four-block form under an injected (wrong) coefficient.
Word closed_tag_5(const OtrInstance& inst, const Blocks& c);
Word closed_tag_4(const OtrInstance& inst, const Blocks& c, const FieldElement& coeff);
}  // namespace detail

}  // namespace otrforge
