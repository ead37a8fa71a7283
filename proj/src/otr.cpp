#include "otrforge/otr.hpp"

namespace otrforge {

namespace {

void validate_blocks(const FieldSpec& fs, const Blocks& b) {
    if (b.size() < 2)
        throw std::invalid_argument("message needs at least two blocks");
    for (const Word w : b)
        if (w > fs.mask())
            throw std::invalid_argument("block value wider than the field");
}

// XOR of the even-indexed (1-based) blocks, plus the tail block when the
// length is odd. The tag depends on the plaintext only through this value.
Word even_checksum(const Blocks& m) {
    Word s = 0;
    for (std::size_t i = 1; i < m.size(); i += 2) s ^= m[i];
    if (m.size() % 2 == 1) s ^= m.back();
    return s;
}

template <typename E>
Blocks encrypt_blocks(E&& enc, const FieldElement& base, const Blocks& m) {
    const std::size_t d = m.size();
    Blocks c(d);
    FieldElement mask = base.doubled().doubled();  // pair 1 uses 4*base
    const std::size_t interior = (d % 2) ? d / 2 : d / 2 - 1;
    for (std::size_t i = 0; i < interior; ++i) {
        const Word a = mask.value();
        const Word b = (mask + base).value();
        c[2 * i] = enc(a ^ m[2 * i]) ^ m[2 * i + 1];
        c[2 * i + 1] = enc(b ^ c[2 * i]) ^ m[2 * i];
        mask = mask.doubled();
    }
    if (d % 2) {
        c[d - 1] = enc(mask.value()) ^ m[d - 1];
    } else {
        // final pair mirrored: first call produces the last block
        const Word a = mask.value();
        const Word b = (mask + base).value();
        c[d - 1] = enc(a ^ m[d - 2]) ^ m[d - 1];
        c[d - 2] = enc(b ^ c[d - 1]) ^ m[d - 2];
    }
    return c;
}

template <typename E>
Blocks decrypt_blocks(E&& enc, const FieldElement& base, const Blocks& c) {
    const std::size_t d = c.size();
    Blocks m(d);
    FieldElement mask = base.doubled().doubled();
    const std::size_t interior = (d % 2) ? d / 2 : d / 2 - 1;
    for (std::size_t i = 0; i < interior; ++i) {
        const Word a = mask.value();
        const Word b = (mask + base).value();
        m[2 * i] = enc(b ^ c[2 * i]) ^ c[2 * i + 1];
        m[2 * i + 1] = enc(a ^ m[2 * i]) ^ c[2 * i];
        mask = mask.doubled();
    }
    if (d % 2) {
        m[d - 1] = enc(mask.value()) ^ c[d - 1];
    } else {
        const Word a = mask.value();
        const Word b = (mask + base).value();
        m[d - 2] = enc(b ^ c[d - 1]) ^ c[d - 2];
        m[d - 1] = enc(a ^ m[d - 2]) ^ c[d - 1];
    }
    return m;
}

}  // namespace

FieldElement tag_coefficient(const FieldSpec& fs, std::size_t d) {
    if (d < 2) throw std::invalid_argument("tag coefficient needs d >= 2");
    if (d == 2) return fs.element(16);
    if (d == 4) return fs.element(26);
    FieldElement p = fs.one();
    const std::size_t e = (d + 1) / 2 + 1;  // ceil(d/2) + 1
    for (std::size_t i = 0; i < e; ++i) p = p.doubled();
    return fs.element(3) * (p + fs.one()) + fs.one();
}

OtrInstance::OtrInstance(KeyedCipher e, FieldSpec fs, Word nonce)
    : cipher_(std::move(e)),
      fs_(fs),
      nonce_(nonce),
      delta_(fs.zero()),
      l_(fs.zero()),
      lstar_(fs.zero()) {
    if (cipher_.width() != fs_.width)
        throw std::invalid_argument("cipher width does not match the field");
    if (nonce > fs_.mask())
        throw std::invalid_argument("nonce wider than the block");
    delta_ = fs_.element(cipher_.encrypt(nonce));
    l_ = fs_.element(cipher_.encrypt(nonce ^ 1));
    lstar_ = l_ + delta_;
    if (delta_.value() == 0 || l_.value() == 0)
        throw DegenerateNonce("nonce derives a zero mask; pick another nonce");
}

TaggedCiphertext OtrInstance::encrypt(const Blocks& m) const {
    validate_blocks(fs_, m);
    const auto enc = [this](Word x) { return cipher_.encrypt(x); };
    Blocks c = encrypt_blocks(enc, delta_, m);
    const FieldElement mask = (m.size() % 2) ? fs_.element(3) * lstar_ + delta_
                                             : tag_coefficient(fs_, m.size()) * delta_;
    const Word tag = enc(mask.value() ^ even_checksum(m));
    return {std::move(c), tag};
}

Blocks OtrInstance::decrypt(const Blocks& c) const {
    validate_blocks(fs_, c);
    const auto enc = [this](Word x) { return cipher_.encrypt(x); };
    return decrypt_blocks(enc, delta_, c);
}

bool OtrInstance::verify(const TaggedCiphertext& ct) const {
    return tag_from_ciphertext(ct.c) == ct.tag;
}

Word OtrInstance::tag_from_ciphertext(const Blocks& c) const {
    validate_blocks(fs_, c);
    if (c.size() == 5) return detail::closed_tag_5(*this, c);
    if (c.size() == 4) return detail::closed_tag_4(*this, c, tag_coefficient(fs_, 4));
    const Blocks m = decrypt(c);
    const FieldElement mask = (m.size() % 2) ? fs_.element(3) * lstar_ + delta_
                                             : tag_coefficient(fs_, m.size()) * delta_;
    return cipher_.encrypt(mask.value() ^ even_checksum(m));
}

ProstOtrInstance::ProstOtrInstance(EvenMansourCipher em, FieldSpec fs, Word nonce)
    : em_(std::move(em)), fs_(fs), nonce_(nonce), l_(fs.zero()) {
    if (em_.width() != fs_.width)
        throw std::invalid_argument("cipher width does not match the field");
    if (nonce > fs_.mask())
        throw std::invalid_argument("nonce wider than the block");
    l_ = fs_.element(em_.encrypt(nonce));
    if (l_.value() == 0)
        throw DegenerateNonce("nonce derives a zero mask; pick another nonce");
}

TaggedCiphertext ProstOtrInstance::encrypt(const Blocks& m) const {
    validate_blocks(fs_, m);
    const auto enc = [this](Word x) { return em_.encrypt(x); };
    Blocks c = encrypt_blocks(enc, l_, m);
    const Word mask = (tag_coefficient(fs_, m.size()) * l_).value();
    const Word tag = enc(mask ^ even_checksum(m));
    return {std::move(c), tag};
}

Blocks ProstOtrInstance::decrypt(const Blocks& c) const {
    validate_blocks(fs_, c);
    const auto enc = [this](Word x) { return em_.encrypt(x); };
    return decrypt_blocks(enc, l_, c);
}

bool ProstOtrInstance::verify(const TaggedCiphertext& ct) const {
    return tag_from_ciphertext(ct.c) == ct.tag;
}

Word ProstOtrInstance::tag_from_ciphertext(const Blocks& c) const {
    const Blocks m = decrypt(c);
    const Word mask = (tag_coefficient(fs_, m.size()) * l_).value();
    return em_.encrypt(mask ^ even_checksum(m));
}

namespace detail {

// Five blocks, unrolled: the two interior pairs are inverted back to the
// even-position plaintexts, the tail block is peeled, and the tag call is
// applied to their checksum under the odd-length mask.
Word closed_tag_5(const OtrInstance& inst, const Blocks& c) {
    const auto& fs = inst.field();
    const auto E = [&](Word x) { return inst.cipher().encrypt(x); };
    const Word d4 = (fs.element(4) * inst.delta()).value();
    const Word d5 = (fs.element(5) * inst.delta()).value();
    const Word d8 = (fs.element(8) * inst.delta()).value();
    const Word d9 = (fs.element(9) * inst.delta()).value();
    const Word d16 = (fs.element(16) * inst.delta()).value();
    const Word m2 = E(d4 ^ E(d5 ^ c[0]) ^ c[1]) ^ c[0];
    const Word m4 = E(d8 ^ E(d9 ^ c[2]) ^ c[3]) ^ c[2];
    const Word m5 = E(d16) ^ c[4];
    const Word mask = (fs.element(3) * inst.lstar() + inst.delta()).value();
    return E(mask ^ m2 ^ m4 ^ m5);
}

// Four blocks: same shape, but the mirrored final pair swaps the roles of
// the last two ciphertext blocks and the mask is coeff * delta.
Word closed_tag_4(const OtrInstance& inst, const Blocks& c, const FieldElement& coeff) {
    const auto& fs = inst.field();
    const auto E = [&](Word x) { return inst.cipher().encrypt(x); };
    const Word d4 = (fs.element(4) * inst.delta()).value();
    const Word d5 = (fs.element(5) * inst.delta()).value();
    const Word d8 = (fs.element(8) * inst.delta()).value();
    const Word d9 = (fs.element(9) * inst.delta()).value();
    const Word m2 = E(d4 ^ E(d5 ^ c[0]) ^ c[1]) ^ c[0];
    const Word m4 = E(d8 ^ E(d9 ^ c[3]) ^ c[2]) ^ c[3];
    return E((coeff * inst.delta()).value() ^ m2 ^ m4);
}

}  // namespace detail

}  // namespace otrforge
