#include "otrforge/selftest.hpp"

#include <bit>
#include <ostream>

#include "otrforge/cipher.hpp"
#include "otrforge/gf2n.hpp"
#include "otrforge/otr.hpp"
#include "otrforge/rng.hpp"
#include "otrforge/simon.hpp"

namespace otrforge {

namespace {

bool field_axioms(SplitMix64& rng) {
    for (int width : {6, 8, 13, 16}) {
        const FieldSpec fs = FieldSpec::standard(width);
        for (int i = 0; i < 200; ++i) {
            const FieldElement a = fs.element(rng.next_bits(width));
            const FieldElement b = fs.element(rng.next_bits(width));
            const FieldElement c = fs.element(rng.next_bits(width));
            if ((a * b) * c != a * (b * c)) return false;
            if (a * b != b * a) return false;
            if (a * (b + c) != a * b + a * c) return false;
            if (a * fs.one() != a) return false;
            if (a.value() != 0 && (a * a.inverse()) != fs.one()) return false;
            if (a.doubled() != a * fs.element(2)) return false;
        }
    }
    return true;
}

bool field_embedding(SplitMix64&) {
    for (int width : {6, 10, 16}) {
        const FieldSpec fs = FieldSpec::standard(width);
        if (fs.element(16) + fs.element(26) != fs.element(10)) return false;
        if (fs.element(1) != fs.one()) return false;
    }
    return true;
}

bool permutation_bijection(SplitMix64& rng) {
    const Permutation p = Permutation::random(8, rng.next());
    for (Word x = 0; x < 256; ++x)
        if (p.invert(p.apply(x)) != x) return false;
    return true;
}

bool em_roundtrip(SplitMix64& rng) {
    const Permutation p = Permutation::random(8, rng.next());
    const EvenMansourCipher em(p, rng.next_bits(8), rng.next_bits(8));
    for (Word x = 0; x < 256; ++x)
        if (em.decrypt(em.encrypt(x)) != x) return false;
    return true;
}

template <typename Instance>
bool mode_roundtrip(const Instance& inst, SplitMix64& rng, int width) {
    for (std::size_t d = 2; d <= 9; ++d) {
        for (int i = 0; i < 20; ++i) {
            Blocks m(d);
            for (auto& b : m) b = rng.next_bits(width);
            const TaggedCiphertext ct = inst.encrypt(m);
            if (inst.decrypt(ct.c) != m) return false;
            if (!inst.verify(ct)) return false;
            TaggedCiphertext bad = ct;
            bad.tag ^= 1;
            if (inst.verify(bad)) return false;
        }
    }
    return true;
}

bool closed_tag_check(const OtrInstance& inst, SplitMix64& rng, std::size_t d,
                      const FieldElement& coeff4) {
    const int width = inst.field().width;
    for (int i = 0; i < 50; ++i) {
        Blocks m(d);
        for (auto& b : m) b = rng.next_bits(width);
        const TaggedCiphertext ct = inst.encrypt(m);
        const Word closed = d == 5 ? detail::closed_tag_5(inst, ct.c)
                                   : detail::closed_tag_4(inst, ct.c, coeff4);
        const Word replayed = inst.encrypt(inst.decrypt(ct.c)).tag;
        if (closed != ct.tag || replayed != ct.tag) return false;
    }
    return true;
}

bool simon_orthogonality(SplitMix64& rng) {
    for (int n : {4, 6, 8}) {
        const Word s = 1 + static_cast<Word>(rng.next_below((Word{1} << n) - 1));
        const BooleanFunctionTable f = planted_period_table(n, s, rng);
        for (int i = 0; i < 400; ++i) {
            const Word y = simon_sample(f, rng);
            if (std::popcount(y & s) % 2 != 0) return false;
        }
    }
    return true;
}

bool simon_recovery(SplitMix64& rng) {
    for (int n : {6, 8, 10}) {
        for (int i = 0; i < 10; ++i) {
            const Word s = 1 + static_cast<Word>(rng.next_below((Word{1} << n) - 1));
            const BooleanFunctionTable f = planted_period_table(n, s, rng);
            const PeriodResult res = recover_period(f, rng, 8 * n);
            if (!res.period || *res.period != s) return false;
        }
    }
    return true;
}

}  // namespace

int selftest(std::ostream& os, const SelftestOptions& opts) {
    SplitMix64 rng(opts.seed);
    int failures = 0;
    const auto report = [&](const char* name, bool ok) {
        os << (ok ? "[ok] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };

    report("field-axioms", field_axioms(rng));
    report("field-embedding", field_embedding(rng));
    report("permutation-bijection", permutation_bijection(rng));
    report("even-mansour-roundtrip", em_roundtrip(rng));

    const FieldSpec fs = FieldSpec::standard(8);
    const KeyedCipher cipher(8, rng.next());
    Word nonce = rng.next_bits(8);
    for (;;) {
        try {
            const OtrInstance inst(cipher, fs, nonce);
            report("otr-roundtrip", mode_roundtrip(inst, rng, 8));
            const FieldElement coeff4 = opts.coeff4_override
                                            ? fs.element(*opts.coeff4_override)
                                            : tag_coefficient(fs, 4);
            report("otr-closed-tag-d5",
                   closed_tag_check(inst, rng, 5, tag_coefficient(fs, 4)));
            report("otr-closed-tag-d4", closed_tag_check(inst, rng, 4, coeff4));
            break;
        } catch (const DegenerateNonce&) {
            nonce = (nonce + 1) & fs.mask();
        }
    }

    const Permutation pub = Permutation::random(8, rng.next());
    const EvenMansourCipher em(pub, rng.next_bits(8), rng.next_bits(8));
    Word pnonce = rng.next_bits(8);
    for (;;) {
        try {
            const ProstOtrInstance pinst(em, fs, pnonce);
            report("prost-roundtrip", mode_roundtrip(pinst, rng, 8));
            break;
        } catch (const DegenerateNonce&) {
            pnonce = (pnonce + 1) & fs.mask();
        }
    }

    report("simon-orthogonality", simon_orthogonality(rng));
    report("simon-recovery", simon_recovery(rng));
    return failures;
}

}  // namespace otrforge
