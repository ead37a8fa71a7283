#include "otrforge/cipher.hpp"

#include <numeric>
#include <stdexcept>

namespace otrforge {

Permutation::Permutation(int width, std::vector<Word> fwd, std::vector<Word> inv)
    : width_(width), forward_(std::move(fwd)), inverse_(std::move(inv)) {}

Permutation Permutation::random(int width, std::uint64_t seed) {
    if (width < 6 || width > 16)
        throw std::invalid_argument("random permutation width out of range (6..16)");
    std::vector<Word> fwd(std::size_t{1} << width);
    std::iota(fwd.begin(), fwd.end(), Word{0});
    SplitMix64 rng(seed);
    fisher_yates(fwd, rng);
    std::vector<Word> inv(fwd.size());
    for (std::size_t x = 0; x < fwd.size(); ++x) inv[fwd[x]] = static_cast<Word>(x);
    return Permutation(width, std::move(fwd), std::move(inv));
}

Permutation Permutation::from_table(int width, std::vector<Word> forward) {
    if (width < 1 || width > 16)
        throw std::invalid_argument("permutation width out of range (1..16)");
    const std::size_t size = std::size_t{1} << width;
    if (forward.size() != size)
        throw std::invalid_argument("permutation table size does not match the width");
    std::vector<Word> inv(size, Word(size));  // sentinel: size is out of range
    for (std::size_t x = 0; x < size; ++x) {
        const Word y = forward[x];
        if (y >= size || inv[y] != Word(size))
            throw std::invalid_argument("permutation table is not a bijection");
        inv[y] = static_cast<Word>(x);
    }
    return Permutation(width, std::move(forward), std::move(inv));
}

Word Permutation::apply(Word x) const {
    if (x >= forward_.size()) throw std::out_of_range("permutation input out of range");
    return forward_[x];
}

Word Permutation::invert(Word y) const {
    if (y >= inverse_.size()) throw std::out_of_range("permutation input out of range");
    return inverse_[y];
}

KeyedCipher::KeyedCipher(int width, std::uint64_t key)
    : key_(key), perm_(Permutation::random(width, key)) {}

EvenMansourCipher::EvenMansourCipher(Permutation p, Word k1, Word k2)
    : perm_(std::move(p)), k1_(k1), k2_(k2) {
    const Word mask = static_cast<Word>((1u << perm_.width()) - 1);
    if (k1 > mask || k2 > mask)
        throw std::invalid_argument("whitening key wider than the block");
}

Word EvenMansourCipher::encrypt(Word x) const { return k2_ ^ perm_.apply(x ^ k1_); }

Word EvenMansourCipher::decrypt(Word y) const { return perm_.invert(y ^ k2_) ^ k1_; }

}  // namespace otrforge
