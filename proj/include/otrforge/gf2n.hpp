#pragma once

#include <cstdint>
#include <stdexcept>

namespace otrforge {

// One n-bit block / field element value, n <= 16.
using Word = std::uint32_t;

class FieldElement;

// GF(2^n) fixed by its reduction polynomial. The polynomial must have
// degree exactly n, a set constant term, and be irreducible; construction
// verifies irreducibility by trial division against every candidate factor
// of degree <= n/2. Arithmetic accepts widths down to 2 so that tiny
// hand-checkable fields stay usable in tests; the AEAD layers impose their
// own floor of 6 (below that the tag-mask constants stop embedding
// distinctly).
struct FieldSpec {
    int width;
    std::uint32_t poly;

    FieldSpec(int n, std::uint32_t p);

    // Catalog of standard irreducible polynomials, width 2..16.
    static FieldSpec standard(int n);

    Word mask() const { return (Word{1} << width) - 1; }

    // Embeds an arbitrary bit pattern: reduces it modulo the polynomial.
    // Patterns below 2^width map to themselves.
    FieldElement element(std::uint64_t pattern) const;
    FieldElement zero() const;
    FieldElement one() const;

    bool operator==(const FieldSpec&) const = default;
};

class FieldElement {
public:
    FieldElement(Word value, const FieldSpec& fs);

    Word value() const { return v_; }
    const FieldSpec& spec() const { return fs_; }

    FieldElement operator+(const FieldElement& o) const;  // XOR
    FieldElement operator*(const FieldElement& o) const;  // carry-less, reduced
    FieldElement doubled() const;                         // times x
    FieldElement inverse() const;                         // zero -> domain_error

    bool operator==(const FieldElement&) const = default;

private:
    Word v_;
    FieldSpec fs_;
};

}  // namespace otrforge
