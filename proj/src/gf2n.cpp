#include "otrforge/gf2n.hpp"

#include <bit>

namespace otrforge {

namespace {

int degree(std::uint64_t p) { return std::bit_width(p) - 1; }

// carry-less product, degrees up to 31 each
std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t acc = 0;
    while (b) {
        acc ^= a * (b & 1);  // branch-free XOR-in
        a <<= 1;
        b >>= 1;
    }
    return acc;
}

// remainder of a mod b over GF(2)
std::uint64_t polymod(std::uint64_t a, std::uint64_t b) {
    const int db = degree(b);
    while (a && degree(a) >= db) a ^= b << (degree(a) - db);
    return a;
}

// quotient of a / b over GF(2)
std::uint64_t polydiv(std::uint64_t a, std::uint64_t b) {
    const int db = degree(b);
    std::uint64_t q = 0;
    while (a && degree(a) >= db) {
        const int shift = degree(a) - db;
        q |= 1ULL << shift;
        a ^= b << shift;
    }
    return q;
}

bool irreducible(int n, std::uint32_t poly) {
    // trial division by every polynomial of degree 1..n/2
    const std::uint64_t limit = 1ULL << (n / 2 + 1);
    for (std::uint64_t g = 2; g < limit; ++g)
        if (polymod(poly, g) == 0) return false;
    return true;
}

}  // namespace

FieldSpec::FieldSpec(int n, std::uint32_t p) : width(n), poly(p) {
    if (n < 2 || n > 16)
        throw std::invalid_argument("field width out of range (2..16)");
    if (degree(p) != n)
        throw std::invalid_argument("reduction polynomial degree must equal the width");
    if ((p & 1) == 0)
        throw std::invalid_argument("reduction polynomial needs a constant term");
    if (!irreducible(n, p))
        throw std::invalid_argument("reduction polynomial is reducible");
}

FieldSpec FieldSpec::standard(int n) {
    switch (n) {
        case 2:  return {2, 0x7};
        case 3:  return {3, 0xb};
        case 4:  return {4, 0x13};
        case 5:  return {5, 0x25};
        case 6:  return {6, 0x43};
        case 7:  return {7, 0x83};
        case 8:  return {8, 0x11b};
        case 9:  return {9, 0x211};
        case 10: return {10, 0x409};
        case 11: return {11, 0x805};
        case 12: return {12, 0x1053};
        case 13: return {13, 0x201b};
        case 14: return {14, 0x4443};
        case 15: return {15, 0x8003};
        case 16: return {16, 0x1100b};
        default:
            throw std::invalid_argument("no standard polynomial for this width");
    }
}

FieldElement FieldSpec::element(std::uint64_t pattern) const {
    while (pattern >> width) pattern ^= std::uint64_t(poly) << (degree(pattern) - width);
    return FieldElement(static_cast<Word>(pattern), *this);
}

FieldElement FieldSpec::zero() const { return FieldElement(0, *this); }
FieldElement FieldSpec::one() const { return FieldElement(1, *this); }

FieldElement::FieldElement(Word value, const FieldSpec& fs) : v_(value), fs_(fs) {
    if (value > fs.mask())
        throw std::invalid_argument("field element value wider than the field");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    if (fs_ != o.fs_) throw std::invalid_argument("field mismatch in addition");
    return FieldElement(v_ ^ o.v_, fs_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    if (fs_ != o.fs_) throw std::invalid_argument("field mismatch in multiplication");
    // shift-and-reduce keeps the accumulator below 2^(n+1)
    Word a = v_, b = o.v_, r = 0;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a >> fs_.width) a ^= fs_.poly;
    }
    return FieldElement(r, fs_);
}

FieldElement FieldElement::doubled() const {
    Word a = v_ << 1;
    if (a >> fs_.width) a ^= fs_.poly;
    return FieldElement(a, fs_);
}

FieldElement FieldElement::inverse() const {
    if (v_ == 0) throw std::domain_error("zero has no inverse");
    // extended Euclid on polynomials; gcd is 1 because poly is irreducible
    std::uint64_t r0 = fs_.poly, r1 = v_;
    std::uint64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        const std::uint64_t q = polydiv(r0, r1);
        const std::uint64_t r2 = r0 ^ clmul(q, r1);
        const std::uint64_t t2 = t0 ^ clmul(q, t1);
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    return fs_.element(t0);
}

}  // namespace otrforge
