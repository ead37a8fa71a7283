#include "otrforge/simon.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace otrforge {

namespace {

constexpr double kCollisionBase = 0.6454;

void walsh_hadamard(std::vector<std::int32_t>& a) {
    for (std::size_t len = 1; len < a.size(); len <<= 1)
        for (std::size_t i = 0; i < a.size(); i += len << 1)
            for (std::size_t j = i; j < i + len; ++j) {
                const std::int32_t u = a[j], v = a[j + len];
                a[j] = u + v;
                a[j + len] = u - v;
            }
}

int pivot(Word row) { return std::bit_width(row) - 1; }

}  // namespace

BooleanFunctionTable::BooleanFunctionTable(int n_, std::vector<Word> v)
    : n(n_), values(std::move(v)) {
    if (n < 1 || n > 16)
        throw std::invalid_argument("table width out of range (1..16)");
    if (values.size() != (std::size_t{1} << n))
        throw std::invalid_argument("table size does not match the width");
}

bool BooleanFunctionTable::is_constant() const {
    return std::all_of(values.begin(), values.end(),
                       [&](Word v) { return v == values[0]; });
}

Word simon_sample(const BooleanFunctionTable& f, SplitMix64& rng) {
    const std::size_t size = f.values.size();
    // measuring the output register is the same as conditioning on f(x0)
    // for a uniform x0
    const Word v = f.values[rng.next_below(size)];
    std::vector<std::int32_t> amp(size);
    for (std::size_t x = 0; x < size; ++x) amp[x] = (f.values[x] == v) ? 1 : 0;
    walsh_hadamard(amp);
    std::uint64_t total = 0;  // equals 2^n |preimage| by Parseval
    for (const std::int32_t a : amp)
        total += static_cast<std::uint64_t>(std::int64_t{a} * a);
    std::uint64_t r = rng.next_below(total);
    for (std::size_t y = 0; y < size; ++y) {
        const std::uint64_t w = static_cast<std::uint64_t>(std::int64_t{amp[y]} * amp[y]);
        if (r < w) return static_cast<Word>(y);
        r -= w;
    }
    throw std::logic_error("sampling weights failed to cover the draw");
}

Gf2Basis::Gf2Basis(int n) : n_(n) {
    if (n < 1 || n > 16) throw std::invalid_argument("basis width out of range (1..16)");
}

bool Gf2Basis::add(Word y) {
    if (y >> n_) throw std::invalid_argument("row wider than the basis");
    for (const Word row : rows_)
        if ((y >> pivot(row)) & 1) y ^= row;
    if (y == 0) return false;
    const int p = pivot(y);
    for (Word& row : rows_)
        if ((row >> p) & 1) row ^= y;
    const auto pos = std::find_if(rows_.begin(), rows_.end(),
                                  [&](Word row) { return pivot(row) < p; });
    rows_.insert(pos, y);
    return true;
}

Word Gf2Basis::nullspace_1d() const {
    if (rank() != n_ - 1)
        throw std::logic_error("nullspace_1d needs rank exactly n-1");
    Word pivots = 0;
    for (const Word row : rows_) pivots |= Word{1} << pivot(row);
    int free_col = -1;
    for (int j = 0; j < n_; ++j)
        if (!((pivots >> j) & 1)) { free_col = j; break; }
    // rows are fully reduced, so setting the free coordinate determines the rest
    Word s = Word{1} << free_col;
    for (const Word row : rows_)
        if ((row >> free_col) & 1) s |= Word{1} << pivot(row);
    return s;
}

PeriodResult recover_period(const BooleanFunctionTable& f, SplitMix64& rng,
                            int max_queries) {
    if (max_queries == 0) max_queries = 4 * f.n;
    if (max_queries < f.n)
        throw std::invalid_argument("query budget below the width");
    PeriodResult res;
    Gf2Basis basis(f.n);
    while (basis.rank() < f.n - 1 && res.queries < max_queries) {
        basis.add(simon_sample(f, rng));
        ++res.queries;
    }
    if (basis.rank() != f.n - 1) return res;  // budget exhausted
    const Word s = basis.nullspace_1d();
    for (int i = 0; i < 16; ++i) {
        const Word x = rng.next_bits(f.n);
        if (f(x) != f(x ^ s)) return res;  // spurious candidate
    }
    res.period = s;
    res.verified = true;
    return res;
}

std::vector<Word> brute_force_periods(const BooleanFunctionTable& f) {
    const std::size_t size = f.values.size();
    std::vector<Word> periods;
    for (Word s = 1; s < size; ++s) {
        bool ok = true;
        for (std::size_t x = 0; x < size; ++x)
            if (f.values[x] != f.values[x ^ s]) { ok = false; break; }
        if (ok) periods.push_back(s);
    }
    return periods;
}

BooleanFunctionTable planted_period_table(int n, Word s, SplitMix64& rng) {
    if (n < 1 || n > 16)
        throw std::invalid_argument("table width out of range (1..16)");
    const std::size_t size = std::size_t{1} << n;
    if (s == 0 || s >= size)
        throw std::invalid_argument("planted period must be a nonzero n-bit value");
    std::vector<Word> alphabet(size);
    std::iota(alphabet.begin(), alphabet.end(), Word{0});
    fisher_yates(alphabet, rng);
    std::vector<Word> values(size, 0);
    std::size_t next = 0;
    for (std::size_t x = 0; x < size; ++x)
        if (x < (x ^ s)) {
            values[x] = values[x ^ s] = alphabet[next++];
        }
    return {n, std::move(values)};
}

double prob_lower_bound(int n, double c) {
    if (n < 1) throw std::invalid_argument("width must be positive");
    if (!(c > 0)) throw std::invalid_argument("budget factor must be positive");
    const double raw = 1.0 - std::exp2(double(n)) * std::pow(kCollisionBase, c * n);
    return std::clamp(raw, 0.0, 1.0);
}

}  // namespace otrforge
