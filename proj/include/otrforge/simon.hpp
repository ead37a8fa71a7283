#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "otrforge/gf2n.hpp"
#include "otrforge/rng.hpp"

namespace otrforge {

// Full truth table of an n-bit to n-bit function, n in 1..16. The table is
// the classical stand-in for superposition access: building one costs 2^n
// oracle calls but counts as zero period-finding queries; only measurement
// samples are budgeted.
struct BooleanFunctionTable {
    int n;
    std::vector<Word> values;

    BooleanFunctionTable(int n_, std::vector<Word> v);
    Word operator()(Word x) const { return values[x]; }
    std::size_t size() const { return values.size(); }
    bool is_constant() const;
};

// One exact measurement of the period-finding circuit on f.
//
// The circuit prepares sum_x |x>|f(x)>, measures the output register, and
// Hadamards the input register, so the observed y follows
//     Pr[y] = (sum_{x in S} (-1)^{x.y})^2 / (2^n |S|)
// where S is the preimage of the measured value. The simulation draws the
// preimage by picking x0 uniformly, computes every signed sum at once with
// an integer Walsh-Hadamard transform, and samples y by exact integer
// weights; no floating point, so zero-amplitude outcomes are impossible
// rather than merely unlikely. Cost O(n 2^n).
Word simon_sample(const BooleanFunctionTable& f, SplitMix64& rng);

// GF(2) row space in reduced echelon form (pivots descending, each pivot
// eliminated from every other row).
class Gf2Basis {
public:
    explicit Gf2Basis(int n);

    bool add(Word y);  // true iff the rank grew
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<Word>& rows() const { return rows_; }
    int width() const { return n_; }

    // The unique nonzero vector orthogonal to every row; requires rank n-1.
    Word nullspace_1d() const;

private:
    int n_;
    std::vector<Word> rows_;
};

struct PeriodResult {
    std::optional<Word> period;
    int queries = 0;        // measurement samples drawn
    bool verified = false;  // candidate passed the classical spot checks
};

// Samples until the orthogonal space has rank n-1 or max_queries samples
// are spent, solves for the candidate period, and confirms it classically
// on 16 random points. max_queries >= n; 0 picks the default budget 4n.
PeriodResult recover_period(const BooleanFunctionTable& f, SplitMix64& rng,
                            int max_queries = 0);

// Ground truth: every nonzero s with f(x ^ s) = f(x) for all x, ascending.
std::vector<Word> brute_force_periods(const BooleanFunctionTable& f);

// Perfect 2-to-1 function with period exactly {s}: each pair {x, x^s} gets
// a distinct value.
BooleanFunctionTable planted_period_table(int n, Word s, SplitMix64& rng);

// Lower bound on the success probability of period recovery from ceil(c*n)
// samples when the function promises no stray collisions beyond its period:
// 1 - 2^n * 0.6454^(c n), clamped to [0, 1]. Nonvacuous once c exceeds
// 1/log2(1/0.6454) ~ 1.583.
double prob_lower_bound(int n, double c);

}  // namespace otrforge
