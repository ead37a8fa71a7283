#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

namespace otrforge {

struct SelftestOptions {
    // Replaces the four-block tag coefficient in the closed-form route.
    // Exists so a deliberately wrong value demonstrably trips the
    // consistency check; normal runs leave it empty.
    std::optional<std::uint32_t> coeff4_override;
    std::uint64_t seed = 0x5e1f7e57;
};

// Fast invariants: field axioms, round-trips, closed-form tag consistency,
// orthogonality of period-finding samples, planted-period recovery. Prints
// one "[ok] name" or "[FAIL] name" line per check and returns the number of
// failures.
int selftest(std::ostream& os, const SelftestOptions& opts = {});

}  // namespace otrforge
