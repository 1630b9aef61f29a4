#ifndef NH_SELFTEST_HPP
#define NH_SELFTEST_HPP

/*
 * Built-in invariant runner behind the `selftest` CLI subcommand: every
 * module's property suite with a fixed RNG seed and deterministic output.
 */

#include <cstdint>
#include <iosfwd>

namespace nh {

inline constexpr std::uint64_t kDefaultSelftestSeed = 0x6e68627970ULL;

struct SelftestSummary {
    int suites = 0;
    int checks = 0;
    int failures = 0;
    bool ok() const { return failures == 0; }
};

SelftestSummary run_selftest(std::uint64_t seed, std::ostream& out);

}  // namespace nh

#endif
