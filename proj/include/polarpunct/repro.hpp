#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace polarpunct::repro {

struct Check {
    std::string label;
    std::string expected;
    std::string computed;
    bool pass = false;
};

struct Report {
    std::string name;
    std::vector<Check> checks;
    bool all_pass() const;
};

/// Exact BEC(1/2) reliability tables for the two reference length-8 patterns:
/// 16 capacities and 16 error probabilities, compared as exact decimals.
Report table1();

/// Length-64 pattern census: primitive totals plus symmetric and
/// non-symmetric splits for weights 6..14.
Report table2();

/// Search-tree generator sizes: exact count at (256,85,3) and accepted
/// ranges at (1024,336,3) and (256,85,4); `extended` adds the slow
/// (256,85,5) count, which is informational only.
Report table3(bool extended = false, int workers = 1);

/// Noise-threshold comparison at N=64, K=20, target 1e-4: the best symmetric
/// pattern must sit within 0.05 dB of the best over all primitive patterns,
/// and the best order<=3 symmetric within 0.05 dB of the best symmetric,
/// for weights 6..14.
Report fig6(int workers = 1);

/// Desk-scale WER comparison at (N,K,Np) = (256,64,85) on BI-AWGN: at each
/// probed noise level, a min-WER-optimized symmetric pattern (order <= 4)
/// must not exceed the upper 95% confidence bound of QUP's measured WER,
/// with at least 200 word errors behind each compared estimate.
Report fig7(int workers = 1, uint64_t seed = 1);

/// One line per check plus a summary line.
void write_report(const Report& report, std::ostream& out);

} // namespace polarpunct::repro
