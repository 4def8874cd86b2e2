#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "polarpunct/pattern.hpp"

namespace polarpunct {

/// Pattern text format: first line "N=<length>", then one pattern per line.
/// A pattern line is either N characters of 0/1 (index 0 leftmost) or a hex
/// string "0x..." with N/4 digits, big-endian nibbles (index 0 is the MSB of
/// the first nibble). Output always uses the 0/1 form.

struct PatternFile {
    int n = 0;
    std::vector<Pattern> patterns;
};

PatternFile read_patterns(std::istream& in);
PatternFile read_patterns_file(const std::string& path);

/// Parse one pattern token (0/1 string or 0x hex) of length 2^n.
Pattern parse_pattern(int n, const std::string& token);

std::string to_bit_string(const Pattern& p);
std::string to_hex_string(const Pattern& p);

void write_pattern_header(std::ostream& out, int n);
void write_pattern_line(std::ostream& out, const Pattern& p);

/// Locale-independent shortest round-trip decimal rendering ('.' decimal point).
std::string format_double(double v);

} // namespace polarpunct
