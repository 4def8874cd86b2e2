#include "polarpunct/pattern_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace polarpunct {

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

Pattern parse_pattern(int n, const std::string& token) {
    const size_t N = size_t{1} << n;
    Pattern p(n);
    if (token.rfind("0x", 0) == 0 || token.rfind("0X", 0) == 0) {
        if (N % 4 != 0)
            throw std::invalid_argument("pattern hex form needs length divisible by 4");
        const size_t digits = N / 4;
        if (token.size() != digits + 2)
            throw std::invalid_argument("pattern hex form: wrong digit count");
        for (size_t t = 0; t < digits; ++t) {
            int v = hex_value(token[2 + t]);
            if (v < 0) throw std::invalid_argument("pattern hex form: bad digit");
            for (int b = 0; b < 4; ++b)
                if (v >> (3 - b) & 1) p.set(4 * t + b, true);
        }
        return p;
    }
    if (token.size() != N)
        throw std::invalid_argument("pattern line: wrong length");
    for (size_t i = 0; i < N; ++i) {
        if (token[i] == '1') p.set(i, true);
        else if (token[i] != '0')
            throw std::invalid_argument("pattern line: characters must be 0/1");
    }
    return p;
}

PatternFile read_patterns(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("pattern file: empty input");
    if (line.rfind("N=", 0) != 0)
        throw std::invalid_argument("pattern file: first line must be N=<length>");
    size_t N = 0;
    auto [ptr, ec] = std::from_chars(line.data() + 2, line.data() + line.size(), N);
    if (ec != std::errc{} || ptr != line.data() + line.size() || N == 0 ||
        (N & (N - 1)) != 0)
        throw std::invalid_argument("pattern file: length must be a power of two");
    PatternFile f;
    f.n = std::countr_zero(N);
    if (f.n > Pattern::max_log2_length)
        throw std::invalid_argument("pattern file: length too large");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        f.patterns.push_back(parse_pattern(f.n, line));
    }
    return f;
}

PatternFile read_patterns_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pattern file: " + path);
    return read_patterns(in);
}

std::string to_bit_string(const Pattern& p) {
    std::string s(p.size(), '0');
    for (size_t i = 0; i < p.size(); ++i)
        if (p.get(i)) s[i] = '1';
    return s;
}

std::string to_hex_string(const Pattern& p) {
    const size_t N = p.size();
    if (N % 4 != 0)
        throw std::invalid_argument("to_hex_string: length not divisible by 4");
    static const char* digits = "0123456789abcdef";
    std::string s = "0x";
    for (size_t t = 0; t < N / 4; ++t) {
        int v = 0;
        for (int b = 0; b < 4; ++b)
            if (p.get(4 * t + b)) v |= 1 << (3 - b);
        s.push_back(digits[v]);
    }
    return s;
}

void write_pattern_header(std::ostream& out, int n) {
    out << "N=" << (size_t{1} << n) << '\n';
}

void write_pattern_line(std::ostream& out, const Pattern& p) {
    out << to_bit_string(p) << '\n';
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace polarpunct
