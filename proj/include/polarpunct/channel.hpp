#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace polarpunct {

/// Memoryless channel description: BEC(eps) or binary-input AWGN with
/// unit-energy BPSK and noise variance sigma2.
struct ChannelModel {
    enum class Kind { bec, awgn };

    Kind kind = Kind::bec;
    double param = 0;  // eps for BEC, sigma2 for AWGN

    static ChannelModel bec(double eps) {
        if (!(eps >= 0.0 && eps <= 1.0))
            throw std::invalid_argument("channel: erasure probability outside [0,1]");
        return {Kind::bec, eps};
    }
    static ChannelModel awgn(double sigma2) {
        if (!(sigma2 > 0.0))
            throw std::invalid_argument("channel: noise variance must be positive");
        return {Kind::awgn, sigma2};
    }

    /// Accepts "bec:<eps>" or "awgn:<sigma2>".
    static ChannelModel parse(const std::string& text) {
        const auto colon = text.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("channel: expected bec:<eps> or awgn:<sigma2>");
        const std::string name = text.substr(0, colon);
        double value;
        try {
            size_t used = 0;
            value = std::stod(text.substr(colon + 1), &used);
            if (colon + 1 + used != text.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("channel: bad numeric parameter in '" +
                                        text + "'");
        }
        if (name == "bec") return bec(value);
        if (name == "awgn") return awgn(value);
        throw std::invalid_argument("channel: unknown model '" + name + "'");
    }
};

/// SNR = 1/sigma2 for unit-energy BPSK; the convention used in all outputs.
inline double snr_db(double sigma2) { return 10.0 * std::log10(1.0 / sigma2); }

/// Es/N0 with N0 = 2 sigma2.
inline double esn0_db(double sigma2) {
    return 10.0 * std::log10(1.0 / (2.0 * sigma2));
}

/// Eb/N0 for K data bits carried over n_transmitted coded symbols.
inline double ebn0_db(double sigma2, size_t k, size_t n_transmitted) {
    return 10.0 * std::log10(static_cast<double>(n_transmitted) /
                             (2.0 * sigma2 * static_cast<double>(k)));
}

} // namespace polarpunct
