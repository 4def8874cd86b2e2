#include "polarpunct/baselines.hpp"

#include <stdexcept>

namespace polarpunct {

Pattern qup_pattern(int n, size_t n_p) {
    Pattern p(n);
    if (n_p == 0 || n_p >= p.size())
        throw std::invalid_argument("qup_pattern: need 0 < n_p < N");
    for (uint32_t i = 0; i < n_p; ++i) p.set(i, true);
    return p;
}

ShorteningPlan shortening_pattern(int n, size_t n_s) {
    ShorteningPlan plan{Pattern(n), Pattern(n)};
    const size_t len = plan.shortened.size();
    if (n_s == 0 || n_s >= len)
        throw std::invalid_argument("shortening_pattern: need 0 < n_s < N");
    for (size_t i = len - n_s; i < len; ++i) {
        plan.shortened.set(static_cast<uint32_t>(i), true);
        plan.forced_frozen.set(static_cast<uint32_t>(i), true);
    }
    return plan;
}

} // namespace polarpunct
