#include "viewforge/confidence/sparsification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "viewforge/util/error.hpp"

namespace viewforge {

SparsificationResult sparsification_ausc(const std::vector<double>& confidence,
                                         const std::vector<bool>& error) {
    if (confidence.empty() || confidence.size() != error.size()) {
        throw ConfigError("sparsification_ausc: need equal-sized, non-empty inputs");
    }
    const std::size_t n = confidence.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (confidence[a] != confidence[b]) return confidence[a] < confidence[b];
        return a < b;
    });

    std::size_t total_errors = 0;
    for (bool e : error) total_errors += e;

    SparsificationResult res;
    res.curve.resize(n);
    std::size_t remaining = total_errors;
    double optimal_area = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        res.curve[k] = static_cast<double>(remaining) / (n - k);
        remaining -= error[order[k]];
        std::size_t opt_remaining = total_errors > k ? total_errors - k : 0;
        optimal_area += static_cast<double>(opt_remaining) / (n - k);
    }
    res.ausc = std::accumulate(res.curve.begin(), res.curve.end(), 0.0) / n;
    res.optimal_ausc = optimal_area / n;
    res.random_ausc = static_cast<double>(total_errors) / n;
    res.relative_ausc = (total_errors == 0 || total_errors == n)
                            ? std::numeric_limits<double>::quiet_NaN()
                            : res.ausc / res.optimal_ausc;
    return res;
}

} // namespace viewforge
