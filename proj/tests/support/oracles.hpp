#pragma once

#include "cybermap/webunits.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace testsupport {

/// Pearson r straight from the raw-sums definition; an algebraic route
/// independent of the mean-centered implementation it checks.
inline double pearson_raw_sums(const std::vector<std::pair<double, double>>& pairs) {
    const double n = static_cast<double>(pairs.size());
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (const auto& [x, y] : pairs) {
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

/// Longest-suffix match done the slow way: walk every trailing label
/// sequence, longest first, and take the first one the rule knows.
inline std::optional<std::string> brute_force_suffix(const std::string& host,
                                                     const cybermap::SuffixRule& rule) {
    std::vector<std::string> labels;
    std::string current;
    for (char c : host) {
        if (c == '.') {
            labels.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    labels.push_back(current);
    if (labels.size() < 2)
        return std::nullopt;

    for (std::size_t start = 0; start < labels.size(); ++start) {
        std::string candidate;
        for (std::size_t i = start; i < labels.size(); ++i) {
            if (!candidate.empty())
                candidate += '.';
            candidate += labels[i];
        }
        const std::size_t span = labels.size() - start;
        if (span == 1)
            return candidate; // plain TLD fallback
        if (rule.multi_label().count(candidate))
            return candidate;
    }
    return std::nullopt;
}

} // namespace testsupport
