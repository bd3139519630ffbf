#pragma once

#include <cmath>
#include <optional>
#include <string>

namespace thermobound {

/// Default absolute tolerance of the lower <= exact <= upper contract.
inline constexpr double sandwich_tolerance = 1e-9;

/// A lower/upper bound pair with an optional exact value.
///
/// slack_lower = exact - lower and slack_upper = upper - exact are stored
/// as computed (not clamped), so rounding-level violations stay visible.
/// `guaranteed` is false when the inputs do not satisfy the assumptions of
/// the inequality (truncated Franck-Condon data), in which case the sandwich
/// is reported but not promised.
struct BoundsResult {
    double lower = 0.0;
    double upper = 0.0;
    std::optional<double> exact;
    double slack_lower = 0.0;
    double slack_upper = 0.0;
    bool guaranteed = true;

    static BoundsResult make(double lower, double upper, std::optional<double> exact = std::nullopt);

    [[nodiscard]] bool sandwiched(double tol = sandwich_tolerance) const;
    [[nodiscard]] double gap() const { return upper - lower; }
};

inline BoundsResult BoundsResult::make(double lower, double upper, std::optional<double> exact) {
    BoundsResult r;
    r.lower = lower;
    r.upper = upper;
    r.exact = exact;
    if(exact) {
        r.slack_lower = *exact - lower;
        r.slack_upper = upper - *exact;
    }
    return r;
}

inline bool BoundsResult::sandwiched(double tol) const {
    if(!(lower <= upper + tol)) return false;
    if(exact) return lower - tol <= *exact && *exact <= upper + tol;
    return true;
}

} // namespace thermobound
