#pragma once

#include <cmath>
#include <complex>

namespace pqosc {

enum class series_status { converged, truncated_at_cap, diverging };

inline const char* to_string(series_status s) {
    switch (s) {
    case series_status::converged: return "converged";
    case series_status::truncated_at_cap: return "truncated_at_cap";
    case series_status::diverging: return "diverging";
    }
    return "?";
}

/// Scalar result of a truncated series: partial sum, magnitude of the last
/// term (the truncation-error proxy), and a classification from the runtime
/// ratio behaviour of the terms.
struct series_value {
    std::complex<double> value{0.0, 0.0};
    double last_term_magnitude = 0.0;
    int terms_used = 0;
    series_status classification = series_status::truncated_at_cap;

    double real() const { return value.real(); }
};

inline constexpr int series_default_cap = 500;

// A series is declared diverging only after this many consecutive strictly
// increasing term magnitudes; the oscillating signs of the Fibonacci-family
// terms would otherwise trip a naive ratio test.
inline constexpr int series_divergence_window = 8;

/// Sums term_fn(0) + term_fn(1) + ... until the term magnitude drops below
/// tol * max(1, |sum|), the cap is reached, or the trailing window of term
/// magnitudes grows monotonically (classified diverging).  Never throws on
/// divergence; callers decide whether that is an error.
template <typename TermFn>
series_value sum_series(TermFn&& term_fn, double tol, int cap = series_default_cap,
                        int window = series_divergence_window) {
    series_value out;
    double prev_mag = -1.0;
    int increasing_streak = 0;
    for (int n = 0; n < cap; ++n) {
        const std::complex<double> term = term_fn(n);
        out.value += term;
        out.last_term_magnitude = std::abs(term);
        out.terms_used = n + 1;

        if (prev_mag >= 0.0 && out.last_term_magnitude > prev_mag) {
            ++increasing_streak;
        } else {
            increasing_streak = 0;
        }
        prev_mag = out.last_term_magnitude;

        if (increasing_streak >= window) {
            out.classification = series_status::diverging;
            return out;
        }
        if (out.last_term_magnitude <= tol * std::max(1.0, std::abs(out.value))) {
            out.classification = series_status::converged;
            return out;
        }
    }
    out.classification = series_status::truncated_at_cap;
    return out;
}

} // namespace pqosc
