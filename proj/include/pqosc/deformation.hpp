#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pqosc/errors.hpp"

namespace pqosc {

inline constexpr double golden_ratio = std::numbers::phi_v<double>;

/// Integer power by repeated squaring.  Keeps the sign of negative bases
/// exact, which matters for the Fibonacci-family base q = -1/phi.
inline double int_pow(double base, long long n) {
    if (n < 0) {
        if (base == 0.0) throw zero_base_negative_power{};
        return 1.0 / int_pow(base, -n);
    }
    double acc = 1.0;
    double b = base;
    while (n > 0) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

/// The deformation pair (p, q) plus the threshold below which |p - q| is
/// treated as the Tamm-Dankov limit p = q.  Every deformed quantity in the
/// library takes its parameters from here.
struct deformation_params {
    double p;
    double q;
    double degenerate_tol;

    deformation_params(double p_, double q_)
        : deformation_params(p_, q_, default_degenerate_tol(p_, q_)) {}

    deformation_params(double p_, double q_, double tol) : p(p_), q(q_), degenerate_tol(tol) {
        if (!std::isfinite(p) || !std::isfinite(q))
            throw std::invalid_argument("deformation parameters must be finite");
        if (!(degenerate_tol >= 0.0))
            throw std::invalid_argument("degenerate_tol must be >= 0");
    }

    static double default_degenerate_tol(double p_, double q_) {
        return 1e-12 * std::max({1.0, std::fabs(p_), std::fabs(q_)});
    }

    /// True when evaluation must use the p = q limit branch instead of
    /// dividing by (p - q).
    bool degenerate() const { return std::fabs(p - q) <= degenerate_tol; }

    double pq() const { return p * q; }

    deformation_params swapped() const { return {q, p, degenerate_tol}; }
};

enum class family_kind {
    non_symmetric_q, // p = 1
    symmetric_q,     // p = 1/q
    fermionic_q,     // p = -1/q
    fibonacci,       // p = phi, q = -1/phi
    fibonacci_divisor, // p = phi^k, q = (-1/phi)^k
    tamm_dankov      // p = q
};

/// Named parameter family resolved to a concrete (p, q) pair.
struct family_preset {
    family_kind kind;
    double q = 0.0; // base parameter where the family takes one
    int k = 1;      // Fibonacci-divisor order

    deformation_params resolve() const {
        switch (kind) {
        case family_kind::non_symmetric_q:
            return {1.0, q};
        case family_kind::symmetric_q:
            if (q == 0.0) throw zero_deformation_parameter{};
            return {1.0 / q, q};
        case family_kind::fermionic_q:
            if (q == 0.0) throw zero_deformation_parameter{};
            return {-1.0 / q, q};
        case family_kind::fibonacci:
            return {golden_ratio, -1.0 / golden_ratio};
        case family_kind::fibonacci_divisor: {
            if (k < 1) throw std::invalid_argument("fibonacci_divisor requires k >= 1");
            const double phi = golden_ratio;
            return {int_pow(phi, k), int_pow(-1.0 / phi, k)};
        }
        case family_kind::tamm_dankov: {
            // Force the limit branch regardless of tolerance arithmetic.
            deformation_params d{q, q};
            return d;
        }
        }
        throw std::invalid_argument("unknown family kind");
    }

    std::string label() const {
        switch (kind) {
        case family_kind::non_symmetric_q: return "nonsym(q=" + std::to_string(q) + ")";
        case family_kind::symmetric_q: return "sym(q=" + std::to_string(q) + ")";
        case family_kind::fermionic_q: return "fermionic(q=" + std::to_string(q) + ")";
        case family_kind::fibonacci: return "fibonacci";
        case family_kind::fibonacci_divisor: return "fibdiv(k=" + std::to_string(k) + ")";
        case family_kind::tamm_dankov: return "tammdankov(q=" + std::to_string(q) + ")";
        }
        return "?";
    }
};

} // namespace pqosc
