#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "pqosc/deformation.hpp"
#include "pqosc/errors.hpp"

namespace pqosc {

/// [n]_{p,q} = (p^n - q^n)/(p - q), symmetric in p and q.  Near p = q the
/// quotient cancels catastrophically, so within degenerate_tol the analytic
/// limit n q^{n-1} is returned instead (the Tamm-Dankov value).  Negative n
/// is evaluated through negative integer powers and therefore requires
/// p*q != 0.
inline double pq_number(const deformation_params& d, long long n) {
    if (n == 0) return 0.0;
    double value;
    if (d.degenerate()) {
        value = static_cast<double>(n) * int_pow(d.q, n - 1);
    } else {
        value = (int_pow(d.p, n) - int_pow(d.q, n)) / (d.p - d.q);
    }
    if (!std::isfinite(value)) throw non_finite_result{n};
    return value;
}

/// [n] from the three-term recursion [n+1] = (p+q)[n] - pq[n-1] with seeds
/// [0] = 0, [1] = 1.  Independent oracle for pq_number; for the Fibonacci
/// family p+q = 1 and pq = -1 make this the plain Fibonacci recursion.
inline double pq_number_recursive(const deformation_params& d, long long n) {
    if (n < 0) throw std::invalid_argument("pq_number_recursive requires n >= 0");
    if (n == 0) return 0.0;
    const double s = d.p + d.q;
    const double r = d.p * d.q;
    double prev = 0.0, cur = 1.0;
    for (long long i = 1; i < n; ++i) {
        const double next = s * cur - r * prev;
        prev = cur;
        cur = next;
    }
    if (!std::isfinite(cur)) throw non_finite_result{n};
    return cur;
}

/// [n]! = [1][2]...[n], empty product 1.
inline double pq_factorial(const deformation_params& d, long long n) {
    if (n < 0) throw std::invalid_argument("pq_factorial requires n >= 0");
    double acc = 1.0;
    for (long long m = 1; m <= n; ++m) acc *= pq_number(d, m);
    if (!std::isfinite(acc)) throw non_finite_result{n};
    return acc;
}

/// Deformed binomial coefficient [n]!/([k]![n-k]!); 0 outside 0 <= k <= n.
/// At special parameter points some [m] vanishes and the ratio is ill
/// defined; the offending index is reported.
inline double pq_binomial_coeff(const deformation_params& d, long long n, long long k) {
    if (n < 0) throw std::invalid_argument("pq_binomial_coeff requires n >= 0");
    if (k < 0 || k > n) return 0.0;
    if (k == 0 || k == n) return 1.0;
    for (long long m = 1; m <= n; ++m)
        if (pq_number(d, m) == 0.0) throw division_by_zero_pq_number{m};
    // product form [n-k+j]/[j], j = 1..k, avoids large intermediate factorials
    double acc = 1.0;
    for (long long j = 1; j <= k; ++j) acc *= pq_number(d, n - k + j) / pq_number(d, j);
    if (!std::isfinite(acc)) throw non_finite_result{n};
    return acc;
}

/// (p^x - q^x)/(p - q) for real exponent x; requires p, q > 0.
/// Used by the fractional-index identity.
inline double pq_number_real(const deformation_params& d, double x) {
    if (!(d.p > 0.0) || !(d.q > 0.0))
        throw std::invalid_argument("pq_number_real requires p, q > 0");
    if (x == 0.0) return 0.0;
    double value;
    if (d.degenerate()) {
        value = x * std::pow(d.q, x - 1.0);
    } else {
        value = (std::pow(d.p, x) - std::pow(d.q, x)) / (d.p - d.q);
    }
    if (!std::isfinite(value)) throw non_finite_result{static_cast<long long>(x)};
    return value;
}

/// One row of the algebraic-identity report.  `residual` is |lhs - rhs|;
/// `scale` is the largest magnitude among the terms entering the identity,
/// which is what the rounding error is proportional to — several families
/// reach term magnitudes ~1e11 at |n| = 12 while the exact value cancels
/// to zero, so normalizing by the result would report pure noise.
struct identity_residual {
    std::string name;
    bool applicable = true;
    std::string note;
    double residual = 0.0;
    double scale = 0.0;

    double normalized() const { return residual / std::max(1.0, scale); }
};

namespace detail {

// rhs given as its additive terms so the cancellation scale is visible
template <typename Lhs, typename RhsTerms>
inline identity_residual check_identity(const std::string& name, Lhs lhs_fn, RhsTerms rhs_terms_fn) {
    identity_residual r;
    r.name = name;
    try {
        const double lhs = lhs_fn();
        const auto terms = rhs_terms_fn();
        double rhs = 0.0;
        double scale = std::fabs(lhs);
        for (double t : terms) {
            rhs += t;
            scale = std::max(scale, std::fabs(t));
        }
        r.residual = std::fabs(lhs - rhs);
        r.scale = scale;
        if (!std::isfinite(r.residual)) {
            r.applicable = false;
            r.note = "non-finite";
        }
    } catch (const pq_error& e) {
        r.applicable = false;
        r.note = e.what();
    }
    return r;
}

inline identity_residual inapplicable(const std::string& name, const std::string& why) {
    identity_residual r;
    r.name = name;
    r.applicable = false;
    r.note = why;
    return r;
}

} // namespace detail

/// Evaluates every algebraic relation satisfied by the pq-numbers —
/// single-step recursions, the addition/subtraction laws, the negative and
/// fractional index formulas, and the base-inversion pair — at the point
/// (n, m) and reports one residual per relation.  Relations that require an
/// inverse of p, q, or pq are marked inapplicable where that inverse does
/// not exist; the fractional-index relation additionally needs p, q > 0.
inline std::vector<identity_residual> identity_suite(const deformation_params& d, long long n,
                                                     long long m, long long max_range = 64) {
    if (std::llabs(n) > max_range || std::llabs(m) > max_range)
        throw std::invalid_argument("identity_suite: |n|, |m| exceed configured max");
    using detail::check_identity;
    using detail::inapplicable;

    std::vector<identity_residual> out;
    const double p = d.p, q = d.q;
    const bool pq_invertible = (p * q != 0.0);
    using terms_t = std::vector<double>;

    out.push_back(check_identity(
        "step_q", [&] { return pq_number(d, n + 1); },
        [&] { return terms_t{q * pq_number(d, n), int_pow(p, n)}; }));
    out.push_back(check_identity(
        "step_p", [&] { return pq_number(d, n + 1); },
        [&] { return terms_t{p * pq_number(d, n), int_pow(q, n)}; }));
    out.push_back(check_identity(
        "addition", [&] { return pq_number(d, n + m); },
        [&] { return terms_t{int_pow(p, n) * pq_number(d, m), int_pow(q, m) * pq_number(d, n)}; }));

    if (pq_invertible) {
        out.push_back(check_identity(
            "subtraction_negative_index", [&] { return pq_number(d, n - m); },
            [&] {
                return terms_t{int_pow(p, n) * pq_number(d, -m), int_pow(q, -m) * pq_number(d, n)};
            }));
        out.push_back(check_identity(
            "negative_index", [&] { return pq_number(d, -n); },
            [&] { return terms_t{-pq_number(d, n) / int_pow(p * q, n)}; }));
        out.push_back(check_identity(
            "subtraction_scaled", [&] { return pq_number(d, n - m); },
            [&] {
                return terms_t{int_pow(q, -m) * pq_number(d, n),
                               -int_pow(q, -m) * int_pow(p, n - m) * pq_number(d, m)};
            }));
    } else {
        out.push_back(inapplicable("subtraction_negative_index", "pq = 0"));
        out.push_back(inapplicable("negative_index", "pq = 0"));
        out.push_back(inapplicable("subtraction_scaled", "pq = 0"));
    }

    out.push_back(check_identity(
        "product_base_power_a", [&] { return pq_number(d, n * m); },
        [&] {
            deformation_params dn{int_pow(p, n), int_pow(q, n)};
            return terms_t{pq_number(d, n) * pq_number(dn, m)};
        }));
    out.push_back(check_identity(
        "product_base_power_b", [&] { return pq_number(d, n * m); },
        [&] {
            deformation_params dm{int_pow(p, m), int_pow(q, m)};
            return terms_t{pq_number(d, m) * pq_number(dm, n)};
        }));

    // Fractional index [n/m]: real powers of the bases, so p, q > 0 only.
    if (p > 0.0 && q > 0.0 && m != 0) {
        const double x = static_cast<double>(n) / static_cast<double>(m);
        out.push_back(check_identity(
            "ratio_fractional_base_a", [&] { return pq_number_real(d, x); },
            [&] {
                deformation_params dx{std::pow(p, x), std::pow(q, x)};
                const double denom = pq_number(dx, m);
                if (denom == 0.0) throw division_by_zero_pq_number{m};
                return terms_t{pq_number(d, n) / denom};
            }));
        out.push_back(check_identity(
            "ratio_fractional_base_b", [&] { return pq_number_real(d, x); },
            [&] {
                const double im = 1.0 / static_cast<double>(m);
                deformation_params dr{std::pow(p, im), std::pow(q, im)};
                const double denom = pq_number(dr, m);
                if (denom == 0.0) throw division_by_zero_pq_number{m};
                return terms_t{pq_number(dr, n) / denom};
            }));
    } else {
        const char* why = (m == 0) ? "m = 0" : "requires p, q > 0";
        out.push_back(inapplicable("ratio_fractional_base_a", why));
        out.push_back(inapplicable("ratio_fractional_base_b", why));
    }

    if (pq_invertible) {
        deformation_params dinv{1.0 / p, 1.0 / q};
        out.push_back(check_identity(
            "base_inversion", [&] { return pq_number(d, n); },
            [&] { return terms_t{pq_number(dinv, n) * int_pow(p * q, n - 1)}; }));
        if (n >= 0) {
            out.push_back(check_identity(
                "base_inversion_factorial", [&] { return pq_factorial(d, n); },
                [&] { return terms_t{pq_factorial(dinv, n) * int_pow(p * q, n * (n - 1) / 2)}; }));
        } else {
            out.push_back(inapplicable("base_inversion_factorial", "n < 0"));
        }
    } else {
        out.push_back(inapplicable("base_inversion", "pq = 0"));
        out.push_back(inapplicable("base_inversion_factorial", "pq = 0"));
    }

    return out;
}

} // namespace pqosc
