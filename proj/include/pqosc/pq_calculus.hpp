#pragma once

#include <complex>

#include "pqosc/errors.hpp"
#include "pqosc/pq_numbers.hpp"
#include "pqosc/polynomial.hpp"
#include "pqosc/series.hpp"

namespace pqosc {

/// Deformed derivative on polynomials: the monomial z^n maps to [n] z^{n-1}.
inline poly pq_derivative(const poly& f, const deformation_params& d) {
    if (f.c.size() <= 1) return poly::zero();
    poly out;
    out.c.assign(f.c.size() - 1, {0.0, 0.0});
    for (size_t n = 1; n < f.c.size(); ++n)
        out.c[n - 1] = pq_number(d, static_cast<long long>(n)) * f.c[n];
    return out;
}

/// Deformed binomial (z - a)^n_{p,q} expanded into monomial coefficients:
/// the product of (z - p^{n-1-j} q^j a) over j = 0..n-1, and 1 for n = 0.
inline poly pq_binomial_poly(const deformation_params& d, std::complex<double> a, long long n) {
    if (n < 0) throw std::invalid_argument("pq_binomial_poly requires n >= 0");
    poly out = poly::one();
    for (long long j = 0; j < n; ++j) {
        const std::complex<double> root = int_pow(d.p, n - 1 - j) * int_pow(d.q, j) * a;
        out = poly_mul(out, poly{{-root, 1.0}});
    }
    return out;
}

/// Residual of D(z - a)^n = [n] (z - a)^{n-1}, normalized to coefficient scale.
inline double pq_derivative_binomial_check(const deformation_params& d, std::complex<double> a,
                                           long long n) {
    if (n < 1) throw std::invalid_argument("check requires n >= 1");
    const poly lhs = pq_derivative(pq_binomial_poly(d, a, n), d);
    const poly rhs = poly_scale(pq_binomial_poly(d, a, n - 1), pq_number(d, n));
    return poly_normalized_distance(lhs, rhs);
}

/// Residual of the splitting law
/// (z-a)^{n+m} = (z - p^m a)^n (z - q^n a)^m = (z - q^m a)^n (z - p^n a)^m,
/// worst of the two orderings.
inline double binomial_splitting_check(const deformation_params& d, std::complex<double> a,
                                       long long n, long long m) {
    const poly whole = pq_binomial_poly(d, a, n + m);
    const poly split1 = poly_mul(pq_binomial_poly(d, int_pow(d.p, m) * a, n),
                                 pq_binomial_poly(d, int_pow(d.q, n) * a, m));
    const poly split2 = poly_mul(pq_binomial_poly(d, int_pow(d.q, m) * a, n),
                                 pq_binomial_poly(d, int_pow(d.p, n) * a, m));
    return std::max(poly_normalized_distance(whole, split1),
                    poly_normalized_distance(whole, split2));
}

/// Negative-index binomial exercised through its reciprocal: combining the
/// splitting law at m = -k with the reciprocal rule gives, for any sample z,
///   (z-a)^{n-k} * (z - p^{-k} q^{n-k} a)^k = (z - p^{-k} a)^n.
inline double binomial_reciprocal_check(const deformation_params& d, std::complex<double> a,
                                        std::complex<double> z, long long n, long long k) {
    if (k < 1 || n < k) throw std::invalid_argument("check requires 1 <= k <= n");
    const std::complex<double> lhs =
        poly_eval(pq_binomial_poly(d, a, n - k), z) *
        poly_eval(pq_binomial_poly(d, int_pow(d.p, -k) * int_pow(d.q, n - k) * a, k), z);
    const std::complex<double> rhs = poly_eval(pq_binomial_poly(d, int_pow(d.p, -k) * a, n), z);
    return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

/// Residual of the Gauss expansion
/// (z + a)^n = sum_k [n choose k] (pq)^{k(k-1)/2} z^{n-k} a^k.
inline double gauss_binomial_check(const deformation_params& d, std::complex<double> a,
                                   long long n) {
    if (n < 0) throw std::invalid_argument("check requires n >= 0");
    const poly lhs = pq_binomial_poly(d, -a, n); // roots at -(...)a, i.e. (z + ...a)
    poly rhs;
    rhs.c.assign(static_cast<size_t>(n) + 1, {0.0, 0.0});
    std::complex<double> apow = 1.0;
    for (long long k = 0; k <= n; ++k) {
        const double coeff = pq_binomial_coeff(d, n, k) * int_pow(d.pq(), k * (k - 1) / 2);
        rhs.c[static_cast<size_t>(n - k)] += coeff * apow;
        apow *= a;
    }
    return poly_normalized_distance(lhs, rhs);
}

/// e^z_{p,q} = sum z^n / [n]!  Throws series_diverged when the trailing
/// window of term magnitudes grows monotonically (z outside the region of
/// convergence, e.g. non-symmetric q < 1 at large |z|).
inline series_value pq_exp_small(const deformation_params& d, std::complex<double> z,
                                 double tol = 1e-14, int cap = series_default_cap) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    std::complex<double> term = 1.0;
    auto gen = [&, z](int n) {
        if (n == 0) return std::complex<double>{1.0, 0.0};
        const double num = pq_number(d, n);
        if (num == 0.0) throw division_by_zero_pq_number{n};
        term *= z / num;
        return term;
    };
    series_value sv = sum_series(gen, tol, cap);
    if (sv.classification == series_status::diverging) throw series_diverged{};
    return sv;
}

/// E^z_{p,q} = sum z^n (pq)^{n(n-1)/2} / [n]!
inline series_value pq_exp_big(const deformation_params& d, std::complex<double> z,
                               double tol = 1e-14, int cap = series_default_cap) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    std::complex<double> term = 1.0;
    double pq_pow = 1.0; // (pq)^{n-1} when emitting term n
    auto gen = [&, z](int n) {
        if (n == 0) return std::complex<double>{1.0, 0.0};
        const double num = pq_number(d, n);
        if (num == 0.0) throw division_by_zero_pq_number{n};
        if (n > 1) pq_pow *= d.pq();
        term *= z * pq_pow / num;
        return term;
    };
    series_value sv = sum_series(gen, tol, cap);
    if (sv.classification == series_status::diverging) throw series_diverged{};
    return sv;
}

/// Residual of the fundamental relation e^{pz} - e^{qz} = (p-q) z e^z.
/// Caller normalizes by max(1, |e^z|).
inline double exp_relation_residual(const deformation_params& d, std::complex<double> z,
                                    double tol = 1e-14) {
    const auto epz = pq_exp_small(d, d.p * z, tol);
    const auto eqz = pq_exp_small(d, d.q * z, tol);
    const auto ez = pq_exp_small(d, z, tol);
    return std::abs(epz.value - eqz.value - (d.p - d.q) * z * ez.value);
}

inline constexpr double f_function_denominator_floor = 1e-250;

/// f(lambda, z) = e^{lambda z}/e^z - lambda z.  Satisfies f(p,z) = f(q,z)
/// and f(1,z) = 1 - z; the deformed uncertainty product is written in terms
/// of it.
inline std::complex<double> f_function(const deformation_params& d, std::complex<double> lambda,
                                       std::complex<double> z, double tol = 1e-14) {
    const auto num = pq_exp_small(d, lambda * z, tol);
    const auto den = pq_exp_small(d, z, tol);
    if (std::abs(den.value) < f_function_denominator_floor) throw denominator_underflow{};
    return num.value / den.value - lambda * z;
}

/// Degree-N truncation of e^z (or E^z when big) as a polynomial; used to
/// check the derivative laws D e^z = e^z and D E^z = E^{pqz} coefficientwise.
inline poly exp_series_poly(const deformation_params& d, long long degree, bool big = false) {
    poly out;
    out.c.assign(static_cast<size_t>(degree) + 1, {0.0, 0.0});
    double term = 1.0;
    double pq_pow = 1.0;
    out.c[0] = 1.0;
    for (long long n = 1; n <= degree; ++n) {
        const double num = pq_number(d, n);
        if (num == 0.0) throw division_by_zero_pq_number{n};
        if (big && n > 1) pq_pow *= d.pq();
        term *= (big ? pq_pow : 1.0) / num;
        out.c[static_cast<size_t>(n)] = term;
    }
    return out;
}

} // namespace pqosc
