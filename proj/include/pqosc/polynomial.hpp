#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace pqosc {

/// Polynomial with complex coefficients, index = monomial degree.
/// Trailing zeros are permitted; degree() ignores them.
struct poly {
    std::vector<std::complex<double>> c;

    poly() = default;
    explicit poly(std::vector<std::complex<double>> coeffs) : c(std::move(coeffs)) {}

    static poly one() { return poly{{1.0}}; }
    static poly zero() { return poly{}; }

    long long degree() const {
        for (long long i = static_cast<long long>(c.size()) - 1; i >= 0; --i)
            if (c[static_cast<size_t>(i)] != std::complex<double>{0.0, 0.0}) return i;
        return -1;
    }

    std::complex<double> coeff(size_t i) const { return i < c.size() ? c[i] : 0.0; }
};

inline poly poly_mul(const poly& a, const poly& b) {
    if (a.c.empty() || b.c.empty()) return poly::zero();
    poly out;
    out.c.assign(a.c.size() + b.c.size() - 1, {0.0, 0.0});
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
    return out;
}

inline poly poly_sub(const poly& a, const poly& b) {
    poly out;
    out.c.assign(std::max(a.c.size(), b.c.size()), {0.0, 0.0});
    for (size_t i = 0; i < out.c.size(); ++i) out.c[i] = a.coeff(i) - b.coeff(i);
    return out;
}

inline poly poly_scale(const poly& a, std::complex<double> s) {
    poly out = a;
    for (auto& x : out.c) x *= s;
    return out;
}

/// p(z) -> p(s z), i.e. c_n -> c_n s^n.
inline poly poly_scale_argument(const poly& a, std::complex<double> s) {
    poly out = a;
    std::complex<double> pow = 1.0;
    for (auto& x : out.c) {
        x *= pow;
        pow *= s;
    }
    return out;
}

inline std::complex<double> poly_eval(const poly& a, std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (size_t i = a.c.size(); i-- > 0;) acc = acc * z + a.c[i];
    return acc;
}

inline double poly_max_abs(const poly& a) {
    double m = 0.0;
    for (const auto& x : a.c) m = std::max(m, std::abs(x));
    return m;
}

/// max_i |a_i - b_i| / max(1, max_i |a_i|, max_i |b_i|).  Coefficients of the
/// deformed binomials reach ~1e14 at large bases, so residuals are compared
/// against the coefficient scale.
inline double poly_normalized_distance(const poly& a, const poly& b) {
    const double scale = std::max({1.0, poly_max_abs(a), poly_max_abs(b)});
    return poly_max_abs(poly_sub(a, b)) / scale;
}

} // namespace pqosc
