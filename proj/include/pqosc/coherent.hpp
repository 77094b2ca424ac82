#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>

#include "pqosc/fock.hpp"
#include "pqosc/pq_calculus.hpp"

namespace pqosc {

/// hbar, m, omega as explicit scalars, defaulting to 1.
struct physical_scales {
    double hbar = 1.0;
    double mass = 1.0;
    double omega = 1.0;
};

struct coherent_spec {
    std::complex<double> alpha;
    bool normalized = true;
    size_t dim = 0; // 0 selects the tail-based dimension
    // Eigen-residuals scale like sqrt(tail), so the library default keeps the
    // tail at 1e-16 to hold residuals under 1e-8.
    double tail_tol = 1e-16;
};

/// Tail of sum z^n/[n]! bounded by a geometric majorant anchored at the last
/// computed term (index dim-1), so the estimate covers the top retained level
/// as well; the eigen-relation residual |alpha| |v_{dim-1}| then sits under
/// sqrt(tail).  +inf when the majorant does not contract.
inline double coherent_tail_remainder(const deformation_params& d, double z, size_t dim) {
    if (z == 0.0) return 0.0;
    double term = 1.0;
    for (size_t n = 1; n < dim; ++n) term *= z / pq_number(d, static_cast<long long>(n));
    const double next = pq_number(d, static_cast<long long>(dim));
    if (!(next > z)) return std::numeric_limits<double>::infinity();
    const double ratio = z / next;
    return std::fabs(term) / (1.0 - ratio);
}

/// Probability mass of a normalized coherent state beyond the truncation.
inline double coherent_tail_mass(const deformation_params& d, std::complex<double> alpha,
                                 size_t dim, double series_tol = 1e-14) {
    const double z = std::norm(alpha);
    if (z == 0.0) return 0.0;
    const auto ez = pq_exp_small(d, z, std::max(series_tol, 1e-15));
    return coherent_tail_remainder(d, z, dim) / ez.value.real();
}

/// Smallest power-of-two dimension with estimated tail mass <= tail_tol.
inline size_t suggest_dim(const deformation_params& d, std::complex<double> alpha,
                          double tail_tol = 1e-16, size_t cap = 4096) {
    for (size_t dim = 2; dim <= cap; dim *= 2) {
        if (coherent_tail_mass(d, alpha, dim, tail_tol) <= tail_tol) return dim;
    }
    throw tail_too_large{coherent_tail_mass(d, alpha, cap, tail_tol)};
}

/// Coefficients alpha^n / sqrt([n]!) with no tail policing; building block
/// for the checked constructor and the state-relation residuals.
inline fock_vector coherent_unchecked(const deformation_params& d, std::complex<double> alpha,
                                      size_t dim) {
    fock_vector v;
    v.c.assign(dim, {0.0, 0.0});
    std::complex<double> c = 1.0;
    v.c[0] = c;
    for (size_t n = 1; n < dim; ++n) {
        const double num = pq_number(d, static_cast<long long>(n));
        if (!(num > 0.0)) throw negative_pq_number{static_cast<long long>(n)};
        c *= alpha / std::sqrt(num);
        v.c[n] = c;
    }
    return v;
}

/// Truncated coherent state.  The eigenvalue series e^{|alpha|^2} must
/// classify as converged at tail_tol, and the estimated tail mass must fit
/// under tail_tol at the chosen dimension.
inline fock_vector coherent_vector(const deformation_params& d, const coherent_spec& spec) {
    const double z = std::norm(spec.alpha);
    const auto ez = pq_exp_small(d, z, std::max(spec.tail_tol, 1e-15));
    if (ez.classification != series_status::converged)
        throw tail_too_large{ez.last_term_magnitude};

    const size_t dim = spec.dim ? spec.dim : suggest_dim(d, spec.alpha, spec.tail_tol);
    fock_vector v = coherent_unchecked(d, spec.alpha, dim);
    v.tail_mass = coherent_tail_remainder(d, z, dim) / ez.value.real();
    if (v.tail_mass > spec.tail_tol) throw tail_too_large{v.tail_mass};
    if (spec.normalized) {
        v = vscale(v, 1.0 / std::sqrt(ez.value.real()));
        v.normalized = true;
    }
    return v;
}

/// <beta|alpha> = e^{conj(beta) alpha}; the normalized variant divides by
/// sqrt(e^{|alpha|^2} e^{|beta|^2}).
inline std::complex<double> coherent_inner(const deformation_params& d,
                                           std::complex<double> alpha, std::complex<double> beta,
                                           bool normalized = false, double tol = 1e-14) {
    const auto overlap = pq_exp_small(d, std::conj(beta) * alpha, tol);
    if (!normalized) return overlap.value;
    const auto ea = pq_exp_small(d, std::norm(alpha), tol);
    const auto eb = pq_exp_small(d, std::norm(beta), tol);
    return overlap.value / std::sqrt(ea.value.real() * eb.value.real());
}

/// The primed state |alpha'/lambda>: coefficients [n] alpha^{n-1} / (lambda^n sqrt([n]!)),
/// which is what a^dagger (equivalently the deformed derivative in alpha)
/// produces from a coherent state.
inline fock_vector primed_vector(const deformation_params& d, std::complex<double> alpha,
                                 std::complex<double> lambda, size_t dim) {
    if (lambda == std::complex<double>{0.0, 0.0})
        throw std::invalid_argument("primed_vector requires lambda != 0");
    fock_vector v;
    v.c.assign(dim, {0.0, 0.0});
    std::complex<double> base = 1.0 / lambda; // alpha^{n-1}/(lambda^n sqrt([n]!)) at n = 1
    for (size_t n = 1; n < dim; ++n) {
        const double num = pq_number(d, static_cast<long long>(n));
        if (!(num > 0.0)) throw negative_pq_number{static_cast<long long>(n)};
        if (n > 1) base *= alpha / (lambda * std::sqrt(num));
        v.c[n] = num * base;
    }
    return v;
}

/// Residuals of the lambda-scaling family of relations between coherent,
/// scaled, and primed states, each normalized by max(1, norm of the sides).
/// The derivative route needs alpha != 0 and a nondegenerate (p, q) pair;
/// anywhere else it is reported as nullopt.
struct scaled_relations_report {
    double eigen = 0.0;              // a |alpha/l> = (alpha/l) |alpha/l>
    double number_scaling = 0.0;     // l^N |alpha> = |l alpha>
    double primed_creation = 0.0;    // a†|alpha> = |alpha'>
    std::optional<double> primed_derivative; // difference-quotient route to |alpha'/l>
    double three_term = 0.0;         // a|alpha'/l> = (q a/l)|alpha'/l> + (1/l)|p a/l>
};

inline scaled_relations_report scaled_state_relations(const deformation_params& d,
                                                      std::complex<double> alpha,
                                                      std::complex<double> lambda, size_t dim) {
    if (lambda == std::complex<double>{0.0, 0.0})
        throw std::invalid_argument("scaled_state_relations requires lambda != 0");
    auto rel_residual = [](const fock_vector& lhs, const fock_vector& rhs) {
        return vnorm(vsub(lhs, rhs)) / std::max({1.0, vnorm(lhs), vnorm(rhs)});
    };
    scaled_relations_report r;

    const fock_vector v_scaled = coherent_unchecked(d, alpha / lambda, dim);
    r.eigen = rel_residual(apply_annihilation(d, v_scaled), vscale(v_scaled, alpha / lambda));

    const fock_vector v = coherent_unchecked(d, alpha, dim);
    fock_vector lam_n = v;
    std::complex<double> pw = 1.0;
    for (size_t n = 0; n < dim; ++n) {
        lam_n.c[n] *= pw;
        pw *= lambda;
    }
    r.number_scaling = rel_residual(lam_n, coherent_unchecked(d, lambda * alpha, dim));

    r.primed_creation = rel_residual(apply_creation(d, v), primed_vector(d, alpha, 1.0, dim));

    if (alpha != std::complex<double>{0.0, 0.0} && !d.degenerate()) {
        const fock_vector fp = coherent_unchecked(d, d.p * alpha / lambda, dim);
        const fock_vector fq = coherent_unchecked(d, d.q * alpha / lambda, dim);
        const fock_vector dq = vscale(vsub(fp, fq), 1.0 / ((d.p - d.q) * alpha));
        r.primed_derivative = rel_residual(dq, primed_vector(d, alpha, lambda, dim));
    }

    const fock_vector primed = primed_vector(d, alpha, lambda, dim);
    const fock_vector lhs = apply_annihilation(d, primed);
    const fock_vector rhs = vadd(vscale(primed, d.q * alpha / lambda),
                                 vscale(coherent_unchecked(d, d.p * alpha / lambda, dim), 1.0 / lambda));
    r.three_term = rel_residual(lhs, rhs);
    return r;
}

/// Closed-form averages in the unnormalized state |alpha>, i.e. carrying the
/// e^{|alpha|^2} factor.  The number-shifted average has two equivalent
/// closed forms; their agreement is a built-in self-check.
struct coherent_averages_t {
    std::complex<double> a;
    std::complex<double> a_dagger;
    std::complex<double> a_sq;
    std::complex<double> a_dagger_sq;
    double number = 0.0;       // <[N]>
    double number_plus = 0.0;  // <[N+1]>
    double norm = 0.0;         // e^{|alpha|^2}, divide to normalize
};

inline coherent_averages_t coherent_averages(const deformation_params& d,
                                             std::complex<double> alpha, double tol = 1e-14) {
    const double z = std::norm(alpha);
    const double ez = pq_exp_small(d, z, tol).value.real();
    const double epz = pq_exp_small(d, d.p * z, tol).value.real();
    const double eqz = pq_exp_small(d, d.q * z, tol).value.real();

    coherent_averages_t out;
    out.a = alpha * ez;
    out.a_dagger = std::conj(alpha) * ez;
    out.a_sq = alpha * alpha * ez;
    out.a_dagger_sq = std::conj(alpha) * std::conj(alpha) * ez;
    out.number = z * ez;
    const double form_p = d.p * z * ez + eqz;
    const double form_q = d.q * z * ez + epz;
    const double gap = std::fabs(form_p - form_q);
    if (gap > 1e-10 * std::max(1.0, std::fabs(form_p))) throw self_check_failed{gap};
    out.number_plus = form_p;
    out.norm = ez;
    return out;
}

enum class uncertainty_source { closed_form, matrix_numeric, symmetric_form };

inline const char* to_string(uncertainty_source s) {
    switch (s) {
    case uncertainty_source::closed_form: return "closed_form";
    case uncertainty_source::matrix_numeric: return "matrix_numeric";
    case uncertainty_source::symmetric_form: return "symmetric_form";
    }
    return "?";
}

/// Dispersions of the deformed coordinate and momentum; product in units of
/// hbar.  dx2 carries hbar/(m omega), dp2 carries m hbar omega.
struct uncertainty_report {
    double dx2 = 0.0;
    double dp2 = 0.0;
    double product = 0.0;
    uncertainty_source source = uncertainty_source::closed_form;
};

/// The scalar bracket (q-1) z + e^{pz}/e^z at z = |alpha|^2.  The p<->q
/// swapped evaluation is an equivalent expression; disagreement beyond
/// 1e-8 signals series misuse outside convergence and is a hard error.
inline double uncertainty_bracket(const deformation_params& d, double alpha_sq,
                                  double tol = 1e-14) {
    const double ez = pq_exp_small(d, alpha_sq, tol).value.real();
    if (std::fabs(ez) < f_function_denominator_floor) throw denominator_underflow{};
    const double epz = pq_exp_small(d, d.p * alpha_sq, tol).value.real();
    const double eqz = pq_exp_small(d, d.q * alpha_sq, tol).value.real();
    const double bracket = (d.q - 1.0) * alpha_sq + epz / ez;
    const double swapped = (d.p - 1.0) * alpha_sq + eqz / ez;
    const double gap = std::fabs(bracket - swapped);
    if (gap > 1e-8 * std::max(1.0, std::fabs(bracket))) throw self_check_failed{gap};
    return bracket;
}

inline uncertainty_report make_uncertainty_report(double bracket, uncertainty_source src,
                                                  const physical_scales& s) {
    uncertainty_report r;
    r.dx2 = s.hbar / (2.0 * s.mass * s.omega) * bracket;
    r.dp2 = 0.5 * s.mass * s.hbar * s.omega * bracket;
    r.product = 0.5 * s.hbar * bracket;
    r.source = src;
    return r;
}

inline uncertainty_report uncertainty_closed(const deformation_params& d,
                                             std::complex<double> alpha,
                                             const physical_scales& s = {}, double tol = 1e-14) {
    return make_uncertainty_report(uncertainty_bracket(d, std::norm(alpha), tol),
                                   uncertainty_source::closed_form, s);
}

/// Same product through f: (1/2)(f(p,z) + f(q,z) + 2(p+q-1) z) in units of
/// the bracket; symmetric in p and q by construction.
inline uncertainty_report uncertainty_symmetric_form(const deformation_params& d,
                                                     std::complex<double> alpha,
                                                     const physical_scales& s = {},
                                                     double tol = 1e-14) {
    const double z = std::norm(alpha);
    const double fp = f_function(d, d.p, z, tol).real();
    const double fq = f_function(d, d.q, z, tol).real();
    const double bracket = 0.5 * (fp + fq + 2.0 * (d.p + d.q - 1.0) * z);
    return make_uncertainty_report(bracket, uncertainty_source::symmetric_form, s);
}

struct xp_moments_t {
    double mean_x = 0.0;
    double mean_p = 0.0;
    double x_sq = 0.0;
    double p_sq = 0.0;
};

/// First and second coordinate/momentum moments of a normalized Fock vector,
/// with X, P assembled from the ladder action (second moments via the norm of
/// the applied vector, both operators being Hermitian on the truncation).
inline xp_moments_t xp_moments(const deformation_params& d, const fock_vector& v,
                               const physical_scales& s = {}) {
    const double sx = std::sqrt(s.hbar / (2.0 * s.mass * s.omega));
    const double sp = std::sqrt(0.5 * s.mass * s.hbar * s.omega);
    const fock_vector av = apply_annihilation(d, v);
    const fock_vector adv = apply_creation(d, v);

    fock_vector xv = vscale(vadd(adv, av), sx);
    fock_vector pv = vscale(vsub(adv, av), std::complex<double>{0.0, sp});

    xp_moments_t m;
    m.mean_x = vdot(v, xv).real();
    m.mean_p = vdot(v, pv).real();
    m.x_sq = vnorm2(xv);
    m.p_sq = vnorm2(pv);
    return m;
}

/// Matrix-numeric dispersions on the truncated coherent vector; the vector
/// is normalized numerically so the moments are exact for the truncation.
inline uncertainty_report uncertainty_numeric(const deformation_params& d,
                                              std::complex<double> alpha, size_t dim,
                                              const physical_scales& s = {}) {
    fock_vector v = coherent_unchecked(d, alpha, dim);
    v = vscale(v, 1.0 / vnorm(v));
    v.normalized = true;
    const xp_moments_t m = xp_moments(d, v, s);
    uncertainty_report r;
    r.dx2 = m.x_sq - m.mean_x * m.mean_x;
    r.dp2 = m.p_sq - m.mean_p * m.mean_p;
    r.product = std::sqrt(r.dx2 * r.dp2);
    r.source = uncertainty_source::matrix_numeric;
    return r;
}

/// || a v - alpha v || for the normalized truncated coherent state.
inline double coherent_eigen_residual(const deformation_params& d, const coherent_spec& spec) {
    fock_vector v = coherent_vector(d, spec);
    if (!spec.normalized) v = vscale(v, 1.0 / vnorm(v));
    return vnorm(vsub(apply_annihilation(d, v), vscale(v, spec.alpha)));
}

} // namespace pqosc
