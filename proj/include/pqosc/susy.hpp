#pragma once

#include <cmath>
#include <complex>

#include "pqosc/coherent.hpp"
#include "pqosc/fock.hpp"

namespace pqosc {

/// Ordered pair of bosonic components over the fermionic basis: psi0 is the
/// fermion-empty component, psi1 the fermion-occupied one.
struct super_state {
    fock_vector psi0;
    fock_vector psi1;
    bool normalized = false;

    size_t dim() const { return psi0.dim(); }
};

inline double super_norm2(const super_state& s) { return vnorm2(s.psi0) + vnorm2(s.psi1); }

inline std::complex<double> super_dot(const super_state& u, const super_state& v) {
    return vdot(u.psi0, v.psi0) + vdot(u.psi1, v.psi1);
}

inline super_state normalize_super(super_state s) {
    const double n = std::sqrt(super_norm2(s));
    if (!(n > 0.0)) throw not_normalized{};
    s.psi0 = vscale(s.psi0, 1.0 / n);
    s.psi1 = vscale(s.psi1, 1.0 / n);
    s.normalized = true;
    return s;
}

inline super_state super_sub(const super_state& u, const super_state& v) {
    return {vsub(u.psi0, v.psi0), vsub(u.psi1, v.psi1), false};
}

inline super_state super_scale(const super_state& u, std::complex<double> c) {
    return {vscale(u.psi0, c), vscale(u.psi1, c), false};
}

enum class super_kind { L, B };

inline const char* to_string(super_kind k) { return k == super_kind::L ? "L" : "B"; }

/// Supercharges and the block Hamiltonian diag([N], [N+1]) (hbar omega / 2).
/// The diagonal entries are written as the same half-sums used by the
/// bosonic Hamiltonian so the fermionic partial trace reproduces it exactly.
struct super_operators {
    cmatrix Q;
    cmatrix Q_dagger;
    cmatrix H_S;
    cmatrix super_number; // [N] block-diag [N+1]
    size_t dim_boson = 0;
};

inline super_operators build_super_ops(const deformation_params& d, size_t dim,
                                       double hbar_omega = 1.0) {
    const cmatrix a = build_annihilation(d, dim);
    super_operators out;
    out.dim_boson = dim;

    out.Q = cmatrix(2 * dim, "Q");
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j) out.Q.at(dim + i, j) = a.at(i, j);
    out.Q_dagger = adjoint(out.Q);
    out.Q_dagger.label = "Q_dagger";

    out.H_S = cmatrix(2 * dim, "H_S");
    out.super_number = cmatrix(2 * dim, "[super N]");
    for (size_t n = 0; n < dim; ++n) {
        const auto nn = static_cast<long long>(n);
        out.H_S.at(n, n) = 0.5 * hbar_omega * pq_number(d, nn);
        out.H_S.at(dim + n, dim + n) = 0.5 * hbar_omega * pq_number(d, nn + 1);
        out.super_number.at(n, n) = pq_number(d, nn);
        out.super_number.at(dim + n, dim + n) = pq_number(d, nn + 1);
    }
    return out;
}

/// Partial trace over the fermionic factor of a 2x2-block operator:
/// the sum of the two diagonal blocks.
inline cmatrix partial_trace_fermion(const cmatrix& m) {
    if (m.dim % 2 != 0) throw std::invalid_argument("expected a 2x2-block operator");
    const size_t dim = m.dim / 2;
    cmatrix out(dim, "Tr_f " + m.label);
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j) out.at(i, j) = m.at(i, j) + m.at(dim + i, dim + j);
    return out;
}

/// Doubly degenerate super-number eigenstate
/// cos(theta/2) |0>_f |n>  +  sin(theta/2) e^{i phi} |1>_f |n-1>,
/// eigenvalue [n].
inline super_state super_number_state(const deformation_params& d, long long n, double theta,
                                      double phi, size_t dim) {
    (void)d;
    if (n < 1 || static_cast<size_t>(n) >= dim) throw index_out_of_range{};
    super_state s;
    s.psi0.c.assign(dim, {0.0, 0.0});
    s.psi1.c.assign(dim, {0.0, 0.0});
    s.psi0.c[static_cast<size_t>(n)] = std::cos(0.5 * theta);
    s.psi1.c[static_cast<size_t>(n - 1)] = std::sin(0.5 * theta) * std::polar(1.0, phi);
    s.normalized = true;
    return s;
}

/// Block super-annihilation operator
///   A   = ( p a   -1  ;  0    q a )        (transposed = false)
///   A^T = ( p a    0  ; -1    q a )        (transposed = true)
/// The -1 block is minus the bosonic identity.
inline cmatrix super_annihilation(const deformation_params& d, size_t dim, bool transposed) {
    const cmatrix a = build_annihilation(d, dim);
    cmatrix m(2 * dim, transposed ? "A^T" : "A");
    for (size_t i = 0; i < dim; ++i) {
        for (size_t j = 0; j < dim; ++j) {
            m.at(i, j) = d.p * a.at(i, j);
            m.at(dim + i, dim + j) = d.q * a.at(i, j);
        }
        if (transposed)
            m.at(dim + i, i) = -1.0;
        else
            m.at(i, dim + i) = -1.0;
    }
    return m;
}

/// O(dim) application of A.
inline super_state apply_super_A(const deformation_params& d, const super_state& s) {
    return {vsub(vscale(apply_annihilation(d, s.psi0), d.p), s.psi1),
            vscale(apply_annihilation(d, s.psi1), d.q), false};
}

/// O(dim) application of A^T.
inline super_state apply_super_AT(const deformation_params& d, const super_state& s) {
    return {vscale(apply_annihilation(d, s.psi0), d.p),
            vsub(vscale(apply_annihilation(d, s.psi1), d.q), s.psi0), false};
}

/// Truncation dimension covering both bosonic arguments of the entangled
/// states; the tight tolerance plus the power-of-two overshoot also covers
/// the [n] growth of the primed coefficients.
inline size_t super_suggest_dim(const deformation_params& d, std::complex<double> alpha) {
    if (d.p == 0.0 || d.q == 0.0) throw zero_deformation_parameter{};
    const double tt = 1e-20;
    const size_t d1 = suggest_dim(d, alpha / d.q, tt);
    const size_t d2 = suggest_dim(d, alpha / d.p, tt);
    const size_t d3 = suggest_dim(d, alpha / (d.p * d.q), tt);
    return std::max<size_t>(4, std::max({d1, d2, d3}));
}

/// Separable eigenstates: up = (|alpha/p>, 0) of A, down = (0, |alpha/q>) of A^T.
inline super_state separable_super_coherent(const deformation_params& d,
                                            std::complex<double> alpha, bool up, size_t dim = 0) {
    if (up && d.p == 0.0) throw zero_deformation_parameter{};
    if (!up && d.q == 0.0) throw zero_deformation_parameter{};
    const std::complex<double> arg = up ? alpha / d.p : alpha / d.q;
    if (dim == 0) dim = std::max<size_t>(4, suggest_dim(d, arg));
    fock_vector v = coherent_vector(d, {.alpha = arg, .normalized = true, .dim = dim});
    fock_vector zero;
    zero.c.assign(dim, {0.0, 0.0});
    super_state s;
    s.psi0 = up ? v : zero;
    s.psi1 = up ? zero : v;
    s.normalized = true;
    return s;
}

/// Entangled super-coherent states:
///   L: (q |alpha'/(pq)>, |alpha/q>)  with  A s = alpha s
///   B: (|alpha/p>, p |alpha'/(pq)>)  with  A^T s = alpha s
/// Components are normalized numerically from the coefficient vectors; the
/// printed closed-form normalizations are checked as properties in the tests.
inline super_state entangled_super_coherent(const deformation_params& d,
                                            std::complex<double> alpha, super_kind kind,
                                            size_t dim = 0) {
    if (d.p == 0.0 || d.q == 0.0) throw zero_deformation_parameter{};
    if (dim == 0) dim = super_suggest_dim(d, alpha);
    const std::complex<double> lambda = d.p * d.q;
    super_state s;
    if (kind == super_kind::L) {
        s.psi0 = vscale(primed_vector(d, alpha, lambda, dim), d.q);
        s.psi1 = coherent_unchecked(d, alpha / d.q, dim);
    } else {
        s.psi0 = coherent_unchecked(d, alpha / d.p, dim);
        s.psi1 = vscale(primed_vector(d, alpha, lambda, dim), d.p);
    }
    return normalize_super(s);
}

/// The companion eigenstate with lambda_0 != 0, orthogonalized against the
/// printed state inside the same eigenspace of A (kind L) or A^T (kind B).
inline super_state entangled_super_coherent_orthogonal(const deformation_params& d,
                                                       std::complex<double> alpha,
                                                       super_kind kind, size_t dim = 0) {
    if (d.p == 0.0 || d.q == 0.0) throw zero_deformation_parameter{};
    if (dim == 0) dim = super_suggest_dim(d, alpha);
    const super_state printed = entangled_super_coherent(d, alpha, kind, dim);
    fock_vector zero;
    zero.c.assign(dim, {0.0, 0.0});
    super_state hom;
    if (kind == super_kind::L) {
        hom.psi0 = coherent_unchecked(d, alpha / d.p, dim);
        hom.psi1 = zero;
    } else {
        hom.psi0 = zero;
        hom.psi1 = coherent_unchecked(d, alpha / d.q, dim);
    }
    const super_state projected = super_sub(hom, super_scale(printed, super_dot(printed, hom)));
    return normalize_super(projected);
}

inline constexpr double concurrence_clamp_tol = 1e-12;

/// C = 2 sqrt(det Gram) of the two bosonic components.  Values in
/// [-tol, 0) and (1, 1+tol] are rounding and clamp to the range ends;
/// anything further out is a real bug and errors.
inline double concurrence(const super_state& s) {
    if (!s.normalized || std::fabs(super_norm2(s) - 1.0) > concurrence_clamp_tol)
        throw not_normalized{};
    const double n0 = vnorm2(s.psi0);
    const double n1 = vnorm2(s.psi1);
    const std::complex<double> g = vdot(s.psi0, s.psi1);
    const double det = n0 * n1 - std::norm(g);
    const double c_sq = 4.0 * det;
    if (c_sq < -concurrence_clamp_tol) throw concurrence_out_of_range{c_sq};
    double c = 2.0 * std::sqrt(std::max(det, 0.0));
    if (c > 1.0 + concurrence_clamp_tol) throw concurrence_out_of_range{c};
    return std::min(std::max(c, 0.0), 1.0);
}

/// Independent oracle: sqrt(2 (1 - Tr rho_f^2)) from the reduced 2x2
/// fermionic density matrix, i.e. twice the square root of its linear
/// entropy over two.
inline double concurrence_linear_entropy(const super_state& s) {
    if (!s.normalized || std::fabs(super_norm2(s) - 1.0) > concurrence_clamp_tol)
        throw not_normalized{};
    const double n0 = vnorm2(s.psi0);
    const double n1 = vnorm2(s.psi1);
    const std::complex<double> g = vdot(s.psi1, s.psi0); // <1|rho|0> entry route
    const double purity = n0 * n0 + n1 * n1 + 2.0 * std::norm(g);
    const double lin = 2.0 * (1.0 - purity);
    if (lin < -concurrence_clamp_tol) throw concurrence_out_of_range{lin};
    return std::sqrt(std::max(lin, 0.0));
}

/// Closed-form concurrences of the entangled states as functions of
/// z = |alpha|^2, assembled verbatim from deformed exponentials.
inline double concurrence_closed(const deformation_params& d, double alpha_sq, super_kind kind,
                                 double tol = 1e-14) {
    if (d.p == 0.0 || d.q == 0.0) throw zero_deformation_parameter{};
    const double p = d.p, q = d.q, z = alpha_sq;
    auto ex = [&](double arg) { return pq_exp_small(d, arg, tol).value.real(); };
    double norm_inv_sq, arg;
    if (kind == super_kind::L) {
        const double e_q2 = ex(z / (q * q));
        const double e_pq2 = ex(z / (p * q * q));
        const double e_p2q2 = ex(z / (p * p * q * q));
        norm_inv_sq = z / (p * p * p * p * q) * e_p2q2 + e_pq2 / (p * p) + e_q2;
        arg = e_q2 * e_pq2 / (p * p) + z / (p * p * p * p * q) * e_q2 * e_p2q2 -
              z / (p * p * q * q) * e_pq2 * e_pq2;
    } else {
        const double e_p2 = ex(z / (p * p));
        const double e_pq2 = ex(z / (p * q * q));
        const double e_p2q2 = ex(z / (p * p * q * q));
        const double e_p2q = ex(z / (p * p * q));
        norm_inv_sq = z / (p * p * q * q * q) * e_p2q2 + e_pq2 / (q * q) + e_p2;
        arg = e_p2 * e_pq2 / (q * q) + z / (p * p * q * q * q) * e_p2 * e_p2q2 -
              z / (p * p * q * q) * e_p2q * e_p2q;
    }
    const double scale = std::max(1.0, std::fabs(norm_inv_sq));
    if (arg < -concurrence_clamp_tol * scale * scale) throw concurrence_out_of_range{arg};
    const double c = 2.0 * std::sqrt(std::max(arg, 0.0)) / norm_inv_sq;
    return std::min(std::max(c, 0.0), 1.0);
}

/// alpha -> 0 limits of the entangled states.
inline super_state reference_state(const deformation_params& d, super_kind kind, size_t dim = 8) {
    if (dim < 2) throw std::invalid_argument("reference_state requires dim >= 2");
    super_state s;
    s.psi0.c.assign(dim, {0.0, 0.0});
    s.psi1.c.assign(dim, {0.0, 0.0});
    if (kind == super_kind::L) {
        const double n = std::sqrt(1.0 + d.p * d.p);
        s.psi0.c[1] = 1.0 / n;
        s.psi1.c[0] = d.p / n;
    } else {
        const double n = std::sqrt(1.0 + d.q * d.q);
        s.psi0.c[0] = d.q / n;
        s.psi1.c[1] = 1.0 / n;
    }
    s.normalized = true;
    return s;
}

inline double reference_concurrence(const deformation_params& d, super_kind kind) {
    const double b = (kind == super_kind::L) ? d.p : d.q;
    return 2.0 * std::fabs(b) / (1.0 + b * b);
}

/// Coordinate/momentum moments of a normalized super state with the
/// supersymmetric X, P = identity_f (x) ladder combinations; hbar = m =
/// omega = 1 throughout the supersymmetric sector.
inline uncertainty_report super_xp_uncertainty(const deformation_params& d,
                                               const super_state& s) {
    if (!s.normalized || std::fabs(super_norm2(s) - 1.0) > 1e-10) throw not_normalized{};
    const xp_moments_t m0 = xp_moments(d, s.psi0);
    const xp_moments_t m1 = xp_moments(d, s.psi1);
    const double mean_x = m0.mean_x + m1.mean_x;
    const double mean_p = m0.mean_p + m1.mean_p;
    uncertainty_report r;
    r.dx2 = (m0.x_sq + m1.x_sq) - mean_x * mean_x;
    r.dp2 = (m0.p_sq + m1.p_sq) - mean_p * mean_p;
    r.product = std::sqrt(r.dx2 * r.dp2);
    r.source = uncertainty_source::matrix_numeric;
    return r;
}

/// Closed form for the reference states: (1 + (p+q)/(1+p^2))/2 for L and the
/// 1+q^2 denominator for B.
inline uncertainty_report reference_uncertainty(const deformation_params& d, super_kind kind) {
    const double b = (kind == super_kind::L) ? d.p : d.q;
    const double value = 0.5 * (1.0 + (d.p + d.q) / (1.0 + b * b));
    uncertainty_report r;
    r.dx2 = value;
    r.dp2 = value;
    r.product = value;
    r.source = uncertainty_source::closed_form;
    return r;
}

/// Closed form in the separable states: the pure-state bracket after
/// alpha -> alpha/p (up) or, with p and q interchanged, alpha -> alpha/q.
inline uncertainty_report separable_uncertainty(const deformation_params& d,
                                                std::complex<double> alpha, bool up,
                                                double tol = 1e-14) {
    if (up && d.p == 0.0) throw zero_deformation_parameter{};
    if (!up && d.q == 0.0) throw zero_deformation_parameter{};
    const deformation_params base = up ? d : d.swapped();
    const std::complex<double> arg = up ? alpha / d.p : alpha / d.q;
    uncertainty_report r =
        make_uncertainty_report(uncertainty_bracket(base, std::norm(arg), tol),
                                uncertainty_source::closed_form, physical_scales{});
    return r;
}

} // namespace pqosc
