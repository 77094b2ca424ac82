#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "pqosc/errors.hpp"
#include "pqosc/matrix.hpp"
#include "pqosc/pq_numbers.hpp"

namespace pqosc {

/// The Fock construction needs [n] >= 0 on every truncated level; certain
/// fermionic-q values violate this and must be rejected rather than silently
/// producing complex matrix entries.
inline void ensure_positive_levels(const deformation_params& d, size_t dim) {
    for (size_t n = 1; n < dim; ++n)
        if (pq_number(d, static_cast<long long>(n)) < 0.0)
            throw negative_pq_number{static_cast<long long>(n)};
}

/// sqrt([n]) for n = 0..dim-1, the ladder matrix elements.
inline std::vector<double> ladder_weights(const deformation_params& d, size_t dim) {
    ensure_positive_levels(d, dim);
    std::vector<double> w(dim, 0.0);
    for (size_t n = 1; n < dim; ++n) w[n] = std::sqrt(pq_number(d, static_cast<long long>(n)));
    return w;
}

/// a|n> = sqrt([n]) |n-1>: entries <n-1|a|n> = sqrt([n]).
inline cmatrix build_annihilation(const deformation_params& d, size_t dim) {
    const auto w = ladder_weights(d, dim);
    cmatrix m(dim, "a");
    for (size_t n = 1; n < dim; ++n) m.at(n - 1, n) = w[n];
    return m;
}

/// a^dagger|n> = sqrt([n+1]) |n+1>; conjugate transpose of build_annihilation.
inline cmatrix build_creation(const deformation_params& d, size_t dim) {
    cmatrix m = adjoint(build_annihilation(d, dim));
    m.label = "a_dagger";
    return m;
}

/// [N] = diag([0], [1], ..., [dim-1]); no positivity needed on the diagonal.
inline cmatrix build_pq_number_op(const deformation_params& d, size_t dim, long long shift = 0) {
    cmatrix m(dim, shift == 0 ? "[N]" : "[N+" + std::to_string(shift) + "]");
    for (size_t n = 0; n < dim; ++n) m.at(n, n) = pq_number(d, static_cast<long long>(n) + shift);
    return m;
}

/// diag(base^0, base^1, ..., base^{dim-1}).
inline cmatrix power_diagonal(double base, size_t dim, std::string lbl = "") {
    cmatrix m(dim, std::move(lbl));
    for (size_t n = 0; n < dim; ++n) m.at(n, n) = int_pow(base, static_cast<long long>(n));
    return m;
}

/// Residuals of the ladder algebra on the truncated space, max-entry over the
/// top-left (dim-1) block only — the corner row/column violates the algebra
/// by construction.  `scale` is the largest entry magnitude among the
/// operator products involved; callers normalize by max(1, scale).
struct algebra_report {
    double relation_q = 0.0;     // a a† - p a† a = q^N
    double relation_p = 0.0;     // a a† - q a† a = p^N
    double commutator = 0.0;     // [a, a†] = [N+1] - [N]
    double intertwine_id = 0.0;  // a† [N+1] = [N] a†  and  a [N] = [N+1] a
    double intertwine_sq = 0.0;  // same with f(x) = x^2
    double scale = 1.0;

    double worst_normalized() const {
        const double s = std::max(1.0, scale);
        return std::max({relation_q, relation_p, commutator, intertwine_id, intertwine_sq}) / s;
    }
};

inline algebra_report algebra_residuals(const deformation_params& d, size_t dim) {
    const cmatrix a = build_annihilation(d, dim);
    const cmatrix ad = build_creation(d, dim);
    const cmatrix aad = matmul(a, ad);
    const cmatrix ada = matmul(ad, a);
    const cmatrix num0 = build_pq_number_op(d, dim, 0);
    const cmatrix num1 = build_pq_number_op(d, dim, 1);
    const size_t interior = dim - 1;

    algebra_report r;
    r.relation_q =
        max_abs_block(msub(msub(aad, mscale(ada, d.p)), power_diagonal(d.q, dim)), interior, interior);
    r.relation_p =
        max_abs_block(msub(msub(aad, mscale(ada, d.q)), power_diagonal(d.p, dim)), interior, interior);
    r.commutator = max_abs_block(msub(msub(aad, ada), msub(num1, num0)), interior, interior);

    auto intertwine = [&](auto f) {
        cmatrix f0(dim), f1(dim);
        for (size_t n = 0; n < dim; ++n) {
            f0.at(n, n) = f(num0.at(n, n).real());
            f1.at(n, n) = f(num1.at(n, n).real());
        }
        const double up = max_abs_block(msub(matmul(ad, f1), matmul(f0, ad)), interior, interior);
        const double down = max_abs_block(msub(matmul(a, f0), matmul(f1, a)), interior, interior);
        return std::max(up, down);
    };
    r.intertwine_id = intertwine([](double x) { return x; });
    r.intertwine_sq = intertwine([](double x) { return x * x; });

    r.scale = std::max({max_abs_block(aad, interior, interior),
                        max_abs_block(ada, interior, interior), max_abs(num1)});
    return r;
}

/// Energy of level n in units where the prefactor is hbar*omega/2.
/// Written as a sum of the two half-terms so the supersymmetric partial
/// trace reproduces it bit-for-bit.
inline double energy_level(const deformation_params& d, long long n, double hbar_omega) {
    return 0.5 * hbar_omega * pq_number(d, n) + 0.5 * hbar_omega * pq_number(d, n + 1);
}

/// H = (hbar omega / 2)(a a† + a† a): diagonal with entries ([n] + [n+1])/2,
/// a non-equidistant spectrum.
inline cmatrix hamiltonian(const deformation_params& d, size_t dim, double hbar_omega = 1.0) {
    ensure_positive_levels(d, dim);
    cmatrix m(dim, "H");
    for (size_t n = 0; n < dim; ++n)
        m.at(n, n) = energy_level(d, static_cast<long long>(n), hbar_omega);
    return m;
}

/// Same operator assembled from the ladder matrices; equals hamiltonian() on
/// the interior block (the corner picks up the truncation artifact).
inline cmatrix hamiltonian_from_ladder(const deformation_params& d, size_t dim,
                                       double hbar_omega = 1.0) {
    const cmatrix a = build_annihilation(d, dim);
    const cmatrix ad = build_creation(d, dim);
    return mscale(madd(matmul(a, ad), matmul(ad, a)), 0.5 * hbar_omega);
}

/// Residual of the nonlinear map a_{p,q} = a sqrt([N]/N) linking the deformed
/// and undeformed ladders; the 0/0 diagonal entry at n = 0 takes its limit
/// value 1.  Interior block, normalized to entry scale.
inline double nonlinear_map_check(const deformation_params& d, size_t dim) {
    const cmatrix deformed = build_annihilation(d, dim);
    cmatrix undeformed(dim, "a0");
    for (size_t n = 1; n < dim; ++n) undeformed.at(n - 1, n) = std::sqrt(static_cast<double>(n));
    cmatrix g(dim);
    g.at(0, 0) = 1.0;
    for (size_t n = 1; n < dim; ++n) {
        const double ratio = pq_number(d, static_cast<long long>(n)) / static_cast<double>(n);
        if (ratio < 0.0) throw negative_pq_number{static_cast<long long>(n)};
        g.at(n, n) = std::sqrt(ratio);
    }
    const cmatrix mapped = matmul(undeformed, g);
    const size_t interior = dim - 1;
    const double res = max_abs_block(msub(deformed, mapped), interior, interior);
    return res / std::max(1.0, max_abs_block(deformed, interior, interior));
}

/// Finite coefficient sequence over the truncated deformed Fock basis.
struct fock_vector {
    std::vector<std::complex<double>> c;
    double tail_mass = 0.0;
    bool normalized = false;

    size_t dim() const { return c.size(); }
};

/// <u|v> with antilinearity in the first slot.
inline std::complex<double> vdot(const fock_vector& u, const fock_vector& v) {
    if (u.dim() != v.dim()) throw std::invalid_argument("vdot: dimension mismatch");
    std::complex<double> acc = 0.0;
    for (size_t i = 0; i < u.c.size(); ++i) acc += std::conj(u.c[i]) * v.c[i];
    return acc;
}

inline double vnorm2(const fock_vector& v) { return vdot(v, v).real(); }
inline double vnorm(const fock_vector& v) { return std::sqrt(vnorm2(v)); }

inline fock_vector vsub(const fock_vector& u, const fock_vector& v) {
    if (u.dim() != v.dim()) throw std::invalid_argument("vsub: dimension mismatch");
    fock_vector out = u;
    for (size_t i = 0; i < out.c.size(); ++i) out.c[i] -= v.c[i];
    return out;
}

inline fock_vector vadd(const fock_vector& u, const fock_vector& v) {
    if (u.dim() != v.dim()) throw std::invalid_argument("vadd: dimension mismatch");
    fock_vector out = u;
    for (size_t i = 0; i < out.c.size(); ++i) out.c[i] += v.c[i];
    return out;
}

inline fock_vector vscale(const fock_vector& v, std::complex<double> s) {
    fock_vector out = v;
    for (auto& x : out.c) x *= s;
    return out;
}

/// O(dim) application of the annihilation operator: (a v)_n = sqrt([n+1]) v_{n+1}.
inline fock_vector apply_annihilation(const deformation_params& d, const fock_vector& v) {
    const auto w = ladder_weights(d, v.dim());
    fock_vector out;
    out.c.assign(v.dim(), {0.0, 0.0});
    for (size_t n = 0; n + 1 < v.dim(); ++n) out.c[n] = w[n + 1] * v.c[n + 1];
    return out;
}

/// (a† v)_n = sqrt([n]) v_{n-1}; the component raised past the truncation is
/// dropped, which is the usual boundary artifact.
inline fock_vector apply_creation(const deformation_params& d, const fock_vector& v) {
    const auto w = ladder_weights(d, v.dim());
    fock_vector out;
    out.c.assign(v.dim(), {0.0, 0.0});
    for (size_t n = 1; n < v.dim(); ++n) out.c[n] = w[n] * v.c[n - 1];
    return out;
}

template <typename Fn>
inline fock_vector apply_diag(const fock_vector& v, Fn&& fn) {
    fock_vector out = v;
    for (size_t n = 0; n < out.c.size(); ++n) out.c[n] *= fn(n);
    return out;
}

} // namespace pqosc
