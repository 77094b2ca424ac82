#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pqosc/susy.hpp"

namespace pqosc::verify {

/// Outcome of one named verification suite.  "paper-divergence" marks the
/// dual-path concurrence protocol: the printed closed form disagrees with the
/// Gram-determinant value, which is then designated ground truth; it is a
/// recorded finding, not a failure.
struct suite_result {
    std::string name;
    std::string status = "pass"; // pass | fail | paper-divergence
    double worst_residual = 0.0;
    double tolerance = 0.0;
    std::string detail;

    bool failed() const { return status == "fail"; }
};

inline const std::vector<family_preset>& default_presets() {
    static const std::vector<family_preset> presets = {
        {family_kind::non_symmetric_q, 1.3},
        {family_kind::symmetric_q, 1.2},
        {family_kind::fermionic_q, 1.4},
        {family_kind::fibonacci},
        {family_kind::fibonacci_divisor, 0.0, 2},
        {family_kind::tamm_dankov, 1.1},
    };
    return presets;
}

namespace detail {

inline std::vector<double> fibonacci_table(int n_max) {
    std::vector<double> f(static_cast<size_t>(n_max) + 1);
    f[0] = 0.0;
    if (n_max >= 1) f[1] = 1.0;
    for (int i = 2; i <= n_max; ++i)
        f[static_cast<size_t>(i)] = f[static_cast<size_t>(i - 1)] + f[static_cast<size_t>(i - 2)];
    return f;
}

inline suite_result fibonacci_suite() {
    suite_result r{.name = "fibonacci", .tolerance = 1e-6};
    const auto fib = family_preset{family_kind::fibonacci}.resolve();
    const auto table = fibonacci_table(30);
    for (int n = 0; n <= 30; ++n)
        r.worst_residual =
            std::max(r.worst_residual, std::fabs(pq_number(fib, n) - table[static_cast<size_t>(n)]));
    if (r.worst_residual > r.tolerance) r.status = "fail";
    r.detail = "integer Fibonacci sequence, n <= 30";
    return r;
}

inline suite_result fibonacci_divisor_suite() {
    suite_result r{.name = "fibonacci-divisor", .tolerance = 1e-9};
    const auto table = fibonacci_table(50);
    for (int k = 1; k <= 5; ++k) {
        const auto d = family_preset{family_kind::fibonacci_divisor, 0.0, k}.resolve();
        for (int n = 1; n <= 10; ++n) {
            const double want = table[static_cast<size_t>(n * k)];
            const double got = pq_number(d, n) * table[static_cast<size_t>(k)];
            r.worst_residual =
                std::max(r.worst_residual, std::fabs(got - want) / std::max(1.0, std::fabs(want)));
        }
    }
    if (r.worst_residual > r.tolerance) r.status = "fail";
    r.detail = "[n] F_k = F_{nk} for k <= 5, n <= 10";
    return r;
}

inline suite_result recursion_suite() {
    suite_result r{.name = "recursion", .tolerance = 1e-9};
    std::mt19937 rng(20240811u);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    int tested = 0;
    while (tested < 100) {
        const double p = dist(rng), q = dist(rng);
        if (std::fabs(p - q) <= 1e-6) continue;
        ++tested;
        deformation_params d{p, q};
        for (long long n = 0; n <= 40; ++n) {
            const double direct = pq_number(d, n);
            const double rec = pq_number_recursive(d, n);
            r.worst_residual = std::max(r.worst_residual,
                                        std::fabs(direct - rec) / std::max(1.0, std::fabs(direct)));
        }
    }
    if (r.worst_residual > r.tolerance) r.status = "fail";
    r.detail = "direct vs three-term recursion, 100 random (p,q), n <= 40";
    return r;
}

inline suite_result identities_suite() {
    suite_result r{.name = "identities", .tolerance = 1e-10};
    for (const auto& preset : default_presets()) {
        const auto d = preset.resolve();
        for (long long n = -12; n <= 12; ++n)
            for (long long m = -12; m <= 12; ++m)
                for (const auto& row : identity_suite(d, n, m))
                    if (row.applicable) r.worst_residual = std::max(r.worst_residual, row.normalized());
    }
    if (r.worst_residual > r.tolerance) r.status = "fail";
    r.detail = "algebraic relations on applicable points, all presets, |n|,|m| <= 12";
    return r;
}

inline suite_result exp_relation_suite() {
    suite_result r{.name = "exp-relation", .tolerance = 1e-10};
    for (const auto& preset : default_presets()) {
        const auto d = preset.resolve();
        int eligible = 0;
        for (int i = 0; i < 40; ++i) {
            const double z = -2.0 + 4.0 * i / 39.0;
            try {
                const auto ez = pq_exp_small(d, z);
                if (ez.classification != series_status::converged) continue;
                ++eligible;
                const double res = exp_relation_residual(d, z) / std::max(1.0, std::abs(ez.value));
                r.worst_residual = std::max(r.worst_residual, res);
            } catch (const series_diverged&) {
            }
        }
        if (eligible < 20) {
            r.status = "fail";
            r.detail = "fewer than 20 grid points inside the convergence region for " + preset.label();
            return r;
        }
        for (double z : {-0.8, -0.2, 0.1, 0.4, 0.9}) {
            const double sym = std::abs(f_function(d, d.p, z) - f_function(d, d.q, z));
            const double one = std::abs(f_function(d, 1.0, z) - std::complex<double>{1.0 - z});
            r.worst_residual = std::max({r.worst_residual, sym, one});
        }
    }
    if (r.worst_residual > r.tolerance) r.status = "fail";
    r.detail = "e^{pz} - e^{qz} = (p-q) z e^z on converged grid; f properties";
    return r;
}

inline suite_result algebra_suite() {
    suite_result r{.name = "algebra", .tolerance = 1e-12};
    for (const auto& preset : default_presets()) {
        const auto report = algebra_residuals(preset.resolve(), 16);
        r.worst_residual = std::max(r.worst_residual, report.worst_normalized());
    }
    if (r.worst_residual > r.tolerance) r.status = "fail";
    r.detail = "ladder relations on the interior block, dim 16, all presets";
    return r;
}

inline suite_result coherent_eigen_suite() {
    suite_result r{.name = "coherent-eigen", .tolerance = 1e-8};
    const std::vector<family_preset> families = {
        {family_kind::non_symmetric_q, 1.3},
        {family_kind::symmetric_q, 1.2},
        {family_kind::fibonacci},
    };
    for (const auto& preset : families) {
        const auto d = preset.resolve();
        for (int i = 1; i <= 8; ++i) {
            const double rmod = i / 8.0;
            const std::complex<double> alpha = std::polar(rmod, 0.7 * i);
            r.worst_residual =
                std::max(r.worst_residual, coherent_eigen_residual(d, {.alpha = alpha}));
        }
    }
    if (r.worst_residual > r.tolerance) r.status = "fail";
    r.detail = "||a v - alpha v|| at auto-dim, |alpha| <= 1";
    return r;
}

inline suite_result uncertainty_triple_suite() {
    suite_result r{.name = "uncertainty-triple", .tolerance = 1e-8};
    double vacuum_worst = 0.0;
    for (const auto& preset : default_presets()) {
        const auto d = preset.resolve();
        for (double rmod : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const std::complex<double> alpha{rmod, 0.0};
            const auto closed = uncertainty_closed(d, alpha);
            const auto sym = uncertainty_symmetric_form(d, alpha);
            const auto num = uncertainty_numeric(d, alpha, suggest_dim(d, alpha));
            const double scale = std::max(1.0, std::fabs(closed.product));
            r.worst_residual = std::max({r.worst_residual,
                                         std::fabs(closed.product - sym.product) / scale,
                                         std::fabs(closed.product - num.product) / scale,
                                         std::fabs(sym.product - num.product) / scale});
            if (rmod == 0.0)
                vacuum_worst = std::max({vacuum_worst, std::fabs(closed.product - 0.5),
                                         std::fabs(sym.product - 0.5), std::fabs(num.product - 0.5)});
        }
    }
    if (r.worst_residual > r.tolerance || vacuum_worst > 1e-12) r.status = "fail";
    r.detail = "closed vs symmetric vs matrix-numeric products; exact hbar/2 at alpha 0";
    return r;
}

inline suite_result uncertainty_slope_suite() {
    suite_result r{.name = "uncertainty-slope", .tolerance = 1e-3};
    auto slope = [](const deformation_params& d) {
        const double h = 1e-3;
        return 0.5 * (uncertainty_bracket(d, h) - uncertainty_bracket(d, -h)) / (2.0 * h);
    };
    for (const auto& preset : default_presets()) {
        const auto d = preset.resolve();
        r.worst_residual = std::max(r.worst_residual, std::fabs(slope(d) - 0.5 * (d.p + d.q - 2.0)));
    }
    const double lucas[] = {1.0, 3.0, 4.0, 7.0};
    for (int k = 1; k <= 4; ++k) {
        const auto d = family_preset{family_kind::fibonacci_divisor, 0.0, k}.resolve();
        r.worst_residual =
            std::max(r.worst_residual, std::fabs(slope(d) - 0.5 * (lucas[k - 1] - 2.0)));
    }
    if (r.worst_residual > r.tolerance) r.status = "fail";
    r.detail = "d(product)/d|alpha|^2 at 0 vs (p+q-2)/2 and Lucas numbers";
    return r;
}

inline suite_result concurrence_sin_suite() {
    suite_result r{.name = "concurrence-sin", .tolerance = 1e-12};
    const deformation_params d{1.3, 0.8};
    const double pi = std::acos(-1.0);
    for (int i = 0; i <= 16; ++i) {
        const double theta = pi * i / 16.0;
        for (int j = 0; j < 8; ++j) {
            const auto s = super_number_state(d, 2, theta, 2.0 * pi * j / 8.0, 6);
            r.worst_residual = std::max(r.worst_residual, std::fabs(concurrence(s) - std::sin(theta)));
        }
    }
    if (r.worst_residual > r.tolerance) r.status = "fail";
    r.detail = "C = sin(theta) over the (theta, phi) grid";
    return r;
}

inline suite_result gram_oracle_suite() {
    suite_result r{.name = "gram-oracle", .tolerance = 1e-10};
    std::mt19937 rng(777u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const size_t dim = 16;
    for (int trial = 0; trial < 50; ++trial) {
        super_state s;
        s.psi0.c.assign(dim, {0.0, 0.0});
        s.psi1.c.assign(dim, {0.0, 0.0});
        for (size_t n = 0; n < dim; ++n) {
            s.psi0.c[n] = {gauss(rng), gauss(rng)};
            s.psi1.c[n] = {gauss(rng), gauss(rng)};
        }
        s = normalize_super(s);
        r.worst_residual =
            std::max(r.worst_residual, std::fabs(concurrence(s) - concurrence_linear_entropy(s)));
    }
    if (r.worst_residual > r.tolerance) r.status = "fail";
    r.detail = "Gram determinant vs reduced-density linear entropy, 50 random states";
    return r;
}

inline suite_result entangled_eigen_suite() {
    suite_result r{.name = "entangled-eigen", .tolerance = 1e-8};
    for (const auto& preset : default_presets()) {
        const auto d = preset.resolve();
        for (double rmod : {0.3, 0.7, 1.0}) {
            const std::complex<double> alpha{0.8 * rmod, -0.6 * rmod};
            const auto sL = entangled_super_coherent(d, alpha, super_kind::L);
            const auto sB = entangled_super_coherent(d, alpha, super_kind::B);
            const auto resL = super_sub(apply_super_A(d, sL), super_scale(sL, alpha));
            const auto resB = super_sub(apply_super_AT(d, sB), super_scale(sB, alpha));
            r.worst_residual = std::max({r.worst_residual, std::sqrt(super_norm2(resL)),
                                         std::sqrt(super_norm2(resB))});
        }
    }
    if (r.worst_residual > r.tolerance) r.status = "fail";
    r.detail = "||A s - alpha s|| (L) and ||A^T s - alpha s|| (B) at auto-dim";
    return r;
}

inline suite_result reference_limits_suite() {
    suite_result r{.name = "reference-limits", .tolerance = 1e-6};
    for (const auto& preset : default_presets()) {
        const auto d = preset.resolve();
        for (auto kind : {super_kind::L, super_kind::B}) {
            const double ref = reference_concurrence(d, kind);
            const double near = concurrence(entangled_super_coherent(d, 1e-4, kind));
            r.worst_residual = std::max(r.worst_residual, std::fabs(near - ref));
        }
    }
    const deformation_params unit{1.0, 1.0};
    const double at_unit =
        std::max(std::fabs(concurrence(reference_state(unit, super_kind::L)) - 1.0),
                 std::fabs(concurrence(reference_state(unit, super_kind::B)) - 1.0));
    if (r.worst_residual > r.tolerance || at_unit > 1e-10) r.status = "fail";
    r.detail = "concurrence at |alpha| = 1e-4 vs 2|p|/(1+p^2) and 2|q|/(1+q^2)";
    return r;
}

inline suite_result reference_uncertainty_suite() {
    suite_result r{.name = "reference-uncertainty", .tolerance = 1e-10};
    for (const auto& preset : default_presets()) {
        const auto d = preset.resolve();
        for (auto kind : {super_kind::L, super_kind::B}) {
            const auto closed = reference_uncertainty(d, kind);
            const auto numeric = super_xp_uncertainty(d, reference_state(d, kind, 8));
            r.worst_residual = std::max(r.worst_residual, std::fabs(closed.product - numeric.product));
        }
    }
    if (r.worst_residual > r.tolerance) r.status = "fail";
    r.detail = "closed reference-state forms vs matrix-numeric moments";
    return r;
}

inline suite_result concurrence_closed_suite() {
    suite_result r{.name = "concurrence-closed", .tolerance = 1e-6};
    for (const auto& preset : default_presets()) {
        const auto d = preset.resolve();
        for (double rmod : {0.2, 0.5, 0.8, 1.0}) {
            for (auto kind : {super_kind::L, super_kind::B}) {
                const double gram = concurrence(entangled_super_coherent(d, rmod, kind));
                const double closed = concurrence_closed(d, rmod * rmod, kind);
                r.worst_residual = std::max(r.worst_residual, std::fabs(gram - closed));
            }
        }
    }
    if (r.worst_residual > r.tolerance) {
        // Discrepancy protocol: the Gram-determinant value (backed by the
        // reduced-density oracle) is ground truth; the printed closed form is
        // reported as diverging from it, which is not a build failure.
        r.status = "paper-divergence";
        r.detail = "closed form deviates from the Gram value by up to " +
                   std::to_string(r.worst_residual) + "; Gram value is ground truth";
    } else {
        r.detail = "closed concurrence forms vs Gram-determinant numerics";
    }
    return r;
}

inline suite_result partial_trace_suite() {
    suite_result r{.name = "partial-trace", .tolerance = 1e-13};
    for (const auto& preset : default_presets()) {
        const auto d = preset.resolve();
        const auto ops = build_super_ops(d, 16, 1.0);
        r.worst_residual = std::max(
            r.worst_residual, max_abs(msub(partial_trace_fermion(ops.H_S), hamiltonian(d, 16, 1.0))));
    }
    if (r.worst_residual > r.tolerance) r.status = "fail";
    r.detail = "Tr_f H_S = H as matrices, dim 16";
    return r;
}

} // namespace detail

inline const std::vector<std::pair<std::string, std::function<suite_result()>>>& suite_registry() {
    static const std::vector<std::pair<std::string, std::function<suite_result()>>> suites = {
        {"fibonacci", detail::fibonacci_suite},
        {"fibonacci-divisor", detail::fibonacci_divisor_suite},
        {"recursion", detail::recursion_suite},
        {"identities", detail::identities_suite},
        {"exp-relation", detail::exp_relation_suite},
        {"algebra", detail::algebra_suite},
        {"coherent-eigen", detail::coherent_eigen_suite},
        {"uncertainty-triple", detail::uncertainty_triple_suite},
        {"uncertainty-slope", detail::uncertainty_slope_suite},
        {"concurrence-sin", detail::concurrence_sin_suite},
        {"gram-oracle", detail::gram_oracle_suite},
        {"entangled-eigen", detail::entangled_eigen_suite},
        {"reference-limits", detail::reference_limits_suite},
        {"reference-uncertainty", detail::reference_uncertainty_suite},
        {"concurrence-closed", detail::concurrence_closed_suite},
        {"partial-trace", detail::partial_trace_suite},
    };
    return suites;
}

/// Runs the selected suite ("all" for every one).  Unexpected library errors
/// inside a suite are reported as a failure of that suite, not a crash.
inline std::vector<suite_result> run_suites(const std::string& selector) {
    std::vector<suite_result> out;
    bool matched = false;
    for (const auto& [name, fn] : suite_registry()) {
        if (selector != "all" && selector != name) continue;
        matched = true;
        try {
            out.push_back(fn());
        } catch (const pq_error& e) {
            suite_result r{.name = name, .status = "fail"};
            r.detail = std::string("error: ") + e.what();
            out.push_back(r);
        }
    }
    if (!matched) throw std::invalid_argument("unknown verify suite: " + selector);
    return out;
}

} // namespace pqosc::verify
