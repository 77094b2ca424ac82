#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace pqosc {

/// Dense square complex matrix on the truncated Fock space.  Dimensions in
/// this library stay small (tests run at dim <= 64), so no structure is
/// exploited beyond what the builders fill in.
struct cmatrix {
    size_t dim = 0;
    std::vector<std::complex<double>> a;
    std::string label;

    cmatrix() = default;
    explicit cmatrix(size_t n, std::string lbl = "")
        : dim(n), a(n * n, std::complex<double>{0.0, 0.0}), label(std::move(lbl)) {
        if (n < 2) throw std::invalid_argument("cmatrix dimension must be >= 2");
    }

    std::complex<double>& at(size_t i, size_t j) { return a[i * dim + j]; }
    const std::complex<double>& at(size_t i, size_t j) const { return a[i * dim + j]; }

    static cmatrix identity(size_t n, std::string lbl = "I") {
        cmatrix m(n, std::move(lbl));
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

inline cmatrix matmul(const cmatrix& x, const cmatrix& y) {
    if (x.dim != y.dim) throw std::invalid_argument("matmul: dimension mismatch");
    cmatrix out(x.dim);
    for (size_t i = 0; i < x.dim; ++i) {
        for (size_t k = 0; k < x.dim; ++k) {
            const std::complex<double> v = x.at(i, k);
            if (v == std::complex<double>{0.0, 0.0}) continue;
            for (size_t j = 0; j < x.dim; ++j) out.at(i, j) += v * y.at(k, j);
        }
    }
    return out;
}

inline cmatrix adjoint(const cmatrix& x) {
    cmatrix out(x.dim, x.label + "^dagger");
    for (size_t i = 0; i < x.dim; ++i)
        for (size_t j = 0; j < x.dim; ++j) out.at(i, j) = std::conj(x.at(j, i));
    return out;
}

inline cmatrix msub(const cmatrix& x, const cmatrix& y) {
    if (x.dim != y.dim) throw std::invalid_argument("msub: dimension mismatch");
    cmatrix out(x.dim);
    for (size_t i = 0; i < x.a.size(); ++i) out.a[i] = x.a[i] - y.a[i];
    return out;
}

inline cmatrix madd(const cmatrix& x, const cmatrix& y) {
    if (x.dim != y.dim) throw std::invalid_argument("madd: dimension mismatch");
    cmatrix out(x.dim);
    for (size_t i = 0; i < x.a.size(); ++i) out.a[i] = x.a[i] + y.a[i];
    return out;
}

inline cmatrix mscale(const cmatrix& x, std::complex<double> s) {
    cmatrix out = x;
    for (auto& v : out.a) v *= s;
    return out;
}

/// Max |entry| over the top-left rows x cols block.
inline double max_abs_block(const cmatrix& x, size_t rows, size_t cols) {
    double m = 0.0;
    for (size_t i = 0; i < rows && i < x.dim; ++i)
        for (size_t j = 0; j < cols && j < x.dim; ++j) m = std::max(m, std::abs(x.at(i, j)));
    return m;
}

inline double max_abs(const cmatrix& x) { return max_abs_block(x, x.dim, x.dim); }

inline std::vector<std::complex<double>> matvec(const cmatrix& x,
                                                const std::vector<std::complex<double>>& v) {
    if (v.size() != x.dim) throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<std::complex<double>> out(x.dim, {0.0, 0.0});
    for (size_t i = 0; i < x.dim; ++i)
        for (size_t j = 0; j < x.dim; ++j) out[i] += x.at(i, j) * v[j];
    return out;
}

} // namespace pqosc
