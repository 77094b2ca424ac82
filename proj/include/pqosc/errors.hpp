#pragma once

#include <stdexcept>
#include <string>

namespace pqosc {

struct pq_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Overflow / invalid-value conditions
struct non_finite_result : pq_error {
    long long index;
    explicit non_finite_result(long long n)
        : pq_error("non-finite result at n=" + std::to_string(n)), index(n) {}
};

struct zero_base_negative_power : pq_error {
    zero_base_negative_power() : pq_error("negative power of zero base") {}
};

struct division_by_zero_pq_number : pq_error {
    long long index;
    explicit division_by_zero_pq_number(long long m)
        : pq_error("pq-number [" + std::to_string(m) + "] vanishes"), index(m) {}
};

// Series conditions
struct series_diverged : pq_error {
    series_diverged() : pq_error("series terms grow monotonically; outside convergence region") {}
};

struct denominator_underflow : pq_error {
    denominator_underflow() : pq_error("deformed exponential denominator below floor") {}
};

// Fock-space conditions
struct negative_pq_number : pq_error {
    long long index;
    explicit negative_pq_number(long long n)
        : pq_error("pq-number [" + std::to_string(n) + "] < 0; Fock construction invalid"), index(n) {}
};

struct tail_too_large : pq_error {
    double tail;
    explicit tail_too_large(double t)
        : pq_error("truncation tail mass " + std::to_string(t) + " exceeds tolerance; increase dim"),
          tail(t) {}
};

struct index_out_of_range : pq_error {
    index_out_of_range() : pq_error("index out of range") {}
};

// State conditions
struct not_normalized : pq_error {
    not_normalized() : pq_error("state is not normalized") {}
};

struct zero_deformation_parameter : pq_error {
    zero_deformation_parameter() : pq_error("deformation parameter is zero") {}
};

struct self_check_failed : pq_error {
    double gap;
    explicit self_check_failed(double g)
        : pq_error("p<->q swapped forms disagree by " + std::to_string(g)), gap(g) {}
};

struct concurrence_out_of_range : pq_error {
    double value;
    explicit concurrence_out_of_range(double v)
        : pq_error("concurrence " + std::to_string(v) + " outside [0,1] beyond tolerance"), value(v) {}
};

} // namespace pqosc
