// pq-osc: batch front-end for the deformed-oscillator library.  Evaluates
// the exported quantities over parameter/alpha grids and runs the
// verification suites, emitting machine-readable tables (CSV or JSON).
//
// Determinism contract: identical invocations produce byte-identical output.
// Numbers print with 17 significant digits, lowercase scientific 'e', '.'
// decimal separator; no timestamps appear anywhere.

#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pqosc/pqosc.hpp"

namespace {

using namespace pqosc;
using cplx = std::complex<double>;

struct cli_error {
    std::string field;
    std::string message;
};

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct cell {
    std::string text;
    bool quoted = true; // JSON: quoted string vs raw numeric literal

    static cell num(double x) { return {fmt17(x), false}; }
    static cell integer(long long n) { return {std::to_string(n), false}; }
    static cell str(std::string s) { return {std::move(s), true}; }
    static cell empty() { return {"", true}; }

    static cell complex(cplx z) {
        if (z.imag() == 0.0) return num(z.real());
        const std::string s =
            fmt17(z.real()) + (z.imag() < 0.0 ? "-" : "+") + fmt17(std::fabs(z.imag())) + "i";
        return {s, true};
    }
};

using row_t = std::vector<cell>;

struct table {
    std::vector<std::string> columns;
    std::vector<row_t> rows;

    bool has_error_row() const {
        for (const auto& r : rows)
            for (const auto& c : r)
                if (c.text.rfind("error:", 0) == 0) return true;
        return false;
    }
};

std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += ch;
        }
    }
    return out;
}

void emit_csv(std::ostream& os, const table& t) {
    for (size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& r : t.rows) {
        for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i].text;
        os << "\n";
    }
}

void emit_json(std::ostream& os, const table& t, const std::string& config_echo) {
    os << "{\n  \"meta\": {\"tool\": \"pq-osc\", \"version\": \"" << version
       << "\", \"config\": \"" << json_escape(config_echo) << "\"},\n  \"rows\": [\n";
    for (size_t r = 0; r < t.rows.size(); ++r) {
        os << "    {";
        for (size_t i = 0; i < t.rows[r].size(); ++i) {
            const cell& c = t.rows[r][i];
            os << (i ? ", " : "") << "\"" << t.columns[i] << "\": ";
            if (c.text.empty())
                os << "null";
            else if (c.quoted)
                os << "\"" << json_escape(c.text) << "\"";
            else
                os << c.text;
        }
        os << "}" << (r + 1 < t.rows.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
}

// ---------------------------------------------------------------------------
// option handling

struct param_opts {
    double p = 0.0, q = 0.0;
    bool p_set = false, q_set = false;
    std::string family;
    int k = 0;
    bool k_set = false;
};

struct grid_opts {
    std::string alpha;        // complex "re[,im]"
    bool alpha_set = false;
    double alpha_min = 0.0, alpha_max = 0.0;
    bool alpha_max_set = false;
    double phase = 0.0;
    long long steps = 1;
    long long n_max = 10;
    std::string dim = "auto";
    double tol = 1e-14;
    std::string format = "csv";
    std::string out;
};

cplx parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    try {
        if (comma == std::string::npos) return {std::stod(s), 0.0};
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw cli_error{"alpha", "expected complex as re[,im], got '" + s + "'"};
    }
}

std::pair<deformation_params, std::string> resolve_point(const param_opts& po) {
    if (!po.family.empty()) {
        if (po.p_set) throw cli_error{"p", "--p conflicts with --family"};
        family_preset preset;
        if (po.family == "nonsym")
            preset.kind = family_kind::non_symmetric_q;
        else if (po.family == "sym")
            preset.kind = family_kind::symmetric_q;
        else if (po.family == "fermionic")
            preset.kind = family_kind::fermionic_q;
        else if (po.family == "fibonacci")
            preset.kind = family_kind::fibonacci;
        else if (po.family == "fibdiv")
            preset.kind = family_kind::fibonacci_divisor;
        else if (po.family == "tammdankov")
            preset.kind = family_kind::tamm_dankov;
        else
            throw cli_error{"family", "unknown family '" + po.family + "'"};

        const bool needs_q = preset.kind == family_kind::non_symmetric_q ||
                             preset.kind == family_kind::symmetric_q ||
                             preset.kind == family_kind::fermionic_q ||
                             preset.kind == family_kind::tamm_dankov;
        if (needs_q && !po.q_set) throw cli_error{"q", "--q is required for this family"};
        if (!needs_q && po.q_set) throw cli_error{"q", "--q conflicts with this family"};
        if (preset.kind == family_kind::fibonacci_divisor) {
            if (!po.k_set) throw cli_error{"k", "--k is required for fibdiv"};
            preset.k = po.k;
        } else if (po.k_set) {
            throw cli_error{"k", "--k applies to the fibdiv family only"};
        }
        preset.q = po.q;
        return {preset.resolve(), preset.label()};
    }
    if (!po.p_set || !po.q_set) throw cli_error{"p", "either --family or both --p and --q"};
    if (po.k_set) throw cli_error{"k", "--k applies to the fibdiv family only"};
    return {deformation_params{po.p, po.q}, "explicit"};
}

std::vector<cplx> alpha_grid(const grid_opts& g) {
    if (g.alpha_set) {
        if (g.alpha_max_set) throw cli_error{"alpha", "--alpha conflicts with --alpha-max"};
        return {parse_complex(g.alpha)};
    }
    if (!g.alpha_max_set) throw cli_error{"alpha", "need --alpha or --alpha-max"};
    if (g.steps < 1) throw cli_error{"steps", "steps must be >= 1"};
    if (g.alpha_min > g.alpha_max) throw cli_error{"alpha-max", "min exceeds max"};
    std::vector<cplx> out;
    for (long long i = 0; i < g.steps; ++i) {
        const double r = g.steps == 1
                             ? g.alpha_min
                             : g.alpha_min + (g.alpha_max - g.alpha_min) * double(i) / double(g.steps - 1);
        out.push_back(std::polar(r, g.phase));
    }
    return out;
}

// 0 means auto: smallest power-of-two dim with coherent tail <= 1e-14, cap 4096
size_t parse_dim(const std::string& s) {
    if (s == "auto") return 0;
    try {
        const long long v = std::stoll(s);
        if (v < 2 || v > 4096) throw cli_error{"dim", "dim must be in [2, 4096] or 'auto'"};
        return static_cast<size_t>(v);
    } catch (const cli_error&) {
        throw;
    } catch (const std::exception&) {
        throw cli_error{"dim", "dim must be an integer or 'auto'"};
    }
}

unsigned env_threads() {
    const char* env = std::getenv("PQ_OSC_THREADS");
    if (!env) return 1;
    const long v = std::strtol(env, nullptr, 10);
    return v > 1 ? static_cast<unsigned>(v) : 1;
}

// Computes row groups in parallel (pure functions only); emission order is
// the grid order regardless of scheduling.
template <typename Fn>
std::vector<row_t> parallel_rows(size_t count, Fn&& fn) {
    std::vector<std::vector<row_t>> groups(count);
    const unsigned nthreads = std::min<size_t>(env_threads(), count ? count : 1);
    if (nthreads <= 1) {
        for (size_t i = 0; i < count; ++i) groups[i] = fn(i);
    } else {
        std::vector<std::thread> workers;
        for (unsigned t = 0; t < nthreads; ++t) {
            workers.emplace_back([&, t]() {
                for (size_t i = t; i < count; i += nthreads) groups[i] = fn(i);
            });
        }
        for (auto& w : workers) w.join();
    }
    std::vector<row_t> rows;
    for (auto& g : groups)
        for (auto& r : g) rows.push_back(std::move(r));
    return rows;
}

// ---------------------------------------------------------------------------
// row generators

table gen_numbers(const deformation_params& d, const std::string& label, long long n_max) {
    table t;
    t.columns = {"family", "p", "q", "n", "value", "source", "residual", "status"};
    for (long long n = 0; n <= n_max; ++n) {
        row_t row{cell::str(label), cell::num(d.p), cell::num(d.q), cell::integer(n)};
        try {
            const double direct = pq_number(d, n);
            const double rec = pq_number_recursive(d, n);
            const double res = std::fabs(direct - rec) / std::max(1.0, std::fabs(direct));
            row.push_back(cell::num(direct));
            row.push_back(cell::str("closed_form"));
            row.push_back(cell::num(res));
            row.push_back(cell::str("ok"));
        } catch (const pq_error& e) {
            row.insert(row.end(), {cell::empty(), cell::str("closed_form"), cell::empty(),
                                   cell::str(std::string("error:") + e.what())});
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

table gen_exp(const deformation_params& d, const std::string& label, const std::vector<cplx>& zs,
              double tol) {
    table t;
    t.columns = {"family", "p", "q", "z_re", "z_im", "kind", "value", "source", "residual", "status"};
    t.rows = parallel_rows(zs.size(), [&](size_t i) {
        const cplx z = zs[i];
        std::vector<row_t> rows;
        for (const bool big : {false, true}) {
            row_t row{cell::str(label), cell::num(d.p), cell::num(d.q), cell::num(z.real()),
                      cell::num(z.imag()), cell::str(big ? "big" : "small")};
            try {
                const auto sv = big ? pq_exp_big(d, z, tol) : pq_exp_small(d, z, tol);
                row.push_back(cell::complex(sv.value));
                row.push_back(cell::str("series"));
                if (!big) {
                    const double res =
                        exp_relation_residual(d, z, tol) / std::max(1.0, std::abs(sv.value));
                    row.push_back(cell::num(res));
                } else if (d.pq() != 0.0) {
                    // base-inversion cross-check E^z_{p,q} = e^z_{1/p,1/q}
                    const auto inv = pq_exp_small({1.0 / d.p, 1.0 / d.q}, z, tol);
                    row.push_back(cell::num(std::abs(sv.value - inv.value) /
                                            std::max(1.0, std::abs(sv.value))));
                } else {
                    row.push_back(cell::empty());
                }
                row.push_back(cell::str(to_string(sv.classification)));
            } catch (const pq_error& e) {
                row.insert(row.end(), {cell::empty(), cell::str("series"), cell::empty(),
                                       cell::str(std::string("error:") + e.what())});
            }
            rows.push_back(std::move(row));
        }
        return rows;
    });
    return t;
}

table gen_spectrum(const deformation_params& d, const std::string& label, long long n_max) {
    table t;
    t.columns = {"family", "p", "q", "n", "value", "source", "residual", "status"};
    const size_t dim = static_cast<size_t>(n_max) + 2;
    std::optional<cmatrix> ladder;
    try {
        ladder = hamiltonian_from_ladder(d, dim, 1.0);
    } catch (const pq_error&) {
        ladder.reset(); // positivity gate failed; rows carry the error below
    }
    for (long long n = 0; n <= n_max; ++n) {
        row_t row{cell::str(label), cell::num(d.p), cell::num(d.q), cell::integer(n)};
        try {
            if (!ladder) ensure_positive_levels(d, dim); // rethrow the gate error
            const double direct = energy_level(d, n, 1.0);
            const double assembled = ladder->at(static_cast<size_t>(n), static_cast<size_t>(n)).real();
            row.push_back(cell::num(direct));
            row.push_back(cell::str("closed_form"));
            row.push_back(cell::num(std::fabs(direct - assembled) / std::max(1.0, std::fabs(direct))));
            row.push_back(cell::str("ok"));
        } catch (const pq_error& e) {
            row.insert(row.end(), {cell::empty(), cell::str("closed_form"), cell::empty(),
                                   cell::str(std::string("error:") + e.what())});
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

table gen_uncertainty(const deformation_params& d, const std::string& label,
                      const std::vector<cplx>& alphas, size_t dim_opt, double tol) {
    table t;
    t.columns = {"family", "p",   "q",      "alpha_re", "alpha_im",
                 "dim",    "value", "source", "residual", "status"};
    t.rows = parallel_rows(alphas.size(), [&](size_t i) {
        const cplx alpha = alphas[i];
        std::vector<row_t> rows;
        auto push = [&](size_t dim, uncertainty_source src, double value, double residual,
                        const std::string& status) {
            rows.push_back({cell::str(label), cell::num(d.p), cell::num(d.q),
                            cell::num(alpha.real()), cell::num(alpha.imag()),
                            cell::integer(static_cast<long long>(dim)),
                            status.rfind("error", 0) == 0 ? cell::empty() : cell::num(value),
                            cell::str(to_string(src)),
                            status.rfind("error", 0) == 0 ? cell::empty() : cell::num(residual),
                            cell::str(status)});
        };
        try {
            const size_t dim = dim_opt ? dim_opt : suggest_dim(d, alpha, 1e-14);
            const auto closed = uncertainty_closed(d, alpha, {}, tol);
            const auto sym = uncertainty_symmetric_form(d, alpha, {}, tol);
            const auto num = uncertainty_numeric(d, alpha, dim);
            const double scale = std::max(1.0, std::fabs(closed.product));
            push(dim, uncertainty_source::closed_form, closed.product, 0.0, "ok");
            push(dim, uncertainty_source::symmetric_form, sym.product,
                 std::fabs(sym.product - closed.product) / scale, "ok");
            push(dim, uncertainty_source::matrix_numeric, num.product,
                 std::fabs(num.product - closed.product) / scale, "ok");
        } catch (const pq_error& e) {
            push(dim_opt, uncertainty_source::closed_form, 0.0, 0.0,
                 std::string("error:") + e.what());
        }
        return rows;
    });
    return t;
}

table gen_concurrence(const deformation_params& d, const std::string& label, super_kind kind,
                      const std::vector<cplx>& alphas, size_t dim_opt, double tol) {
    table t;
    t.columns = {"family", "p",   "q",      "kind",   "alpha_re", "alpha_im",
                 "dim",    "value", "source", "residual", "status"};
    t.rows = parallel_rows(alphas.size(), [&](size_t i) {
        const cplx alpha = alphas[i];
        std::vector<row_t> rows;
        auto push = [&](size_t dim, const std::string& src, double value, std::optional<double> res,
                        const std::string& status) {
            rows.push_back({cell::str(label), cell::num(d.p), cell::num(d.q),
                            cell::str(to_string(kind)), cell::num(alpha.real()),
                            cell::num(alpha.imag()), cell::integer(static_cast<long long>(dim)),
                            status.rfind("error", 0) == 0 ? cell::empty() : cell::num(value),
                            cell::str(src), res ? cell::num(*res) : cell::empty(),
                            cell::str(status)});
        };
        try {
            const size_t dim = dim_opt ? dim_opt : super_suggest_dim(d, alpha);
            const double closed = concurrence_closed(d, std::norm(alpha), kind, tol);
            const double gram = concurrence(entangled_super_coherent(d, alpha, kind, dim));
            push(dim, "closed_form", closed, std::nullopt, "ok");
            push(dim, "matrix_numeric", gram, std::fabs(gram - closed), "ok");
        } catch (const pq_error& e) {
            push(dim_opt, "closed_form", 0.0, std::nullopt, std::string("error:") + e.what());
        }
        return rows;
    });
    return t;
}

table gen_reference_values(const deformation_params& d, const std::string& label) {
    table t;
    t.columns = {"family", "p", "q", "kind", "quantity", "value", "source", "residual", "status"};
    for (auto kind : {super_kind::L, super_kind::B}) {
        row_t conc{cell::str(label), cell::num(d.p), cell::num(d.q), cell::str(to_string(kind)),
                   cell::str("concurrence")};
        row_t unc{cell::str(label), cell::num(d.p), cell::num(d.q), cell::str(to_string(kind)),
                  cell::str("uncertainty")};
        try {
            const double c_closed = reference_concurrence(d, kind);
            const double c_gram = concurrence(reference_state(d, kind, 8));
            conc.insert(conc.end(), {cell::num(c_closed), cell::str("closed_form"),
                                     cell::num(std::fabs(c_closed - c_gram)), cell::str("ok")});
            const auto u_closed = reference_uncertainty(d, kind);
            const auto u_num = super_xp_uncertainty(d, reference_state(d, kind, 8));
            unc.insert(unc.end(),
                       {cell::num(u_closed.product), cell::str("closed_form"),
                        cell::num(std::fabs(u_closed.product - u_num.product)), cell::str("ok")});
        } catch (const pq_error& e) {
            const auto err = cell::str(std::string("error:") + e.what());
            conc.insert(conc.end(), {cell::empty(), cell::str("closed_form"), cell::empty(), err});
            unc.insert(unc.end(), {cell::empty(), cell::str("closed_form"), cell::empty(), err});
        }
        t.rows.push_back(std::move(conc));
        t.rows.push_back(std::move(unc));
    }
    return t;
}

table gen_identity_suite(const deformation_params& d, const std::string& label, long long n_max) {
    table t;
    t.columns = {"family", "p", "q", "n", "m", "identity", "value", "source", "residual", "status"};
    for (long long n = -n_max; n <= n_max; ++n) {
        for (long long m = -n_max; m <= n_max; ++m) {
            for (const auto& row : identity_suite(d, n, m, std::max<long long>(n_max, 64))) {
                row_t cells{cell::str(label), cell::num(d.p), cell::num(d.q), cell::integer(n),
                            cell::integer(m), cell::str(row.name)};
                if (row.applicable) {
                    cells.insert(cells.end(), {cell::num(row.normalized()), cell::str("dual_path"),
                                               cell::num(row.residual), cell::str("ok")});
                } else {
                    cells.insert(cells.end(), {cell::empty(), cell::str("dual_path"), cell::empty(),
                                               cell::str("inapplicable")});
                }
                t.rows.push_back(std::move(cells));
            }
        }
    }
    return t;
}

table gen_algebra(const deformation_params& d, const std::string& label, size_t dim) {
    table t;
    t.columns = {"family", "p", "q", "dim", "relation", "value", "source", "residual", "status"};
    auto push = [&](const std::string& rel, double raw, double scale, const std::string& status) {
        t.rows.push_back({cell::str(label), cell::num(d.p), cell::num(d.q),
                          cell::integer(static_cast<long long>(dim)), cell::str(rel),
                          status == "ok" ? cell::num(raw / std::max(1.0, scale)) : cell::empty(),
                          cell::str("matrix_numeric"),
                          status == "ok" ? cell::num(raw) : cell::empty(), cell::str(status)});
    };
    try {
        const auto rep = algebra_residuals(d, dim);
        push("relation_q", rep.relation_q, rep.scale, "ok");
        push("relation_p", rep.relation_p, rep.scale, "ok");
        push("commutator", rep.commutator, rep.scale, "ok");
        push("intertwine_id", rep.intertwine_id, rep.scale, "ok");
        push("intertwine_sq", rep.intertwine_sq, rep.scale, "ok");
    } catch (const pq_error& e) {
        push("relation_q", 0.0, 1.0, std::string("error:") + e.what());
    }
    return t;
}

// ---------------------------------------------------------------------------

int run_verify(const std::string& selector, std::ostream& os) {
    const auto results = pqosc::verify::run_suites(selector);
    bool any_fail = false;
    for (const auto& r : results) {
        os << r.name << ": " << r.status << " worst_residual=" << fmt17(r.worst_residual)
           << " tolerance=" << fmt17(r.tolerance) << " -- " << r.detail << "\n";
        any_fail = any_fail || r.failed();
    }
    size_t passed = 0, diverged = 0;
    for (const auto& r : results) {
        if (r.status == "pass") ++passed;
        if (r.status == "paper-divergence") ++diverged;
    }
    os << "summary: " << passed << "/" << results.size() << " suites passed";
    if (diverged) os << ", " << diverged << " paper-divergence";
    os << "\n";
    return any_fail ? 1 : 0;
}

struct sub_config {
    param_opts params;
    grid_opts grid;
    std::string kind = "L";
    std::string quantity;
    std::string verify_selector = "all";
};

void add_common(CLI::App* sub, sub_config& cfg) {
    sub->add_option("--p", cfg.params.p)->each([&](const std::string&) { cfg.params.p_set = true; });
    sub->add_option("--q", cfg.params.q)->each([&](const std::string&) { cfg.params.q_set = true; });
    sub->add_option("--family", cfg.params.family);
    sub->add_option("--k", cfg.params.k)->each([&](const std::string&) { cfg.params.k_set = true; });
    sub->add_option("--alpha", cfg.grid.alpha)
        ->each([&](const std::string&) { cfg.grid.alpha_set = true; });
    sub->add_option("--alpha-min", cfg.grid.alpha_min);
    sub->add_option("--alpha-max", cfg.grid.alpha_max)
        ->each([&](const std::string&) { cfg.grid.alpha_max_set = true; });
    sub->add_option("--phase", cfg.grid.phase);
    sub->add_option("--steps", cfg.grid.steps);
    sub->add_option("--n-max", cfg.grid.n_max);
    sub->add_option("--dim", cfg.grid.dim);
    sub->add_option("--tol", cfg.grid.tol);
    sub->add_option("--format", cfg.grid.format);
    sub->add_option("--out", cfg.grid.out);
}

table dispatch_quantity(const std::string& quantity, const sub_config& cfg) {
    const auto [d, label] = resolve_point(cfg.params);
    const size_t dim_opt = parse_dim(cfg.grid.dim);
    if (quantity == "pq_number") return gen_numbers(d, label, cfg.grid.n_max);
    if (quantity == "exp") return gen_exp(d, label, alpha_grid(cfg.grid), cfg.grid.tol);
    if (quantity == "spectrum") return gen_spectrum(d, label, cfg.grid.n_max);
    if (quantity == "uncertainty")
        return gen_uncertainty(d, label, alpha_grid(cfg.grid), dim_opt, cfg.grid.tol);
    if (quantity == "concurrence_L")
        return gen_concurrence(d, label, super_kind::L, alpha_grid(cfg.grid), dim_opt, cfg.grid.tol);
    if (quantity == "concurrence_B")
        return gen_concurrence(d, label, super_kind::B, alpha_grid(cfg.grid), dim_opt, cfg.grid.tol);
    if (quantity == "reference_values") return gen_reference_values(d, label);
    if (quantity == "identity_suite")
        return gen_identity_suite(d, label, std::min<long long>(cfg.grid.n_max, 12));
    if (quantity == "algebra_residuals")
        return gen_algebra(d, label, dim_opt ? dim_opt : 16);
    throw cli_error{"quantity", "unknown quantity '" + quantity + "'"};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-parameter deformed oscillator toolkit"};
    app.require_subcommand(1);

    sub_config cfg;
    auto* numbers = app.add_subcommand("numbers", "deformed integers [n]");
    auto* exp_cmd = app.add_subcommand("exp", "deformed exponentials over a real grid");
    auto* spectrum = app.add_subcommand("spectrum", "oscillator energy levels");
    auto* uncertainty = app.add_subcommand("uncertainty", "coordinate-momentum product");
    auto* concurrence_cmd = app.add_subcommand("concurrence", "entangled-state concurrence");
    auto* sweep = app.add_subcommand("sweep", "generic quantity over a grid");
    auto* verify_cmd = app.add_subcommand("verify", "run the verification suites");

    for (auto* sub : {numbers, exp_cmd, spectrum, uncertainty, concurrence_cmd, sweep})
        add_common(sub, cfg);
    concurrence_cmd->add_option("--kind", cfg.kind);
    sweep->add_option("--quantity", cfg.quantity)->required();
    verify_cmd->add_option("selector", cfg.verify_selector);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << "error=config field=cli message=\"" << e.what() << "\"\n";
        return 2;
    }

    std::string config_echo;
    for (int i = 0; i < argc; ++i) config_echo += (i ? " " : "") + std::string(argv[i]);

    try {
        if (verify_cmd->parsed()) {
            std::ofstream file;
            if (!cfg.grid.out.empty()) file.open(cfg.grid.out);
            return run_verify(cfg.verify_selector, cfg.grid.out.empty() ? std::cout : file);
        }

        std::string quantity;
        if (numbers->parsed()) quantity = "pq_number";
        if (exp_cmd->parsed()) quantity = "exp";
        if (spectrum->parsed()) quantity = "spectrum";
        if (uncertainty->parsed()) quantity = "uncertainty";
        if (concurrence_cmd->parsed()) {
            if (cfg.kind != "L" && cfg.kind != "B")
                throw cli_error{"kind", "kind must be L or B"};
            quantity = cfg.kind == "L" ? "concurrence_L" : "concurrence_B";
        }
        if (sweep->parsed()) quantity = cfg.quantity;

        if (cfg.grid.format != "csv" && cfg.grid.format != "json")
            throw cli_error{"format", "format must be csv or json"};
        if (!(cfg.grid.tol > 0.0)) throw cli_error{"tol", "tol must be > 0"};

        const table t = dispatch_quantity(quantity, cfg);

        std::ofstream file;
        if (!cfg.grid.out.empty()) {
            file.open(cfg.grid.out);
            if (!file) throw cli_error{"out", "cannot open '" + cfg.grid.out + "'"};
        }
        std::ostream& os = cfg.grid.out.empty() ? std::cout : file;
        if (cfg.grid.format == "csv")
            emit_csv(os, t);
        else
            emit_json(os, t, config_echo);
        return t.has_error_row() ? 1 : 0;
    } catch (const cli_error& e) {
        std::cerr << "error=config field=" << e.field << " message=\"" << e.message << "\"\n";
        return 2;
    } catch (const pq_error& e) {
        std::cerr << "error=compute message=\"" << e.what() << "\"\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error=internal message=\"" << e.what() << "\"\n";
        return 1;
    }
}
