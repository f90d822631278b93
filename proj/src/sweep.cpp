#include "qbounds/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include <omp.h>

namespace qbounds {

namespace {

struct GridPoint {
    double t;
    double alpha;
};

std::vector<GridPoint> grid_of(const SweepConfig &cfg) {
    cfg.validate();
    const auto ts = cfg.times();
    std::vector<GridPoint> grid;
    grid.reserve(cfg.alpha_list.size() * ts.size());
    for (double alpha : cfg.alpha_list)
        for (double t : ts)
            grid.push_back({t, alpha});
    return grid;
}

AuditRow audit_point(const GridPoint &g, const SweepConfig &cfg, const NonlocalOperators &ops,
                     const NonlocalOperators &ops_double) {
    AuditRow row;
    row.t = g.t;
    row.alpha = g.alpha;
    try {
        row.audit = oracle_energy_audit(g.t, g.alpha, cfg.eta, cfg.a2, ops, ops_double, cfg.tail_tol);
    } catch (const Error &e) {
        row.flagged = true;
        row.flag = std::string(to_string(e.code())) + ": " + e.what();
    }
    return row;
}

std::string csv_quote(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

void write_header(std::ostream &out, const std::vector<std::string> &cols) {
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << cols[i];
    out << '\n';
}

void write_values(std::ostream &out, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        out << (first ? "" : ",") << format_double(v);
        first = false;
    }
}

void write_fit(std::ostream &out, const char *name, const A2Fit &fit) {
    out << "# a2_fit " << name << ": best_a2 = " << format_double(fit.best_a2)
        << ", rms_residual = " << format_double(fit.rms_residual)
        << ", least_squares_a2 = " << format_double(fit.least_squares_a2) << '\n';
    for (const auto &[a2, rms] : fit.scan)
        out << "# a2_scan " << name << ": a2 = " << format_double(a2) << ", rms_residual = " << format_double(rms)
            << '\n';
}

} // namespace

const std::vector<std::string> &fig1_columns() {
    static const std::vector<std::string> cols{"t",   "alpha",         "eta",           "E0", "E1",
                                               "E2",  "n_t",           "B_t",           "Bt_over_E0", "B",
                                               "tmin_standard", "tmin_modified", "dt_heisenberg"};
    return cols;
}

const std::vector<std::string> &audit_columns() {
    static const std::vector<std::string> cols{
        "t",  "alpha",        "eta",        "a2",          "dim",          "E0",          "E0_numeric",
        "E0_residual", "E1",  "ReH1_numeric", "ratio_ReH1_over_E1", "E1_residual", "E2", "cross_numeric",
        "E2_residual", "n_t", "norm_numeric", "n_residual", "B",           "B_numeric",   "B_residual",
        "convergence_delta", "flag"};
    return cols;
}

SweepRow fig1_row(double t, double alpha, double eta, double hbar) {
    const auto q = closed_form_energies(t, alpha, eta);
    SweepRow r;
    r.t = t;
    r.alpha = alpha;
    r.eta = eta;
    r.E0 = q.E0;
    r.E1 = q.E1;
    r.E2 = q.E2;
    r.n_t = q.n_t;
    r.B_t = q.B_t;
    r.Bt_over_E0 = q.B_t / q.E0;
    r.B = q.B;
    r.tmin_standard = std::numbers::pi * hbar / (2.0 * q.E0);
    r.tmin_modified = tmin_bound(t, alpha, eta, hbar).expanded;
    r.dt_heisenberg = heisenberg_dt(t, alpha, eta, hbar).expanded;
    return r;
}

std::vector<SweepRow> fig1_rows_serial(const SweepConfig &cfg) {
    const auto grid = grid_of(cfg);
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (const auto &g : grid)
        rows.push_back(fig1_row(g.t, g.alpha, cfg.eta, cfg.hbar));
    return rows;
}

std::vector<SweepRow> fig1_rows_parallel(const SweepConfig &cfg, int jobs) {
    const auto grid = grid_of(cfg);
    std::vector<SweepRow> rows(grid.size());
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    const auto n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static) num_threads(threads)
    for (long i = 0; i < n; ++i)
        rows[i] = fig1_row(grid[i].t, grid[i].alpha, cfg.eta, cfg.hbar);
    return rows;
}

std::vector<AuditRow> audit_rows_serial(const SweepConfig &cfg) {
    const auto grid = grid_of(cfg);
    const NonlocalOperators ops(cfg.dim), ops_double(2 * cfg.dim);
    std::vector<AuditRow> rows;
    rows.reserve(grid.size());
    for (const auto &g : grid)
        rows.push_back(audit_point(g, cfg, ops, ops_double));
    return rows;
}

std::vector<AuditRow> audit_rows_parallel(const SweepConfig &cfg, int jobs) {
    const auto grid = grid_of(cfg);
    const NonlocalOperators ops(cfg.dim), ops_double(2 * cfg.dim);
    std::vector<AuditRow> rows(grid.size());
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    const auto n = static_cast<long>(grid.size());
    // audit_point catches every library error, so nothing escapes the region
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
    for (long i = 0; i < n; ++i)
        rows[i] = audit_point(grid[i], cfg, ops, ops_double);
    return rows;
}

AuditSummary summarize_audit(const std::vector<AuditRow> &rows) {
    AuditSummary s;
    std::vector<double> norm_unit, n_target, cross_unit, e2_target;
    s.ratio_min = std::numeric_limits<double>::infinity();
    s.ratio_max = -std::numeric_limits<double>::infinity();
    for (const auto &r : rows) {
        if (r.flagged) {
            ++s.flagged_rows;
            continue;
        }
        ++s.used_rows;
        norm_unit.push_back(r.audit.norm_per_a2);
        n_target.push_back(r.audit.closed.n_t);
        cross_unit.push_back(r.audit.cross_per_a2);
        e2_target.push_back(r.audit.closed.E2);
        s.ratio_min = std::min(s.ratio_min, r.audit.ratio_ReH1_over_E1);
        s.ratio_max = std::max(s.ratio_max, r.audit.ratio_ReH1_over_E1);
    }
    if (s.used_rows > 0) {
        s.normalization = fit_a2(norm_unit, n_target);
        s.cross_term = fit_a2(cross_unit, e2_target);
    }
    return s;
}

void write_fig1_csv(std::ostream &out, const SweepConfig &cfg, const std::vector<SweepRow> &rows) {
    out << "# qbounds fig1: B_t/E0 correction and time bounds of the nonlocal oscillator\n" << cfg.echo();
    write_header(out, fig1_columns());
    for (const auto &r : rows) {
        write_values(out, {r.t, r.alpha, r.eta, r.E0, r.E1, r.E2, r.n_t, r.B_t, r.Bt_over_E0, r.B, r.tmin_standard,
                           r.tmin_modified, r.dt_heisenberg});
        out << '\n';
    }
}

void write_audit_csv(std::ostream &out, const SweepConfig &cfg, const std::vector<AuditRow> &rows) {
    out << "# qbounds audit: Fock-space evaluation of the average energy against the closed forms\n" << cfg.echo();
    write_header(out, audit_columns());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto &r : rows) {
        const auto &a = r.audit;
        if (r.flagged) {
            write_values(out, {r.t, r.alpha, cfg.eta, cfg.a2, static_cast<double>(cfg.dim)});
            for (std::size_t i = 5; i + 1 < audit_columns().size(); ++i)
                out << ',' << format_double(nan);
            out << ',' << csv_quote(r.flag) << '\n';
            continue;
        }
        write_values(out, {a.t, a.alpha, a.eta, a.a2, static_cast<double>(a.dim), a.closed.E0, a.E0_numeric,
                           a.E0_residual, a.closed.E1, a.ReH1_numeric, a.ratio_ReH1_over_E1, a.E1_residual,
                           a.closed.E2, a.cross_numeric, a.E2_residual, a.closed.n_t, a.norm_numeric, a.n_residual,
                           a.closed.B, a.energy_numeric, a.B_residual, a.convergence_delta});
        out << ",ok\n";
    }
    const auto summary = summarize_audit(rows);
    out << "# summary: rows = " << rows.size() << ", flagged = " << summary.flagged_rows << '\n';
    if (summary.used_rows > 0) {
        out << "# ratio_ReH1_over_E1: min = " << format_double(summary.ratio_min)
            << ", max = " << format_double(summary.ratio_max) << '\n';
        write_fit(out, "normalization", summary.normalization);
        write_fit(out, "cross_term", summary.cross_term);
    }
}

} // namespace qbounds
