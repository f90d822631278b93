#pragma once

// (t, alpha) grid kernels behind the fig1 and audit commands.
//
// Each kernel has a serial reference and an OpenMP version. Rows are written
// into preallocated slots (alpha-major, then t ascending), so both versions
// return identical results for any thread count.

#include <iosfwd>
#include <string>
#include <vector>

#include "qbounds/config.hpp"
#include "qbounds/nonlocal.hpp"

namespace qbounds {

struct SweepRow {
    double t, alpha, eta;
    double E0, E1, E2, n_t, B_t, Bt_over_E0, B;
    double tmin_standard, tmin_modified, dt_heisenberg;
};

const std::vector<std::string> &fig1_columns();

SweepRow fig1_row(double t, double alpha, double eta, double hbar);

std::vector<SweepRow> fig1_rows_serial(const SweepConfig &cfg);
// jobs <= 0 uses the OpenMP default thread count.
std::vector<SweepRow> fig1_rows_parallel(const SweepConfig &cfg, int jobs);

struct AuditRow {
    double t = 0.0;
    double alpha = 0.0;
    bool flagged = false;
    std::string flag; // error text for flagged rows
    EnergyAudit audit;
};

const std::vector<std::string> &audit_columns();

std::vector<AuditRow> audit_rows_serial(const SweepConfig &cfg);
std::vector<AuditRow> audit_rows_parallel(const SweepConfig &cfg, int jobs);

struct AuditSummary {
    A2Fit normalization; // a2 * 2Re<psi|psi1> against n(t)
    A2Fit cross_term;    // a2 * (<psi1|H|psi> + <psi|H|psi1>) against E2(t)
    double ratio_min = 0.0;
    double ratio_max = 0.0;
    int flagged_rows = 0;
    int used_rows = 0;
};

AuditSummary summarize_audit(const std::vector<AuditRow> &rows);

void write_fig1_csv(std::ostream &out, const SweepConfig &cfg, const std::vector<SweepRow> &rows);
void write_audit_csv(std::ostream &out, const SweepConfig &cfg, const std::vector<AuditRow> &rows);

} // namespace qbounds
