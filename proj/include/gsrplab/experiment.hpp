#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gsrplab/bounds.hpp"
#include "gsrplab/config.hpp"

namespace gsrplab {

struct SweepRow {
    double lambda = 0;
    double snr_subspace_db = 0;
    double snr_regret_db = 0;
    double snr_constrained_db = 0;
    double snr_orthogonal_db = 0;
    double regret = 0;       // ||P_W x - T_lambda x||
    double bound_lower = 0;  // alpha_lambda ||P_{B-perp} x||
    double bound_upper = 0;  // beta_lambda  ||P_{B-perp} x||
};

struct SweepResult {
    std::vector<SweepRow> rows;
    AngleSet angles;  // lambda-independent entries; B entries at lambda = 0
    double input_norm = 0;
};

/// One row per lambda in the config's grid. The subspace and regret schemes
/// are built once; each row combines their outputs.
SweepResult run_lambda_sweep(const ExperimentConfig& cfg);

struct AngleReport {
    AngleSet angles;
    /// cos(A,S) via the generators' spectra; NaN when no closed-form spectrum
    /// route applies to the configured pair.
    double freq_cos_as = 0;
    int freq_skipped_omegas = 0;
};

AngleReport compute_angles(const ExperimentConfig& cfg, double lambda);

struct ClaimResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ClaimReport {
    std::vector<ClaimResult> results;
    bool all_pass() const;
};

/// Verifies a claim set against a finished sweep. `claims` is either the name
/// of a builtin set ("gaussian_fig3" / "synthetic_wideband") or a path to a
/// JSON claim file (schema in docs/claims-format.md).
ClaimReport verify_claims(const SweepResult& sweep, const std::string& claims);

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void emit_json(const std::vector<SweepRow>& rows, std::ostream& out);
/// Writes to path per the format, or to stdout when path is empty.
void emit(const std::vector<SweepRow>& rows, OutputFormat format, const std::string& path);
std::vector<SweepRow> parse_csv(std::istream& in);

} // namespace gsrplab
