#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "toric/coefficients.hpp"
#include "toric/geodesics.hpp"
#include "toric/polygon.hpp"
#include "toric/solver.hpp"

namespace toric {

// Every writer goes through a temp file next to the target followed by a
// rename, so a reader (or a crashed run) never sees a half-written file.
// All failures surface as IoError.

// JSON object {"name": string, "k": int, "vertices": [[int,int], ...]},
// vertices counterclockwise.  Geometry problems propagate from the polygon
// validation, not as IoError.
Polygon load_polygon(const std::filesystem::path& file);

// CSV `nu1,nu2,a` in lexicographic exponent order, 17 significant digits
// (enough for doubles to round-trip exactly).
void save_coefficients(const CoefficientSet& coeffs, const std::filesystem::path& file);
CoefficientSet load_coefficients(const Polygon& poly, const std::filesystem::path& file);

// A checkpoint is the coefficient CSV plus a JSON sidecar holding
// {"epsilon", "outer_step", "history_tail"}.  The tail keeps every row, so a
// resumed run rebuilds its stop bookkeeping (plateau window, divergence
// baseline, cumulative inner count) exactly.
std::filesystem::path checkpoint_sidecar_path(const std::filesystem::path& coeff_file);
void save_checkpoint(const IterationState& state, const std::filesystem::path& coeff_file);
IterationState load_checkpoint(const Polygon& poly, const std::filesystem::path& coeff_file);

// CSV `outer,inner_total,l2_error,max_ratio_dev,eta_max`, one row per entry.
void save_iteration_log(const std::vector<HistoryRow>& history,
                        const std::filesystem::path& file);

// CSV `time,t1,t2,x1,x2,H`.
void save_trace(const std::vector<TraceSample>& rows, const std::filesystem::path& file);

// One curvature-report grid point; non-finite values are written as "nan"
// sentinels so a plotting tool can mask them.
struct ReportRow {
    Vec2 x;
    double S = 0;
    double Shat = 0;
    double K = 0;
    double rho_norm = 0;
    double w_norm = 0;
    double riem_norm = 0;
    double bach_norm = 0;
};

// CSV `x1,x2,S,Shat,K,rho_norm,w_norm,riem_norm,bach_norm`.
void save_report(const std::vector<ReportRow>& rows, const std::filesystem::path& file);

// CSV `k,l2`, one row per completed sweep entry.
void save_convergence(const std::vector<std::pair<int, double>>& rows,
                      const std::filesystem::path& file);

// Pre-serialized JSON text (the caller composes it; see cli summary schema).
void save_text(const std::string& text, const std::filesystem::path& file);

}  // namespace toric
