#pragma once

// Suite runner behind the command-line tool: configuration, execution of the
// verifiers, JSON report assembly and grid-refinement studies.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ueq/grid.hpp"
#include "ueq/report.hpp"

namespace ueq::suite {

/// Suite names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Unset fields take per-suite defaults (see describe_defaults()).
struct SuiteConfig {
  std::string suite = "all";
  std::optional<int> n;
  std::optional<int> N;
  std::optional<double> L;
  std::optional<double> offset;
  std::optional<std::string> scheme;
  std::optional<double> tol;
  std::optional<int> trials;
  std::uint64_t seed = 1;
  bool radial = false;
  std::optional<double> R;
  std::optional<int> points;
  std::optional<int> dim;  ///< vector dimension for the algebraic suites
  std::string out;         ///< JSON report path; empty = none
  std::string csv;         ///< CSV residual table path; empty = none

  /// Throws std::invalid_argument on an unknown suite or out-of-range value.
  void validate() const;
};

/// Loads a JSON config object (keys as the CLI flags without dashes).
SuiteConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SuiteConfig& c);

/// Human-readable table of the per-suite defaults.
std::string describe_defaults();

struct SuiteOutcome {
  std::vector<EqualityReport> reports;  ///< sorted by identity_id
  int exit_code = 0;                    ///< 0 all passed, 1 some failed
  std::vector<std::string> failing_ids;
};

/// Runs the selected suite(s); independent items run concurrently.
SuiteOutcome run_suite(const SuiteConfig& config);

nlohmann::json report_to_json(const EqualityReport& r);
/// {schema: 1, header: {tool, version, timestamp, config}, reports: [...]}.
nlohmann::json build_report_document(const SuiteConfig& config, const SuiteOutcome& outcome,
                                     const std::string& timestamp);
/// One row per report: identity_id,lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual,tol,passed.
void write_report_csv(const std::vector<EqualityReport>& reports, std::ostream& os);

inline constexpr const char* kToolName = "ueq";
inline constexpr const char* kToolVersion = "1.0.0";

struct RefinementRow {
  int points = 0;
  double spacing = 0.0;
  double residual = 0.0;
};

struct RefinementResult {
  std::string identity_id;
  grid::Scheme scheme = grid::Scheme::spectral_periodic;
  std::vector<RefinementRow> rows;   ///< ordered by decreasing spacing
  std::optional<double> fitted_order;  ///< empty when a residual is exactly zero
};

/// Residual of `identity_id` on the coherent state over grids of increasing
/// resolution, with a least-squares fit of log residual against log h.
/// Rejects fewer than 3 grids, mixed schemes or dimensions, and ids that are
/// not evaluated on generic grid states.
RefinementResult refinement_study(const std::string& identity_id, const std::vector<grid::GridSpec>& grids);
void write_refinement_csv(const RefinementResult& r, std::ostream& os);

}  // namespace ueq::suite
