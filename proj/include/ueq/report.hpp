#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace ueq {

using cx = std::complex<double>;

/// How the two sides of a report are related.
enum class Relation {
  equal,       ///< lhs == rhs within tol
  less_equal,  ///< lhs <= rhs, with tol as relative slack
  less,        ///< lhs < rhs strictly; tol is the floor the gap must exceed
};

const char* to_string(Relation r);

/// One verified identity (or inequality) with both sides and its residuals.
///
/// abs_residual = |lhs - rhs| and rel_residual = abs_residual / max(|lhs|, |rhs|, 1)
/// always. For Relation::equal, passed <=> rel_residual <= tol.
struct EqualityReport {
  std::string identity_id;
  cx lhs{};
  cx rhs{};
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double tol = 0.0;
  bool passed = false;
  Relation relation = Relation::equal;
  /// Grid, scheme and state metadata; never compared numerically.
  std::map<std::string, std::string> context;
  /// Auxiliary scalars (gap values, ratios, trial counts).
  std::map<std::string, double> metrics;
};

double relative_residual(cx lhs, cx rhs);

EqualityReport make_equality(std::string id, cx lhs, cx rhs, double tol);

/// lhs <= rhs (real parts), passing when lhs <= rhs + tol * max(|lhs|, |rhs|, 1).
EqualityReport make_inequality(std::string id, double lhs, double rhs, double tol);

/// lhs < rhs strictly, passing when rhs - lhs > floor.
EqualityReport make_strict_inequality(std::string id, double lhs, double rhs, double floor);

/// Worst-residual summary over many evaluations of the same identity.
class ReportAggregator {
 public:
  void add(const EqualityReport& r);
  std::vector<EqualityReport> take();

 private:
  std::map<std::string, EqualityReport> worst_;
  std::map<std::string, int> counts_;
  std::map<std::string, bool> all_passed_;
};

bool all_passed(const std::vector<EqualityReport>& reports);

/// Max rel_residual over reports whose id starts with prefix (0 if none).
double max_residual(const std::vector<EqualityReport>& reports, const std::string& prefix);

const EqualityReport& find_report(const std::vector<EqualityReport>& reports, const std::string& id);

}  // namespace ueq
