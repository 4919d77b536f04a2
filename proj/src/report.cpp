#include "ueq/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ueq {

const char* to_string(Relation r) {
  switch (r) {
    case Relation::equal:
      return "eq";
    case Relation::less_equal:
      return "le";
    case Relation::less:
      return "lt";
  }
  return "?";
}

double relative_residual(cx lhs, cx rhs) {
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
  return std::abs(lhs - rhs) / scale;
}

EqualityReport make_equality(std::string id, cx lhs, cx rhs, double tol) {
  EqualityReport r;
  r.identity_id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_residual = std::abs(lhs - rhs);
  r.rel_residual = relative_residual(lhs, rhs);
  r.tol = tol;
  r.relation = Relation::equal;
  r.passed = std::isfinite(r.rel_residual) && r.rel_residual <= tol;
  return r;
}

EqualityReport make_inequality(std::string id, double lhs, double rhs, double tol) {
  EqualityReport r;
  r.identity_id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_residual = std::abs(lhs - rhs);
  r.rel_residual = relative_residual(lhs, rhs);
  r.tol = tol;
  r.relation = Relation::less_equal;
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
  r.passed = std::isfinite(lhs) && std::isfinite(rhs) && lhs <= rhs + tol * scale;
  return r;
}

EqualityReport make_strict_inequality(std::string id, double lhs, double rhs, double floor) {
  EqualityReport r;
  r.identity_id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_residual = std::abs(lhs - rhs);
  r.rel_residual = relative_residual(lhs, rhs);
  r.tol = floor;
  r.relation = Relation::less;
  r.passed = std::isfinite(lhs) && std::isfinite(rhs) && rhs - lhs > floor;
  return r;
}

void ReportAggregator::add(const EqualityReport& r) {
  auto it = worst_.find(r.identity_id);
  if (it == worst_.end()) {
    worst_.emplace(r.identity_id, r);
    counts_[r.identity_id] = 1;
    all_passed_[r.identity_id] = r.passed;
    return;
  }
  ++counts_[r.identity_id];
  all_passed_[r.identity_id] = all_passed_[r.identity_id] && r.passed;
  // Inequalities: keep the one closest to violation; equalities: largest residual.
  const bool worse = r.relation == Relation::equal
                         ? r.rel_residual > it->second.rel_residual
                         : (r.rhs.real() - r.lhs.real()) < (it->second.rhs.real() - it->second.lhs.real());
  if (worse || (!r.passed && it->second.passed)) it->second = r;
}

std::vector<EqualityReport> ReportAggregator::take() {
  std::vector<EqualityReport> out;
  out.reserve(worst_.size());
  for (auto& [id, r] : worst_) {
    r.metrics["trials"] = counts_[id];
    r.passed = all_passed_[id];
    out.push_back(std::move(r));
  }
  worst_.clear();
  counts_.clear();
  all_passed_.clear();
  return out;
}

bool all_passed(const std::vector<EqualityReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
}

double max_residual(const std::vector<EqualityReport>& reports, const std::string& prefix) {
  double m = 0.0;
  for (const auto& r : reports) {
    if (r.identity_id.rfind(prefix, 0) == 0) m = std::max(m, r.rel_residual);
  }
  return m;
}

const EqualityReport& find_report(const std::vector<EqualityReport>& reports, const std::string& id) {
  for (const auto& r : reports) {
    if (r.identity_id == id) return r;
  }
  throw std::out_of_range("no report with identity id '" + id + "'");
}

}  // namespace ueq
