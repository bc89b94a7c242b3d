#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qcc {

// Which derivative backends a run may use.
enum class BackendChoice { fd, dual, both };

struct RunConfig {
  std::vector<std::size_t> ns{1, 2};
  std::vector<double> as{0.5, 1.0, 2.0};
  std::uint64_t seed = 20230817;
  std::size_t samples = 1000;
  BackendChoice backend = BackendChoice::both;
  std::map<std::string, double> tolerance_overrides;
  std::vector<std::string> audits;  // empty = all registered audits

  double tol(const std::string& claim, double fallback) const {
    auto it = tolerance_overrides.find(claim);
    return it == tolerance_overrides.end() ? fallback : it->second;
  }
};

// One audited claim at one (n, a). For assert-class claims status is
// pass/fail against the stated tolerance. For measure-class claims the value
// is recorded; only an internal backend disagreement can flag them.
struct AuditReport {
  std::string claim_id;
  std::string paper_locus;
  std::string cls;  // "assert" | "measure"
  std::size_t n = 0;
  double a = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  double max_residual = 0;
  double mean_residual = 0;
  double backend_agreement = -1;  // -1 when only one backend was used
  double tolerance = -1;          // -1 for measure-class claims
  bool lower_bound = false;       // true: pass means max_residual > tolerance
  std::string status;             // "pass" | "fail" | "recorded" | "backend-disagreement"
  double wall_ms = 0;
};

std::vector<AuditReport> audit_forms(const RunConfig& cfg);
std::vector<AuditReport> audit_invariance(const RunConfig& cfg);
std::vector<AuditReport> audit_metric_isometry(const RunConfig& cfg);
std::vector<AuditReport> audit_hyperkahler(const RunConfig& cfg);
std::vector<AuditReport> audit_cc_bounds(const RunConfig& cfg);
std::vector<AuditReport> audit_lift_construction(const RunConfig& cfg);
std::vector<AuditReport> audit_quotients(const RunConfig& cfg);

// names in registry order
std::vector<std::string> audit_names();
// run the selected audits (all when cfg.audits is empty)
std::vector<AuditReport> run_audits(const RunConfig& cfg);

// deterministic JSON: the "config" + "results" part is byte-identical across
// runs with the same config; wall times live in a separate "timing" object
std::string report_json(const RunConfig& cfg, const std::vector<AuditReport>& reports);
// the deterministic part only (used by the repeat-run test)
std::string report_json_stable(const RunConfig& cfg, const std::vector<AuditReport>& reports);
std::string report_csv(const std::vector<AuditReport>& reports);

// 0 = all asserts pass, 1 = assert failure, 3 = backend disagreement
int report_exit_code(const std::vector<AuditReport>& reports);

}  // namespace qcc
