#include <chrono>
#include <sstream>

#include "json.hpp"
#include "qcclab/audit.hpp"

// Report serialization. The "config" and "results" sections depend only on the
// run configuration, so they can be compared byte-for-byte between repeat runs;
// wall-clock data is kept in a separate "timing" object.

namespace qcc {
namespace {

using json = nlohmann::ordered_json;

const char* backend_name(BackendChoice b) {
  switch (b) {
    case BackendChoice::fd: return "fd";
    case BackendChoice::dual: return "dual";
    default: return "both";
  }
}

json config_json(const RunConfig& cfg) {
  json c;
  c["ns"] = cfg.ns;
  c["as"] = cfg.as;
  c["seed"] = cfg.seed;
  c["samples"] = cfg.samples;
  c["backend"] = backend_name(cfg.backend);
  c["tolerance_overrides"] = json::object();
  for (const auto& [k, v] : cfg.tolerance_overrides) c["tolerance_overrides"][k] = v;
  c["audits"] = cfg.audits;
  return c;
}

json results_json(const std::vector<AuditReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    json e;
    e["claim_id"] = r.claim_id;
    e["paper_locus"] = r.paper_locus;
    e["class"] = r.cls;
    e["n"] = r.n;
    e["a"] = r.a;
    e["seed"] = r.seed;
    e["samples"] = r.samples;
    e["max_residual"] = r.max_residual;
    e["mean_residual"] = r.mean_residual;
    e["backend_agreement"] = r.backend_agreement;
    e["tolerance"] = r.tolerance;
    e["lower_bound"] = r.lower_bound;
    e["status"] = r.status;
    arr.push_back(std::move(e));
  }
  return arr;
}

}  // namespace

std::string report_json_stable(const RunConfig& cfg,
                               const std::vector<AuditReport>& reports) {
  json doc;
  doc["config"] = config_json(cfg);
  doc["results"] = results_json(reports);
  return doc.dump(2);
}

std::string report_json(const RunConfig& cfg, const std::vector<AuditReport>& reports) {
  json doc;
  doc["config"] = config_json(cfg);
  doc["results"] = results_json(reports);
  json timing = json::array();
  double total = 0;
  for (const auto& r : reports) {
    timing.push_back({{"claim_id", r.claim_id}, {"n", r.n}, {"a", r.a},
                      {"wall_ms", r.wall_ms}});
    total += r.wall_ms;
  }
  doc["timing"] = {{"per_claim", std::move(timing)}, {"total_ms", total}};
  auto now = std::chrono::system_clock::now().time_since_epoch();
  doc["timestamp"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  return doc.dump(2);
}

std::string report_csv(const std::vector<AuditReport>& reports) {
  std::ostringstream os;
  os << "claim_id,class,n,a,seed,samples,max_residual,mean_residual,"
        "backend_agreement,tolerance,lower_bound,status\n";
  os.precision(17);
  for (const auto& r : reports) {
    os << r.claim_id << ',' << r.cls << ',' << r.n << ',' << r.a << ',' << r.seed << ','
       << r.samples << ',' << r.max_residual << ',' << r.mean_residual << ','
       << r.backend_agreement << ',' << r.tolerance << ',' << (r.lower_bound ? 1 : 0)
       << ',' << r.status << '\n';
  }
  return os.str();
}

}  // namespace qcc
