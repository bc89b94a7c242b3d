#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qcclab/audit.hpp"

// Command line driver for the claim audits.
//
// Exit codes: 0 all asserted claims pass, 1 assert failure,
//             2 configuration error, 3 derivative-backend disagreement.

namespace {

int write_file(const std::string& path, const std::string& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    std::cerr << "cannot open " << path << " for writing\n";
    return 2;
  }
  os << body;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"audit the claims of the deformed quaternionic-contact metric family"};

  qcc::RunConfig cfg;
  std::vector<std::size_t> ns;
  std::vector<double> as;
  std::vector<std::string> tol_spec;
  std::string backend = "both";
  std::string out_path, csv_dir;

  app.add_option("--n", ns, "quaternionic dimensions to audit (repeatable)");
  app.add_option("--a", as, "deformation parameters, must be > 0 (repeatable)");
  app.add_option("--samples", cfg.samples, "random samples per claim");
  app.add_option("--seed", cfg.seed, "base RNG seed");
  app.add_option("--tolerance", tol_spec,
                 "per-claim tolerance override CLAIM=VALUE (repeatable)");
  app.add_option("--audit", cfg.audits, "audit group to run (repeatable; default all)");
  app.add_option("--backend", backend, "derivative backend: fd, dual or both")
      ->check(CLI::IsMember({"fd", "dual", "both"}));
  app.add_option("--out", out_path, "write the JSON report to this file");
  app.add_option("--csv", csv_dir, "write per-claim CSV into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (!ns.empty()) cfg.ns = ns;
  if (!as.empty()) cfg.as = as;
  for (std::size_t n : cfg.ns)
    if (n < 1) {
      std::cerr << "--n must be >= 1\n";
      return 2;
    }
  for (double a : cfg.as)
    if (!(a > 0)) {
      std::cerr << "--a must be > 0\n";
      return 2;
    }
  if (cfg.samples < 1) {
    std::cerr << "--samples must be >= 1\n";
    return 2;
  }
  auto known = qcc::audit_names();
  for (const auto& name : cfg.audits)
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      std::cerr << "unknown audit '" << name << "'; available:";
      for (const auto& k : known) std::cerr << ' ' << k;
      std::cerr << '\n';
      return 2;
    }
  for (const auto& spec : tol_spec) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "--tolerance expects CLAIM=VALUE, got '" << spec << "'\n";
      return 2;
    }
    try {
      cfg.tolerance_overrides[spec.substr(0, eq)] = std::stod(spec.substr(eq + 1));
    } catch (const std::exception&) {
      std::cerr << "--tolerance: bad value in '" << spec << "'\n";
      return 2;
    }
  }
  cfg.backend = backend == "fd" ? qcc::BackendChoice::fd
              : backend == "dual" ? qcc::BackendChoice::dual
                                  : qcc::BackendChoice::both;

  std::vector<qcc::AuditReport> reports = qcc::run_audits(cfg);

  for (const auto& r : reports)
    std::cout << r.status << "  " << r.claim_id << "  n=" << r.n << " a=" << r.a
              << "  max=" << r.max_residual << (r.cls == "measure" ? "  [measure]" : "")
              << '\n';

  std::string doc = qcc::report_json(cfg, reports);
  if (!out_path.empty()) {
    if (int rc = write_file(out_path, doc)) return rc;
  } else {
    std::cout << doc << '\n';
  }
  if (!csv_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(csv_dir, ec);
    if (ec) {
      std::cerr << "cannot create " << csv_dir << ": " << ec.message() << '\n';
      return 2;
    }
    if (int rc = write_file((std::filesystem::path(csv_dir) / "claims.csv").string(),
                            qcc::report_csv(reports)))
      return rc;
  }
  return qcc::report_exit_code(reports);
}
