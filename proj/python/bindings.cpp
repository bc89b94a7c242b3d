#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <stdexcept>
#include <vector>

#include "qcclab/audit.hpp"
#include "qcclab/diffgeo.hpp"
#include "qcclab/metric.hpp"
#include "qcclab/quotients.hpp"

// Python bindings for the main operations: quaternion algebra, the group and
// its forms, the metric family, twists, descended 2-forms, curvature summaries
// and the full audit runner.

namespace py = pybind11;
using namespace qcc;

namespace {

using Q4 = std::array<double, 4>;
using T3 = std::array<double, 3>;

Quaternion<double> to_q(const Q4& a) { return {a[0], a[1], a[2], a[3]}; }
Q4 from_q(const Quaternion<double>& q) { return {q.w, q.x, q.y, q.z}; }

QVector<double> to_qv(const std::vector<double>& flat) {
  if (flat.size() % 4 != 0)
    throw std::invalid_argument("flat quaternionic vector needs 4n coordinates");
  return QVector<double>::from_flat(flat);
}

MPoint<double> to_point(const T3& t, const std::vector<double>& z) {
  return {{t[0], t[1], t[2]}, to_qv(z)};
}

MTangent<double> to_tangent(const T3& dt, const std::vector<double>& dz) {
  return {{dt[0], dt[1], dt[2]}, dz};
}

Backend to_backend(const std::string& name) {
  if (name == "fd") return Backend::fd;
  if (name == "dual") return Backend::dual;
  throw std::invalid_argument("backend must be 'fd' or 'dual'");
}

RunConfig make_config(const std::vector<std::size_t>& ns, const std::vector<double>& as,
                      std::size_t samples, std::uint64_t seed, const std::string& backend,
                      const std::vector<std::string>& audits,
                      const std::map<std::string, double>& tolerances) {
  RunConfig cfg;
  if (!ns.empty()) cfg.ns = ns;
  if (!as.empty()) cfg.as = as;
  for (std::size_t n : cfg.ns)
    if (n < 1) throw std::invalid_argument("n must be >= 1");
  for (double a : cfg.as)
    if (!(a > 0)) throw std::invalid_argument("a must be > 0");
  cfg.samples = samples;
  cfg.seed = seed;
  if (backend == "fd") cfg.backend = BackendChoice::fd;
  else if (backend == "dual") cfg.backend = BackendChoice::dual;
  else if (backend == "both") cfg.backend = BackendChoice::both;
  else throw std::invalid_argument("backend must be 'fd', 'dual' or 'both'");
  cfg.audits = audits;
  cfg.tolerance_overrides = tolerances;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_qcclab, m) {
  m.doc() = "numerical laboratory for a conformally deformed quaternionic-contact "
            "metric family";

  // quaternion algebra
  m.def("quat_mul", [](const Q4& a, const Q4& b) { return from_q(to_q(a) * to_q(b)); },
        "Hamilton product of scalar-first quadruples");
  m.def("quat_conj", [](const Q4& a) { return from_q(to_q(a).conj()); });
  m.def("so3_from_unit", [](const Q4& a) {
    auto m3 = so3_from_unit(UnitQuaternion::normalized(to_q(a)));
    return std::array<std::array<double, 3>, 3>{m3[0], m3[1], m3[2]};
  }, "rotation matrix rows of the conjugation action on Im H");

  // group operations
  m.def("group_mul", [](const T3& t1, const std::vector<double>& z1, const T3& t2,
                        const std::vector<double>& z2) {
    MPoint<double> r = m_mul(to_point(t1, z1), to_point(t2, z2));
    return py::make_tuple(r.t, r.z.flat());
  }, "product in the 2-step group R^3 x H^n");
  m.def("group_inv", [](const T3& t, const std::vector<double>& z) {
    MPoint<double> r = m_inv(to_point(t, z));
    return py::make_tuple(r.t, r.z.flat());
  });

  // forms
  m.def("omega", [](int alpha, const T3& t, const std::vector<double>& z, const T3& dt,
                    const std::vector<double>& dz) {
    return omega_eval(alpha, to_point(t, z), to_tangent(dt, dz));
  }, "contact 1-form omega_alpha(V)");
  m.def("eta", [](int alpha, double a, const T3& t, const std::vector<double>& z,
                  const T3& dt, const std::vector<double>& dz) {
    return eta_eval(alpha, a, to_point(t, z), to_tangent(dt, dz));
  });
  m.def("d_eta", [](int alpha, double a, const T3& t, const std::vector<double>& z,
                    const T3& dtx, const std::vector<double>& dzx, const T3& dty,
                    const std::vector<double>& dzy) {
    return d_eta_eval(alpha, a, to_point(t, z), to_tangent(dtx, dzx),
                      to_tangent(dty, dzy));
  });
  m.def("conformal_factor", [](double a, const std::vector<double>& z) {
    return f_eval(a, MPoint<double>({0, 0, 0}, to_qv(z)));
  });
  m.def("horizontal_lift", [](const T3& t, const std::vector<double>& z,
                              const std::vector<double>& vhat) {
    MTangent<double> v = horizontal_lift(to_point(t, z), to_qv(vhat));
    return py::make_tuple(v.dt, v.dz);
  });

  // metric family and twists
  m.def("metric", [](double a, const std::vector<double>& z, const std::vector<double>& x,
                     const std::vector<double>& y) {
    return metric_eval(a, to_qv(z), to_qv(x), to_qv(y));
  }, "g_a(x, y) at z via the lift construction, normalized");
  m.def("tau", [](int alpha, double a, const std::vector<double>& z) {
    return tau(alpha, a, to_qv(z)).flat();
  });
  m.def("omega_descended", [](int alpha, double a, const std::vector<double>& u,
                              const std::vector<double>& uhat,
                              const std::vector<double>& vhat) {
    return omega_descended(alpha, a, to_qv(u), to_qv(uhat), to_qv(vhat));
  }, "descended 2-form Omega_alpha at u evaluated through the default preimage");

  // curvature summaries
  m.def("ricci_norm", [](std::size_t n, double a, const std::vector<double>& x,
                         const std::string& backend) {
    MetricField g{n, a};
    if (x.size() != g.dim()) throw std::invalid_argument("point dimension mismatch");
    auto cur = riemann_ricci(g, x, to_backend(backend));
    return cur.ricci.frobenius();
  }, py::arg("n"), py::arg("a"), py::arg("x"), py::arg("backend") = "dual");
  m.def("scalar_curvature", [](std::size_t n, double a, const std::vector<double>& x,
                               const std::string& backend) {
    MetricField g{n, a};
    if (x.size() != g.dim()) throw std::invalid_argument("point dimension mismatch");
    return riemann_ricci(g, x, to_backend(backend)).scalar;
  }, py::arg("n"), py::arg("a"), py::arg("x"), py::arg("backend") = "dual");
  m.def("bochner_norm", [](std::size_t n, double a, const std::vector<double>& x,
                           const std::string& backend) {
    NMetricField g{n, a};
    if (x.size() != g.dim()) throw std::invalid_argument("point dimension mismatch");
    return bochner_norm(g, x, to_backend(backend));
  }, py::arg("n"), py::arg("a"), py::arg("x"), py::arg("backend") = "dual");

  // audits
  m.def("audit_names", &audit_names);
  m.def("run_audits_json",
        [](const std::vector<std::size_t>& ns, const std::vector<double>& as,
           std::size_t samples, std::uint64_t seed, const std::string& backend,
           const std::vector<std::string>& audits,
           const std::map<std::string, double>& tolerances, bool stable) {
          RunConfig cfg = make_config(ns, as, samples, seed, backend, audits, tolerances);
          auto reports = run_audits(cfg);
          return py::make_tuple(
              stable ? report_json_stable(cfg, reports) : report_json(cfg, reports),
              report_exit_code(reports));
        },
        py::arg("ns") = std::vector<std::size_t>{}, py::arg("as_") = std::vector<double>{},
        py::arg("samples") = 1000, py::arg("seed") = 20230817,
        py::arg("backend") = "both", py::arg("audits") = std::vector<std::string>{},
        py::arg("tolerances") = std::map<std::string, double>{},
        py::arg("stable") = false,
        "run the claim audits; returns (json_report, exit_code)");
}
