#include "qcclab/audit.hpp"

#include <chrono>
#include <cmath>
#include <functional>

#include "qcclab/diffgeo.hpp"
#include "qcclab/metric.hpp"
#include "qcclab/quotients.hpp"

// Implementation of the named claim audits. Every audit is deterministic per
// (seed, n, a, samples); residual accumulation is single-threaded so reports
// are byte-for-byte reproducible.

namespace qcc {
namespace {

struct Acc {
  double mx = 0, sum = 0;
  std::size_t cnt = 0;
  void add(double r) {
    r = std::fabs(r);
    mx = std::max(mx, r);
    sum += r;
    ++cnt;
  }
  double mean() const { return cnt ? sum / cnt : 0.0; }
};

using Clock = std::chrono::steady_clock;

// collects reports for one (n, a) slice of one audit
struct Slice {
  const RunConfig& cfg;
  std::vector<AuditReport>& out;
  std::size_t n;
  double a;
  Clock::time_point t0 = Clock::now();

  double take_ms() {
    auto t1 = Clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    t0 = t1;
    return ms;
  }

  AuditReport& base(const std::string& claim, const std::string& locus,
                    const std::string& cls, std::size_t samples) {
    out.push_back({});
    AuditReport& r = out.back();
    r.claim_id = claim;
    r.paper_locus = locus;
    r.cls = cls;
    r.n = n;
    r.a = a;
    r.seed = cfg.seed;
    r.samples = samples;
    return r;
  }

  void asrt(const std::string& claim, const std::string& locus, double tol_default,
            const Acc& acc, double agree = -1) {
    AuditReport& r = base(claim, locus, "assert", acc.cnt);
    r.max_residual = acc.mx;
    r.mean_residual = acc.mean();
    r.backend_agreement = agree;
    r.tolerance = cfg.tol(claim, tol_default);
    r.status = acc.mx < r.tolerance ? "pass" : "fail";
    r.wall_ms = take_ms();
  }

  // assert that the witnessed quantity EXCEEDS the threshold
  void witness(const std::string& claim, const std::string& locus, double threshold,
               const Acc& acc) {
    AuditReport& r = base(claim, locus, "assert", acc.cnt);
    r.max_residual = acc.mx;
    r.mean_residual = acc.mean();
    r.tolerance = cfg.tol(claim, threshold);
    r.lower_bound = true;
    r.status = acc.mx > r.tolerance ? "pass" : "fail";
    r.wall_ms = take_ms();
  }

  void measure(const std::string& claim, const std::string& locus, const Acc& acc,
               double agree) {
    AuditReport& r = base(claim, locus, "measure", acc.cnt);
    r.max_residual = acc.mx;
    r.mean_residual = acc.mean();
    r.backend_agreement = agree;
    r.status = (agree >= 0 && agree > cfg.tol("backend.agreement", 1e-6))
                   ? "backend-disagreement"
                   : "recorded";
    r.wall_ms = take_ms();
  }
};

std::uint64_t slice_seed(const RunConfig& cfg, std::size_t n, std::size_t ai) {
  return cfg.seed + 7919 * n + 104729 * ai;
}

// ---------------------------------------------------------------------------
// samplers (desk-scale domain: z in the coordinate ball of radius 2,
// |z_k| >= 1e-3 so the explicit D-basis stays nondegenerate)

QVector<double> sample_z(Rng& rng, std::size_t n) {
  for (;;) {
    std::vector<double> dir(4 * n);
    double norm2 = 0;
    for (auto& v : dir) {
      v = rng.normal();
      norm2 += v * v;
    }
    if (norm2 < 1e-12) continue;
    double radius = 2.0 * std::pow(rng.uniform01(), 1.0 / (4.0 * n));
    double s = radius / std::sqrt(norm2);
    for (auto& v : dir) v *= s;
    QVector<double> z = QVector<double>::from_flat(dir);
    bool ok = true;
    for (std::size_t k = 0; k < n; ++k)
      if (z[k].norm() < 1e-3) ok = false;
    if (ok) return z;
  }
}

MPoint<double> sample_point(Rng& rng, std::size_t n) {
  MPoint<double> p;
  for (int i = 0; i < 3; ++i) p.t[i] = rng.uniform(-2.0, 2.0);
  p.z = sample_z(rng, n);
  return p;
}

QVector<double> sample_vec(Rng& rng, std::size_t n) {
  QVector<double> v(n);
  for (auto& q : v.e) q = random_quaternion(rng);
  return v;
}

MTangent<double> sample_tangent(Rng& rng, std::size_t n) {
  MTangent<double> v(n);
  for (auto& c : v.dt) c = rng.normal();
  for (auto& c : v.dz) c = rng.normal();
  return v;
}

MTangent<double> sample_horizontal(Rng& rng, const MPoint<double>& p) {
  return horizontal_lift(p, sample_vec(rng, p.z.size()));
}

EMElement sample_em(Rng& rng, std::size_t n, bool with_t, bool with_v, bool with_A,
                    bool with_alpha) {
  EMElement h = EMElement::identity(n);
  if (with_t)
    for (auto& c : h.t) c = rng.uniform(-2.0, 2.0);
  if (with_v) h.v = sample_vec(rng, n);
  if (with_A) h.A = random_sp_n(rng, n);
  if (with_alpha) h.alpha = random_unit_quaternion(rng).q;
  return h;
}

std::vector<double> flat_m(const MPoint<double>& p) {
  std::vector<double> x(3 + 4 * p.z.size());
  for (int i = 0; i < 3; ++i) x[i] = p.t[i];
  auto zf = p.z.flat();
  std::copy(zf.begin(), zf.end(), x.begin() + 3);
  return x;
}

template <class T>
MPoint<T> unflat_m(const std::vector<T>& x) {
  MPoint<T> p;
  p.t = {x[0], x[1], x[2]};
  std::vector<T> zf(x.begin() + 3, x.end());
  p.z = QVector<T>::from_flat(zf);
  return p;
}

std::vector<double> flat_tangent(const MTangent<double>& v) {
  std::vector<double> x(3 + v.dz.size());
  for (int i = 0; i < 3; ++i) x[i] = v.dt[i];
  std::copy(v.dz.begin(), v.dz.end(), x.begin() + 3);
  return x;
}

template <class T, class Seq>
QVector<T> promote_qv(const Seq& v) {
  std::vector<T> tmp(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) tmp[i] = T(v[i]);
  return QVector<T>::from_flat(tmp);
}

// constant matrix of right multiplication by conj(i_alpha) on R^{4n}
Mat<double> j_matrix(int alpha, std::size_t n) {
  Mat<double> J(4 * n, 4 * n);
  for (std::size_t col = 0; col < 4 * n; ++col) {
    QVector<double> e(n);
    std::vector<double> flat(4 * n, 0.0);
    flat[col] = 1.0;
    e = QVector<double>::from_flat(flat);
    auto img = j_flat(alpha, e).flat();
    for (std::size_t row = 0; row < 4 * n; ++row) J(row, col) = img[row];
  }
  return J;
}

double frob(const Mat<double>& m) { return m.frobenius(); }

// which backends to run for measure-class claims
std::vector<Backend> backends_of(const RunConfig& cfg) {
  switch (cfg.backend) {
    case BackendChoice::fd: return {Backend::fd};
    case BackendChoice::dual: return {Backend::dual};
    default: return {Backend::dual, Backend::fd};
  }
}

// run `f(backend)` for the configured backends; returns (primary acc, agreement)
std::pair<Acc, double> two_backend(const RunConfig& cfg,
                                   const std::function<std::vector<double>(Backend)>& f) {
  auto bs = backends_of(cfg);
  std::vector<double> first = f(bs[0]);
  Acc acc;
  for (double v : first) acc.add(v);
  double agree = -1;
  if (bs.size() > 1) {
    std::vector<double> second = f(bs[1]);
    agree = 0;
    for (std::size_t i = 0; i < first.size(); ++i)
      agree = std::max(agree, std::fabs(first[i] - second[i]));
  }
  return {acc, agree};
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<AuditReport> audit_forms(const RunConfig& cfg) {
  std::vector<AuditReport> out;
  for (std::size_t n : cfg.ns)
    for (std::size_t ai = 0; ai < cfg.as.size(); ++ai) {
      double a = cfg.as[ai];
      Slice sl{cfg, out, n, a};
      Rng rng(slice_seed(cfg, n, ai));

      Acc eta_xi, uniformva, charafor, deta_f, recip, jinv, jjrel, jjpair, lift_rt;
      for (std::size_t s = 0; s < cfg.samples; ++s) {
        MPoint<double> p = sample_point(rng, n);
        MTangent<double> X = sample_tangent(rng, n);
        MTangent<double> hX = sample_horizontal(rng, p);
        MTangent<double> hY = sample_horizontal(rng, p);
        for (int alpha = 1; alpha <= 3; ++alpha) {
          MTangent<double> xi = xi_field(alpha, p, a);
          eta_xi.add(eta_eval(alpha, a, p, xi) - 1.0);
          // d eta_alpha kills xi_alpha and the two complementary center axes
          charafor.add(d_eta_eval(alpha, a, p, xi, X));
          for (int beta = 1; beta <= 3; ++beta) {
            if (beta == alpha) continue;
            MTangent<double> dt(n);
            dt.dt[beta - 1] = 1.0;
            charafor.add(d_eta_eval(alpha, a, p, dt, X));
          }
          deta_f.add(d_eta_eval(alpha, a, p, hX, hY) -
                     f_eval(a, p) * d_omega_eval(alpha, p, hX, hY));
          jinv.add(d_eta_eval(alpha, a, p, j_on_D(alpha, p, hX), j_on_D(alpha, p, hY)) -
                   d_eta_eval(alpha, a, p, hX, hY));
          // J_alpha^2 = -Id on D
          MTangent<double> jj = j_on_D(alpha, p, j_on_D(alpha, p, hX));
          jjrel.add((jj + hX).max_abs());
        }
        uniformva.add(omega_eval(1, p, xi_field(1, p, a)) - (1.0 + a * p.z.norm2()));
        double r1 = d_eta_eval(1, a, p, j_on_D(1, p, hX), hY);
        recip.add(r1 - d_eta_eval(2, a, p, j_on_D(2, p, hX), hY));
        recip.add(r1 - d_eta_eval(3, a, p, j_on_D(3, p, hX), hY));
        // J_1 J_2 = J_3 and the (JJ) pairing with measured sign +1
        MTangent<double> j12 = j_on_D(1, p, j_on_D(2, p, hX));
        jjrel.add((j12 - j_on_D(3, p, hX)).max_abs());
        jjpair.add(d_eta_eval(1, a, p, hX, hY) -
                   d_eta_eval(2, a, p, j_on_D(3, p, hX), hY));
        // horizontal lift uniqueness / projection round trip
        MTangent<double> rt = horizontal_lift(p, hX.zq());
        lift_rt.add((rt - hX).max_abs());
      }
      sl.asrt("forms.eta_xi_one", "charaq: eta_alpha(xi_alpha)=1", 1e-12, eta_xi);
      sl.asrt("forms.uniformva", "uniformva: omega_1(xi_1)=1+a|z|^2", 1e-12, uniformva);
      sl.asrt("forms.charafor1", "charaq: d eta_alpha(xi_alpha,X)=d eta_alpha(dt_beta,X)=0",
              1e-10, charafor);
      sl.asrt("forms.deta_f_domega", "confomega: d eta = f d omega on D", 1e-12, deta_f);
      sl.asrt("forms.reciprocity", "reciprocity: d eta_a(J_a X,Y) index-free", 1e-10, recip);
      sl.asrt("forms.j_invariance", "J-invmetric", 1e-10, jinv);
      sl.asrt("forms.jj_relations", "JJ: J_a^2=-1, J_1 J_2=J_3 on D", 1e-12, jjrel);
      sl.asrt("forms.jj_pairing", "JJ: d eta_1(X,Y)=d eta_2(J_3 X,Y), sign +1", 1e-10,
              jjpair);
      sl.asrt("forms.lift_roundtrip", "jjcomu: lift(pi_* V)=V on D", 1e-12, lift_rt);

      // pullback laws under E(M)
      Acc acw, etaconj, hjjh;
      for (std::size_t s = 0; s < cfg.samples; ++s) {
        MPoint<double> p = sample_point(rng, n);
        MTangent<double> V = sample_tangent(rng, n);
        EMElement h = sample_em(rng, n, true, true, true, true);
        Quaternion<double> lhs = pullback_omega(h, p, V);
        Quaternion<double> rhs = h.alpha * omega_quat(p, V) * h.alpha.conj();
        acw.add((lhs - rhs).norm());
        auto so3 = so3_from_unit(UnitQuaternion::normalized(h.alpha));
        // h^* eta needs the isometric subgroup (no H^n translation)
        EMElement h0 = h;
        h0.v = QVector<double>(n);
        for (int alpha = 1; alpha <= 3; ++alpha) {
          double pe = pullback_eta(alpha, a, h0, p, V);
          double sum = 0;
          for (int beta = 1; beta <= 3; ++beta)
            sum += eta_eval(beta, a, p, V) * so3[beta - 1][alpha - 1];
          etaconj.add(pe - sum);
        }
        // h_* J_beta = sum_gamma a_{beta gamma} J_gamma h_* on D
        MTangent<double> hX = sample_horizontal(rng, p);
        MPoint<double> hp = em_act(h0, p);
        MTangent<double> push = em_diff(h0, hX);
        for (int beta = 1; beta <= 3; ++beta) {
          MTangent<double> lhs2 = em_diff(h0, j_on_D(beta, p, hX));
          MTangent<double> rhs2(n);
          for (int gamma = 1; gamma <= 3; ++gamma)
            rhs2 += j_on_D(gamma, hp, push) * so3[beta - 1][gamma - 1];
          hjjh.add((lhs2 - rhs2).max_abs());
        }
      }
      sl.asrt("forms.acw", "acw: h^* omega = alpha omega conj(alpha)", 1e-10, acw);
      sl.asrt("forms.etaconj", "etaconj: h^* eta_a = sum eta_b a_ba", 1e-10, etaconj);
      sl.asrt("forms.hJJh", "hJJh: h_* J_b = sum a_bg J_g h_*", 1e-10, hjjh);

      // translation by u = e_1 does not preserve eta_1
      Acc wit;
      {
        QVector<double> u(n);
        u[0] = Quaternion<double>::real(1.0);
        EMElement h = EMElement::translation({0, 0, 0}, u);
        for (std::size_t s = 0; s < cfg.samples; ++s) {
          MPoint<double> p = sample_point(rng, n);
          MTangent<double> V = sample_tangent(rng, n);
          wit.add(pullback_eta(1, a, h, p, V) - eta_eval(1, a, p, V));
        }
      }
      sl.witness("forms.translation_witness", "rem:translation", 0.01, wit);

      // explicit basis of D: annihilation, rank, bracket-generation
      Acc annih, rank, brack;
      for (std::size_t s = 0; s < std::min<std::size_t>(cfg.samples, 200); ++s) {
        MPoint<double> p = sample_point(rng, n);
        auto basis = d_basis(p);
        for (const auto& v : basis)
          for (int alpha = 1; alpha <= 3; ++alpha) annih.add(omega_eval(alpha, p, v));
        auto ev = symmetric_eigenvalues(tangent_gram(basis));
        rank.add(ev.front() > 1e-8 ? 0.0 : 1.0);  // positive-definite Gram = full rank
        // brackets of basis fields: central parts must span R^3.
        // field(x) = basis member as a function of the base point
        auto field = [&](std::size_t idx, const MPoint<double>& q) {
          return d_basis(q)[idx];
        };
        Mat<double> span(3, 3);
        std::size_t filled = 0;
        for (std::size_t i = 0; i < basis.size() && filled < 9; ++i)
          for (std::size_t j = i + 1; j < basis.size() && filled < 9; ++j) {
            // [X,Y] via directional FD of the polynomial coefficient fields
            const double h = 1e-6;
            auto shift = [&](const MPoint<double>& q, const MTangent<double>& dir,
                             double step) {
              MPoint<double> r = q;
              for (int c = 0; c < 3; ++c) r.t[c] += step * dir.dt[c];
              auto zf = r.z.flat();
              for (std::size_t c = 0; c < zf.size(); ++c) zf[c] += step * dir.dz[c];
              r.z = QVector<double>::from_flat(zf);
              return r;
            };
            MTangent<double> dYX = (field(j, shift(p, basis[i], h)) -
                                    field(j, shift(p, basis[i], -h))) *
                                   (0.5 / h);
            MTangent<double> dXY = (field(i, shift(p, basis[j], h)) -
                                    field(i, shift(p, basis[j], -h))) *
                                   (0.5 / h);
            MTangent<double> br = dYX - dXY;
            for (int c = 0; c < 3; ++c) span(filled % 3, c) += br.dt[c] * (filled + 1);
            ++filled;
          }
        // Gram of the collected central parts: full rank 3 expected
        auto gev = symmetric_eigenvalues(span.transpose() * span);
        brack.add(gev.front() > 1e-10 ? 0.0 : 1.0);
      }
      sl.asrt("forms.d_basis_horizontal", "basisD: omega_a(basis)=0", 1e-12, annih);
      sl.asrt("forms.d_basis_rank", "basisD: rank 4n away from z_k=0", 0.5, rank);
      sl.asrt("forms.cc_bracket", "CC: [D,D] spans the center", 0.5, brack);
    }
  return out;
}

std::vector<AuditReport> audit_invariance(const RunConfig& cfg) {
  std::vector<AuditReport> out;
  for (std::size_t n : cfg.ns)
    for (std::size_t ai = 0; ai < cfg.as.size(); ++ai) {
      double a = cfg.as[ai];
      Slice sl{cfg, out, n, a};
      Rng rng(slice_seed(cfg, n, ai) + 17);

      Acc finv, etainv, metform, wit;
      for (std::size_t s = 0; s < cfg.samples; ++s) {
        MPoint<double> p = sample_point(rng, n);
        MTangent<double> V = sample_tangent(rng, n);
        // h in R^3 x| Sp(n).Sp(1): leaves f invariant
        EMElement h = sample_em(rng, n, true, false, true, true);
        finv.add(f_eval(a, em_act(h, p)) - f_eval(a, p));
        // h in R^3 x Sp(n): leaves every eta_alpha invariant
        EMElement h1 = sample_em(rng, n, true, false, true, false);
        for (int alpha = 1; alpha <= 3; ++alpha)
          etainv.add(pullback_eta(alpha, a, h1, p, V) - eta_eval(alpha, a, p, V));
        // h in R^3 x| Sp(n).Sp(1), alpha generic: leaves d eta_1 o J_1 invariant on D
        MTangent<double> hX = sample_horizontal(rng, p);
        MTangent<double> hY = sample_horizontal(rng, p);
        MPoint<double> hp = em_act(h, p);
        metform.add(
            d_eta_eval(1, a, hp, j_on_D(1, hp, em_diff(h, hX)), em_diff(h, hY)) -
            d_eta_eval(1, a, p, j_on_D(1, p, hX), hY));
        // translation by e_1 breaks the invariance of d eta_1 o J_1
        QVector<double> u(n);
        u[0] = Quaternion<double>::real(1.0);
        EMElement tr = EMElement::translation({0, 0, 0}, u);
        MPoint<double> tp = em_act(tr, p);
        wit.add(d_eta_eval(1, a, tp, j_on_D(1, tp, em_diff(tr, hX)), em_diff(tr, hY)) -
                d_eta_eval(1, a, p, j_on_D(1, p, hX), hY));
      }
      sl.asrt("inv.f_invariant", "eta-inv: R^3 x| Sp(n).Sp(1) leaves f invariant", 1e-12,
              finv);
      sl.asrt("inv.eta_invariant", "eta-inv: R^3 x Sp(n) leaves eta_alpha invariant",
              1e-10, etainv);
      sl.asrt("inv.metric_form_invariant", "eta-inv1: d eta_1 o J_1 invariant",
              1e-10, metform);
      sl.witness("inv.translation_witness", "Cor. parallel: translations move d eta_1 o J_1",
                 0.01, wit);
    }
  return out;
}

std::vector<AuditReport> audit_metric_isometry(const RunConfig& cfg) {
  std::vector<AuditReport> out;
  for (std::size_t n : cfg.ns)
    for (std::size_t ai = 0; ai < cfg.as.size(); ++ai) {
      double a = cfg.as[ai];
      Slice sl{cfg, out, n, a};
      Rng rng(slice_seed(cfg, n, ai) + 31);

      Acc conf, basep, indexind, sym, posdef, spinv, wit;
      for (std::size_t s = 0; s < cfg.samples; ++s) {
        QVector<double> z = sample_z(rng, n);
        QVector<double> X = sample_vec(rng, n);
        QVector<double> Y = sample_vec(rng, n);
        double g = metric_eval(a, z, X, Y);
        // closed-form route: g_a = f * delta
        conf.add(g - (1.0 / (1.0 + a * z.norm2())) * real_inner(X, Y));
        // base point (t, z) must not matter
        MPoint<double> p({rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)}, z);
        basep.add(metric_eval_raw(1, a, p, X, Y) * 0.5 - g);
        // the three index routes agree
        indexind.add(metric_eval(a, z, X, Y, 2) - g);
        indexind.add(metric_eval(a, z, X, Y, 3) - g);
        sym.add(metric_eval(a, z, Y, X) - g);
        for (int alpha = 1; alpha <= 3; ++alpha)
          sym.add(metric_eval(a, z, j_flat(alpha, X), j_flat(alpha, Y)) - g);
        // invariance under z -> A z conj(alpha)
        EMElement h = sample_em(rng, n, false, false, true, true);
        auto act = [&](const QVector<double>& v) {
          return (h.A * v).rmul(h.alpha.conj());
        };
        spinv.add(metric_eval(a, act(z), act(X), act(Y)) - g);
        // translation witness
        QVector<double> u(n);
        u[0] = Quaternion<double>::real(1.0);
        wit.add(metric_eval(a, z + u, X, Y) - g);
      }
      // positive definiteness of the lift-route Gram matrix
      for (std::size_t s = 0; s < std::min<std::size_t>(cfg.samples, 100); ++s) {
        QVector<double> z = sample_z(rng, n);
        Mat<double> gram(4 * n, 4 * n);
        for (std::size_t i = 0; i < 4 * n; ++i)
          for (std::size_t j = 0; j < 4 * n; ++j) {
            std::vector<double> ei(4 * n, 0.0), ej(4 * n, 0.0);
            ei[i] = 1.0;
            ej[j] = 1.0;
            gram(i, j) = metric_eval(a, z, QVector<double>::from_flat(ei),
                                     QVector<double>::from_flat(ej));
          }
        auto ev = symmetric_eigenvalues(gram);
        posdef.add(ev.front() > 0 ? 0.0 : 1.0);
      }
      sl.asrt("metric.conformal_identity", "standardmetric: g_a = f delta",
              1e-10, conf);
      sl.asrt("metric.basepoint_independence", "Kgmetric: choice of lift point", 1e-12,
              basep);
      sl.asrt("metric.index_independence", "KgmetricForm", 1e-10, indexind);
      sl.asrt("metric.symmetric_hermitian", "Kgmetric: symmetric, J_alpha-Hermitian",
              1e-10, sym);
      sl.asrt("metric.positive_definite", "Kgmetric", 0.5, posdef);
      sl.asrt("metric.sp_invariance", "isoquat: Sp(n).Sp(1) invariance", 1e-10, spinv);
      sl.witness("metric.translation_witness", "rem:translation via g_a", 0.01, wit);
    }

  // curvature separation between family members (n = 1, z = (1,0,...,0))
  {
    Slice sl{cfg, out, 1, 0.0};
    std::vector<double> x(4, 0.0);
    x[0] = 1.0;
    auto riem2 = [&](double a, Backend b) {
      return riemann_ricci(MetricField{1, a}, x, b).riemann_norm2();
    };
    auto bs = backends_of(cfg);
    double lo1 = riem2(0.5, bs[0]), hi1 = riem2(2.0, bs[0]);
    double noise = 0;
    if (bs.size() > 1) {
      noise = std::max(std::fabs(lo1 - riem2(0.5, bs[1])),
                       std::fabs(hi1 - riem2(2.0, bs[1])));
    }
    Acc acc;
    acc.add(std::fabs(hi1 - lo1));
    AuditReport& r = sl.base("metric.family_separation",
                             "pro:family: |Riem|^2 separates a=0.5 from a=2", "assert", 1);
    r.max_residual = acc.mx;
    r.mean_residual = acc.mean();
    r.backend_agreement = bs.size() > 1 ? noise : -1;
    r.tolerance = cfg.tol("metric.family_separation", 10.0 * std::max(noise, 1e-12));
    r.lower_bound = true;
    r.status = acc.mx > r.tolerance ? "pass" : "fail";
    r.wall_ms = sl.take_ms();
  }
  return out;
}

std::vector<AuditReport> audit_hyperkahler(const RunConfig& cfg) {
  std::vector<AuditReport> out;
  for (std::size_t n : cfg.ns)
    for (std::size_t ai = 0; ai < cfg.as.size(); ++ai) {
      double a = cfg.as[ai];
      Slice sl{cfg, out, n, a};
      Rng rng(slice_seed(cfg, n, ai) + 47);
      std::size_t light = std::min<std::size_t>(cfg.samples, 200);

      // ASSERT layer: structurally forced identities
      Acc well, pull;
      for (std::size_t s = 0; s < cfg.samples; ++s) {
        MPoint<double> p = sample_point(rng, n);
        QVector<double> uh = sample_vec(rng, n), vh = sample_vec(rng, n);
        for (int alpha = 1; alpha <= 3; ++alpha) {
          // well-definedness: a second preimage along the R_alpha orbit
          double v1 = omega_descended(alpha, a, p, uh, vh);
          SolvableIndex idx(alpha, {rng.uniform(-2, 2), rng.uniform(-2, 2),
                                    rng.uniform(-2, 2)});
          MPoint<double> p2 = rho_act(idx, p, a);
          well.add(omega_descended(alpha, a, p2, uh, vh) - v1);
          // pi_alpha^* Omega_alpha = d eta_alpha on all of TM
          MTangent<double> X = sample_tangent(rng, n), Y = sample_tangent(rng, n);
          QVector<double> u = pi_alpha(alpha, a, p);
          pull.add(omega_descended(alpha, a, u, pi_alpha_diff(alpha, a, p, X),
                                   pi_alpha_diff(alpha, a, p, Y)) -
                   d_eta_eval(alpha, a, p, X, Y));
        }
      }
      sl.asrt("hk.omega_well_defined", "welldeined2form", 1e-9, well);
      sl.asrt("hk.pullback_omega", "Om1equi: pi_a^* Omega_a = d eta_a on M", 1e-9, pull);

      // d(d eta) = 0 over the ambient coordinates
      {
        auto run = [&](Backend b) {
          Rng r2(slice_seed(cfg, n, ai) + 53);
          std::vector<double> vals;
          for (std::size_t s = 0; s < std::min<std::size_t>(light, 50); ++s) {
            MPoint<double> p = sample_point(r2, n);
            auto x = flat_m(p);
            std::vector<double> u = flat_tangent(sample_tangent(r2, n));
            std::vector<double> v = flat_tangent(sample_tangent(r2, n));
            std::vector<double> w = flat_tangent(sample_tangent(r2, n));
            for (int alpha = 1; alpha <= 3; ++alpha) {
              auto form = [alpha, a](const auto& xx, const std::vector<double>& pp,
                                     const std::vector<double>& qq) {
                using T = std::decay_t<decltype(xx[0])>;
                MPoint<T> mp = unflat_m(xx);
                MTangent<T> X({T(pp[0]), T(pp[1]), T(pp[2])},
                              std::vector<T>(pp.begin() + 3, pp.end()));
                MTangent<T> Y({T(qq[0]), T(qq[1]), T(qq[2])},
                              std::vector<T>(qq.begin() + 3, qq.end()));
                return d_eta_eval(alpha, a, mp, X, Y);
              };
              vals.push_back(numeric_d2(form, x, u, v, w, b));
            }
          }
          return vals;
        };
        auto [acc, agree] = two_backend(cfg, run);
        sl.asrt("hk.dd_eta_zero", "d^2 = 0 for eta_alpha", 1e-8, acc, agree);
      }

      // MEASURE layer: the headline geometric quantities
      // |d Theta_alpha| by the direct (g o J) route and the pullback route
      for (int route = 0; route < 2; ++route) {
        auto run = [&](Backend b) {
          Rng r2(slice_seed(cfg, n, ai) + 61);
          std::vector<double> vals;
          for (std::size_t s = 0; s < std::min<std::size_t>(light, 60); ++s) {
            QVector<double> z = sample_z(r2, n);
            auto x = z.flat();
            std::vector<double> u(4 * n), v(4 * n), w(4 * n);
            for (auto& c : u) c = r2.normal();
            for (auto& c : v) c = r2.normal();
            for (auto& c : w) c = r2.normal();
            for (int alpha = 1; alpha <= 3; ++alpha) {
              auto form = [alpha, a, route](const auto& xx, const std::vector<double>& pp,
                                            const std::vector<double>& qq) {
                using T = std::decay_t<decltype(xx[0])>;
                QVector<T> zz = QVector<T>::from_flat(xx);
                QVector<T> P = promote_qv<T>(pp), Q = promote_qv<T>(qq);
                return route == 0 ? theta_direct(alpha, a, zz, P, Q)
                                  : theta_pullback(alpha, a, zz, P, Q);
              };
              vals.push_back(numeric_d2(form, x, u, v, w, b));
            }
          }
          return vals;
        };
        auto [acc, agree] = two_backend(cfg, run);
        sl.measure(route == 0 ? "hk.dtheta_direct" : "hk.dtheta_pullback",
                   route == 0 ? "2formclosed1/qKform: |d(g o J_alpha)|"
                              : "2formclosed1: |d(tau^* Omega_alpha)|",
                   acc, agree);
      }

      // |d Omega_alpha| downstairs on H^n
      {
        auto run = [&](Backend b) {
          Rng r2(slice_seed(cfg, n, ai) + 67);
          std::vector<double> vals;
          for (std::size_t s = 0; s < std::min<std::size_t>(light, 60); ++s) {
            QVector<double> z = sample_z(r2, n);
            auto x = z.flat();
            std::vector<double> u(4 * n), v(4 * n), w(4 * n);
            for (auto& c : u) c = r2.normal();
            for (auto& c : v) c = r2.normal();
            for (auto& c : w) c = r2.normal();
            for (int alpha = 1; alpha <= 3; ++alpha) {
              auto form = [alpha, a](const auto& xx, const std::vector<double>& pp,
                                     const std::vector<double>& qq) {
                using T = std::decay_t<decltype(xx[0])>;
                QVector<T> zz = QVector<T>::from_flat(xx);
                return omega_descended(alpha, a, zz, promote_qv<T>(pp),
                                       promote_qv<T>(qq));
              };
              vals.push_back(numeric_d2(form, x, u, v, w, b));
            }
          }
          return vals;
        };
        auto [acc, agree] = two_backend(cfg, run);
        sl.measure("hk.d_omega_descended", "welldeined2form: |d Omega_alpha| on H^n", acc,
                   agree);
      }

      if (n == 1) {
        // curvature-level measurements at desk scale
        auto ric = [&](Backend b) {
          Rng r2(slice_seed(cfg, n, ai) + 71);
          std::vector<double> vals;
          for (std::size_t s = 0; s < std::min<std::size_t>(light, 40); ++s) {
            auto x = sample_z(r2, 1).flat();
            vals.push_back(frob(riemann_ricci(MetricField{1, a}, x, b).ricci));
          }
          return vals;
        };
        auto [racc, ragree] = two_backend(cfg, ric);
        sl.measure("hk.ricci_norm", "qKform: |Ric(g_a)|", racc, ragree);

        auto nj = [&](Backend b) {
          Rng r2(slice_seed(cfg, n, ai) + 73);
          std::vector<double> vals;
          Mat<double> J1 = j_matrix(1, 1);
          auto jf = [&J1](const auto& xx) {
            using T = std::decay_t<decltype(xx[0])>;
            Mat<T> m(J1.rows, J1.cols);
            for (std::size_t i = 0; i < J1.a.size(); ++i) m.a[i] = T(J1.a[i]);
            return m;
          };
          for (std::size_t s = 0; s < std::min<std::size_t>(light, 40); ++s) {
            auto x = sample_z(r2, 1).flat();
            vals.push_back(nabla_j_norm(MetricField{1, a}, jf, x, b));
          }
          return vals;
        };
        auto [jacc, jagree] = two_backend(cfg, nj);
        sl.measure("hk.nabla_j", "qKform: |nabla J_1|", jacc, jagree);

        auto hol = [&](Backend b) {
          std::vector<double> vals;
          std::vector<double> base(4, 0.0);
          base[0] = 0.5;
          MetricField g{1, a};
          Mat<double> G = g(base);
          std::array<std::pair<std::size_t, std::size_t>, 3> planes{
              {{0, 1}, {0, 2}, {2, 3}}};
          for (auto [i, j] : planes) {
            Mat<double> P = parallel_transport(g, rectangle_loop(base, i, j, 0.1), b, 60);
            double orth = (P.transpose() * G * P - G).frobenius();
            double comm = 0;
            for (int alpha = 1; alpha <= 3; ++alpha) {
              Mat<double> J = j_matrix(alpha, 1);
              comm = std::max(comm, (P * J - J * P).frobenius() / P.frobenius());
            }
            vals.push_back(orth + comm);
          }
          return vals;
        };
        auto [hacc, hagree] = two_backend(cfg, hol);
        sl.measure("hk.holonomy_spn", "spnholonomy: holonomy deviation from Sp(n)", hacc,
                   hagree);
      }
    }
  return out;
}

std::vector<AuditReport> audit_cc_bounds(const RunConfig& cfg) {
  std::vector<AuditReport> out;
  const std::size_t n = 1;  // desk scale for the distance bounds
  for (std::size_t ai = 0; ai < cfg.as.size(); ++ai) {
    double a = cfg.as[ai];
    Slice sl{cfg, out, n, a};
    Rng rng(slice_seed(cfg, n, ai) + 83);
    double A = std::max(1.0, std::sqrt(a));
    double B = std::sqrt(std::min(1.0, a));

    Acc lower, radial, radial_horiz;
    const int segments = 6, quad = 64;
    for (std::size_t s = 0; s < cfg.samples; ++s) {
      // horizontal curve from the origin driven by piecewise-constant controls
      QVector<double> z(n);
      double length = 0;
      for (int seg = 0; seg < segments; ++seg) {
        QVector<double> ctrl = sample_vec(rng, n);
        double scale = rng.uniform(0.1, 0.8);
        for (auto& q : ctrl.e) q = q * scale;
        double speed = std::sqrt(ctrl.norm2());
        // Simpson quadrature of sqrt(f) |dz| along the linear piece
        double acc = 0;
        for (int q = 0; q <= quad; ++q) {
          double t = static_cast<double>(q) / quad;
          QVector<double> zt = z + ctrl * t;
          double w = (q == 0 || q == quad) ? 1.0 : (q % 2 ? 4.0 : 2.0);
          acc += w * std::sqrt(1.0 / (1.0 + a * zt.norm2()));
        }
        length += speed * acc / (3.0 * quad);
        z += ctrl;
      }
      double sum_norm = 0;
      for (std::size_t k = 0; k < n; ++k) sum_norm += z[k].norm();
      double bound = std::log(1.0 + sum_norm) / (n * A);
      lower.add(std::max(0.0, bound - length - 1e-4));
    }
    for (std::size_t s = 0; s < cfg.samples; ++s) {
      QVector<double> gamma = sample_z(rng, n);
      double r = std::sqrt(gamma.norm2());
      // the radial segment s -> (0, s gamma) is horizontal: Im|gamma|^2 = 0
      MPoint<double> p({0, 0, 0}, gamma.rmul(Quaternion<double>::real(0.37)));
      MTangent<double> dot(n);
      dot.dz = gamma.flat();
      radial_horiz.add(omega_quat(p, dot).norm());
      double acc = 0;
      const int qn = 512;
      for (int q = 0; q <= qn; ++q) {
        double t = static_cast<double>(q) / qn;
        double w = (q == 0 || q == qn) ? 1.0 : (q % 2 ? 4.0 : 2.0);
        acc += w * r / std::sqrt(1.0 + a * t * t * r * r);
      }
      double length = acc / (3.0 * qn);
      double bound = std::log(r + std::sqrt(1.0 + r * r)) / B;
      radial.add(std::max(0.0, length - bound - 1e-4));
    }
    sl.asrt("cc.lower_bound", "estimate1: L >= log(1+sum|x_i|)/(nA)", 1e-12, lower);
    sl.asrt("cc.radial_upper", "eva1: radial L <= log(|g|+sqrt(1+|g|^2))/B", 1e-12,
            radial);
    sl.asrt("cc.radial_horizontal", "pro:complete: omega(mu') = 0 on radial segments",
            1e-12, radial_horiz);
  }
  return out;
}

std::vector<AuditReport> audit_lift_construction(const RunConfig& cfg) {
  std::vector<AuditReport> out;
  for (std::size_t n : cfg.ns)
    for (std::size_t ai = 0; ai < cfg.as.size(); ++ai) {
      double a = cfg.as[ai];
      (void)a;  // the lift is metric-independent; a only labels the slice
      Slice sl{cfg, out, n, a};
      Rng rng(slice_seed(cfg, n, ai) + 89);

      Acc diagram, n0, spn_d;
      Acc sp1_defect;
      for (std::size_t s = 0; s < cfg.samples; ++s) {
        MPoint<double> p = sample_point(rng, n);
        LinearIsometry h{random_sp_n(rng, n), random_unit_quaternion(rng).q};
        MPoint<double> q = tilde_h(h, p);
        // pi o h~ = h o pi
        diagram.add((q.z - h.map(p.z)).norm2());
        // N_0 is carried to N_0
        double r = 0.5 * p.z.norm2();
        MPoint<double> on_n0({-r, -r, -r}, p.z);
        MPoint<double> img = tilde_h(h, on_n0);
        double r2 = 0.5 * img.z.norm2();
        for (int c = 0; c < 3; ++c) n0.add(img.t[c] + r2);
        // Sp(n) part alone preserves D...
        LinearIsometry hA{h.A, Quaternion<double>::real(1.0)};
        MTangent<double> hX = sample_horizontal(rng, p);
        MPoint<double> pA = tilde_h(hA, p);
        spn_d.add(horizontal_defect(pA, tilde_h_diff(hA, p, hX)));
        // ...while a generic Sp(1) twist does not: measured, not asserted
        sp1_defect.add(horizontal_defect(q, tilde_h_diff(h, p, hX)));
      }
      sl.asrt("lift.diagram", "diamap: pi o h~ = h o pi", 1e-20, diagram);
      sl.asrt("lift.n0_section", "lifth: h~ preserves N_0", 1e-12, n0);
      sl.asrt("lift.spn_preserves_D", "pro:isoq for A in Sp(n)", 1e-9, spn_d);
      sl.measure("lift.sp1_d_defect",
                 "pro:isoq for generic Sp(1) part: horizontal defect of h~_*", sp1_defect,
                 -1);
    }
  return out;
}

std::vector<AuditReport> audit_quotients(const RunConfig& cfg) {
  std::vector<AuditReport> out;
  for (std::size_t n : cfg.ns)
    for (std::size_t ai = 0; ai < cfg.as.size(); ++ai) {
      double a = cfg.as[ai];
      Slice sl{cfg, out, n, a};
      Rng rng(slice_seed(cfg, n, ai) + 97);

      Acc descends, proj_chain, table;
      for (std::size_t s = 0; s < cfg.samples; ++s) {
        MPoint<double> p = sample_point(rng, n), q = sample_point(rng, n);
        for (int alpha = 1; alpha <= 3; ++alpha) {
          QuotientPoint lhs = quotient_project(alpha, m_mul(p, q));
          QuotientPoint rhs =
              quotient_mul(quotient_project(alpha, p), quotient_project(alpha, q));
          descends.add(lhs.t - rhs.t);
          descends.add(std::sqrt((lhs.z - rhs.z).norm2()));
          // pi = pi-hat o p_alpha and pi_alpha = pi-hat_alpha o p_alpha
          QuotientPoint qp = quotient_project(alpha, p);
          MPoint<double> rep({0, 0, 0}, qp.z);
          rep.t[alpha - 1] = qp.t;
          proj_chain.add(
              std::sqrt((pi_alpha(alpha, a, rep) - pi_alpha(alpha, a, p)).norm2()));
        }
        // section pushforward table (pro:section1), coefficients read at z
        QVector<double> z = p.z;
        for (std::size_t k = 0; k < n; ++k) {
          QVector<double> vk(n);
          vk[k] = z[k];
          auto check = [&](int alpha, const QVector<double>& vin, double want_dt,
                           const QVector<double>& want_dz) {
            QuotientTangent got = section_h_diff(alpha, z, vin);
            table.add(got.dt - want_dt);
            table.add(std::sqrt((got.dz - want_dz).norm2()));
          };
          double r2 = z[k].norm2();
          auto bar = [&](int which) { return d_basis_bar(which, MPoint<double>({}, z), k); };
          QVector<double> zero(n);
          // alpha = 1: v -> -w, J1 v -> v, J2 v -> -s-bar, J3 v -> u-bar
          // (-w has central part -|z_k|^2 and dz part -(w-bar) = +z_k i)
          check(1, vk, -r2, zero - bar(1));
          check(1, j_flat(1, vk), 0.0, vk);
          check(1, j_flat(2, vk), 0.0, zero - bar(3));
          check(1, j_flat(3, vk), 0.0, bar(2));
          // alpha = 2: v -> -u, J1 v -> s-bar, J2 v -> v, J3 v -> -w-bar
          check(2, vk, -r2, zero - bar(2));
          check(2, j_flat(1, vk), 0.0, bar(3));
          check(2, j_flat(2, vk), 0.0, vk);
          check(2, j_flat(3, vk), 0.0, zero - bar(1));
          // alpha = 3: v -> -s, J1 v -> -u-bar, J2 v -> w-bar, J3 v -> v
          check(3, vk, -r2, zero - bar(3));
          check(3, j_flat(1, vk), 0.0, zero - bar(2));
          check(3, j_flat(2, vk), 0.0, bar(1));
          check(3, j_flat(3, vk), 0.0, vk);
        }
      }
      sl.asrt("quot.law_descends", "p123: the group law descends to M/R^2", 1e-12,
              descends);
      sl.asrt("quot.projection_chain", "pip123/hatp123", 1e-12, proj_chain);
      sl.asrt("quot.section_table", "pro:section1 pushforward table", 1e-10, table);

      // the alpha = 1 quotient vs the complex Heisenberg group N
      Acc hom, omega_match, eta_match, antihol, u2ninv;
      for (std::size_t s = 0; s < cfg.samples; ++s) {
        MPoint<double> mp = sample_point(rng, n), mq = sample_point(rng, n);
        QuotientPoint p1 = quotient_project(1, mp), q1 = quotient_project(1, mq);
        NPoint lhs = phi_iso(quotient_mul(p1, q1));
        NPoint rhs = n_mul(phi_iso(p1), phi_iso(q1));
        hom.add(lhs.t - rhs.t);
        for (std::size_t k = 0; k < lhs.u.size(); ++k)
          hom.add(std::abs(lhs.u[k] - rhs.u[k]));
        // phi^* omega_N = omega-hat_1 and phi^* eta_N = eta-hat_1
        MTangent<double> V = sample_tangent(rng, n);
        QuotientTangent vq{V.dt[0], V.zq()};
        double what1 = V.dt[0] + im_component(herm_inner(p1.z, V.zq()), 1);
        double wN = omega_N(phi_iso(p1), phi_iso_diff(vq));
        omega_match.add(wN - what1);
        double fz = 1.0 / (1.0 + a * p1.z.norm2());
        eta_match.add(f_N(a, phi_iso(p1).u) * wN - fz * what1);
        // anti-holomorphy: psi(v i-bar) = -i psi(v)
        QVector<double> vhat = sample_vec(rng, n);
        CVec left = psi_map(j_flat(1, vhat));
        CVec right = cvec_scale(psi_map(vhat), Cx(0.0, -1.0));
        for (std::size_t k = 0; k < left.size(); ++k)
          antihol.add(std::abs(left[k] - right[k]));
        // U(2n) invariance of g_N
        CVec u = psi_map(sample_z(rng, n));
        CVec uh = psi_map(sample_vec(rng, n)), vh = psi_map(sample_vec(rng, n));
        auto U = random_unitary(rng, 2 * n);
        u2ninv.add(g_N_eval(a, unitary_apply(U, u), unitary_apply(U, uh),
                            unitary_apply(U, vh)) -
                   g_N_eval(a, u, uh, vh));
      }
      sl.asrt("quot.phi_homomorphism", "prediff: phi is a group isomorphism", 1e-12, hom);
      sl.asrt("quot.phi_omega", "coin1form: phi^* omega_N = omega-hat_1", 1e-10,
              omega_match);
      sl.asrt("quot.phi_eta", "indcucedform: phi^* eta_N = eta-hat_1", 1e-10, eta_match);
      sl.asrt("quot.anti_holomorphy", "hatphiJ: phi-hat_* J_1 = J'_C phi-hat_*", 1e-10,
              antihol);
      sl.asrt("quot.u2n_invariance", "Bflat: U(2n) invariance of g_N", 1e-10, u2ninv);

      // sign-resolved comparison of (psi o tau_1)^* g_N with +/- g_a
      {
        Rng r2(slice_seed(cfg, n, ai) + 101);
        Acc plus, minus;
        for (std::size_t s = 0; s < std::min<std::size_t>(cfg.samples, 300); ++s) {
          QVector<double> z = sample_z(r2, n);
          QVector<double> X = sample_vec(r2, n), Y = sample_vec(r2, n);
          CVec u = psi_map(tau(1, a, z));
          CVec du1 = psi_map(dtau(1, a, z, X)), du2 = psi_map(dtau(1, a, z, Y));
          double pulled = g_N_eval(a, u, du1, du2);
          double gval = metric_eval(a, z, X, Y);
          plus.add(pulled - gval);
          minus.add(pulled + gval);
        }
        const Acc& best = plus.mx <= minus.mx ? plus : minus;
        Slice sl2{cfg, out, n, a};
        sl2.measure(plus.mx <= minus.mx ? "quot.antimetric_plus" : "quot.antimetric_minus",
                    "antimetric: min over signs of |(psi o tau_1)^* g_N -+ g_a|", best,
                    -1);
      }

      // Bochner tensor norm of g_N on C^{2n} (curvature only at n = 1)
      if (n == 1) {
        auto run = [&](Backend b) {
          Rng r2(slice_seed(cfg, n, ai) + 103);
          std::vector<double> vals;
          for (int s = 0; s < 20; ++s) {
            CVec u = psi_map(sample_z(r2, 1));
            vals.push_back(bochner_norm(NMetricField{1, a}, cvec_flat(u), b));
          }
          return vals;
        };
        auto [acc, agree] = two_backend(cfg, run);
        sl.measure("quot.bochner_norm", "Bflat: Bochner tensor of g_N on C^2", acc, agree);
      }
    }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::string> audit_names() {
  return {"forms",     "invariance", "metric", "hyperkahler",
          "ccbounds",  "lift",       "quotients"};
}

std::vector<AuditReport> run_audits(const RunConfig& cfg) {
  std::vector<AuditReport> out;
  auto want = [&](const std::string& name) {
    if (cfg.audits.empty()) return true;
    for (const auto& s : cfg.audits)
      if (s == name) return true;
    return false;
  };
  auto append = [&](std::vector<AuditReport> r) {
    out.insert(out.end(), r.begin(), r.end());
  };
  if (want("forms")) append(audit_forms(cfg));
  if (want("invariance")) append(audit_invariance(cfg));
  if (want("metric")) append(audit_metric_isometry(cfg));
  if (want("hyperkahler")) append(audit_hyperkahler(cfg));
  if (want("ccbounds")) append(audit_cc_bounds(cfg));
  if (want("lift")) append(audit_lift_construction(cfg));
  if (want("quotients")) append(audit_quotients(cfg));
  return out;
}

int report_exit_code(const std::vector<AuditReport>& reports) {
  bool assert_fail = false, backend_fail = false;
  for (const auto& r : reports) {
    if (r.status == "fail") assert_fail = true;
    if (r.status == "backend-disagreement") backend_fail = true;
  }
  if (assert_fail) return 1;
  if (backend_fail) return 3;
  return 0;
}

}  // namespace qcc
