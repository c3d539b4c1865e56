#include "rav/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "rav/criterion.hpp"
#include "rav/rng.hpp"

namespace rav {

void Config::validate_fields() const {
  check(tol_fix > 0 && tol_res > 0 && tol_fstable > 0, "BadConfig",
        "tolerances must be positive");
  check(denom_bound >= 1, "BadConfig", "denom_bound must be >= 1");
  check(max_iters >= 1, "BadConfig", "max_iters must be >= 1");
  check(threads >= 1, "BadConfig", "threads must be >= 1");
}

bool CertifyReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.pass; });
}

namespace {

Eigen::MatrixXd assemble_j(const Eigen::MatrixXd& x, const Eigen::MatrixXd& yinv,
                           const Eigen::MatrixXd& y) {
  int g = static_cast<int>(x.rows());
  Eigen::MatrixXd xyinv = x * yinv;
  Eigen::MatrixXd j(2 * g, 2 * g);
  j.topLeftCorner(g, g) = -xyinv;
  j.topRightCorner(g, g) = -y - xyinv * x;
  j.bottomLeftCorner(g, g) = yinv;
  j.bottomRightCorner(g, g) = yinv * x;
  return j;
}

struct GnOut {
  bool converged = false;
  Eigen::MatrixXd y;
  double residual = std::numeric_limits<double>::infinity();
  int iters = 0;
};

// Minimize ||(I - Q Q^t) J(X + iY) Q||_F over symmetric positive definite Y,
// X pinned; Levenberg-damped Gauss-Newton with an analytic Jacobian in the
// free coordinates vech(Y).
GnOut stabilize_plane(const Eigen::MatrixXd& qb, const Eigen::MatrixXd& x,
                      const Eigen::MatrixXd& y0, const Config& cfg) {
  const int g = static_cast<int>(x.rows());
  const int r = static_cast<int>(qb.cols());
  const int nvar = g * (g + 1) / 2;
  Eigen::MatrixXd perp = Eigen::MatrixXd::Identity(2 * g, 2 * g) - qb * qb.transpose();

  auto yinv_of = [&](const Eigen::MatrixXd& y) -> std::optional<Eigen::MatrixXd> {
    Eigen::LLT<Eigen::MatrixXd> llt(y);
    if (llt.info() != Eigen::Success) return std::nullopt;
    Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(g, g));
    return 0.5 * (inv + inv.transpose()).eval();
  };
  auto residual_of = [&](const Eigen::MatrixXd& y,
                         const Eigen::MatrixXd& yinv) -> Eigen::MatrixXd {
    return perp * (assemble_j(x, yinv, y) * qb);
  };

  GnOut out;
  out.y = y0;
  std::optional<Eigen::MatrixXd> yinv = yinv_of(out.y);
  if (!yinv) return out;
  Eigen::MatrixXd rm = residual_of(out.y, *yinv);
  out.residual = rm.norm();
  double damping = 1e-8;

  while (out.residual > cfg.tol_res && out.iters < cfg.max_iters) {
    ++out.iters;
    Eigen::MatrixXd jac(2 * g * r, nvar);
    int col = 0;
    for (int p = 0; p < g; ++p)
      for (int qq = p; qq < g; ++qq, ++col) {
        Eigen::MatrixXd s = Eigen::MatrixXd::Zero(g, g);
        s(p, qq) = 1.0;
        s(qq, p) = 1.0;
        Eigen::MatrixXd dyinv = -(*yinv) * s * (*yinv);
        Eigen::MatrixXd dj(2 * g, 2 * g);
        dj.topLeftCorner(g, g) = -x * dyinv;
        dj.topRightCorner(g, g) = -s - x * dyinv * x;
        dj.bottomLeftCorner(g, g) = dyinv;
        dj.bottomRightCorner(g, g) = dyinv * x;
        Eigen::MatrixXd dr = perp * (dj * qb);
        jac.col(col) = Eigen::Map<Eigen::VectorXd>(dr.data(), dr.size());
      }
    Eigen::VectorXd rv = Eigen::Map<Eigen::VectorXd>(rm.data(), rm.size());
    Eigen::VectorXd grad = jac.transpose() * rv;
    Eigen::MatrixXd gram = jac.transpose() * jac;

    bool improved = false;
    for (int attempt = 0; attempt < 40 && !improved; ++attempt) {
      Eigen::MatrixXd h = gram;
      h.diagonal().array() += damping;
      Eigen::VectorXd delta = h.ldlt().solve(-grad);
      Eigen::MatrixXd ytrial = out.y;
      int idx = 0;
      for (int p = 0; p < g; ++p)
        for (int qq = p; qq < g; ++qq, ++idx) {
          ytrial(p, qq) += delta(idx);
          if (p != qq) ytrial(qq, p) += delta(idx);
        }
      std::optional<Eigen::MatrixXd> yinv_trial = yinv_of(ytrial);
      if (yinv_trial) {
        Eigen::MatrixXd rm_trial = residual_of(ytrial, *yinv_trial);
        double rn_trial = rm_trial.norm();
        if (rn_trial < out.residual) {
          out.y = ytrial;
          yinv = yinv_trial;
          rm = rm_trial;
          out.residual = rn_trial;
          damping = std::max(damping * 0.25, 1e-14);
          improved = true;
        }
      }
      if (!improved) damping *= 8.0;
    }
    if (!improved) break;  // damping exhausted; keep the best point
  }
  out.converged = out.residual <= cfg.tol_res;
  return out;
}

}  // namespace

SearchResult density_search(const SiegelPoint& z0_in, int alpha, int lambda, int k, double eps,
                            const Config& cfg) {
  cfg.validate_fields();
  check(eps > 0, "BadConfig", "eps must be positive");
  int g = z0_in.g;
  check(k >= 1 && k <= g - 1, "BadK", "k must be in 1..g-1");
  ExactMatrix m = standard_M(alpha, lambda, g);
  ExactMatrix t = involution_T(m);
  validate(z0_in);
  check(in_fixed_locus(m, z0_in, cfg.tol_fix), "NotInFixedLocus", "Z0 must satisfy 2 Re Z = M");

  SiegelPoint z0 = z0_in.to_float_point();
  Eigen::MatrixXd mf = to_float(m);
  Eigen::MatrixXd x = 0.5 * mf;
  Eigen::MatrixXd y0 = z0.yf;
  Eigen::MatrixXd j0 = complex_structure(z0).jf;
  // Z in C^g coordinates of homology vectors, for the Hodge-side check
  Eigen::MatrixXcd zc = z0.z_float();
  QTensor sq = siegel_q(g);
  Eigen::MatrixXcd eh = Eigen::MatrixXcd::Identity(g, g);
  ExactMatrix e = symplectic_form_exact(g);

  // eigenvectors of T: a_i with eigenvalue +1, (-M e_j, 2 e_j) with -1
  std::vector<ExactMatrix> evecs;
  for (int i = 0; i < g; ++i) {
    ExactMatrix v(2 * g, 1);
    v.at(i, 0) = QScalar(1);
    evecs.push_back(std::move(v));
  }
  for (int jcol = 0; jcol < g; ++jcol) {
    ExactMatrix v(2 * g, 1);
    for (int i = 0; i < g; ++i) v.at(i, 0) = -m.at(i, jcol);
    v.at(g + jcol, 0) = QScalar(2);
    evecs.push_back(std::move(v));
  }

  SearchResult res;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  bool more = true;
  while (more) {
    // seed plane from the chosen eigenvectors
    ExactMatrix v(2 * g, k);
    for (int c = 0; c < k; ++c)
      for (int row = 0; row < 2 * g; ++row)
        v.at(row, c) = evecs[static_cast<std::size_t>(idx[static_cast<std::size_t>(c)])].at(row, 0);

    // advance the combination counter now so `continue` is safe
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == 2 * g - k + pos) --pos;
    if (pos < 0) {
      more = false;
    } else {
      ++idx[static_cast<std::size_t>(pos)];
      for (int j2 = pos + 1; j2 < k; ++j2)
        idx[static_cast<std::size_t>(j2)] = idx[static_cast<std::size_t>(j2 - 1)] + 1;
    }

    Eigen::MatrixXd vf = to_float(v);
    Eigen::MatrixXd span(2 * g, 2 * k);
    span.leftCols(k) = vf;
    span.rightCols(k) = j0 * vf;
    RealPlane l0 = RealPlane::from_span(span);
    if (l0.r != 2 * k) continue;

    // Hodge-side exactness at the start point (holds for the universal q)
    Eigen::MatrixXcd w = vf.topRows(g).cast<std::complex<double>>() +
                         zc * vf.bottomRows(g).cast<std::complex<double>>();
    try {
      if (!check_Ek(sq, w, eh, 1e-9)) continue;
    } catch (const DomainError&) {
      continue;
    }

    RationalPlane p;
    try {
      p = rational_approx_fixed(t, l0, cfg.denom_bound, cfg.tol_fstable);
    } catch (const DomainError&) {
      ++res.planes_tried;
      continue;
    }
    if ((p.basis().transpose() * e * p.basis()).rank() != 2 * k) {
      ++res.planes_tried;
      continue;
    }
    ++res.planes_tried;

    RealPlane pr = RealPlane::of(p);
    GnOut gn = stabilize_plane(pr.b, x, y0, cfg);
    double displacement = gn.y.size() == 0 ? std::numeric_limits<double>::infinity()
                                           : max_abs(gn.y - y0);
    if (gn.residual < res.best_residual) {
      res.best_residual = gn.residual;
      res.best_displacement = displacement;
    }
    if (gn.converged && displacement <= eps) {
      DensityWitness wit;
      wit.g = g;
      wit.k = k;
      wit.alpha = alpha;
      wit.lambda = lambda;
      wit.m = m;
      wit.t = t;
      wit.z_start = z0_in;
      wit.z_found = SiegelPoint::floating(x, gn.y);
      wit.plane = p;
      wit.j_residual = gn.residual;
      wit.displacement = displacement;
      wit.eps = eps;
      wit.cfg = cfg;
      res.success = true;
      res.witness = std::move(wit);
      res.best_residual = gn.residual;
      res.best_displacement = displacement;
      return res;
    }
  }
  res.failure = "NoConvergence";
  return res;
}

CertifyReport certify(const DensityWitness& w) {
  CertifyReport rep;
  auto add = [&](const std::string& name, bool pass, double value) {
    rep.entries.push_back({name, pass, value});
  };

  double fix_off = max_abs(2.0 * w.z_found.x_float() - to_float(w.m));
  add("fixed_locus", in_fixed_locus(w.m, w.z_found, w.cfg.tol_fix), fix_off);

  const ExactMatrix& b = w.plane.basis();
  bool t_ok = w.t.rows() == b.rows() &&
              ExactMatrix::hstack(b, w.t * b).rank() == b.cols();
  add("plane_t_stable", t_ok, t_ok ? 0.0 : 1.0);

  int srank = b.cols() == 0
                  ? 0
                  : (b.transpose() * symplectic_form_exact(w.g) * b).rank();
  add("symplectic_rank", srank == 2 * w.k, static_cast<double>(srank));

  RealPlane pr = RealPlane::of(w.plane);
  Eigen::MatrixXd j = complex_structure(w.z_found).jf;
  double resid =
      ((Eigen::MatrixXd::Identity(2 * w.g, 2 * w.g) - pr.projector()) * (j * pr.b)).norm();
  add("j_residual", resid <= w.cfg.tol_res, resid);

  double disp = std::max(max_abs(w.z_found.x_float() - w.z_start.x_float()),
                         max_abs(w.z_found.y_float() - w.z_start.y_float()));
  add("displacement", disp <= w.eps, disp);
  return rep;
}

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

SampleTable sample_density(int alpha, int lambda, int g, int k, int n_samples,
                           const std::vector<double>& eps_schedule, unsigned long seed,
                           const Config& cfg) {
  cfg.validate_fields();
  check(n_samples >= 1, "BadConfig", "n_samples must be >= 1");
  check(!eps_schedule.empty(), "BadConfig", "eps schedule must be nonempty");
  for (double eps : eps_schedule) check(eps > 0, "BadConfig", "eps must be positive");
  check(k >= 1 && k <= g - 1, "BadK", "k must be in 1..g-1");
  ExactMatrix m = standard_M(alpha, lambda, g);
  Eigen::MatrixXd xf = 0.5 * to_float(m);

  SampleTable table;
  table.alpha = alpha;
  table.lambda = lambda;
  table.g = g;
  table.k = k;
  table.n = n_samples;
  table.seed = seed;
  table.eps_schedule = eps_schedule;
  table.rows.resize(static_cast<std::size_t>(n_samples));

  auto run_sample = [&](int i) {
    SampleRow& row = table.rows[static_cast<std::size_t>(i)];
    row.index = i;
    row.seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    Rng rng(row.seed);
    Eigen::MatrixXd a(g, g);
    for (int r = 0; r < g; ++r)
      for (int c = 0; c < g; ++c) a(r, c) = rng.normal();
    Eigen::MatrixXd y0 = a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(g, g);
    SiegelPoint z0 = SiegelPoint::floating(xf, y0);
    for (double eps : eps_schedule) {
      SearchResult sr = density_search(z0, alpha, lambda, k, eps, cfg);
      SampleCell cell;
      cell.eps = eps;
      cell.success = sr.success;
      cell.residual = sr.success ? sr.witness->j_residual : sr.best_residual;
      cell.displacement = sr.success ? sr.witness->displacement : sr.best_displacement;
      cell.planes_tried = sr.planes_tried;
      row.cells.push_back(cell);
    }
  };

  int threads = std::min(cfg.threads, n_samples);
  if (threads <= 1) {
    for (int i = 0; i < n_samples; ++i) run_sample(i);
  } else {
    std::vector<std::thread> pool;
    for (int tix = 0; tix < threads; ++tix)
      pool.emplace_back([&, tix] {
        for (int i = tix; i < n_samples; i += threads) run_sample(i);
      });
    for (std::thread& th : pool) th.join();
  }

  for (std::size_t e = 0; e < eps_schedule.size(); ++e) {
    SampleSummary s;
    s.eps = eps_schedule[e];
    int succ = 0;
    std::vector<double> res, disp;
    for (const SampleRow& row : table.rows) {
      const SampleCell& c = row.cells[e];
      succ += c.success ? 1 : 0;
      res.push_back(c.residual);
      disp.push_back(c.displacement);
    }
    s.success_rate = static_cast<double>(succ) / n_samples;
    s.median_residual = median(res);
    s.median_displacement = median(disp);
    table.summary.push_back(s);
  }
  return table;
}

}  // namespace rav
