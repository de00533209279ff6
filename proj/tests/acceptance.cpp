// Acceptance gate: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Criteria 1-9 are property checks; 10-14 are desk-scale
// reproductions of the synthetic experiments (trend-level, 21 seeds).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "htopt/clipping.hpp"
#include "htopt/experiments.hpp"
#include "htopt/hardinstance.hpp"
#include "htopt/noise.hpp"
#include "htopt/optimizers.hpp"
#include "htopt/problems.hpp"
#include "htopt/schedules.hpp"
#include "htopt/trace.hpp"

using namespace htopt;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("[%2d] %-38s %s%s%s\n", idx, name.c_str(), ok ? "PASS" : "FAIL",
              detail.empty() ? "" : "  -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

TailSpec pareto(double tail_index, double scale = 1.0) {
  return TailSpec{TailKind::two_sided_pareto, tail_index, scale, true};
}

// ---------- criterion 1 ----------
void criterion_clip_contract() {
  RandomSource r(101);
  bool ok = true;
  for (int i = 0; i < 10000 && ok; ++i) {
    std::size_t d = 1 + static_cast<std::size_t>(r.uniform() * 8);
    Vec v(d);
    for (double& x : v) x = 20.0 * r.normal();
    double lam = std::pow(10.0, -2.0 + 4.0 * r.uniform());
    Vec c = clip(v, lam);
    double nv = euclidean_norm(v), nc = euclidean_norm(c);
    if (nc > lam * (1.0 + 1e-15) && nv > lam) ok = false;
    if (nv <= lam && c != v) ok = false;  // exact identity below the level
    if (nv > 0.0 && nc > 0.0) {
      double cosang = dot(c, v) / (nv * nc);
      if (std::abs(cosang - 1.0) > 1e-12) ok = false;
    }
  }
  report(1, "clipping contract", ok);
}

// ---------- criterion 2 ----------
void criterion_hvp_identity() {
  RandomSource r(102);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Vec hv(5);
    for (double& x : hv) x = 50.0 * r.normal();
    double gamma = std::pow(10.0, -5.0 + 7.0 * r.uniform());
    double lhb = std::pow(10.0, -3.0 + 6.0 * r.uniform());
    Vec a = clip_hvp(hv, gamma, lhb);
    Vec b = scaled(clip(scaled(hv, 1.0 / gamma), lhb), gamma);
    double scale = std::max(euclidean_norm(a), euclidean_norm(b));
    if (scale > 0.0) worst = std::max(worst, euclidean_norm(sub(a, b)) / scale);
  }
  report(2, "scaled-HVP clip identity", worst <= 1e-15, "max rel err " + fmt(worst));
}

// ---------- criterion 3 ----------
// Separable cubic-plus-quadratic test function with linear Hessian.
class CubicProblem : public AdditiveNoiseOracle {
 public:
  explicit CubicProblem(std::size_t d) : AdditiveNoiseOracle(TailSpec{}, TailSpec{}), d_(d) {}
  std::size_t dim() const override { return d_; }
  double value(const Vec& x) const override {
    double s = 0.0;
    for (double xi : x) s += xi * xi * xi / 6.0 + 0.5 * xi * xi;
    return s;
  }
  Vec gradient(const Vec& x) const override {
    Vec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = 0.5 * x[i] * x[i] + x[i];
    return g;
  }
  Mat hessian(const Vec& x) const override {
    Mat h(d_);
    for (std::size_t i = 0; i < d_; ++i) h(i, i) = x[i] + 1.0;
    return h;
  }
  double lipschitz_l() const override { return 10.0; }
  double f_star() const override { return -1e9; }
  std::string name() const override { return "cubic"; }

 private:
  std::size_t d_;
};

void criterion_hessian_correction() {
  bool ok = true;
  // Quadratic: the correction equals the gradient difference exactly.
  QuadraticProblem q(4, TailSpec{});
  RandomSource r(103);
  for (int k = 0; k < 100 && ok; ++k) {
    Vec xp(4), xc(4);
    for (double& v : xp) v = r.normal();
    for (double& v : xc) v = r.normal();
    double qt = r.uniform();
    Vec xhat = scaled(xc, qt);
    axpy(xhat, 1.0 - qt, xp);
    Vec corr = q.hessian(xhat).matvec(sub(xc, xp));
    Vec gd = sub(q.gradient(xc), q.gradient(xp));
    for (std::size_t i = 0; i < 4; ++i) {
      if (corr[i] != gd[i]) ok = false;
    }
  }
  // Cubic: the q-average matches within 3 Monte Carlo standard errors.
  CubicProblem c(3);
  Vec xp{0.4, -1.2, 0.9}, xc{1.1, -0.3, 0.2};
  Vec dx = sub(xc, xp);
  Vec gd = sub(c.gradient(xc), c.gradient(xp));
  const int n = 100000;
  Vec mean = zeros(3), m2 = zeros(3);
  for (int k = 0; k < n; ++k) {
    double qt = r.uniform();
    Vec xhat = scaled(xc, qt);
    axpy(xhat, 1.0 - qt, xp);
    Vec s = c.hessian(xhat).matvec(dx);
    for (std::size_t i = 0; i < 3; ++i) {
      double delta = s[i] - mean[i];
      mean[i] += delta / (k + 1);
      m2[i] += delta * (s[i] - mean[i]);
    }
  }
  for (std::size_t i = 0; i < 3; ++i) {
    double se = std::sqrt(m2[i] / n / n);
    if (std::abs(mean[i] - gd[i]) > 3.0 * se + 1e-12) ok = false;
  }
  report(3, "hessian-correction expectation", ok);
}

// ---------- criterion 4 ----------
struct MoM {
  double center = 0.0;
  double robust_se = 0.0;
};

MoM median_of_means(const std::vector<double>& xs, int blocks) {
  std::size_t bs = xs.size() / blocks;
  std::vector<double> means(blocks, 0.0);
  for (int b = 0; b < blocks; ++b) {
    double s = 0.0;
    for (std::size_t i = 0; i < bs; ++i) s += xs[b * bs + i];
    means[b] = s / static_cast<double>(bs);
  }
  std::vector<double> sorted = means;
  std::sort(sorted.begin(), sorted.end());
  double med = sorted[blocks / 2];
  std::vector<double> devs(blocks);
  for (int b = 0; b < blocks; ++b) devs[b] = std::abs(means[b] - med);
  std::sort(devs.begin(), devs.end());
  double mad = devs[blocks / 2];
  // 1.4826 MAD ~ sigma of the block means; SE of their median ~ 1.2533 sigma/sqrt(k).
  double se = 1.2533 * 1.4826 * mad / std::sqrt(static_cast<double>(blocks));
  return MoM{med, se};
}

void criterion_oracle_unbiasedness() {
  bool ok = true;
  const int n = 100000, blocks = 49;
  RandomSource r(104);

  QuadraticProblem q(3, pareto(1.5), pareto(2.5));
  Vec x{1.0, -2.0, 0.5};
  Vec v{0.5, 1.0, -1.0};
  for (std::size_t coord = 0; coord < 3; ++coord) {
    std::vector<double> gs(n), hs(n);
    for (int i = 0; i < n; ++i) {
      gs[i] = q.noisy_gradient(x, r)[coord];
      hs[i] = q.noisy_hvp(x, v, r)[coord];
    }
    MoM mg = median_of_means(gs, blocks);
    if (std::abs(mg.center - x[coord]) > 3.0 * mg.robust_se) ok = false;
    MoM mh = median_of_means(hs, blocks);
    if (std::abs(mh.center - v[coord]) > 3.0 * mh.robust_se) ok = false;
  }

  ZeroChainOracle zc{ChainFunction{5, 1.0, 1.0}, 0.35, 2};
  Vec xz{0.9, -0.7, 0.3, 0.0, 0.0};
  Vec truth = zc.chain.gradient(xz);
  std::size_t coord = 2;  // first coordinate beyond prog_{1/4}(xz) = 2
  std::vector<double> zs(n);
  for (int i = 0; i < n; ++i) zs[i] = zc.query(xz, r).grad[coord];
  MoM mz = median_of_means(zs, blocks);
  // The Bernoulli estimator is two-valued; MoM of block means still
  // centers on the truth.
  if (std::abs(mz.center - truth[coord]) > 3.0 * mz.robust_se + 1e-12) ok = false;
  report(4, "noisy-oracle unbiasedness (MoM)", ok);
}

// ---------- criterion 5 ----------
void criterion_pareto_moments() {
  TailSpec s = pareto(2.0);
  RandomSource r(105);
  const long n = 1000000;
  double sum = 0.0;
  std::vector<double> abs_x(n);
  for (long i = 0; i < n; ++i) {
    abs_x[i] = std::abs(sample_two_sided_pareto(s, r));
    sum += abs_x[i];
  }
  double mean = sum / static_cast<double>(n);
  bool ok = std::abs(mean - 2.0) <= 0.02;

  // q = pbar moment diverges: the estimate grows with the sample size.
  // Single runs fluctuate wildly (the summand has tail index 1), so each
  // decade uses the median of 7 fresh batches.
  double prev = 0.0;
  bool growing = true;
  for (long m : {1000L, 10000L, 100000L, 1000000L}) {
    std::vector<double> reps;
    for (int rep = 0; rep < 7; ++rep) {
      double s2 = 0.0;
      for (long i = 0; i < m; ++i) {
        double x = sample_two_sided_pareto(s, r);
        s2 += x * x;
      }
      reps.push_back(s2 / static_cast<double>(m));
    }
    std::sort(reps.begin(), reps.end());
    double est = reps[3];
    if (est <= prev) growing = false;
    prev = est;
  }
  report(5, "pareto moment contract", ok && growing,
         "E|X| = " + fmt(mean) + (growing ? "" : ", second moment not growing"));
}

// ---------- criterion 6 ----------
void criterion_schedule_fixtures() {
  ProblemConstants c;
  c.delta = 1.0;
  c.l_smooth = 1.0;
  c.sigma = 1.0;
  c.sigma_h = 0.0;
  c.p = 2.0;
  c.epsilon = 0.1;
  c.T = 4000;
  c.delta_prob = 0.1;
  bool ok = schedule_thm2(c).b_init == 100;
  ok = ok && std::abs(schedule_thm3(c).alpha - std::pow(4000.0, -2.0 / 3.0)) < 1e-12;
  ok = ok &&
       std::abs(schedule_clip_nsgdm_baseline(c).gamma - std::pow(4000.0, -0.75)) < 1e-12;
  report(6, "schedule formula fixtures", ok);
}

// ---------- criterion 7 ----------
void criterion_degeneracies() {
  QuadraticProblem q(4, pareto(1.3));
  const double inf = std::numeric_limits<double>::infinity();
  bool ok = true;

  OptimizerParams m;
  m.method = Method::nsgdm;
  m.alpha = 1.0;
  m.gamma = 0.05;
  OptimizerParams sg = m;
  sg.method = Method::nsgd;
  ok = ok && trace_to_csv(run(m, q, 50, 7)) == trace_to_csv(run(sg, q, 50, 7));

  // alpha = 1 zeroes the Hessian correction: the second-order method
  // reduces to plain nsgd once initialization is harmonized (g0 = 0).
  OptimizerParams h1;
  h1.method = Method::nsgdhess;
  h1.alpha = 1.0;
  h1.gamma = 0.05;
  h1.g0_variant = InitG0::zero;
  RunTrace th = run(h1, q, 50, 7);
  RunTrace tg = run(sg, q, 50, 7);
  for (std::size_t i = 0; i < th.rows.size(); ++i) {
    if (th.rows[i].grad_norm_exact != tg.rows[i].grad_norm_exact) ok = false;
  }

  OptimizerParams ch;
  ch.method = Method::clip_nsgdhess;
  ch.alpha = 0.3;
  ch.gamma = 0.05;
  ch.lambda = inf;
  ch.lambda_h_bar = inf;
  OptimizerParams h2 = ch;
  h2.method = Method::nsgdhess;
  h2.g0_variant = InitG0::zero;
  ok = ok && trace_to_csv(run(ch, q, 50, 7)) == trace_to_csv(run(h2, q, 50, 7));

  OptimizerParams cm;
  cm.method = Method::clip_nsgdm;
  cm.alpha = 0.3;
  cm.gamma = 0.05;
  cm.lambda = inf;
  OptimizerParams m2 = cm;
  m2.method = Method::nsgdm;
  ok = ok && trace_to_csv(run(cm, q, 50, 7)) == trace_to_csv(run(m2, q, 50, 7));

  report(7, "degeneracy equivalences", ok);
}

// ---------- criterion 8 ----------
double phi_quadrature_zero() {
  const double a = -40.0, b = 0.0;
  const long n = 2000000;
  const double h = (b - a) / static_cast<double>(n);
  double s = std::exp(-0.5 * a * a) + 1.0;
  for (long i = 1; i < n; ++i) {
    double t = a + h * static_cast<double>(i);
    s += std::exp(-0.5 * t * t) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return std::sqrt(M_E) * s * h / 3.0;
}

void criterion_hard_instance() {
  bool ok = true;
  std::string detail;

  ChainFunction c{8, 1.0, 1.0};
  RandomSource r(108);
  double worst_fd = 0.0;
  for (int k = 0; k < 100; ++k) {
    Vec x(8);
    for (double& xi : x) xi = 2.0 * r.normal();
    Vec g = c.gradient(x);
    Vec fd(8);
    Vec xp = x;
    for (std::size_t i = 0; i < 8; ++i) {
      double xi = x[i];
      xp[i] = xi + 1e-5;
      double fp = c.value(xp);
      xp[i] = xi - 1e-5;
      double fm = c.value(xp);
      xp[i] = xi;
      fd[i] = (fp - fm) / 2e-5;
    }
    // Relative in the gradient norm: tiny individual components sit at
    // the finite-difference noise floor.
    double rel = euclidean_norm(sub(g, fd)) / std::max(euclidean_norm(g), 1e-8);
    worst_fd = std::max(worst_fd, rel);
  }
  if (worst_fd > 1e-6) {
    ok = false;
    detail = "gradient/fd rel err " + fmt(worst_fd);
  }

  ZeroChainOracle zc{ChainFunction{6, 1.0, 1.0}, 0.3, 2};
  Vec xq{0.9, 0.8, 0.0, 0.0, 0.0, 0.0};
  int reveals = 0;
  const int nq = 10000;
  for (int i = 0; i < nq; ++i) {
    if (zc.query(xq, r).beyond_scaled) ++reveals;
  }
  double freq = reveals / static_cast<double>(nq);
  double binom_se = std::sqrt(0.3 * 0.7 / nq);
  if (std::abs(freq - 0.3) > 3.0 * binom_se) {
    ok = false;
    detail = "reveal frequency " + fmt(freq);
  }

  // prog advances by at most one per oracle query along a run (one
  // query per step for the first-order clipped method).
  {
    ChainConstants cc;
    HardInstance inst = rescale_for_target(500.0, cc.ell1, cc.ell2, 1.0, 10.0, 0.25, 1.5, 2, cc);
    HardInstanceOracle oracle(inst);
    OptimizerParams p;
    p.method = Method::clip_nsgdm;
    p.gamma = 0.05;
    p.alpha = 0.3;
    p.lambda = 5.0;
    RandomSource root(7);
    RandomSource q_rng = root.split(2), grad_rng = root.split(3), hvp_rng = root.split(4);
    OptimizerState s;
    s.x_prev = zeros(oracle.dim());
    s.x_curr = zeros(oracle.dim());
    s.g = zeros(oracle.dim());
    long prev = prog(s.x_curr, 0.25 / inst.chain.beta);
    for (int t = 0; t < 300; ++t) {
      step(s, oracle, p, q_rng, grad_rng, hvp_rng);
      long cur = prog(s.x_curr, 0.25 / inst.chain.beta);
      if (cur > prev + 1) {
        ok = false;
        detail = "prog jumped by " + std::to_string(cur - prev);
      }
      prev = cur;
    }
  }

  double quad = phi_quadrature_zero();
  double h0 = ChainFunction{8, 1.0, 1.0}.value_at_zero();
  if (std::abs(h0 + quad) > 1e-10) {
    ok = false;
    detail = "h(0) vs quadrature " + fmt(std::abs(h0 + quad));
  }
  if (std::abs(quad - 2.0664) > 1e-3) {
    ok = false;
    detail = "quadrature off " + fmt(quad);
  }
  report(8, "hard-instance suite", ok, detail);
}

// ---------- criterion 9 ----------
void criterion_momentum_bound() {
  bool ok = true;
  double worst = 0.0;
  for (double pbar : {1.1, 1.5, 2.0}) {
    QuadraticProblem q(10, pareto(pbar));
    for (double lam : {0.1, 0.5, 2.0}) {
      for (double lhb : {0.05, 1.0, 50.0}) {
        OptimizerParams p;
        p.method = Method::clip_nsgdhess;
        p.gamma = 0.01;
        p.alpha = 0.2;
        p.lambda = lam;
        p.lambda_h_bar = lhb;
        double bound = lam + (1.0 - p.alpha) * p.gamma * lhb / p.alpha;
        for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
          RunTrace tr = run(p, q, 400, seed);
          for (const auto& row : tr.rows) {
            worst = std::max(worst, row.momentum_norm / bound);
            if (row.momentum_norm > bound * (1.0 + 1e-12)) ok = false;
          }
        }
      }
    }
  }
  report(9, "clipped momentum boundedness", ok, "max ||g||/bound " + fmt(worst));
}

// ---------- experiment configs ----------
ExperimentConfig experiment_base() {
  ExperimentConfig cfg;
  cfg.problem.name = "quadratic";
  cfg.problem.dim = 10;
  cfg.problem.gradient_noise = pareto(1.1);
  cfg.T = 4000;
  cfg.target = 1.5;
  cfg.seeds.clear();
  for (std::uint64_t s = 1000; s < 1021; ++s) cfg.seeds.push_back(s);
  cfg.optimizers.clear();
  return cfg;
}

OptimizerConfig manual_opt(Method m, double gamma, double alpha, double lam,
                           double lhb) {
  OptimizerConfig oc;
  oc.method = m;
  oc.schedule = "manual";
  oc.gamma = gamma;
  oc.alpha = alpha;
  oc.lambda = lam;
  oc.lambda_h_bar = lhb;
  return oc;
}

// ---------- criterion 10 ----------
void criterion_fig2() {
  const double inf = std::numeric_limits<double>::infinity();
  ExperimentConfig cfg = experiment_base();
  cfg.optimizers = {
      manual_opt(Method::nsgdm, 0.01, 0.2, inf, inf),
      manual_opt(Method::nsgdhess, 0.01, 0.2, inf, inf),
      manual_opt(Method::clip_nsgdm, 0.01, 0.2, 0.5, inf),
      manual_opt(Method::clip_nsgdhess, 0.01, 0.2, 0.5, 0.05),
  };
  cfg.optimizers[1].g0_variant = InitG0::batch;
  cfg.optimizers[1].b_init = 1;
  Table t = experiment_fig2(cfg);
  auto term = [&](const char* m) {
    return std::stod(t.meta.at(std::string("terminal_median_") + m));
  };
  auto hits = [&](const char* m) {
    return std::stod(t.meta.at(std::string("target_hit_fraction_") + m));
  };
  bool ordering = term("clip-nsgdm") < term("nsgdm") &&
                  term("clip-nsgdhess") < term("nsgdhess");
  bool hit = hits("clip-nsgdm") >= 0.8 && hits("clip-nsgdhess") >= 0.8;
  report(10, "fig2 clipped-vs-unclipped ordering", ordering && hit,
         "terminal medians: cnh " + fmt(term("clip-nsgdhess")) + " nh " +
             fmt(term("nsgdhess")) + " cnm " + fmt(term("clip-nsgdm")) + " nm " +
             fmt(term("nsgdm")) + "; hit " + fmt(hits("clip-nsgdhess")) + "/" +
             fmt(hits("clip-nsgdm")));
}

// ---------- criterion 11 ----------
void criterion_clip_sensitivity() {
  ExperimentConfig cfg = experiment_base();
  cfg.optimizers = {manual_opt(Method::clip_nsgdhess, 0.01, 0.2, 1.0, 1.0)};
  cfg.lambda_grid = {1e-16, 1e-8, 1.0, 1e2, 1e3};
  Table t = experiment_clip_sensitivity(cfg);
  std::vector<double> med;
  for (const auto& row : t.rows) med.push_back(row[1]);
  double interior = std::min({med[1], med[2], med[3]});
  bool ok = interior < med[0] && interior < med[4];
  std::string detail = "medians";
  for (double m : med) detail += " " + fmt(m);
  report(11, "clip-level sensitivity U-shape", ok, detail);
}

// ---------- criterion 12 ----------
void criterion_fig4() {
  ExperimentConfig cfg = experiment_base();
  OptimizerConfig hess = manual_opt(Method::clip_nsgdhess, 0.0, 0.0, 0.5, 0.05);
  hess.schedule = "thm3-shape";
  OptimizerConfig first = manual_opt(Method::clip_nsgdm, 0.0, 0.0, 0.5,
                                     std::numeric_limits<double>::infinity());
  first.schedule = "clip-nsgdm-baseline";
  cfg.optimizers = {hess, first};
  cfg.tail_indices = {1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0};
  Table t = experiment_fig4(cfg);
  bool ok = true;
  std::string detail;
  for (const auto& row : t.rows) {
    if (row[1] > row[2]) {
      ok = false;
      detail += " pbar=" + fmt(row[0]) + ":" + fmt(row[1]) + ">" + fmt(row[2]);
    }
  }
  if (ok) {
    detail = "hess/first at 1.1: " + fmt(t.rows.front()[1]) + "/" +
             fmt(t.rows.front()[2]) + ", at 2.0: " + fmt(t.rows.back()[1]) + "/" +
             fmt(t.rows.back()[2]);
  }
  report(12, "fig4 second-order dominance", ok, detail);
}

// ---------- criterion 13 ----------
void criterion_fig5() {
  ExperimentConfig cfg = experiment_base();
  cfg.target = 0.5;
  cfg.optimizers = {manual_opt(Method::clip_nsgdhess, 0.01, 0.2, 1.0, 1.0)};
  cfg.lambda_h_bar_grid = {0.01, 1.0, 100.0};
  cfg.lambda_grid.clear();  // per-regime default decades lhb*10^{-2..4}
  Table t = experiment_fig5(cfg);
  bool ok = true;
  std::string detail;
  for (double lhb : cfg.lambda_h_bar_grid) {
    std::vector<std::pair<double, double>> cells;  // (lambda, median)
    for (const auto& row : t.rows) {
      if (row[0] == lhb) cells.emplace_back(row[1], row[2]);
    }
    std::size_t argmin = 0;
    for (std::size_t i = 1; i < cells.size(); ++i) {
      if (cells[i].second < cells[argmin].second) argmin = i;
    }
    bool interior = argmin > 0 && argmin + 1 < cells.size();
    if (!interior) ok = false;
    detail += " lhb=" + fmt(lhb) + ":argmin lam=" + fmt(cells[argmin].first) +
              (interior ? "" : "(boundary)");
  }
  report(13, "fig5 interior optima", ok, detail);
}

// ---------- criterion 14 ----------
// The high-probability schedule is used in its rate-shape form: alpha and
// the clip levels are the literal formulas, gamma drops the worst-case
// numerical constants (1408/352/968 and the log factor). With those
// constants gamma ~ 1e-7 at T <= 2^14, the iterate moves a negligible
// fraction of ||x0|| and every trace is flat (measured slope ~ -1e-5),
// so only the shape form exposes the T-exponent at desk scale.
void criterion_rate_exponent() {
  bool ok = true;
  std::string detail;
  for (double p : {1.5, 2.0}) {
    ExperimentConfig cfg = experiment_base();
    cfg.problem.gradient_noise = pareto(p);
    cfg.schedule_p = p;
    // Derived p-th moment bound of the gradient noise at a slightly
    // smaller order (the p-th moment is infinite at tail index p).
    double p_eff = 0.95 * p;
    double sigma = std::pow(10.0 * p / (p - p_eff), 1.0 / p_eff);
    std::vector<double> log_t, log_err;
    for (long T : {256L, 512L, 1024L, 2048L, 4096L, 8192L, 16384L}) {
      cfg.T = T;
      std::vector<double> avg;
      for (std::uint64_t seed : cfg.seeds) {
        ProblemConfig pc = cfg.problem;
        auto problem = make_problem(pc);
        RandomSource x0_rng = RandomSource(seed).split(0);
        Vec x0(problem->dim());
        for (double& xi : x0) xi = x0_rng.normal();
        ProblemConstants c;
        c.delta = problem->value(x0);
        c.l_smooth = 1.0;
        c.sigma = sigma;
        c.sigma_h = 0.0;
        c.p = p;
        c.epsilon = 0.1;
        c.T = T;
        c.delta_prob = 0.1;
        Schedule shape = schedule_thm3_shape(c);
        Schedule full = schedule_thm3(c);
        OptimizerParams params;
        params.method = Method::clip_nsgdhess;
        params.gamma = shape.gamma;
        params.alpha = shape.alpha;
        params.lambda = full.lambda;
        params.lambda_h_bar = full.lambda_h_bar;
        RunTrace tr = run(params, *problem, T, seed, &x0);
        avg.push_back(tr.avg_grad_norm());
      }
      log_t.push_back(std::log(static_cast<double>(T)));
      log_err.push_back(std::log(median(avg)));
    }
    // least-squares slope
    double n = static_cast<double>(log_t.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < log_t.size(); ++i) {
      sx += log_t[i];
      sy += log_err[i];
      sxx += log_t[i] * log_t[i];
      sxy += log_t[i] * log_err[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double target = -(p - 1.0) / (2.0 * p - 1.0);
    if (std::abs(slope - target) > 0.1) ok = false;
    detail += " p=" + fmt(p) + ": slope " + fmt(slope) + " vs " + fmt(target) + ";";
  }
  report(14, "rate-exponent log-log slope", ok, detail);
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion_clip_contract();
  criterion_hvp_identity();
  criterion_hessian_correction();
  criterion_oracle_unbiasedness();
  criterion_pareto_moments();
  criterion_schedule_fixtures();
  criterion_degeneracies();
  criterion_hard_instance();
  criterion_momentum_bound();
  criterion_fig2();
  criterion_clip_sensitivity();
  criterion_fig4();
  criterion_fig5();
  criterion_rate_exponent();
  auto t1 = std::chrono::steady_clock::now();
  double secs = std::chrono::duration<double>(t1 - t0).count();
  std::printf("%d/14 criteria passed (%.1f s)\n", 14 - g_failures, secs);
  return g_failures == 0 ? 0 : 1;
}
