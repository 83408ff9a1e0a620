#include "hww/experiments.hpp"

#include <chrono>
#include <cmath>

#include "hww/fit.hpp"

namespace hww {

WaveState state_from_modes(const SpacePtr& sp, const std::vector<ModeSpec>& W, const std::vector<ModeSpec>& Q) {
  WaveState s = zero_state(sp);
  for (const auto& m : W) s.W += mode(sp, m.k, m.a);
  for (const auto& m : Q) s.Q += mode(sp, m.k, m.a);
  return s;
}

DispersionResult dispersion_fit(const Params& p, int k, const DispersionOptions& opt) {
  if (k >= 0) throw Error("dispersion fit needs a negative wavenumber");
  int N = 32;
  while (N < 4 * std::abs(k)) N *= 2;
  const SpacePtr sp = Space::make(Domain{opt.L, N, 2});
  WaveState s = state_from_modes(sp, {{k, opt.eps}}, {});
  const RhsFn lin = [&](const WaveState& u) { return rhs_linear(u, p); };
  StepOptions so;
  std::vector<cplx> x{s.W.at(k)};
  for (int j = 0; j < opt.steps; ++j) {
    s = opt.full ? step(s, opt.dt, p, so) : rk4_step(s, opt.dt, lin);
    x.push_back(s.W.at(k));
  }
  DispersionResult r;
  r.k = k;
  r.g = p.g;
  r.c = p.c;
  const DispersionRoots ex = dispersion_roots(2 * kPi * k / opt.L, p);
  r.tau_plus = ex.tau_plus;
  r.tau_minus = ex.tau_minus;
  // modes evolve as e^{i tau t}
  const auto [t1, t2] = prony2(x, opt.dt);
  r.fit_plus = t1;
  r.fit_minus = t2;
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
  r.rel_error = std::max(rel(r.fit_plus, r.tau_plus), rel(r.fit_minus, r.tau_minus));
  return r;
}

ConservationReport conservation_run(const WaveState& s0, const Params& p, double T, double dt_fraction,
                                    int sample_every) {
  const auto start = std::chrono::steady_clock::now();
  ConservationReport rep;
  rep.N = s0.W.N();
  rep.T = T;
  const double bound = cfl_limit(s0, p);
  rep.steps = static_cast<int>(std::ceil(T / (dt_fraction * bound)));
  rep.dt = T / rep.steps;
  const Invariants r0 = invariants_real(s0, p), c0 = invariants_complex(s0, p);
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
  auto sample = [&](const WaveState& s) {
    const Invariants r = invariants_real(s, p), c = invariants_complex(s, p);
    rep.energy_real = std::max(rep.energy_real, rel(r.energy, r0.energy));
    rep.momentum_real = std::max(rep.momentum_real, rel(r.momentum, r0.momentum));
    rep.energy_complex = std::max(rep.energy_complex, rel(c.energy, c0.energy));
    rep.momentum_complex = std::max(rep.momentum_complex, rel(c.momentum, c0.momentum));
    rep.holo_state = std::max({rep.holo_state, holomorphy_report(s.W).relative_defect,
                               holomorphy_report(s.Q).relative_defect});
    const Rhs raw = rhs_full(s, p, false);
    rep.holo_rhs = std::max({rep.holo_rhs, holomorphy_report(raw.dW).relative_defect,
                             holomorphy_report(raw.dQ).relative_defect});
  };
  WaveState s = s0;
  sample(s);
  for (int j = 1; j <= rep.steps; ++j) {
    s = step(s, rep.dt, p);
    if (j % sample_every == 0 || j == rep.steps) sample(s);
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

CubicSweep cubic_residual_sweep(const WaveState& profile, const std::vector<double>& eps, const Params& p,
                                bool linear_only) {
  CubicSweep sw;
  sw.eps = eps;
  for (double e : eps) {
    WaveState s = profile;
    s.W *= e;
    s.Q *= e;
    const CubicResidual r = cubic_residual(s, p, linear_only);
    sw.rW.push_back(r.rW);
    sw.rQ.push_back(r.rQ);
  }
  sw.slope_W = loglog_slope(sw.eps, sw.rW);
  sw.slope_Q = loglog_slope(sw.eps, sw.rQ);
  return sw;
}

namespace {
WaveState flow(WaveState s, const Params& p, double dt, int steps) {
  for (int j = 0; j < steps; ++j) s = step(s, dt, p);
  return s;
}
}  // namespace

TangentReport tangent_check(const WaveState& s, const Field& dW, const Field& dQ, const Params& p, double T,
                            double dt, const std::vector<double>& hs) {
  const int steps = static_cast<int>(std::lround(T / dt));
  CoupledState cs{s, tangent_from_perturbation(make_background(s, p), dW, dQ)};
  for (int j = 0; j < steps; ++j) cs = coupled_rk4_step(cs, dt, p);
  const auto [lW, lQ] = perturbation_from_tangent(make_background(cs.s, p), cs.l);
  const double scale = std::hypot(l2_norm(lW), l2_norm(lQ));

  TangentReport rep;
  rep.h = hs;
  for (double h : hs) {
    WaveState a = s, b = s;
    a.W += h * dW;
    a.Q += h * dQ;
    b.W -= h * dW;
    b.Q -= h * dQ;
    const WaveState fa = flow(a, p, dt, steps), fb = flow(b, p, dt, steps);
    const Field eW = (1 / (2 * h)) * (fa.W - fb.W) - lW;
    const Field eQ = (1 / (2 * h)) * (fa.Q - fb.Q) - lQ;
    rep.err.push_back(std::hypot(l2_norm(eW), l2_norm(eQ)) / scale);
  }
  rep.slope = loglog_slope(rep.h, rep.err);
  return rep;
}

LifespanReport lifespan_scan(const WaveState& profile, const std::vector<double>& eps, const Params& p,
                             const LifespanOptions& opt) {
  const double pn = profile_norm(profile);
  if (!(pn > 0)) throw Error("lifespan profile is zero");
  LifespanReport rep;
  rep.entries.resize(eps.size());
  parallel_for_index(static_cast<int>(eps.size()), opt.threads, [&](int i) {
    LifespanEntry& e = rep.entries[i];
    e.eps = eps[i];
    e.T = opt.kappa / (eps[i] * eps[i]);
    e.informational = eps[i] > opt.small_data_limit;
    WaveState s = profile;
    s.W *= eps[i] / pn;
    s.Q *= eps[i] / pn;
    s.t = 0;
    try {
      const double dt0 = opt.dt > 0 ? opt.dt : opt.dt_fraction * cfl_limit(s, p);
      const int steps = static_cast<int>(std::ceil(e.T / dt0));
      e.dt = e.T / steps;
      DiagnosticsRecord d = diagnostics(s, p);
      e.norm0 = e.norm_max = d.H1;
      e.taylor_min = d.taylor_margin;
      e.cusp_min = d.cusp_margin;
      for (int j = 1; j <= steps && !e.breached; ++j) {
        s = step(s, e.dt, p);
        e.t_reached = s.t;
        if (j % opt.check_every == 0 || j == steps) {
          d = diagnostics(s, p);
          e.norm_max = std::max(e.norm_max, d.H1);
          e.taylor_min = std::min(e.taylor_min, d.taylor_margin);
          e.cusp_min = std::min(e.cusp_min, d.cusp_margin);
          if (d.H1 > opt.growth_limit * e.norm0) {
            e.breached = true;
            e.breach = "norm growth";
          } else if (d.taylor_margin < opt.taylor_fraction * p.g) {
            e.breached = true;
            e.breach = "taylor margin";
          }
        }
      }
    } catch (const Error& ex) {
      e.breached = true;
      e.breach = ex.what();
    }
    e.pass = !e.breached;
  });
  rep.pass = true;
  for (const auto& e : rep.entries)
    if (!e.informational && !e.pass) rep.pass = false;
  return rep;
}

}  // namespace hww
