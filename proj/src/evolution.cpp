#include "hww/evolution.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <ostream>

#include "grid_ops.hpp"

namespace hww {

using namespace detail;

Rhs rhs_full(const WaveState& s, const Params& p, bool project) {
  require_compatible(s.W, s.Q);
  const SpacePtr& sp = s.W.space_ptr();
  const CArray W = G(s.W), Wa = Gd(s.W), Qa = Gd(s.Q);
  const CArray onep = 1.0 + Wa;
  require_no_cusp(*sp, onep);
  const CArray J = onep.abs2().cast<cplx>();
  const double hc = 0.5 * p.c;

  const Field F = project_P(C(sp, (Qa - cj(Qa)) / J));
  const Field F1 = project_P(C(sp, W / cj(onep) + cj(W) / onep));
  const CArray Fu = G(F - (I * hc) * F1);
  const Field T1 = project_P(C(sp, W * cj(Qa) / cj(onep) - cj(W) * Qa / onep));

  Rhs r;
  r.dW = -(C(sp, onep * Fu) + (I * hc) * s.W);
  r.dQ = -((-I * p.g) * s.W + C(sp, Fu * Qa) + (I * p.c) * s.Q +
           project_P(C(sp, (Qa.abs2() / J.real()).cast<cplx>())) - (I * hc) * T1);
  if (project) {
    r.dW = holomorphic_part(r.dW);
    r.dQ = holomorphic_part(r.dQ);
  }
  return r;
}

Rhs rhs_full_checked(const WaveState& s, const Params& p, double holo_tol) {
  const double dw = holomorphy_report(s.W).relative_defect;
  const double dq = holomorphy_report(s.Q).relative_defect;
  if (dw > holo_tol || dq > holo_tol)
    throw HolomorphyViolation("input state is not holomorphic within holo_tol");
  return rhs_full(s, p);
}

Rhs rhs_linear(const WaveState& s, const Params& p) {
  return Rhs{-derivative(s.Q), (I * p.g) * s.W - (I * p.c) * s.Q};
}

DiffRhs rhs_diff(const DiagonalState& d, const Params& p) {
  const SpacePtr& sp = d.Wd.space_ptr();
  const AdvectionFields adv = transport_coefficients(d, p);
  const FrequencyShiftFields fs = frequency_shift(d, p);
  const MFields mf = m_fields(d, p);
  const CArray Wd = G(d.Wd), Wda = Gd(d.Wd), R = G(d.R), Ra = Gd(d.R);
  const CArray onep = 1.0 + Wd;
  const CArray bu = G(adv.bu), a = G(fs.a), N = G(fs.N), Mu = G(mf.Mu);
  const double hc = 0.5 * p.c;

  DiffRhs r;
  r.dWd = holomorphic_part(
      C(sp, -bu * Wda - onep * Ra / cj(onep) + onep * Mu + (I * hc) * Wd * (Wd - cj(Wd))));
  r.dR = holomorphic_part(C(sp, -bu * Ra - (I * p.c) * R + I * (p.g * Wd - a) / onep +
                                    (I * hc) * (R * Wd + cj(R) * Wd + N) / onep));
  return r;
}

// ------------------------------------------------------------- real form

namespace {
RArray re_grid(const Field& f) { return to_grid(f).real(); }
Field fr(const SpacePtr& sp, const RArray& u) { return from_grid_real(sp, u); }
RArray Hr(const SpacePtr& sp, const RArray& u) { return re_grid(hilbert(fr(sp, u))); }
RArray Dr(const SpacePtr& sp, const RArray& u) { return re_grid(derivative(fr(sp, u))); }
}  // namespace

RealFormState real_form_of(const WaveState& s) {
  const SpacePtr& sp = s.W.space_ptr();
  return RealFormState{fr(sp, to_grid(s.W).imag()), fr(sp, to_grid(s.Q).real())};
}

RealFormRhs rhs_realform(const RealFormState& r, const Params& p) {
  const SpacePtr& sp = r.Yh.space_ptr();
  const RArray Y = re_grid(r.Yh), Psi = re_grid(r.Psi);
  const RArray Ya = Dr(sp, Y);
  const RArray Xa = 1.0 + Hr(sp, Ya);
  const RArray Th = -Hr(sp, Psi);
  const RArray Tha = Dr(sp, Th), Psia = Dr(sp, Psi);
  const RArray J = Xa.square() + Ya.square();
  if (J.minCoeff() <= 0) throw CuspDegeneracy(std::sqrt(std::max(J.minCoeff(), 0.0)), 0.0);
  const RArray A = Hr(sp, Tha / J);
  const RArray B = Hr(sp, Y * Ya / J);
  const double c = p.c;

  RealFormRhs out;
  out.dY = -A * Ya - c * B * Ya - (Tha / J) * Xa - c * (Y * Ya / J) * Xa;
  out.dPsi = -A * Psia + Tha.square() / J - (Psia.square() + Tha.square()) / (2 * J) - p.g * Y -
             c * B * Psia + c * Th - c * (Y / J) * Xa * Psia;
  out.dY_field = fr(sp, out.dY);
  out.dPsi_field = fr(sp, out.dPsi);
  return out;
}

// ------------------------------------------------------------- stepping

namespace {
WaveState axpy(const WaveState& s, double h, const Rhs& k) {
  return WaveState{s.W + h * k.dW, s.Q + h * k.dQ, s.t};
}

void check_finite(const WaveState& s) {
  if (!s.W.coeffs().isFinite().all() || !s.Q.coeffs().isFinite().all())
    throw NumericalBlowup("non-finite coefficients at t = " + std::to_string(s.t));
}

struct Propagator {
  // per retained mode: [[e00, e01], [e10, e11]] acting on (W_k, Q_k)
  CArray e00, e01, e10, e11;
};

Propagator linear_propagator(const Space& sp, const Params& p, double t) {
  const int N = sp.N();
  Propagator E{CArray(N), CArray(N), CArray(N), CArray(N)};
  for (int i = 0; i < N; ++i) {
    // the derivative drops the k = -N/2 mode, so the propagator must too
    const double xi = i == 0 ? 0.0 : sp.xi()(i);
    // A = [[0, -i xi], [i g, -i c]], eigenvalues solve l^2 + i c l - g xi = 0
    const cplx a00 = 0, a01 = cplx(0, -xi), a10 = cplx(0, p.g), a11 = cplx(0, -p.c);
    const cplx disc = std::sqrt(cplx(-p.c * p.c + 4 * p.g * xi, 0));
    const cplx l1 = 0.5 * (cplx(0, -p.c) + disc), l2 = 0.5 * (cplx(0, -p.c) - disc);
    if (std::abs(l1 - l2) > 1e-12 * (1 + std::abs(l1))) {
      const cplx z1 = std::exp(l1 * t), z2 = std::exp(l2 * t), dl = l1 - l2;
      E.e00(i) = (z1 * (a00 - l2) - z2 * (a00 - l1)) / dl;
      E.e01(i) = (z1 - z2) * a01 / dl;
      E.e10(i) = (z1 - z2) * a10 / dl;
      E.e11(i) = (z1 * (a11 - l2) - z2 * (a11 - l1)) / dl;
    } else {
      const cplx z = std::exp(l1 * t);
      E.e00(i) = z * (1.0 + (a00 - l1) * t);
      E.e01(i) = z * a01 * t;
      E.e10(i) = z * a10 * t;
      E.e11(i) = z * (1.0 + (a11 - l1) * t);
    }
  }
  return E;
}

WaveState apply(const Propagator& E, const WaveState& s) {
  WaveState r = s;
  r.W.coeffs() = E.e00 * s.W.coeffs() + E.e01 * s.Q.coeffs();
  r.Q.coeffs() = E.e10 * s.W.coeffs() + E.e11 * s.Q.coeffs();
  return r;
}

Rhs apply(const Propagator& E, const Rhs& k) {
  Rhs r = k;
  r.dW.coeffs() = E.e00 * k.dW.coeffs() + E.e01 * k.dQ.coeffs();
  r.dQ.coeffs() = E.e10 * k.dW.coeffs() + E.e11 * k.dQ.coeffs();
  return r;
}

void apply_filter(WaveState& s, int order) {
  const Space& sp = s.W.space();
  for (int i = 0; i < sp.N(); ++i) {
    const double x = std::abs(sp.wavenumber(i)) / (0.5 * sp.N());
    const double f = std::exp(-36.0 * std::pow(x, order));
    s.W.coeffs()(i) *= f;
    s.Q.coeffs()(i) *= f;
  }
}

void project_state(WaveState& s) {
  s.W = holomorphic_part(s.W);
  s.Q = holomorphic_part(s.Q);
}
}  // namespace

WaveState rk4_step(const WaveState& s, double dt, const RhsFn& f) {
  const Rhs k1 = f(s);
  const Rhs k2 = f(axpy(s, dt / 2, k1));
  const Rhs k3 = f(axpy(s, dt / 2, k2));
  const Rhs k4 = f(axpy(s, dt, k3));
  WaveState r = s;
  r.W += (dt / 6) * (k1.dW + 2.0 * k2.dW + 2.0 * k3.dW + k4.dW);
  r.Q += (dt / 6) * (k1.dQ + 2.0 * k2.dQ + 2.0 * k3.dQ + k4.dQ);
  r.t = s.t + dt;
  return r;
}

double cfl_limit(const WaveState& s, const Params& p, double C) {
  const Space& sp = s.W.space();
  const double kmax = kPi * sp.N() / sp.L();
  const AdvectionFields adv = transport_coefficients(to_diagonal(s), p);
  const double b = max_abs_grid(adv.bu);
  return C / std::max({std::sqrt(p.g * kmax), p.c, b * kmax});
}

WaveState step(const WaveState& s, double dt, const Params& p, const StepOptions& opt) {
  if (!(dt > 0)) throw Error("time step must be positive");
  if (opt.cfl != CflPolicy::Ignore) {
    const double lim = cfl_limit(s, p, opt.cfl_constant);
    if (dt > lim) {
      const std::string msg = "dt = " + std::to_string(dt) + " exceeds CFL bound " + std::to_string(lim);
      if (opt.cfl == CflPolicy::Error) throw CflViolation(msg);
      static thread_local bool warned = false;
      if (!warned) std::cerr << "warning: " << msg << "\n";
      warned = true;
    }
  }
  auto full = [&](const WaveState& u) {
    WaveState v = u;
    if (opt.project) project_state(v);
    return rhs_full(v, p, opt.project);
  };
  WaveState r;
  if (opt.scheme == Scheme::RK4) {
    r = rk4_step(s, dt, full);
  } else {
    auto nonlin = [&](const WaveState& u) {
      Rhs a = full(u), l = rhs_linear(u, p);
      return Rhs{a.dW - l.dW, a.dQ - l.dQ};
    };
    const Propagator Eh = linear_propagator(s.W.space(), p, dt);
    const Propagator Eh2 = linear_propagator(s.W.space(), p, dt / 2);
    const Rhs k1 = nonlin(s);
    const Rhs k2 = nonlin(apply(Eh2, axpy(s, dt / 2, k1)));
    const Rhs k3 = nonlin(axpy(apply(Eh2, s), dt / 2, k2));
    const Rhs k4 = nonlin(axpy(apply(Eh, s), dt, apply(Eh2, k3)));
    const Rhs e1 = apply(Eh, k1), e23 = apply(Eh2, Rhs{k2.dW + k3.dW, k2.dQ + k3.dQ});
    r = apply(Eh, s);
    r.W += (dt / 6) * (e1.dW + 2.0 * e23.dW + k4.dW);
    r.Q += (dt / 6) * (e1.dQ + 2.0 * e23.dQ + k4.dQ);
    r.t = s.t + dt;
  }
  if (opt.project) project_state(r);
  if (opt.filter_order > 0) apply_filter(r, opt.filter_order);
  check_finite(r);
  return r;
}

WaveState linear_flow_exact(const WaveState& s, const Params& p, double t) {
  WaveState r = apply(linear_propagator(s.W.space(), p, t), s);
  r.t = s.t + t;
  return r;
}

DispersionRoots dispersion_roots(double xi, const Params& p) {
  if (xi > 0) throw Error("dispersion relation is posed for xi <= 0");
  const double d = std::sqrt(p.c * p.c - 4 * p.g * xi);
  return DispersionRoots{0.5 * (-p.c + d), 0.5 * (-p.c - d)};
}

// ------------------------------------------------------------ invariants

Invariants invariants_complex(const WaveState& s, const Params& p) {
  const Space& sp = s.W.space();
  const CArray W = G(s.W), Q = G(s.Q), Wa = Gd(s.W), Qa = Gd(s.Q);
  const CArray W2 = W.abs2().cast<cplx>();
  const CArray ImW2 = W.imag().square().cast<cplx>();
  const double c = p.c;
  const CArray e = p.g * W2 * (1.0 + Wa) - I * Q * cj(Qa) + c * Qa * ImW2 -
                   (c * c * c / (2.0 * I)) * W2 * W * (1.0 + Wa);
  const CArray m = (cj(Q) * Wa - Q * cj(Wa)) / I - c * W2 +
                   (c / 2) * (W * W * cj(Wa) + cj(W) * cj(W) * Wa);
  return Invariants{integrate(sp, e).real(), integrate(sp, m).real()};
}

Invariants invariants_real(const WaveState& s, const Params& p) {
  const SpacePtr& sp = s.W.space_ptr();
  const RArray Y = to_grid(s.W).imag(), Psi = to_grid(s.Q).real();
  const RArray Xa = 1.0 + Gd(s.W).real();
  const Field psi = from_grid_real(sp, Psi), y = from_grid_real(sp, Y);
  const RArray DPsi = re_grid(abs_derivative(psi)), Psia = re_grid(derivative(psi));
  const RArray Ya = re_grid(derivative(y));
  const double c = p.c;
  const RArray e = Psi * DPsi + p.g * Y.square() * Xa + c * Psia * Y.square() +
                   (c * c / 3) * Y.cube() * Xa;
  const RArray m = Psi * Ya - (c / 2) * Y.square() * Xa;
  return Invariants{4 * 0.5 * integrate_real(*sp, e), 4 * integrate_real(*sp, m)};
}

DiagnosticsRecord diagnostics(const WaveState& s, const Params& p) {
  DiagnosticsRecord r;
  r.t = s.t;
  const Invariants inv = invariants_real(s, p);
  r.energy = inv.energy;
  r.momentum = inv.momentum;
  const DiagonalState d = to_diagonal(s);
  const FrequencyShiftFields fs = frequency_shift(d, p);
  r.taylor_margin = (p.g + to_grid(fs.au).real()).minCoeff();
  r.cusp_margin = (1.0 + to_grid(d.Wd)).abs().minCoeff();
  r.holo_defect = std::max(holomorphy_report(s.W).relative_defect,
                           holomorphy_report(s.Q).relative_defect);
  r.norms = control_norms(d, s, p);
  r.H0 = sobolev_norm(d, 0);
  r.H1 = sobolev_norm(d, 1);
  return r;
}

void write_csv_header(std::ostream& os) {
  os << "t,energy,momentum,taylor_margin,cusp_margin,holo_defect,A,B,A_half,A_one,Au,Bu,H0,H1\n";
}

void write_csv_row(std::ostream& os, const DiagnosticsRecord& r) {
  const double v[] = {r.t,         r.energy,     r.momentum,     r.taylor_margin, r.cusp_margin,
                      r.holo_defect, r.norms.A,  r.norms.B,      r.norms.A_half,  r.norms.A_one,
                      r.norms.Au,  r.norms.Bu,   r.H0,           r.H1};
  char buf[32];
  for (std::size_t i = 0; i < std::size(v); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", v[i]);
    os << (i ? "," : "") << buf;
  }
  os << "\n";
}

}  // namespace hww
