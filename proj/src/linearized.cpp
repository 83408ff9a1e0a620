#include "hww/linearized.hpp"

#include "grid_ops.hpp"

namespace hww {

using namespace detail;

Background make_background(const WaveState& s, const Params& p) {
  Background bg;
  bg.s = s;
  bg.d = to_diagonal(s);
  bg.adv = transport_coefficients(bg.d, p);
  bg.fs = frequency_shift(bg.d, p);
  return bg;
}

namespace {
struct Grids {
  CArray w, wa, ra, W, Wd, R, Ra, J;
};

Grids grids(const LinearizedState& l, const Background& bg) {
  Grids q;
  q.w = G(l.w);
  q.wa = Gd(l.w);
  q.ra = Gd(l.r);
  q.W = G(bg.s.W);
  q.Wd = G(bg.d.Wd);
  q.R = G(bg.d.R);
  q.Ra = Gd(bg.d.R);
  q.J = (1.0 + q.Wd).abs2().cast<cplx>();
  return q;
}

// unprojected G, G1, K, K1 on the grid
struct RawSources {
  CArray G, G1, K, K1;
};

RawSources raw_sources(const SpacePtr& sp, const Grids& q) {
  const CArray onep = 1.0 + q.Wd;
  const CArray m = (q.ra + q.Ra * q.w) / q.J + cj(q.R) * q.wa / onep.square();
  const CArray m1 = q.w / cj(onep) - cj(q.W) * q.wa / onep.square();
  const CArray m2 = cj(q.R) * q.w - (cj(q.W) * q.ra + cj(q.W) * q.Ra * q.w) / onep;
  const CArray n = cj(q.R) * (q.ra + q.Ra * q.w) / onep;
  RawSources s;
  s.G = onep * (Pg(sp, cj(m)) + Pbg(sp, m));
  s.G1 = -onep * (Pg(sp, cj(m1)) - Pbg(sp, m1)) + (cj(q.Wd) - q.Wd) * q.w / cj(onep);
  s.K = Pbg(sp, n) - Pg(sp, cj(n));
  s.K1 = Pg(sp, cj(m2)) + Pbg(sp, m2);
  return s;
}
}  // namespace

LinSources lin_sources(const LinearizedState& l, const Background& bg, const Params& p) {
  const SpacePtr& sp = l.w.space_ptr();
  const Grids q = grids(l, bg);
  require_no_cusp(*sp, 1.0 + q.Wd);
  const RawSources raw = raw_sources(sp, q);
  const cplx hc = I * 0.5 * p.c;
  LinSources s;
  s.G = project_P(C(sp, raw.G));
  s.G1 = project_P(C(sp, raw.G1));
  s.K = project_P(C(sp, raw.K));
  s.K1 = project_P(C(sp, raw.K1));
  s.Gu = s.G - hc * s.G1;
  s.Ku = s.K - hc * s.K1;

  const CArray rab = cj(q.ra), wb = cj(q.w), wab = cj(q.wa);
  s.PG2 = project_P(C(sp, -q.Wd * rab + q.R * wab));
  s.PK2 = project_P(C(sp, -q.R * rab));
  s.PG2_1 = project_P(C(sp, q.Wd * wb + q.W * wab + cj(q.Wd) * q.w - q.Wd * q.w));
  // sign taken from K1 = P conj(m2) + Pbar m2 itself; the opposite sign
  // leaves a part linear in the background in K1 - PK2_1
  s.PK2_1 = project_P(C(sp, q.R * wb - q.W * rab));
  return s;
}

LinRhs rhs_linearized(const LinearizedState& l, const Background& bg, const Params& p) {
  const SpacePtr& sp = l.w.space_ptr();
  const Grids q = grids(l, bg);
  const CArray onep = 1.0 + q.Wd;
  require_no_cusp(*sp, onep);
  const RawSources raw = raw_sources(sp, q);
  const cplx hc = I * 0.5 * p.c;
  const CArray Gu = raw.G - hc * raw.G1, Ku = raw.K - hc * raw.K1;
  const CArray bu = G(bg.adv.bu), au = G(bg.fs.au);

  LinRhs out;
  out.dw = holomorphic_part(C(sp, -bu * q.wa - (q.ra + q.Ra * q.w) / cj(onep) + Gu));
  out.dr = holomorphic_part(
      C(sp, -bu * q.ra - (I * p.c) * G(l.r) + I * (p.g + au) * q.w / onep + Ku));
  return out;
}

double energy_e0(const Field& w, const Field& r, double g) {
  const Space& sp = w.space();
  const CArray rg = G(r), rab = cj(Gd(r));
  return integrate_real(sp, g * G(w).abs2() + (rg * rab).imag());
}

double energy_lin2(const LinearizedState& l, const Background& bg, const Params& p) {
  const Space& sp = l.w.space();
  const CArray rg = G(l.r), rab = cj(Gd(l.r));
  const RArray au = to_grid(bg.fs.au).real();
  return integrate_real(sp, (p.g + au) * G(l.w).abs2() + (rg * rab).imag());
}

double energy_lin3(const LinearizedState& l, const Background& bg, const Params& p) {
  const Space& sp = l.w.space();
  const CArray w = G(l.w), ra = Gd(l.r), R = G(bg.d.R), Wd = G(bg.d.Wd);
  const RArray corr = 2 * (cj(R) * w * ra).imag() - 2 * (cj(Wd) * w.square()).real();
  return energy_lin2(l, bg, p) + integrate_real(sp, corr);
}

bool lin3_regime_ok(const Background& bg, const Params& p, double limit) {
  return control_norms(bg.d, bg.s, p).Au <= limit;
}

LinearizedState tangent_from_perturbation(const Background& bg, const Field& dW, const Field& dQ) {
  const SpacePtr& sp = dW.space_ptr();
  return LinearizedState{dW, C(sp, G(dQ) - G(bg.d.R) * G(dW))};
}

std::pair<Field, Field> perturbation_from_tangent(const Background& bg, const LinearizedState& l) {
  const SpacePtr& sp = l.w.space_ptr();
  return {l.w, C(sp, G(l.r) + G(bg.d.R) * G(l.w))};
}

CoupledState coupled_rk4_step(const CoupledState& cs, double dt, const Params& p) {
  struct K {
    Rhs full;
    LinRhs lin;
  };
  auto f = [&](const CoupledState& u) {
    return K{rhs_full(u.s, p), rhs_linearized(u.l, make_background(u.s, p), p)};
  };
  auto shift = [](const CoupledState& u, double h, const K& k) {
    CoupledState v = u;
    v.s.W += h * k.full.dW;
    v.s.Q += h * k.full.dQ;
    v.l.w += h * k.lin.dw;
    v.l.r += h * k.lin.dr;
    return v;
  };
  const K k1 = f(cs);
  const K k2 = f(shift(cs, dt / 2, k1));
  const K k3 = f(shift(cs, dt / 2, k2));
  const K k4 = f(shift(cs, dt, k3));
  CoupledState out = cs;
  out.s.W += (dt / 6) * (k1.full.dW + 2.0 * k2.full.dW + 2.0 * k3.full.dW + k4.full.dW);
  out.s.Q += (dt / 6) * (k1.full.dQ + 2.0 * k2.full.dQ + 2.0 * k3.full.dQ + k4.full.dQ);
  out.l.w += (dt / 6) * (k1.lin.dw + 2.0 * k2.lin.dw + 2.0 * k3.lin.dw + k4.lin.dw);
  out.l.r += (dt / 6) * (k1.lin.dr + 2.0 * k2.lin.dr + 2.0 * k3.lin.dr + k4.lin.dr);
  out.s.t = cs.s.t + dt;
  return out;
}

}  // namespace hww
