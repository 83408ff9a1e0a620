#include "hww/wavestate.hpp"

#include <cmath>

#include "grid_ops.hpp"

namespace hww {

using namespace detail;

void Params::validate() const {
  if (!(g > 0)) throw Error("gravity g must be positive");
  if (!(c >= 0)) throw Error("vorticity c must be nonnegative");
}

WaveState zero_state(const SpacePtr& sp) { return WaveState{Field(sp), Field(sp), 0.0}; }

DiagonalState to_diagonal(const WaveState& s) {
  require_compatible(s.W, s.Q);
  const SpacePtr& sp = s.W.space_ptr();
  DiagonalState d;
  d.W = s.W;
  d.Wd = derivative(s.W);
  const CArray onep = 1.0 + G(d.Wd);
  require_no_cusp(*sp, onep);
  d.R = C(sp, Gd(s.Q) / onep);
  d.Y = C(sp, (onep - 1.0) / onep);
  d.J = C(sp, onep.abs2().cast<cplx>());
  return d;
}

DiagonalState to_diagonal(const Field& Wd, const Field& R) {
  require_compatible(Wd, R);
  const SpacePtr& sp = Wd.space_ptr();
  DiagonalState d;
  d.Wd = Wd;
  d.R = R;
  d.W = antiderivative_meanfree(Wd);
  const CArray onep = 1.0 + G(Wd);
  require_no_cusp(*sp, onep);
  d.Y = C(sp, (onep - 1.0) / onep);
  d.J = C(sp, onep.abs2().cast<cplx>());
  return d;
}

TransportFields auxiliary_transport(const WaveState& s, const Params& p) {
  const SpacePtr& sp = s.W.space_ptr();
  const CArray W = G(s.W), Wa = Gd(s.W), Qa = Gd(s.Q);
  const CArray onep = 1.0 + Wa;
  require_no_cusp(*sp, onep);
  const CArray J = onep.abs2().cast<cplx>();
  TransportFields t;
  t.F = project_P(C(sp, (Qa - cj(Qa)) / J));
  t.F1 = project_P(C(sp, W / cj(onep) + cj(W) / onep));
  t.Fu = t.F - (I * 0.5 * p.c) * t.F1;
  t.T1 = project_P(C(sp, W * cj(Qa) / cj(onep) - cj(W) * Qa / onep));
  return t;
}

AdvectionFields transport_coefficients(const DiagonalState& d, const Params& p) {
  const SpacePtr& sp = d.Wd.space_ptr();
  const CArray onep = 1.0 + G(d.Wd), R = G(d.R), W = G(d.W);
  require_no_cusp(*sp, onep);
  AdvectionFields a;
  // Q_alpha / J = R / (1 + conj(Wd))
  a.b = project_P(C(sp, R / cj(onep))) + project_Pbar(C(sp, cj(R) / onep));
  a.b1 = project_P(C(sp, W / cj(onep))) - project_Pbar(C(sp, cj(W) / onep));
  a.bu = a.b - (I * 0.5 * p.c) * a.b1;
  return a;
}

FrequencyShiftFields frequency_shift(const DiagonalState& d, const Params& p) {
  const SpacePtr& sp = d.Wd.space_ptr();
  const CArray R = G(d.R), Ra = Gd(d.R), W = G(d.W), Wd = G(d.Wd);
  FrequencyShiftFields f;
  f.a = I * (project_Pbar(C(sp, cj(R) * Ra)) - project_P(C(sp, R * cj(Ra))));
  f.N = project_P(C(sp, W * cj(Ra) - cj(Wd) * R)) + project_Pbar(C(sp, cj(W) * Ra - Wd * cj(R)));
  f.a1 = d.R + conj(d.R) - f.N;
  f.au = f.a + (0.5 * p.c) * f.a1;
  return f;
}

MFields m_fields(const DiagonalState& d, const Params& p) {
  const SpacePtr& sp = d.Wd.space_ptr();
  const CArray R = G(d.R), Ra = Gd(d.R), Y = G(d.Y), Ya = Gd(d.Y), W = G(d.W);
  MFields m;
  m.M = project_Pbar(C(sp, cj(R) * Ya - Ra * cj(Y))) + project_P(C(sp, R * cj(Ya) - cj(Ra) * Y));
  m.M1 = derivative(project_P(C(sp, W * cj(Y)))) - derivative(project_Pbar(C(sp, cj(W) * Y)));
  m.Mu = m.M - (I * 0.5 * p.c) * m.M1;
  return m;
}

AuxiliaryFields auxiliary_fields(const WaveState& s, const DiagonalState& d, const Params& p) {
  return AuxiliaryFields{auxiliary_transport(s, p), transport_coefficients(d, p),
                         frequency_shift(d, p), m_fields(d, p)};
}

double besov_block_sup(const Field& f) {
  const Space& sp = f.space();
  double best = 0;
  for (int lo = 1; lo <= sp.N() / 2; lo *= 2) {
    double s = 0;
    for (int i = 0; i < sp.N(); ++i) {
      const int ak = std::abs(sp.wavenumber(i));
      // zero mode merged into the lowest block
      if ((ak >= lo && ak < 2 * lo) || (lo == 1 && ak == 0)) s += std::norm(f.coeffs()(i));
    }
    best = std::max(best, std::sqrt(s));
  }
  return best;
}

ControlNorms control_norms(const DiagonalState& d, const WaveState& s, const Params& p) {
  ControlNorms n;
  const Field hR = half_derivative(d.R);
  n.A = max_abs_grid(d.Wd) + max_abs_grid(d.Y) + std::max(max_abs_grid(hR), besov_block_sup(hR));
  n.B = max_abs_grid(half_derivative(d.Wd)) + max_abs_grid(derivative(d.R));
  n.A_half = max_abs_grid(half_derivative(s.W)) + max_abs_grid(d.R);
  n.A_one = max_abs_grid(s.W);
  n.Au = n.A + p.c * n.A_half + p.c * p.c * n.A_one;
  n.Bu = n.B + p.c * n.A + p.c * p.c * n.A_half;
  return n;
}

double pair_norm(const Field& w, const Field& r) {
  const double a = l2_norm(w), b = hhalf_norm(r);
  return std::sqrt(a * a + b * b);
}

double sobolev_norm(const DiagonalState& d, int n) {
  double s = 0;
  Field w = d.Wd, r = d.R;
  for (int k = 0; k <= n; ++k) {
    s += pair_norm(w, r);
    w = derivative(w);
    r = derivative(r);
  }
  return s;
}

}  // namespace hww
