#include "hww/normal_form.hpp"

#include <algorithm>
#include <initializer_list>
#include <random>

#include "grid_ops.hpp"

namespace hww {

using namespace detail;

namespace {
const cplx i1(0, 1);
}

cplx SymbolTable::Bh(double x, double e) const {
  const double c2 = c * c, c4 = c2 * c2;
  return -i1 * (x + e) / 2.0 + i1 * c2 / (4 * g) * (x + e) * (x + e) / (x * e) -
         i1 * c4 / (8 * g * g) * (x + e) / (x * e);
}
cplx SymbolTable::Ch(double x, double e) const { return -i1 * c * c / (8 * g * g) * (x + e); }
cplx SymbolTable::Dh(double x, double e) const {
  return i1 * c * c * c / (4 * g * g) * (x + e) / x - i1 * c / (2 * g) * (x + e);
}
cplx SymbolTable::Fh(double x, double e) const {
  return i1 * c / 4.0 - i1 * c * c * c / (8 * g) * (x + e) / (x * e);
}
cplx SymbolTable::Hh(double x, double e) const { return -i1 * c / (4 * g) * (x + e); }
cplx SymbolTable::Ah(double x, double e) const {
  return -i1 * e + i1 * c * c / (2 * g) * e / x + i1 * c * c / (4 * g);
}

cplx SymbolTable::Ba(double x, double e) const {
  const double c2 = c * c;
  return -i1 * c2 * c2 / (4 * g * g) / e + i1 * c2 / (2 * g) * x / e + i1 * c2 / (4 * g) - i1 * x;
}
cplx SymbolTable::Ca(double x, double) const { return -i1 * c * c / (4 * g * g) * x; }
cplx SymbolTable::Da(double x, double) const {
  return i1 * c * c * c / (4 * g * g) - i1 * c / (2 * g) * x;
}
cplx SymbolTable::Ea(double x, double e) const {
  return i1 * c * c * c / (4 * g * g) * x / e - i1 * c / (2 * g) * x;
}
cplx SymbolTable::Fa(double, double e) const { return -i1 * c * c * c / (4 * g) / e + i1 * c / 2.0; }
cplx SymbolTable::Ha(double x, double) const { return -i1 * c / (2 * g) * x; }
cplx SymbolTable::Aa(double, double) const { return i1 * c * c / (4 * g); }
cplx SymbolTable::Ga(double x, double e) const { return i1 * c * c / (2 * g) * x / e - i1 * x; }

SymbolTable symbols(const Params& p) {
  p.validate();
  return SymbolTable{p.g, p.c};
}

namespace {
EquationResidual eq(std::initializer_list<cplx> terms) {
  EquationResidual r{0, 0};
  for (cplx t : terms) {
    r.residual += t;
    r.scale = std::max(r.scale, std::abs(t));
  }
  return r;
}

void check_sample(double x, double e) {
  if (!(x < 0 && e < 0)) throw Error("symbol sample frequencies must both be negative");
}
}  // namespace

std::array<EquationResidual, 6> holomorphic_system(const SymbolTable& s, double x, double e) {
  check_sample(x, e);
  const double g = s.g, c = s.c;
  // [f]_sym = (f(x, e) + f(e, x)) / 2
  const cplx xD = 0.5 * (x * s.Dh(x, e) + e * s.Dh(e, x));
  const cplx Ds = 0.5 * (s.Dh(x, e) + s.Dh(e, x));
  const cplx xA = 0.5 * (x * s.Ah(x, e) + e * s.Ah(e, x));
  const cplx As = 0.5 * (s.Ah(x, e) + s.Ah(e, x));
  return {
      eq({2 * e * s.Bh(x, e), -2 * g * s.Ch(x, e), c * s.Dh(x, e), -(x + e) * s.Ah(x, e)}),
      eq({2 * c * s.Ch(x, e), xD, -(x + e) * s.Hh(x, e)}),
      eq({g * Ds, (x + e) * s.Fh(x, e), i1 * c / 4.0 * (x + e)}),
      eq({2 * e * s.Fh(x, e), -2 * g * s.Hh(x, e), g * s.Dh(x, e), -i1 * c / 2.0 * e}),
      eq({c * s.Hh(x, e), xA, g * s.Ch(x, e), i1 * x * e}),
      eq({g * As, -g * s.Bh(x, e), c * s.Fh(x, e)}),
  };
}

std::array<EquationResidual, 8> mixed_system(const SymbolTable& s, double x, double e) {
  check_sample(x, e);
  const double g = s.g, c = s.c;
  const cplx B = s.Ba(x, e), Cc = s.Ca(x, e), D = s.Da(x, e), E = s.Ea(x, e);
  const cplx F = s.Fa(x, e), H = s.Ha(x, e), A = s.Aa(x, e), Gg = s.Ga(x, e);
  return {
      eq({x * B, g * Cc, c * E, -(x - e) * Gg, i1 * x * e}),
      eq({e * B, g * Cc, (x - e) * A, c * D, i1 * x * e}),
      eq({x * D, -e * E, -(x - e) * H}),
      eq({g * D, -g * E, -(x - e) * F, -i1 * c / 2.0 * (e - x)}),
      eq({x * F, g * H, g * E, i1 * c / 2.0 * x}),
      eq({e * F, g * H, 2 * c * A, -g * D, -i1 * c / 2.0 * e}),
      eq({x * A, g * Cc, -c * H, -e * Gg, -i1 * x * e}),
      eq({g * A, g * B, -c * F, -g * Gg}),
  };
}

std::vector<SymbolSystemReport> verify_symbol_systems(const Params& p, int samples, std::uint64_t seed,
                                                      double lo, double hi, double tol) {
  if (!(lo < hi && hi < 0)) throw Error("sampling box must lie in the negative quadrant");
  const SymbolTable s = symbols(p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(lo, hi);
  SymbolSystemReport h{"holomorphic", samples}, m{"mixed", samples};
  auto absorb = [](SymbolSystemReport& r, const EquationResidual& q) {
    r.max_residual = std::max(r.max_residual, std::abs(q.residual));
    r.max_coefficient = std::max(r.max_coefficient, q.scale);
  };
  for (int j = 0; j < samples; ++j) {
    const double x = U(rng), e = U(rng);
    for (const auto& q : holomorphic_system(s, x, e)) absorb(h, q);
    for (const auto& q : mixed_system(s, x, e)) absorb(m, q);
  }
  for (auto* r : {&h, &m}) r->pass = r->max_residual <= tol * (1 + r->max_coefficient);
  return {h, m};
}

namespace {
QuadraticCorrection nf_spatial(const Field& Wf, const Field& Qf, const Field& Wi_f, const Params& p) {
  const SpacePtr& sp = Wf.space_ptr();
  const double g = p.g, c = p.c, c2 = c * c, c3 = c2 * c, c4 = c2 * c2;
  const CArray W = G(Wf), Q = G(Qf), Wa = Gd(Wf), Qa = Gd(Qf), Wi = G(Wi_f);
  const CArray Ws = W + cj(W), Qs = Q + cj(Q), Wid = Wi - cj(Wi);
  const CArray W2 = -Ws * Wa - c / (2 * g) * (Qs * Wa + Ws * Qa) +
                    I * c2 / (2 * g) * (Wid * Wa + W.square() + 0.5 * W.abs2().cast<cplx>()) -
                    c2 / (4 * g * g) * Qs * Qa + I * c3 / (4 * g * g) * (Qs * W + Wid * Qa) +
                    c4 / (4 * g * g) * Wid * W;
  const CArray Q2 = -Ws * Qa - c / (2 * g) * Qs * Qa +
                    I * c / 4.0 * (W.square() + 2.0 * W.abs2().cast<cplx>()) +
                    I * c2 / (2 * g) * (Wid * Qa + 0.5 * Qs * W) + c3 / (4 * g) * Wid * W;
  return QuadraticCorrection{project_P(C(sp, W2)), project_P(C(sp, Q2))};
}
}  // namespace

QuadraticCorrection quadratic_correction(const WaveState& s, const Params& p) {
  return nf_spatial(s.W, s.Q, antiderivative(s.W), p);
}

QuadraticCorrection quadratic_correction_symbolic(const WaveState& s, const Params& p) {
  const SpacePtr& sp = s.W.space_ptr();
  const Space& S = *sp;
  const SymbolTable T = symbols(p);
  const int N = S.N();
  CArray W2 = CArray::Zero(N), Q2 = CArray::Zero(N);
  auto add = [&](CArray& out, int k, cplx v) {
    if (k >= -N / 2 && k < N / 2) out(S.index(k)) += v;
  };
  for (int k = -N / 2; k < 0; ++k) {
    const double x = S.xi()(S.index(k));
    const cplx Wk = s.W.at(k), Qk = s.Q.at(k);
    for (int l = -N / 2; l < 0; ++l) {
      const double e = S.xi()(S.index(l));
      const cplx Wl = s.W.at(l), Ql = s.Q.at(l);
      const cplx Wlb = std::conj(Wl), Qlb = std::conj(Ql);
      add(W2, k + l, T.Bh(x, e) * Wk * Wl + T.Ch(x, e) * Qk * Ql + T.Dh(x, e) * Wk * Ql);
      add(Q2, k + l, T.Fh(x, e) * Wk * Wl + T.Hh(x, e) * Qk * Ql + T.Ah(x, e) * Wk * Ql);
      add(W2, k - l, T.Ba(x, e) * Wk * Wlb + T.Ca(x, e) * Qk * Qlb + T.Da(x, e) * Wk * Qlb +
                         T.Ea(x, e) * Qk * Wlb);
      add(Q2, k - l, T.Fa(x, e) * Wk * Wlb + T.Ha(x, e) * Qk * Qlb + T.Aa(x, e) * Wk * Qlb +
                         T.Ga(x, e) * Qk * Wlb);
    }
  }
  return QuadraticCorrection{project_P(Field(sp, W2)), project_P(Field(sp, Q2))};
}

CubicResidual cubic_residual(const WaveState& s, const Params& p, bool linear_only) {
  const Rhs d = linear_only ? rhs_linear(s, p) : rhs_full(s, p);
  auto nf = [&](const Field& W, const Field& Q) {
    return nf_spatial(W, Q, antiderivative_meanfree(W), p);
  };
  // the corrections are quadratic, so the polarization difference is their
  // exact time derivative along (dW, dQ)
  const QuadraticCorrection plus = nf(s.W + d.dW, s.Q + d.dQ);
  const QuadraticCorrection minus = nf(s.W - d.dW, s.Q - d.dQ);
  const QuadraticCorrection base = nf(s.W, s.Q);
  const Field dW2 = 0.5 * (plus.W2 - minus.W2), dQ2 = 0.5 * (plus.Q2 - minus.Q2);
  const Field Wn = s.W + base.W2, Qn = s.Q + base.Q2;
  CubicResidual r;
  r.fW = d.dW + dW2 + derivative(Qn);
  r.fQ = d.dQ + dQ2 - (I * p.g) * Wn + (I * p.c) * Qn;
  r.rW = l2_norm(r.fW);
  r.rQ = l2_norm(r.fQ);
  return r;
}

}  // namespace hww
