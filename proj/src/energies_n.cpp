#include "hww/energies_n.hpp"

#include <cmath>
#include <limits>

#include "grid_ops.hpp"
#include "hww/fit.hpp"

namespace hww {

using namespace detail;

namespace {
Field dn(Field f, int n) {
  for (int k = 0; k < n; ++k) f = derivative(f);
  return f;
}

void require_no_winding(const CArray& onep) {
  double turn = 0;
  const Eigen::Index M = onep.size();
  for (Eigen::Index j = 0; j < M; ++j) turn += std::arg(onep((j + 1) % M) / onep(j));
  const long w = std::lround(turn / (2 * kPi));
  if (w != 0) throw Error("1 + Wd winds around the origin " + std::to_string(w) + " times");
}

double integ(const Space& sp, const RArray& u) { return integrate_real(sp, u); }
}  // namespace

GoodVariables good_variables(const DiagonalState& d, int n, const Params& p, const GoodVariableOptions& opt) {
  (void)p;
  if (n < 1) throw Error("good variables are defined for n >= 1");
  const SpacePtr& sp = d.Wd.space_ptr();
  const CArray onep = 1.0 + G(d.Wd);
  require_no_cusp(*sp, onep);
  require_no_winding(onep);
  const RArray phi = -2.0 * onep.abs().log();
  const bool literal = opt.form == GoodVariableForm::Literal && n >= 2;
  const double k = opt.weight_exponent.value_or(literal ? double(n) : double(n + 1));
  const CArray wt = (k * phi).exp().cast<cplx>();

  GoodVariables gv;
  gv.n = n;
  gv.form = opt.form;
  gv.phi = from_grid_real(sp, phi);
  if (!literal) {
    gv.w = project_P(C(sp, wt * G(dn(d.Wd, n))));
    gv.r = project_P(C(sp, wt * onep * G(dn(d.R, n))));
  } else {
    const CArray Wn = G(dn(d.Wd, n)), Wn1 = G(dn(d.Wd, n - 1));
    const CArray Rn = G(dn(d.R, n)), Rn1 = G(dn(d.R, n - 1));
    const CArray Rt = onep * Rn - Gd(d.R) * Wn1 + double(2 * n + 1) * Gd(d.Wd) * Rn1;
    gv.w = project_P(C(sp, wt * Wn));
    gv.r = project_P(C(sp, wt * Rt));
  }
  return gv;
}

double good_variable_reference_norm(const DiagonalState& d, int n) {
  return pair_norm(dn(d.Wd, n), dn(d.R, n));
}

double energy_n0_high(const DiagonalState& d, const Params& p) {
  const Space& sp = d.Wd.space();
  const CArray Wd = G(d.Wd), R = G(d.R), Ra = Gd(d.R);
  const RArray au = to_grid(frequency_shift(d, p).au).real();
  return integ(sp, (p.g + au) * Wd.abs2() + (R * cj(Ra)).imag() + 2 * (cj(R) * Wd * Ra).imag() -
                       2 * (cj(Wd) * Wd.square()).real());
}

namespace {
double nf_low_n0(const DiagonalState& d, const Params& p) {
  const Space& sp = d.Wd.space();
  const double g = p.g, c = p.c;
  const CArray W = G(antiderivative_meanfree(d.Wd)), Wd = G(d.Wd), R = G(d.R), Ra = Gd(d.R);
  const RArray E = Wd.abs2(), S = (cj(Ra) * R).imag();
  const RArray ReR = R.real(), ImW = W.imag();
  const RArray t1 = 3 * ReR * E + (2 / g) * ReR * S - (Wd * cj(W) * Ra).real() + (Wd.square() * cj(R)).real();
  const RArray t2 = 2.5 * ImW * (g * E + S) - (g / 2) * (cj(W) * Wd.square()).imag() +
                    0.75 * (Wd * cj(R).square()).real() + 0.75 * (Wd * R.abs2().cast<cplx>()).real();
  const RArray t3 = (R * W * cj(Wd)).imag() + (W * cj(R) * Wd).imag();
  const RArray t4 = (Wd * W.abs2().cast<cplx>()).real();
  return -c * integ(sp, t1) - (c * c / g) * integ(sp, t2) - 1.5 * (c * c * c / g) * integ(sp, t3) -
         1.5 * (c * c * c * c / g) * integ(sp, t4);
}
}  // namespace

double energy_nf_low_n0_literal(const DiagonalState& d, const Params& p) {
  const Space& sp = d.Wd.space();
  const double g = p.g, c = p.c;
  const CArray W = G(antiderivative_meanfree(d.Wd)), Wd = G(d.Wd), R = G(d.R), Ra = Gd(d.R);
  const RArray q = Wd.abs2() - (cj(Ra) * R).imag();
  const double t1 = integrate(sp, 2.0 * (R.real() * q).cast<cplx>() - Wd * cj(W) * Ra + Wd.square() * cj(R)).real();
  const double t2 =
      integrate(sp, 2.5 * (W.imag() * q).cast<cplx>() - 0.5 * cj(W) * Wd.square() - 0.5 * Wd * cj(R).square())
          .real();
  const double t3 = integrate(sp, R * W * cj(Wd)).imag();
  const double t4 = integrate(sp, Wd * W.abs2().cast<cplx>()).real();
  return -c * t1 - (c * c / g) * t2 - 1.5 * (c * c * c / g) * t3 - 1.5 * (c * c * c * c / g) * t4;
}

EnergyBreakdown energy_n0_cubic(const DiagonalState& d, const Params& p) {
  EnergyBreakdown e;
  e.n = 0;
  e.high = energy_n0_high(d, p);
  e.nf_low = nf_low_n0(d, p);
  e.total = e.high + e.nf_low;
  e.H_n = energy_e0(d.Wd, d.R, p.g);
  return e;
}

double energy_n_high_c(const GoodVariables& gv, const DiagonalState& d, const Params& p) {
  const Space& sp = d.Wd.space();
  const int n = gv.n;
  const double c = p.c;
  const CArray w = G(gv.w), r = G(gv.r), rab = cj(Gd(gv.r));
  const RArray au = to_grid(frequency_shift(d, p).au).real();
  const RArray weight =
      c * (2 * n + 3) * G(d.R).real() + c * c * (2 * n + 2.5) * G(antiderivative_meanfree(d.Wd)).imag();
  return -integ(sp, weight * ((p.g + au) * w.abs2() + (r * rab).imag()));
}

EnergyBreakdown energy_n_high(const GoodVariables& gv, const DiagonalState& d, const Params& p) {
  const Space& sp = d.Wd.space();
  const int n = gv.n;
  const CArray w = G(gv.w), r = G(gv.r), ra = Gd(gv.r);
  const CArray Wd = G(d.Wd), R = G(d.R), Ra = Gd(d.R);
  const RArray au = to_grid(frequency_shift(d, p).au).real();
  RArray dens = (p.g + au) * w.abs2() + (r * cj(ra)).imag() + 2 * (cj(R) * w * ra).imag() -
                2 * (cj(Wd) * w.square()).real();
  if (n >= 2) {
    const double m = gv.form == GoodVariableForm::Literal ? 2 * n : 2 * (n + 1);
    dens += m * (Ra * cj(w) * cj(r)).imag();
  }
  EnergyBreakdown e;
  e.n = n;
  e.high = integ(sp, dens);
  e.high_c = energy_n_high_c(gv, d, p);
  e.total = e.high + e.high_c;
  e.H_n = energy_e0(dn(d.Wd, n), dn(d.R, n), p.g);
  return e;
}

double energy_nf_high(const DiagonalState& d, int n, const Params& p) {
  if (n < 1) throw Error("energy_nf_high is defined for n >= 1");
  const Space& sp = d.Wd.space();
  const double g = p.g, c = p.c;
  const CArray Wd = G(d.Wd), R = G(d.R), Ra = Gd(d.R);
  const CArray Wn = G(dn(d.Wd, n)), Rn = G(dn(d.R, n)), Rn1 = G(dn(d.R, n + 1));
  const RArray q = g * Wn.abs2() + (cj(Rn1) * Rn).imag();
  RArray second = (cj(R) * Wn * Rn1).imag() - g * (cj(Wd) * Wn.square()).real();
  if (n >= 2) second += (n + 1) * (Ra * cj(Wn) * cj(Rn)).imag();
  const RArray third = c * R.real() * Wn.abs2() + 2 * (Wd * cj(Rn1) * Rn).imag();
  return integ(sp, (1.0 - 4.0 * (n + 1) * Wd.real()) * q) + 2 * integ(sp, second) + integ(sp, third);
}

double energy_nf_high_c(const DiagonalState& d, int n, const Params& p) {
  const Space& sp = d.Wd.space();
  const double c = p.c;
  const CArray Wn = G(dn(d.Wd, n)), Rn = G(dn(d.R, n)), Rn1 = G(dn(d.R, n + 1));
  const RArray weight =
      c * (2 * n + 3) * G(d.R).real() + c * c * (2 * n + 2.5) * G(antiderivative_meanfree(d.Wd)).imag();
  return -integ(sp, weight * (Wn.abs2() + (cj(Rn1) * Rn).imag()));
}

double profile_norm(const WaveState& s) {
  return l2_norm(s.W) + hhalf_norm(s.Q) + l2_norm(derivative(s.W)) + hhalf_norm(derivative(s.Q));
}

DriftReport drift_scan(const WaveState& profile, const std::vector<double>& eps_list, const Params& p,
                       const DriftScanOptions& opt) {
  const double pn = profile_norm(profile);
  if (!(pn > 0)) throw Error("drift scan profile is zero");
  const int m = static_cast<int>(eps_list.size());
  DriftReport rep;
  rep.n = opt.n;
  rep.c = p.c;
  rep.g = p.g;
  rep.eps = eps_list;
  rep.drift_raw.assign(m, std::numeric_limits<double>::quiet_NaN());
  rep.drift_mod = rep.drift_raw;
  rep.unstable.assign(m, false);

  auto energies = [&](const WaveState& s) {
    const DiagonalState d = to_diagonal(s);
    const double raw = energy_e0(dn(d.Wd, opt.n), dn(d.R, opt.n), p.g);
    const double mod = opt.n == 0 ? energy_n0_cubic(d, p).total
                                  : energy_n_high(good_variables(d, opt.n, p, opt.good), d, p).total;
    return std::pair{raw, mod};
  };

  const int steps = static_cast<int>(std::lround(opt.T / opt.dt));
  std::vector<char> bad(m, 0);
  parallel_for_index(m, opt.threads, [&](int i) {
    WaveState s = profile;
    s.W *= eps_list[i] / pn;
    s.Q *= eps_list[i] / pn;
    s.t = 0;
    try {
      const auto [r0, m0] = energies(s);
      double dr = 0, dm = 0;
      for (int j = 1; j <= steps; ++j) {
        s = step(s, opt.dt, p);
        if (j % opt.sample_every == 0 || j == steps) {
          const auto [r1, m1] = energies(s);
          dr = std::max(dr, std::abs(r1 - r0));
          dm = std::max(dm, std::abs(m1 - m0));
        }
      }
      rep.drift_raw[i] = dr;
      rep.drift_mod[i] = dm;
    } catch (const Error&) {
      bad[i] = 1;
    }
  });

  std::vector<double> e, dr, dm;
  for (int i = 0; i < m; ++i) {
    rep.unstable[i] = bad[i] != 0;
    if (!bad[i]) {
      e.push_back(eps_list[i]);
      dr.push_back(rep.drift_raw[i]);
      dm.push_back(rep.drift_mod[i]);
    }
  }
  rep.slope_raw = rep.slope_mod = std::numeric_limits<double>::quiet_NaN();
  if (e.size() >= 2) {
    rep.slope_raw = loglog_slope(e, dr);
    rep.slope_mod = loglog_slope(e, dm);
  }
  return rep;
}

}  // namespace hww
