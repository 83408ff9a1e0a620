// Higher-order good variables and the quasilinear modified energies, plus
// the amplitude scan of their drift.
#pragma once

#include <optional>
#include <vector>

#include "hww/linearized.hpp"

namespace hww {

// Consistent: w = P[e^{(n+1) phi} d^n Wd], r = P[e^{(n+1) phi} (1 + Wd) d^n R]
// for every n >= 1. Its cubic energy agrees with the normal form energy.
// Literal: for n >= 2 the weight is e^{n phi} and r carries the extra terms
// -R_alpha d^{n-1} Wd + (2n+1) Wd_alpha d^{n-1} R. Kept for comparison.
enum class GoodVariableForm { Consistent, Literal };

struct GoodVariableOptions {
  GoodVariableForm form = GoodVariableForm::Consistent;
  std::optional<double> weight_exponent;  // overrides k in e^{k phi}
};

struct GoodVariables {
  int n = 1;
  GoodVariableForm form = GoodVariableForm::Consistent;
  Field w, r;
  Field phi;  // -2 Re log(1 + Wd), real
};

GoodVariables good_variables(const DiagonalState& d, int n, const Params& p, const GoodVariableOptions& opt = {});

// ||(d^n Wd, d^n R)||_{L^2 x H^{1/2}}
double good_variable_reference_norm(const DiagonalState& d, int n);

struct EnergyBreakdown {
  int n = 0;
  double total = 0, high = 0, high_c = 0, nf_low = 0;
  double H_n = 0;  // integral of g |d^n Wd|^2 + Im(d^n R conj(d^{n+1} R))
};

// n = 0: cubic high-frequency part plus the explicit lower-order normal form
// correction (in the form that cancels the cubic drift for all c)
EnergyBreakdown energy_n0_cubic(const DiagonalState& d, const Params& p);
// the lower-order correction transcribed term by term; kept for comparison
double energy_nf_low_n0_literal(const DiagonalState& d, const Params& p);
double energy_n0_high(const DiagonalState& d, const Params& p);

// n >= 1: high part (the linearized cubic energy for n = 1) and the c-correction.
// For n >= 2 the density gains m Im(R_alpha conj(w) conj(r)) with m = 2(n+1)
// in the consistent form and m = 2n in the literal one.
EnergyBreakdown energy_n_high(const GoodVariables& gv, const DiagonalState& d, const Params& p);
double energy_n_high_c(const GoodVariables& gv, const DiagonalState& d, const Params& p);

// cubic normal form energies written directly in (Wd, R)
double energy_nf_high(const DiagonalState& d, int n, const Params& p);
double energy_nf_high_c(const DiagonalState& d, int n, const Params& p);

// ||W||_{L^2} + ||Q||_{H^{1/2}} + ||W_alpha||_{L^2} + ||Q_alpha||_{H^{1/2}}
double profile_norm(const WaveState& s);

struct DriftReport {
  int n = 0;
  double c = 0, g = 1;
  std::vector<double> eps, drift_raw, drift_mod;
  std::vector<bool> unstable;
  double slope_raw = 0, slope_mod = 0;
};

struct DriftScanOptions {
  int n = 0;
  double T = 5;
  double dt = 0.02;
  int sample_every = 5;
  int threads = 1;
  GoodVariableOptions good;  // used for n >= 1
};

// The profile is rescaled to unit profile_norm and then by each eps. Drift is
// the largest |E(t) - E(0)| over the sampled times.
DriftReport drift_scan(const WaveState& profile, const std::vector<double>& eps_list, const Params& p,
                       const DriftScanOptions& opt = {});

}  // namespace hww
