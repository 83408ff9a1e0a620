// Experiment drivers shared by the CLI and the acceptance checks.
#pragma once

#include <string>
#include <vector>

#include "hww/energies_n.hpp"
#include "hww/normal_form.hpp"

namespace hww {

struct ModeSpec {
  int k;
  cplx a;
};
WaveState state_from_modes(const SpacePtr& sp, const std::vector<ModeSpec>& W, const std::vector<ModeSpec>& Q);

// --- dispersion ---------------------------------------------------------
struct DispersionOptions {
  double L = 2 * kPi;
  double eps = 1e-4;
  bool full = false;  // full nonlinear flow instead of the linear one
  double dt = 0.005;
  int steps = 2000;
};
struct DispersionResult {
  int k = 0;
  double g = 1, c = 0;
  double tau_plus = 0, tau_minus = 0;          // exact roots
  double fit_plus = 0, fit_minus = 0;          // fitted from W_k(t)
  double rel_error = 0;                        // max over the two roots
};
DispersionResult dispersion_fit(const Params& p, int k, const DispersionOptions& opt = {});

// --- conservation ---------------------------------------------------------
struct ConservationReport {
  int N = 0, steps = 0;
  double dt = 0, T = 0;
  // relative drifts max_t |E(t) - E(0)| / |E(0)|
  double energy_real = 0, momentum_real = 0, energy_complex = 0, momentum_complex = 0;
  // largest relative holomorphy defect of the state and of the unprojected RHS
  double holo_state = 0, holo_rhs = 0;
  double seconds = 0;
};
// dt = dt_fraction * CFL bound at t = 0
ConservationReport conservation_run(const WaveState& s0, const Params& p, double T, double dt_fraction = 0.5,
                                    int sample_every = 10);

// --- cubic residual sweep -------------------------------------------------
struct CubicSweep {
  std::vector<double> eps, rW, rQ;
  double slope_W = 0, slope_Q = 0;
};
CubicSweep cubic_residual_sweep(const WaveState& profile, const std::vector<double>& eps, const Params& p,
                                bool linear_only = false);

// --- tangent consistency --------------------------------------------------
struct TangentReport {
  std::vector<double> h, err;
  double slope = 0;
};
// central differences of the nonlinear flow map over [0, T] against the
// linearized flow advanced in lockstep with the background
TangentReport tangent_check(const WaveState& s, const Field& dW, const Field& dQ, const Params& p, double T,
                            double dt, const std::vector<double>& hs);

// --- lifespan -------------------------------------------------------------
struct LifespanOptions {
  double kappa = 1;           // horizon T = kappa / eps^2
  double dt = 0;              // 0 selects dt_fraction of the CFL bound
  double dt_fraction = 0.5;
  double growth_limit = 2;    // allowed H1 norm growth factor
  double taylor_fraction = 0.5;
  double small_data_limit = 0.3;  // larger eps are reported but cannot fail the scan
  int check_every = 10;
  int threads = 1;
};
struct LifespanEntry {
  double eps = 0, T = 0, t_reached = 0, dt = 0;
  double norm0 = 0, norm_max = 0, taylor_min = 0, cusp_min = 0;
  bool breached = false;
  std::string breach;
  bool pass = false;
  bool informational = false;
};
struct LifespanReport {
  std::vector<LifespanEntry> entries;
  bool pass = false;
};
LifespanReport lifespan_scan(const WaveState& profile, const std::vector<double>& eps, const Params& p,
                             const LifespanOptions& opt = {});

}  // namespace hww
