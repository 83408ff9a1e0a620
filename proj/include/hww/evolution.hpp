// Right-hand sides of the holomorphic water-wave system with constant
// vorticity, time stepping, conserved quantities and diagnostics.
#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <utility>

#include "hww/wavestate.hpp"

namespace hww {

struct NumericalBlowup : Error {
  using Error::Error;
};
struct CflViolation : Error {
  using Error::Error;
};
struct HolomorphyViolation : Error {
  using Error::Error;
};

struct Rhs {
  Field dW, dQ;
};

// project = true applies the final holomorphic projection (k > 0 removed,
// zero mode kept whole). project = false returns the raw expressions.
Rhs rhs_full(const WaveState& s, const Params& p, bool project = true);
// rejects inputs whose relative holomorphy defect exceeds holo_tol
Rhs rhs_full_checked(const WaveState& s, const Params& p, double holo_tol = 1e-8);

// linearization around zero: (-Q_alpha, i g W - i c Q)
Rhs rhs_linear(const WaveState& s, const Params& p);

struct DiffRhs {
  Field dWd, dR;
};
// evolution of the diagonal variables (W_alpha, R); d.W supplies W
DiffRhs rhs_diff(const DiagonalState& d, const Params& p);

// Real form: surface height Y = Im W and potential trace Psi = Re Q.
struct RealFormState {
  Field Yh, Psi;
};
RealFormState real_form_of(const WaveState& s);

struct RealFormRhs {
  RArray dY, dPsi;  // padded-grid samples, real by construction
  Field dY_field, dPsi_field;
};
RealFormRhs rhs_realform(const RealFormState& r, const Params& p);

enum class Scheme { RK4, IFRK4 };
enum class CflPolicy { Ignore, Warn, Error };

struct StepOptions {
  Scheme scheme = Scheme::RK4;
  bool project = true;
  double cfl_constant = 0.5;
  CflPolicy cfl = CflPolicy::Ignore;
  // exponential filter exp(-36 (|k| / (N/2))^filter_order); off when 0
  int filter_order = 0;
};

using RhsFn = std::function<Rhs(const WaveState&)>;

WaveState rk4_step(const WaveState& s, double dt, const RhsFn& f);

// dt bound C / max(sqrt(g kmax), c, |b_|_inf kmax), kmax = pi N / L
double cfl_limit(const WaveState& s, const Params& p, double C = 0.5);

WaveState step(const WaveState& s, double dt, const Params& p, const StepOptions& opt = {});

// advances the zero-background linear flow exactly by time t
WaveState linear_flow_exact(const WaveState& s, const Params& p, double t);

struct DispersionRoots {
  double tau_plus, tau_minus;
};
// roots of tau^2 + c tau + g xi = 0 for xi <= 0
DispersionRoots dispersion_roots(double xi, const Params& p);

struct Invariants {
  double energy = 0, momentum = 0;
};
// Hamiltonian and momentum as written in complex variables
Invariants invariants_complex(const WaveState& s, const Params& p);
// the same quantities from the real (Y, Psi) form, scaled by 4 to share the
// normalization of the complex form
Invariants invariants_real(const WaveState& s, const Params& p);

struct DiagnosticsRecord {
  double t = 0;
  double energy = 0, momentum = 0;
  double taylor_margin = 0, cusp_margin = 0, holo_defect = 0;
  ControlNorms norms;
  double H0 = 0, H1 = 0;
};

DiagnosticsRecord diagnostics(const WaveState& s, const Params& p);
void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const DiagnosticsRecord& r);

}  // namespace hww
