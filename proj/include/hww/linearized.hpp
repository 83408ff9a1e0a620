// Linearized flow around a background solution, in the diagonal variables
// (w, r) with r = q - R w, and the associated linear energies.
#pragma once

#include "hww/evolution.hpp"

namespace hww {

struct LinearizedState {
  Field w, r;
};

// background quantities reused by every linearized evaluation
struct Background {
  WaveState s;
  DiagonalState d;
  AdvectionFields adv;
  FrequencyShiftFields fs;
};
Background make_background(const WaveState& s, const Params& p);

struct LinSources {
  // all projected by P; the underlined combinations are Gu = G - i(c/2) G1 and
  // Ku = K - i(c/2) K1
  Field G, G1, Gu, K, K1, Ku;
  // parts linear in the background
  Field PG2, PK2, PG2_1, PK2_1;
};
LinSources lin_sources(const LinearizedState& l, const Background& bg, const Params& p);

struct LinRhs {
  Field dw, dr;
};
LinRhs rhs_linearized(const LinearizedState& l, const Background& bg, const Params& p);

// integral of g |w|^2 + Im(r conj(r_alpha))
double energy_e0(const Field& w, const Field& r, double g);
double energy_lin2(const LinearizedState& l, const Background& bg, const Params& p);
double energy_lin3(const LinearizedState& l, const Background& bg, const Params& p);
// true when Au <= limit, the range where energy_lin3 is comparable to energy_lin2
bool lin3_regime_ok(const Background& bg, const Params& p, double limit = 0.2);

// (dW, dQ) -> (w, r) = (dW, dQ - R dW) and back
LinearizedState tangent_from_perturbation(const Background& bg, const Field& dW, const Field& dQ);
std::pair<Field, Field> perturbation_from_tangent(const Background& bg, const LinearizedState& l);

// background and linearized solution advanced together, stage by stage
struct CoupledState {
  WaveState s;
  LinearizedState l;
};
CoupledState coupled_rk4_step(const CoupledState& cs, double dt, const Params& p);

}  // namespace hww
