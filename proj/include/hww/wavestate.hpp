// Wave states, diagonal variables (W_alpha, R), the auxiliary fields that
// enter every right-hand side, and computable control norms.
#pragma once

#include "hww/spectral.hpp"

namespace hww {

struct Params {
  double g = 1.0;
  double c = 0.0;
  void validate() const;
};

struct WaveState {
  Field W;
  Field Q;
  double t = 0;
};

WaveState zero_state(const SpacePtr& sp);

// Wd = W_alpha, R = Q_alpha / (1 + Wd), Y = Wd / (1 + Wd), J = |1 + Wd|^2.
// W is the undifferentiated surface; its zero mode is only meaningful when
// the diagonal state was built from a WaveState.
struct DiagonalState {
  Field Wd, R, Y, J;
  Field W;
};

DiagonalState to_diagonal(const WaveState& s);
// W is rebuilt as the mean-free antiderivative of Wd
DiagonalState to_diagonal(const Field& Wd, const Field& R);

struct TransportFields {
  Field F, F1, Fu, T1;
};
TransportFields auxiliary_transport(const WaveState& s, const Params& p);

struct AdvectionFields {
  Field b, b1, bu;
};
AdvectionFields transport_coefficients(const DiagonalState& d, const Params& p);

struct FrequencyShiftFields {
  Field a, a1, au, N;
};
FrequencyShiftFields frequency_shift(const DiagonalState& d, const Params& p);

struct MFields {
  Field M, M1, Mu;
};
MFields m_fields(const DiagonalState& d, const Params& p);

struct AuxiliaryFields {
  TransportFields tr;
  AdvectionFields adv;
  FrequencyShiftFields fs;
  MFields m;
};
AuxiliaryFields auxiliary_fields(const WaveState& s, const DiagonalState& d, const Params& p);

struct ControlNorms {
  double A = 0, B = 0, A_half = 0, A_one = 0, Au = 0, Bu = 0;
};
// L-infinity surrogates replace BMO; the Besov piece is the largest dyadic
// block of coefficient l2 mass.
ControlNorms control_norms(const DiagonalState& d, const WaveState& s, const Params& p);
double besov_block_sup(const Field& f);

// ||(w, r)||_{L^2 x H^{1/2}} = sqrt(||w||^2 + ||r||_{H^{1/2}}^2)
double pair_norm(const Field& w, const Field& r);
// sum_{k <= n} ||d^k (Wd, R)||_{L^2 x H^{1/2}}
double sobolev_norm(const DiagonalState& d, int n);

}  // namespace hww
