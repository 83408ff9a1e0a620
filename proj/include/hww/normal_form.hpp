// Quadratic normal form: bilinear symbols, their defining linear systems,
// the spatial quadratic corrections (W2, Q2) and the cubic residual.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hww/evolution.hpp"

namespace hww {

// Holomorphic symbols (suffix h) act on pairs of holomorphic inputs; mixed
// symbols (suffix a) on one holomorphic and one conjugated input. Arguments
// are the two frequencies, both negative.
struct SymbolTable {
  double g = 1, c = 0;

  cplx Bh(double x, double e) const;
  cplx Ch(double x, double e) const;
  cplx Dh(double x, double e) const;
  cplx Fh(double x, double e) const;
  cplx Hh(double x, double e) const;
  cplx Ah(double x, double e) const;

  cplx Ba(double x, double e) const;
  cplx Ca(double x, double e) const;
  cplx Da(double x, double e) const;
  cplx Ea(double x, double e) const;
  cplx Fa(double x, double e) const;
  cplx Ha(double x, double e) const;
  cplx Aa(double x, double e) const;
  cplx Ga(double x, double e) const;
};

SymbolTable symbols(const Params& p);

// Residual of one equation together with the largest magnitude among its terms.
struct EquationResidual {
  cplx residual;
  double scale;
};
std::array<EquationResidual, 6> holomorphic_system(const SymbolTable& s, double xi, double eta);
std::array<EquationResidual, 8> mixed_system(const SymbolTable& s, double xi, double eta);

struct SymbolSystemReport {
  std::string system;
  int samples = 0;
  double max_residual = 0;
  double max_coefficient = 0;
  bool pass = false;
};
// samples (xi, eta) uniformly in [lo, hi]^2 with hi < 0; a system passes when
// max_residual <= tol * (1 + max_coefficient)
std::vector<SymbolSystemReport> verify_symbol_systems(const Params& p, int samples, std::uint64_t seed,
                                                      double lo = -10, double hi = -0.1, double tol = 1e-10);

struct QuadraticCorrection {
  Field W2, Q2;
};
// physical-space evaluation; W must have zero mean
QuadraticCorrection quadratic_correction(const WaveState& s, const Params& p);
// the same bilinear forms applied mode by mode through the symbol table
QuadraticCorrection quadratic_correction_symbolic(const WaveState& s, const Params& p);

struct CubicResidual {
  double rW = 0, rQ = 0;  // L2 norms
  Field fW, fQ;
};
// residual of the linear flow for (W + W2, Q + Q2), time derivatives taken
// exactly through rhs_full (or through rhs_linear when linear_only is set)
CubicResidual cubic_residual(const WaveState& s, const Params& p, bool linear_only = false);

}  // namespace hww
