// Shorthands for padded-grid algebra used by the right-hand sides.
#pragma once

#include "hww/spectral.hpp"

namespace hww::detail {

inline CArray G(const Field& f) { return to_grid(f); }
inline CArray Gd(const Field& f) { return to_grid(derivative(f)); }
inline Field C(const SpacePtr& sp, const CArray& u) { return from_grid(sp, u); }
inline CArray cj(const CArray& u) { return u.conjugate(); }
inline CArray Pg(const SpacePtr& sp, const CArray& u) { return P_grid(sp, u); }
inline CArray Pbg(const SpacePtr& sp, const CArray& u) { return Pbar_grid(sp, u); }
inline const cplx I(0.0, 1.0);

inline void require_no_cusp(const Space& sp, const CArray& one_plus) {
  Eigen::Index j;
  const double m = one_plus.abs().minCoeff(&j);
  if (m <= sp.options().cusp_floor) throw CuspDegeneracy(m, sp.L() * double(j) / sp.M());
}

}  // namespace hww::detail
