// Periodic Fourier fields on [0, L): transforms, multipliers, projections
// and dealiased products on a padded collocation grid.
#pragma once

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace hww {

using cplx = std::complex<double>;
using CArray = Eigen::ArrayXcd;
using RArray = Eigen::ArrayXd;

inline constexpr double kPi = 3.14159265358979323846;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainMismatch : Error {
  using Error::Error;
};

struct MeanNotZero : Error {
  double mean_modulus;
  explicit MeanNotZero(double m);
};

struct CuspDegeneracy : Error {
  double min_modulus;
  double location;
  CuspDegeneracy(double m, double at);
};

struct Domain {
  double L = 2 * kPi;
  int N = 64;
  int pad = 2;

  void validate() const;
};

struct SpectralOptions {
  double cusp_floor = 1e-8;
  double mean_tolerance = 1e-12;
};

class Space;
using SpacePtr = std::shared_ptr<const Space>;

// Wavenumber layout: index i holds k = i - N/2, k in [-N/2, N/2).
class Space : public std::enable_shared_from_this<Space> {
 public:
  static SpacePtr make(const Domain& d, const SpectralOptions& opt = {});

  const Domain& domain() const { return dom_; }
  const SpectralOptions& options() const { return opt_; }
  int N() const { return dom_.N; }
  int M() const { return dom_.pad * dom_.N; }
  double L() const { return dom_.L; }
  int index(int k) const { return k + dom_.N / 2; }
  int wavenumber(int i) const { return i - dom_.N / 2; }
  // xi(i) = 2 pi k / L
  const RArray& xi() const { return xi_; }
  // collocation points of the padded grid
  RArray alpha() const;

  // unnormalized backward / normalized forward transforms of length n
  void backward(const cplx* in, cplx* out, int n) const;
  void forward(const cplx* in, cplx* out, int n) const;

  bool same(const Space& o) const;

  Space(const Domain& d, const SpectralOptions& opt);

 private:
  Domain dom_;
  SpectralOptions opt_;
  RArray xi_;
  struct Plans;
  std::shared_ptr<Plans> plans_;
};

class Field {
 public:
  Field() = default;
  explicit Field(SpacePtr sp);
  Field(SpacePtr sp, CArray coeffs);

  const Space& space() const { return *sp_; }
  const SpacePtr& space_ptr() const { return sp_; }
  const CArray& coeffs() const { return c_; }
  CArray& coeffs() { return c_; }
  int N() const { return sp_->N(); }

  cplx at(int k) const;
  void set(int k, cplx v);

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(cplx s);

 private:
  SpacePtr sp_;
  CArray c_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator-(Field a);
Field operator*(cplx s, Field a);
Field operator*(Field a, cplx s);

void require_compatible(const Field& a, const Field& b);

// single-mode field a e^{2 pi i k alpha / L}
Field mode(const SpacePtr& sp, int k, cplx a);

// Unpadded N-point transforms.
Field forward_transform(const SpacePtr& sp, const CArray& samples);
CArray inverse_transform(const Field& f);

// Padded-grid values and truncation back to N modes.
CArray to_grid(const Field& f);
Field from_grid(const SpacePtr& sp, const CArray& u);
Field from_grid_real(const SpacePtr& sp, const RArray& u);

Field hilbert(const Field& f);
Field project_P(const Field& f);
Field project_Pbar(const Field& f);
// keeps k <= 0 with the zero mode intact
Field holomorphic_part(const Field& f);
Field conj(const Field& f);

Field derivative(const Field& f);
Field half_derivative(const Field& f);
Field abs_derivative(const Field& f);
// throws MeanNotZero when |f(0)| exceeds mean_tolerance * (1 + ||f||)
Field antiderivative(const Field& f);
// same, with the zero mode discarded instead of checked
Field antiderivative_meanfree(const Field& f);

Field product(const Field& f, const Field& g);
Field reciprocal_one_plus(const Field& f);

struct HolomorphyReport {
  double defect = 0;
  double relative_defect = 0;
};
HolomorphyReport holomorphy_report(const Field& f, double floor = 1e-300);

// ||f||_{L^2} = sqrt(L sum |f_k|^2), ||f||_{H^{1/2}} = sqrt(L sum |xi| |f_k|^2)
double l2_norm(const Field& f);
double hhalf_norm(const Field& f);
// coefficient l2 mass sqrt(sum |f_k|^2)
double coeff_norm(const Field& f);
double max_abs_grid(const Field& f);

// integral over one period of padded-grid samples
double integrate_real(const Space& sp, const RArray& u);
cplx integrate(const Space& sp, const CArray& u);

// P and Pbar applied to padded-grid samples (truncates to N modes)
CArray P_grid(const SpacePtr& sp, const CArray& u);
CArray Pbar_grid(const SpacePtr& sp, const CArray& u);

}  // namespace hww
