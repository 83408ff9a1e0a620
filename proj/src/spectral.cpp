#include "hww/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <sstream>

namespace hww {

namespace {
// the FFTW planner is not reentrant; execution with new arrays is
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::string fmt_mean(double m) {
  std::ostringstream os;
  os << "antiderivative of a field with nonzero mean (|f(0)| = " << m << ")";
  return os.str();
}

std::string fmt_cusp(double m, double at) {
  std::ostringstream os;
  os << "near-cusp state: min |1+f| = " << m << " at alpha = " << at;
  return os.str();
}
}  // namespace

MeanNotZero::MeanNotZero(double m) : Error(fmt_mean(m)), mean_modulus(m) {}

CuspDegeneracy::CuspDegeneracy(double m, double at)
    : Error(fmt_cusp(m, at)), min_modulus(m), location(at) {}

void Domain::validate() const {
  if (!(L > 0)) throw Error("domain length must be positive");
  if (N < 8 || N % 2 != 0) throw Error("n_modes must be even and >= 8");
  if (pad < 1) throw Error("padding factor must be >= 1");
}

struct Space::Plans {
  fftw_plan fwdN = nullptr, bwdN = nullptr, fwdM = nullptr, bwdM = nullptr;
  ~Plans() {
    std::lock_guard<std::mutex> lk(planner_mutex());
    for (auto p : {fwdN, bwdN, fwdM, bwdM})
      if (p) fftw_destroy_plan(p);
  }
};

Space::Space(const Domain& d, const SpectralOptions& opt) : dom_(d), opt_(opt) {
  dom_.validate();
  xi_.resize(dom_.N);
  for (int i = 0; i < dom_.N; ++i) xi_(i) = 2 * kPi * wavenumber(i) / dom_.L;
  plans_ = std::make_shared<Plans>();
  std::lock_guard<std::mutex> lk(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  auto mk = [&](int n, int sign) {
    std::vector<cplx> a(n), b(n);
    return fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                            reinterpret_cast<fftw_complex*>(b.data()), sign, flags);
  };
  plans_->fwdN = mk(dom_.N, FFTW_FORWARD);
  plans_->bwdN = mk(dom_.N, FFTW_BACKWARD);
  plans_->fwdM = mk(M(), FFTW_FORWARD);
  plans_->bwdM = mk(M(), FFTW_BACKWARD);
}

SpacePtr Space::make(const Domain& d, const SpectralOptions& opt) {
  return std::make_shared<const Space>(d, opt);
}

RArray Space::alpha() const {
  RArray a(M());
  for (int j = 0; j < M(); ++j) a(j) = dom_.L * j / M();
  return a;
}

void Space::backward(const cplx* in, cplx* out, int n) const {
  fftw_plan p = n == dom_.N ? plans_->bwdN : plans_->bwdM;
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

void Space::forward(const cplx* in, cplx* out, int n) const {
  fftw_plan p = n == dom_.N ? plans_->fwdN : plans_->fwdM;
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
  const double s = 1.0 / n;
  for (int i = 0; i < n; ++i) out[i] *= s;
}

bool Space::same(const Space& o) const {
  return this == &o || (dom_.N == o.dom_.N && dom_.L == o.dom_.L && dom_.pad == o.dom_.pad);
}

// ---------------------------------------------------------------- Field

Field::Field(SpacePtr sp) : sp_(std::move(sp)), c_(CArray::Zero(sp_->N())) {}

Field::Field(SpacePtr sp, CArray coeffs) : sp_(std::move(sp)), c_(std::move(coeffs)) {
  if (c_.size() != sp_->N()) throw DomainMismatch("coefficient count does not match domain");
}

cplx Field::at(int k) const {
  const int i = sp_->index(k);
  return (i >= 0 && i < c_.size()) ? c_(i) : cplx(0);
}

void Field::set(int k, cplx v) {
  const int i = sp_->index(k);
  if (i < 0 || i >= c_.size()) throw DomainMismatch("wavenumber outside retained band");
  c_(i) = v;
}

void require_compatible(const Field& a, const Field& b) {
  if (!a.space_ptr() || !b.space_ptr() || !a.space().same(b.space()))
    throw DomainMismatch("fields live on different domains");
}

Field& Field::operator+=(const Field& o) {
  require_compatible(*this, o);
  c_ += o.c_;
  return *this;
}
Field& Field::operator-=(const Field& o) {
  require_compatible(*this, o);
  c_ -= o.c_;
  return *this;
}
Field& Field::operator*=(cplx s) {
  c_ *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator-(Field a) { return a *= -1.0; }
Field operator*(cplx s, Field a) { return a *= s; }
Field operator*(Field a, cplx s) { return a *= s; }

Field mode(const SpacePtr& sp, int k, cplx a) {
  Field f(sp);
  f.set(k, a);
  return f;
}

// ------------------------------------------------------------ transforms

Field forward_transform(const SpacePtr& sp, const CArray& samples) {
  const int N = sp->N();
  if (samples.size() != N) throw DomainMismatch("sample count does not match domain");
  CArray F(N);
  sp->forward(samples.data(), F.data(), N);
  Field f(sp);
  for (int i = 0; i < N; ++i) {
    const int k = sp->wavenumber(i);
    f.coeffs()(i) = F((k + N) % N);
  }
  return f;
}

CArray inverse_transform(const Field& f) {
  const Space& sp = f.space();
  const int N = sp.N();
  CArray F(N), u(N);
  for (int i = 0; i < N; ++i) F((sp.wavenumber(i) + N) % N) = f.coeffs()(i);
  sp.backward(F.data(), u.data(), N);
  return u;
}

CArray to_grid(const Field& f) {
  const Space& sp = f.space();
  const int N = sp.N(), M = sp.M();
  CArray F = CArray::Zero(M), u(M);
  for (int i = 0; i < N; ++i) F((sp.wavenumber(i) + M) % M) = f.coeffs()(i);
  sp.backward(F.data(), u.data(), M);
  return u;
}

Field from_grid(const SpacePtr& sp, const CArray& u) {
  const int N = sp->N(), M = sp->M();
  if (u.size() != M) throw DomainMismatch("grid size does not match padded domain");
  CArray F(M);
  sp->forward(u.data(), F.data(), M);
  Field f(sp);
  for (int i = 0; i < N; ++i) f.coeffs()(i) = F((sp->wavenumber(i) + M) % M);
  return f;
}

Field from_grid_real(const SpacePtr& sp, const RArray& u) {
  return from_grid(sp, u.cast<cplx>());
}

// ----------------------------------------------------------- multipliers

Field hilbert(const Field& f) {
  Field h = f;
  const Space& sp = f.space();
  for (int i = 0; i < sp.N(); ++i) {
    const int k = sp.wavenumber(i);
    const double s = k > 0 ? 1.0 : (k < 0 ? -1.0 : 0.0);
    h.coeffs()(i) *= cplx(0, -s);
  }
  return h;
}

Field project_P(const Field& f) {
  Field p = f;
  const Space& sp = f.space();
  for (int i = 0; i < sp.N(); ++i) {
    const int k = sp.wavenumber(i);
    if (k > 0) p.coeffs()(i) = 0;
    else if (k == 0) p.coeffs()(i) *= 0.5;
  }
  return p;
}

Field project_Pbar(const Field& f) { return f - project_P(f); }

Field holomorphic_part(const Field& f) {
  Field p = f;
  const Space& sp = f.space();
  for (int i = 0; i < sp.N(); ++i)
    if (sp.wavenumber(i) > 0) p.coeffs()(i) = 0;
  return p;
}

Field conj(const Field& f) {
  const Space& sp = f.space();
  const int N = sp.N();
  Field r(f.space_ptr());
  for (int i = 0; i < N; ++i) {
    const int j = -sp.wavenumber(i);
    if (j >= -N / 2 && j < N / 2) r.coeffs()(i) = std::conj(f.coeffs()(sp.index(j)));
  }
  return r;
}

Field derivative(const Field& f) {
  Field d = f;
  d.coeffs() *= cplx(0, 1) * f.space().xi().cast<cplx>();
  d.coeffs()(0) = 0;
  return d;
}

Field half_derivative(const Field& f) {
  Field d = f;
  d.coeffs() *= f.space().xi().abs().sqrt().cast<cplx>();
  return d;
}

Field abs_derivative(const Field& f) {
  Field d = f;
  d.coeffs() *= f.space().xi().abs().cast<cplx>();
  return d;
}

Field antiderivative_meanfree(const Field& f) {
  Field d(f.space_ptr());
  const Space& sp = f.space();
  for (int i = 0; i < sp.N(); ++i) {
    const int k = sp.wavenumber(i);
    if (k != 0) d.coeffs()(i) = f.coeffs()(i) / cplx(0, sp.xi()(i));
  }
  return d;
}

Field antiderivative(const Field& f) {
  const double m = std::abs(f.at(0));
  if (m > f.space().options().mean_tolerance * (1.0 + coeff_norm(f))) throw MeanNotZero(m);
  return antiderivative_meanfree(f);
}

// ---------------------------------------------------------------- algebra

Field product(const Field& f, const Field& g) {
  require_compatible(f, g);
  return from_grid(f.space_ptr(), to_grid(f) * to_grid(g));
}

Field reciprocal_one_plus(const Field& f) {
  CArray u = 1.0 + to_grid(f);
  Eigen::Index j;
  const double m = u.abs().minCoeff(&j);
  if (m <= f.space().options().cusp_floor)
    throw CuspDegeneracy(m, f.space().L() * double(j) / f.space().M());
  return from_grid(f.space_ptr(), u.inverse());
}

HolomorphyReport holomorphy_report(const Field& f, double floor) {
  const Space& sp = f.space();
  double s = 0;
  for (int i = 0; i < sp.N(); ++i)
    if (sp.wavenumber(i) > 0) s += std::norm(f.coeffs()(i));
  HolomorphyReport r;
  r.defect = std::sqrt(s);
  r.relative_defect = r.defect / std::max(coeff_norm(f), floor);
  return r;
}

double coeff_norm(const Field& f) { return std::sqrt(f.coeffs().abs2().sum()); }

double l2_norm(const Field& f) { return std::sqrt(f.space().L() * f.coeffs().abs2().sum()); }

double hhalf_norm(const Field& f) {
  return std::sqrt(f.space().L() * (f.space().xi().abs() * f.coeffs().abs2()).sum());
}

double max_abs_grid(const Field& f) { return to_grid(f).abs().maxCoeff(); }

double integrate_real(const Space& sp, const RArray& u) { return u.sum() * sp.L() / u.size(); }

cplx integrate(const Space& sp, const CArray& u) { return u.sum() * (sp.L() / u.size()); }

CArray P_grid(const SpacePtr& sp, const CArray& u) { return to_grid(project_P(from_grid(sp, u))); }

CArray Pbar_grid(const SpacePtr& sp, const CArray& u) {
  return to_grid(project_Pbar(from_grid(sp, u)));
}

}  // namespace hww
