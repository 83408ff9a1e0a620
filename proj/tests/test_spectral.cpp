#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hww/spectral.hpp"

using namespace hww;
using Catch::Approx;

namespace {

SpacePtr space(int N = 32, double L = 2 * kPi) { return Space::make(Domain{L, N, 2}); }

Field random_field(const SpacePtr& sp, std::mt19937_64& rng, int kmax = 0) {
  std::normal_distribution<double> n;
  Field f(sp);
  const int lim = kmax > 0 ? kmax : sp->N() / 2 - 1;
  for (int k = -lim; k <= lim; ++k) f.set(k, cplx(n(rng), n(rng)));
  return f;
}

double dist(const Field& a, const Field& b) { return coeff_norm(a - b); }

Field from_samples(const SpacePtr& sp, auto fn) {
  CArray s(sp->N());
  for (int j = 0; j < sp->N(); ++j) s(j) = fn(sp->L() * j / sp->N());
  return forward_transform(sp, s);
}

}  // namespace

TEST_CASE("forward transform of constant and single mode", "[spectral]") {
  const SpacePtr sp = space();
  const Field one = from_samples(sp, [](double) { return cplx(1, 0); });
  CHECK(std::abs(one.at(0) - 1.0) < 1e-15);
  CHECK(dist(one, mode(sp, 0, 1.0)) < 1e-14);

  const Field e = from_samples(sp, [](double a) { return std::exp(cplx(0, -a)); });
  CHECK(dist(e, mode(sp, -1, 1.0)) < 1e-14);
}

TEST_CASE("transform round trip and Parseval", "[spectral]") {
  const SpacePtr sp = space(64, 3.0);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  CArray s(64);
  for (auto& v : s) v = cplx(n(rng), n(rng));
  const Field f = forward_transform(sp, s);
  const CArray back = inverse_transform(f);
  const double eps = std::numeric_limits<double>::epsilon();
  CHECK((back - s).matrix().norm() / s.matrix().norm() <= 10 * eps * 64);

  // quadrature of |s|^2 on the sample grid
  const double quad = s.abs2().sum() * sp->L() / 64;
  const double l2 = l2_norm(f);
  CHECK(std::abs(quad - l2 * l2) / quad <= 1e-12);
}

TEST_CASE("transform rejects wrong length", "[spectral]") {
  const SpacePtr sp = space();
  CHECK_THROWS_AS(forward_transform(sp, CArray::Zero(31)), DomainMismatch);
}

TEST_CASE("fields on different domains are rejected", "[spectral]") {
  const Field a(space(32)), b(space(64));
  CHECK_THROWS_AS(product(a, b), DomainMismatch);
  CHECK_THROWS_AS(a + b, DomainMismatch);
}

TEST_CASE("Hilbert transform examples", "[spectral]") {
  const SpacePtr sp = space();
  const Field cosf = 0.5 * (mode(sp, 1, 1.0) + mode(sp, -1, 1.0));
  const Field sinf = cplx(0, -0.5) * (mode(sp, 1, 1.0) - mode(sp, -1, 1.0));
  CHECK(dist(hilbert(cosf), sinf) < 1e-15);
  CHECK(coeff_norm(hilbert(mode(sp, 0, 1.0))) == 0.0);
  CHECK(dist(hilbert(mode(sp, -1, 1.0)), mode(sp, -1, cplx(0, 1))) < 1e-15);
}

TEST_CASE("projection examples and zero-mode split", "[spectral]") {
  const SpacePtr sp = space();
  CHECK(dist(project_P(mode(sp, -1, 1.0)), mode(sp, -1, 1.0)) == 0.0);
  CHECK(coeff_norm(project_P(mode(sp, 1, 1.0))) == 0.0);
  CHECK(project_P(mode(sp, 0, 1.0)).at(0) == cplx(0.5, 0));
  // the same value from the defining formula P = (I - iH)/2
  const Field one = mode(sp, 0, 1.0);
  CHECK(dist(project_P(one), 0.5 * (one - cplx(0, 1) * hilbert(one))) < 1e-16);
}

TEST_CASE("projection identities on random fields", "[spectral][property]") {
  const SpacePtr sp = space(64);
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Field f = random_field(sp, rng);
    CHECK(dist(project_P(f) + project_Pbar(f), f) == 0.0);
    // idempotent away from the zero mode, where the half split compounds
    const Field pp = project_P(project_P(f)), pf = project_P(f);
    CHECK(dist(pp - mode(sp, 0, pp.at(0)), pf - mode(sp, 0, pf.at(0))) == 0.0);
    CHECK(pp.at(0) == 0.25 * f.at(0));
    Field m = f;
    m.set(0, 0.0);
    m.set(-32, 0.0);  // the unpaired Nyquist mode has no sign
    CHECK(dist(hilbert(hilbert(m)), -m) < 1e-14 * coeff_norm(m));
    CHECK(dist(project_P(f), 0.5 * (f - cplx(0, 1) * hilbert(f))) < 1e-14 * coeff_norm(f));
  }
}

TEST_CASE("derivative examples", "[spectral]") {
  const SpacePtr sp = space();
  CHECK(dist(derivative(mode(sp, -1, 1.0)), mode(sp, -1, cplx(0, -1))) < 1e-15);
  CHECK(dist(antiderivative(mode(sp, -1, 1.0)), mode(sp, -1, cplx(0, 1))) < 1e-15);
  CHECK(dist(half_derivative(mode(sp, -4, 1.0)), mode(sp, -4, 2.0)) < 1e-15);
  // Nyquist mode zeroed by the derivative
  CHECK(derivative(mode(sp, -16, 1.0)).at(-16) == cplx(0, 0));
}

TEST_CASE("derivative scales with the period", "[spectral]") {
  const SpacePtr sp = space(32, 4 * kPi);
  // k = -2 on L = 4 pi is e^{-i alpha}
  CHECK(dist(derivative(mode(sp, -2, 1.0)), mode(sp, -2, cplx(0, -1))) < 1e-15);
}

TEST_CASE("antiderivative inverts the derivative on mean-zero fields", "[spectral][property]") {
  const SpacePtr sp = space(64);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    Field f = random_field(sp, rng);
    f.set(0, 0.0);
    f.set(-32, 0.0);
    CHECK(dist(derivative(antiderivative(f)), f) < 1e-14 * coeff_norm(f));
  }
}

TEST_CASE("antiderivative rejects a nonzero mean", "[spectral]") {
  const SpacePtr sp = space();
  const Field f = mode(sp, 0, 0.25) + mode(sp, -1, 1.0);
  try {
    antiderivative(f);
    FAIL("no exception");
  } catch (const MeanNotZero& e) {
    CHECK(e.mean_modulus == Approx(0.25));
  }
  // the mean-free variant discards it
  CHECK(dist(derivative(antiderivative_meanfree(f)), mode(sp, -1, 1.0)) < 1e-15);
}

TEST_CASE("product examples", "[spectral]") {
  const SpacePtr sp = space();
  CHECK(dist(product(mode(sp, -1, 1.0), mode(sp, -2, 1.0)), mode(sp, -3, 1.0)) < 1e-15);
  CHECK(dist(reciprocal_one_plus(Field(sp)), mode(sp, 0, 1.0)) < 1e-15);
}

TEST_CASE("reciprocal against the geometric series", "[spectral]") {
  const SpacePtr sp = space(128);
  const Field f = mode(sp, -1, 0.3);
  Field series(sp);
  for (int m = 0; m <= 40; ++m) series.set(-m, std::pow(-0.3, m));
  CHECK(dist(reciprocal_one_plus(f), series) <= 1e-12);
  // identity f / (1 + f) + 1 / (1 + f) = 1
  const Field r = reciprocal_one_plus(f);
  CHECK(dist(product(f, r) + r, mode(sp, 0, 1.0)) <= 1e-12);
}

TEST_CASE("reciprocal near a cusp reports where", "[spectral]") {
  const SpacePtr sp = space(32);
  // 1 + e^{-i alpha} vanishes at alpha = pi
  try {
    reciprocal_one_plus(mode(sp, -1, 1.0));
    FAIL("no exception");
  } catch (const CuspDegeneracy& e) {
    CHECK(e.min_modulus < 1e-8);
    CHECK(e.location == Approx(kPi).margin(1e-12));
  }
}

TEST_CASE("product is commutative and associative for band-limited inputs", "[spectral][property]") {
  const SpacePtr sp = space(64);
  std::mt19937_64 rng(4);
  const Field a = random_field(sp, rng, 5), b = random_field(sp, rng, 5), c = random_field(sp, rng, 5);
  CHECK(dist(product(a, b), product(b, a)) < 1e-13);
  CHECK(dist(product(product(a, b), c), product(a, product(b, c))) < 1e-12);
}

TEST_CASE("quadratic products are alias free", "[spectral][property]") {
  // modes up to N/2 - 1 in absolute value: the product of two band-limited
  // fields is truncated, never folded back
  const SpacePtr sp = space(16);
  const Field a = mode(sp, -7, 1.0), b = mode(sp, -6, 1.0);
  CHECK(coeff_norm(product(a, b)) < 1e-15);
  const Field c = mode(sp, 7, 1.0);
  CHECK(dist(product(a, c), mode(sp, 0, 1.0)) < 1e-15);
}

TEST_CASE("holomorphy report examples", "[spectral]") {
  const SpacePtr sp = space();
  CHECK(holomorphy_report(mode(sp, -1, 1.0)).defect == 0.0);
  CHECK(holomorphy_report(mode(sp, 1, 1.0)).defect == Approx(1.0));
  const Field cosf = 0.5 * (mode(sp, 1, 1.0) + mode(sp, -1, 1.0));
  CHECK(holomorphy_report(cosf).defect == Approx(0.5));
}

TEST_CASE("integration and grid helpers", "[spectral]") {
  const SpacePtr sp = space(32, 3.0);
  const Field f = mode(sp, 0, 2.0) + mode(sp, -3, 1.0);
  CHECK(std::abs(integrate(*sp, to_grid(f)) - cplx(6.0, 0)) < 1e-14);
  CHECK(max_abs_grid(mode(sp, -2, cplx(0, 0.7))) == Approx(0.7));
  CHECK(l2_norm(mode(sp, -1, 1.0)) == Approx(std::sqrt(3.0)));
  CHECK(hhalf_norm(mode(sp, -1, 1.0)) == Approx(std::sqrt(2 * kPi)));
  std::mt19937_64 rng(5);
  const Field g = random_field(sp, rng, 7);
  CHECK(dist(from_grid(sp, to_grid(g)), g) < 1e-14);
  CHECK(dist(from_grid(sp, P_grid(sp, to_grid(g))), project_P(g)) < 1e-14);
}

TEST_CASE("conjugation maps k to -k", "[spectral]") {
  const SpacePtr sp = space();
  CHECK(dist(conj(mode(sp, -3, cplx(1, 2))), mode(sp, 3, cplx(1, -2))) == 0.0);
  CHECK(dist(holomorphic_part(mode(sp, 0, 1.0) + mode(sp, 2, 1.0)), mode(sp, 0, 1.0)) == 0.0);
}

TEST_CASE("domain validation", "[spectral]") {
  CHECK_THROWS(Space::make(Domain{2 * kPi, 7, 2}));
  CHECK_THROWS(Space::make(Domain{2 * kPi, 6, 2}));
  CHECK_THROWS(Space::make(Domain{-1.0, 32, 2}));
}
