#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <random>

#include "hww/experiments.hpp"
#include "hww/fit.hpp"
#include "hww/normal_form.hpp"

using namespace hww;
using Catch::Approx;

namespace {

const cplx I(0, 1);

SpacePtr space(int N = 64) { return Space::make(Domain{2 * kPi, N, 2}); }

double dist(const Field& a, const Field& b) { return coeff_norm(a - b); }

using Sym = cplx (SymbolTable::*)(double, double) const;

const std::vector<std::pair<const char*, Sym>> all_symbols{
    {"Bh", &SymbolTable::Bh}, {"Ch", &SymbolTable::Ch}, {"Dh", &SymbolTable::Dh}, {"Fh", &SymbolTable::Fh},
    {"Hh", &SymbolTable::Hh}, {"Ah", &SymbolTable::Ah}, {"Ba", &SymbolTable::Ba}, {"Ca", &SymbolTable::Ca},
    {"Da", &SymbolTable::Da}, {"Ea", &SymbolTable::Ea}, {"Fa", &SymbolTable::Fa}, {"Ha", &SymbolTable::Ha},
    {"Aa", &SymbolTable::Aa}, {"Ga", &SymbolTable::Ga}};

}  // namespace

TEST_CASE("symbol examples", "[normal_form]") {
  const SymbolTable s = symbols(Params{1.0, 1.0});
  CHECK(std::abs(s.Hh(-1, -1) - 0.5 * I) < 1e-15);
  for (double e : {-0.3, -1.0, -7.0}) CHECK(std::abs(s.Ca(-1, e) - 0.25 * I) < 1e-15);

  const SymbolTable z = symbols(Params{1.0, 0.0});
  for (double e : {-0.5, -2.0}) {
    CHECK(z.Fh(-1.5, e) == cplx(0, 0));
    CHECK(std::abs(z.Ah(-1.5, e) - (-I * e)) < 1e-15);
  }

  // mixed B from its closed form at c = 2, g = 1.5
  const double c = 2, g = 1.5, x = -0.7, e = -2.2;
  const cplx Ba = -I * std::pow(c, 4) / (4 * g * g) / e + I * c * c / (2 * g) * x / e + I * c * c / (4 * g) - I * x;
  CHECK(std::abs(symbols(Params{g, c}).Ba(x, e) - Ba) < 1e-14);
}

TEST_CASE("holomorphic symbols are symmetric", "[normal_form][property]") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-10, -0.1);
  const SymbolTable s = symbols(Params{1.3, 0.7});
  for (int j = 0; j < 50; ++j) {
    const double x = U(rng), e = U(rng);
    CHECK(s.Bh(x, e) == s.Bh(e, x));
    CHECK(s.Ch(x, e) == s.Ch(e, x));
    CHECK(s.Fh(x, e) == s.Fh(e, x));
    CHECK(s.Hh(x, e) == s.Hh(e, x));
  }
}

TEST_CASE("symbols are homogeneous counting c as half a derivative", "[normal_form][property]") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(-5, -0.2);
  const double g = 1.0, c = 0.8, lam = 2.5;
  const SymbolTable s = symbols(Params{g, c}), sl = symbols(Params{g, std::sqrt(lam) * c});
  for (const auto& [name, f] : all_symbols) {
    INFO(name);
    // degree read off one sample, then required at the rest
    const double d = std::log(std::abs((sl.*f)(-2 * lam, -lam) / (s.*f)(-2, -1))) / std::log(lam);
    CHECK(std::abs(2 * d - std::round(2 * d)) < 1e-10);
    for (int j = 0; j < 20; ++j) {
      const double x = U(rng), e = U(rng);
      const cplx a = (s.*f)(x, e), b = (sl.*f)(lam * x, lam * e);
      CHECK(std::abs(b - std::pow(lam, d) * a) <= 1e-12 * (1 + std::abs(b)));
    }
  }
}

TEST_CASE("closed forms solve both symbol systems", "[normal_form]") {
  for (const Params& p : {Params{1.0, 1.0}, Params{1.3, 0.7}, Params{2.0, 2.5}}) {
    const auto reps = verify_symbol_systems(p, 100, 99);
    REQUIRE(reps.size() == 2);
    for (const auto& r : reps) {
      INFO(r.system << " g=" << p.g << " c=" << p.c);
      CHECK(r.samples == 100);
      CHECK(r.pass);
      CHECK(r.max_residual <= 1e-10 * (1 + r.max_coefficient));
    }
  }
  for (const auto& r : verify_symbol_systems(Params{1.0, 0.0}, 100, 5)) CHECK(r.max_residual <= 1e-12);
}

TEST_CASE("single-point substitution into the mixed system", "[normal_form]") {
  const SymbolTable s = symbols(Params{1.0, 1.0});
  const double x = -1, e = -1;
  // e B + g C + (x - e) A + c D = -i x e, by hand
  const cplx lhs = e * s.Ba(x, e) + s.Ca(x, e) + (x - e) * s.Aa(x, e) + s.Da(x, e);
  CHECK(std::abs(lhs + I * x * e) < 1e-14);
  CHECK(std::abs(mixed_system(s, x, e)[1].residual) < 1e-14);
}

TEST_CASE("degenerate samples are rejected", "[normal_form]") {
  const SymbolTable s = symbols(Params{1.0, 1.0});
  CHECK_THROWS(mixed_system(s, 0.0, -1.0));
  CHECK_THROWS(holomorphic_system(s, -1.0, 0.0));
  CHECK_THROWS(mixed_system(s, 1.0, -1.0));
  CHECK_THROWS(verify_symbol_systems(Params{1.0, 1.0}, 10, 1, -1.0, 0.5));
}

TEST_CASE("quadratic correction examples", "[normal_form]") {
  const SpacePtr sp = space();
  const Params p{1.0, 1.0};
  const QuadraticCorrection z = quadratic_correction(zero_state(sp), p);
  CHECK(coeff_norm(z.W2) == 0.0);
  CHECK(coeff_norm(z.Q2) == 0.0);

  // c = 0, W = eps e^{-i alpha}: W2 = -P[(W + conj W) W_alpha], Q2 = 0
  const double eps = 0.01;
  WaveState s = zero_state(sp);
  s.W = mode(sp, -1, eps);
  const QuadraticCorrection q = quadratic_correction(s, Params{1.0, 0.0});
  // (W + conj W) W_alpha = -i eps^2 (e^{-2i alpha} + 1), and P halves the mean
  const Field expect = mode(sp, -2, I * eps * eps) + mode(sp, 0, 0.5 * I * eps * eps);
  CHECK(dist(q.W2, expect) < 1e-18);
  CHECK(coeff_norm(q.Q2) == 0.0);

  s.W += mode(sp, 0, 0.1);
  CHECK_THROWS_AS(quadratic_correction(s, p), MeanNotZero);
}

TEST_CASE("quadratic correction is bilinear in the amplitude", "[normal_form][property]") {
  const SpacePtr sp = space();
  const WaveState prof = state_from_modes(sp, {{-1, 1.0}, {-2, 0.3}}, {{-1, 0.5}, {-3, cplx(0, 0.2)}});
  const Params p{1.0, 1.0};
  std::vector<double> r;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const WaveState s{eps * prof.W, eps * prof.Q, 0};
    const QuadraticCorrection q = quadratic_correction(s, p);
    r.push_back(std::hypot(l2_norm(q.W2), l2_norm(q.Q2)) / (eps * eps));
  }
  CHECK(std::abs(r[1] - r[0]) <= 1e-8 * r[0]);
  CHECK(std::abs(r[2] - r[0]) <= 1e-8 * r[0]);
}

TEST_CASE("spatial and symbol paths agree", "[normal_form][property]") {
  const SpacePtr sp = space(64);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  for (const Params& p : {Params{1.0, 1.0}, Params{1.0, 0.0}, Params{1.4, 2.0}}) {
    WaveState s = zero_state(sp);
    for (int k = -6; k < 0; ++k) {
      s.W += mode(sp, k, cplx(n(rng), n(rng)) / double(k * k));
      s.Q += mode(sp, k, cplx(n(rng), n(rng)) / double(k * k));
    }
    const QuadraticCorrection a = quadratic_correction(s, p), b = quadratic_correction_symbolic(s, p);
    const double scale = coeff_norm(a.W2) + coeff_norm(a.Q2);
    CHECK(dist(a.W2, b.W2) <= 1e-10 * scale);
    CHECK(dist(a.Q2, b.Q2) <= 1e-10 * scale);
    CHECK(holomorphy_report(a.W2).defect == 0.0);
    CHECK(holomorphy_report(a.Q2).defect == 0.0);
  }
}

TEST_CASE("normal form leaves a cubic residual", "[normal_form]") {
  const SpacePtr sp = space();
  const WaveState prof = state_from_modes(sp, {{-1, 1.0}, {-2, 0.3}}, {{-1, 0.5}, {-3, cplx(0, 0.2)}});
  const std::vector<double> eps{1e-1, 3e-2, 1e-2};
  for (double c : {1.0, 0.0}) {
    INFO("c = " << c);
    const CubicSweep s = cubic_residual_sweep(prof, eps, Params{1.0, c});
    CHECK(s.slope_W == Approx(3.0).margin(0.15));
    CHECK(s.slope_Q == Approx(3.0).margin(0.15));
    // ablation: against the linear flow alone the quadratic defect remains
    const CubicSweep a = cubic_residual_sweep(prof, eps, Params{1.0, c}, true);
    CHECK(a.slope_W == Approx(2.0).margin(0.15));
    CHECK(a.slope_Q == Approx(2.0).margin(0.15));
  }
  const CubicResidual z = cubic_residual(zero_state(sp), Params{1.0, 1.0});
  CHECK(z.rW == 0.0);
  CHECK(z.rQ == 0.0);
}
