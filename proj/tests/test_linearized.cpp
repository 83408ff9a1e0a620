#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hww/experiments.hpp"
#include "hww/fit.hpp"
#include "hww/linearized.hpp"

using namespace hww;
using Catch::Approx;

namespace {

const cplx I(0, 1);

SpacePtr space(int N = 64) { return Space::make(Domain{2 * kPi, N, 2}); }

double dist(const Field& a, const Field& b) { return coeff_norm(a - b); }

Field random_holo(const SpacePtr& sp, std::mt19937_64& rng, double eps, int kmax = 4) {
  std::normal_distribution<double> n;
  Field f(sp);
  for (int k = -kmax; k < 0; ++k) f += mode(sp, k, eps * cplx(n(rng), n(rng)) / double(k * k));
  return f;
}

WaveState random_state(const SpacePtr& sp, std::mt19937_64& rng, double eps, int kmax = 4) {
  WaveState s = zero_state(sp);
  s.W = random_holo(sp, rng, eps, kmax);
  s.Q = random_holo(sp, rng, eps, kmax);
  return s;
}

WaveState scaled(const WaveState& s, double e) { return WaveState{e * s.W, e * s.Q, s.t}; }

}  // namespace

TEST_CASE("zero background gives the linear system", "[linearized]") {
  const SpacePtr sp = space();
  std::mt19937_64 rng(1);
  const LinearizedState l{random_holo(sp, rng, 1.0), random_holo(sp, rng, 1.0)};
  for (double c : {0.0, 1.3}) {
    const Params p{1.2, c};
    const Background bg = make_background(zero_state(sp), p);
    const LinRhs r = rhs_linearized(l, bg, p);
    CHECK(dist(r.dw, -derivative(l.r)) < 1e-14);
    CHECK(dist(r.dr, (-I * c) * l.r + (I * p.g) * l.w) < 1e-14);
  }
}

TEST_CASE("linear energy is conserved at zero background", "[linearized]") {
  const SpacePtr sp = space(32);
  std::mt19937_64 rng(2);
  const Params p{1.0, 1.0};
  CoupledState cs{zero_state(sp), {random_holo(sp, rng, 1.0), random_holo(sp, rng, 1.0)}};
  const double e0 = energy_e0(cs.l.w, cs.l.r, p.g);
  double drift = 0;
  for (int j = 0; j < 1000; ++j) {
    cs = coupled_rk4_step(cs, 0.01, p);
    drift = std::max(drift, std::abs(energy_e0(cs.l.w, cs.l.r, p.g) - e0));
  }
  CHECK(drift <= 1e-9 * std::abs(e0));
}

TEST_CASE("tangent consistency of the linearized flow", "[linearized]") {
  // at N = 32 truncated products leave an h-independent floor near 1e-4
  const SpacePtr sp = space(64);
  std::mt19937_64 rng(3);
  const WaveState s = random_state(sp, rng, 0.05, 3);
  const WaveState dir = random_state(sp, rng, 1.0, 3);
  const TangentReport r = tangent_check(s, dir.W, dir.Q, Params{1.0, 1.0}, 0.5, 0.01, {1e-2, 1e-3});
  CHECK(r.slope == Approx(2.0).margin(0.2));
}

TEST_CASE("tangent and perturbation variables invert each other", "[linearized]") {
  const SpacePtr sp = space();
  std::mt19937_64 rng(4);
  const Background bg = make_background(random_state(sp, rng, 0.1), Params{1.0, 1.0});
  const Field dW = random_holo(sp, rng, 1.0), dQ = random_holo(sp, rng, 1.0);
  const auto [w2, q2] = perturbation_from_tangent(bg, tangent_from_perturbation(bg, dW, dQ));
  CHECK(dist(w2, dW) < 1e-13);
  CHECK(dist(q2, dQ) < 1e-13);
}

TEST_CASE("linear energy examples", "[linearized]") {
  const SpacePtr sp = space();
  const Params p{1.0, 1.0};
  const Background bg = make_background(zero_state(sp), p);
  const Field e = mode(sp, -1, 1.0), z(sp);
  CHECK(energy_lin2({e, z}, bg, p) == Approx(2 * kPi));
  CHECK(energy_lin2({z, e}, bg, p) == Approx(2 * kPi));
  CHECK(energy_lin2({z, z}, bg, p) == 0.0);
  CHECK(energy_lin3({e, e}, bg, p) == energy_lin2({e, e}, bg, p));

  // Wd = 0.1 e^{-i alpha}: conj(Wd) w^2 has no zero mode
  WaveState a = zero_state(sp);
  a.W = mode(sp, -1, 0.1 * I);
  const Background bga = make_background(a, p);
  CHECK(energy_lin3({e, z}, bga, p) == Approx(energy_lin2({e, z}, bga, p)).margin(1e-14));

  // R = -0.1 i e^{-i alpha} with w = 0
  WaveState b = zero_state(sp);
  b.Q = mode(sp, -1, 0.1);
  const Background bgb = make_background(b, p);
  CHECK(energy_lin3({z, e}, bgb, p) == Approx(energy_lin2({z, e}, bgb, p)).margin(1e-14));
}

TEST_CASE("cubic linear energy stays close to the quadratic one", "[linearized][property]") {
  const SpacePtr sp = space();
  std::mt19937_64 rng(5);
  int tested = 0;
  for (double eps : {0.0025, 0.005, 0.01, 0.02, 0.04}) {
    const Params p{1.0, 1.0};
    const Background bg = make_background(random_state(sp, rng, eps), p);
    if (!lin3_regime_ok(bg, p)) continue;
    ++tested;
    const double Au = control_norms(bg.d, bg.s, p).Au;
    const LinearizedState l{random_holo(sp, rng, 1.0), random_holo(sp, rng, 1.0)};
    const double e2 = energy_lin2(l, bg, p), e3 = energy_lin3(l, bg, p);
    CHECK(std::abs(e3 - e2) <= 10 * Au * e2);
  }
  CHECK(tested >= 3);
}

TEST_CASE("source term examples", "[linearized]") {
  const SpacePtr sp = space();
  const Params p{1.0, 1.0};
  std::mt19937_64 rng(6);
  const LinearizedState l{random_holo(sp, rng, 1.0), random_holo(sp, rng, 1.0)};
  const LinSources z = lin_sources(l, make_background(zero_state(sp), p), p);
  for (const Field* f : {&z.G, &z.G1, &z.Gu, &z.K, &z.K1, &z.Ku, &z.PG2, &z.PK2, &z.PG2_1, &z.PK2_1})
    CHECK(coeff_norm(*f) < 1e-15);

  // W = 0.1 e^{-i alpha}, r = e^{-2i alpha}: P[W conj(r_alpha)] = 0
  WaveState a = zero_state(sp);
  a.W = mode(sp, -1, 0.1);
  const LinSources sa = lin_sources({Field(sp), mode(sp, -2, 1.0)}, make_background(a, p), p);
  CHECK(coeff_norm(sa.PK2_1) < 1e-16);

  // Wd = eps e^{-3i alpha}, w = e^{-i alpha}: the term P[Wd conj(w)] is
  // eps e^{-2i alpha}; W conj(w_alpha) adds -eps/3 e^{-2i alpha}, -Wd w adds
  // -eps e^{-4i alpha} and conj(Wd) w is antiholomorphic
  const double eps = 0.01;
  WaveState b = zero_state(sp);
  b.W = mode(sp, -3, I * eps / 3.0);
  const LinSources sb = lin_sources({mode(sp, -1, 1.0), Field(sp)}, make_background(b, p), p);
  const Field expect = mode(sp, -2, eps) + mode(sp, -2, -eps / 3) + mode(sp, -4, -eps);
  CHECK(dist(sb.PG2_1, expect) < 1e-16);
}

TEST_CASE("quadratic parts carry the linear dependence on the background", "[linearized][property]") {
  const SpacePtr sp = space();
  std::mt19937_64 rng(7);
  const WaveState s0 = random_state(sp, rng, 1.0);
  const LinearizedState l{random_holo(sp, rng, 1.0), random_holo(sp, rng, 1.0)};
  const Params p{1.0, 1.0};
  // the zero mode is excluded: P applied to a Pbar term keeps a quarter of
  // its mean, which is linear in the background
  auto nz = [](Field f) {
    f.set(0, 0.0);
    return coeff_norm(f);
  };
  std::vector<double> lam{1e-2, 1e-3, 1e-4};
  std::vector<std::vector<double>> part(4), rem(4);
  for (double lm : lam) {
    const LinSources s = lin_sources(l, make_background(scaled(s0, lm), p), p);
    part[0].push_back(nz(s.PG2));
    part[1].push_back(nz(s.PK2));
    part[2].push_back(nz(s.PG2_1));
    part[3].push_back(nz(s.PK2_1));
    rem[0].push_back(nz(s.G - s.PG2));
    rem[1].push_back(nz(s.K - s.PK2));
    rem[2].push_back(nz(s.G1 - s.PG2_1));
    rem[3].push_back(nz(s.K1 - s.PK2_1));
  }
  for (int i = 0; i < 4; ++i) {
    INFO("block " << i);
    CHECK(loglog_slope(lam, part[i]) == Approx(1.0).margin(0.02));
    CHECK(loglog_slope(lam, rem[i]) == Approx(2.0).margin(0.1));
  }
  // blocks without R are exactly linear in the background
  const LinSources a = lin_sources(l, make_background(scaled(s0, 1e-2), p), p);
  const LinSources b = lin_sources(l, make_background(scaled(s0, 3e-2), p), p);
  CHECK(dist(b.PG2_1, 3.0 * a.PG2_1) < 1e-13 * coeff_norm(b.PG2_1));
}

TEST_CASE("vorticity blocks vanish at c = 0", "[linearized]") {
  const SpacePtr sp = space();
  std::mt19937_64 rng(8);
  const Params p{1.0, 0.0};
  const LinearizedState l{random_holo(sp, rng, 1.0), random_holo(sp, rng, 1.0)};
  const LinSources s = lin_sources(l, make_background(random_state(sp, rng, 0.1), p), p);
  CHECK(dist(s.Gu, s.G) == 0.0);
  CHECK(dist(s.Ku, s.K) == 0.0);
}

TEST_CASE("linearized right-hand side is holomorphic", "[linearized][property]") {
  const SpacePtr sp = space();
  std::mt19937_64 rng(9);
  const Params p{1.0, 1.0};
  const Background bg = make_background(random_state(sp, rng, 0.1), p);
  const LinearizedState l{random_holo(sp, rng, 1.0), random_holo(sp, rng, 1.0)};
  const LinRhs r = rhs_linearized(l, bg, p);
  CHECK(holomorphy_report(r.dw).defect == 0.0);
  CHECK(holomorphy_report(r.dr).defect == 0.0);
  const LinSources s = lin_sources(l, bg, p);
  for (const Field* f : {&s.Gu, &s.Ku, &s.PG2, &s.PK2, &s.PG2_1, &s.PK2_1})
    CHECK(holomorphy_report(*f).defect == 0.0);
}

TEST_CASE("quadratic linear energy grows within the control envelope", "[linearized][property]") {
  const SpacePtr sp = space(32);
  std::mt19937_64 rng(10);
  const Params p{1.0, 1.0};
  CoupledState cs{random_state(sp, rng, 0.05, 3), {random_holo(sp, rng, 1.0, 3), random_holo(sp, rng, 1.0, 3)}};
  const double dt = 0.01;
  const double e0 = energy_lin2(cs.l, make_background(cs.s, p), p);
  double integral = 0, worst = 0;
  auto rate = [&](const WaveState& s) {
    const ControlNorms n = control_norms(to_diagonal(s), s, p);
    return n.Bu + p.c * n.Au;
  };
  double prev = rate(cs.s);
  for (int j = 0; j < 200; ++j) {
    cs = coupled_rk4_step(cs, dt, p);
    const double cur = rate(cs.s);
    integral += 0.5 * dt * (prev + cur);
    prev = cur;
    const double e = energy_lin2(cs.l, make_background(cs.s, p), p);
    worst = std::max(worst, std::abs(std::log(e / e0)) / integral);
  }
  CHECK(worst <= 50);
}
