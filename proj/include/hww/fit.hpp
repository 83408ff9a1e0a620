// Small numerical fitting helpers shared by the experiments.
#pragma once

#include <functional>
#include <thread>
#include <utility>
#include <vector>

#include "hww/spectral.hpp"

namespace hww {

// least-squares slope of log y against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Fits x_j = A z1^j + B z2^j by linear prediction and returns the two
// angular frequencies arg(z)/dt (sorted descending).
std::pair<double, double> prony2(const std::vector<cplx>& samples, double dt);

// Coefficients c_k of f(l) = sum_{k = first}^{first + m - 1} c_k l^k from m
// evaluations at the given scales.
std::vector<double> homogeneous_parts(const std::function<double(double)>& f,
                                      const std::vector<double>& lambdas = {1, 0.5, 0.25, 0.125},
                                      int first_power = 1);

// runs fn(i) for i in [0, n) on up to `threads` workers; each index is
// handled by exactly one worker so results stored by index are deterministic
template <class Fn>
void parallel_for_index(int n, int threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  const int T = std::min(threads, n);
  std::vector<std::thread> pool;
  for (int t = 0; t < T; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += T) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace hww
