#include "hww/fit.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace hww {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("slope fit needs at least two matched points");
  const int n = static_cast<int>(x.size());
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

std::pair<double, double> prony2(const std::vector<cplx>& x, double dt) {
  const int n = static_cast<int>(x.size());
  if (n < 5) throw Error("two-frequency fit needs at least five samples");
  // x_{j+2} = a1 x_{j+1} + a0 x_j
  Eigen::MatrixXcd A(n - 2, 2);
  Eigen::VectorXcd b(n - 2);
  for (int j = 0; j + 2 < n; ++j) {
    A(j, 0) = x[j + 1];
    A(j, 1) = x[j];
    b(j) = x[j + 2];
  }
  const Eigen::VectorXcd a = A.colPivHouseholderQr().solve(b);
  // z^2 - a1 z - a0 = 0
  const cplx disc = std::sqrt(a(0) * a(0) + 4.0 * a(1));
  const cplx z1 = 0.5 * (a(0) + disc), z2 = 0.5 * (a(0) - disc);
  if (!std::isfinite(std::abs(z1)) || !std::isfinite(std::abs(z2)) || std::abs(z1) == 0 || std::abs(z2) == 0)
    throw Error("two-frequency fit failed");
  double t1 = std::arg(z1) / dt, t2 = std::arg(z2) / dt;
  if (t1 < t2) std::swap(t1, t2);
  return {t1, t2};
}

std::vector<double> homogeneous_parts(const std::function<double(double)>& f, const std::vector<double>& lambdas,
                                      int first_power) {
  const int m = static_cast<int>(lambdas.size());
  Eigen::MatrixXd V(m, m);
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i) {
    v(i) = f(lambdas[i]);
    for (int k = 0; k < m; ++k) V(i, k) = std::pow(lambdas[i], first_power + k);
  }
  const Eigen::VectorXd c = V.fullPivLu().solve(v);
  return std::vector<double>(c.data(), c.data() + m);
}

}  // namespace hww
