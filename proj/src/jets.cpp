#include "torgamma/jets.hpp"

#include <cmath>
#include <cstddef>

namespace torgamma {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// exp of a power series with zero constant term
std::vector<double> series_exp(const std::vector<double>& s) {
  std::vector<double> e(s.size(), 0.0);
  e[0] = 1.0;
  for (std::size_t m = 1; m < s.size(); ++m) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= m; ++k) acc += static_cast<double>(k) * s[k] * e[m - k];
    e[m] = acc / static_cast<double>(m);
  }
  return e;
}

// jet of 1/Gamma(1 + t):  exp(gamma_E t + sum_{k>=2} (-1)^{k+1} zeta(k) t^k / k)
std::vector<double> seed_unit(int order) {
  std::vector<double> s(order + 1, 0.0);
  if (order >= 1) s[1] = kEulerGamma;
  for (int k = 2; k <= order; ++k) {
    double z = std::riemann_zeta(static_cast<double>(k));
    s[k] = (k % 2 == 0 ? -z : z) / k;
  }
  return series_exp(s);
}

// B_2 .. B_14 at indices 1..7
constexpr double kBernoulli[8] = {0.0,      1.0 / 6,  -1.0 / 30,      1.0 / 42,
                                  -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6};
constexpr int kShift = 15;

// Hurwitz zeta(s, x) for integer s >= 2 and x in (0,1), Euler-Maclaurin
double hurwitz_zeta(int s, double x) {
  double acc = 0.0;
  for (int n = 0; n < kShift; ++n) acc += std::pow(x + n, -s);
  const double big = x + kShift;
  acc += std::pow(big, 1 - s) / (s - 1);
  acc += 0.5 * std::pow(big, -s);
  double rising = s;    // (s)_{2j-1}
  double fact = 2.0;    // (2j)!
  for (int j = 1; j <= 7; ++j) {
    acc += kBernoulli[j] / fact * rising * std::pow(big, -s - 2 * j + 1);
    rising *= static_cast<double>(s + 2 * j - 1) * (s + 2 * j);
    fact *= static_cast<double>(2 * j + 1) * (2 * j + 2);
  }
  return acc;
}

double digamma(double x) {
  double acc = 0.0;
  for (int n = 0; n < kShift; ++n) acc -= 1.0 / (x + n);
  const double big = x + kShift;
  acc += std::log(big) - 0.5 / big;
  for (int j = 1; j <= 7; ++j) acc -= kBernoulli[j] / (2.0 * j * std::pow(big, 2 * j));
  return acc;
}

// jet of 1/Gamma(f + t) for f in (0,1):
// exp(-log Gamma(f) - psi(f) t - sum_{k>=2} (-1)^k zeta(k, f) t^k / k)
std::vector<double> seed_frac(double f, int order) {
  std::vector<double> s(order + 1, 0.0);
  if (order >= 1) s[1] = -digamma(f);
  for (int k = 2; k <= order; ++k) {
    double z = hurwitz_zeta(k, f);
    s[k] = (k % 2 == 0 ? -z : z) / k;
  }
  auto e = series_exp(s);
  const double c = std::exp(-std::lgamma(f));
  for (auto& v : e) v *= c;
  return e;
}

// 1/Gamma(a-1+t) = (a-1+t) * 1/Gamma(a+t); am1 = a-1
void step_down(std::vector<double>& j, double am1) {
  std::vector<double> out(j.size());
  for (std::size_t k = 0; k < j.size(); ++k)
    out[k] = am1 * j[k] + (k ? j[k - 1] : 0.0);
  j = std::move(out);
}

// 1/Gamma(a+1+t) = 1/Gamma(a+t) / (a+t); requires a != 0
void step_up(std::vector<double>& j, double a) {
  std::vector<double> out(j.size());
  for (std::size_t k = 0; k < j.size(); ++k)
    out[k] = (j[k] - (k ? out[k - 1] : 0.0)) / a;
  j = std::move(out);
}

}  // namespace

std::vector<double> recip_gamma_jet(const Rational& a, int order) {
  if (is_integer(a)) {
    long n = to_long(rat_num(a));
    auto j = seed_unit(order);
    for (long m = 1; m < n; ++m) step_up(j, static_cast<double>(m));
    for (long m = 0; m >= n; --m) step_down(j, static_cast<double>(m));
    return j;
  }
  Rational fl = rat_floor(a);
  double f = to_double(a - fl);
  long d = to_long(rat_num(fl));
  auto j = seed_frac(f, order);
  for (long m = 0; m < d; ++m) step_up(j, f + static_cast<double>(m));
  for (long m = -1; m >= d; --m) step_down(j, f + static_cast<double>(m));
  return j;
}

}  // namespace torgamma
