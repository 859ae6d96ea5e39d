#include "orbtherm/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <stdexcept>
#include <string>

namespace orbtherm {

namespace {

constexpr double pi = 3.14159265358979323846;

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::domain_error("Laplace coefficient: alpha must lie in [0, 1), got " + std::to_string(alpha));
}

// Falling factorial p (p-1) ... (p-m+1).
double falling(int p, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= p - i;
  return r;
}

template <class F>
double periodic_trapezoid(F f) {
  int n = 16;
  double prev = 0.0;
  for (int m = 0; m < n; ++m) prev += f(2.0 * pi * m / n);
  prev /= n;
  while (n < (1 << 22)) {
    double mid = 0.0;
    for (int m = 0; m < n; ++m) mid += f(2.0 * pi * (m + 0.5) / n);
    mid /= n;
    const double cur = 0.5 * (prev + mid);
    n *= 2;
    if (std::abs(cur - prev) <= 1e-16 + 1e-15 * std::abs(cur)) return cur;
    prev = cur;
  }
  throw std::runtime_error("Laplace quadrature did not converge");
}

}  // namespace

std::array<double, laplace_taylor_order> laplace_series_derivatives(double s, int j, double alpha) {
  check_alpha(alpha);
  if (j < 0) j = -j;
  // b = 2 (s)_j / j! sum_k c_k alpha^(j+2k), c_0 = 1; term-wise derivatives.
  double lead = 2.0;
  for (int i = 0; i < j; ++i) lead *= (s + i) / (i + 1);
  constexpr int K = laplace_taylor_order;
  std::array<double, K> out{};
  std::array<double, K> pw{};  // alpha^(p-m)
  const double a2 = alpha * alpha;
  double c = lead;
  for (int k = 0; k < 100000; ++k) {
    const int p = j + 2 * k;
    for (int m = 0; m < K; ++m) {
      if (p < m) continue;
      if (p - m < 2 || k == 0)
        pw[static_cast<std::size_t>(m)] = std::pow(alpha, p - m);
      else
        pw[static_cast<std::size_t>(m)] *= a2;
    }
    double largest = 0.0;
    for (int m = 0; m < K; ++m) {
      if (p < m) continue;
      const auto u = static_cast<std::size_t>(m);
      const double term = c * falling(p, m) * pw[u];
      out[u] += term;
      largest = std::max(largest, std::abs(term) / (std::abs(out[u]) + 1e-300));
    }
    c *= (s + k) * (s + j + k) / ((k + 1.0) * (j + 1.0 + k));
    if (p >= K && (alpha == 0.0 || (k > 2 && largest < 1e-18))) break;
  }
  return out;
}

double laplace_coefficient(double s, int j, double alpha) { return laplace_series_derivatives(s, j, alpha)[0]; }

double laplace_coefficient_quadrature(double s, int j, double alpha) {
  check_alpha(alpha);
  return 2.0 * periodic_trapezoid([=](double psi) {
           return std::cos(j * psi) / std::pow(1.0 - 2.0 * alpha * std::cos(psi) + alpha * alpha, s);
         });
}

LaplaceDerivatives laplace_derivatives(double s, int j, double alpha) {
  check_alpha(alpha);
  const double d1 = 2.0 * periodic_trapezoid([=](double psi) {
    const double d = 1.0 - 2.0 * alpha * std::cos(psi) + alpha * alpha;
    return -s * std::pow(d, -s - 1.0) * (2.0 * alpha - 2.0 * std::cos(psi)) * std::cos(j * psi);
  });
  const double d2 = 2.0 * periodic_trapezoid([=](double psi) {
    const double d = 1.0 - 2.0 * alpha * std::cos(psi) + alpha * alpha;
    const double u = 2.0 * alpha - 2.0 * std::cos(psi);
    return (s * (s + 1.0) * std::pow(d, -s - 2.0) * u * u - 2.0 * s * std::pow(d, -s - 1.0)) * std::cos(j * psi);
  });
  return {alpha * d1, alpha * alpha * d2};
}

namespace {

struct Pair {
  double s;
  int j;
};

constexpr Pair pairs[6] = {{1.5, 1}, {1.5, 2}, {0.5, 0}, {0.5, 1}, {0.5, 2}, {0.5, 3}};

// b, b', b'', b''' of each pair at alpha.
using Derivs = std::array<std::array<double, 4>, 6>;

PerturbationCoeffs assemble(double a, const Derivs& d) {
  const auto& b32_1 = d[0];
  const auto& b32_2 = d[1];
  const auto& b12_0 = d[2];
  const auto& b12_1 = d[3];
  const auto& b12_2 = d[4];
  const auto& b12_3 = d[5];
  const double a2 = a * a;
  // w (A b + 10 a b' + a^2 b'') and its derivative.
  auto op = [&](double w, double A, const std::array<double, 4>& b) {
    return std::pair{w * (A * b[0] + 10.0 * a * b[1] + a2 * b[2]), w * ((A + 10.0) * b[1] + 12.0 * a * b[2] + a2 * b[3])};
  };
  PerturbationCoeffs pc;
  pc.alpha = a;
  pc.f[0] = 0.5 * a * b32_2[0];
  pc.df[0] = 0.5 * (b32_2[0] + a * b32_2[1]);
  pc.f[1] = -2.0 * pc.f[0];
  pc.df[1] = -2.0 * pc.df[0];
  pc.f[2] = pc.f[0];
  pc.df[2] = pc.df[0];
  std::tie(pc.f[3], pc.df[3]) = op(1.0 / 8.0, 17.0, b12_1);
  std::tie(pc.f[4], pc.df[4]) = op(-1.0 / 4.0, 20.0, b12_2);
  std::tie(pc.f[5], pc.df[5]) = op(1.0 / 8.0, 21.0, b12_3);
  pc.c[0] = 0.5 * b12_0[0];
  pc.dc[0] = 0.5 * b12_0[1];
  pc.c[1] = (2.0 * a * b12_0[1] + a2 * b12_0[2]) / 8.0;
  pc.dc[1] = (2.0 * b12_0[1] + 4.0 * a * b12_0[2] + a2 * b12_0[3]) / 8.0;
  pc.c[2] = -0.5 * a * b32_1[0];
  pc.dc[2] = -0.5 * (b32_1[0] + a * b32_1[1]);
  pc.c[3] = (2.0 * b12_1[0] - 2.0 * a * b12_1[1] - a2 * b12_1[2]) / 4.0;
  pc.dc[3] = (-4.0 * a * b12_1[2] - a2 * b12_1[3]) / 4.0;
  pc.c[4] = a * b32_1[0];
  pc.dc[4] = b32_1[0] + a * b32_1[1];
  return pc;
}

}  // namespace

PerturbationCoeffs perturbation_coeffs(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("perturbation_coeffs: alpha must lie in (0, 1)");
  Derivs d{};
  for (int i = 0; i < 6; ++i) {
    const auto full = laplace_series_derivatives(pairs[i].s, pairs[i].j, alpha);
    for (int m = 0; m < 4; ++m) d[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] = full[static_cast<std::size_t>(m)];
  }
  return assemble(alpha, d);
}

LaplaceTable::LaplaceTable(double alpha0, double tolerance) : alpha0_(alpha0), tolerance_(tolerance) {
  if (!(alpha0 > 0.0 && alpha0 < 1.0)) throw std::domain_error("LaplaceTable: alpha must lie in (0, 1)");
  for (int i = 0; i < n_pairs; ++i)
    d_[static_cast<std::size_t>(i)] = laplace_series_derivatives(pairs[i].s, pairs[i].j, alpha0);
}

bool LaplaceTable::covers(double alpha) const {
  return valid() && std::abs(alpha - alpha0_) <= tolerance_ * alpha0_;
}

PerturbationCoeffs LaplaceTable::evaluate(double alpha) const {
  if (!covers(alpha))
    throw std::logic_error("LaplaceTable: stale table (alpha " + std::to_string(alpha) + ", built at " +
                           std::to_string(alpha0_) + ")");
  const double delta = alpha - alpha0_;
  Derivs d{};
  for (std::size_t i = 0; i < n_pairs; ++i) {
    for (int m = 0; m < 4; ++m) {
      // Horner sum of d_k delta^(k-m) / (k-m)!.
      double acc = 0.0;
      for (int k = laplace_taylor_order - 1; k >= m; --k) acc = acc * delta / (k - m + 1) + d_[i][static_cast<std::size_t>(k)];
      d[i][static_cast<std::size_t>(m)] = acc;
    }
  }
  return assemble(alpha, d);
}

const LaplaceTable& LaplaceTable::refresh(double alpha) {
  if (!covers(alpha)) *this = LaplaceTable(alpha, tolerance_);
  return *this;
}

std::array<double, 6> resonant_terms(const PerturbationCoeffs& pc, double e5, double e2, double g5, double g2) {
  return {pc.f[0] * g5 * g5, pc.f[1] * g5 * g2, pc.f[2] * g2 * g2,
          pc.f[3] * e2 * e2, pc.f[4] * e5 * e2, pc.f[5] * e5 * e5};
}

}  // namespace orbtherm
