#pragma once

#include <array>

namespace orbtherm {

// b_s^(j)(alpha) by its hypergeometric power series.
double laplace_coefficient(double s, int j, double alpha);

// b_s^(j)(alpha) by periodic trapezoidal quadrature, refined until converged.
double laplace_coefficient_quadrature(double s, int j, double alpha);

struct LaplaceDerivatives {
  double alpha_d = 0.0;    // alpha db/dalpha
  double alpha2_d2 = 0.0;  // alpha^2 d2b/dalpha2
};

// Derivatives by quadrature of the differentiated integrand.
LaplaceDerivatives laplace_derivatives(double s, int j, double alpha);

inline constexpr int laplace_taylor_order = 8;

// d^k b / d alpha^k for k = 0..order-1 from the series.
std::array<double, laplace_taylor_order> laplace_series_derivatives(double s, int j, double alpha);

// Kernels of the resonant and secular expansion, with their alpha-derivatives.
struct PerturbationCoeffs {
  double alpha = 0.0;
  std::array<double, 6> f{};   // f1..f6 kernels
  std::array<double, 6> df{};  // d/dalpha
  std::array<double, 5> c{};   // C0..C4
  std::array<double, 5> dc{};
};

PerturbationCoeffs perturbation_coeffs(double alpha);

// Cached Taylor tables of the needed Laplace coefficients around alpha0.
class LaplaceTable {
 public:
  static constexpr double default_tolerance = 1e-6;

  LaplaceTable() = default;
  explicit LaplaceTable(double alpha0, double tolerance = default_tolerance);

  double alpha0() const { return alpha0_; }
  double tolerance() const { return tolerance_; }
  bool valid() const { return alpha0_ > 0.0; }
  bool covers(double alpha) const;

  // Throws std::logic_error when alpha is outside the table's radius.
  PerturbationCoeffs evaluate(double alpha) const;

  // Rebuilds around alpha if it is not covered.
  const LaplaceTable& refresh(double alpha);

 private:
  // pairs: (3/2,1) (3/2,2) (1/2,0) (1/2,1) (1/2,2) (1/2,3)
  static constexpr int n_pairs = 6;
  double alpha0_ = 0.0;
  double tolerance_ = default_tolerance;
  std::array<std::array<double, laplace_taylor_order>, n_pairs> d_{};
};

// f kernels with eccentricity/inclination factors applied:
// f1 = K1 g5^2, f2 = K2 g5 g2, f3 = K3 g2^2, f4 = K4 e2^2, f5 = K5 e5 e2, f6 = K6 e5^2.
std::array<double, 6> resonant_terms(const PerturbationCoeffs& pc, double e5, double e2, double g5, double g2);

}  // namespace orbtherm
