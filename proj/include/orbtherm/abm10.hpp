#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <functional>
#include <string>

#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>
#include <boost/rational.hpp>

namespace orbtherm {

class NonFiniteDerivative : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace abm_detail {

inline long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Coefficients of the k-value Adams-Bashforth (explicit) or Adams-Moulton (implicit) formula,
// applied to f_n, f_{n-1}, ... or f_{n+1}, f_n, ... respectively.
template <int K>
std::array<double, K> adams_coefficients(bool implicit) {
  using Q = boost::rational<long long>;
  std::array<Q, K> g{};
  g[0] = Q(1);
  for (int j = 1; j < K; ++j) {
    Q acc = implicit ? Q(0) : Q(1);
    for (int i = 0; i < j; ++i) acc -= g[static_cast<std::size_t>(i)] / Q(j + 1 - i);
    g[static_cast<std::size_t>(j)] = acc;
  }
  std::array<double, K> beta{};
  for (int i = 0; i < K; ++i) {
    Q acc(0);
    for (int j = i; j < K; ++j) acc += g[static_cast<std::size_t>(j)] * Q(binomial(j, i));
    if (i % 2 == 1) acc = -acc;
    beta[static_cast<std::size_t>(i)] = boost::rational_cast<double>(acc);
  }
  return beta;
}

}  // namespace abm_detail

// Fixed-step 10th-order Adams-Bashforth-Moulton predictor-corrector (PECE).
template <std::size_t N>
class Abm10 {
 public:
  static constexpr int order = 10;
  using State = std::array<double, N>;

  struct Snapshot {
    double t0 = 0.0;
    double dt = 0.0;
    long long steps = 0;
    State y{};
    std::array<State, order> history{};  // history[0] = f at the current step
  };

  explicit Abm10(double dt) : dt_(dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("Abm10: step must be positive");
  }

  static const std::array<double, order>& predictor() {
    static const auto b = abm_detail::adams_coefficients<order>(false);
    return b;
  }
  static const std::array<double, order>& corrector() {
    static const auto b = abm_detail::adams_coefficients<order>(true);
    return b;
  }

  // Startup: nine steps of an 8th-order Runge-Kutta-Fehlberg method, each in ten sub-steps.
  template <class System>
  void initialize(System& sys, const State& y0, double t0) {
    snap_ = Snapshot{};
    snap_.t0 = t0;
    snap_.dt = dt_;
    snap_.y = y0;
    boost::numeric::odeint::runge_kutta_fehlberg78<State> rk;
    std::array<State, order> f{};
    eval(sys, snap_.y, t0, f[0]);
    const double h = dt_ / 10.0;
    for (int s = 1; s < order; ++s) {
      for (int sub = 0; sub < 10; ++sub) {
        const double t = t0 + (s - 1) * dt_ + sub * h;
        rk.do_step(std::ref(sys), snap_.y, t, h);
      }
      eval(sys, snap_.y, t0 + s * dt_, f[static_cast<std::size_t>(s)]);
    }
    for (int i = 0; i < order; ++i) snap_.history[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(order - 1 - i)];
    snap_.steps = order - 1;
  }

  template <class System>
  void step(System& sys) {
    const auto& bp = predictor();
    const auto& bc = corrector();
    const double t1 = snap_.t0 + static_cast<double>(snap_.steps + 1) * dt_;
    State pred = snap_.y;
    for (std::size_t c = 0; c < N; ++c) {
      double acc = 0.0;
      for (std::size_t i = order; i-- > 0;) acc += bp[i] * snap_.history[i][c];
      pred[c] += dt_ * acc;
    }
    State fp{};
    eval(sys, pred, t1, fp);
    for (std::size_t c = 0; c < N; ++c) {
      double acc = 0.0;
      for (std::size_t i = order - 1; i-- > 0;) acc += bc[i + 1] * snap_.history[i][c];
      acc += bc[0] * fp[c];
      snap_.y[c] += dt_ * acc;
    }
    for (std::size_t i = order - 1; i > 0; --i) snap_.history[i] = snap_.history[i - 1];
    eval(sys, snap_.y, t1, snap_.history[0]);
    ++snap_.steps;
  }

  const State& state() const { return snap_.y; }
  double time() const { return snap_.t0 + static_cast<double>(snap_.steps) * dt_; }
  double dt() const { return dt_; }
  long long steps() const { return snap_.steps; }
  const Snapshot& snapshot() const { return snap_; }
  void restore(const Snapshot& s) {
    snap_ = s;
    dt_ = s.dt;
  }

 private:
  template <class System>
  static void eval(System& sys, const State& y, double t, State& f) {
    sys(y, f, t);
    for (std::size_t c = 0; c < N; ++c)
      if (!std::isfinite(f[c]))
        throw NonFiniteDerivative("non-finite derivative at t=" + std::to_string(t) + " component " + std::to_string(c));
  }

  double dt_;
  Snapshot snap_{};
};

}  // namespace orbtherm
