#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "oqs/state.hpp"

namespace oqs {

struct OdeStepOutcome {
  double dtUsed = 0;
  double dtNext = 0;
};

namespace detail {

// Cash-Karp embedded 4(5) tableau
inline constexpr double kCkA[6][5] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {3.0 / 10, -9.0 / 10, 6.0 / 5},
    {-11.0 / 54, 5.0 / 2, -70.0 / 27, 35.0 / 27},
    {1631.0 / 55296, 175.0 / 512, 575.0 / 13824, 44275.0 / 110592, 253.0 / 4096}};
inline constexpr double kCkC[6] = {37.0 / 378, 0, 250.0 / 621, 125.0 / 594, 0, 512.0 / 1771};
inline constexpr double kCkE[6] = {37.0 / 378 - 2825.0 / 27648,
                                   0,
                                   250.0 / 621 - 18575.0 / 48384,
                                   125.0 / 594 - 13525.0 / 55296,
                                   -277.0 / 14336,
                                   512.0 / 1771 - 1.0 / 4};

}  // namespace detail

// Embedded Cash-Karp 4(5) step with elementary error control. The controller
// keeps no memory beyond the next stepsize, so a trajectory's stepper state
// is the single suggested dt.
class OdeStepper {
public:
  OdeStepper(double eps, double epsAbs, double initialDt, double dtFloor)
      : eps_(eps), epsAbs_(epsAbs), dtNext_(initialDt), dtFloor_(dtFloor) {
    if (eps_ <= 0) throw std::invalid_argument("ode eps must be positive");
    if (epsAbs_ < 0) throw std::invalid_argument("ode epsAbs must be non-negative");
    if (dtNext_ <= 0) throw std::invalid_argument("ode initial stepsize must be positive");
  }

  double suggestedDt() const { return dtNext_; }
  void setSuggestedDt(double dt) {
    if (dt <= 0) throw std::invalid_argument("ode stepsize must be positive");
    dtNext_ = dt;
  }
  double lastDt() const { return lastDt_; }

  // advances y (and t) by one accepted step of size <= dtMax
  template <class Deriv>
  OdeStepOutcome step(Deriv&& f, std::span<complex> y, double& t, double dtMax) {
    const std::size_t n = y.size();
    ytmp_.assign(n, complex{});

    double l2 = 0;
    for (const complex& c : y) l2 += std::norm(c);
    const double tol = eps_ * std::sqrt(l2) + epsAbs_;

    // the first stage does not depend on dt, so it survives retries
    k_[0].assign(n, complex{});
    f(t, std::span<const complex>(y), std::span<complex>(k_[0]));

    double dt = std::min(dtNext_, dtMax);
    for (;;) {
      if (dt < dtFloor_) throw std::runtime_error("stepper stalled");

      for (int s = 1; s < 6; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
          complex acc = y[i];
          for (int j = 0; j < s; ++j) acc += dt * detail::kCkA[s][j] * k_[j][i];
          ytmp_[i] = acc;
        }
        const double ts = t + dt * kStageTime[s];
        k_[s].assign(n, complex{});
        f(ts, std::span<const complex>(ytmp_), std::span<complex>(k_[s]));
      }

      double err = 0;
      for (std::size_t i = 0; i < n; ++i) {
        complex e{};
        for (int s = 0; s < 6; ++s) e += detail::kCkE[s] * k_[s][i];
        err = std::max(err, std::abs(dt * e));
      }

      if (err <= tol || tol == 0) {
        for (std::size_t i = 0; i < n; ++i) {
          complex acc = y[i];
          for (int s = 0; s < 6; ++s) acc += dt * detail::kCkC[s] * k_[s][i];
          y[i] = acc;
        }
        t += dt;
        lastDt_ = dt;
        const double grow =
            (err > 0) ? std::min(5.0, 0.9 * std::pow(tol / err, 0.2)) : 5.0;
        dtNext_ = dt * std::max(grow, 0.2);
        return {dt, dtNext_};
      }
      dt *= std::max(0.1, 0.9 * std::pow(tol / err, 0.25));
    }
  }

private:
  static constexpr double kStageTime[6] = {0, 1.0 / 5, 3.0 / 10, 3.0 / 5, 1.0, 7.0 / 8};

  double eps_, epsAbs_, dtNext_, dtFloor_;
  double lastDt_ = 0;
  std::vector<complex> k_[6];
  std::vector<complex> ytmp_;
};

// Single controlled step as a free function (convenience for tests and small
// integrations); y and t are advanced in place.
template <class Deriv>
OdeStepOutcome odeStep(Deriv&& f, std::vector<complex>& y, double& t, double proposedDt,
                       double eps, double epsAbs, double dtFloor = 1e-14) {
  OdeStepper stepper(eps, epsAbs, proposedDt, dtFloor);
  return stepper.step(f, std::span<complex>(y), t, proposedDt);
}

}  // namespace oqs
