#pragma once

#include <string>
#include <vector>

#include "qg/error.hpp"

namespace qg {

// u_0 = 1, u_k = u_{k-1}/2 + sqrt((u_{k-1}/2)^2 + 2). Returns u_0..u_n.
// The sequence satisfies u_k^2 = u_k*u_{k-1} + 2 and u_n = 1 + 2*sum(1/u_k),
// which tests use as drift detectors; asymptotically u_n ~ 2*sqrt(n).
std::vector<double> u_sequence(int n);

// Step-size schedule gamma_t, t = 0, 1, ...
//   Constant(gamma)
//   Harmonic(c):     gamma_t = c / (t + 2)
//   DecreasingU(L):  gamma_t = 1 / (L * u_{t+1})
//   Custom(list)
// Harmonic indexes from t = 0 so that the k-th step of a run (k from 1)
// uses c/(k+1); with c = 1/L this matches the momentum-form heavy-ball step.
class StepSchedule {
  public:
    enum class Kind { Constant, Harmonic, DecreasingU, Custom };

    static StepSchedule constant(double gamma);
    static StepSchedule harmonic(double c);
    static StepSchedule decreasing_u(double L, int horizon);
    static StepSchedule custom(std::vector<double> gammas);

    double gamma(int t) const;
    Kind kind() const { return kind_; }
    std::string name() const;

  private:
    StepSchedule() = default;

    Kind kind_ = Kind::Constant;
    double c_ = 0.0;           // Constant gamma or Harmonic c
    double L_ = 0.0;           // DecreasingU
    std::vector<double> u_;    // DecreasingU cache u_0..u_horizon
    std::vector<double> custom_;
};

}  // namespace qg
