#include "qg/schedules.hpp"

#include <cmath>

namespace qg {

std::vector<double> u_sequence(int n) {
    if (n < 0) throw Error("u_sequence: n must be >= 0");
    std::vector<double> u(static_cast<std::size_t>(n) + 1);
    u[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        const double half = 0.5 * u[static_cast<std::size_t>(k) - 1];
        u[static_cast<std::size_t>(k)] = half + std::sqrt(half * half + 2.0);
    }
    return u;
}

StepSchedule StepSchedule::constant(double gamma) {
    if (gamma <= 0.0) throw Error("StepSchedule::constant: gamma must be positive");
    StepSchedule s;
    s.kind_ = Kind::Constant;
    s.c_ = gamma;
    return s;
}

StepSchedule StepSchedule::harmonic(double c) {
    if (c <= 0.0) throw Error("StepSchedule::harmonic: c must be positive");
    StepSchedule s;
    s.kind_ = Kind::Harmonic;
    s.c_ = c;
    return s;
}

StepSchedule StepSchedule::decreasing_u(double L, int horizon) {
    if (L <= 0.0) throw Error("StepSchedule::decreasing_u: L must be positive");
    if (horizon < 1) throw Error("StepSchedule::decreasing_u: horizon must be >= 1");
    StepSchedule s;
    s.kind_ = Kind::DecreasingU;
    s.L_ = L;
    s.u_ = u_sequence(horizon);
    return s;
}

StepSchedule StepSchedule::custom(std::vector<double> gammas) {
    for (double g : gammas)
        if (g <= 0.0) throw Error("StepSchedule::custom: all step-sizes must be positive");
    StepSchedule s;
    s.kind_ = Kind::Custom;
    s.custom_ = std::move(gammas);
    return s;
}

double StepSchedule::gamma(int t) const {
    if (t < 0) throw Error("StepSchedule::gamma: negative index");
    switch (kind_) {
        case Kind::Constant: return c_;
        case Kind::Harmonic: return c_ / (t + 2);
        case Kind::DecreasingU:
            if (t + 1 >= static_cast<int>(u_.size()))
                throw Error("StepSchedule::gamma: beyond precomputed horizon");
            return 1.0 / (L_ * u_[static_cast<std::size_t>(t) + 1]);
        case Kind::Custom:
            if (t >= static_cast<int>(custom_.size()))
                throw Error("StepSchedule::gamma: custom schedule exhausted");
            return custom_[static_cast<std::size_t>(t)];
    }
    throw Error("StepSchedule::gamma: unreachable");
}

std::string StepSchedule::name() const {
    switch (kind_) {
        case Kind::Constant: return "constant";
        case Kind::Harmonic: return "harmonic";
        case Kind::DecreasingU: return "decreasing-u";
        case Kind::Custom: return "custom";
    }
    return "";
}

}  // namespace qg
