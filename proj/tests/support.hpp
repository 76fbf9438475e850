#pragma once

// Shared probe utilities for the test suites. These act as independent
// oracles for class-membership and subgradient validity: they sample random
// points and check the defining inequalities directly.

#include <algorithm>
#include <cmath>

#include "qg/core.hpp"
#include "qg/rng.hpp"
#include "qg/tolerances.hpp"

namespace qgtest {

using namespace qg;

struct ProbeResult {
    bool ok = true;
    double worst = 0.0;  // most negative margin seen
};

// f(y) >= f(x) + <g(x), y - x> - tol on random pairs with coordinates in
// [-radius, radius].
inline ProbeResult probe_subgradient_validity(const FirstOrderOracle& oracle, Rng& rng, int pairs,
                                              double radius = 10.0, double tol = 1e-12) {
    ProbeResult res;
    const int d = oracle.dimension();
    for (int t = 0; t < pairs; ++t) {
        const Vec x = rng.uniform_vec(d, -radius, radius);
        const Vec y = rng.uniform_vec(d, -radius, radius);
        const Vec g = oracle.subgradient(x, SubgradSelection{SubgradPolicy::FirstActive, {}});
        const double margin = oracle.value(y) - oracle.value(x) - dot(g, sub(y, x));
        res.worst = std::min(res.worst, margin);
        if (margin < -tol) res.ok = false;
    }
    return res;
}

// f(x) - f_star <= (L/2) d(x, X*)^2 + tol on random points.
inline ProbeResult probe_qgplus_membership(const FirstOrderOracle& oracle, double L, Rng& rng,
                                           int points, double radius = 10.0, double tol = 1e-12) {
    ProbeResult res;
    const int d = oracle.dimension();
    for (int t = 0; t < points; ++t) {
        const Vec x = rng.uniform_vec(d, -radius, radius);
        const double dist = distance_to_optset(oracle, x);
        const double margin = 0.5 * L * dist * dist - (oracle.value(x) - oracle.f_star());
        res.worst = std::min(res.worst, margin);
        if (margin < -tol) res.ok = false;
    }
    return res;
}

// |f(x) - f(y)| <= M ||x - y|| + tol on random pairs.
inline ProbeResult probe_lipschitz_membership(const FirstOrderOracle& oracle, double M, Rng& rng,
                                              int pairs, double radius = 10.0, double tol = 1e-12) {
    ProbeResult res;
    const int d = oracle.dimension();
    for (int t = 0; t < pairs; ++t) {
        const Vec x = rng.uniform_vec(d, -radius, radius);
        const Vec y = rng.uniform_vec(d, -radius, radius);
        const double margin =
            M * dist2(x, y) - std::fabs(oracle.value(x) - oracle.value(y));
        res.worst = std::min(res.worst, margin);
        if (margin < -tol) res.ok = false;
    }
    return res;
}

// f(x) - f_star <= h(d(x, X*)^2) + tol on random points.
inline ProbeResult probe_rgplus_membership(const FirstOrderOracle& oracle, const GrowthFn& h,
                                           Rng& rng, int points, double radius = 10.0,
                                           double tol = 1e-12) {
    ProbeResult res;
    const int d = oracle.dimension();
    for (int t = 0; t < points; ++t) {
        const Vec x = rng.uniform_vec(d, -radius, radius);
        const double dist = distance_to_optset(oracle, x);
        const double margin = h.eval(dist * dist) - (oracle.value(x) - oracle.f_star());
        res.worst = std::min(res.worst, margin);
        if (margin < -tol) res.ok = false;
    }
    return res;
}

// Midpoint convexity f((y+z)/2) <= (f(y)+f(z))/2 + tol on random pairs.
inline ProbeResult probe_midpoint_convexity(const FirstOrderOracle& oracle, Rng& rng, int pairs,
                                            double radius = 10.0, double tol = 1e-12) {
    ProbeResult res;
    const int d = oracle.dimension();
    for (int t = 0; t < pairs; ++t) {
        const Vec y = rng.uniform_vec(d, -radius, radius);
        const Vec z = rng.uniform_vec(d, -radius, radius);
        const Vec mid = scaled(add(y, z), 0.5);
        const double margin = 0.5 * (oracle.value(y) + oracle.value(z)) - oracle.value(mid);
        res.worst = std::min(res.worst, margin);
        if (margin < -tol) res.ok = false;
    }
    return res;
}

}  // namespace qgtest
