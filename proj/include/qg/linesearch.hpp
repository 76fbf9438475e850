#pragma once

#include "qg/core.hpp"
#include "qg/tolerances.hpp"
#include "qg/vec.hpp"

namespace qg {

// One-dimensional restriction phi(alpha) = f(base + alpha*direction) of a
// convex oracle along a line.
struct LineProblem {
    const FirstOrderOracle* oracle = nullptr;
    Vec base;
    Vec direction;
    double tolerance = tol::line_search;  // relative tolerance on alpha
};

struct LineSearchResult {
    double alpha = 0.0;
    Vec point;
    double value = 0.0;
    int evaluations = 0;
};

// Exact minimization of phi: bracket expansion, then bisection on the sign of
// the directional derivative reported by subgradient probes. When the
// minimizer set is a flat interval the largest minimizer is returned. A
// golden-section pass backs the bisection up if the subgradient probes fail
// the final optimality certificate. Throws when the line is unbounded below
// (bracket expansion passes tol::unbounded_limit while still descending).
LineSearchResult exact_line_search(const LineProblem& problem);

// A subgradient g of the oracle at x with <g, v> = 0 (up to tolerance).
// For a differentiable point this is the gradient; for max-type oracles it is
// the convex combination theta*g_a + (1-theta)*g_b of two active-piece
// gradients whose inner products with v bracket zero. Requires x to be a
// minimizer of f along v (so the bracket exists); throws otherwise, reporting
// the directional-derivative bracket. v = 0 returns an arbitrary subgradient.
Vec orthogonal_subgradient(const FirstOrderOracle& oracle, const Vec& x, const Vec& v);

}  // namespace qg
