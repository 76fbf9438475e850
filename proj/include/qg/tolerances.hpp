#pragma once

// Central numeric tolerances. Tests and checks reference these constants
// instead of scattering literals.
namespace qg::tol {

// Absolute tolerance on feasibility inequalities (interpolation conditions,
// subgradient validity probes).
inline constexpr double feasibility = 1e-12;

// Absolute slack allowed when comparing an observed quantity against a
// closed-form worst-case bound.
inline constexpr double bound_slack = 1e-8;

// Residual tolerance for projection certificates (variational inequality).
inline constexpr double projection_cert = 1e-10;

// Relative tolerance on the step parameter in exact line-search.
inline constexpr double line_search = 1e-12;

// A max-type piece counts as active when within this relative band of the max.
inline constexpr double active_piece = 1e-10;

// Bracket expansion beyond this magnitude declares a line unbounded below.
inline constexpr double unbounded_limit = 1e12;

}  // namespace qg::tol
