#include "qg/linesearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qg {

namespace {

const SubgradSelection kProbe{SubgradPolicy::FirstActive, {}};

struct Restriction {
    const LineProblem& p;
    mutable int evals = 0;

    double value(double alpha) const {
        ++evals;
        return p.oracle->value(add_scaled(p.base, alpha, p.direction));
    }
    // One admissible slope of phi at alpha. For convex phi this lies between
    // the one-sided derivatives, which is all bisection needs.
    double slope(double alpha) const {
        ++evals;
        const Vec g = p.oracle->subgradient(add_scaled(p.base, alpha, p.direction), kProbe);
        return dot(g, p.direction);
    }
};

[[noreturn]] void throw_unbounded(double alpha) {
    std::ostringstream os;
    os << "exact_line_search: line unbounded below (still descending at alpha = " << alpha << ")";
    throw Error(os.str());
}

// Golden-section refinement used when subgradient probes fail the optimality
// certificate. Needs a strict bracket lo < mid < hi with phi(mid) below both
// ends; returns a minimizer location.
double golden_section(const Restriction& phi, double lo, double hi, double tol) {
    constexpr double inv_gold = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_gold * (b - a);
    double x2 = a + inv_gold * (b - a);
    double f1 = phi.value(x1), f2 = phi.value(x2);
    for (int it = 0; it < 300 && (b - a) > tol * (1.0 + std::fabs(a) + std::fabs(b)); ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_gold * (b - a);
            f1 = phi.value(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_gold * (b - a);
            f2 = phi.value(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

}  // namespace

LineSearchResult exact_line_search(const LineProblem& problem) {
    if (problem.oracle == nullptr) throw Error("exact_line_search: missing oracle");
    Restriction phi{problem};

    LineSearchResult out;
    if (is_zero(problem.direction) || problem.direction.empty()) {
        out.alpha = 0.0;
        out.point = problem.base;
        out.value = phi.value(0.0);
        out.evaluations = phi.evals;
        return out;
    }

    // Bracket [lo, hi] with slope(lo) <= 0 < slope(hi). Doubling expansion on
    // whichever side is missing; passing the cap while still descending means
    // the restriction has no minimizer.
    double lo, hi;
    if (phi.slope(0.0) <= 0.0) {
        lo = 0.0;
        hi = 1.0;
        while (phi.slope(hi) <= 0.0) {
            hi *= 2.0;
            if (hi > tol::unbounded_limit) throw_unbounded(hi);
        }
    } else {
        hi = 0.0;
        lo = -1.0;
        while (phi.slope(lo) > 0.0) {
            lo *= 2.0;
            if (-lo > tol::unbounded_limit) throw_unbounded(lo);
        }
    }

    // Bisection on the slope sign. The invariant keeps lo at or left of the
    // rightmost minimizer and hi at or right of it, so flat bottoms resolve
    // to their right end.
    for (int it = 0; it < 200; ++it) {
        if ((hi - lo) <= problem.tolerance * (1.0 + std::fabs(lo) + std::fabs(hi))) break;
        const double mid = 0.5 * (lo + hi);
        if (phi.slope(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }

    // Prefer the upper end on value ties: expansion and halving keep it on
    // dyadic points, so a flat bottom resolves to its exact right end.
    double alpha = lo;
    double falpha = phi.value(alpha);
    const double fhi = phi.value(hi);
    if (fhi <= falpha) {
        alpha = hi;
        falpha = fhi;
    }

    // Optimality certificate; a failure sends the search to value-only
    // golden-section refinement.
    const double probe = 1e-6 * (1.0 + std::fabs(alpha));
    const double cert = tol::projection_cert * (1.0 + std::fabs(falpha));
    if (phi.value(alpha - probe) < falpha - cert || phi.value(alpha + probe) < falpha - cert) {
        const double width = std::max(1.0, hi - lo);
        const double refined = golden_section(phi, lo - width, hi + width, problem.tolerance);
        const double frefined = phi.value(refined);
        if (frefined < falpha) {
            alpha = refined;
            falpha = frefined;
        }
        if (phi.value(alpha - probe) < falpha - cert || phi.value(alpha + probe) < falpha - cert)
            throw Error("exact_line_search: could not certify a minimizer on the line");
    }

    out.alpha = alpha;
    out.point = add_scaled(problem.base, alpha, problem.direction);
    out.value = falpha;
    out.evaluations = phi.evals;
    return out;
}

Vec orthogonal_subgradient(const FirstOrderOracle& oracle, const Vec& x, const Vec& v) {
    if (v.empty() || is_zero(v)) return oracle.subgradient(x, kProbe);

    const double vnorm = norm2(v);
    const auto actives = oracle.active_gradients(x);
    if (actives.empty()) throw Error("orthogonal_subgradient: oracle reported no active gradients");

    // A single active gradient already orthogonal (differentiable case, where
    // exact line-search optimality provides the orthogonality). The absolute
    // floor admits the near-zero gradients found at line minimizers that sit
    // within line-search tolerance of the optimum.
    const double ortho_tol = 1e-9;
    int best = 0;
    double best_excess = std::numeric_limits<double>::infinity();
    std::vector<double> dots(actives.size());
    for (std::size_t i = 0; i < actives.size(); ++i) {
        dots[i] = dot(actives[i], v);
        const double allowance = ortho_tol * (1.0 + norm2(actives[i]) * vnorm);
        const double excess = std::fabs(dots[i]) - allowance;
        if (excess < best_excess) {
            best_excess = excess;
            best = static_cast<int>(i);
        }
    }
    if (best_excess <= 0.0) return actives[static_cast<std::size_t>(best)];

    // Two active pieces whose slopes along v bracket zero; the convex
    // combination zeroing the inner product is a subgradient of the max.
    int ia = -1, ib = -1;
    for (std::size_t i = 0; i < actives.size(); ++i) {
        if (dots[i] < 0.0 && (ia < 0 || dots[i] > dots[static_cast<std::size_t>(ia)]))
            ia = static_cast<int>(i);
        if (dots[i] > 0.0 && (ib < 0 || dots[i] < dots[static_cast<std::size_t>(ib)]))
            ib = static_cast<int>(i);
    }
    if (ia < 0 || ib < 0) {
        double lo = 0.0, hi = 0.0;
        for (double d : dots) {
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
        std::ostringstream os;
        os << "orthogonal_subgradient: no bracketing pair at this point; directional-derivative "
              "bracket along v is ["
           << lo << ", " << hi << "] (point is not a line minimizer?)";
        throw Error(os.str());
    }

    const double da = dots[static_cast<std::size_t>(ia)];
    const double db = dots[static_cast<std::size_t>(ib)];
    const double theta = db / (db - da);
    Vec g = scaled(actives[static_cast<std::size_t>(ia)], theta);
    axpy(1.0 - theta, actives[static_cast<std::size_t>(ib)], g);
    return g;
}

}  // namespace qg
