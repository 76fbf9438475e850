#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qg/growth.hpp"
#include "qg/tolerances.hpp"
#include "qg/vec.hpp"

namespace qg {

// Membership tag attached to an oracle. An oracle may carry several tags
// (e.g. a Huber function is both quadratically upper bounded and Lipschitz).
struct ClassTag {
    enum class Kind { QGPlus, Lipschitz, RGPlus, ConvexOnly };

    Kind kind = Kind::ConvexOnly;
    double L = 0.0;                    // QGPlus constant
    double M = 0.0;                    // Lipschitz constant
    std::optional<GrowthFn> growth;    // RGPlus growth function

    static ClassTag qg_plus(double L) {
        if (L <= 0.0) throw Error("ClassTag::qg_plus: L must be positive");
        ClassTag t;
        t.kind = Kind::QGPlus;
        t.L = L;
        return t;
    }
    static ClassTag lipschitz(double M) {
        if (M <= 0.0) throw Error("ClassTag::lipschitz: M must be positive");
        ClassTag t;
        t.kind = Kind::Lipschitz;
        t.M = M;
        return t;
    }
    static ClassTag rg_plus(GrowthFn h) {
        ClassTag t;
        t.kind = Kind::RGPlus;
        t.growth = std::move(h);
        return t;
    }
    static ClassTag convex_only() { return ClassTag{}; }
};

// How an oracle breaks ties when several subgradients are admissible at a
// non-differentiable point. The adversarial policies are what lower-bound
// constructions rely on; Default defers to the policy the oracle was built
// with (FirstActive unless configured otherwise).
enum class SubgradPolicy {
    Default,
    FirstActive,    // lowest-index active piece
    LowestIndex,    // lowest coordinate index among argmax coordinates
    Adversarial,    // lowest never-returned coordinate index (stateful)
    Alternating,    // lowest active index differing from the last returned one (stateful)
    OrthogonalTo,   // subgradient orthogonal to a reference direction
};

struct SubgradSelection {
    SubgradPolicy policy = SubgradPolicy::Default;
    Vec reference;  // used by OrthogonalTo

    static SubgradSelection orthogonal_to(Vec v) {
        SubgradSelection s;
        s.policy = SubgradPolicy::OrthogonalTo;
        s.reference = std::move(v);
        return s;
    }
};

// Black-box first-order oracle: evaluates f, selects a subgradient, knows the
// optimal value, and (when the optimal set has a closed form) projects onto it.
//
// Subgradient contract: for every y, f(y) >= f(x) + <subgradient(x), y - x>.
// When a projection is available, f(project) = f_star and the subgradient at
// the projected point is the zero vector.
class FirstOrderOracle {
  public:
    virtual ~FirstOrderOracle() = default;

    virtual double value(const Vec& x) const = 0;
    virtual double f_star() const = 0;
    virtual int dimension() const = 0;
    virtual const std::vector<ClassTag>& class_tags() const = 0;

    Vec subgradient(const Vec& x) const { return subgradient(x, SubgradSelection{}); }
    Vec subgradient(const Vec& x, const SubgradSelection& sel) const;

    virtual bool has_optset_projection() const { return false; }
    virtual Vec optset_projection(const Vec&) const {
        throw Error("oracle: projection onto the optimal set is unavailable");
    }

    // Gradients of all pieces active at x (within tol::active_piece of the
    // max) for max-type functions. The default covers smooth oracles.
    virtual std::vector<Vec> active_gradients(const Vec& x) const {
        return {select_subgradient(x, SubgradPolicy::FirstActive)};
    }

    std::optional<double> qg_constant() const;
    std::optional<double> lipschitz_constant() const;

  protected:
    virtual Vec select_subgradient(const Vec& x, SubgradPolicy policy) const = 0;
    SubgradPolicy default_policy_ = SubgradPolicy::FirstActive;
};

// Ordered record of one algorithm run: n+1 points and values, at least n
// subgradients (runners also record the final one), n step-sizes.
struct IterateTrace {
    std::vector<Vec> points;
    std::vector<double> values;
    std::vector<Vec> subgrads;
    std::vector<double> gammas;
    std::string algorithm;
    std::vector<std::pair<std::string, double>> params;

    int steps() const { return static_cast<int>(points.size()) - 1; }
    void check_consistent() const;
};

// ||x - optset_projection(x)||_2. Fails when the oracle has no projection,
// which signals that the instance cannot back distance-dependent bounds.
double distance_to_optset(const FirstOrderOracle& oracle, const Vec& x);

// Unweighted mean of points 0..n of the trace.
Vec pr_average(const IterateTrace& trace, int upto);

// Defined in linesearch.cpp; declared here so oracles can honor the
// OrthogonalTo selection policy.
Vec orthogonal_subgradient(const FirstOrderOracle& oracle, const Vec& x, const Vec& v);

}  // namespace qg
