#include "qg/core.hpp"

#include <cmath>

namespace qg {

Vec FirstOrderOracle::subgradient(const Vec& x, const SubgradSelection& sel) const {
    if (static_cast<int>(x.size()) != dimension())
        throw Error("oracle: point dimension mismatch");
    require_finite(x, "oracle query point");
    if (sel.policy == SubgradPolicy::OrthogonalTo)
        return qg::orthogonal_subgradient(*this, x, sel.reference);
    const SubgradPolicy p = (sel.policy == SubgradPolicy::Default) ? default_policy_ : sel.policy;
    return select_subgradient(x, p);
}

std::optional<double> FirstOrderOracle::qg_constant() const {
    for (const auto& tag : class_tags())
        if (tag.kind == ClassTag::Kind::QGPlus) return tag.L;
    return std::nullopt;
}

std::optional<double> FirstOrderOracle::lipschitz_constant() const {
    for (const auto& tag : class_tags())
        if (tag.kind == ClassTag::Kind::Lipschitz) return tag.M;
    return std::nullopt;
}

void IterateTrace::check_consistent() const {
    const auto n = points.size();
    if (n == 0) throw Error("trace: empty");
    if (values.size() != n) throw Error("trace: |values| != |points|");
    if (subgrads.size() + 1 < n) throw Error("trace: fewer than n subgradients for an n-step run");
    if (gammas.size() + 1 != n) throw Error("trace: |gammas| != n");
}

double distance_to_optset(const FirstOrderOracle& oracle, const Vec& x) {
    if (!oracle.has_optset_projection())
        throw Error("distance_to_optset: oracle has no optimal-set projection");
    return dist2(x, oracle.optset_projection(x));
}

Vec pr_average(const IterateTrace& trace, int upto) {
    if (upto < 0 || upto + 1 > static_cast<int>(trace.points.size()))
        throw Error("pr_average: index out of range");
    Vec mean = zeros(trace.points[0].size());
    for (int k = 0; k <= upto; ++k) axpy(1.0, trace.points[static_cast<std::size_t>(k)], mean);
    return scaled(mean, 1.0 / (upto + 1));
}

}  // namespace qg
