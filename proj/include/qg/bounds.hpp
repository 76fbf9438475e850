#pragma once

#include <optional>
#include <string>

#include "qg/algos.hpp"
#include "qg/core.hpp"
#include "qg/growth.hpp"
#include "qg/schedules.hpp"

namespace qg {

// Closed-form worst-case bounds, addressable by id.
enum class BoundId {
    AvgQg,          // L/2 R^2/(n+1), averaged subgradient value with step 1/L (upper)
    LastLbQg,       // L/2 * L*gamma_{n-1} * R^2, last-iterate lower bound
    LastLbSmooth,   // L/2 R^2 / (1 + 2 sum L*gamma_k), Huber-type lower bound
    LastLbCombined, // max of the previous two
    ConjectureU,    // L/(2 u_n) R^2, conjectured decreasing-step upper bound
    FirstOrderLb,   // L/2 R^2/(n+1), lower bound for any first-order method
    HbOptimal,      // L/2 R^2/(n+1), heavy-ball last-iterate upper bound
    RgGeneral,      // h(R^2/(n+1))
    LipschitzOpt,   // M R / sqrt(n+1)
    RestartDist,    // (1 - 1/(kappa e))^n R^2, squared distance contraction
    RestartValue,   // h(e (1 - 1/(kappa e))^n R^2)
    ElsStuck,       // L/6 R^2, exact-line-search cycling floor
};

BoundId bound_id_from_string(const std::string& id);
std::string bound_id_to_string(BoundId id);

struct BoundSpec {
    BoundId id = BoundId::AvgQg;
    double L = 0.0;
    double M = 0.0;
    double R = 0.0;
    int n = 0;
    double kappa = 0.0;
    std::optional<GrowthFn> growth;
    const StepSchedule* schedule = nullptr;
};

// Evaluates the bound; throws when a parameter the id needs is missing.
double bound_value(const BoundSpec& spec);

enum class BoundSide { Upper, Lower };

struct VerifyReport {
    bool ok = false;
    double observed = 0.0;
    double bound = 0.0;
    double slack = 0.0;  // observed - bound
    std::string observable;
};

// Compares the observed quantity of a finished run against the bound.
// What is observed depends on the id: the averaged gap for AvgQg, the final
// squared distance for RestartDist, the smaller of final and averaged-point
// gaps for ElsStuck, and the final gap otherwise. Upper checks require
// observed <= bound + tol, lower checks observed >= bound - tol with
// tol = tol_abs + tol_rel * bound (tol_rel covers bounds stated as limits).
VerifyReport verify_trace_against_bound(const IterateTrace& trace, const FirstOrderOracle& oracle,
                                        const BoundSpec& spec, BoundSide side,
                                        double tol_abs = tol::bound_slack, double tol_rel = 0.0);

}  // namespace qg
