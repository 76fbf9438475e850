#include "qg/bounds.hpp"

#include <cmath>

namespace qg {

namespace {

double require_pos(double v, const char* what) {
    if (v <= 0.0) throw Error(std::string("bound_value: missing or nonpositive ") + what);
    return v;
}

double sum_gammas(const StepSchedule& schedule, int n) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += schedule.gamma(k);
    return s;
}

}  // namespace

BoundId bound_id_from_string(const std::string& id) {
    if (id == "avg-qg") return BoundId::AvgQg;
    if (id == "last-lb-qg") return BoundId::LastLbQg;
    if (id == "last-lb-smooth") return BoundId::LastLbSmooth;
    if (id == "last-lb-combined") return BoundId::LastLbCombined;
    if (id == "conjecture-u") return BoundId::ConjectureU;
    if (id == "first-order-lb") return BoundId::FirstOrderLb;
    if (id == "hb-optimal") return BoundId::HbOptimal;
    if (id == "rg-general") return BoundId::RgGeneral;
    if (id == "lipschitz-opt") return BoundId::LipschitzOpt;
    if (id == "restart-dist") return BoundId::RestartDist;
    if (id == "restart-value") return BoundId::RestartValue;
    if (id == "els-stuck") return BoundId::ElsStuck;
    throw Error("unknown bound id '" + id + "'");
}

std::string bound_id_to_string(BoundId id) {
    switch (id) {
        case BoundId::AvgQg: return "avg-qg";
        case BoundId::LastLbQg: return "last-lb-qg";
        case BoundId::LastLbSmooth: return "last-lb-smooth";
        case BoundId::LastLbCombined: return "last-lb-combined";
        case BoundId::ConjectureU: return "conjecture-u";
        case BoundId::FirstOrderLb: return "first-order-lb";
        case BoundId::HbOptimal: return "hb-optimal";
        case BoundId::RgGeneral: return "rg-general";
        case BoundId::LipschitzOpt: return "lipschitz-opt";
        case BoundId::RestartDist: return "restart-dist";
        case BoundId::RestartValue: return "restart-value";
        case BoundId::ElsStuck: return "els-stuck";
    }
    return "";
}

double bound_value(const BoundSpec& spec) {
    const double R2 = spec.R * spec.R;
    switch (spec.id) {
        case BoundId::AvgQg:
        case BoundId::FirstOrderLb:
        case BoundId::HbOptimal:
            require_pos(spec.L, "L");
            if (spec.n < 0) throw Error("bound_value: n must be >= 0");
            return 0.5 * spec.L * R2 / (spec.n + 1);
        case BoundId::LastLbQg: {
            require_pos(spec.L, "L");
            if (spec.schedule == nullptr) throw Error("bound_value: last-lb-qg needs a schedule");
            if (spec.n < 1) throw Error("bound_value: n must be >= 1");
            return 0.5 * spec.L * spec.L * spec.schedule->gamma(spec.n - 1) * R2;
        }
        case BoundId::LastLbSmooth: {
            require_pos(spec.L, "L");
            if (spec.schedule == nullptr) throw Error("bound_value: last-lb-smooth needs a schedule");
            return 0.5 * spec.L * R2 / (1.0 + 2.0 * spec.L * sum_gammas(*spec.schedule, spec.n));
        }
        case BoundId::LastLbCombined: {
            BoundSpec a = spec;
            a.id = BoundId::LastLbQg;
            BoundSpec b = spec;
            b.id = BoundId::LastLbSmooth;
            return std::max(bound_value(a), bound_value(b));
        }
        case BoundId::ConjectureU: {
            require_pos(spec.L, "L");
            const auto u = u_sequence(spec.n);
            return 0.5 * spec.L * R2 / u.back();
        }
        case BoundId::RgGeneral:
            if (!spec.growth) throw Error("bound_value: rg-general needs a growth function");
            return spec.growth->eval(R2 / (spec.n + 1));
        case BoundId::LipschitzOpt:
            require_pos(spec.M, "M");
            return spec.M * spec.R / std::sqrt(static_cast<double>(spec.n) + 1.0);
        case BoundId::RestartDist:
            require_pos(spec.kappa, "kappa");
            return std::pow(1.0 - 1.0 / (spec.kappa * std::exp(1.0)), spec.n) * R2;
        case BoundId::RestartValue: {
            require_pos(spec.kappa, "kappa");
            if (!spec.growth) throw Error("bound_value: restart-value needs a growth function");
            const double contracted =
                std::exp(1.0) * std::pow(1.0 - 1.0 / (spec.kappa * std::exp(1.0)), spec.n) * R2;
            return spec.growth->eval(contracted);
        }
        case BoundId::ElsStuck:
            require_pos(spec.L, "L");
            return spec.L / 6.0 * R2;
    }
    throw Error("bound_value: unreachable");
}

VerifyReport verify_trace_against_bound(const IterateTrace& trace, const FirstOrderOracle& oracle,
                                        const BoundSpec& spec, BoundSide side, double tol_abs,
                                        double tol_rel) {
    trace.check_consistent();
    const double f_star = oracle.f_star();

    VerifyReport report;
    switch (spec.id) {
        case BoundId::AvgQg: {
            double s = 0.0;
            for (double v : trace.values) s += v - f_star;
            report.observed = s / static_cast<double>(trace.values.size());
            report.observable = "averaged gap";
            break;
        }
        case BoundId::RestartDist:
            report.observed = std::pow(distance_to_optset(oracle, trace.points.back()), 2);
            report.observable = "final squared distance";
            break;
        case BoundId::ElsStuck: {
            const double last = trace.values.back() - f_star;
            const Vec avg = pr_average(trace, trace.steps());
            const double avg_gap = oracle.value(avg) - f_star;
            report.observed = std::min(last, avg_gap);
            report.observable = "min(final gap, averaged-point gap)";
            break;
        }
        default:
            report.observed = trace.values.back() - f_star;
            report.observable = "final gap";
            break;
    }

    report.bound = bound_value(spec);
    report.slack = report.observed - report.bound;
    const double allowance = tol_abs + tol_rel * std::fabs(report.bound);
    report.ok = side == BoundSide::Upper ? report.observed <= report.bound + allowance
                                         : report.observed >= report.bound - allowance;
    return report;
}

}  // namespace qg
