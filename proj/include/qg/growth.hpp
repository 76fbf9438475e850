#pragma once

#include <cmath>
#include <string>

#include "qg/error.hpp"

namespace qg {

// Growth function h on [0, inf): h(0) = 0, strictly increasing, concave.
// Three kinds are supported:
//   Linear(L): z -> L*z/2
//   Sqrt(M):   z -> M*sqrt(z)
//   Mixed(M,L): z -> M*sqrt(z) + L*z/2
// The inverse of the Mixed kind is solved in closed form through s = sqrt(z)
// so that step-size formulas built on h^{-1} stay bit-stable.
class GrowthFn {
  public:
    enum class Kind { Linear, Sqrt, Mixed };

    static GrowthFn linear(double L) {
        if (L <= 0.0) throw Error("GrowthFn::linear: L must be positive");
        return GrowthFn(Kind::Linear, 0.0, L);
    }
    static GrowthFn sqrt(double M) {
        if (M <= 0.0) throw Error("GrowthFn::sqrt: M must be positive");
        return GrowthFn(Kind::Sqrt, M, 0.0);
    }
    static GrowthFn mixed(double M, double L) {
        if (M <= 0.0 || L <= 0.0) throw Error("GrowthFn::mixed: M and L must be positive");
        return GrowthFn(Kind::Mixed, M, L);
    }

    Kind kind() const { return kind_; }
    double lipschitz_coeff() const { return M_; }
    double quadratic_coeff() const { return L_; }

    double eval(double z) const {
        check_nonneg(z, "GrowthFn::eval");
        switch (kind_) {
            case Kind::Linear: return 0.5 * L_ * z;
            case Kind::Sqrt: return M_ * std::sqrt(z);
            case Kind::Mixed: return M_ * std::sqrt(z) + 0.5 * L_ * z;
        }
        return 0.0;
    }

    // Derivative h'(z); infinite at z = 0 for the Sqrt and Mixed kinds.
    double deriv(double z) const {
        check_nonneg(z, "GrowthFn::deriv");
        switch (kind_) {
            case Kind::Linear: return 0.5 * L_;
            case Kind::Sqrt: return 0.5 * M_ / std::sqrt(z);
            case Kind::Mixed: return 0.5 * M_ / std::sqrt(z) + 0.5 * L_;
        }
        return 0.0;
    }

    // Unique z >= 0 with h(z) = y.
    double inverse(double y) const {
        check_nonneg(y, "GrowthFn::inverse");
        switch (kind_) {
            case Kind::Linear: return 2.0 * y / L_;
            case Kind::Sqrt: {
                const double s = y / M_;
                return s * s;
            }
            case Kind::Mixed: {
                // Solve M*s + L*s^2/2 = y for s = sqrt(z).
                const double s = (-M_ + std::sqrt(M_ * M_ + 2.0 * L_ * y)) / L_;
                return s * s;
            }
        }
        return 0.0;
    }

    // 1 / (h' o h^{-1})(y), in closed form per kind. This is the quantity the
    // adaptive heavy-ball step is built on; evaluating it directly avoids the
    // infinite derivative of Sqrt/Mixed at the origin (the value tends to 0).
    double inv_deriv_at(double y) const {
        check_nonneg(y, "GrowthFn::inv_deriv_at");
        switch (kind_) {
            case Kind::Linear: return 2.0 / L_;
            case Kind::Sqrt: return 2.0 * y / (M_ * M_);
            case Kind::Mixed:
                return (2.0 / L_) * (1.0 - 1.0 / std::sqrt(1.0 + 2.0 * L_ * y / (M_ * M_)));
        }
        return 0.0;
    }

    std::string name() const {
        switch (kind_) {
            case Kind::Linear: return "linear";
            case Kind::Sqrt: return "sqrt";
            case Kind::Mixed: return "mixed";
        }
        return "";
    }

  private:
    GrowthFn(Kind k, double M, double L) : kind_(k), M_(M), L_(L) {}
    static void check_nonneg(double v, const char* where) {
        if (v < 0.0 || !std::isfinite(v)) throw Error(std::string(where) + ": argument must be finite and >= 0");
    }

    Kind kind_;
    double M_;
    double L_;
};

}  // namespace qg
