#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qg/core.hpp"

namespace qg {

// ---------------------------------------------------------------------------
// Certified problem instances. Every oracle ships its class tags, optimal
// value, and (where the optimal set is known in closed form) a projection,
// so runs against it can be checked against distance-dependent bounds.
// ---------------------------------------------------------------------------

// Symmetric Huber function on R:
//   f(x) = L/2 x^2 for |x| <= delta, L*delta*|x| - L/2 delta^2 otherwise.
// Continuously differentiable, minimized at 0.
class HuberOracle final : public FirstOrderOracle {
  public:
    HuberOracle(double L, double delta);

    double value(const Vec& x) const override;
    double f_star() const override { return 0.0; }
    int dimension() const override { return 1; }
    const std::vector<ClassTag>& class_tags() const override { return tags_; }
    bool has_optset_projection() const override { return true; }
    Vec optset_projection(const Vec&) const override { return Vec{0.0}; }

    double L() const { return L_; }
    double delta() const { return delta_; }

  protected:
    Vec select_subgradient(const Vec& x, SubgradPolicy policy) const override;

  private:
    double L_, delta_;
    std::vector<ClassTag> tags_;
};

// f(x) = M * |x| on R. Not quadratically upper bounded; the canonical
// Lipschitz test function.
class AbsOracle final : public FirstOrderOracle {
  public:
    explicit AbsOracle(double M);

    double value(const Vec& x) const override;
    double f_star() const override { return 0.0; }
    int dimension() const override { return 1; }
    const std::vector<ClassTag>& class_tags() const override { return tags_; }
    bool has_optset_projection() const override { return true; }
    Vec optset_projection(const Vec&) const override { return Vec{0.0}; }
    std::vector<Vec> active_gradients(const Vec& x) const override;

  protected:
    Vec select_subgradient(const Vec& x, SubgradPolicy policy) const override;

  private:
    double M_;
    std::vector<ClassTag> tags_;
};

// f(x) = (L/2) * ||x - shift||_inf^2 on R^d. Subgradients are basis-aligned:
// L*||x-shift||_inf * sign(x_i - shift_i) * e_i with i an argmax coordinate
// chosen by the tie policy. The Adversarial policy returns the lowest
// never-returned coordinate (the resisting choice that explores one new
// dimension per query); Alternating avoids the last returned coordinate,
// which is what sustains line-search cycling. Tie-break memory is the only
// mutable state and does not affect answer validity.
class SupNormSqOracle final : public FirstOrderOracle {
  public:
    SupNormSqOracle(double L, int d, SubgradPolicy policy = SubgradPolicy::LowestIndex,
                    Vec shift = {});

    double value(const Vec& x) const override;
    double f_star() const override { return 0.0; }
    int dimension() const override { return d_; }
    const std::vector<ClassTag>& class_tags() const override { return tags_; }
    bool has_optset_projection() const override { return true; }
    Vec optset_projection(const Vec&) const override { return shift_; }
    std::vector<Vec> active_gradients(const Vec& x) const override;

    // Coordinates returned so far under the Adversarial policy, in order.
    const std::vector<int>& returned_coordinates() const { return returned_; }

  protected:
    Vec select_subgradient(const Vec& x, SubgradPolicy policy) const override;

  private:
    int pick_coordinate(const Vec& z, double m, SubgradPolicy policy) const;

    double L_;
    int d_;
    Vec shift_;
    std::vector<ClassTag> tags_;
    mutable std::vector<int> returned_;  // Adversarial memory
    mutable int last_returned_ = -1;     // Alternating memory
};

// f(x) = M * ||x - shift||_inf on R^d (Lipschitz counterpart of the above,
// same tie policies).
class SupNormOracle final : public FirstOrderOracle {
  public:
    SupNormOracle(double M, int d, SubgradPolicy policy = SubgradPolicy::LowestIndex,
                  Vec shift = {});

    double value(const Vec& x) const override;
    double f_star() const override { return 0.0; }
    int dimension() const override { return d_; }
    const std::vector<ClassTag>& class_tags() const override { return tags_; }
    bool has_optset_projection() const override { return true; }
    Vec optset_projection(const Vec&) const override { return shift_; }
    std::vector<Vec> active_gradients(const Vec& x) const override;

  protected:
    Vec select_subgradient(const Vec& x, SubgradPolicy policy) const override;

  private:
    double M_;
    int d_;
    Vec shift_;
    std::vector<ClassTag> tags_;
    mutable int last_returned_ = -1;
};

// f(x) = 1/2 sum a_i x_i^2 with a_1 = mu, a_d = L and the rest log-spaced.
// Satisfies both the quadratic upper bound with constant L and the lower
// growth f(x) >= (mu/2)||x||^2, i.e. condition ratio kappa = L/mu.
class QuadDiagOracle final : public FirstOrderOracle {
  public:
    QuadDiagOracle(double mu, double L, int d);

    double value(const Vec& x) const override;
    double f_star() const override { return 0.0; }
    int dimension() const override { return d_; }
    const std::vector<ClassTag>& class_tags() const override { return tags_; }
    bool has_optset_projection() const override { return true; }
    Vec optset_projection(const Vec&) const override { return zeros(d_); }

    double kappa() const { return L_ / mu_; }
    const Vec& coefficients() const { return a_; }

  protected:
    Vec select_subgradient(const Vec& x, SubgradPolicy policy) const override;

  private:
    double mu_, L_;
    int d_;
    Vec a_;
    std::vector<ClassTag> tags_;
};

// The 3-D max-of-three construction behind the last-iterate lower bound for
// the subgradient method with prescribed step-sizes:
//   f(x) = max[ L/2 (x_1 - 1 + |x_2|*sqrt(3)), huber_delta(x_3), lambda/2 ||x||^2 ]
// with delta, xi_i, lambda derived from (L, gammas, eta). Replaying the
// subgradient method from x0 = (1, eta, xi_0) keeps the first two coordinates
// frozen until the very last step, which jumps.
class Lb3dOracle final : public FirstOrderOracle {
  public:
    Lb3dOracle(double L, int n, std::vector<double> gammas, double eta);

    double value(const Vec& x) const override;
    double f_star() const override { return 0.0; }
    int dimension() const override { return 3; }
    const std::vector<ClassTag>& class_tags() const override { return tags_; }
    bool has_optset_projection() const override { return true; }
    Vec optset_projection(const Vec&) const override { return zeros(3); }
    std::vector<Vec> active_gradients(const Vec& x) const override;

    double delta() const { return delta_; }
    double lambda() const { return lambda_; }
    const std::vector<double>& xi() const { return xi_; }

  protected:
    Vec select_subgradient(const Vec& x, SubgradPolicy policy) const override;

  private:
    double piece_slab(const Vec& x) const;
    double piece_huber(const Vec& x) const;
    double piece_quad(const Vec& x) const;
    Vec grad_slab(const Vec& x) const;
    Vec grad_huber(const Vec& x) const;
    Vec grad_quad(const Vec& x) const;

    double L_, eta_, delta_, lambda_;
    std::vector<double> gammas_;
    std::vector<double> xi_;  // xi_0..xi_{n-1}, xi_{n-1} = delta
    std::vector<ClassTag> tags_;
};

struct Lb3dInstance {
    std::shared_ptr<Lb3dOracle> oracle;
    Vec x0;                  // (1, eta, xi_0)
    double predicted_gap;    // L/2 (L*gamma_{n-1} - eta*sqrt(3))
};

// Builds the instance; requires n >= 2 (the construction references
// gamma_{n-2}), positive step-sizes and eta > 0.
Lb3dInstance lb3d_instance(double L, int n, std::vector<double> gammas, double eta);

// ---------------------------------------------------------------------------
// Resisting oracle: answers first-order queries adversarially to keep the
// worst consistent instance alive.
//
// Vertex-game mode: candidate set E_0 = all 2^{n+1} sign vectors v of
// R^{n+1}, instance family f_v(x) = L/2 ||x - v||_inf^2. Each query is
// answered by a farthest surviving v; the reply fixes one coordinate of the
// candidate set (at most halving it). After n queries the game is over; the
// surviving set is represented compactly as a partial sign assignment.
// Span mode delegates to the adversarial sup-norm-squared oracle, which
// explores one new dimension per in-span query.
// ---------------------------------------------------------------------------
class ResistingOracle {
  public:
    enum class Mode { Span, VertexGame };

    struct Answer {
        double value;
        Vec subgradient;
        Vec chosen_vertex;  // the v_k the answer is consistent with
    };

    ResistingOracle(double L, int horizon, Mode mode);

    // One adversarial move. Vertex-game: throws once the horizon is
    // exhausted (the game is over and the final instance is frozen).
    Answer query(const Vec& x);

    // Ends the game: commits to a surviving vertex farthest from x.
    // Idempotent once called; implied by the first post-horizon evaluation
    // through the oracle adapter.
    void freeze(const Vec& x);
    bool frozen() const { return frozen_; }

    // The committed instance (vertex-game, after freeze()).
    const Vec& final_vertex() const;

    int queries_made() const { return queries_; }
    int horizon() const { return horizon_; }
    double L() const { return L_; }
    Mode mode() const { return mode_; }
    // log2 |E_k| = number of still-free coordinates.
    int survivors_log2() const;
    const std::vector<int>& fixed_signs() const { return signs_; }

    // Span-mode underlying oracle.
    const std::shared_ptr<SupNormSqOracle>& span_oracle() const { return span_; }

  private:
    Vec farthest_vertex(const Vec& x) const;

    double L_;
    int horizon_;
    Mode mode_;
    int queries_ = 0;
    bool frozen_ = false;
    std::vector<int> signs_;  // per coordinate: -1, +1, or 0 = free
    Vec final_vertex_;
    std::shared_ptr<SupNormSqOracle> span_;
};

// FirstOrderOracle surface over a resisting game. Value and subgradient
// requests at the same point consume a single game move; the first
// evaluation past the horizon freezes the final instance and all later
// queries are answered by it honestly.
class ResistingOracleAdapter final : public FirstOrderOracle {
  public:
    explicit ResistingOracleAdapter(std::shared_ptr<ResistingOracle> game);

    double value(const Vec& x) const override;
    double f_star() const override { return 0.0; }
    int dimension() const override;
    const std::vector<ClassTag>& class_tags() const override { return tags_; }
    bool has_optset_projection() const override;
    Vec optset_projection(const Vec&) const override;

    const std::shared_ptr<ResistingOracle>& game() const { return game_; }

  protected:
    Vec select_subgradient(const Vec& x, SubgradPolicy policy) const override;

  private:
    const ResistingOracle::Answer& answer_for(const Vec& x) const;

    std::shared_ptr<ResistingOracle> game_;
    std::vector<ClassTag> tags_;
    mutable std::vector<std::pair<Vec, ResistingOracle::Answer>> cache_;
    mutable std::shared_ptr<SupNormSqOracle> frozen_fn_;
};

// ---------------------------------------------------------------------------
// Cycling counterexamples for line-search and constant-step subgradient runs.
// ---------------------------------------------------------------------------
struct CyclingInstance {
    std::string id;
    std::shared_ptr<FirstOrderOracle> oracle;
    Vec x0;
    std::vector<Vec> expected_cycle;
    double gamma = 0.0;  // the constant step the 2-cycle is built for (abs case)
};

// (i)  f = M|z| with x0 = (3/4) M gamma: 2-cycle {3/4 M gamma, -1/4 M gamma}
//      under the constant step gamma.
// (ii) f = (L/2)||x||_inf^2 and f = M||x||_inf on R^3 from (1,1,1): 4-point
//      cycle under exact line-search with the alternating adversarial
//      subgradient selection.
std::vector<CyclingInstance> cycling_instances(double M = 1.0, double gamma = 1.0,
                                               double L = 1.0);

// Huber oracle factory matching the registry id.
std::shared_ptr<HuberOracle> huber_oracle(double L, double delta);
std::shared_ptr<SupNormSqOracle> supnormsq_oracle(double L, int d,
                                                  SubgradPolicy tie_policy = SubgradPolicy::LowestIndex);
std::shared_ptr<QuadDiagOracle> quadratic_diag_oracle(double mu, double L, int d);

// CLI-facing registry: builds a named instance from string parameters.
// Known ids: huber, abs, supnormsq, supnorm, lb3d, cycle-abs, cycle-linf,
// cycle-linfsq, quad-diag.
struct NamedInstance {
    std::string id;
    std::shared_ptr<FirstOrderOracle> oracle;
    Vec default_x0;
    double predicted_gap = 0.0;  // lb3d only
};
NamedInstance make_instance(const std::string& id, const std::map<std::string, std::string>& params);

}  // namespace qg
