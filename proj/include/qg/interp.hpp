#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qg/core.hpp"
#include "qg/rng.hpp"

namespace qg {

// Finite family of first-order samples (x_i, g_i, f_i) together with the
// class constant L. Indices with g_i = 0 (exact zero vector) form the
// optimal subset; at least one is required for the class-membership
// conditions to make sense.
struct InterpTriplet {
    Vec x;
    Vec g;
    double f = 0.0;
};

struct InterpDataset {
    double L = 0.0;
    std::vector<InterpTriplet> triplets;

    int dimension() const { return triplets.empty() ? 0 : static_cast<int>(triplets[0].x.size()); }
    std::vector<int> star_indices() const;
};

struct InterpViolation {
    int i = 0;
    int j = 0;
    int equation = 0;  // 1 = convexity pair, 2 = quadratic-growth pair
    double slack = 0.0;  // lhs - rhs; negative means violated
};

struct InterpReport {
    bool valid = false;
    std::vector<InterpViolation> violations;
};

// Checks whether the dataset is consistent with some convex function that is
// quadratically upper bounded with constant L:
//   (1) f_i >= f_j + <g_j, x_i - x_j>                          for all i, j
//   (2) f_i >= f_j + <g_j, x_i - x_j> + ||g_j||^2 / (2L)       for optimal i, all j
// both within tol::feasibility. Throws when the dataset is empty or has no
// zero-gradient point.
InterpReport check_qgplus_interpolation(const InterpDataset& dataset);

// Euclidean projection onto the convex hull of a finite vertex set, found by
// the min-norm-point active-set method and certified by the variational
// inequality <point - p, v - p> <= tol::projection_cert for every vertex v.
struct HullProjection {
    Vec point;
    double distance = 0.0;
};
HullProjection project_convex_hull(const Vec& point, const std::vector<Vec>& vertices);

// Extension of a valid dataset to a full function:
//   f(x) = max( max_j (f_j + <g_j, x - x_j>), f_star + mu/2 d(x, hull)^2 )
// where hull is the convex hull of the optimal points and
//   mu = 2 min over non-optimal i of (f_i - f_star) / d(x_i, hull)^2.
// When every point is optimal the quadratic branch is omitted. The result
// interpolates the dataset, is convex, and is quadratically upper bounded
// with the dataset's L.
class ExtensionOracle final : public FirstOrderOracle {
  public:
    explicit ExtensionOracle(InterpDataset dataset);

    double value(const Vec& x) const override;
    double f_star() const override { return f_star_; }
    int dimension() const override { return dim_; }
    const std::vector<ClassTag>& class_tags() const override { return tags_; }
    bool has_optset_projection() const override { return true; }
    Vec optset_projection(const Vec& x) const override;
    std::vector<Vec> active_gradients(const Vec& x) const override;

    double mu() const { return mu_; }
    bool has_quadratic_branch() const { return has_quad_; }
    const std::vector<Vec>& hull_vertices() const { return hull_; }
    const InterpDataset& dataset() const { return data_; }

  protected:
    Vec select_subgradient(const Vec& x, SubgradPolicy policy) const override;

  private:
    double affine_piece(int j, const Vec& x) const;

    InterpDataset data_;
    std::vector<Vec> hull_;
    double f_star_ = 0.0;
    double mu_ = 0.0;
    bool has_quad_ = false;
    int dim_ = 0;
    std::vector<ClassTag> tags_;
};

// Throws if the dataset fails the checker.
std::shared_ptr<ExtensionOracle> build_extension(InterpDataset dataset);

// Random dataset that is valid by construction: optimal points are drawn
// first, the remaining samples are taken from a randomly assembled function
// (a hull-distance quadratic under affine pieces clipped to stay admissible),
// so the checker accepts every draw. Deterministic per seed.
struct RandomInstance {
    InterpDataset dataset;
    std::shared_ptr<ExtensionOracle> oracle;
};
RandomInstance random_valid_instance(std::uint64_t seed, int d, int num_points, double L);

// JSON document layout: {"L": real, "points": [{"x": [...], "g": [...], "f": real}]}
std::string dataset_to_json(const InterpDataset& dataset);
InterpDataset dataset_from_json(const std::string& text);
InterpDataset load_dataset(const std::string& path);
void save_dataset(const InterpDataset& dataset, const std::string& path);

}  // namespace qg
