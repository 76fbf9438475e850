#include "qg/interp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace qg {

namespace {

// Solve the symmetric system A y = b by Gaussian elimination with partial
// pivoting. Sizes here are tiny (hull sizes at desk scale).
bool solve_dense(std::vector<std::vector<double>> A, std::vector<double> b, std::vector<double>& y) {
    const std::size_t n = A.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
        if (std::fabs(A[piv][col]) < 1e-14) return false;
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = A[r][col] / A[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    y.assign(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= A[r][c] * y[c];
        y[r] = s / A[r][r];
    }
    return true;
}

// Min-norm point in the affine hull of the selected w's: minimize
// ||sum beta_i w_i||^2 subject to sum beta_i = 1.
bool affine_min_norm(const std::vector<Vec>& w, const std::vector<int>& sel,
                     std::vector<double>& beta) {
    const std::size_t m = sel.size();
    std::vector<std::vector<double>> A(m + 1, std::vector<double>(m + 1, 0.0));
    std::vector<double> b(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            A[i][j] = dot(w[static_cast<std::size_t>(sel[i])], w[static_cast<std::size_t>(sel[j])]);
    for (std::size_t i = 0; i < m; ++i) A[i][m] = A[m][i] = 1.0;
    b[m] = 1.0;
    std::vector<double> y;
    if (!solve_dense(std::move(A), std::move(b), y)) return false;
    beta.assign(y.begin(), y.end() - 1);
    return true;
}

Vec combination(const std::vector<Vec>& w, const std::vector<int>& sel,
                const std::vector<double>& coef) {
    Vec x = zeros(w[0].size());
    for (std::size_t i = 0; i < sel.size(); ++i)
        axpy(coef[i], w[static_cast<std::size_t>(sel[i])], x);
    return x;
}

bool certificate_holds(const Vec& point, const Vec& proj, const std::vector<Vec>& vertices,
                       double scale) {
    const Vec r = sub(point, proj);
    for (const auto& v : vertices)
        if (dot(r, sub(v, proj)) > tol::projection_cert * scale) return false;
    return true;
}

// Exhaustive fallback: try every vertex subset, keep the best feasible
// affine minimizer. Only reachable when the iterative method fails to
// certify, and only practical for small vertex sets.
Vec exhaustive_min_norm(const std::vector<Vec>& w) {
    const int m = static_cast<int>(w.size());
    double best_norm = std::numeric_limits<double>::infinity();
    Vec best = w[0];
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> sel;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) sel.push_back(i);
        std::vector<double> beta;
        if (!affine_min_norm(w, sel, beta)) continue;
        if (std::any_of(beta.begin(), beta.end(), [](double b) { return b < -1e-12; })) continue;
        const Vec x = combination(w, sel, beta);
        const double nx = norm2_sq(x);
        if (nx < best_norm) {
            best_norm = nx;
            best = x;
        }
    }
    return best;
}

}  // namespace

HullProjection project_convex_hull(const Vec& point, const std::vector<Vec>& vertices) {
    if (vertices.empty()) throw Error("project_convex_hull: empty vertex set");
    for (const auto& v : vertices)
        if (v.size() != point.size()) throw Error("project_convex_hull: dimension mismatch");

    // Work on the translated set w_i = v_i - point; the projection is the
    // min-norm point of conv{w_i} translated back.
    std::vector<Vec> w;
    w.reserve(vertices.size());
    double scale = 1.0;
    for (const auto& v : vertices) {
        w.push_back(sub(v, point));
        scale = std::max(scale, norm2_sq(w.back()));
    }

    // Min-norm-point active-set iteration.
    int start = 0;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (norm2_sq(w[i]) < norm2_sq(w[static_cast<std::size_t>(start)])) start = static_cast<int>(i);
    std::vector<int> sel = {start};
    std::vector<double> lambda = {1.0};
    Vec x = w[static_cast<std::size_t>(start)];

    const double opt_tol = 1e-14 * scale;
    bool certified = false;
    for (int outer = 0; outer < 16 * static_cast<int>(w.size()) + 32; ++outer) {
        // Most improving vertex; none -> optimal.
        int jbest = -1;
        double dbest = norm2_sq(x) - opt_tol;
        for (std::size_t j = 0; j < w.size(); ++j) {
            const double dj = dot(x, w[j]);
            if (dj < dbest) {
                dbest = dj;
                jbest = static_cast<int>(j);
            }
        }
        if (jbest < 0) {
            certified = true;
            break;
        }
        if (std::find(sel.begin(), sel.end(), jbest) == sel.end()) {
            sel.push_back(jbest);
            lambda.push_back(0.0);
        }

        // Pull x to the affine minimizer of the selected set, dropping
        // vertices whose weight would cross zero.
        for (int inner = 0; inner < 2 * static_cast<int>(w.size()) + 8; ++inner) {
            std::vector<double> beta;
            if (!affine_min_norm(w, sel, beta)) {
                // Degenerate selection; drop the smallest-weight vertex.
                std::size_t drop = 0;
                for (std::size_t i = 1; i < lambda.size(); ++i)
                    if (lambda[i] < lambda[drop]) drop = i;
                if (sel.size() <= 1) break;
                sel.erase(sel.begin() + static_cast<std::ptrdiff_t>(drop));
                lambda.erase(lambda.begin() + static_cast<std::ptrdiff_t>(drop));
                continue;
            }
            if (std::all_of(beta.begin(), beta.end(), [](double b) { return b >= -1e-13; })) {
                lambda = beta;
                x = combination(w, sel, lambda);
                break;
            }
            double theta = 1.0;
            for (std::size_t i = 0; i < beta.size(); ++i)
                if (beta[i] < 0.0 && lambda[i] - beta[i] > 0.0)
                    theta = std::min(theta, lambda[i] / (lambda[i] - beta[i]));
            for (std::size_t i = 0; i < lambda.size(); ++i)
                lambda[i] = (1.0 - theta) * lambda[i] + theta * beta[i];
            for (std::size_t i = lambda.size(); i-- > 0;) {
                if (lambda[i] <= 1e-13 && sel.size() > 1) {
                    sel.erase(sel.begin() + static_cast<std::ptrdiff_t>(i));
                    lambda.erase(lambda.begin() + static_cast<std::ptrdiff_t>(i));
                }
            }
            x = combination(w, sel, lambda);
        }
    }

    Vec proj = add(point, x);
    if (!certified || !certificate_holds(point, proj, vertices, std::sqrt(scale) + 1.0)) {
        if (vertices.size() <= 20) {
            proj = add(point, exhaustive_min_norm(w));
            if (!certificate_holds(point, proj, vertices, std::sqrt(scale) + 1.0))
                throw Error("project_convex_hull: could not certify the projection");
        } else {
            throw Error("project_convex_hull: could not certify the projection");
        }
    }
    return HullProjection{proj, dist2(point, proj)};
}

// ---------------------------------------------------------------------------
// Interpolation checker
// ---------------------------------------------------------------------------
std::vector<int> InterpDataset::star_indices() const {
    std::vector<int> idx;
    for (std::size_t i = 0; i < triplets.size(); ++i)
        if (is_zero(triplets[i].g)) idx.push_back(static_cast<int>(i));
    return idx;
}

InterpReport check_qgplus_interpolation(const InterpDataset& dataset) {
    if (dataset.triplets.empty()) throw Error("check_qgplus_interpolation: empty dataset");
    if (dataset.L <= 0.0) throw Error("check_qgplus_interpolation: L must be positive");
    const std::size_t d = dataset.triplets.front().x.size();
    for (const auto& t : dataset.triplets) {
        if (t.x.size() != d || t.g.size() != d)
            throw Error("check_qgplus_interpolation: inconsistent triplet dimensions");
        require_finite(t.x, "dataset x");
        require_finite(t.g, "dataset g");
        if (!std::isfinite(t.f)) throw Error("check_qgplus_interpolation: non-finite value");
    }
    const auto stars = dataset.star_indices();
    if (stars.empty())
        throw Error("check_qgplus_interpolation: no zero-gradient point in the dataset");

    InterpReport report;
    const auto& ts = dataset.triplets;
    const int m = static_cast<int>(ts.size());
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            const auto& ti = ts[static_cast<std::size_t>(i)];
            const auto& tj = ts[static_cast<std::size_t>(j)];
            const double affine = tj.f + dot(tj.g, sub(ti.x, tj.x));
            const double slack1 = ti.f - affine;
            if (slack1 < -tol::feasibility)
                report.violations.push_back({i, j, 1, slack1});
        }
    }
    for (int i : stars) {
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            const auto& ti = ts[static_cast<std::size_t>(i)];
            const auto& tj = ts[static_cast<std::size_t>(j)];
            const double rhs = tj.f + dot(tj.g, sub(ti.x, tj.x)) + norm2_sq(tj.g) / (2.0 * dataset.L);
            const double slack2 = ti.f - rhs;
            if (slack2 < -tol::feasibility)
                report.violations.push_back({i, j, 2, slack2});
        }
    }
    report.valid = report.violations.empty();
    return report;
}

// ---------------------------------------------------------------------------
// Extension
// ---------------------------------------------------------------------------
ExtensionOracle::ExtensionOracle(InterpDataset dataset) : data_(std::move(dataset)) {
    const auto stars = data_.star_indices();
    if (stars.empty()) throw Error("ExtensionOracle: dataset has no zero-gradient point");
    dim_ = data_.dimension();
    f_star_ = data_.triplets[static_cast<std::size_t>(stars[0])].f;
    for (int s : stars) hull_.push_back(data_.triplets[static_cast<std::size_t>(s)].x);

    // mu = 2 min over non-optimal points of (f_i - f_star) / d(x_i, hull)^2.
    // With every point optimal the quadratic branch is dropped: the affine
    // max already interpolates and the min would range over an empty set.
    double mu = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < data_.triplets.size(); ++i) {
        if (is_zero(data_.triplets[i].g)) continue;
        const auto proj = project_convex_hull(data_.triplets[i].x, hull_);
        if (proj.distance <= 1e-12) continue;
        mu = std::min(mu, 2.0 * (data_.triplets[i].f - f_star_) / (proj.distance * proj.distance));
    }
    if (std::isfinite(mu)) {
        has_quad_ = true;
        mu_ = std::min(mu, data_.L);
    }
    tags_ = {ClassTag::qg_plus(data_.L)};
}

double ExtensionOracle::affine_piece(int j, const Vec& x) const {
    const auto& t = data_.triplets[static_cast<std::size_t>(j)];
    return t.f + dot(t.g, sub(x, t.x));
}

double ExtensionOracle::value(const Vec& x) const {
    double m = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < static_cast<int>(data_.triplets.size()); ++j)
        m = std::max(m, affine_piece(j, x));
    if (has_quad_) {
        const auto proj = project_convex_hull(x, hull_);
        m = std::max(m, f_star_ + 0.5 * mu_ * proj.distance * proj.distance);
    }
    return m;
}

Vec ExtensionOracle::select_subgradient(const Vec& x, SubgradPolicy) const {
    const auto proj = project_convex_hull(x, hull_);
    // On the optimal set the zero vector is the subgradient of record.
    if (proj.distance <= 1e-12 * (1.0 + norm2(x))) return zeros(static_cast<std::size_t>(dim_));

    double best = -std::numeric_limits<double>::infinity();
    int jbest = -1;
    for (int j = 0; j < static_cast<int>(data_.triplets.size()); ++j) {
        const double pj = affine_piece(j, x);
        if (pj > best) {
            best = pj;
            jbest = j;
        }
    }
    if (has_quad_) {
        const double q = f_star_ + 0.5 * mu_ * proj.distance * proj.distance;
        if (q > best) return scaled(sub(x, proj.point), mu_);
    }
    return data_.triplets[static_cast<std::size_t>(jbest)].g;
}

std::vector<Vec> ExtensionOracle::active_gradients(const Vec& x) const {
    const double fx = value(x);
    const double band = tol::active_piece * (1.0 + std::fabs(fx));
    std::vector<Vec> grads;
    for (int j = 0; j < static_cast<int>(data_.triplets.size()); ++j)
        if (affine_piece(j, x) >= fx - band)
            grads.push_back(data_.triplets[static_cast<std::size_t>(j)].g);
    if (has_quad_) {
        const auto proj = project_convex_hull(x, hull_);
        if (f_star_ + 0.5 * mu_ * proj.distance * proj.distance >= fx - band)
            grads.push_back(scaled(sub(x, proj.point), mu_));
    }
    if (grads.empty()) grads.push_back(zeros(static_cast<std::size_t>(dim_)));
    return grads;
}

Vec ExtensionOracle::optset_projection(const Vec& x) const {
    return project_convex_hull(x, hull_).point;
}

std::shared_ptr<ExtensionOracle> build_extension(InterpDataset dataset) {
    const auto report = check_qgplus_interpolation(dataset);
    if (!report.valid) {
        std::ostringstream os;
        os << "build_extension: dataset fails the interpolation conditions (" << report.violations.size()
           << " violated pairs, worst slack " << report.violations.front().slack << ")";
        throw Error(os.str());
    }
    return std::make_shared<ExtensionOracle>(std::move(dataset));
}

// ---------------------------------------------------------------------------
// Random valid instances
// ---------------------------------------------------------------------------
RandomInstance random_valid_instance(std::uint64_t seed, int d, int num_points, double L) {
    if (d < 1) throw Error("random_valid_instance: d must be >= 1");
    if (num_points < 1) throw Error("random_valid_instance: num_points must be >= 1");
    if (L <= 0.0) throw Error("random_valid_instance: L must be positive");

    Rng rng(seed);
    InterpDataset data;
    data.L = L;

    // Optimal points first: their hull is the optimal set of the sampled
    // function, all at value 0 with zero gradient.
    const int max_stars = std::max(1, std::min(3, num_points - 1));
    const int num_stars = num_points == 1 ? 1 : rng.uniform_int(1, max_stars);
    std::vector<Vec> hull;
    for (int s = 0; s < num_stars; ++s) {
        Vec x = rng.uniform_vec(d, -1.0, 1.0);
        hull.push_back(x);
        data.triplets.push_back({std::move(x), zeros(static_cast<std::size_t>(d)), 0.0});
    }

    if (num_points > num_stars) {
        // The remaining samples are read off a function assembled to be
        // admissible by construction: a hull-distance quadratic with
        // curvature mu < L under affine pieces clipped (with a random
        // margin) so that they stay below the L-quadratic envelope of the
        // hull and strictly negative on it.
        const double mu = rng.uniform(0.3, 0.95) * L;
        struct Piece {
            Vec g;
            Vec anchor;
            double offset;  // piece(x) = offset + <g, x - anchor>
        };
        std::vector<Piece> pieces;
        const int num_pieces = rng.uniform_int(1, 3);
        for (int r = 0; r < num_pieces; ++r) {
            Piece p;
            p.anchor = rng.uniform_vec(d, -1.0, 1.0);
            p.g = rng.uniform_vec(d, -L, L);
            double cap = std::numeric_limits<double>::infinity();
            for (const auto& v : hull)
                cap = std::min(cap, dot(p.g, sub(p.anchor, v)) - norm2_sq(p.g) / (2.0 * L));
            p.offset = cap - rng.uniform(0.0, 0.1 * L);
            pieces.push_back(std::move(p));
        }
        auto sample_value = [&](const Vec& x, const HullProjection& proj) {
            double m = 0.5 * mu * proj.distance * proj.distance;
            for (const auto& p : pieces) m = std::max(m, p.offset + dot(p.g, sub(x, p.anchor)));
            return m;
        };
        auto sample_grad = [&](const Vec& x, const HullProjection& proj, double fx) {
            for (const auto& p : pieces)
                if (p.offset + dot(p.g, sub(x, p.anchor)) == fx) return p.g;
            return scaled(sub(x, proj.point), mu);
        };
        for (int i = num_stars; i < num_points; ++i) {
            Vec x = rng.uniform_vec(d, -2.0, 2.0);
            const auto proj = project_convex_hull(x, hull);
            const double fx = sample_value(x, proj);
            Vec g = sample_grad(x, proj, fx);
            if (is_zero(g)) {
                // A non-optimal sample landed on the optimal set; it is an
                // optimal sample then.
                data.triplets.push_back({std::move(x), std::move(g), 0.0});
            } else {
                data.triplets.push_back({std::move(x), std::move(g), fx});
            }
        }
    }

    RandomInstance out;
    out.oracle = build_extension(data);
    out.dataset = std::move(data);
    return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------
std::string dataset_to_json(const InterpDataset& dataset) {
    nlohmann::json j;
    j["L"] = dataset.L;
    j["points"] = nlohmann::json::array();
    for (const auto& t : dataset.triplets) {
        nlohmann::json p;
        p["x"] = t.x;
        p["g"] = t.g;
        p["f"] = t.f;
        j["points"].push_back(std::move(p));
    }
    return j.dump(2);
}

InterpDataset dataset_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(std::string("dataset_from_json: parse error: ") + e.what());
    }
    InterpDataset data;
    try {
        data.L = j.at("L").get<double>();
        for (const auto& p : j.at("points")) {
            InterpTriplet t;
            t.x = p.at("x").get<Vec>();
            t.g = p.at("g").get<Vec>();
            t.f = p.at("f").get<double>();
            if (t.x.size() != t.g.size())
                throw Error("dataset_from_json: x and g dimensions differ");
            data.triplets.push_back(std::move(t));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("dataset_from_json: bad document layout: ") + e.what());
    }
    return data;
}

InterpDataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("load_dataset: cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return dataset_from_json(os.str());
}

void save_dataset(const InterpDataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("save_dataset: cannot open '" + path + "'");
    out << dataset_to_json(dataset) << "\n";
}

}  // namespace qg
