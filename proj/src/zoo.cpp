#include "qg/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qg {

namespace {

double parse_param(const std::map<std::string, std::string>& params, const std::string& key,
                   double fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    return std::stod(it->second);
}

int active_coordinate_lowest(const Vec& z, double m) {
    for (std::size_t i = 0; i < z.size(); ++i)
        if (std::fabs(z[i]) == m) return static_cast<int>(i);
    return 0;
}

std::vector<int> active_coordinates(const Vec& z, double m, double tol) {
    std::vector<int> idx;
    for (std::size_t i = 0; i < z.size(); ++i)
        if (std::fabs(z[i]) >= m - tol) idx.push_back(static_cast<int>(i));
    return idx;
}

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

// ---------------------------------------------------------------------------
// Huber
// ---------------------------------------------------------------------------
HuberOracle::HuberOracle(double L, double delta) : L_(L), delta_(delta) {
    if (L <= 0.0 || delta <= 0.0) throw Error("HuberOracle: L and delta must be positive");
    tags_ = {ClassTag::qg_plus(L_), ClassTag::lipschitz(L_ * delta_),
             ClassTag::rg_plus(GrowthFn::mixed(L_ * delta_, L_))};
}

double HuberOracle::value(const Vec& x) const {
    const double t = x[0];
    if (std::fabs(t) <= delta_) return 0.5 * L_ * t * t;
    return L_ * delta_ * std::fabs(t) - 0.5 * L_ * delta_ * delta_;
}

Vec HuberOracle::select_subgradient(const Vec& x, SubgradPolicy) const {
    const double t = x[0];
    if (std::fabs(t) <= delta_) return Vec{L_ * t};
    return Vec{L_ * delta_ * sign_of(t)};
}

// ---------------------------------------------------------------------------
// Absolute value
// ---------------------------------------------------------------------------
AbsOracle::AbsOracle(double M) : M_(M) {
    if (M <= 0.0) throw Error("AbsOracle: M must be positive");
    tags_ = {ClassTag::lipschitz(M_), ClassTag::rg_plus(GrowthFn::sqrt(M_))};
}

double AbsOracle::value(const Vec& x) const { return M_ * std::fabs(x[0]); }

Vec AbsOracle::select_subgradient(const Vec& x, SubgradPolicy) const {
    // 0 at the kink: the zero subgradient is the canonical choice at a minimizer.
    return Vec{M_ * sign_of(x[0])};
}

std::vector<Vec> AbsOracle::active_gradients(const Vec& x) const {
    if (x[0] == 0.0) return {Vec{-M_}, Vec{M_}};
    return {select_subgradient(x, SubgradPolicy::FirstActive)};
}

// ---------------------------------------------------------------------------
// Sup-norm squared
// ---------------------------------------------------------------------------
SupNormSqOracle::SupNormSqOracle(double L, int d, SubgradPolicy policy, Vec shift)
    : L_(L), d_(d), shift_(std::move(shift)) {
    if (L <= 0.0) throw Error("SupNormSqOracle: L must be positive");
    if (d < 1) throw Error("SupNormSqOracle: dimension must be >= 1");
    if (shift_.empty()) shift_ = zeros(static_cast<std::size_t>(d));
    if (static_cast<int>(shift_.size()) != d) throw Error("SupNormSqOracle: shift dimension mismatch");
    default_policy_ = policy == SubgradPolicy::Default ? SubgradPolicy::LowestIndex : policy;
    tags_ = {ClassTag::qg_plus(L_)};
}

double SupNormSqOracle::value(const Vec& x) const {
    const double m = norm_inf(sub(x, shift_));
    return 0.5 * L_ * m * m;
}

int SupNormSqOracle::pick_coordinate(const Vec& z, double m, SubgradPolicy policy) const {
    if (policy == SubgradPolicy::Adversarial) {
        // Lowest active coordinate never returned before; falls back to the
        // lowest active one when every active coordinate was already used.
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (std::fabs(z[i]) != m) continue;
            if (std::find(returned_.begin(), returned_.end(), static_cast<int>(i)) ==
                returned_.end()) {
                returned_.push_back(static_cast<int>(i));
                return static_cast<int>(i);
            }
        }
        return active_coordinate_lowest(z, m);
    }
    if (policy == SubgradPolicy::Alternating) {
        const auto act = active_coordinates(z, m, 0.0);
        int pick = act[0];
        for (int i : act) {
            if (i != last_returned_) {
                pick = i;
                break;
            }
        }
        last_returned_ = pick;
        return pick;
    }
    // FirstActive and LowestIndex coincide for coordinate-wise pieces.
    return active_coordinate_lowest(z, m);
}

Vec SupNormSqOracle::select_subgradient(const Vec& x, SubgradPolicy policy) const {
    const Vec z = sub(x, shift_);
    const double m = norm_inf(z);
    if (m == 0.0) return zeros(static_cast<std::size_t>(d_));
    const int i = pick_coordinate(z, m, policy);
    return basis(static_cast<std::size_t>(d_), static_cast<std::size_t>(i),
                 L_ * m * sign_of(z[static_cast<std::size_t>(i)]));
}

std::vector<Vec> SupNormSqOracle::active_gradients(const Vec& x) const {
    const Vec z = sub(x, shift_);
    const double m = norm_inf(z);
    if (m == 0.0) return {zeros(static_cast<std::size_t>(d_))};
    std::vector<Vec> grads;
    for (int i : active_coordinates(z, m, tol::active_piece * (1.0 + m)))
        grads.push_back(basis(static_cast<std::size_t>(d_), static_cast<std::size_t>(i),
                              L_ * m * sign_of(z[static_cast<std::size_t>(i)])));
    return grads;
}

// ---------------------------------------------------------------------------
// Sup-norm (Lipschitz)
// ---------------------------------------------------------------------------
SupNormOracle::SupNormOracle(double M, int d, SubgradPolicy policy, Vec shift)
    : M_(M), d_(d), shift_(std::move(shift)) {
    if (M <= 0.0) throw Error("SupNormOracle: M must be positive");
    if (d < 1) throw Error("SupNormOracle: dimension must be >= 1");
    if (shift_.empty()) shift_ = zeros(static_cast<std::size_t>(d));
    if (static_cast<int>(shift_.size()) != d) throw Error("SupNormOracle: shift dimension mismatch");
    default_policy_ = policy == SubgradPolicy::Default ? SubgradPolicy::LowestIndex : policy;
    tags_ = {ClassTag::lipschitz(M_), ClassTag::rg_plus(GrowthFn::sqrt(M_))};
}

double SupNormOracle::value(const Vec& x) const { return M_ * norm_inf(sub(x, shift_)); }

Vec SupNormOracle::select_subgradient(const Vec& x, SubgradPolicy policy) const {
    const Vec z = sub(x, shift_);
    const double m = norm_inf(z);
    if (m == 0.0) return zeros(static_cast<std::size_t>(d_));
    int pick;
    if (policy == SubgradPolicy::Alternating) {
        const auto act = active_coordinates(z, m, 0.0);
        pick = act[0];
        for (int i : act)
            if (i != last_returned_) {
                pick = i;
                break;
            }
        last_returned_ = pick;
    } else {
        pick = active_coordinate_lowest(z, m);
    }
    return basis(static_cast<std::size_t>(d_), static_cast<std::size_t>(pick),
                 M_ * sign_of(z[static_cast<std::size_t>(pick)]));
}

std::vector<Vec> SupNormOracle::active_gradients(const Vec& x) const {
    const Vec z = sub(x, shift_);
    const double m = norm_inf(z);
    if (m == 0.0) return {zeros(static_cast<std::size_t>(d_))};
    std::vector<Vec> grads;
    for (int i : active_coordinates(z, m, tol::active_piece * (1.0 + m)))
        grads.push_back(basis(static_cast<std::size_t>(d_), static_cast<std::size_t>(i),
                              M_ * sign_of(z[static_cast<std::size_t>(i)])));
    return grads;
}

// ---------------------------------------------------------------------------
// Diagonal quadratic
// ---------------------------------------------------------------------------
QuadDiagOracle::QuadDiagOracle(double mu, double L, int d) : mu_(mu), L_(L), d_(d) {
    if (mu <= 0.0 || L < mu) throw Error("QuadDiagOracle: need 0 < mu <= L");
    if (d < 1) throw Error("QuadDiagOracle: dimension must be >= 1");
    a_.resize(static_cast<std::size_t>(d));
    if (d == 1) {
        a_[0] = L_;
    } else {
        const double lmu = std::log(mu_), lL = std::log(L_);
        for (int i = 0; i < d; ++i)
            a_[static_cast<std::size_t>(i)] = std::exp(lmu + (lL - lmu) * i / (d - 1));
        a_[0] = mu_;
        a_[static_cast<std::size_t>(d) - 1] = L_;
    }
    tags_ = {ClassTag::qg_plus(L_)};
}

double QuadDiagOracle::value(const Vec& x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += a_[i] * x[i] * x[i];
    return 0.5 * s;
}

Vec QuadDiagOracle::select_subgradient(const Vec& x, SubgradPolicy) const {
    Vec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = a_[i] * x[i];
    return g;
}

// ---------------------------------------------------------------------------
// 3-D lower-bound instance
// ---------------------------------------------------------------------------
Lb3dOracle::Lb3dOracle(double L, int n, std::vector<double> gammas, double eta)
    : L_(L), eta_(eta), gammas_(std::move(gammas)) {
    if (L <= 0.0) throw Error("Lb3dOracle: L must be positive");
    if (n < 2) throw Error("Lb3dOracle: n must be >= 2 (the construction references gamma_{n-2})");
    if (static_cast<int>(gammas_.size()) != n) throw Error("Lb3dOracle: need n step-sizes");
    for (double g : gammas_)
        if (g <= 0.0) throw Error("Lb3dOracle: step-sizes must be positive");
    if (eta <= 0.0) throw Error("Lb3dOracle: eta must be positive");

    delta_ = std::sqrt(eta_ * std::sqrt(3.0) / (1.0 + L_ * gammas_[static_cast<std::size_t>(n) - 2]));
    xi_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = i; k <= n - 2; ++k) s += L_ * gammas_[static_cast<std::size_t>(k)];
        xi_[static_cast<std::size_t>(i)] = delta_ * (1.0 + s);
    }
    const double xi0 = xi_[0];
    lambda_ = L_ * eta_ /
              ((1.0 + L_ * gammas_[static_cast<std::size_t>(n) - 2]) * (1.0 + eta_ * eta_ + xi0 * xi0));
    tags_ = {ClassTag::qg_plus(L_)};
}

double Lb3dOracle::piece_slab(const Vec& x) const {
    return 0.5 * L_ * (x[0] - 1.0 + std::fabs(x[1]) * std::sqrt(3.0));
}

double Lb3dOracle::piece_huber(const Vec& x) const {
    const double t = x[2];
    if (std::fabs(t) <= delta_) return 0.5 * L_ * t * t;
    return L_ * delta_ * std::fabs(t) - 0.5 * L_ * delta_ * delta_;
}

double Lb3dOracle::piece_quad(const Vec& x) const { return 0.5 * lambda_ * norm2_sq(x); }

Vec Lb3dOracle::grad_slab(const Vec& x) const {
    return Vec{0.5 * L_, 0.5 * L_ * std::sqrt(3.0) * sign_of(x[1]), 0.0};
}

Vec Lb3dOracle::grad_huber(const Vec& x) const {
    const double t = x[2];
    const double dh = std::fabs(t) <= delta_ ? L_ * t : L_ * delta_ * sign_of(t);
    return Vec{0.0, 0.0, dh};
}

Vec Lb3dOracle::grad_quad(const Vec& x) const { return scaled(x, lambda_); }

double Lb3dOracle::value(const Vec& x) const {
    return std::max({piece_slab(x), piece_huber(x), piece_quad(x)});
}

Vec Lb3dOracle::select_subgradient(const Vec& x, SubgradPolicy) const {
    // Lowest-index active piece, in the order slab, huber, quadratic.
    const double p0 = piece_slab(x), p1 = piece_huber(x), p2 = piece_quad(x);
    const double m = std::max({p0, p1, p2});
    if (p0 == m) return grad_slab(x);
    if (p1 == m) return grad_huber(x);
    (void)p2;
    return grad_quad(x);
}

std::vector<Vec> Lb3dOracle::active_gradients(const Vec& x) const {
    const double p0 = piece_slab(x), p1 = piece_huber(x), p2 = piece_quad(x);
    const double m = std::max({p0, p1, p2});
    const double band = tol::active_piece * (1.0 + std::fabs(m));
    std::vector<Vec> grads;
    if (p0 >= m - band) grads.push_back(grad_slab(x));
    if (p1 >= m - band) grads.push_back(grad_huber(x));
    if (p2 >= m - band) grads.push_back(grad_quad(x));
    return grads;
}

Lb3dInstance lb3d_instance(double L, int n, std::vector<double> gammas, double eta) {
    auto oracle = std::make_shared<Lb3dOracle>(L, n, gammas, eta);
    Lb3dInstance inst;
    inst.x0 = Vec{1.0, eta, oracle->xi()[0]};
    inst.predicted_gap =
        0.5 * L * (L * gammas[static_cast<std::size_t>(n) - 1] - eta * std::sqrt(3.0));
    inst.oracle = std::move(oracle);
    return inst;
}

// ---------------------------------------------------------------------------
// Resisting oracle
// ---------------------------------------------------------------------------
ResistingOracle::ResistingOracle(double L, int horizon, Mode mode)
    : L_(L), horizon_(horizon), mode_(mode) {
    if (L <= 0.0) throw Error("ResistingOracle: L must be positive");
    if (horizon < 0) throw Error("ResistingOracle: horizon must be >= 0");
    if (mode_ == Mode::VertexGame) {
        if (horizon > 62) throw Error("ResistingOracle: vertex game supports horizons up to 62");
        signs_.assign(static_cast<std::size_t>(horizon) + 1, 0);
    } else {
        span_ = std::make_shared<SupNormSqOracle>(L, horizon + 1, SubgradPolicy::Adversarial);
    }
}

Vec ResistingOracle::farthest_vertex(const Vec& x) const {
    // Farthest candidate coordinate-wise; free coordinates take the sign
    // opposite to x (ties resolve to -1).
    Vec v(signs_.size());
    for (std::size_t i = 0; i < signs_.size(); ++i) {
        if (signs_[i] != 0)
            v[i] = signs_[i];
        else
            v[i] = x[i] > 0.0 ? -1.0 : (x[i] < 0.0 ? 1.0 : -1.0);
    }
    return v;
}

ResistingOracle::Answer ResistingOracle::query(const Vec& x) {
    if (mode_ == Mode::Span) {
        Answer a;
        a.value = span_->value(x);
        a.subgradient = span_->subgradient(x);
        a.chosen_vertex = zeros(x.size());
        ++queries_;
        return a;
    }
    if (static_cast<int>(x.size()) != horizon_ + 1)
        throw Error("ResistingOracle: query dimension mismatch");
    if (frozen_ || queries_ >= horizon_)
        throw Error("ResistingOracle: horizon exhausted, the final instance is frozen");

    const Vec v = farthest_vertex(x);
    double m = 0.0;
    int istar = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double d = std::fabs(x[i] - v[i]);
        if (d > m) {
            m = d;
            istar = static_cast<int>(i);
        }
    }
    Answer a;
    a.value = 0.5 * L_ * m * m;
    a.subgradient = basis(v.size(), static_cast<std::size_t>(istar),
                          L_ * m * sign_of(x[static_cast<std::size_t>(istar)] -
                                           v[static_cast<std::size_t>(istar)]));
    a.chosen_vertex = v;
    signs_[static_cast<std::size_t>(istar)] = static_cast<int>(v[static_cast<std::size_t>(istar)]);
    ++queries_;
    return a;
}

void ResistingOracle::freeze(const Vec& x) {
    if (mode_ != Mode::VertexGame) throw Error("ResistingOracle: freeze applies to the vertex game");
    if (frozen_) return;
    final_vertex_ = farthest_vertex(x);
    frozen_ = true;
}

const Vec& ResistingOracle::final_vertex() const {
    if (!frozen_) throw Error("ResistingOracle: game still running, no final instance yet");
    return final_vertex_;
}

int ResistingOracle::survivors_log2() const {
    int free_coords = 0;
    for (int s : signs_)
        if (s == 0) ++free_coords;
    return free_coords;
}

ResistingOracleAdapter::ResistingOracleAdapter(std::shared_ptr<ResistingOracle> game)
    : game_(std::move(game)) {
    tags_ = {ClassTag::qg_plus(game_->L())};
}

int ResistingOracleAdapter::dimension() const { return game_->horizon() + 1; }

const ResistingOracle::Answer& ResistingOracleAdapter::answer_for(const Vec& x) const {
    for (const auto& [pt, ans] : cache_)
        if (pt == x) return ans;
    if (game_->mode() == ResistingOracle::Mode::VertexGame &&
        (game_->frozen() || game_->queries_made() >= game_->horizon())) {
        // Horizon exhausted: the adversary commits against this point and the
        // frozen instance answers from now on.
        if (!game_->frozen()) game_->freeze(x);
        if (!frozen_fn_)
            frozen_fn_ = std::make_shared<SupNormSqOracle>(game_->L(), dimension(),
                                                           SubgradPolicy::LowestIndex,
                                                           game_->final_vertex());
        ResistingOracle::Answer a;
        a.value = frozen_fn_->value(x);
        a.subgradient = frozen_fn_->subgradient(x);
        a.chosen_vertex = game_->final_vertex();
        cache_.emplace_back(x, std::move(a));
        return cache_.back().second;
    }
    cache_.emplace_back(x, game_->query(x));
    return cache_.back().second;
}

double ResistingOracleAdapter::value(const Vec& x) const { return answer_for(x).value; }

Vec ResistingOracleAdapter::select_subgradient(const Vec& x, SubgradPolicy) const {
    return answer_for(x).subgradient;
}

bool ResistingOracleAdapter::has_optset_projection() const {
    return game_->mode() == ResistingOracle::Mode::Span || game_->frozen();
}

Vec ResistingOracleAdapter::optset_projection(const Vec& x) const {
    if (game_->mode() == ResistingOracle::Mode::Span) return game_->span_oracle()->optset_projection(x);
    return game_->final_vertex();
}

// ---------------------------------------------------------------------------
// Cycling counterexamples
// ---------------------------------------------------------------------------
std::vector<CyclingInstance> cycling_instances(double M, double gamma, double L) {
    std::vector<CyclingInstance> out;

    CyclingInstance two_cycle;
    two_cycle.id = "cycle-abs";
    two_cycle.oracle = std::make_shared<AbsOracle>(M);
    two_cycle.x0 = Vec{0.75 * M * gamma};
    two_cycle.expected_cycle = {Vec{0.75 * M * gamma}, Vec{-0.25 * M * gamma}};
    two_cycle.gamma = gamma;
    out.push_back(std::move(two_cycle));

    const std::vector<Vec> square_cycle = {
        Vec{1, 1, 1}, Vec{-1, 1, 1}, Vec{-1, -1, 1}, Vec{1, -1, 1}};

    CyclingInstance linf_sq;
    linf_sq.id = "cycle-linfsq";
    linf_sq.oracle = std::make_shared<SupNormSqOracle>(L, 3, SubgradPolicy::Alternating);
    linf_sq.x0 = Vec{1, 1, 1};
    linf_sq.expected_cycle = square_cycle;
    out.push_back(std::move(linf_sq));

    CyclingInstance linf;
    linf.id = "cycle-linf";
    linf.oracle = std::make_shared<SupNormOracle>(M, 3, SubgradPolicy::Alternating);
    linf.x0 = Vec{1, 1, 1};
    linf.expected_cycle = square_cycle;
    out.push_back(std::move(linf));

    return out;
}

std::shared_ptr<HuberOracle> huber_oracle(double L, double delta) {
    return std::make_shared<HuberOracle>(L, delta);
}

std::shared_ptr<SupNormSqOracle> supnormsq_oracle(double L, int d, SubgradPolicy tie_policy) {
    return std::make_shared<SupNormSqOracle>(L, d, tie_policy);
}

std::shared_ptr<QuadDiagOracle> quadratic_diag_oracle(double mu, double L, int d) {
    return std::make_shared<QuadDiagOracle>(mu, L, d);
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------
NamedInstance make_instance(const std::string& id, const std::map<std::string, std::string>& params) {
    NamedInstance inst;
    inst.id = id;

    auto check_keys = [&](std::initializer_list<const char*> allowed) {
        for (const auto& [key, value] : params) {
            (void)value;
            bool known = false;
            for (const char* a : allowed)
                if (key == a) known = true;
            if (!known)
                throw Error("make_instance: unknown parameter '" + key + "' for instance '" + id + "'");
        }
    };

    auto policy_from = [&]() {
        const auto it = params.find("policy");
        if (it == params.end()) return SubgradPolicy::LowestIndex;
        if (it->second == "lowest-index") return SubgradPolicy::LowestIndex;
        if (it->second == "first-active") return SubgradPolicy::FirstActive;
        if (it->second == "adversarial") return SubgradPolicy::Adversarial;
        if (it->second == "alternating") return SubgradPolicy::Alternating;
        throw Error("make_instance: unknown policy '" + it->second + "'");
    };

    if (id == "huber") {
        check_keys({"L", "delta", "x0"});
        const double L = parse_param(params, "L", 1.0);
        const double delta = parse_param(params, "delta", 1.0);
        inst.oracle = huber_oracle(L, delta);
        inst.default_x0 = Vec{parse_param(params, "x0", delta + 1.0)};
    } else if (id == "abs") {
        check_keys({"M", "x0"});
        inst.oracle = std::make_shared<AbsOracle>(parse_param(params, "M", 1.0));
        inst.default_x0 = Vec{parse_param(params, "x0", 1.0)};
    } else if (id == "supnormsq") {
        check_keys({"L", "d", "policy"});
        const int d = static_cast<int>(parse_param(params, "d", 3));
        inst.oracle = std::make_shared<SupNormSqOracle>(parse_param(params, "L", 1.0), d, policy_from());
        inst.default_x0 = Vec(static_cast<std::size_t>(d), 1.0);
    } else if (id == "supnorm") {
        check_keys({"M", "d", "policy"});
        const int d = static_cast<int>(parse_param(params, "d", 3));
        inst.oracle = std::make_shared<SupNormOracle>(parse_param(params, "M", 1.0), d, policy_from());
        inst.default_x0 = Vec(static_cast<std::size_t>(d), 1.0);
    } else if (id == "lb3d") {
        check_keys({"L", "n", "eta", "gamma"});
        const double L = parse_param(params, "L", 1.0);
        const int n = static_cast<int>(parse_param(params, "n", 5));
        const double eta = parse_param(params, "eta", 1e-4);
        std::vector<double> gammas(static_cast<std::size_t>(n), parse_param(params, "gamma", 1.0 / L));
        auto built = lb3d_instance(L, n, gammas, eta);
        inst.oracle = built.oracle;
        inst.default_x0 = built.x0;
        inst.predicted_gap = built.predicted_gap;
    } else if (id == "cycle-abs" || id == "cycle-linf" || id == "cycle-linfsq") {
        check_keys({"M", "gamma", "L"});
        auto all = cycling_instances(parse_param(params, "M", 1.0), parse_param(params, "gamma", 1.0),
                                     parse_param(params, "L", 1.0));
        for (auto& c : all) {
            if (c.id == id) {
                inst.oracle = c.oracle;
                inst.default_x0 = c.x0;
                return inst;
            }
        }
        throw Error("make_instance: internal registry error for '" + id + "'");
    } else if (id == "quad-diag") {
        check_keys({"mu", "L", "d"});
        const int d = static_cast<int>(parse_param(params, "d", 4));
        inst.oracle = quadratic_diag_oracle(parse_param(params, "mu", 1.0),
                                            parse_param(params, "L", 4.0), d);
        inst.default_x0 = Vec(static_cast<std::size_t>(d), 1.0);
    } else {
        throw Error("make_instance: unknown instance id '" + id + "'");
    }
    return inst;
}

}  // namespace qg
