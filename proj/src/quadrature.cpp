#include "fourier/quadrature.hpp"
#include "fourier/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <set>
#include <utility>

namespace fourier {

namespace {

constexpr long double kPiL = 3.14159265358979323846264338327950288L;

struct RawRule {
    std::vector<long double> x;
    std::vector<long double> w;
};

long double recurrence_a(RuleKind kind, int k) {
    return kind == RuleKind::Laguerre ? 2.0L * k + 1.0L : 0.0L;
}

long double recurrence_b(RuleKind kind, int k) {
    return kind == RuleKind::Laguerre ? static_cast<long double>(k)
                                      : sqrtl(k / 2.0L);
}

// Gauss weight at node x as the Christoffel function 1/sum p_m(x)^2 of the
// orthonormal recurrence. Unlike first eigenvector components, the sum is
// dominated by its largest terms, so tail weights keep full relative accuracy.
long double christoffel_weight(RuleKind kind, int n, long double x) {
    const long double mu0 = kind == RuleKind::Laguerre ? 1.0L : sqrtl(kPiL);
    long double pm1 = 0.0L;
    long double p = 1.0L / sqrtl(mu0);
    long double sum = p * p;
    for (int k = 0; k + 1 < n; ++k) {
        const long double pn =
            ((x - recurrence_a(kind, k)) * p - recurrence_b(kind, k) * pm1) /
            recurrence_b(kind, k + 1);
        pm1 = p;
        p = pn;
        sum += p * p;
    }
    return 1.0L / sum;
}

RawRule golub_welsch(RuleKind kind, int n) {
    using LVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

    LVec diag(n), sub(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) diag[k] = recurrence_a(kind, k);
    for (int k = 1; k < n; ++k) sub[k - 1] = recurrence_b(kind, k);

    Eigen::SelfAdjointEigenSolver<LMat> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("quadrature: tridiagonal eigensolve failed");

    RawRule raw;
    raw.x.resize(n);
    raw.w.resize(n);
    for (int k = 0; k < n; ++k) {
        raw.x[k] = es.eigenvalues()[k];
        raw.w[k] = christoffel_weight(kind, n, raw.x[k]);
    }
    return raw;
}

void check_rule_size(int n, int cap) {
    if (n < 1) throw ConfigError("quadrature: rule size must be positive");
    if (n > cap)
        throw ConfigError("quadrature: rule size " + std::to_string(n) +
                          " exceeds the stability cap " + std::to_string(cap));
}

UnivariateRule build_gauss(RuleKind kind, int n) {
    const RawRule raw = golub_welsch(kind, n);
    UnivariateRule r;
    r.kind = kind;
    r.n = n;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int k = 0; k < n; ++k) {
        r.nodes[k] = static_cast<double>(raw.x[k]);
        r.weights[k] = static_cast<double>(raw.w[k]);
    }
    return r;
}

FullLineRule build_full_line(RuleKind kind, int n) {
    const RawRule raw = golub_welsch(kind, n);
    FullLineRule r;
    r.kind = kind;
    r.n = n;
    if (kind == RuleKind::Laguerre) {
        r.pair_nodes.resize(n);
        r.pair_weights.resize(n);
        for (int k = 0; k < n; ++k) {
            r.pair_nodes[k] = static_cast<double>(raw.x[k]);
            r.pair_weights[k] = static_cast<double>(raw.w[k] * expl(raw.x[k]));
        }
    } else {
        // eigenvalues are symmetric up to round-off; fold mirrored nodes onto
        // exact +/- pairs and pin the odd-rule center to zero
        for (int k = 0; k < n / 2; ++k) {
            const long double xm = raw.x[k];
            const long double xp = raw.x[n - 1 - k];
            const long double node = 0.5L * (xp - xm);
            const long double weight =
                0.5L * (raw.w[n - 1 - k] * expl(xp * xp) + raw.w[k] * expl(xm * xm));
            r.pair_nodes.push_back(static_cast<double>(node));
            r.pair_weights.push_back(static_cast<double>(weight));
        }
        if (n % 2 == 1) {
            const long double xc = raw.x[n / 2];
            r.has_center = true;
            r.center_weight = static_cast<double>(raw.w[n / 2] * expl(xc * xc));
        }
        std::reverse(r.pair_nodes.begin(), r.pair_nodes.end());
        std::reverse(r.pair_weights.begin(), r.pair_weights.end());
    }
    return r;
}

std::mutex& rule_mutex() {
    static std::mutex mu;
    return mu;
}

} // namespace

std::string to_string(RuleKind kind) {
    return kind == RuleKind::Laguerre ? "laguerre" : "hermite";
}

RuleKind rule_kind_from_string(const std::string& s) {
    if (s == "laguerre") return RuleKind::Laguerre;
    if (s == "hermite") return RuleKind::Hermite;
    throw ConfigError("unknown quadrature rule kind: " + s);
}

const UnivariateRule& gauss_rule(RuleKind kind, int n, int cap) {
    check_rule_size(n, cap);
    std::scoped_lock lock(rule_mutex());
    static std::map<std::pair<int, int>, UnivariateRule> cache;
    const auto key = std::make_pair(static_cast<int>(kind), n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_gauss(kind, n)).first;
    return it->second;
}

const UnivariateRule& laguerre_rule(int n, int cap) {
    return gauss_rule(RuleKind::Laguerre, n, cap);
}

const UnivariateRule& hermite_rule(int n, int cap) {
    return gauss_rule(RuleKind::Hermite, n, cap);
}

const FullLineRule& full_line_nodes(RuleKind kind, int n, int cap) {
    check_rule_size(n, cap);
    std::scoped_lock lock(rule_mutex());
    static std::map<std::pair<int, int>, FullLineRule> cache;
    const auto key = std::make_pair(static_cast<int>(kind), n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_full_line(kind, n)).first;
    return it->second;
}

double integrate_full_line(const std::function<double(double)>& f,
                           const FullLineRule& rule, double scale) {
    if (!(scale > 0.0)) throw ConfigError("integrate_full_line: scale must be positive");
    long double acc = 0.0L;
    for (size_t k = 0; k < rule.pair_nodes.size(); ++k) {
        const double x = scale * rule.pair_nodes[k];
        const long double pair =
            static_cast<long double>(f(x)) + static_cast<long double>(f(-x));
        acc += static_cast<long double>(rule.pair_weights[k]) * pair;
    }
    if (rule.has_center)
        acc += static_cast<long double>(rule.center_weight) *
               static_cast<long double>(f(0.0));
    return static_cast<double>(static_cast<long double>(scale) * acc);
}

int level_nodes(LevelMap map, int level) {
    if (level < 1) throw ConfigError("level_nodes: level must be >= 1");
    if (map == LevelMap::Linear) return level;
    if (level == 1) return 1;
    if (level > 31) throw ConfigError("level_nodes: level too large");
    return (1 << (level - 1)) + 1;
}

TensorCache::TensorCache(Integrand f, int dim, GridSpec spec, LevelMap map)
    : f_(std::move(f)), dim_(dim), spec_(std::move(spec)), map_(map) {
    if (dim_ < 1) throw ConfigError("TensorCache: dimension must be positive");
    if (!spec_.scales.empty()) {
        if (static_cast<int>(spec_.scales.size()) != dim_)
            throw ConfigError("TensorCache: scales length does not match dimension");
        for (double s : spec_.scales)
            if (!(s > 0.0)) throw ConfigError("TensorCache: scales must be positive");
    }
}

void TensorCache::check_index(const MultiIndex& beta) const {
    if (static_cast<int>(beta.size()) != dim_)
        throw ConfigError("multi-index length does not match dimension");
    for (int b : beta)
        if (b < 1) throw ConfigError("multi-index levels must be >= 1");
}

TensorCache::Axis TensorCache::axis(int i, int level) const {
    const int m = level_nodes(map_, level);
    const FullLineRule& rule = full_line_nodes(spec_.kind, m);
    const double s = spec_.scales.empty() ? 1.0 : spec_.scales[i];
    const bool halve = spec_.half_space && i == 0 && !rule.has_center;

    Axis a;
    a.nodes.reserve(rule.point_count());
    a.weights.reserve(rule.point_count());
    for (size_t k = 0; k < rule.pair_nodes.size(); ++k) {
        const double x = s * rule.pair_nodes[k];
        const double w = s * rule.pair_weights[k];
        if (halve) {
            a.nodes.push_back(x);
            a.weights.push_back(2.0 * w);
        } else {
            a.nodes.push_back(x);
            a.weights.push_back(w);
            a.nodes.push_back(-x);
            a.weights.push_back(w);
        }
    }
    if (rule.has_center) {
        a.nodes.push_back(0.0);
        a.weights.push_back(s * rule.center_weight);
    }
    return a;
}

long long TensorCache::axis_size(int i, int level) const {
    const int m = level_nodes(map_, level);
    const FullLineRule& rule = full_line_nodes(spec_.kind, m);
    const bool halve = spec_.half_space && i == 0 && !rule.has_center;
    if (halve) return static_cast<long long>(rule.pair_nodes.size());
    return rule.point_count();
}

double TensorCache::tensor_estimate(const MultiIndex& beta) {
    check_index(beta);
    auto it = tensors_.find(beta);
    if (it != tensors_.end()) return it->second;

    std::vector<Axis> axes(dim_);
    long long points = 1;
    for (int i = 0; i < dim_; ++i) {
        axes[i] = axis(i, beta[i]);
        points *= static_cast<long long>(axes[i].nodes.size());
    }
    if (spec_.eval_budget >= 0 && fresh_ + points > spec_.eval_budget)
        throw BudgetError("quadrature: evaluation budget exceeded");

    Vec u(dim_);
    std::vector<size_t> idx(dim_, 0);
    long double acc = 0.0L;
    for (;;) {
        long double w = 1.0L;
        for (int i = 0; i < dim_; ++i) {
            u[i] = axes[i].nodes[idx[i]];
            w *= static_cast<long double>(axes[i].weights[idx[i]]);
        }
        acc += w * static_cast<long double>(f_(u));
        int i = 0;
        for (; i < dim_; ++i) {
            if (++idx[i] < axes[i].nodes.size()) break;
            idx[i] = 0;
        }
        if (i == dim_) break;
    }
    fresh_ += points;

    const double value = static_cast<double>(acc);
    tensors_.emplace(beta, value);
    return value;
}

double TensorCache::delta_estimate(const MultiIndex& beta) {
    check_index(beta);
    auto it = deltas_.find(beta);
    if (it != deltas_.end()) return it->second;

    double sum = 0.0;
    MultiIndex corner(dim_);
    for (unsigned mask = 0; mask < (1u << dim_); ++mask) {
        bool zero = false;
        int bits = 0;
        for (int i = 0; i < dim_; ++i) {
            const int dec = (mask >> i) & 1u;
            corner[i] = beta[i] - dec;
            bits += dec;
            if (corner[i] == 0) zero = true;
        }
        if (zero) continue;
        const double q = tensor_estimate(corner);
        sum += (bits % 2 == 0) ? q : -q;
    }
    deltas_.emplace(beta, sum);
    return sum;
}

long long TensorCache::tensor_cost(const MultiIndex& beta) const {
    check_index(beta);
    if (tensors_.count(beta)) return 0;
    long long points = 1;
    for (int i = 0; i < dim_; ++i) points *= axis_size(i, beta[i]);
    return points;
}

long long TensorCache::delta_cost(const MultiIndex& beta) const {
    check_index(beta);
    long long cost = 0;
    MultiIndex corner(dim_);
    for (unsigned mask = 0; mask < (1u << dim_); ++mask) {
        bool zero = false;
        for (int i = 0; i < dim_; ++i) {
            corner[i] = beta[i] - ((mask >> i) & 1u);
            if (corner[i] == 0) zero = true;
        }
        if (zero) continue;
        cost += tensor_cost(corner);
    }
    return cost;
}

long long TensorCache::paper_points(const MultiIndex& beta) const {
    check_index(beta);
    long long points = 1;
    for (int i = 0; i < dim_; ++i) points *= level_nodes(map_, beta[i]);
    return points;
}

QuadResult tensor_estimate(const Integrand& f, int dim, int level,
                           const GridSpec& spec) {
    TensorCache cache(f, dim, spec, LevelMap::Linear);
    const MultiIndex beta(dim, level);
    QuadResult r;
    r.value = cache.tensor_estimate(beta);
    r.n_eval = cache.fresh_evals();
    r.n_paper = cache.paper_points(beta);
    return r;
}

namespace {

void enumerate_simplex(int dim, int pos, int excess_left, MultiIndex& cur,
                       std::vector<MultiIndex>& out) {
    if (pos == dim) {
        out.push_back(cur);
        return;
    }
    for (int b = 1; b - 1 <= excess_left; ++b) {
        cur[pos] = b;
        enumerate_simplex(dim, pos + 1, excess_left - (b - 1), cur, out);
    }
}

} // namespace

QuadResult smolyak_estimate(const Integrand& f, int dim, int level,
                            const GridSpec& spec) {
    if (level < 0) throw ConfigError("smolyak_estimate: level must be >= 0");
    TensorCache cache(f, dim, spec, LevelMap::Exponential);

    std::vector<MultiIndex> index_set;
    MultiIndex cur(dim, 1);
    enumerate_simplex(dim, 0, level, cur, index_set);

    long double acc = 0.0L;
    long long n_paper = 0;
    for (const MultiIndex& beta : index_set) {
        acc += static_cast<long double>(cache.delta_estimate(beta));
        n_paper += cache.paper_points(beta);
    }

    QuadResult r;
    r.value = static_cast<double>(acc);
    r.n_eval = cache.fresh_evals();
    r.n_paper = n_paper;
    return r;
}

QuadResult asgq_estimate(const Integrand& f, int dim, const GridSpec& spec,
                         const AsgqOptions& opts) {
    if (spec.eval_budget < 0 && !(opts.threshold > 0.0))
        throw ConfigError("asgq_estimate: need an evaluation budget or a positive threshold");
    if (opts.level_cap < 1) throw ConfigError("asgq_estimate: level cap must be >= 1");

    TensorCache cache(f, dim, spec, LevelMap::Exponential);

    struct Entry {
        double delta = 0.0;
        long long work = 0;
        double profit = 0.0;
    };

    auto evaluate = [&cache](const MultiIndex& beta) {
        Entry e;
        const long long before = cache.fresh_evals();
        e.delta = cache.delta_estimate(beta);
        e.work = cache.fresh_evals() - before;
        e.profit = std::abs(e.delta) /
                   static_cast<double>(std::max<long long>(e.work, 1));
        return e;
    };

    std::map<MultiIndex, Entry> active;
    std::set<MultiIndex> accepted;

    const MultiIndex root(dim, 1);
    active.emplace(root, evaluate(root));

    QuadResult r;
    bool stop = false;
    while (!active.empty() && !stop) {
        auto best = active.begin();
        for (auto it = std::next(active.begin()); it != active.end(); ++it)
            if (it->second.profit > best->second.profit) best = it;
        if (best->second.profit < opts.threshold) break;

        const MultiIndex beta = best->first;
        accepted.insert(beta);
        r.accepted.push_back(beta);
        r.profit_trace.push_back(best->second.profit);
        active.erase(best);

        MultiIndex nb = beta;
        for (int i = 0; i < dim && !stop; ++i) {
            ++nb[i];
            const bool fresh = nb[i] <= opts.level_cap && !accepted.count(nb) &&
                               !active.count(nb);
            bool admissible = fresh;
            if (admissible) {
                for (int j = 0; j < dim && admissible; ++j) {
                    if (j == i || nb[j] == 1) continue;
                    --nb[j];
                    admissible = accepted.count(nb) > 0;
                    ++nb[j];
                }
            }
            if (admissible) {
                if (spec.eval_budget >= 0 &&
                    cache.fresh_evals() + cache.delta_cost(nb) > spec.eval_budget) {
                    r.budget_exhausted = true;
                    stop = true;
                } else {
                    active.emplace(nb, evaluate(nb));
                }
            }
            --nb[i];
        }
    }

    long double acc = 0.0L;
    long long n_paper = 0;
    for (const MultiIndex& beta : r.accepted) {
        acc += static_cast<long double>(cache.delta_estimate(beta));
        n_paper += cache.paper_points(beta);
    }
    for (const auto& [beta, entry] : active) {
        acc += static_cast<long double>(entry.delta);
        n_paper += cache.paper_points(beta);
        r.active.push_back(beta);
    }

    r.value = static_cast<double>(acc);
    r.n_eval = cache.fresh_evals();
    r.n_paper = n_paper;
    return r;
}

Vec efold_scales(const Integrand& f, int dim) {
    if (dim < 1) throw ConfigError("efold_scales: dimension must be positive");
    Vec u(dim, 0.0);
    const double g0 = f(u);
    if (!std::isfinite(g0) || !(g0 > 0.0))
        throw NumericalError("efold_scales: integrand must be positive at the origin");
    const double target = g0 * std::exp(-1.0);

    Vec scales(dim);
    for (int i = 0; i < dim; ++i) {
        auto probe = [&](double t) {
            u[i] = t;
            const double v = f(u);
            u[i] = 0.0;
            return v;
        };
        double lo = 0.0, hi = 1e-3;
        while (probe(hi) > target && hi < 1e7) {
            lo = hi;
            hi *= 2.0;
        }
        for (int k = 0; k < 60; ++k) {
            const double mid = 0.5 * (lo + hi);
            if (probe(mid) > target)
                lo = mid;
            else
                hi = mid;
        }
        scales[i] = 0.5 * (lo + hi);
    }
    return scales;
}

} // namespace fourier
