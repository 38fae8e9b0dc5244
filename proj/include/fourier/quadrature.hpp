#pragma once

#include "fourier/types.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace fourier {

enum class RuleKind { Laguerre, Hermite };

std::string to_string(RuleKind kind);
RuleKind rule_kind_from_string(const std::string& s);

inline constexpr int kRuleSizeCap = 512;

// Gauss rule on the native domain: weight e^{-x} on [0,inf) for Laguerre,
// e^{-x^2} on R for Hermite.
struct UnivariateRule {
    RuleKind kind = RuleKind::Laguerre;
    int n = 0;
    Vec nodes;
    Vec weights;
};

const UnivariateRule& laguerre_rule(int n, int cap = kRuleSizeCap);
const UnivariateRule& hermite_rule(int n, int cap = kRuleSizeCap);
const UnivariateRule& gauss_rule(RuleKind kind, int n, int cap = kRuleSizeCap);

// Full-line rule for plain integrals over R. Weights carry the e^{x} or
// e^{x^2} compensation, computed in extended precision so large rules do not
// overflow. Nodes come in +/- pairs sharing one weight; an odd Hermite rule
// additionally has a node at the origin.
struct FullLineRule {
    RuleKind kind = RuleKind::Laguerre;
    int n = 0;
    Vec pair_nodes;
    Vec pair_weights;
    bool has_center = false;
    double center_weight = 0.0;

    int point_count() const {
        return 2 * static_cast<int>(pair_nodes.size()) + (has_center ? 1 : 0);
    }
};

const FullLineRule& full_line_nodes(RuleKind kind, int n, int cap = kRuleSizeCap);

// Approximates the integral of f over R, optionally with nodes scaled by a
// positive factor. Pairs are summed as w*(f(x)+f(-x)) so odd integrands
// cancel exactly.
double integrate_full_line(const std::function<double(double)>& f,
                           const FullLineRule& rule, double scale = 1.0);

using Integrand = std::function<double(const Vec&)>;
using MultiIndex = std::vector<int>;

// Level-to-node-count map: Linear m(l)=l for plain tensor grids, Exponential
// m(1)=1, m(l)=2^{l-1}+1 for the hierarchical constructions.
enum class LevelMap { Linear, Exponential };

int level_nodes(LevelMap map, int level);

struct GridSpec {
    RuleKind kind = RuleKind::Laguerre;
    Vec scales;
    bool half_space = false;
    long long eval_budget = -1;
};

// Memoizes full tensor-product estimates keyed by multi-index and tracks the
// number of fresh integrand evaluations incurred.
class TensorCache {
public:
    TensorCache(Integrand f, int dim, GridSpec spec, LevelMap map);

    double tensor_estimate(const MultiIndex& beta);
    double delta_estimate(const MultiIndex& beta);

    long long tensor_cost(const MultiIndex& beta) const;
    long long delta_cost(const MultiIndex& beta) const;
    long long paper_points(const MultiIndex& beta) const;
    long long fresh_evals() const { return fresh_; }
    int dim() const { return dim_; }

private:
    struct Axis {
        Vec nodes;
        Vec weights;
    };

    Axis axis(int i, int level) const;
    long long axis_size(int i, int level) const;
    void check_index(const MultiIndex& beta) const;

    Integrand f_;
    int dim_;
    GridSpec spec_;
    LevelMap map_;
    long long fresh_ = 0;
    std::map<MultiIndex, double> tensors_;
    std::map<MultiIndex, double> deltas_;
};

struct QuadResult {
    double value = 0.0;
    long long n_eval = 0;
    long long n_paper = 0;
    bool budget_exhausted = false;
    std::vector<MultiIndex> accepted;
    std::vector<MultiIndex> active;
    std::vector<double> profit_trace;
};

// Single tensor grid with m(beta_i)=level nodes per axis.
QuadResult tensor_estimate(const Integrand& f, int dim, int level,
                           const GridSpec& spec);

// Smolyak combination over the simplex sum(beta_i - 1) <= level with the
// exponential node map.
QuadResult smolyak_estimate(const Integrand& f, int dim, int level,
                            const GridSpec& spec);

struct AsgqOptions {
    double threshold = 0.0;
    int level_cap = 9;
};

// Dimension-adaptive construction: greedily accepts the highest-profit active
// index, expanding admissible forward neighbors eagerly, until the best
// profit drops below the threshold or the evaluation budget is exhausted.
QuadResult asgq_estimate(const Integrand& f, int dim, const GridSpec& spec,
                         const AsgqOptions& opts = {});

// Per-axis scale factors chosen so the integrand falls to 1/e of its origin
// value one scaled unit along each axis.
Vec efold_scales(const Integrand& f, int dim);

} // namespace fourier
