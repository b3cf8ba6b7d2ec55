#include "beamspec/greens.hpp"

#include <algorithm>
#include <cmath>

namespace beamspec {

void gauss_legendre(int p, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(p, 0.0);
    weights.assign(p, 0.0);
    const double pi = std::acos(-1.0);
    const int half = (p + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(pi * (i + 0.75) / (p + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence for P_p(x) and P'_p(x).
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= p; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = p * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[p - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[p - 1 - i] = w;
    }
    if (p % 2 == 1) nodes[p / 2] = 0.0;
}

QuadratureRule QuadratureRule::composite_gauss(double l, int n_nodes, int points_per_panel) {
    if (!(l > 0.0) || n_nodes < 1 || points_per_panel < 1 || points_per_panel > 16)
        throw Error("composite_gauss: need l > 0, n_nodes >= 1, 1 <= points_per_panel <= 16");
    QuadratureRule rule;
    rule.half_length = l;
    rule.points_per_panel = points_per_panel;
    rule.panels = (n_nodes + points_per_panel - 1) / points_per_panel;
    std::vector<double> t, w;
    gauss_legendre(points_per_panel, t, w);
    const double h = 2.0 * l / rule.panels;
    rule.nodes.reserve(rule.panels * points_per_panel);
    rule.weights.reserve(rule.panels * points_per_panel);
    for (int p = 0; p < rule.panels; ++p) {
        const double a = -l + p * h;
        const double mid = a + 0.5 * h;
        for (int j = 0; j < points_per_panel; ++j) {
            rule.nodes.push_back(mid + 0.5 * h * t[j]);
            rule.weights.push_back(0.5 * h * w[j]);
        }
    }
    return rule;
}

int QuadratureRule::panel_of(double x) const {
    const double h = panel_width();
    int p = static_cast<int>(std::floor((x + half_length) / h));
    return std::clamp(p, 0, panels - 1);
}

GridFunction GridFunction::sample(std::shared_ptr<const QuadratureRule> rule,
                                  const std::function<cplx(double)>& f) {
    GridFunction g;
    g.rule = rule;
    g.values.reserve(rule->nodes.size());
    for (double x : rule->nodes) g.values.push_back(f(x));
    return g;
}

GridFunction GridFunction::zero(std::shared_ptr<const QuadratureRule> rule) {
    GridFunction g;
    g.rule = rule;
    g.values.assign(rule->nodes.size(), cplx(0.0, 0.0));
    return g;
}

namespace {

constexpr int kSubRulePoints = 8;

struct SubRule {
    std::vector<double> t, w;  // on [-1, 1]
    SubRule() { gauss_legendre(kSubRulePoints, t, w); }
};

const SubRule& sub_rule() {
    static const SubRule s;
    return s;
}

/// Barycentric weights for the reference Gauss points of a p-point panel.
std::vector<double> barycentric_weights(const std::vector<double>& t) {
    const int p = static_cast<int>(t.size());
    std::vector<double> b(p, 1.0);
    for (int j = 0; j < p; ++j)
        for (int k = 0; k < p; ++k)
            if (k != j) b[j] /= (t[j] - t[k]);
    return b;
}

/// Moment-based evaluator for K[w]: for any x, the split integrals
/// int_{-l}^{x} y w and int_{x}^{l} y w are assembled from exact prefix panel
/// moments plus a sub-rule integral over the straddled panel.
class MomentEngine {
public:
    static const QuadratureRule& require_rule(const GridFunction& w) {
        if (!w.rule) throw Error("grid function has no quadrature rule");
        return *w.rule;
    }

    MomentEngine(const BeamParams& params, const GridFunction& w)
        : params_(params), w_(w), rule_(require_rule(w)) {
        if (w_.values.size() != rule_.nodes.size())
            throw Error("grid function does not match its rule");
        std::vector<double> ref_nodes, ref_w;
        gauss_legendre(rule_.points_per_panel, ref_nodes, ref_w);
        ref_t_ = ref_nodes;
        bary_ = barycentric_weights(ref_t_);

        const int m = rule_.panels;
        const int p = rule_.points_per_panel;
        prefix_.assign(m + 1, Vec4::Zero());
        node_y_.resize(rule_.size());
        for (int i = 0; i < rule_.size(); ++i) node_y_[i] = y_vector(params_, rule_.nodes[i]);
        for (int pa = 0; pa < m; ++pa) {
            Vec4 moment = Vec4::Zero();
            for (int j = 0; j < p; ++j) {
                const int i = pa * p + j;
                moment += node_y_[i] * (w_.values[i] * rule_.weights[i]);
            }
            prefix_[pa + 1] = prefix_[pa] + moment;
        }
    }

    Vec4 total() const { return prefix_.back(); }

    /// w interpolated within panel `pa` at position x.
    cplx interp_w(int pa, double x) const {
        const int p = rule_.points_per_panel;
        const double h = rule_.panel_width();
        const double mid = rule_.panel_lo(pa) + 0.5 * h;
        const double t = (x - mid) / (0.5 * h);
        cplx num(0.0, 0.0);
        double den = 0.0;
        for (int j = 0; j < p; ++j) {
            const double d = t - ref_t_[j];
            if (std::abs(d) < 1e-14) return w_.values[pa * p + j];
            const double c = bary_[j] / d;
            num += c * w_.values[pa * p + j];
            den += c;
        }
        return num / den;
    }

    /// int_{panel_lo(pa)}^{x} y(xi) w(xi) dxi with exact y and interpolated w.
    Vec4 partial_exact_y(int pa, double x) const {
        const auto& s = sub_rule();
        const double a = rule_.panel_lo(pa);
        const double half = 0.5 * (x - a);
        const double mid = 0.5 * (x + a);
        Vec4 acc = Vec4::Zero();
        for (int j = 0; j < kSubRulePoints; ++j) {
            const double xi = mid + half * s.t[j];
            acc += y_vector(params_, xi) * (interp_w(pa, xi) * (half * s.w[j]));
        }
        return acc;
    }

    /// Same partial integral, but integrating the panel interpolant of the
    /// sampled products y(x_j) w_j (the cumulative-quadrature route).
    Vec4 partial_interp_y(int pa, double x) const {
        const auto& s = sub_rule();
        const int p = rule_.points_per_panel;
        const double a = rule_.panel_lo(pa);
        const double h = rule_.panel_width();
        const double mid_panel = rule_.panel_lo(pa) + 0.5 * h;
        const double half = 0.5 * (x - a);
        const double mid = 0.5 * (x + a);
        Vec4 acc = Vec4::Zero();
        for (int j = 0; j < kSubRulePoints; ++j) {
            const double xi = mid + half * s.t[j];
            const double t = (xi - mid_panel) / (0.5 * h);
            Vec4 num = Vec4::Zero();
            double den = 0.0;
            for (int q = 0; q < p; ++q) {
                const double d = t - ref_t_[q];
                const int i = pa * p + q;
                if (std::abs(d) < 1e-14) {
                    num = node_y_[i] * w_.values[i];
                    den = 1.0;
                    break;
                }
                const double c = bary_[q] / d;
                num += c * (node_y_[i] * w_.values[i]);
                den += c;
            }
            acc += (num / den) * (half * s.w[j]);
        }
        return acc;
    }

    Vec4 left_moment(double x, bool interp_y) const {
        const int pa = rule_.panel_of(x);
        const Vec4 partial = interp_y ? partial_interp_y(pa, x) : partial_exact_y(pa, x);
        return prefix_[pa] + partial;
    }

    const Vec4& node_y(int i) const { return node_y_[i]; }

private:
    const BeamParams& params_;
    const GridFunction& w_;
    const QuadratureRule& rule_;
    std::vector<double> ref_t_, bary_;
    std::vector<Vec4> prefix_;
    std::vector<Vec4> node_y_;
};

void check_domain(const BeamParams& params, double x) {
    if (std::abs(x) > params.l * (1.0 + 1e-12) + 1e-300)
        throw OutOfDomain("point " + std::to_string(x) + " outside [-l, l]");
}

}  // namespace

cplx kernel(const GreensRep& rep, const BeamParams& params, double x, double xi) {
    check_domain(params, x);
    check_domain(params, xi);
    const double scale = params.alpha / (4.0 * params.k);
    const Vec4 yx = y_vector(params, x);
    const Vec4 yxi = y_vector(params, xi);
    if (x <= xi) return scale * (yx.transpose() * rep.g_plus * yxi)(0);
    return -scale * (yx.transpose() * rep.g_minus * yxi)(0);
}

cplx kernel(const BoundaryCondition& bc, const BeamParams& params, double x, double xi) {
    return kernel(greens_matrices(bc, params), params, x, xi);
}

double closed_form_kernel(const BeamParams& params, double x, double xi) {
    const double a = params.alpha / std::sqrt(2.0);
    const double t = std::abs(x - xi);
    const double pi = std::acos(-1.0);
    return params.alpha / (2.0 * params.k) * std::exp(-a * t) * std::sin(a * t + pi / 4.0);
}

GridFunction apply_K(const BoundaryCondition& bc, const BeamParams& params,
                     const GridFunction& w) {
    const GreensRep rep = greens_matrices(bc, params);
    const MomentEngine engine(params, w);
    const Vec4 total = engine.total();
    const double scale = params.alpha / (4.0 * params.k);
    GridFunction u;
    u.rule = w.rule;
    u.values.resize(w.values.size());
    for (int i = 0; i < static_cast<int>(w.values.size()); ++i) {
        const Vec4 left = engine.left_moment(w.rule->nodes[i], /*interp_y=*/false);
        const Vec4 f = -rep.g_minus * left + rep.g_plus * (total - left);
        u.values[i] = scale * (engine.node_y(i).transpose() * f)(0);
    }
    return u;
}

cplx apply_K_at(const BoundaryCondition& bc, const BeamParams& params, const GridFunction& w,
                double x) {
    check_domain(params, x);
    const GreensRep rep = greens_matrices(bc, params);
    const MomentEngine engine(params, w);
    const Vec4 left = engine.left_moment(x, /*interp_y=*/false);
    const Vec4 f = -rep.g_minus * left + rep.g_plus * (engine.total() - left);
    const double scale = params.alpha / (4.0 * params.k);
    return scale * (y_vector(params, x).transpose() * f)(0);
}

Vec8 boundary_trace(const BoundaryCondition& bc, const BeamParams& params, const GridFunction& w) {
    const GreensRep rep = greens_matrices(bc, params);
    const MomentEngine engine(params, w);
    const Vec4 mv = engine.total();
    const double scale = params.alpha / (4.0 * params.k);
    Vec8 trace;
    trace.head<4>() = scale * wronskian_W(params, -params.l) * (rep.g_plus * mv);
    trace.tail<4>() = -scale * wronskian_W(params, params.l) * (rep.g_minus * mv);
    return trace;
}

double de_residual(const BoundaryCondition& bc, const BeamParams& params, const GridFunction& w) {
    const GreensRep rep = greens_matrices(bc, params);
    const GridFunction u = apply_K(bc, params, w);
    const MomentEngine engine(params, w);
    const Vec4 total = engine.total();
    const double a4 = std::pow(params.alpha, 4);
    const double scale = params.alpha / (4.0 * params.k);
    double worst = 0.0;
    for (int i = 0; i < static_cast<int>(w.values.size()); ++i) {
        const Vec4 left = engine.left_moment(w.rule->nodes[i], /*interp_y=*/true);
        const Vec4 f = -rep.g_minus * left + rep.g_plus * (total - left);
        // Fourth derivative via Omega^4 = -I plus the jump term.
        const cplx u4 = -a4 * scale * (engine.node_y(i).transpose() * f)(0) +
                        (a4 / params.k) * w.values[i];
        const cplx defect = u4 + a4 * u.values[i] - (a4 / params.k) * w.values[i];
        worst = std::max(worst, std::abs(defect));
    }
    return worst;
}

}  // namespace beamspec
