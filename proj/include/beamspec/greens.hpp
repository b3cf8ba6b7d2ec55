#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "beamspec/boundary.hpp"

namespace beamspec {

/// Composite Gauss-Legendre rule on [-l, l]: `panels` equal panels of
/// `points_per_panel` nodes each. Panel structure is kept because the kernel
/// has a diagonal kink: integrals are split there, and node data is
/// re-expanded panel-by-panel through the interpolant.
struct QuadratureRule {
    std::vector<double> nodes;    ///< strictly increasing, all interior
    std::vector<double> weights;  ///< positive; sums to 2l
    double half_length = 1.0;
    int points_per_panel = 4;
    int panels = 0;

    /// n_nodes is rounded up to a multiple of points_per_panel.
    static QuadratureRule composite_gauss(double l, int n_nodes, int points_per_panel = 4);

    int size() const { return static_cast<int>(nodes.size()); }
    double panel_width() const { return 2.0 * half_length / panels; }
    double panel_lo(int p) const { return -half_length + p * panel_width(); }
    int panel_of(double x) const;
};

/// p-point Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int p, std::vector<double>& nodes, std::vector<double>& weights);

/// Complex samples of a function on the nodes of a rule.
struct GridFunction {
    std::vector<cplx> values;
    std::shared_ptr<const QuadratureRule> rule;

    static GridFunction sample(std::shared_ptr<const QuadratureRule> rule,
                               const std::function<cplx(double)>& f);
    static GridFunction zero(std::shared_ptr<const QuadratureRule> rule);
};

/// Green's kernel for bc at (x, xi). Uses the g_plus branch for x <= xi and
/// the -g_minus branch for xi <= x; the two agree on the diagonal.
/// Throws NotWellPosed, OutOfDomain.
cplx kernel(const BoundaryCondition& bc, const BeamParams& params, double x, double xi);
cplx kernel(const GreensRep& rep, const BeamParams& params, double x, double xi);

/// The infinite-beam kernel (alpha/2k) e^{-a|x-xi|} sin(a|x-xi| + pi/4),
/// a = alpha/sqrt(2). Equals the Q kernel.
double closed_form_kernel(const BeamParams& params, double x, double xi);

/// Integral operator applied to w, evaluated on w's nodes. The integral is
/// split at the evaluation point; each side uses prefix panel moments plus a
/// sub-rule on the straddled panel with w re-expanded by panel interpolation.
/// Throws NotWellPosed.
GridFunction apply_K(const BoundaryCondition& bc, const BeamParams& params, const GridFunction& w);

/// Same operator evaluated at an arbitrary x in [-l, l].
cplx apply_K_at(const BoundaryCondition& bc, const BeamParams& params, const GridFunction& w,
                double x);

/// Boundary data (u, u', u'', u''' at -l, then at +l) of K[w], computed
/// semi-analytically from the moment vector of w (no numerical
/// differentiation). Throws NotWellPosed.
Vec8 boundary_trace(const BoundaryCondition& bc, const BeamParams& params, const GridFunction& w);

/// Max-norm defect of the beam equation for u = K[w], with the fourth
/// derivative reconstructed from a cumulative-quadrature route independent of
/// the one apply_K uses. Decays at the interpolation order of the rule.
/// Throws NotWellPosed.
double de_residual(const BoundaryCondition& bc, const BeamParams& params, const GridFunction& w);

}  // namespace beamspec
