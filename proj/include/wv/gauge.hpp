#pragma once

#include <array>

#include "wv/curvature.hpp"
#include "wv/walker.hpp"

namespace wv {

// Coordinate change preserving the Walker form. The component expressions
// give the source (old) coordinates as functions of the target (tilde)
// coordinates, which is how every closed-form transform here is presented:
//   v_old = v + f(x, y, u),  x_old^i = x_old^i(x, y, u),  u_old = u + c.
struct ClosedFormTransform {
    Chart target_chart;      // tilde chart (names v, x, y, u again)
    std::array<Expr, 4> map; // old (v, x, y, u) in terms of the target coords

    Point apply(const Point& p) const;             // target point -> source point
    Mat<4> jacobian(const Point& p) const;         // d old^c / d new^a at p
};

// Validates the Walker shape: d_v map[0] = 1, map[1..2] v-free, map[3] = u + c.
ClosedFormTransform make_closed_form(Chart target_chart, Expr v_map, Expr x_map, Expr y_map,
                                     Expr u_map);

// ---------------------------------------------------------------------------
// v-shift gauge transform: v -> v + H1/(2 Lambda) kills the linear-in-v part
// of H and updates A and H0 by the induced terms.

WalkerMetric vshift_remove_H1(const WalkerMetric& w);

// The closed-form transform realizing the shift (old v = v - H1/(2 Lambda)).
ClosedFormTransform vshift_transform(const WalkerMetric& w);

// ---------------------------------------------------------------------------
// The flow transform removing A: the inverse transform solves
//   d x^i(u) / du = W^i(x(u), u),  W^i = -A_j h^{ij},  x^i(u0) = xtilde^i.

struct FlowTransform {
    Expr W1, W2;       // in (x, y, u)
    double u0 = 0.0;
    DomainBox box;     // trajectories must stay inside (x, y intervals)
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
};

// W computed symbolically from the Walker data.
FlowTransform flow_from_walker(const WalkerMetric& w, double u0);

struct FlowResult {
    double x = 0.0, y = 0.0;
    Mat<2> jacobian{}; // d(x,y)/d(xtilde,ytilde), from the variational equations
    long steps = 0;
};

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)); the Jacobian is
// integrated alongside via dJ/du = (dW/dx) J. `params` supplies parameter
// bindings (e.g. Lambda) for W.
FlowResult integrate_flow(const FlowTransform& t, double x0, double y0, double u_target,
                          const std::vector<std::pair<std::string, double>>& params);

// ---------------------------------------------------------------------------

// g̃_ab(p) = dPhi^c/dx^a g_cd(Phi(p)) dPhi^d/dx^b for a target-chart point p.
Mat<4> pullback_at(const MetricTensor& g, const ClosedFormTransform& t, const Point& p);

// Flow version; v and u map identically, the x rows use the variational
// Jacobian and dx^i/du = W^i along the trajectory.
Mat<4> pullback_at(const MetricTensor& g, const FlowTransform& t, const Point& p);

// ---------------------------------------------------------------------------
// Isometry criterion for two u-families with h1(u0) = h2(u0): the assembled
// metrics are isometric (for some H0) iff the families agree for all u.

struct IsometryVerdict {
    bool equal_family = false;
    double max_deviation = 0.0;
    Point witness; // first sampled point beyond tolerance when distinct
};

IsometryVerdict family_isometry_test(const MetricTensor& h1, const MetricTensor& h2, double u0,
                                     const Sampler& sampler, long n, double tol = 1e-8);

} // namespace wv
