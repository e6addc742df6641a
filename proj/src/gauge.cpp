#include "wv/gauge.hpp"

#include <cmath>

namespace wv {

namespace {

const char* kCoords[4] = {"v", "x", "y", "u"};

} // namespace

Point ClosedFormTransform::apply(const Point& p) const {
    Point out;
    for (int c = 0; c < 4; ++c) out.set(kCoords[c], evaluate(map[static_cast<std::size_t>(c)], p));
    // parameters ride along unchanged
    for (const auto& [name, value] : p.vals) {
        bool is_coord = false;
        for (const char* cn : kCoords) is_coord = is_coord || name == cn;
        if (!is_coord) out.set(name, value);
    }
    return out;
}

Mat<4> ClosedFormTransform::jacobian(const Point& p) const {
    Mat<4> j{};
    for (int c = 0; c < 4; ++c)
        for (int a = 0; a < 4; ++a)
            j[c][a] = evaluate(differentiate(map[static_cast<std::size_t>(c)], kCoords[a]), p);
    return j;
}

ClosedFormTransform make_closed_form(Chart target_chart, Expr v_map, Expr x_map, Expr y_map,
                                     Expr u_map) {
    if (!differentiate(v_map, "v")->is_one())
        throw Error("closed-form transform must shift v by a v-independent function");
    if (depends_on(x_map, "v") || depends_on(y_map, "v"))
        throw Error("closed-form transform: x, y maps must not depend on v");
    if (!differentiate(u_map, "u")->is_one() || depends_on(u_map, "v") ||
        depends_on(u_map, "x") || depends_on(u_map, "y"))
        throw Error("closed-form transform must shift u by a constant");
    ClosedFormTransform t;
    t.target_chart = std::move(target_chart);
    t.map = {std::move(v_map), std::move(x_map), std::move(y_map), std::move(u_map)};
    return t;
}

WalkerMetric vshift_remove_H1(const WalkerMetric& w) {
    if (!w.has_ansatz()) throw Error("v-shift needs the Einstein ansatz (H0, H1)");
    Expr lam = param("Lambda");
    Expr H1 = *w.H1;
    if (H1->is_zero()) return w;
    Expr shift = H1 / (rational(2) * lam); // v_old = v_new - shift
    Expr A1 = w.A1 - differentiate(shift, "x");
    Expr A2 = w.A2 - differentiate(shift, "y");
    Expr H0 = *w.H0 - (H1 * H1) / (rational(4) * lam) - differentiate(H1, "u") / lam;
    return walker_einstein(w.chart, w.h11, w.h12, w.h22, A1, A2, H0);
}

ClosedFormTransform vshift_transform(const WalkerMetric& w) {
    if (!w.has_ansatz()) throw Error("v-shift needs the Einstein ansatz (H0, H1)");
    Expr lam = param("Lambda");
    Expr shift = (*w.H1) / (rational(2) * lam);
    return make_closed_form(w.chart, var("v") - shift, var("x"), var("y"), var("u"));
}

FlowTransform flow_from_walker(const WalkerMetric& w, double u0) {
    Expr det = w.h11 * w.h22 - w.h12 * w.h12;
    Expr hinv11 = w.h22 / det, hinv12 = -(w.h12 / det), hinv22 = w.h11 / det;
    FlowTransform t;
    t.W1 = -(w.A1 * hinv11 + w.A2 * hinv12);
    t.W2 = -(w.A1 * hinv12 + w.A2 * hinv22);
    t.u0 = u0;
    // trajectory corridor: the sampling box widened by 8x around its center,
    // for the coordinates the field actually depends on; genuine blow-ups
    // still exit it in finite time
    for (const char* n : {"x", "y"}) {
        if (!depends_on(t.W1, n) && !depends_on(t.W2, n)) continue;
        if (const Interval* iv = w.chart.box.find(n)) {
            double mid = 0.5 * (iv->lo + iv->hi);
            double hw = 8.0 * 0.5 * (iv->hi - iv->lo);
            t.box.set(n, mid - hw, mid + hw);
        }
    }
    return t;
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[7] = {35.0 / 384,      0.0,  500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600,  0.0,        7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

struct FlowSystem {
    const FlowTransform& t;
    Point scratch;
    Expr dW[2][2]; // dW[i][j] = d W^i / d x^j

    FlowSystem(const FlowTransform& tt,
               const std::vector<std::pair<std::string, double>>& params)
        : t(tt) {
        scratch.set("x", 0.0);
        scratch.set("y", 0.0);
        scratch.set("u", 0.0);
        for (const auto& [n, v] : params) scratch.set(n, v);
        const Expr* W[2] = {&t.W1, &t.W2};
        const char* xs[2] = {"x", "y"};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) dW[i][j] = differentiate(*W[i], xs[j]);
    }

    // state: (x, y, J11, J12, J21, J22)
    void rhs(double u, const double s[6], double out[6]) {
        scratch.set("x", s[0]);
        scratch.set("y", s[1]);
        scratch.set("u", u);
        if (const Interval* ix = t.box.find("x"))
            if (s[0] < ix->lo || s[0] > ix->hi) throw EvalError("flow left the domain in x");
        if (const Interval* iy = t.box.find("y"))
            if (s[1] < iy->lo || s[1] > iy->hi) throw EvalError("flow left the domain in y");
        out[0] = evaluate(t.W1, scratch);
        out[1] = evaluate(t.W2, scratch);
        double d[2][2];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) d[i][j] = evaluate(dW[i][j], scratch);
        // dJ/du = dW J
        out[2] = d[0][0] * s[2] + d[0][1] * s[4];
        out[3] = d[0][0] * s[3] + d[0][1] * s[5];
        out[4] = d[1][0] * s[2] + d[1][1] * s[4];
        out[5] = d[1][0] * s[3] + d[1][1] * s[5];
    }
};

} // namespace

FlowResult integrate_flow(const FlowTransform& t, double x0, double y0, double u_target,
                          const std::vector<std::pair<std::string, double>>& params) {
    FlowSystem sys(t, params);
    double s[6] = {x0, y0, 1.0, 0.0, 0.0, 1.0};
    double u = t.u0;
    const double span = u_target - t.u0;
    FlowResult res;
    if (span == 0.0) {
        res.x = x0;
        res.y = y0;
        res.jacobian = {{{1, 0}, {0, 1}}};
        return res;
    }
    const double dir = span > 0 ? 1.0 : -1.0;
    double h = dir * std::min(0.1, std::fabs(span));
    const double hmin = 1e-14 * std::max(1.0, std::fabs(span));
    long steps = 0;
    const long max_steps = 200000;

    double k[7][6], stage[6], err[6], snew[6];
    while (dir * (u_target - u) > 0) {
        bool final_step = false;
        if (std::fabs(h) >= std::fabs(u_target - u)) {
            h = u_target - u;
            final_step = true;
        }
        if (std::fabs(h) < hmin) throw EvalError("flow integration step-size underflow");
        if (++steps > max_steps) throw EvalError("flow integration exceeded step budget");

        sys.rhs(u, s, k[0]);
        bool rejected = false;
        for (int st = 1; st < 7; ++st) {
            for (int d = 0; d < 6; ++d) {
                double acc = 0.0;
                for (int j = 0; j < st; ++j) acc += kA[st][j] * k[j][d];
                stage[d] = s[d] + h * acc;
            }
            sys.rhs(u + kC[st] * h, stage, k[st]);
        }
        for (int d = 0; d < 6; ++d) {
            double acc5 = 0.0, acc4 = 0.0;
            for (int j = 0; j < 7; ++j) {
                acc5 += kB5[j] * k[j][d];
                acc4 += kB4[j] * k[j][d];
            }
            snew[d] = s[d] + h * acc5;
            err[d] = h * (acc5 - acc4);
        }
        double norm = 0.0;
        for (int d = 0; d < 6; ++d) {
            double sc = t.abs_tol + t.rel_tol * std::max(std::fabs(s[d]), std::fabs(snew[d]));
            double e = err[d] / sc;
            norm += e * e;
        }
        norm = std::sqrt(norm / 6.0);
        if (norm <= 1.0) {
            u = final_step ? u_target : u + h; // exact landing on the endpoint
            for (int d = 0; d < 6; ++d) s[d] = snew[d];
        } else {
            rejected = true;
        }
        double factor = norm > 0 ? 0.9 * std::pow(norm, -0.2) : 5.0;
        factor = std::min(5.0, std::max(0.2, factor));
        if (rejected) factor = std::min(factor, 1.0);
        h *= factor;
    }
    res.x = s[0];
    res.y = s[1];
    res.jacobian = {{{s[2], s[3]}, {s[4], s[5]}}};
    res.steps = steps;
    return res;
}

Mat<4> pullback_at(const MetricTensor& g, const ClosedFormTransform& t, const Point& p) {
    Point old_point = t.apply(p);
    Mat<4> J = t.jacobian(p);
    Mat<4> G{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) G[i][j] = evaluate(g.at(i, j), old_point);
    Mat<4> out{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double s = 0.0;
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) s += J[c][a] * G[c][d] * J[d][b];
            out[a][b] = s;
        }
    return out;
}

Mat<4> pullback_at(const MetricTensor& g, const FlowTransform& t, const Point& p) {
    std::vector<std::pair<std::string, double>> params;
    for (const auto& [name, value] : p.vals)
        if (name != "v" && name != "x" && name != "y" && name != "u")
            params.emplace_back(name, value);

    const double u = p.get("u");
    FlowResult f = integrate_flow(t, p.get("x"), p.get("y"), u, params);

    Point old_point = p;
    old_point.set("x", f.x);
    old_point.set("y", f.y);

    // W at the endpoint gives d x^i / d u
    Point w_point = old_point;
    double W1 = evaluate(t.W1, w_point);
    double W2 = evaluate(t.W2, w_point);

    Mat<4> J{}; // J[c][a] = d old^c / d new^a, order (v, x, y, u)
    J[0][0] = 1.0;
    J[1][1] = f.jacobian[0][0];
    J[1][2] = f.jacobian[0][1];
    J[2][1] = f.jacobian[1][0];
    J[2][2] = f.jacobian[1][1];
    J[1][3] = W1;
    J[2][3] = W2;
    J[3][3] = 1.0;

    Mat<4> G{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) G[i][j] = evaluate(g.at(i, j), old_point);
    Mat<4> out{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double s = 0.0;
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) s += J[c][a] * G[c][d] * J[d][b];
            out[a][b] = s;
        }
    return out;
}

IsometryVerdict family_isometry_test(const MetricTensor& h1, const MetricTensor& h2, double u0,
                                     const Sampler& sampler, long n, double tol) {
    if (h1.dim() != 2 || h2.dim() != 2) throw Error("family test needs surface metrics");

    auto deviation = [&](const Point& p) {
        double scale = 1.0, dev = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = i; j < 2; ++j) {
                double a = evaluate(h1.at(i, j), p);
                double b = evaluate(h2.at(i, j), p);
                scale = std::max(scale, std::max(std::fabs(a), std::fabs(b)));
                dev = std::max(dev, std::fabs(a - b));
            }
        return dev / scale;
    };

    // precondition: the families agree at u0
    MaxReduceResult pre = sample_max(sampler, std::min<long>(n, 200), [&](const Point& p) {
        Point q = p;
        q.set("u", u0);
        return deviation(q);
    });
    if (pre.max_value > tol)
        throw DomainError("initial metrics differ at u0 - align the charts first");

    MaxReduceResult r = sample_max(sampler, n, deviation);
    IsometryVerdict v;
    v.max_deviation = r.max_value;
    v.equal_family = r.max_value <= tol;
    if (!v.equal_family) v.witness = r.arg_point;
    return v;
}

} // namespace wv
