#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wv/curvature.hpp"
#include "wv/parse.hpp"
#include "wv/rng.hpp"

using namespace wv;

namespace {

Chart spacetime_chart() {
    Chart c;
    c.coords = {"v", "x", "y", "u"};
    c.box.set("v", -1, 1);
    c.box.set("x", 0.3, 2.0);
    c.box.set("y", -1, 1);
    c.box.set("u", -0.5, 0.5);
    c.params = {"Lambda"};
    return c;
}

MetricTensor walker_metric(const char* h11, const char* h12, const char* h22, const char* a1,
                           const char* a2, const char* H, Chart chart = spacetime_chart()) {
    auto ns = chart.names();
    // order (v, x, y, u): g_vu = 1, g_ij = h_ij, g_iu = A_i, g_uu = H
    std::vector<Expr> upper = {
        rational(0), rational(0),    rational(0),    rational(1),      // v row
        parse(h11, ns), parse(h12, ns), parse(a1, ns),                 // x row
        parse(h22, ns), parse(a2, ns),                                 // y row
        parse(H, ns),                                                  // u row
    };
    return metric_from_upper(chart, upper);
}

Point pt4(double v, double x, double y, double u, double lambda) {
    Point p;
    p.set("v", v);
    p.set("x", x);
    p.set("y", y);
    p.set("u", u);
    p.set("Lambda", lambda);
    return p;
}

} // namespace

TEST_CASE("Minkowski in null coordinates is flat") {
    MetricTensor g = walker_metric("1", "0", "1", "0", "0", "0");
    CurvatureOperator op(g);
    CurvatureBundle b = op.at(pt4(0.3, 1.0, -0.4, 0.1, 0.0));
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(b.gamma[k][i][j] == 0.0);
    for (int l = 0; l < 4; ++l)
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) CHECK(b.riem[l][k][i][j] == 0.0);
    CHECK(op.einstein_residual_rel(pt4(0.3, 1.0, -0.4, 0.1, 0.0), 0.0) == 0.0);
}

TEST_CASE("unit sphere: Ric = h") {
    Chart c;
    c.coords = {"x", "y"};
    c.box.set("x", 0.4, std::acos(-1.0) - 0.4);
    c.box.set("y", -1, 1);
    auto ns = c.names();
    MetricTensor h = metric_from_upper(c, {parse("1", ns), parse("0", ns), parse("sin(x)^2", ns)});
    CurvatureOperator op(h);
    Point p;
    p.set("x", 1.0);
    p.set("y", 0.3);
    CurvatureBundle b = op.at(p);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::fabs(b.ric[i][j] - b.g[i][j]) < 1e-9);
    // Gauss curvature 1 => scalar 2
    CHECK(b.scalar == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("hyperbolic half-plane: Ric = Lambda h") {
    Chart c;
    c.coords = {"x", "y"};
    c.box.set("x", 0.3, 2.0);
    c.box.set("y", -1, 1);
    c.params = {"Lambda"};
    auto ns = c.names();
    MetricTensor h = metric_from_upper(
        c, {parse("1/(-Lambda*x^2)", ns), parse("0", ns), parse("1/(-Lambda*x^2)", ns)});
    CurvatureOperator op(h);
    Point p;
    p.set("x", 0.7);
    p.set("y", 0.3);
    p.set("Lambda", -1.0);
    CurvatureBundle b = op.at(p);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::fabs(b.ric[i][j] - (-1.0) * b.g[i][j]) < 1e-9);

    // also for Lambda = -2
    p.set("Lambda", -2.0);
    b = op.at(p);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::fabs(b.ric[i][j] - (-2.0) * b.g[i][j]) < 1e-9);
}

TEST_CASE("pp-waves: harmonic profile is vacuum, non-harmonic is not") {
    MetricTensor harmonic = walker_metric("1", "0", "1", "0", "0", "x^2 - y^2");
    MetricTensor bad = walker_metric("1", "0", "1", "0", "0", "x^2");
    CurvatureOperator op_h(harmonic), op_b(bad);
    Sampler s(op_h.metric().chart().box, kDefaultSeed, {{"Lambda", 0.0}});
    auto r = max_einstein_residual(op_h, 0.0, s, 200);
    CHECK(r.max_value < 1e-12);
    auto rb = max_einstein_residual(op_b, 0.0, s, 200);
    CHECK(rb.max_value > 1e-3);
}

TEST_CASE("curvature symmetries, Bianchi and Weyl traces hold on samples") {
    // a non-trivial Einstein example: H = Lambda v^2 with hyperbolic h
    MetricTensor g = walker_metric("1/(-Lambda*x^2)", "0", "1/(-Lambda*x^2)", "0", "0",
                                   "Lambda*v^2");
    CurvatureOperator op(g);
    Sampler s(g.chart().box, kDefaultSeed, {{"Lambda", -1.0}});
    for (int i = 0; i < 100; ++i) {
        CurvatureBundle b = op.at(s.point(i));
        CHECK(curvature_symmetry_residual(b) < 1e-9);
        CHECK(weyl_trace_residual(b) < 1e-9);
    }
    // trace check: g^{ab} Ric_ab = 4 Lambda
    for (int i = 0; i < 20; ++i) {
        CurvatureBundle b = op.at(s.point(i));
        CHECK(std::fabs(b.scalar - 4.0 * (-1.0)) < 1e-8);
    }
}

TEST_CASE("coordinate ordering does not change scalar outputs") {
    // same geometry entered with permuted chart order (x, v, u, y)
    Chart c1 = spacetime_chart();
    Chart c2;
    c2.coords = {"x", "v", "u", "y"};
    c2.box = c1.box;
    c2.params = {"Lambda"};
    auto n1 = c1.names();
    auto n2 = c2.names();

    MetricTensor g1 = walker_metric("1/(-Lambda*x^2)", "0", "1/(-Lambda*x^2)", "0", "0",
                                    "Lambda*v^2 - Lambda*x^4");
    // rows/cols in (x, v, u, y) order
    Expr z = rational(0), one = rational(1);
    Expr hxx = parse("1/(-Lambda*x^2)", n2);
    Expr H = parse("Lambda*v^2 - Lambda*x^4", n2);
    std::vector<Expr> upper = {
        hxx, z, z,   z,   // x row: g_xx, g_xv, g_xu, g_xy
        z,   one, z,      // v row: g_vv, g_vu, g_vy
        H,   z,           // u row: g_uu, g_uy
        hxx,              // y row
    };
    MetricTensor g2 = metric_from_upper(c2, upper);

    Point p = pt4(0.2, 0.9, -0.5, 0.3, -1.0);
    CurvatureBundle b1 = CurvatureOperator(g1).at(p);
    CurvatureBundle b2 = CurvatureOperator(g2).at(p);
    CHECK(b1.scalar == doctest::Approx(b2.scalar).epsilon(1e-12));
}
