#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wv/catalog.hpp"
#include "wv/killing.hpp"
#include "wv/parse.hpp"
#include "wv/rng.hpp"
#include "wv/walker.hpp"

using namespace wv;

namespace {

Sampler entry_sampler(const CatalogEntry& e, std::uint64_t seed = kDefaultSeed) {
    return Sampler(e.metric.chart.box, seed, {{"Lambda", e.default_lambda}});
}

} // namespace

TEST_CASE("every listed field is Killing for its example") {
    for (const char* name : {"example1", "example2", "example3", "example4", "minkowski"}) {
        CAPTURE(name);
        const CatalogEntry& e = catalog_get(name);
        REQUIRE(!e.killing_fields.empty());
        MetricTensor g = assemble(e.metric);
        Sampler s = entry_sampler(e);
        for (const VectorField& k : e.killing_fields) {
            CAPTURE(k.label);
            CHECK(killing_residual(g, k, s, 200).max_value < 1e-9);
        }
    }
}

TEST_CASE("the zero field has zero residual; a non-Killing field is loud") {
    const CatalogEntry& e = catalog_get("example1");
    MetricTensor g = assemble(e.metric);
    Sampler s = entry_sampler(e);
    VectorField zero{"zero", {rational(0), rational(0), rational(0), rational(0)}};
    CHECK(killing_residual(g, zero, s, 100).max_value == 0.0);

    VectorField bad{"d_x", {rational(0), rational(1), rational(0), rational(0)}};
    CHECK(killing_residual(g, bad, s, 100).max_value > 1e-2);
}

TEST_CASE("lie brackets and structure constants of the example-1 algebra") {
    const CatalogEntry& e = catalog_get("example1");
    const Chart& chart = e.metric.chart;
    const auto& K = e.killing_fields; // {d_y, scaling, d_u - 2 L x^3 d_y}

    // [d_y, K3] = 0
    VectorField b02 = lie_bracket(K[0], K[2], chart);
    for (const Expr& c : b02.comp) CHECK(c->is_zero());

    // [d_y, scaling] = d_y
    VectorField b01 = lie_bracket(K[0], K[1], chart);
    Point p;
    p.set("v", 0.2);
    p.set("x", 1.1);
    p.set("y", -0.4);
    p.set("u", 0.3);
    p.set("Lambda", -1.0);
    CHECK(evaluate(b01.comp[2], p) == doctest::Approx(1.0));
    CHECK(evaluate(b01.comp[0], p) == doctest::Approx(0.0));

    // [scaling, K3] = 2 K3
    VectorField b12 = lie_bracket(K[1], K[2], chart);
    for (int a = 0; a < 4; ++a)
        CHECK(evaluate(b12.comp[a], p) == doctest::Approx(2.0 * evaluate(K[2].comp[a], p)));
}

TEST_CASE("algebra certificates close with the expected structure constants") {
    {
        const CatalogEntry& e = catalog_get("example1");
        AlgebraReport rep =
            algebra_certificate(assemble(e.metric), e.killing_fields, entry_sampler(e), 200);
        CHECK(rep.certified());
        CHECK(rep.field_residuals.size() == 3);
        for (const BracketFit& f : rep.brackets) {
            CHECK(f.fit_residual < 1e-8);
            if (f.i == 1 && f.j == 2) {
                CHECK(f.coefficients[2] == doctest::Approx(2.0).epsilon(1e-9));
                CHECK(std::fabs(f.coefficients[0]) < 1e-9);
            }
        }
    }
    {
        const CatalogEntry& e = catalog_get("example2");
        AlgebraReport rep =
            algebra_certificate(assemble(e.metric), e.killing_fields, entry_sampler(e), 200);
        CHECK(rep.certified());
        // [scaling, K2] = 3 K2
        REQUIRE(rep.brackets.size() == 1);
        CHECK(rep.brackets[0].coefficients[1] == doctest::Approx(3.0).epsilon(1e-8));
    }
    {
        const CatalogEntry& e = catalog_get("example3");
        AlgebraReport rep =
            algebra_certificate(assemble(e.metric), e.killing_fields, entry_sampler(e), 200);
        CHECK(rep.certified());
        // abelian pair
        REQUIRE(rep.brackets.size() == 1);
        for (double c : rep.brackets[0].coefficients) CHECK(std::fabs(c) < 1e-9);
    }
    {
        // a single field is trivially closed
        const CatalogEntry& e = catalog_get("example1");
        std::vector<VectorField> single = {e.killing_fields[0]};
        AlgebraReport rep = algebra_certificate(assemble(e.metric), single, entry_sampler(e), 100);
        CHECK(rep.certified());
        CHECK(rep.brackets.empty());
    }
}

TEST_CASE("bracket antisymmetry and Jacobi identity hold numerically") {
    const CatalogEntry& e = catalog_get("example1");
    const Chart& chart = e.metric.chart;
    const auto& K = e.killing_fields;
    Sampler s = entry_sampler(e);

    VectorField b12 = lie_bracket(K[1], K[2], chart);
    VectorField b21 = lie_bracket(K[2], K[1], chart);
    VectorField j1 = lie_bracket(lie_bracket(K[0], K[1], chart), K[2], chart);
    VectorField j2 = lie_bracket(lie_bracket(K[1], K[2], chart), K[0], chart);
    VectorField j3 = lie_bracket(lie_bracket(K[2], K[0], chart), K[1], chart);
    for (int i = 0; i < 50; ++i) {
        Point p = s.point(i);
        for (int a = 0; a < 4; ++a) {
            CHECK(std::fabs(evaluate(b12.comp[a], p) + evaluate(b21.comp[a], p)) < 1e-12);
            CHECK(std::fabs(evaluate(j1.comp[a], p) + evaluate(j2.comp[a], p) +
                            evaluate(j3.comp[a], p)) < 1e-8);
        }
    }
}

TEST_CASE("one-form check separates the Killing families from the rest") {
    auto sphere_names = NameSet({"v", "x", "y", "u"}, {"Lambda"});
    auto pf = [&](const char* f, Signature sig) {
        return PotentialFunction{parse(f, sphere_names), sig};
    };

    struct Case {
        const char* f;
        Signature sig;
        bool killing;
    };
    const Case cases[] = {
        {"1/x", Signature::Hyperbolic, true},
        {"y/x", Signature::Hyperbolic, true},
        {"(x^2+y^2)/x", Signature::Hyperbolic, true},
        {"x^2", Signature::Hyperbolic, false},
        {"x^2*y", Signature::Hyperbolic, false},
        {"sin(x)*sin(y)", Signature::Sphere, true},
        {"sin(x)*cos(y)", Signature::Sphere, true},
        {"cos(x)", Signature::Sphere, true},
        {"ln(tan(x/2))*cos(x) + 1", Signature::Sphere, false},
        {"y*cos(x)", Signature::Sphere, false},
    };
    for (const Case& c : cases) {
        CAPTURE(c.f);
        double r = 0;
        bool ok = killing_family_check(pf(c.f, c.sig), kDefaultSeed, 300, kKillingTol, &r);
        CHECK(ok == c.killing);
        if (!c.killing) CHECK(r > 1e-3); // negatives stay far from the tolerance
    }
}

TEST_CASE("lewandowski catalog entries carry Killing one-forms") {
    for (const char* name : {"lewandowski-phi-1", "lewandowski-phi-z", "lewandowski-phi-z2"}) {
        CAPTURE(name);
        const CatalogEntry& e = catalog_get(name);
        REQUIRE(e.killing_oneform.has_value());
        MetricTensor h = surface_metric(e.metric);
        Sampler s(h.chart().box, kDefaultSeed, {{"Lambda", e.default_lambda}});
        double r = 0;
        CHECK(killing_oneform_check(h, *e.killing_oneform, s, 300, kKillingTol, &r));
    }
}
