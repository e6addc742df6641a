#include "wv/catalog.hpp"

#include <cmath>
#include <map>

#include "wv/parse.hpp"

namespace wv {

namespace {

const double kPi = std::acos(-1.0);

NameSet walker_names() { return NameSet({"v", "x", "y", "u"}, {"Lambda"}); }

Expr W(const char* s) { return parse(s, walker_names()); }

DomainBox hyperbolic_box() {
    DomainBox b;
    b.set("v", -1, 1);
    b.set("x", 0.3, 2.0);
    b.set("y", -1, 1);
    b.set("u", -0.5, 0.5);
    return b;
}

DomainBox sphere_box() {
    DomainBox b;
    b.set("v", -1, 1);
    b.set("x", 0.4, kPi - 0.4);
    b.set("y", -1, 1);
    b.set("u", -0.5, 0.5);
    return b;
}

DomainBox generic_box() {
    DomainBox b;
    b.set("v", -1, 1);
    b.set("x", -1, 1);
    b.set("y", -1, 1);
    b.set("u", -0.5, 0.5);
    return b;
}

VectorField field(const char* label, const char* cv, const char* cx, const char* cy,
                  const char* cu) {
    VectorField k;
    k.label = label;
    k.comp = {W(cv), W(cx), W(cy), W(cu)};
    return k;
}

ClosedFormTransform transform(const Chart& chart, const char* v, const char* x, const char* y,
                              const char* u) {
    return make_closed_form(chart, W(v), W(x), W(y), W(u));
}

using Registry = std::map<std::string, CatalogEntry>;

void add_minkowski(Registry& r) {
    CatalogEntry e;
    e.name = "minkowski";
    e.provenance = "flat space in null coordinates; h = I, A = 0, H = 0";
    e.metric = walker_general(walker_chart(generic_box()), W("1"), W("0"), W("1"), W("0"),
                              W("0"), W("0"));
    e.default_lambda = 0.0;
    e.einstein = true;
    e.reduced_system = true;
    e.killing_fields = {field("d_v", "1", "0", "0", "0"), field("d_x", "0", "1", "0", "0"),
                        field("d_y", "0", "0", "1", "0"), field("d_u", "0", "0", "0", "1")};
    r[e.name] = e;
}

void add_ppwaves(Registry& r) {
    CatalogEntry e;
    e.name = "ppwave-harmonic";
    e.provenance = "pp-wave with harmonic profile H = Re((x+iy)^2) = x^2 - y^2; vacuum";
    e.metric = walker_general(walker_chart(generic_box()), W("1"), W("0"), W("1"), W("0"),
                              W("0"), W("x^2 - y^2"));
    e.default_lambda = 0.0;
    e.einstein = true;
    r[e.name] = e;

    CatalogEntry n;
    n.name = "ppwave-nonharmonic";
    n.provenance = "negative control: H = x^2 has (d_x^2 + d_y^2)H = 2, not vacuum";
    n.metric = walker_general(walker_chart(generic_box()), W("1"), W("0"), W("1"), W("0"),
                              W("0"), W("x^2"));
    n.default_lambda = 0.0;
    n.einstein = false;
    r[n.name] = n;
}

void add_plane_wave_rosen(Registry& r) {
    CatalogEntry e;
    e.name = "plane-wave-rosen";
    e.provenance =
        "vacuum plane wave in Rosen form, h = cos^2(u) dx^2 + cosh^2(u) dy^2 (a''/a + b''/b = 0)";
    DomainBox b = generic_box();
    b.set("u", -1, 1);
    e.metric = walker_general(walker_chart(b), W("cos(u)^2"), W("0"),
                              W("(1/2*(exp(u) + exp(-u)))^2"), W("0"), W("0"), W("0"));
    e.default_lambda = 0.0;
    e.einstein = true;
    r[e.name] = e;
}

void add_kerr_goldberg(Registry& r) {
    CatalogEntry e;
    e.name = "kerr-goldberg";
    e.provenance =
        "vacuum family h = I, A = (A1, 0) with harmonic A1, H = -(d_x A1) v + H0; "
        "instance A1 = x^2 - y^2 with H0 = 2/3 (y^4 - x^4) solving the Poisson equation";
    e.metric = walker_general(walker_chart(generic_box()), W("1"), W("0"), W("1"),
                              W("x^2 - y^2"), W("0"), W("-(2*x*v) + 2/3*(y^4 - x^4)"));
    e.default_lambda = 0.0;
    e.einstein = true;
    r[e.name] = e;
}

void add_product(Registry& r) {
    CatalogEntry e;
    e.name = "product-decomposable";
    e.provenance = "product of two constant-curvature factors; T = 0, decomposable control";
    e.metric = walker_einstein(walker_chart(sphere_box()), W("1/Lambda"), W("0"),
                               W("sin(x)^2/Lambda"), W("0"), W("0"), W("0"));
    e.default_lambda = 1.0;
    e.einstein = true;
    e.reduced_system = true;
    e.det_t = W("0");
    r[e.name] = e;
}

void add_example1(Registry& r) {
    // transformed: A = 0, h depends on u (profile c(u) = 1, b(u) = u)
    CatalogEntry t;
    t.name = "example1";
    t.provenance =
        "hyperbolic family, profile c(u) = 1, b(u) = u; det T closed form verified against "
        "the curvature pipeline (note: it is strictly negative for x > 0, so the whole box "
        "is Petrov type II)";
    t.metric = example1_transformed_with_profile(W("1"), W("u"));
    t.default_lambda = -1.0;
    t.einstein = true;
    t.reduced_system = true;
    t.det_t = W("-(9*Lambda^4*x^4*(x^4 + v^2))");
    t.det_t_negative = true;
    t.killing_fields = {
        field("d_y", "0", "0", "1", "0"),
        field("scaling", "2*v", "x", "y", "-(2*u)"),
        field("d_u - 2 Lambda x^3 d_y", "0", "0", "-(2*Lambda*x^3)", "1"),
    };
    t.gauge_partner = "example1-original";
    t.to_original = transform(t.metric.chart, "v", "x", "y + 2*Lambda*u*x^3", "u");
    r[t.name] = t;

    CatalogEntry o;
    o.name = "example1-original";
    o.provenance = "hyperbolic chart with A = 2 x dy from f = x^2, H0 = -Lambda x^4";
    o.metric = example1_original_with_profile(W("1"));
    o.default_lambda = -1.0;
    o.einstein = true;
    o.potential = PotentialFunction{W("x^2"), Signature::Hyperbolic};
    o.potential_H0 = W("-(Lambda*x^4)");
    o.gauge_partner = "example1";
    r[o.name] = o;
}

void add_example2(Registry& r) {
    DomainBox box = hyperbolic_box();
    Constraint c;
    c.name = "rho-away-from-zero";
    c.expr = W("1 + 3*Lambda*u*x^3");
    c.margin = 0.1;
    c.absolute = true;
    box.constraints.push_back(c);

    CatalogEntry t;
    t.name = "example2";
    t.provenance = "hyperbolic family from f = x^2 y; det T < 0 at generic points (type II); the "
        "pipeline finds an exact degenerate locus on the measure-zero set v = y = u = 0";
    t.metric = walker_einstein(
        walker_chart(box),
        W("(36*Lambda^2*x^2*y^2*u^2 + 1/(x^2*(1 + 3*Lambda*u*x^3)^2))/(-Lambda)"),
        W("6*Lambda*(1 + 3*Lambda*u*x^3)*y*u/(-Lambda)"),
        W("(1 + 3*Lambda*u*x^3)^2/(x^2*(-Lambda))"),
        W("0"), W("0"),
        W("Lambda*(3*x^4*y^2 + x^6/(1 + 3*Lambda*u*x^3)^2)"));
    t.default_lambda = -1.0;
    t.einstein = true;
    t.reduced_system = true;
    t.det_t_negative = true;
    t.killing_fields = {
        field("scaling", "3*v", "x", "y", "-(3*u)"),
        field("d_u + Lambda x^4 d_x - 2 Lambda x^3 y d_y", "0", "Lambda*x^4",
              "-(2*Lambda*x^3*y)", "1"),
    };
    t.gauge_partner = "example2-original";
    t.to_original = transform(t.metric.chart, "v", "x*(1 + 3*Lambda*u*x^3)^(-1/3)",
                              "y*(1 + 3*Lambda*u*x^3)^(2/3)", "u");
    r[t.name] = t;

    CatalogEntry o;
    o.name = "example2-original";
    o.provenance =
        "hyperbolic chart with A = -x^2 dx + 2 x y dy from f = x^2 y; H0 = -Lambda x^4 y^2 "
        "(the quadratic in y is required by the reduction equations and by the transformed "
        "du^2 coefficient)";
    o.metric = walker_einstein(walker_chart(hyperbolic_box()), W("1/(-(Lambda*x^2))"), W("0"),
                               W("1/(-(Lambda*x^2))"), W("-(x^2)"), W("2*x*y"),
                               W("-(Lambda*x^4*y^2)"));
    o.default_lambda = -1.0;
    o.einstein = true;
    o.potential = PotentialFunction{W("x^2*y"), Signature::Hyperbolic};
    o.potential_H0 = W("-(Lambda*x^4*y^2)");
    o.gauge_partner = "example2";
    r[o.name] = o;
}

void add_example3(Registry& r) {
    CatalogEntry t;
    t.name = "example3";
    t.provenance = "spherical family from f = ln(tan(x/2)) cos(x) + 1";
    t.metric = walker_einstein(walker_chart(sphere_box()),
                               W("1/Lambda + 4*Lambda*u^2/sin(x)^4"),
                               W("2*u/sin(x)"),
                               W("sin(x)^2/Lambda"),
                               W("0"), W("0"),
                               W("-(Lambda*(1/sin(x)^2 + ln(cot(x/2))^2))"));
    t.default_lambda = 1.0;
    t.einstein = true;
    t.reduced_system = true;
    t.det_t = W("-(Lambda^4/sin(x)^4*(v^2 + (ln(cot(x/2))*cos(x) - 1)^2))");
    t.killing_fields = {
        field("d_y", "0", "0", "1", "0"),
        field("d_u + Lambda (cos x/sin^2 x - ln tan(x/2)) d_y", "0", "0",
              "Lambda*(cos(x)/sin(x)^2 - ln(tan(x/2)))", "1"),
    };
    t.gauge_partner = "example3-original";
    t.to_original = transform(t.metric.chart, "v", "x",
                              "y + Lambda*u*(ln(tan(x/2)) - cos(x)/sin(x)^2)", "u");
    r[t.name] = t;

    CatalogEntry o;
    o.name = "example3-original";
    o.provenance =
        "spherical chart; A = (cos(x) + ln(cot(x/2)) sin^2 x) dy is the one-form generated "
        "by f, and H0 = -Lambda f^2 is the du^2 coefficient that is the exact gauge image "
        "of the transformed chart (H0 = Lambda f is not Einstein)";
    o.metric = walker_einstein(walker_chart(sphere_box()), W("1/Lambda"), W("0"),
                               W("sin(x)^2/Lambda"), W("0"),
                               W("cos(x) + ln(cot(x/2))*sin(x)^2"),
                               W("-(Lambda*(ln(tan(x/2))*cos(x) + 1)^2)"));
    o.default_lambda = 1.0;
    o.einstein = true;
    o.potential = PotentialFunction{W("ln(tan(x/2))*cos(x) + 1"), Signature::Sphere};
    o.gauge_partner = "example3";
    r[o.name] = o;
}

void add_example4(Registry& r) {
    DomainBox box = sphere_box();
    Constraint c;
    c.name = "rho-bounded";
    c.expr = W("1 - abs(exp(-(Lambda*u))*cos(x))");
    c.margin = 0.1;
    box.constraints.push_back(c);

    const char* rho = "exp(-(Lambda*u))*cos(x)";
    auto fmt = [&](const char* pattern) {
        std::string s;
        for (const char* p = pattern; *p; ++p) {
            if (*p == '@')
                s += rho;
            else
                s += *p;
        }
        return W(s.c_str());
    };

    CatalogEntry t;
    t.name = "example4";
    t.provenance =
        "spherical family from f = y cos(x); the du^2 coefficient is the exact gauge image "
        "of the original chart, H0 = Lambda(-y^2 e^{2 Lambda u} + 1/2 ln((1-rho)/(1+rho)) - "
        "rho^2/(1-rho^2)), and reproduces the closed-form det T";
    t.metric = walker_einstein(
        walker_chart(box),
        fmt("exp(-(2*Lambda*u))*sin(x)^2/(Lambda*(1 - (@)^2))"),
        W("0"),
        fmt("exp(2*Lambda*u)*(1 - (@)^2)/Lambda"),
        W("0"), W("0"),
        fmt("Lambda*(-(y^2*exp(2*Lambda*u)) + 1/2*ln((1 - @)/(1 + @)) - (@)^2/(1 - (@)^2))"));
    t.default_lambda = 1.0;
    t.einstein = true;
    t.reduced_system = true;
    t.det_t = fmt("-(Lambda^4*(4*y^2*cos(x)^2 + (@ + 2*v)^2)/(4*(1 - (@)^2)^2))");
    t.killing_fields = {
        field("d_u - Lambda cot x d_x - Lambda y d_y", "0", "-(Lambda*cot(x))", "-(Lambda*y)",
              "1"),
    };
    t.gauge_partner = "example4-original";
    t.to_original = transform(t.metric.chart, "v", "arccos(exp(-(Lambda*u))*cos(x))",
                              "y*exp(Lambda*u)", "u");
    r[t.name] = t;

    CatalogEntry o;
    o.name = "example4-original";
    o.provenance = "spherical chart with A = -cot(x) dx - y sin^2(x) dy from f = y cos(x)";
    o.metric = walker_einstein(walker_chart(sphere_box()), W("1/Lambda"), W("0"),
                               W("sin(x)^2/Lambda"), W("-cot(x)"), W("-(y*sin(x)^2)"),
                               W("Lambda*(-(y^2*cos(x)^2) + ln(tan(x/2)))"));
    o.default_lambda = 1.0;
    o.einstein = true;
    o.potential = PotentialFunction{W("y*cos(x)"), Signature::Sphere};
    o.potential_H0 = W("Lambda*(-(y^2*cos(x)^2) + ln(tan(x/2)))");
    o.gauge_partner = "example4";
    r[o.name] = o;
}

void add_lewandowski(Registry& r) {
    struct Spec {
        const char* name;
        std::vector<long long> coeffs;
        double lambda;
    };
    for (const Spec& s : {Spec{"lewandowski-phi-1", {1}, -1.0},
                          Spec{"lewandowski-phi-z", {0, 1}, -1.0},
                          Spec{"lewandowski-phi-z2", {0, 0, 1}, 1.0}}) {
        CatalogEntry e;
        e.name = s.name;
        e.provenance = "Killing one-form from a holomorphic polynomial on the disc model";
        MetricTensor disc = disc_background(s.lambda);
        DomainBox box = disc.chart().box;
        box.set("v", -1, 1);
        auto A = lewandowski_oneform(s.coeffs, s.lambda);
        e.metric = walker_einstein(walker_chart(box), disc.at(0, 0), disc.at(0, 1),
                                   disc.at(1, 1), A[0], A[1], W("0"));
        e.default_lambda = s.lambda;
        e.einstein = false; // only the one-form construction is claimed here
        e.killing_oneform = A;
        r[e.name] = e;
    }
}

// quick self-test at registration: every entry must satisfy the claim it
// declares, on a small sample (the full-depth checks live in the test suite)
void self_test(const CatalogEntry& e) {
    const int n = 8;
    if (e.einstein) {
        CurvatureOperator op(assemble(e.metric));
        Sampler s(e.metric.chart.box, kDefaultSeed, {{"Lambda", e.default_lambda}});
        double r = max_einstein_residual(op, e.default_lambda, s, n).max_value;
        if (r > 1e-6)
            throw Error("catalog self-test failed for '" + e.name +
                        "': einstein residual " + std::to_string(r));
    }
    if (e.killing_oneform) {
        MetricTensor h = surface_metric(e.metric);
        Sampler s(h.chart().box, kDefaultSeed, {{"Lambda", e.default_lambda}});
        if (!killing_oneform_check(h, *e.killing_oneform, s, n))
            throw Error("catalog self-test failed for '" + e.name + "': one-form not Killing");
    }
}

const Registry& registry() {
    static const Registry r = [] {
        Registry reg;
        add_minkowski(reg);
        add_ppwaves(reg);
        add_plane_wave_rosen(reg);
        add_kerr_goldberg(reg);
        add_product(reg);
        add_example1(reg);
        add_example2(reg);
        add_example3(reg);
        add_example4(reg);
        add_lewandowski(reg);
        for (const auto& [name, entry] : reg) self_test(entry);
        return reg;
    }();
    return r;
}

} // namespace

const CatalogEntry& catalog_get(const std::string& name) {
    const Registry& r = registry();
    auto it = r.find(name);
    if (it == r.end()) throw DomainError("unknown catalog entry '" + name + "'");
    return it->second;
}

std::vector<std::string> catalog_list() {
    std::vector<std::string> names;
    for (const auto& [name, entry] : registry()) names.push_back(name);
    return names;
}

bool catalog_has(const std::string& name) { return registry().count(name) != 0; }

WalkerMetric example1_original_with_profile(const Expr& c_of_u) {
    Expr conf = W("1/(-(Lambda*x^2))");
    Expr x = var("x");
    Expr A2 = rational(2) * x * c_of_u;
    Expr H0 = -(param("Lambda") * pow(x, 4) * c_of_u * c_of_u);
    return walker_einstein(walker_chart(hyperbolic_box()), conf, rational(0), conf, rational(0),
                           A2, H0);
}

WalkerMetric example1_transformed_with_profile(const Expr& c_of_u, const Expr& b_of_u) {
    Expr lam = param("Lambda");
    Expr x = var("x");
    Expr denom = -(lam * pow(x, 2));
    Expr h11 = (rational(36) * pow(lam, 2) * b_of_u * b_of_u * pow(x, 4) + rational(1)) / denom;
    Expr h12 = (rational(6) * lam * b_of_u * pow(x, 2)) / denom;
    Expr h22 = rational(1) / denom;
    Expr H0 = rational(3) * lam * pow(x, 4) * c_of_u * c_of_u;
    return walker_einstein(walker_chart(hyperbolic_box()), h11, h12, h22, rational(0),
                           rational(0), H0);
}

} // namespace wv
