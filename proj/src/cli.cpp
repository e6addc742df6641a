#include "wv/cli.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "wv/catalog.hpp"
#include "wv/classify.hpp"
#include "wv/dsl.hpp"
#include "wv/gauge.hpp"

namespace wv {

namespace {

using json = nlohmann::ordered_json;

// a loaded metric with whatever claims ride along
struct Loaded {
    std::string name;
    WalkerMetric metric;
    double lambda = 0.0;
    bool einstein_claim = true;
    bool reduced_system = false;
    std::optional<PotentialFunction> potential;
    std::optional<Expr> potential_H0;
    std::optional<std::array<Expr, 2>> killing_oneform;
    std::optional<Expr> det_t;
    std::vector<VectorField> killing_fields;
    std::string gauge_partner;
    std::optional<ClosedFormTransform> to_original;
};

bool looks_like_path(const std::string& s) {
    return s.find('/') != std::string::npos || s.find(".wv") != std::string::npos ||
           s.find(".txt") != std::string::npos;
}

Loaded load(const RunConfig& cfg) {
    Loaded out;
    out.name = cfg.source;
    if (catalog_has(cfg.source)) {
        const CatalogEntry& e = catalog_get(cfg.source);
        out.metric = e.metric;
        out.lambda = cfg.lambda_set ? cfg.lambda : e.default_lambda;
        out.einstein_claim = e.einstein;
        out.reduced_system = e.reduced_system;
        out.potential = e.potential;
        out.potential_H0 = e.potential_H0;
        out.killing_oneform = e.killing_oneform;
        out.det_t = e.det_t;
        out.killing_fields = e.killing_fields;
        out.gauge_partner = e.gauge_partner;
        out.to_original = e.to_original;
        return out;
    }
    if (!looks_like_path(cfg.source))
        throw DomainError("unknown catalog entry '" + cfg.source +
                          "' (pass a file path to load a metric file)");
    DslMetric d = load_dsl_file(cfg.source);
    out.metric = d.metric;
    out.lambda = cfg.lambda_set ? cfg.lambda : d.default_lambda;
    out.reduced_system = d.metric.A_is_zero() && d.metric.H1_is_zero();
    out.killing_fields = d.killing_fields;
    return out;
}

Sampler spacetime_sampler(const Loaded& m, const RunConfig& cfg) {
    return Sampler(m.metric.chart.box, cfg.seed, {{"Lambda", m.lambda}});
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json point_json(const Point& p) {
    json j = json::object();
    for (const char* n : {"v", "x", "y", "u"})
        if (const double* v = p.find(n)) j[n] = *v;
    return j;
}

std::string render(const json& j, const std::string& format) {
    if (format == "text") {
        std::string out;
        for (auto it = j.begin(); it != j.end(); ++it)
            out += it.key() + ": " + it.value().dump() + "\n";
        return out;
    }
    return j.dump(2) + "\n";
}

} // namespace

CommandResult cmd_check(const RunConfig& cfg) {
    Loaded m = load(cfg);

    json report;
    report["schema"] = 1;
    report["command"] = "check";
    report["metric"] = m.name;
    report["lambda"] = m.lambda;
    report["samples"] = cfg.samples;
    report["tol"] = cfg.tol;
    report["seed"] = cfg.seed;

    bool pass = true;
    json residuals = json::object();

    if (m.killing_oneform) {
        MetricTensor h = surface_metric(m.metric);
        Sampler s(h.chart().box, cfg.seed, {{"Lambda", m.lambda}});
        double r = 0.0;
        bool ok = killing_oneform_check(h, *m.killing_oneform, s, cfg.samples, kKillingTol, &r);
        residuals["killing_oneform"] = r;
        pass = pass && ok;
    } else {
        CurvatureOperator op(assemble(m.metric));
        Sampler s = spacetime_sampler(m, cfg);
        MaxReduceResult r = max_einstein_residual(op, m.lambda, s, cfg.samples);
        residuals["einstein"] = {{"max", r.max_value}, {"worst_point", point_json(r.arg_point)}};
        pass = pass && r.max_value < cfg.tol;

        if (m.reduced_system && m.metric.has_ansatz()) {
            Sampler ss = surface_sampler(m.metric, cfg.seed, {{"Lambda", m.lambda}});
            ReducedSystemResiduals rs =
                reduced_system_residuals(m.metric, m.lambda, ss, cfg.samples);
            residuals["eq5"] = {rs.poisson, rs.divergence, rs.trace, rs.surface_einstein};
            pass = pass && rs.max() < cfg.tol;
        }
        if (m.potential) {
            Sampler ss = surface_sampler(m.metric, cfg.seed, {{"Lambda", m.lambda}});
            const char* key = m.potential->signature == Signature::Sphere ? "eq6" : "eq7";
            json block = json::object();
            auto fr = is_zero_sampled(f_equation_residual(*m.potential), ss, cfg.samples, 1e-9);
            block["f"] = fr.max_residual;
            pass = pass && fr.is_zero;
            if (m.potential_H0) {
                auto hr = is_zero_sampled(h0_equation_residual(*m.potential, *m.potential_H0),
                                          ss, cfg.samples, 1e-9);
                block["H0"] = hr.max_residual;
                pass = pass && hr.is_zero;
            }
            residuals[key] = block;
        }
    }

    report["residuals"] = residuals;
    report["pass"] = pass;
    return {pass ? 0 : 1, render(report, cfg.format)};
}

namespace {

struct GridAxis {
    std::string name;
    double lo = 0, hi = 0;
    long count = 1;
};

std::vector<GridAxis> parse_grid(const std::string& spec, const DomainBox& box) {
    std::vector<GridAxis> axes;
    for (const char* n : {"v", "x", "y", "u"}) {
        const Interval* iv = box.find(n);
        if (!iv) throw DomainError(std::string("metric box has no interval for ") + n);
        GridAxis a;
        a.name = n;
        a.lo = a.hi = 0.5 * (iv->lo + iv->hi); // default: fixed at the midpoint
        axes.push_back(a);
    }
    if (spec.empty()) {
        // default grid: sweep v and x
        const Interval* iv = box.find("v");
        axes[0] = {"v", iv->lo, iv->hi, 5};
        const Interval* ix = box.find("x");
        axes[1] = {"x", ix->lo, ix->hi, 5};
        return axes;
    }
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t eq = item.find('=');
        if (eq == std::string::npos) throw DomainError("bad grid item '" + item + "'");
        std::string name = item.substr(0, eq);
        double lo, hi;
        long count;
        if (std::sscanf(item.c_str() + eq + 1, "%lf:%lf:%ld", &lo, &hi, &count) != 3 ||
            count < 1)
            throw DomainError("bad grid range '" + item + "' (want var=lo:hi:n)");
        bool found = false;
        for (auto& a : axes) {
            if (a.name == name) {
                const Interval* iv = box.find(name);
                if (lo < iv->lo - 1e-12 || hi > iv->hi + 1e-12)
                    throw DomainError("grid range for " + name + " is outside the domain box");
                a = {name, lo, hi, count};
                found = true;
            }
        }
        if (!found) throw DomainError("grid names an unknown coordinate '" + name + "'");
    }
    return axes;
}

} // namespace

CommandResult cmd_classify(const RunConfig& cfg) {
    Loaded m = load(cfg);
    MetricTensor g = assemble(m.metric);
    CurvatureOperator op(g);
    std::vector<GridAxis> axes = parse_grid(cfg.grid, m.metric.chart.box);

    std::ostringstream out;
    out << "v,x,y,u,detT,type\n";
    long n_ii = 0, n_d = 0, n_near = 0, n_skipped = 0;

    std::vector<long> idx(axes.size(), 0);
    for (;;) {
        Point p;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            const GridAxis& ax = axes[a];
            double t = ax.count > 1 ? static_cast<double>(idx[a]) / (ax.count - 1) : 0.0;
            p.set(ax.name, ax.lo + t * (ax.hi - ax.lo));
        }
        p.set("Lambda", m.lambda);
        if (!m.metric.chart.box.contains(p)) {
            ++n_skipped;
        } else {
            TEndomorphism t = T_at(op, m.lambda, p);
            PetrovResult pr = petrov_from_T(t, m.lambda);
            const char* type = pr.type == PetrovType::D
                                   ? "D"
                                   : (pr.near_degenerate ? "near-degenerate" : "II");
            if (pr.type == PetrovType::D)
                ++n_d;
            else if (pr.near_degenerate)
                ++n_near;
            else
                ++n_ii;
            out << fmt(p.get("v")) << ',' << fmt(p.get("x")) << ',' << fmt(p.get("y")) << ','
                << fmt(p.get("u")) << ',' << fmt(t.det_t) << ',' << type << "\n";
        }
        // advance the odometer
        std::size_t a = 0;
        for (; a < axes.size(); ++a) {
            if (++idx[a] < axes[a].count) break;
            idx[a] = 0;
        }
        if (a == axes.size()) break;
    }

    Sampler s = spacetime_sampler(m, cfg);
    HolonomyResult h = holonomy_verdict(op, m.lambda, s, cfg.samples);
    out << "# points: II=" << n_ii << " D=" << n_d << " near-degenerate=" << n_near
        << " skipped=" << n_skipped << "\n";
    out << "# holonomy: "
        << (h.verdict == HolonomyVerdict::Sim2 ? "sim(2) indecomposable"
                                               : "decomposable (T = 0 on sample)")
        << " (sampled n=" << h.points << ", max |det T| = " << fmt(h.max_abs_det) << ")\n";
    return {0, out.str()};
}

CommandResult cmd_killing(const RunConfig& cfg) {
    Loaded m = load(cfg);
    if (m.killing_fields.empty())
        throw DomainError("no Killing fields declared for '" + m.name + "'");
    MetricTensor g = assemble(m.metric);
    Sampler s = spacetime_sampler(m, cfg);
    AlgebraReport rep = algebra_certificate(g, m.killing_fields, s,
                                            std::min<long>(cfg.samples, 500));

    json report;
    report["schema"] = 1;
    report["command"] = "killing";
    report["metric"] = m.name;
    report["lambda"] = m.lambda;
    report["seed"] = cfg.seed;
    json fields = json::array();
    for (std::size_t i = 0; i < m.killing_fields.size(); ++i) {
        fields.push_back({{"label", m.killing_fields[i].label},
                          {"residual", rep.field_residuals[i]}});
    }
    report["fields"] = fields;
    json brackets = json::array();
    for (const auto& b : rep.brackets) {
        brackets.push_back({{"i", b.i},
                            {"j", b.j},
                            {"structure_constants", b.coefficients},
                            {"fit_residual", b.fit_residual}});
    }
    report["brackets"] = brackets;
    report["closed"] = rep.closed;
    report["certified"] = rep.certified();
    return {rep.certified() ? 0 : 1, render(report, cfg.format)};
}

CommandResult cmd_gauge_demo(const RunConfig& cfg) {
    Loaded m = load(cfg);

    // resolve the (original, transformed) pair whichever side was named
    const CatalogEntry* original = nullptr;
    const CatalogEntry* transformed = nullptr;
    if (catalog_has(m.name)) {
        const CatalogEntry& e = catalog_get(m.name);
        if (e.to_original) {
            transformed = &e;
            if (!e.gauge_partner.empty()) original = &catalog_get(e.gauge_partner);
        } else if (!e.gauge_partner.empty()) {
            original = &e;
            transformed = &catalog_get(e.gauge_partner);
        }
    }
    if (!original || !transformed || !transformed->to_original)
        throw DomainError("'" + m.name + "' has no closed-form transform pair for gauge-demo");

    FlowTransform flow = flow_from_walker(original->metric, 0.0);
    const ClosedFormTransform& closed = *transformed->to_original;
    std::vector<std::pair<std::string, double>> params = {{"Lambda", m.lambda}};

    std::ostringstream out;
    out << "u,x_flow,y_flow,x_closed,y_closed,deviation\n";
    double worst = 0.0;
    long rows = 0, skipped = 0;

    Sampler s(transformed->metric.chart.box, cfg.seed, params);
    const long bases = 8;
    const long usteps = 11;
    const Interval* uiv = transformed->metric.chart.box.find("u");
    for (long b = 0; b < bases; ++b) {
        Point base = s.point(b);
        // sweep outward from u0 in both directions; a branch ends at the
        // first u the flow cannot reach (blow-up or constraint violation)
        for (int dir : {-1, 1}) {
            for (long k = 1; k < usteps; ++k) {
                double span = dir < 0 ? -uiv->lo : uiv->hi;
                double u = dir * span * static_cast<double>(k) / (usteps - 1);
                Point q = base;
                q.set("u", u);
                if (!transformed->metric.chart.box.contains(q)) {
                    ++skipped;
                    break;
                }
                try {
                    FlowResult f = integrate_flow(flow, base.get("x"), base.get("y"), u, params);
                    double xc = evaluate(closed.map[1], q);
                    double yc = evaluate(closed.map[2], q);
                    double dev = std::max(std::fabs(f.x - xc), std::fabs(f.y - yc));
                    worst = std::max(worst, dev);
                    ++rows;
                    out << fmt(u) << ',' << fmt(f.x) << ',' << fmt(f.y) << ',' << fmt(xc) << ','
                        << fmt(yc) << ',' << fmt(dev) << "\n";
                } catch (const EvalError&) {
                    ++skipped;
                    break;
                }
            }
        }
    }
    out << "# rows = " << rows << ", skipped = " << skipped << "\n";
    out << "# max deviation = " << fmt(worst) << "\n";
    const double tol = 1e-8;
    return {(rows > 0 && worst < tol) ? 0 : 1, out.str()};
}

CommandResult cmd_list(const RunConfig& cfg) {
    if (cfg.format == "json") {
        json j = catalog_list();
        return {0, j.dump(2) + "\n"};
    }
    std::string out;
    for (const auto& name : catalog_list()) out += name + "\n";
    return {0, out};
}

CommandResult cmd_export(const RunConfig& cfg) {
    if (!catalog_has(cfg.source)) throw DomainError("unknown catalog entry '" + cfg.source + "'");
    const CatalogEntry& e = catalog_get(cfg.source);
    if (!e.metric.has_ansatz())
        throw DomainError("entry '" + cfg.source + "' is not exportable (general H)");
    double lambda = cfg.lambda_set ? cfg.lambda : e.default_lambda;
    return {0, write_dsl(e.metric, lambda, e.killing_fields)};
}

} // namespace wv
