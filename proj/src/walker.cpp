#include "wv/walker.hpp"

#include <cmath>

#include "wv/parse.hpp"

namespace wv {

namespace {

const char* kV = "v";
const char* kX = "x";
const char* kY = "y";
const char* kU = "u";

void require_v_free(const Expr& e, const char* what) {
    if (depends_on(e, kV)) throw Error(std::string(what) + " must not depend on v");
}

DomainBox default_walker_box() {
    DomainBox box;
    box.set("v", -1, 1);
    box.set("x", 0.3, 2.0);
    box.set("y", -1, 1);
    box.set("u", -0.5, 0.5);
    return box;
}

} // namespace

Chart walker_chart(DomainBox box, std::vector<std::string> params) {
    Chart c;
    c.coords = {kV, kX, kY, kU};
    c.box = box.intervals.empty() ? default_walker_box() : std::move(box);
    c.params = std::move(params);
    return c;
}

WalkerMetric walker_general(Chart chart, Expr h11, Expr h12, Expr h22, Expr A1, Expr A2,
                            Expr H) {
    if (chart.dim() != 4) throw Error("walker metrics need a 4-coordinate chart");
    for (const auto& [e, what] : std::initializer_list<std::pair<const Expr&, const char*>>{
             {h11, "h11"}, {h12, "h12"}, {h22, "h22"}, {A1, "A1"}, {A2, "A2"}})
        require_v_free(e, what);
    WalkerMetric w;
    w.chart = std::move(chart);
    w.h11 = std::move(h11);
    w.h12 = std::move(h12);
    w.h22 = std::move(h22);
    w.A1 = std::move(A1);
    w.A2 = std::move(A2);
    w.H = std::move(H);
    return w;
}

WalkerMetric walker_einstein(Chart chart, Expr h11, Expr h12, Expr h22, Expr A1, Expr A2,
                             Expr H0, Expr H1) {
    require_v_free(H0, "H0");
    require_v_free(H1, "H1");
    Expr v = var(kV);
    Expr H = param("Lambda") * v * v + H1 * v + H0;
    WalkerMetric w = walker_general(std::move(chart), std::move(h11), std::move(h12),
                                    std::move(h22), std::move(A1), std::move(A2), std::move(H));
    w.H0 = std::move(H0);
    w.H1 = std::move(H1);
    return w;
}

MetricTensor assemble(const WalkerMetric& w) {
    Expr z = rational(0), one = rational(1);
    // upper triangle in the order (v, x, y, u)
    std::vector<Expr> upper = {
        z,      z,      z,      one,  // g_vv g_vx g_vy g_vu
        w.h11,  w.h12,  w.A1,         // g_xx g_xy g_xu
        w.h22,  w.A2,                 // g_yy g_yu
        w.H,                          // g_uu
    };
    return metric_from_upper(w.chart, upper);
}

MetricTensor surface_metric(const Chart& wchart, Expr h11, Expr h12, Expr h22) {
    Chart c;
    c.coords = {kX, kY};
    for (const auto& [name, iv] : wchart.box.intervals)
        if (name != kV) c.box.intervals.emplace_back(name, iv);
    for (const auto& con : wchart.box.constraints)
        if (!depends_on(con.expr, kV)) c.box.constraints.push_back(con);
    c.params = wchart.params;
    c.params.push_back(kU); // u is a family parameter for the surface chart
    return metric_from_upper(std::move(c), {std::move(h11), std::move(h12), std::move(h22)});
}

MetricTensor surface_metric(const WalkerMetric& w) {
    return surface_metric(w.chart, w.h11, w.h12, w.h22);
}

Sampler surface_sampler(const WalkerMetric& w, std::uint64_t seed,
                        std::vector<std::pair<std::string, double>> params) {
    MetricTensor h = surface_metric(w);
    return Sampler(h.chart().box, seed, std::move(params));
}

double ReducedSystemResiduals::max() const {
    return std::max(std::max(poisson, divergence), std::max(trace, surface_einstein));
}

namespace {

struct SurfaceGeometry {
    Expr h[2][2], hinv[2][2];
    Expr gamma[2][2][2]; // Gamma^k_ij of h at fixed u
};

SurfaceGeometry surface_geometry(const Expr& h11, const Expr& h12, const Expr& h22) {
    SurfaceGeometry s;
    s.h[0][0] = h11;
    s.h[0][1] = s.h[1][0] = h12;
    s.h[1][1] = h22;
    Expr det = h11 * h22 - h12 * h12;
    s.hinv[0][0] = h22 / det;
    s.hinv[0][1] = s.hinv[1][0] = -(h12 / det);
    s.hinv[1][1] = h11 / det;
    const char* coords[2] = {kX, kY};
    Expr dh[2][2][2]; // dh[k][i][j] = d_k h_ij
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) dh[k][i][j] = differentiate(s.h[i][j], coords[k]);
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = i; j < 2; ++j) {
                Expr sum = rational(0);
                for (int l = 0; l < 2; ++l)
                    sum = sum + s.hinv[k][l] * (dh[i][j][l] + dh[j][i][l] - dh[l][i][j]);
                s.gamma[k][i][j] = s.gamma[k][j][i] = rational(1, 2) * sum;
            }
    return s;
}

Expr laplace_beltrami(const SurfaceGeometry& s, const Expr& phi) {
    const char* coords[2] = {kX, kY};
    Expr dphi[2] = {differentiate(phi, kX), differentiate(phi, kY)};
    Expr out = rational(0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Expr second = differentiate(dphi[i], coords[j]);
            Expr corr = rational(0);
            for (int k = 0; k < 2; ++k) corr = corr + s.gamma[k][i][j] * dphi[k];
            out = out + s.hinv[i][j] * (second - corr);
        }
    return out;
}

} // namespace

ReducedSystemResiduals reduced_system_residuals(const WalkerMetric& w, double lambda,
                                                const Sampler& sampler, long n) {
    if (!w.A_is_zero())
        throw Error("reduced system needs the A = 0 gauge; integrate the flow transform first");
    if (!w.H1_is_zero())
        throw Error("reduced system needs H1 = 0; apply the v-shift gauge transform first");
    if (!w.has_ansatz()) throw Error("reduced system needs the Einstein ansatz H0");

    SurfaceGeometry s = surface_geometry(w.h11, w.h12, w.h22);
    Expr hdot[2][2], hddot[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            hdot[i][j] = differentiate(s.h[i][j], kU);
            hddot[i][j] = differentiate(hdot[i][j], kU);
        }

    // (i) Delta_h H0 + 1/2 h^{ij} hddot_ij
    Expr poisson = laplace_beltrami(s, *w.H0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            poisson = poisson + rational(1, 2) * s.hinv[i][j] * hddot[i][j];

    // (ii) div^j hdot_ij = h^{jk} (d_k hdot_ij - Gamma^l_ki hdot_lj - Gamma^l_kj hdot_il)
    const char* coords[2] = {kX, kY};
    Expr divergence[2];
    for (int i = 0; i < 2; ++i) {
        Expr sum = rational(0);
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                Expr term = differentiate(hdot[i][j], coords[k]);
                for (int l = 0; l < 2; ++l)
                    term = term - s.gamma[l][k][i] * hdot[l][j] - s.gamma[l][k][j] * hdot[i][l];
                sum = sum + s.hinv[j][k] * term;
            }
        divergence[i] = sum;
    }

    // (iii) h^{ij} hdot_ij
    Expr trace = rational(0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) trace = trace + s.hinv[i][j] * hdot[i][j];

    CurvatureOperator surf_op(surface_metric(w));

    ReducedSystemResiduals out;
    out.poisson = sample_max(sampler, n, [&](const Point& p) {
                      return evaluate_scaled(poisson, p).relative();
                  }).max_value;
    out.divergence = sample_max(sampler, n, [&](const Point& p) {
                         return std::max(evaluate_scaled(divergence[0], p).relative(),
                                         evaluate_scaled(divergence[1], p).relative());
                     }).max_value;
    out.trace = sample_max(sampler, n, [&](const Point& p) {
                    return evaluate_scaled(trace, p).relative();
                }).max_value;
    out.surface_einstein = sample_max(sampler, n, [&](const Point& p) {
                               return surf_op.einstein_residual_rel(p, lambda);
                           }).max_value;
    return out;
}

// ---------------------------------------------------------------------------

std::array<Expr, 2> f_to_A(const PotentialFunction& pf) {
    Expr fx = differentiate(pf.f, kX);
    Expr fy = differentiate(pf.f, kY);
    if (pf.signature == Signature::Sphere) {
        Expr sx = sin(var(kX));
        return {-(fy / sx), sx * fx};
    }
    return {-fy, fx};
}

Expr f_equation_residual(const PotentialFunction& pf) {
    Expr f = pf.f;
    Expr fxx = differentiate(differentiate(f, kX), kX);
    Expr fyy = differentiate(differentiate(f, kY), kY);
    if (pf.signature == Signature::Sphere) {
        // Delta_S2 f + 2 f,   Delta_S2 = d2_x + d2_y / sin^2 x + cot x d_x
        Expr sx = sin(var(kX));
        Expr lap = fxx + fyy / (sx * sx) + cot(var(kX)) * differentiate(f, kX);
        return lap + rational(2) * f;
    }
    // Delta_L2 f - 2 f,   Delta_L2 = x^2 (d2_x + d2_y)
    Expr lap = pow(var(kX), 2) * (fxx + fyy);
    return lap - rational(2) * f;
}

Expr h0_equation_residual(const PotentialFunction& pf, const Expr& H0) {
    Expr lam = param("Lambda");
    Expr fx = differentiate(pf.f, kX);
    Expr fy = differentiate(pf.f, kY);
    Expr h0xx = differentiate(differentiate(H0, kX), kX);
    Expr h0yy = differentiate(differentiate(H0, kY), kY);
    if (pf.signature == Signature::Sphere) {
        Expr sx = sin(var(kX));
        Expr lap = h0xx + h0yy / (sx * sx) + cot(var(kX)) * differentiate(H0, kX);
        // Delta_S2 H0 = 2 Lambda (2 f^2 - |grad f|^2) with
        // |grad f|^2 = (d_x f)^2 + (d_y f)^2 / sin^2 x
        Expr rhs = rational(2) * lam *
                   (rational(2) * (pf.f * pf.f) - fx * fx - (fy * fy) / (sx * sx));
        return lap - rhs;
    }
    Expr lap = pow(var(kX), 2) * (h0xx + h0yy);
    // Delta_L2 H0 = -4 Lambda f^2 - 2 Lambda x^2 ((d_x f)^2 + (d_y f)^2)
    Expr rhs = -(rational(4) * lam * (pf.f * pf.f)) -
               rational(2) * lam * pow(var(kX), 2) * (fx * fx + fy * fy);
    return lap - rhs;
}

MetricTensor sphere_background(DomainBox box) {
    if (box.intervals.empty()) {
        box.set("x", 0.4, std::acos(-1.0) - 0.4);
        box.set("y", -1, 1);
        box.set("u", -0.5, 0.5);
    }
    Chart c = walker_chart(std::move(box));
    Expr sx = sin(var(kX));
    return surface_metric(c, rational(1), rational(0), sx * sx);
}

MetricTensor hyperbolic_background(DomainBox box) {
    if (box.intervals.empty()) {
        box.set("x", 0.3, 2.0);
        box.set("y", -1, 1);
        box.set("u", -0.5, 0.5);
    }
    Chart c = walker_chart(std::move(box));
    Expr conf = rational(1) / (-(param("Lambda") * pow(var(kX), 2)));
    return surface_metric(c, conf, rational(0), conf);
}

bool killing_family_check(const PotentialFunction& pf, std::uint64_t seed, int n, double tol,
                          double* residual_out) {
    std::array<Expr, 2> A = f_to_A(pf);
    MetricTensor h =
        pf.signature == Signature::Sphere ? sphere_background() : hyperbolic_background();
    Sampler s(h.chart().box, seed,
              {{"Lambda", pf.signature == Signature::Sphere ? 1.0 : -1.0}});
    return killing_oneform_check(h, A, s, n, tol, residual_out);
}

// ---------------------------------------------------------------------------
// complex expression pairs for the holomorphic construction

namespace {

struct CExpr {
    Expr re, im;
};

CExpr c_mul(const CExpr& a, const CExpr& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CExpr c_sub(const CExpr& a, const CExpr& b) { return {a.re - b.re, a.im - b.im}; }

// d_z = 1/2 (d_x - i d_y) acting on a complex pair
CExpr c_dz(const CExpr& a) {
    Expr half = rational(1, 2);
    return {half * (differentiate(a.re, kX) + differentiate(a.im, kY)),
            half * (differentiate(a.im, kX) - differentiate(a.re, kY))};
}

} // namespace

std::array<Expr, 2> lewandowski_oneform(const std::vector<long long>& phi_coefficients,
                                        double lambda) {
    if (lambda == 0.0) throw Error("lewandowski construction needs Lambda != 0");
    if (phi_coefficients.size() > 5) throw Error("phi degree above 4 is not supported");
    const long long sigma = lambda > 0 ? 1 : -1;

    Expr x = var(kX), y = var(kY);
    CExpr z{x, y};
    CExpr phi{rational(0), rational(0)};
    CExpr zk{rational(1), rational(0)};
    for (std::size_t k = 0; k < phi_coefficients.size(); ++k) {
        Expr c = rational(phi_coefficients[k]);
        phi.re = phi.re + c * zk.re;
        phi.im = phi.im + c * zk.im;
        zk = c_mul(zk, z);
    }

    // d_z ln P0 = sigma zbar / (1 + sigma z zbar)
    Expr denom = rational(1) + rational(sigma) * (x * x + y * y);
    CExpr dlnP0{rational(sigma) * x / denom, -(rational(sigma) * y / denom)};

    CExpr dzphi = c_dz(phi);
    CExpr inner = c_sub(c_mul(phi, dlnP0), {rational(1, 2) * dzphi.re, rational(1, 2) * dzphi.im});
    Expr L = rational(2) * inner.re;

    // W = i d_z L  =>  A = W dz + Wbar dzbar = (d_y L) dx - (d_x L) dy
    return {differentiate(L, kY), -differentiate(L, kX)};
}

MetricTensor disc_background(double lambda, DomainBox box) {
    const long long sigma = lambda > 0 ? 1 : -1;
    if (box.intervals.empty()) {
        if (sigma < 0) {
            box.set("x", -0.6, 0.6);
            box.set("y", -0.6, 0.6);
            Constraint c;
            c.name = "inside-disc";
            c.expr = rational(1) - (pow(var(kX), 2) + pow(var(kY), 2));
            c.margin = 0.1;
            box.constraints.push_back(c);
        } else {
            box.set("x", -1, 1);
            box.set("y", -1, 1);
        }
        box.set("u", -0.5, 0.5);
    }
    Chart c = walker_chart(std::move(box));
    Expr denom = rational(1) + rational(sigma) * (pow(var(kX), 2) + pow(var(kY), 2));
    Expr conf = rational(2) / (denom * denom);
    return surface_metric(c, conf, rational(0), conf);
}

} // namespace wv
