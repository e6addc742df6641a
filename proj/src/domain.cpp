#include "wv/domain.hpp"

#include <cmath>

#include "wv/batch.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wv {

bool Constraint::satisfied(const Point& p) const {
    double v;
    try {
        v = evaluate(expr, p);
    } catch (const EvalError&) {
        return false; // a point where the constraint cannot be evaluated is excluded
    }
    if (absolute) v = std::fabs(v);
    return v > margin;
}

const Interval* DomainBox::find(std::string_view name) const {
    for (const auto& [n, iv] : intervals)
        if (n == name) return &iv;
    return nullptr;
}

void DomainBox::set(const std::string& name, double lo, double hi) {
    for (auto& [n, iv] : intervals) {
        if (n == name) {
            iv = {lo, hi};
            return;
        }
    }
    intervals.emplace_back(name, Interval{lo, hi});
}

bool DomainBox::contains(const Point& p) const {
    for (const auto& [name, iv] : intervals) {
        const double* v = p.find(name);
        if (!v || *v < iv.lo || *v > iv.hi) return false;
    }
    for (const auto& c : constraints)
        if (!c.satisfied(p)) return false;
    return true;
}

Sampler::Sampler(DomainBox box, std::uint64_t seed,
                 std::vector<std::pair<std::string, double>> params)
    : box_(std::move(box)), seed_(seed), params_(std::move(params)) {
    if (box_.intervals.empty()) throw DomainError("sampler over empty domain box");
    for (const auto& [name, iv] : box_.intervals)
        if (!(iv.lo <= iv.hi)) throw DomainError("empty interval for '" + name + "'");
}

Point Sampler::point(std::uint64_t index, std::uint32_t salt) const {
    SplitMix64 rng(split_stream(seed_, index, salt));
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        Point p;
        p.vals.reserve(box_.intervals.size() + params_.size());
        for (const auto& [name, iv] : box_.intervals)
            p.vals.emplace_back(name, rng.uniform(iv.lo, iv.hi));
        for (const auto& [name, v] : params_) p.vals.emplace_back(name, v);
        bool ok = true;
        for (const auto& c : box_.constraints) {
            if (!c.satisfied(p)) {
                ok = false;
                break;
            }
        }
        if (ok) return p;
    }
    throw DomainError("could not sample a point satisfying the domain constraints");
}

ZeroTestResult is_zero_sampled(const Expr& e, const Sampler& sampler, int n, double tol,
                               const EvalOptions& opt) {
    if (n < 1) throw DomainError("is_zero_sampled needs n >= 1");
    MaxReduceResult r = sample_max(sampler, n, [&](const Point& p) {
        return evaluate_scaled(e, p, opt).relative();
    });
    ZeroTestResult out;
    out.max_residual = r.max_value;
    out.is_zero = r.max_value <= tol;
    out.witness = r.arg_point;
    return out;
}

namespace detail {

bool parallel_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

void omp_parallel_indices(long n, void* ctx, void (*body)(void*, long)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) body(ctx, i);
#else
    for (long i = 0; i < n; ++i) body(ctx, i);
#endif
}

} // namespace detail

} // namespace wv
