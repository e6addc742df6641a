#pragma once

#include <cstdint>
#include <optional>
#include <type_traits>
#include <string>
#include <vector>

#include "wv/domain.hpp"
#include "wv/error.hpp"

namespace wv {

struct MaxReduceResult {
    double max_value = 0.0;
    long arg_index = -1;
    Point arg_point;
    long count = 0;
};

namespace detail {

void omp_parallel_indices(long n, void* ctx, void (*body)(void*, long));
bool parallel_enabled();

} // namespace detail

// Evaluates f(point(i)) for i in [0, n) and reduces to the max with its first
// witness. Points come from the sampler's per-index streams; a point whose
// evaluation raises EvalError is redrawn (salted stream) a few times before
// the error is reported. Aggregation is serial and index-ordered, so the
// OpenMP path and the serial reference produce bit-identical results.
template <class F>
MaxReduceResult sample_max(const Sampler& sampler, long n, F&& f, bool parallel = true) {
    constexpr int eval_retries = 16;
    std::vector<double> values(static_cast<std::size_t>(n));
    std::vector<Point> points(static_cast<std::size_t>(n));
    std::vector<std::string> errors(static_cast<std::size_t>(n));

    using Fn = std::remove_reference_t<F>;
    struct Ctx {
        const Sampler* sampler;
        Fn* f;
        std::vector<double>* values;
        std::vector<Point>* points;
        std::vector<std::string>* errors;
    } ctx{&sampler, &f, &values, &points, &errors};

    auto body = [](void* vctx, long i) {
        auto& c = *static_cast<Ctx*>(vctx);
        for (int attempt = 0;; ++attempt) {
            try {
                Point p = c.sampler->point(static_cast<std::uint64_t>(i),
                                           static_cast<std::uint32_t>(attempt));
                double v = (*c.f)(p);
                (*c.values)[i] = v;
                (*c.points)[i] = std::move(p);
                return;
            } catch (const EvalError& err) {
                if (attempt + 1 >= eval_retries) {
                    (*c.errors)[i] = err.what();
                    return;
                }
            } catch (const Error& err) {
                (*c.errors)[i] = err.what();
                return;
            }
        }
    };

    if (parallel && detail::parallel_enabled()) {
        detail::omp_parallel_indices(n, &ctx, body);
    } else {
        for (long i = 0; i < n; ++i) body(&ctx, i);
    }

    for (long i = 0; i < n; ++i)
        if (!errors[i].empty())
            throw EvalError("sample " + std::to_string(i) + ": " + errors[i]);

    MaxReduceResult out;
    out.count = n;
    for (long i = 0; i < n; ++i) {
        if (out.arg_index < 0 || values[i] > out.max_value) {
            out.max_value = values[i];
            out.arg_index = i;
        }
    }
    if (out.arg_index >= 0) out.arg_point = points[out.arg_index];
    return out;
}

// Serial reference for the OpenMP path; kept separate so tests can compare.
template <class F>
MaxReduceResult sample_max_serial(const Sampler& sampler, long n, F&& f) {
    return sample_max(sampler, n, static_cast<F&&>(f), /*parallel=*/false);
}

} // namespace wv
