// Benchmark comparing the OpenMP sampling path against the serial reference
// on the heavier catalog workloads. Both paths must agree bit-for-bit; the
// test suite asserts that, this target reports the timings.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wv/catalog.hpp"
#include "wv/classify.hpp"
#include "wv/curvature.hpp"

using namespace wv;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

struct Timing {
    double serial_ms = 0;
    double parallel_ms = 0;
    double serial_value = 0;
    double parallel_value = 0;
};

template <class F>
Timing time_both(F&& run) {
    Timing t;
    double t0 = now_ms();
    t.serial_value = run(false);
    t.serial_ms = now_ms() - t0;
    t0 = now_ms();
    t.parallel_value = run(true);
    t.parallel_ms = now_ms() - t0;
    return t;
}

void report(const char* name, const Timing& t, long n) {
    std::printf("%-28s n=%-6ld serial %8.1f ms   omp %8.1f ms   speedup %.2fx   %s\n", name, n,
                t.serial_ms, t.parallel_ms,
                t.parallel_ms > 0 ? t.serial_ms / t.parallel_ms : 0.0,
                t.serial_value == t.parallel_value ? "values match" : "VALUES DIFFER");
}

} // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
    if (const char* cap = std::getenv("WALKER_VERIFY_THREADS")) {
        int n = std::atoi(cap);
        if (n > 0) omp_set_num_threads(n);
    }
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both paths run serially\n");
#endif
    long n = argc > 1 ? std::atol(argv[1]) : 2000;

    for (const char* name : {"example2", "example4", "example1"}) {
        const CatalogEntry& e = catalog_get(name);
        CurvatureOperator op(assemble(e.metric));
        Sampler s(e.metric.chart.box, kDefaultSeed, {{"Lambda", e.default_lambda}});
        Timing t = time_both([&](bool parallel) {
            return max_einstein_residual(op, e.default_lambda, s, n, parallel).max_value;
        });
        report((std::string(name) + " einstein").c_str(), t, n);
    }

    {
        const CatalogEntry& e = catalog_get("example2");
        CurvatureOperator op(assemble(e.metric));
        Sampler s(e.metric.chart.box, kDefaultSeed, {{"Lambda", e.default_lambda}});
        Timing t = time_both([&](bool parallel) {
            return sample_max(s, n,
                              [&](const Point& p) {
                                  return std::fabs(T_at(op, e.default_lambda, p).det_t);
                              },
                              parallel)
                .max_value;
        });
        report("example2 detT scan", t, n);
    }
    return 0;
}
