#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wv/expr.hpp"
#include "wv/rng.hpp"

namespace wv {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Inequality constraint kept satisfied by the sampler: expr > margin, or
// |expr| > margin when absolute is set. Used to stay clear of singular loci.
struct Constraint {
    std::string name;
    Expr expr;
    double margin = 0.0;
    bool absolute = false;

    bool satisfied(const Point& p) const;
};

struct DomainBox {
    std::vector<std::pair<std::string, Interval>> intervals; // chart order
    std::vector<Constraint> constraints;

    const Interval* find(std::string_view name) const;
    void set(const std::string& name, double lo, double hi);
    bool contains(const Point& p) const; // intervals and constraints
};

// Deterministic sampler: point(i) depends only on (seed, i) and the box, so
// any parallel sweep sees the same points as a serial one. Parameter
// bindings (e.g. Lambda) are appended to every point.
class Sampler {
public:
    Sampler(DomainBox box, std::uint64_t seed,
            std::vector<std::pair<std::string, double>> params = {});

    // up to `max_tries` redraws to satisfy the constraints, then DomainError
    Point point(std::uint64_t index, std::uint32_t salt = 0) const;

    const DomainBox& box() const { return box_; }
    std::uint64_t seed() const { return seed_; }
    const std::vector<std::pair<std::string, double>>& params() const { return params_; }

    static constexpr int max_tries = 256;

private:
    DomainBox box_;
    std::uint64_t seed_;
    std::vector<std::pair<std::string, double>> params_;
};

struct ZeroTestResult {
    bool is_zero = true;
    double max_residual = 0.0; // scale-relative
    Point witness;             // meaningful when !is_zero (worst point overall)

    explicit operator bool() const { return is_zero; }
};

// Max over n seeded points of |e| / (1 + max subterm magnitude). Evaluation
// domain errors at a point trigger a bounded number of resamples.
ZeroTestResult is_zero_sampled(const Expr& e, const Sampler& sampler, int n, double tol,
                               const EvalOptions& opt = {});

inline constexpr double kDefaultZeroTol = 1e-8;
inline constexpr int kDefaultSampleCount = 1000;

} // namespace wv
