#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wv/gauge.hpp"
#include "wv/killing.hpp"
#include "wv/walker.hpp"

namespace wv {

// Built-in metrics: the four u-dependent Einstein families in both coordinate
// presentations, the vacuum specials, controls, and the holomorphic one-form
// instances. Every entry is verified by its own declared suite in the tests.
struct CatalogEntry {
    std::string name;
    std::string provenance;

    WalkerMetric metric;
    double default_lambda = -1.0; // 0 for the vacuum entries

    bool einstein = true;         // Ric = Lambda g expected to hold on the box
    bool reduced_system = false;  // A = 0, H1 = 0 entry: the reduced suite applies

    // constant-curvature reduction data (original presentations)
    std::optional<PotentialFunction> potential;
    std::optional<Expr> potential_H0;

    // classification data (transformed presentations)
    std::optional<Expr> det_t;    // closed form in (v,x,y,u; Lambda)
    bool det_t_negative = false;  // det T < 0 across the box

    std::vector<VectorField> killing_fields;

    // h-level one-form whose dual field must be Killing (holomorphic entries)
    std::optional<std::array<Expr, 2>> killing_oneform;

    // gauge pairing
    std::string gauge_partner;                       // name of the other chart
    std::optional<ClosedFormTransform> to_original;  // on transformed entries
};

const CatalogEntry& catalog_get(const std::string& name);
std::vector<std::string> catalog_list();
bool catalog_has(const std::string& name);

// Example-1 family with an explicit profile c(u) and its integral b(u)
// (b' = c, b(0) = 0): h = (dx^2+dy^2)/(-Lambda x^2), A = 2 x c(u) dy,
// H0 = -Lambda x^4 c(u)^2, and the transformed counterpart built from b.
WalkerMetric example1_original_with_profile(const Expr& c_of_u);
WalkerMetric example1_transformed_with_profile(const Expr& c_of_u, const Expr& b_of_u);

} // namespace wv
