#pragma once

#include <string>
#include <vector>

#include "wv/domain.hpp"
#include "wv/expr.hpp"
#include "wv/parse.hpp"

namespace wv {

// Ordered coordinates plus their valid region and parameter names. Spacetime
// charts have 4 coordinates (v, x, y, u by convention, with u last); the
// surface charts used for h have 2 (x, y) and treat u as a fixed parameter.
struct Chart {
    std::vector<std::string> coords;
    DomainBox box;
    std::vector<std::string> params;

    int dim() const { return static_cast<int>(coords.size()); }
    int index_of(std::string_view name) const;

    // Name set for parsing component expressions in this chart. `extra`
    // admits names that are variables of a larger chart (e.g. u inside a
    // surface metric family h(u)).
    NameSet names(const std::vector<std::string>& extra = {}) const;
};

class MetricTensor {
public:
    // components row-major, dim*dim; must be structurally symmetric
    MetricTensor(Chart chart, std::vector<Expr> components);

    const Chart& chart() const { return chart_; }
    int dim() const { return dim_; }
    const Expr& at(int i, int j) const { return comp_[static_cast<std::size_t>(i * dim_ + j)]; }

private:
    Chart chart_;
    int dim_;
    std::vector<Expr> comp_;
};

// Convenience builder from the upper triangle (row-major i <= j).
MetricTensor metric_from_upper(Chart chart, const std::vector<Expr>& upper);

} // namespace wv
