#include "wv/chart.hpp"

namespace wv {

int Chart::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i] == name) return static_cast<int>(i);
    throw Error("chart has no coordinate '" + std::string(name) + "'");
}

NameSet Chart::names(const std::vector<std::string>& extra) const {
    NameSet ns;
    ns.variables.insert(coords.begin(), coords.end());
    ns.variables.insert(extra.begin(), extra.end());
    ns.parameters.insert(params.begin(), params.end());
    return ns;
}

MetricTensor::MetricTensor(Chart chart, std::vector<Expr> components)
    : chart_(std::move(chart)), dim_(chart_.dim()), comp_(std::move(components)) {
    if (dim_ != 2 && dim_ != 4) throw Error("metric charts must have 2 or 4 coordinates");
    if (comp_.size() != static_cast<std::size_t>(dim_ * dim_))
        throw Error("metric component count does not match chart dimension");
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < i; ++j)
            if (!structural_equal(at(i, j), at(j, i)))
                throw Error("metric components are not structurally symmetric");
}

MetricTensor metric_from_upper(Chart chart, const std::vector<Expr>& upper) {
    const int n = chart.dim();
    if (upper.size() != static_cast<std::size_t>(n * (n + 1) / 2))
        throw Error("wrong upper-triangle size");
    std::vector<Expr> full(static_cast<std::size_t>(n * n));
    std::size_t k = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            full[static_cast<std::size_t>(i * n + j)] = upper[k];
            full[static_cast<std::size_t>(j * n + i)] = upper[k];
            ++k;
        }
    }
    return MetricTensor(std::move(chart), std::move(full));
}

} // namespace wv
