#pragma once

#include <string>
#include <vector>

#include "wv/killing.hpp"
#include "wv/walker.hpp"

namespace wv {

// Text format for metric definitions. Line-oriented, UTF-8, '#' comments:
//   chart v x y u
//   params Lambda
//   default Lambda -1
//   h 11 "1/(-(Lambda*x^2))"
//   h 12 "0"
//   h 22 "1/(-(Lambda*x^2))"
//   A 1 "0"
//   A 2 "2*x"
//   H0 "-(Lambda*x^4)"
//   H1 "0"
//   domain v -1 1
//   constraint name "expr" 0.1 [abs]
//   killing label "v" "x" "y" "u"
// Expression values use the standard grammar and are quoted.
struct DslMetric {
    WalkerMetric metric;
    double default_lambda = -1.0;
    bool has_default_lambda = false;
    std::vector<VectorField> killing_fields;
};

DslMetric read_dsl(const std::string& text);
DslMetric load_dsl_file(const std::string& path);

std::string write_dsl(const WalkerMetric& metric, double default_lambda,
                      const std::vector<VectorField>& killing_fields);

} // namespace wv
