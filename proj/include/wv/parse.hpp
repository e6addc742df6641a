#pragma once

#include <set>
#include <string>
#include <string_view>

#include "wv/expr.hpp"

namespace wv {

struct NameSet {
    std::set<std::string> variables;
    std::set<std::string> parameters;

    NameSet() = default;
    NameSet(std::set<std::string> vars, std::set<std::string> params)
        : variables(std::move(vars)), parameters(std::move(params)) {}
};

// Grammar:
//   expr     := term (('+'|'-') term)*
//   term     := factor (('*'|'/') factor)*
//   factor   := '-' factor | atom ('^' exponent)?
//   atom     := number | name | name '(' expr ')' | '(' expr ')'
//   exponent := '-'? integer | '(' '-'? integer ('/' integer)? ')'
// '^' binds tighter than unary minus. Numbers are decimals; rationals are
// written p/q and fold to exact rational constants. Function names:
// sin cos tan cot ln exp sqrt arccos abs.
Expr parse(std::string_view text, const NameSet& names);

} // namespace wv
