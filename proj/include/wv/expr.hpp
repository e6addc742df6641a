#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wv/error.hpp"

namespace wv {

enum class NodeKind { Rational, Real, Variable, Parameter, Unary, Binary };

enum class UnaryOp { Neg, Sin, Cos, Tan, Cot, Ln, Exp, Sqrt, Arccos, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

class ExprNode;

// Immutable expression tree. Nodes are shared; a default-constructed Expr is
// not a valid expression and must not be evaluated.
using Expr = std::shared_ptr<const ExprNode>;

class ExprNode {
public:
    NodeKind kind;

    // Rational: num/den with den > 0, gcd-reduced.
    long long num = 0;
    long long den = 1;

    double real_value = 0.0; // Real

    std::string name; // Variable / Parameter

    UnaryOp uop = UnaryOp::Neg;
    BinaryOp bop = BinaryOp::Add;
    Expr a, b;

    explicit ExprNode(NodeKind k) : kind(k) {}

    bool is_rational() const { return kind == NodeKind::Rational; }
    bool is_constant() const { return kind == NodeKind::Rational || kind == NodeKind::Real; }
    bool is_zero() const { return kind == NodeKind::Rational && num == 0; }
    bool is_one() const { return kind == NodeKind::Rational && num == 1 && den == 1; }
    double constant_value() const;
};

// --- constructors (with constant folding and identity elimination) ---

Expr rational(long long num, long long den = 1);
Expr real_const(double v);
Expr var(std::string name);
Expr param(std::string name);
Expr unary(UnaryOp op, Expr e);
Expr binary(BinaryOp op, Expr lhs, Expr rhs);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& e);

Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr tan(const Expr& e);
Expr cot(const Expr& e);
Expr ln(const Expr& e);
Expr exp(const Expr& e);
Expr sqrt(const Expr& e);
Expr arccos(const Expr& e);
Expr abs(const Expr& e);

// pow with a constant rational exponent; this is the only supported form.
Expr pow(const Expr& base, long long exp_num, long long exp_den = 1);

// --- structure ---

bool structural_equal(const Expr& a, const Expr& b);
std::set<std::string> free_variables(const Expr& e);
std::set<std::string> free_parameters(const Expr& e);
bool depends_on(const Expr& e, std::string_view name);

std::string to_string(const Expr& e);

// --- calculus ---

// Exact symbolic derivative with respect to a variable (zero for parameters
// and unrelated variables).
Expr differentiate(const Expr& e, std::string_view variable);

// --- evaluation ---

struct Point {
    // coordinate bindings first, parameter bindings after; names unique
    std::vector<std::pair<std::string, double>> vals;

    const double* find(std::string_view name) const;
    double get(std::string_view name) const;
    void set(std::string_view name, double value);
};

struct EvalOptions {
    double division_guard = 1e-12; // |denominator| below this is a domain error
};

// IEEE double value; NaN/Inf or an out-of-domain argument raises EvalError.
double evaluate(const Expr& e, const Point& p, const EvalOptions& opt = {});

struct ScaledValue {
    double value = 0.0;
    double scale = 1.0; // 1 + max |subterm value| over the whole tree
    double relative() const { return value < 0 ? -value / scale : value / scale; }
};

ScaledValue evaluate_scaled(const Expr& e, const Point& p, const EvalOptions& opt = {});

} // namespace wv
