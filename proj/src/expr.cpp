#include "wv/expr.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace wv {

namespace {

using int128 = __int128;

bool fits_i64(int128 v) {
    return v <= static_cast<int128>(std::numeric_limits<long long>::max()) &&
           v >= static_cast<int128>(std::numeric_limits<long long>::min());
}

// Reduced rational from 128-bit intermediates; null on overflow, in which
// case the caller keeps the unfolded node.
struct Rat {
    long long num, den;
};

bool make_rat(int128 num, int128 den, Rat& out) {
    if (den == 0) return false;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    int128 a = num < 0 ? -num : num;
    int128 b = den;
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    if (a != 0) {
        num /= a;
        den /= a;
    }
    if (!fits_i64(num) || !fits_i64(den)) return false;
    out = {static_cast<long long>(num), static_cast<long long>(den)};
    return true;
}

} // namespace

double ExprNode::constant_value() const {
    if (kind == NodeKind::Rational) return static_cast<double>(num) / static_cast<double>(den);
    return real_value;
}

Expr rational(long long num, long long den) {
    if (den == 0) throw Error("rational constant with zero denominator");
    Rat r{};
    make_rat(num, den, r);
    auto n = std::make_shared<ExprNode>(NodeKind::Rational);
    n->num = r.num;
    n->den = r.den;
    return n;
}

Expr real_const(double v) {
    auto n = std::make_shared<ExprNode>(NodeKind::Real);
    n->real_value = v;
    return n;
}

Expr var(std::string name) {
    auto n = std::make_shared<ExprNode>(NodeKind::Variable);
    n->name = std::move(name);
    return n;
}

Expr param(std::string name) {
    auto n = std::make_shared<ExprNode>(NodeKind::Parameter);
    n->name = std::move(name);
    return n;
}

Expr unary(UnaryOp op, Expr e) {
    if (!e) throw Error("unary on empty expression");
    if (op == UnaryOp::Neg) {
        if (e->kind == NodeKind::Rational) return rational(-e->num, e->den);
        if (e->kind == NodeKind::Real) return real_const(-e->real_value);
        if (e->kind == NodeKind::Unary && e->uop == UnaryOp::Neg) return e->a;
    }
    auto n = std::make_shared<ExprNode>(NodeKind::Unary);
    n->uop = op;
    n->a = std::move(e);
    return n;
}

static Expr fold_binary_rational(BinaryOp op, const Expr& x, const Expr& y) {
    int128 p = x->num, q = x->den, r = y->num, s = y->den;
    Rat out{};
    bool ok = false;
    switch (op) {
        case BinaryOp::Add: ok = make_rat(p * s + r * q, q * s, out); break;
        case BinaryOp::Sub: ok = make_rat(p * s - r * q, q * s, out); break;
        case BinaryOp::Mul: ok = make_rat(p * r, q * s, out); break;
        case BinaryOp::Div:
            if (r == 0) return nullptr; // leave 1/0 unfolded; evaluation reports it
            ok = make_rat(p * s, q * r, out);
            break;
        case BinaryOp::Pow: {
            // exponent must be an integer for exact folding
            if (s != 1) return nullptr;
            long long e = y->num;
            if (e < -62 || e > 62) return nullptr;
            int128 bn = 1, bd = 1;
            long long k = e < 0 ? -e : e;
            for (long long i = 0; i < k; ++i) {
                bn *= p;
                bd *= q;
                if (!fits_i64(bn) || !fits_i64(bd)) return nullptr;
            }
            if (e < 0) {
                if (bn == 0) return nullptr;
                std::swap(bn, bd);
            }
            ok = make_rat(bn, bd, out);
            break;
        }
    }
    if (!ok) return nullptr;
    return rational(out.num, out.den);
}

Expr binary(BinaryOp op, Expr lhs, Expr rhs) {
    if (!lhs || !rhs) throw Error("binary on empty expression");
    if (op == BinaryOp::Pow && !rhs->is_rational())
        throw Error("pow exponent must be a rational constant");

    // exact constant folding
    if (lhs->is_rational() && rhs->is_rational()) {
        if (Expr folded = fold_binary_rational(op, lhs, rhs)) return folded;
    }
    if (lhs->kind == NodeKind::Real && rhs->kind == NodeKind::Real && op != BinaryOp::Pow) {
        double v = 0;
        switch (op) {
            case BinaryOp::Add: v = lhs->real_value + rhs->real_value; break;
            case BinaryOp::Sub: v = lhs->real_value - rhs->real_value; break;
            case BinaryOp::Mul: v = lhs->real_value * rhs->real_value; break;
            case BinaryOp::Div: v = lhs->real_value / rhs->real_value; break;
            default: break;
        }
        if (std::isfinite(v)) return real_const(v);
    }

    // identity elimination: x+0, 0+x, x-0, x*1, 1*x, x*0, 0*x, 0/x, x/1, x^0, x^1
    switch (op) {
        case BinaryOp::Add:
            if (lhs->is_zero()) return rhs;
            if (rhs->is_zero()) return lhs;
            break;
        case BinaryOp::Sub:
            if (rhs->is_zero()) return lhs;
            if (lhs->is_zero()) return unary(UnaryOp::Neg, rhs);
            break;
        case BinaryOp::Mul:
            if (lhs->is_zero() || rhs->is_zero()) return rational(0);
            if (lhs->is_one()) return rhs;
            if (rhs->is_one()) return lhs;
            break;
        case BinaryOp::Div:
            if (lhs->is_zero()) return rational(0);
            if (rhs->is_one()) return lhs;
            break;
        case BinaryOp::Pow:
            if (rhs->is_zero()) return rational(1);
            if (rhs->is_one()) return lhs;
            break;
    }

    auto n = std::make_shared<ExprNode>(NodeKind::Binary);
    n->bop = op;
    n->a = std::move(lhs);
    n->b = std::move(rhs);
    return n;
}

Expr operator+(const Expr& a, const Expr& b) { return binary(BinaryOp::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return binary(BinaryOp::Sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return binary(BinaryOp::Mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return binary(BinaryOp::Div, a, b); }
Expr operator-(const Expr& e) { return unary(UnaryOp::Neg, e); }

Expr sin(const Expr& e) { return unary(UnaryOp::Sin, e); }
Expr cos(const Expr& e) { return unary(UnaryOp::Cos, e); }
Expr tan(const Expr& e) { return unary(UnaryOp::Tan, e); }
Expr cot(const Expr& e) { return unary(UnaryOp::Cot, e); }
Expr ln(const Expr& e) { return unary(UnaryOp::Ln, e); }
Expr exp(const Expr& e) { return unary(UnaryOp::Exp, e); }
Expr sqrt(const Expr& e) { return unary(UnaryOp::Sqrt, e); }
Expr arccos(const Expr& e) { return unary(UnaryOp::Arccos, e); }
Expr abs(const Expr& e) { return unary(UnaryOp::Abs, e); }

Expr pow(const Expr& base, long long exp_num, long long exp_den) {
    return binary(BinaryOp::Pow, base, rational(exp_num, exp_den));
}

bool structural_equal(const Expr& a, const Expr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case NodeKind::Rational: return a->num == b->num && a->den == b->den;
        case NodeKind::Real: return a->real_value == b->real_value;
        case NodeKind::Variable:
        case NodeKind::Parameter: return a->name == b->name;
        case NodeKind::Unary: return a->uop == b->uop && structural_equal(a->a, b->a);
        case NodeKind::Binary:
            return a->bop == b->bop && structural_equal(a->a, b->a) && structural_equal(a->b, b->b);
    }
    return false;
}

static void collect_names(const Expr& e, NodeKind kind, std::set<std::string>& out) {
    if (!e) return;
    if (e->kind == kind) out.insert(e->name);
    if (e->a) collect_names(e->a, kind, out);
    if (e->b) collect_names(e->b, kind, out);
}

std::set<std::string> free_variables(const Expr& e) {
    std::set<std::string> out;
    collect_names(e, NodeKind::Variable, out);
    return out;
}

std::set<std::string> free_parameters(const Expr& e) {
    std::set<std::string> out;
    collect_names(e, NodeKind::Parameter, out);
    return out;
}

bool depends_on(const Expr& e, std::string_view name) {
    if (!e) return false;
    if ((e->kind == NodeKind::Variable || e->kind == NodeKind::Parameter) && e->name == name)
        return true;
    return (e->a && depends_on(e->a, name)) || (e->b && depends_on(e->b, name));
}

// ---------------------------------------------------------------------------
// printing (round-trips through parse())

namespace {

// precedence: additive 1, multiplicative 2, unary minus 3, power 4, atom 5
int precedence(const Expr& e) {
    switch (e->kind) {
        case NodeKind::Rational:
            if (e->den != 1) return 2; // p/q prints as a division chain
            return e->num < 0 ? 3 : 5;
        case NodeKind::Real: return e->real_value < 0 ? 3 : 5;
        case NodeKind::Variable:
        case NodeKind::Parameter: return 5;
        case NodeKind::Unary: return e->uop == UnaryOp::Neg ? 3 : 5;
        case NodeKind::Binary:
            switch (e->bop) {
                case BinaryOp::Add:
                case BinaryOp::Sub: return 1;
                case BinaryOp::Mul:
                case BinaryOp::Div: return 2;
                case BinaryOp::Pow: return 4;
            }
    }
    return 5;
}

const char* function_name(UnaryOp op) {
    switch (op) {
        case UnaryOp::Neg: return "-";
        case UnaryOp::Sin: return "sin";
        case UnaryOp::Cos: return "cos";
        case UnaryOp::Tan: return "tan";
        case UnaryOp::Cot: return "cot";
        case UnaryOp::Ln: return "ln";
        case UnaryOp::Exp: return "exp";
        case UnaryOp::Sqrt: return "sqrt";
        case UnaryOp::Arccos: return "arccos";
        case UnaryOp::Abs: return "abs";
    }
    return "?";
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print_rec(const Expr& e, std::string& out, int parent_min) {
    const int prec = precedence(e);
    const bool parens = prec < parent_min;
    if (parens) out += '(';
    switch (e->kind) {
        case NodeKind::Rational:
            out += std::to_string(e->num);
            if (e->den != 1) {
                out += '/';
                out += std::to_string(e->den);
            }
            break;
        case NodeKind::Real: out += format_double(e->real_value); break;
        case NodeKind::Variable:
        case NodeKind::Parameter: out += e->name; break;
        case NodeKind::Unary:
            if (e->uop == UnaryOp::Neg) {
                out += '-';
                print_rec(e->a, out, 3);
            } else {
                out += function_name(e->uop);
                out += '(';
                print_rec(e->a, out, 0);
                out += ')';
            }
            break;
        case NodeKind::Binary: {
            if (e->bop == BinaryOp::Pow) {
                print_rec(e->a, out, 5); // base must be an atom or parenthesized
                out += '^';
                const Expr& ex = e->b;
                if (ex->num < 0 || ex->den != 1) {
                    out += '(';
                    out += std::to_string(ex->num);
                    if (ex->den != 1) {
                        out += '/';
                        out += std::to_string(ex->den);
                    }
                    out += ')';
                } else {
                    out += std::to_string(ex->num);
                }
                break;
            }
            char sym = 0;
            switch (e->bop) {
                case BinaryOp::Add: sym = '+'; break;
                case BinaryOp::Sub: sym = '-'; break;
                case BinaryOp::Mul: sym = '*'; break;
                case BinaryOp::Div: sym = '/'; break;
                default: break;
            }
            print_rec(e->a, out, prec);
            out += sym;
            // right operands always bind strictly tighter, so the reparse
            // reproduces the tree shape exactly (no silent re-association)
            print_rec(e->b, out, prec + 1);
            break;
        }
    }
    if (parens) out += ')';
}

} // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print_rec(e, out, 0);
    return out;
}

// ---------------------------------------------------------------------------
// differentiation

Expr differentiate(const Expr& e, std::string_view variable) {
    if (!e) throw Error("differentiate on empty expression");
    switch (e->kind) {
        case NodeKind::Rational:
        case NodeKind::Real:
        case NodeKind::Parameter: return rational(0);
        case NodeKind::Variable: return e->name == variable ? rational(1) : rational(0);
        case NodeKind::Unary: {
            Expr du = differentiate(e->a, variable);
            if (du->is_zero()) return du;
            const Expr& u = e->a;
            switch (e->uop) {
                case UnaryOp::Neg: return -du;
                case UnaryOp::Sin: return cos(u) * du;
                case UnaryOp::Cos: return -(sin(u) * du);
                case UnaryOp::Tan: return du / pow(cos(u), 2);
                case UnaryOp::Cot: return -(du / pow(sin(u), 2));
                case UnaryOp::Ln: return du / u;
                case UnaryOp::Exp: return exp(u) * du;
                case UnaryOp::Sqrt: return du / (rational(2) * sqrt(u));
                case UnaryOp::Arccos:
                    return -(du / sqrt(rational(1) - u * u));
                case UnaryOp::Abs: return (u / abs(u)) * du;
            }
            break;
        }
        case NodeKind::Binary: {
            const Expr& u = e->a;
            const Expr& v = e->b;
            switch (e->bop) {
                case BinaryOp::Add: return differentiate(u, variable) + differentiate(v, variable);
                case BinaryOp::Sub: return differentiate(u, variable) - differentiate(v, variable);
                case BinaryOp::Mul:
                    return differentiate(u, variable) * v + u * differentiate(v, variable);
                case BinaryOp::Div:
                    return (differentiate(u, variable) * v - u * differentiate(v, variable)) /
                           pow(v, 2);
                case BinaryOp::Pow: {
                    Expr du = differentiate(u, variable);
                    if (du->is_zero()) return rational(0);
                    // d(u^r) = r u^(r-1) du, r a rational constant
                    Expr r = v;
                    Expr rm1 = rational(v->num - v->den, v->den);
                    return r * binary(BinaryOp::Pow, u, rm1) * du;
                }
            }
            break;
        }
    }
    throw Error("differentiate: unreachable node");
}

// ---------------------------------------------------------------------------
// evaluation

const double* Point::find(std::string_view name) const {
    for (const auto& [n, v] : vals)
        if (n == name) return &v;
    return nullptr;
}

double Point::get(std::string_view name) const {
    if (const double* v = find(name)) return *v;
    throw EvalError("point does not bind name '" + std::string(name) + "'");
}

void Point::set(std::string_view name, double value) {
    for (auto& [n, v] : vals) {
        if (n == name) {
            v = value;
            return;
        }
    }
    vals.emplace_back(std::string(name), value);
}

namespace {

struct EvalState {
    const Point& p;
    const EvalOptions& opt;
    double max_abs = 0.0;
};

double eval_rec(const Expr& e, EvalState& st) {
    double v = 0;
    switch (e->kind) {
        case NodeKind::Rational:
        case NodeKind::Real: v = e->constant_value(); break;
        case NodeKind::Variable:
        case NodeKind::Parameter: v = st.p.get(e->name); break;
        case NodeKind::Unary: {
            double u = eval_rec(e->a, st);
            switch (e->uop) {
                case UnaryOp::Neg: v = -u; break;
                case UnaryOp::Sin: v = std::sin(u); break;
                case UnaryOp::Cos: v = std::cos(u); break;
                case UnaryOp::Tan: {
                    double c = std::cos(u);
                    if (std::fabs(c) < st.opt.division_guard) throw EvalError("tan near pole");
                    v = std::sin(u) / c;
                    break;
                }
                case UnaryOp::Cot: {
                    double s = std::sin(u);
                    if (std::fabs(s) < st.opt.division_guard) throw EvalError("cot near pole");
                    v = std::cos(u) / s;
                    break;
                }
                case UnaryOp::Ln:
                    if (!(u > 0)) throw EvalError("ln of non-positive value");
                    v = std::log(u);
                    break;
                case UnaryOp::Exp: v = std::exp(u); break;
                case UnaryOp::Sqrt:
                    if (u < 0) throw EvalError("sqrt of negative value");
                    v = std::sqrt(u);
                    break;
                case UnaryOp::Arccos:
                    if (std::fabs(u) > 1) throw EvalError("arccos argument outside [-1,1]");
                    v = std::acos(u);
                    break;
                case UnaryOp::Abs: v = std::fabs(u); break;
            }
            break;
        }
        case NodeKind::Binary: {
            double x = eval_rec(e->a, st);
            switch (e->bop) {
                case BinaryOp::Add: v = x + eval_rec(e->b, st); break;
                case BinaryOp::Sub: v = x - eval_rec(e->b, st); break;
                case BinaryOp::Mul: v = x * eval_rec(e->b, st); break;
                case BinaryOp::Div: {
                    double y = eval_rec(e->b, st);
                    if (std::fabs(y) < st.opt.division_guard)
                        throw EvalError("division by value inside guard band");
                    v = x / y;
                    break;
                }
                case BinaryOp::Pow: {
                    const long long pnum = e->b->num, pden = e->b->den;
                    if (pden == 1) {
                        if (x == 0 && pnum < 0) throw EvalError("zero base with negative power");
                        v = std::pow(x, static_cast<double>(pnum));
                    } else if (pden % 2 == 1) {
                        // odd root: real-valued for negative bases
                        if (x == 0 && pnum < 0) throw EvalError("zero base with negative power");
                        double mag = std::pow(std::fabs(x),
                                              static_cast<double>(pnum) / static_cast<double>(pden));
                        bool negative = x < 0 && (pnum % 2 != 0);
                        v = negative ? -mag : mag;
                    } else {
                        if (x < 0) throw EvalError("even root of negative value");
                        if (x == 0 && pnum < 0) throw EvalError("zero base with negative power");
                        v = std::pow(x, static_cast<double>(pnum) / static_cast<double>(pden));
                    }
                    break;
                }
            }
            break;
        }
    }
    if (!std::isfinite(v)) throw EvalError("non-finite value in evaluation");
    double a = std::fabs(v);
    if (a > st.max_abs) st.max_abs = a;
    return v;
}

} // namespace

double evaluate(const Expr& e, const Point& p, const EvalOptions& opt) {
    if (!e) throw Error("evaluate on empty expression");
    EvalState st{p, opt};
    return eval_rec(e, st);
}

ScaledValue evaluate_scaled(const Expr& e, const Point& p, const EvalOptions& opt) {
    if (!e) throw Error("evaluate on empty expression");
    EvalState st{p, opt};
    double v = eval_rec(e, st);
    return {v, 1.0 + st.max_abs};
}

} // namespace wv
