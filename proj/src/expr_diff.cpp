#include <cmath>
#include <stdexcept>

#include "revolve/expr.hpp"

namespace revolve::expr {

namespace build {

namespace {

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
    return std::make_shared<const Node>(Node{op, 0.0, {}, std::move(a), std::move(b)});
}

bool is_const(const NodePtr& n) { return n->op == Op::constant; }
bool is_value(const NodePtr& n, double v) { return is_const(n) && n->value == v; }

// Numeric value of a constant or of neg(constant).
bool folded_value(const NodePtr& n, double& out) {
    if (is_const(n)) {
        out = n->value;
        return true;
    }
    if (n->op == Op::neg && is_const(n->lhs)) {
        out = -n->lhs->value;
        return true;
    }
    return false;
}

}  // namespace

NodePtr constant(double v) {
    if (std::signbit(v)) return make(Op::neg, std::make_shared<const Node>(Node{Op::constant, -v, {}, nullptr, nullptr}));
    return std::make_shared<const Node>(Node{Op::constant, v, {}, nullptr, nullptr});
}

NodePtr pi() { return make(Op::pi); }

NodePtr parameter(std::string name) {
    return std::make_shared<const Node>(Node{Op::parameter, 0.0, std::move(name), nullptr, nullptr});
}

NodePtr variable(std::string name) {
    return std::make_shared<const Node>(Node{Op::variable, 0.0, std::move(name), nullptr, nullptr});
}

NodePtr neg(NodePtr u) {
    if (u->op == Op::neg) return u->lhs;
    if (is_value(u, 0.0)) return u;
    return make(Op::neg, std::move(u));
}

NodePtr unary(Op op, NodePtr u) {
    if (op == Op::neg) return neg(std::move(u));
    return make(op, std::move(u));
}

NodePtr add(NodePtr a, NodePtr b) {
    double x = 0, y = 0;
    if (folded_value(a, x) && folded_value(b, y)) return constant(x + y);
    if (is_value(a, 0.0)) return b;
    if (is_value(b, 0.0)) return a;
    if (b->op == Op::neg) return make(Op::sub, std::move(a), b->lhs);
    return make(Op::add, std::move(a), std::move(b));
}

NodePtr sub(NodePtr a, NodePtr b) {
    double x = 0, y = 0;
    if (folded_value(a, x) && folded_value(b, y)) return constant(x - y);
    if (is_value(b, 0.0)) return a;
    if (is_value(a, 0.0)) return neg(std::move(b));
    if (b->op == Op::neg) return make(Op::add, std::move(a), b->lhs);
    return make(Op::sub, std::move(a), std::move(b));
}

NodePtr mul(NodePtr a, NodePtr b) {
    double x = 0, y = 0;
    bool ca = folded_value(a, x), cb = folded_value(b, y);
    if (ca && cb) return constant(x * y);
    if ((ca && x == 0.0) || (cb && y == 0.0)) return constant(0.0);
    if (ca && x == 1.0) return b;
    if (cb && y == 1.0) return a;
    if (ca && x == -1.0) return neg(std::move(b));
    if (cb && y == -1.0) return neg(std::move(a));
    return make(Op::mul, std::move(a), std::move(b));
}

NodePtr div(NodePtr a, NodePtr b) {
    double x = 0, y = 0;
    bool ca = folded_value(a, x), cb = folded_value(b, y);
    if (ca && cb && y != 0.0) return constant(x / y);
    if (ca && x == 0.0) return constant(0.0);
    if (cb && y == 1.0) return a;
    return make(Op::div, std::move(a), std::move(b));
}

NodePtr pow(NodePtr a, NodePtr b) {
    double y = 0;
    if (folded_value(b, y)) {
        if (y == 0.0) return constant(1.0);
        if (y == 1.0) return a;
    }
    return make(Op::pow, std::move(a), std::move(b));
}

}  // namespace build

namespace {

bool depends_on(const Node& n, const std::string& var) {
    if (n.op == Op::variable) return n.name == var;
    return (n.lhs && depends_on(*n.lhs, var)) || (n.rhs && depends_on(*n.rhs, var));
}

class Differentiator {
public:
    explicit Differentiator(const std::string& var) : var_(var) {}

    NodePtr operator()(const NodePtr& n) const {
        using namespace build;
        if (!depends_on(*n, var_)) return constant(0.0);
        const NodePtr& u = n->lhs;
        const NodePtr& v = n->rhs;
        switch (n->op) {
            case Op::variable: return constant(1.0);
            case Op::neg: return neg((*this)(u));
            case Op::sin: return mul(unary(Op::cos, u), (*this)(u));
            case Op::cos: return neg(mul(unary(Op::sin, u), (*this)(u)));
            case Op::arccos:
                // -u' / sqrt(1 - u^2)
                return neg(div((*this)(u), unary(Op::sqrt, sub(constant(1.0), pow(u, constant(2.0))))));
            case Op::sqrt:
                // u' / (2 sqrt(u))
                return div((*this)(u), mul(constant(2.0), n));
            case Op::add: return add((*this)(u), (*this)(v));
            case Op::sub: return sub((*this)(u), (*this)(v));
            case Op::mul:
                if (!depends_on(*u, var_)) return mul(u, (*this)(v));
                if (!depends_on(*v, var_)) return mul((*this)(u), v);
                return add(mul((*this)(u), v), mul(u, (*this)(v)));
            case Op::div:
                if (!depends_on(*v, var_)) return div((*this)(u), v);
                // (u'v - uv') / v^2
                return div(sub(mul((*this)(u), v), mul(u, (*this)(v))), pow(v, constant(2.0)));
            case Op::pow:
                // exponent is variable-free by construction: v u^(v-1) u'
                if (depends_on(*v, var_)) throw InvalidArgument("differentiate: exponent depends on the variable");
                return mul(mul(v, pow(u, sub(v, constant(1.0)))), (*this)(u));
            default: break;
        }
        throw std::logic_error("differentiate: unsupported node");
    }

private:
    const std::string& var_;
};

}  // namespace

Expression differentiate(const Expression& e, const std::string& var) {
    if (var != e.variable()) throw InvalidArgument("differentiate: '" + var + "' is not the free variable");
    return Expression(Differentiator(var)(e.root_ptr()), e.variable(), e.parameters());
}

Expression differentiate(const Expression& e) { return differentiate(e, e.variable()); }

}  // namespace revolve::expr
