#include "revolve/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace revolve::expr {

double Bindings::at(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) throw UnboundIdentifier(name);
    return it->second;
}

Expression::Expression(NodePtr root, std::string variable, std::set<std::string> parameters)
    : root_(std::move(root)), variable_(std::move(variable)), parameters_(std::move(parameters)) {
    if (!root_) throw std::invalid_argument("Expression: null root");
}

namespace {

bool mentions_variable(const Node& n) {
    if (n.op == Op::variable) return true;
    return (n.lhs && mentions_variable(*n.lhs)) || (n.rhs && mentions_variable(*n.rhs));
}

double checked_arccos(double u) {
    if (!(u >= -1.0 && u <= 1.0)) throw DomainError("arccos argument outside [-1, 1]");
    return std::acos(u);
}

double checked_sqrt(double u) {
    if (!(u >= 0.0)) throw DomainError("sqrt of negative argument");
    return std::sqrt(u);
}

double checked_pow(double u, double v) {
    double r = std::pow(u, v);
    if (std::isnan(r) && !std::isnan(u) && !std::isnan(v))
        throw DomainError("power of negative base with non-integer exponent");
    return r;
}

double eval_node(const Node& n, const std::string& var, const Bindings& b) {
    switch (n.op) {
        case Op::constant: return n.value;
        case Op::pi: return std::numbers::pi;
        case Op::parameter: return b.at(n.name);
        case Op::variable: return b.at(var);
        case Op::neg: return -eval_node(*n.lhs, var, b);
        case Op::sin: return std::sin(eval_node(*n.lhs, var, b));
        case Op::cos: return std::cos(eval_node(*n.lhs, var, b));
        case Op::arccos: return checked_arccos(eval_node(*n.lhs, var, b));
        case Op::sqrt: return checked_sqrt(eval_node(*n.lhs, var, b));
        case Op::add: return eval_node(*n.lhs, var, b) + eval_node(*n.rhs, var, b);
        case Op::sub: return eval_node(*n.lhs, var, b) - eval_node(*n.rhs, var, b);
        case Op::mul: return eval_node(*n.lhs, var, b) * eval_node(*n.rhs, var, b);
        case Op::div: return eval_node(*n.lhs, var, b) / eval_node(*n.rhs, var, b);
        case Op::pow: return checked_pow(eval_node(*n.lhs, var, b), eval_node(*n.rhs, var, b));
    }
    throw std::logic_error("evaluate: unhandled node");
}

// Binding strength used by the printer.
int precedence(const Node& n) {
    switch (n.op) {
        case Op::add:
        case Op::sub: return 1;
        case Op::mul:
        case Op::div: return 2;
        case Op::neg: return 3;
        case Op::pow: return 4;
        default: return 5;
    }
}

const char* function_name(Op op) {
    switch (op) {
        case Op::sin: return "sin";
        case Op::cos: return "cos";
        case Op::arccos: return "arccos";
        case Op::sqrt: return "sqrt";
        default: return nullptr;
    }
}

void print_node(const Node& n, std::string& out);

void print_wrapped(const Node& n, bool wrap, std::string& out) {
    if (wrap) out += '(';
    print_node(n, out);
    if (wrap) out += ')';
}

void print_number(double v, std::string& out) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw std::runtime_error("print: number formatting failed");
    out.append(buf.data(), end);
}

void print_node(const Node& n, std::string& out) {
    switch (n.op) {
        case Op::constant:
            if (!std::isfinite(n.value) || std::signbit(n.value))
                throw InvalidArgument("print: constant is not a printable literal");
            print_number(n.value, out);
            return;
        case Op::pi: out += "pi"; return;
        case Op::parameter:
        case Op::variable: out += n.name; return;
        case Op::neg:
            out += '-';
            print_wrapped(*n.lhs, precedence(*n.lhs) < 3, out);
            return;
        case Op::sin:
        case Op::cos:
        case Op::arccos:
        case Op::sqrt:
            out += function_name(n.op);
            print_wrapped(*n.lhs, true, out);
            return;
        case Op::add:
        case Op::sub:
            print_wrapped(*n.lhs, precedence(*n.lhs) < 1, out);
            out += n.op == Op::add ? " + " : " - ";
            print_wrapped(*n.rhs, precedence(*n.rhs) <= 1, out);
            return;
        case Op::mul:
        case Op::div:
            print_wrapped(*n.lhs, precedence(*n.lhs) < 2, out);
            out += n.op == Op::mul ? "*" : "/";
            print_wrapped(*n.rhs, precedence(*n.rhs) <= 2, out);
            return;
        case Op::pow:
            print_wrapped(*n.lhs, precedence(*n.lhs) <= 4, out);
            out += '^';
            print_wrapped(*n.rhs, precedence(*n.rhs) < 3, out);
            return;
    }
}

}  // namespace

bool Expression::depends_on_variable() const { return mentions_variable(*root_); }

bool structurally_equal(const Node& a, const Node& b) {
    if (&a == &b) return true;
    if (a.op != b.op) return false;
    switch (a.op) {
        case Op::constant: return a.value == b.value;
        case Op::parameter:
        case Op::variable: return a.name == b.name;
        default: break;
    }
    if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
    if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
    if (a.lhs && !structurally_equal(*a.lhs, *b.lhs)) return false;
    if (a.rhs && !structurally_equal(*a.rhs, *b.rhs)) return false;
    return true;
}

bool operator==(const Expression& a, const Expression& b) {
    return a.variable_ == b.variable_ && structurally_equal(*a.root_, *b.root_);
}

double evaluate(const Expression& e, const Bindings& bindings) {
    return eval_node(e.root(), e.variable(), bindings);
}

std::string print(const Expression& e) {
    std::string out;
    print_node(e.root(), out);
    return out;
}

// --- compiled form -------------------------------------------------------

namespace {

struct Emitter {
    const std::string& var;
    const Bindings& params;
    std::vector<std::pair<Op, double>>& program;
    std::size_t depth = 0;
    std::size_t max_depth = 0;

    void push() { max_depth = std::max(max_depth, ++depth); }

    void emit(const Node& n) {
        switch (n.op) {
            case Op::constant:
                program.emplace_back(Op::constant, n.value);
                push();
                return;
            case Op::pi:
                program.emplace_back(Op::constant, std::numbers::pi);
                push();
                return;
            case Op::parameter:
                program.emplace_back(Op::constant, params.at(n.name));
                push();
                return;
            case Op::variable:
                program.emplace_back(Op::variable, 0.0);
                push();
                return;
            case Op::neg:
            case Op::sin:
            case Op::cos:
            case Op::arccos:
            case Op::sqrt:
                emit(*n.lhs);
                program.emplace_back(n.op, 0.0);
                return;
            default:
                emit(*n.lhs);
                emit(*n.rhs);
                program.emplace_back(n.op, 0.0);
                --depth;
                return;
        }
    }
};

}  // namespace

CompiledExpression::CompiledExpression(const Expression& e, const Bindings& parameters) {
    std::vector<std::pair<Op, double>> raw;
    Emitter em{e.variable(), parameters, raw};
    em.emit(e.root());
    program_.reserve(raw.size());
    for (auto [op, v] : raw) program_.push_back({op, v});
    max_stack_ = em.max_depth;
}

double CompiledExpression::operator()(double x) const {
    constexpr std::size_t inline_capacity = 32;
    std::array<double, inline_capacity> small{};
    std::vector<double> large;
    double* stack = small.data();
    if (max_stack_ > inline_capacity) {
        large.resize(max_stack_);
        stack = large.data();
    }
    std::size_t top = 0;
    for (const Instr& in : program_) {
        switch (in.op) {
            case Op::constant: stack[top++] = in.value; break;
            case Op::variable: stack[top++] = x; break;
            case Op::neg: stack[top - 1] = -stack[top - 1]; break;
            case Op::sin: stack[top - 1] = std::sin(stack[top - 1]); break;
            case Op::cos: stack[top - 1] = std::cos(stack[top - 1]); break;
            case Op::arccos: stack[top - 1] = checked_arccos(stack[top - 1]); break;
            case Op::sqrt: stack[top - 1] = checked_sqrt(stack[top - 1]); break;
            case Op::add: --top; stack[top - 1] = stack[top - 1] + stack[top]; break;
            case Op::sub: --top; stack[top - 1] = stack[top - 1] - stack[top]; break;
            case Op::mul: --top; stack[top - 1] = stack[top - 1] * stack[top]; break;
            case Op::div: --top; stack[top - 1] = stack[top - 1] / stack[top]; break;
            case Op::pow: --top; stack[top - 1] = checked_pow(stack[top - 1], stack[top]); break;
            default: throw std::logic_error("compiled expression: bad opcode");
        }
    }
    return stack[0];
}

}  // namespace revolve::expr
