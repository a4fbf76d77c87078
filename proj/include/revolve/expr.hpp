#pragma once

// Curve expression language: a closed grammar of univariate real functions
// with named parameters, evaluable and symbolically differentiable.
//
//   expr   := term (("+"|"-") term)*
//   term   := unary (("*"|"/") unary)*
//   unary  := "-" unary | power
//   power  := primary ("^" unary)?          right-associative
//   primary:= number | ident | "(" expr ")" | func "(" expr ")"
//   func   := "sin" | "cos" | "arccos" | "sqrt"
//
// `pi` is reserved. Exponents must not depend on the free variable.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revolve/error.hpp"

namespace revolve::expr {

enum class Op : std::uint8_t {
    constant,
    pi,
    parameter,
    variable,
    neg,
    sin,
    cos,
    arccos,
    sqrt,
    add,
    sub,
    mul,
    div,
    pow,
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    Op op;
    double value = 0.0;  // constant only
    std::string name;    // parameter / variable only
    NodePtr lhs;         // unary operand or left operand
    NodePtr rhs;         // right operand
};

/// Identifier -> value. Lookup of an unbound name throws UnboundIdentifier.
class Bindings {
public:
    Bindings() = default;
    Bindings(std::initializer_list<std::pair<const std::string, double>> init) : values_(init) {}

    void set(const std::string& name, double value) { values_[name] = value; }
    double at(const std::string& name) const;
    bool contains(const std::string& name) const { return values_.contains(name); }
    const std::map<std::string, double>& values() const noexcept { return values_; }

private:
    std::map<std::string, double> values_;
};

/// Immutable expression tree in a single free variable.
class Expression {
public:
    Expression(NodePtr root, std::string variable, std::set<std::string> parameters);

    const Node& root() const noexcept { return *root_; }
    const NodePtr& root_ptr() const noexcept { return root_; }
    const std::string& variable() const noexcept { return variable_; }
    const std::set<std::string>& parameters() const noexcept { return parameters_; }

    bool depends_on_variable() const;

    friend bool operator==(const Expression& a, const Expression& b);

private:
    NodePtr root_;
    std::string variable_;
    std::set<std::string> parameters_;
};

struct ParseOptions {
    std::string variable = "x";  // empty: variable-free input (interval endpoints)
    std::set<std::string> parameters;
};

Expression parse(std::string_view source, const ParseOptions& options = {});

/// Parses a variable-free expression (e.g. "3*pi/2") and evaluates it.
double parse_constant(std::string_view source);

/// Tree-walking evaluation. Throws UnboundIdentifier, DomainError.
double evaluate(const Expression& e, const Bindings& bindings);

Expression differentiate(const Expression& e, const std::string& var);
Expression differentiate(const Expression& e);

/// Minimal-parenthesis rendering; parse(print(e)) reproduces e.
std::string print(const Expression& e);

bool structurally_equal(const Node& a, const Node& b);

// Node construction with the light simplification used by differentiate:
// constants fold, 0 and 1 identities vanish, double negation cancels.
// Folded negative constants are kept as neg(constant) so that printing
// and reparsing is structurally stable.
namespace build {
NodePtr constant(double v);
NodePtr pi();
NodePtr parameter(std::string name);
NodePtr variable(std::string name);
NodePtr neg(NodePtr u);
NodePtr unary(Op op, NodePtr u);
NodePtr add(NodePtr a, NodePtr b);
NodePtr sub(NodePtr a, NodePtr b);
NodePtr mul(NodePtr a, NodePtr b);
NodePtr div(NodePtr a, NodePtr b);
NodePtr pow(NodePtr a, NodePtr b);
}  // namespace build

/// Flattened postfix form of an expression with parameters resolved. Cheap to
/// call in tight loops; safe to share across threads.
class CompiledExpression {
public:
    CompiledExpression(const Expression& e, const Bindings& parameters);

    double operator()(double x) const;

private:
    struct Instr {
        Op op;
        double value;
    };
    std::vector<Instr> program_;
    std::size_t max_stack_ = 0;
};

}  // namespace revolve::expr
