#include <cctype>
#include <charconv>
#include <cmath>

#include "revolve/expr.hpp"

namespace revolve::expr {

namespace {

bool is_function(std::string_view name) {
    return name == "sin" || name == "cos" || name == "arccos" || name == "sqrt";
}

Op function_op(std::string_view name) {
    if (name == "sin") return Op::sin;
    if (name == "cos") return Op::cos;
    if (name == "arccos") return Op::arccos;
    return Op::sqrt;
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

class Parser {
public:
    Parser(std::string_view src, const ParseOptions& opt) : src_(src), opt_(opt) {}

    NodePtr parse_all() {
        skip_space();
        NodePtr root = parse_expr();
        skip_space();
        if (pos_ != src_.size()) fail({"operator", "end of input"});
        return root;
    }

private:
    std::string_view src_;
    const ParseOptions& opt_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        std::string found = pos_ < src_.size() ? "'" + std::string(1, src_[pos_]) + "'" : "end of input";
        throw SyntaxError(pos_, std::move(expected), found);
    }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail({std::string("'") + c + "'"});
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                lhs = make_binary(Op::add, lhs, parse_term());
            } else if (accept('-')) {
                lhs = make_binary(Op::sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = make_binary(Op::mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = make_binary(Op::div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return std::make_shared<const Node>(Node{Op::neg, 0.0, {}, parse_unary(), nullptr});
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (!accept('^')) return base;
        skip_space();
        std::size_t exponent_at = pos_;
        NodePtr exponent = parse_unary();
        if (mentions_variable(*exponent)) {
            pos_ = exponent_at;
            fail({"exponent independent of " + opt_.variable});
        }
        return make_binary(Op::pow, base, exponent);
    }

    NodePtr parse_primary() {
        skip_space();
        if (pos_ >= src_.size()) fail({"number", "identifier", "'('", "'-'"});
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
        if (accept('(')) {
            NodePtr inner = parse_expr();
            expect(')');
            return inner;
        }
        fail({"number", "identifier", "'('", "'-'"});
    }

    NodePtr parse_number() {
        std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) fail({"digit"});
            digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) fail({"digit"});
            digits();
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (ec != std::errc{} || !std::isfinite(value)) {
            pos_ = start;
            fail({"finite number"});
        }
        return std::make_shared<const Node>(Node{Op::constant, value, {}, nullptr, nullptr});
    }

    NodePtr parse_identifier() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        std::string name(src_.substr(start, pos_ - start));
        if (is_function(name)) {
            expect('(');
            NodePtr arg = parse_expr();
            expect(')');
            return std::make_shared<const Node>(Node{function_op(name), 0.0, {}, arg, nullptr});
        }
        if (name == "pi") return std::make_shared<const Node>(Node{Op::pi, 0.0, {}, nullptr, nullptr});
        if (!opt_.variable.empty() && name == opt_.variable)
            return std::make_shared<const Node>(Node{Op::variable, 0.0, name, nullptr, nullptr});
        if (opt_.parameters.contains(name))
            return std::make_shared<const Node>(Node{Op::parameter, 0.0, name, nullptr, nullptr});
        throw UnknownIdentifier(name, start);
    }

    static NodePtr make_binary(Op op, NodePtr a, NodePtr b) {
        return std::make_shared<const Node>(Node{op, 0.0, {}, std::move(a), std::move(b)});
    }

    static bool mentions_variable(const Node& n) {
        if (n.op == Op::variable) return true;
        return (n.lhs && mentions_variable(*n.lhs)) || (n.rhs && mentions_variable(*n.rhs));
    }
};

void check_name(const std::string& name, const char* what) {
    if (!is_identifier(name)) throw InvalidArgument(std::string(what) + " '" + name + "' is not an identifier");
    if (name == "pi" || is_function(name)) throw InvalidArgument(std::string(what) + " '" + name + "' is reserved");
}

}  // namespace

Expression parse(std::string_view source, const ParseOptions& options) {
    if (!options.variable.empty()) check_name(options.variable, "variable");
    for (const auto& p : options.parameters) {
        check_name(p, "parameter");
        if (p == options.variable) throw InvalidArgument("parameter '" + p + "' shadows the variable");
    }
    Parser parser(source, options);
    NodePtr root = parser.parse_all();
    return Expression(std::move(root), options.variable, options.parameters);
}

double parse_constant(std::string_view source) {
    Expression e = parse(source, ParseOptions{.variable = "", .parameters = {}});
    return evaluate(e, Bindings{});
}

}  // namespace revolve::expr
