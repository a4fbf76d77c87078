#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "revolve/expr.hpp"

using namespace revolve;
using namespace revolve::expr;
namespace b = revolve::expr::build;

namespace {

constexpr double pi = std::numbers::pi;

NodePtr var(const char* n) { return b::variable(n); }

Expression with_param(std::string_view src, const char* variable, const char* param) {
    return parse(src, ParseOptions{variable, {param}});
}

// Random printable trees: nonnegative literals, variable-free exponents.
class TreeGenerator {
public:
    explicit TreeGenerator(std::uint64_t seed) : rng_(seed) {}

    NodePtr tree(int depth, bool allow_variable = true) {
        std::uniform_int_distribution<int> kind(0, depth <= 0 ? 3 : 13);
        const int k = kind(rng_);
        switch (k) {
            case 0: return b::constant(literal());
            case 1: return b::pi();
            case 2: return b::parameter("a");
            case 3: return allow_variable ? var("x") : b::constant(literal());
            case 4: return raw(Op::neg, tree(depth - 1, allow_variable));
            case 5: return raw(Op::sin, tree(depth - 1, allow_variable));
            case 6: return raw(Op::cos, tree(depth - 1, allow_variable));
            case 7: return raw(Op::arccos, tree(depth - 1, allow_variable));
            case 8: return raw(Op::sqrt, tree(depth - 1, allow_variable));
            case 9: return raw(Op::add, tree(depth - 1, allow_variable), tree(depth - 1, allow_variable));
            case 10: return raw(Op::sub, tree(depth - 1, allow_variable), tree(depth - 1, allow_variable));
            case 11: return raw(Op::mul, tree(depth - 1, allow_variable), tree(depth - 1, allow_variable));
            case 12: return raw(Op::div, tree(depth - 1, allow_variable), tree(depth - 1, allow_variable));
            default: return raw(Op::pow, tree(depth - 1, allow_variable), tree(depth - 2, false));
        }
    }

private:
    std::mt19937_64 rng_;

    double literal() {
        static constexpr double values[] = {0.0, 1.0, 2.5, 1e-7, 3.14, 123456.789, 1e20, 0.1};
        return values[std::uniform_int_distribution<int>(0, 7)(rng_)];
    }

    static NodePtr raw(Op op, NodePtr l, NodePtr r = nullptr) {
        return std::make_shared<const Node>(Node{op, 0.0, {}, std::move(l), std::move(r)});
    }
};

}  // namespace

TEST_SUITE("expr.parse") {
    TEST_CASE("example curve parses to the expected tree") {
        const Expression e = parse("x/pi + sin(x)");
        const NodePtr expected = std::make_shared<const Node>(
            Node{Op::add, 0, {}, std::make_shared<const Node>(Node{Op::div, 0, {}, var("x"), b::pi()}),
                 std::make_shared<const Node>(Node{Op::sin, 0, {}, var("x"), nullptr})});
        CHECK(structurally_equal(e.root(), *expected));
    }

    TEST_CASE("kepler curve with a parameter") {
        const Expression e = with_param("y - eps*sin(y)", "y", "eps");
        const NodePtr sin_y = std::make_shared<const Node>(Node{Op::sin, 0, {}, var("y"), nullptr});
        const NodePtr expected = std::make_shared<const Node>(
            Node{Op::sub, 0, {}, var("y"),
                 std::make_shared<const Node>(Node{Op::mul, 0, {}, b::parameter("eps"), sin_y})});
        CHECK(structurally_equal(e.root(), *expected));
        CHECK(e.variable() == "y");
    }

    TEST_CASE("doubled operator reports its offset") {
        try {
            parse("x + + 2");
            FAIL("expected SyntaxError");
        } catch (const SyntaxError& e) {
            CHECK(e.offset() == 4);
            CHECK_FALSE(e.expected().empty());
        }
    }

    TEST_CASE("malformed inputs") {
        CHECK_THROWS_AS(parse(""), SyntaxError);
        CHECK_THROWS_AS(parse("sin x"), SyntaxError);
        CHECK_THROWS_AS(parse("(x + 1"), SyntaxError);
        CHECK_THROWS_AS(parse("x 2"), SyntaxError);
        CHECK_THROWS_AS(parse("1."), SyntaxError);
        CHECK_THROWS_AS(parse("2e"), SyntaxError);
        CHECK_THROWS_AS(parse("2^x"), SyntaxError);
        CHECK_THROWS_AS(parse("x^(1 + sin(x))"), SyntaxError);
    }

    TEST_CASE("identifiers must be known") {
        CHECK_THROWS_AS(parse("x + z"), UnknownIdentifier);
        CHECK_THROWS_AS(parse("tan(x)"), UnknownIdentifier);
        CHECK_THROWS_AS(parse("y", ParseOptions{"x", {}}), UnknownIdentifier);
        CHECK_THROWS_AS(parse_constant("2*x"), UnknownIdentifier);
        try {
            parse("x + zeta");
        } catch (const UnknownIdentifier& e) {
            CHECK(e.name() == "zeta");
            CHECK(e.offset() == 4);
        }
    }

    TEST_CASE("reserved names cannot be declared") {
        CHECK_THROWS_AS(parse("1", ParseOptions{"pi", {}}), InvalidArgument);
        CHECK_THROWS_AS(parse("1", ParseOptions{"x", {"sin"}}), InvalidArgument);
        CHECK_THROWS_AS(parse("1", ParseOptions{"x", {"x"}}), InvalidArgument);
    }

    TEST_CASE("numeric literals") {
        CHECK(parse_constant("2.5e-3") == 2.5e-3);
        CHECK(parse_constant("1E+2") == 100.0);
        CHECK(parse_constant("007") == 7.0);
        CHECK(parse_constant("3*pi/2") == 3 * pi / 2);
    }
}

TEST_SUITE("expr.evaluate") {
    TEST_CASE("example curve at 2 pi") {
        CHECK(evaluate(parse("x/pi + sin(x)"), Bindings{{"x", 2 * pi}}) == doctest::Approx(2.0).epsilon(1e-15));
    }

    TEST_CASE("kepler curve at pi") {
        const double v = evaluate(with_param("y - eps*sin(y)", "y", "eps"), Bindings{{"y", pi}, {"eps", 0.5}});
        CHECK(std::abs(v - pi) <= 1e-15);
    }

    TEST_CASE("domain errors") {
        CHECK_THROWS_AS(evaluate(parse("arccos(x)"), Bindings{{"x", 2.0}}), DomainError);
        CHECK_THROWS_AS(evaluate(parse("sqrt(x)"), Bindings{{"x", -1e-300}}), DomainError);
        CHECK_THROWS_AS(evaluate(parse("x^0.5"), Bindings{{"x", -4.0}}), DomainError);
        CHECK(evaluate(parse("arccos(x)"), Bindings{{"x", -1.0}}) == pi);
    }

    TEST_CASE("unbound identifiers are errors, never defaults") {
        CHECK_THROWS_AS(evaluate(parse("x + 1"), Bindings{}), UnboundIdentifier);
        CHECK_THROWS_AS(evaluate(with_param("x*a", "x", "a"), Bindings{{"x", 1.0}}), UnboundIdentifier);
        CHECK_THROWS_AS(CompiledExpression(with_param("x*a", "x", "a"), Bindings{}), UnboundIdentifier);
    }

    TEST_CASE("precedence and associativity") {
        CHECK(parse_constant("2+3*4^2") == 50.0);
        CHECK(parse_constant("-2^2") == -4.0);
        CHECK(parse_constant("2^3^2") == 512.0);
        CHECK(parse_constant("2^-1") == 0.5);
        CHECK(parse_constant("8/4/2") == 1.0);
        CHECK(parse_constant("8-4-2") == 2.0);
        CHECK(parse_constant("-(3)*-(2)") == 6.0);
        CHECK(parse_constant("--3") == 3.0);
    }

    TEST_CASE("compiled form matches the tree walk bit for bit") {
        std::mt19937_64 rng(7);
        for (const auto& fx : fixtures::expression_corpus()) {
            const Expression e = fx.parse();
            const Bindings params = fx.parameter_bindings();
            const CompiledExpression compiled(e, params);
            std::uniform_real_distribution<double> u(fx.lo, fx.hi);
            for (int i = 0; i < 200; ++i) {
                const double t = u(rng);
                Bindings all = params;
                all.set(fx.variable, t);
                CHECK(compiled(t) == evaluate(e, all));
            }
        }
    }
}

TEST_SUITE("expr.differentiate") {
    TEST_CASE("example curve derivative") {
        CHECK(differentiate(parse("x/pi + sin(x)"), "x") == parse("1/pi + cos(x)"));
    }

    TEST_CASE("kepler curve derivative") {
        CHECK(differentiate(with_param("y - eps*sin(y)", "y", "eps"), "y") ==
              with_param("1 - eps*cos(y)", "y", "eps"));
    }

    TEST_CASE("constants differentiate to zero") {
        CHECK(differentiate(parse("7"), "x") == parse("0"));
        CHECK(differentiate(parse("pi^2 + 3"), "x") == parse("0"));
        CHECK(differentiate(with_param("a*pi", "x", "a"), "x") == parse("0"));
    }

    TEST_CASE("simplification keeps fixtures stable") {
        CHECK(differentiate(parse("x^2")) == parse("2*x"));
        CHECK(differentiate(parse("3*x")) == parse("3"));
        CHECK(differentiate(parse("cos(x)")) == parse("-sin(x)"));
        CHECK(differentiate(parse("x - 5")) == parse("1"));
        CHECK(differentiate(parse("5 - x")) == parse("-1"));
    }

    TEST_CASE("only the free variable") {
        CHECK_THROWS_AS(differentiate(parse("x"), "y"), InvalidArgument);
    }

    TEST_CASE("derivatives agree with central differences") {
        std::mt19937_64 rng(20261018);
        for (const auto& fx : fixtures::expression_corpus()) {
            const Expression e = fx.parse();
            const Bindings params = fx.parameter_bindings();
            const CompiledExpression f(e, params);
            const CompiledExpression df(differentiate(e), params);
            std::uniform_real_distribution<double> u(fx.lo + 1e-3, fx.hi - 1e-3);
            int bad = 0;
            for (int i = 0; i < 1000; ++i) {
                const double t = u(rng);
                const double fd = oracle::central_difference([&](double s) { return f(s); }, t);
                const double sym = df(t);
                if (std::abs(sym - fd) > 1e-5 * (1 + std::abs(sym))) ++bad;
            }
            INFO(fx.source);
            CHECK(bad == 0);
        }
    }
}

TEST_SUITE("expr.print") {
    TEST_CASE("readable output") {
        CHECK(print(parse("x/pi + sin(x)")) == "x/pi + sin(x)");
        CHECK(print(parse("(x - (1 - x))*2^-a^2", ParseOptions{"x", {"a"}})) == "(x - (1 - x))*2^-a^2");
    }

    TEST_CASE("round trip over random trees") {
        TreeGenerator gen(12345);
        for (int i = 0; i < 2000; ++i) {
            const Expression e(gen.tree(5), "x", {"a"});
            const std::string text = print(e);
            INFO(text);
            const Expression back = parse(text, ParseOptions{"x", {"a"}});
            CHECK(back == e);
        }
    }

    TEST_CASE("derivatives round trip") {
        for (const auto& fx : fixtures::expression_corpus()) {
            const Expression d = differentiate(fx.parse());
            ParseOptions opt{fx.variable, {}};
            for (const auto& [k, v] : fx.parameters) opt.parameters.insert(k);
            CHECK(parse(print(d), opt) == d);
        }
    }
}
