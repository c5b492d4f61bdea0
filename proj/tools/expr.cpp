#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace hetdiff::cli {

namespace detail {

enum class Kind { constant, variable, negate, add, sub, mul, div, pow, call };

struct Node {
    Kind kind = Kind::constant;
    double value = 0.0;
    double (*func)(double) = nullptr;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

double eval(const Node& n, double x) {
    switch (n.kind) {
    case Kind::constant:
        return n.value;
    case Kind::variable:
        return x;
    case Kind::negate:
        return -eval(*n.lhs, x);
    case Kind::add:
        return eval(*n.lhs, x) + eval(*n.rhs, x);
    case Kind::sub:
        return eval(*n.lhs, x) - eval(*n.rhs, x);
    case Kind::mul:
        return eval(*n.lhs, x) * eval(*n.rhs, x);
    case Kind::div:
        return eval(*n.lhs, x) / eval(*n.rhs, x);
    case Kind::pow:
        return std::pow(eval(*n.lhs, x), eval(*n.rhs, x));
    case Kind::call:
        return n.func(eval(*n.lhs, x));
    }
    return 0.0;
}

using NodePtr = std::shared_ptr<const Node>;

NodePtr make_leaf(Kind kind, double value = 0.0) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->value = value;
    return n;
}

NodePtr make_binary(Kind kind, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_call(double (*func)(double), NodePtr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::call;
    n->func = func;
    n->lhs = std::move(arg);
    return n;
}

const std::map<std::string, double (*)(double)>& function_table() {
    static const std::map<std::string, double (*)(double)> table = {
        {"sin", std::sin},   {"cos", std::cos},   {"tan", std::tan},
        {"exp", std::exp},   {"log", std::log},   {"sqrt", std::sqrt},
        {"abs", std::fabs},  {"erf", std::erf},   {"erfc", std::erfc},
        {"tanh", std::tanh},
    };
    return table;
}

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& message) const {
        throw std::invalid_argument("expression error at position " + std::to_string(pos) +
                                    ": " + message);
    }

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    }

    bool consume(char c) {
        skip_space();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_space();
        return pos < text.size() ? text[pos] : '\0';
    }

    NodePtr parse_expression() {
        NodePtr node = parse_term();
        for (;;) {
            if (consume('+')) {
                node = make_binary(Kind::add, node, parse_term());
            } else if (consume('-')) {
                node = make_binary(Kind::sub, node, parse_term());
            } else {
                return node;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr node = parse_factor();
        for (;;) {
            if (consume('*')) {
                node = make_binary(Kind::mul, node, parse_factor());
            } else if (consume('/')) {
                node = make_binary(Kind::div, node, parse_factor());
            } else {
                return node;
            }
        }
    }

    NodePtr parse_factor() {
        NodePtr base = parse_unary();
        if (consume('^')) {
            return make_binary(Kind::pow, base, parse_factor());
        }
        return base;
    }

    NodePtr parse_unary() {
        if (consume('-')) {
            auto n = std::make_shared<Node>();
            n->kind = Kind::negate;
            n->lhs = parse_unary();
            return n;
        }
        consume('+');
        return parse_primary();
    }

    NodePtr parse_primary() {
        skip_space();
        if (pos >= text.size()) {
            fail("unexpected end of input");
        }
        const char c = text[pos];
        if (c == '(') {
            ++pos;
            NodePtr inner = parse_expression();
            if (!consume(')')) {
                fail("expected ')'");
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return parse_identifier();
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr parse_number() {
        const char* begin = text.c_str() + pos;
        char* end = nullptr;
        const double value = std::strtod(begin, &end);
        if (end == begin) {
            fail("malformed number");
        }
        pos += static_cast<std::size_t>(end - begin);
        return make_leaf(Kind::constant, value);
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            ++pos;
        }
        const std::string name = text.substr(start, pos - start);
        if (name == "x") {
            return make_leaf(Kind::variable);
        }
        if (name == "pi") {
            return make_leaf(Kind::constant, 3.14159265358979323846);
        }
        if (name == "e") {
            return make_leaf(Kind::constant, 2.71828182845904523536);
        }
        const auto it = function_table().find(name);
        if (it == function_table().end()) {
            pos = start;
            fail("unknown name '" + name + "'");
        }
        if (!consume('(')) {
            fail("function '" + name + "' needs parenthesized argument");
        }
        NodePtr arg = parse_expression();
        if (!consume(')')) {
            fail("expected ')'");
        }
        return make_call(it->second, arg);
    }
};

} // namespace

} // namespace detail

Expression Expression::parse(const std::string& text) {
    detail::Parser parser(text);
    auto root = parser.parse_expression();
    parser.skip_space();
    if (parser.pos != text.size()) {
        parser.fail("trailing input");
    }
    return Expression(std::move(root));
}

double Expression::operator()(double x) const { return detail::eval(*root_, x); }

std::function<double(double)> Expression::as_function() const {
    auto root = root_;
    return [root](double x) { return detail::eval(*root, x); };
}

} // namespace hetdiff::cli
