#pragma once

#include <functional>
#include <memory>
#include <string>

namespace hetdiff::cli {

namespace detail {
struct Node;
}

/// Parsed arithmetic expression in one variable named x.
///
/// Supports + - * / ^ (right associative), unary minus, parentheses,
/// the constants pi and e, and the functions sin, cos, tan, exp, log,
/// sqrt, abs, erf, erfc, tanh. Evaluation is pure and thread-safe.
class Expression {
public:
    /// Throws std::invalid_argument with a position hint on bad input.
    static Expression parse(const std::string& text);

    double operator()(double x) const;

    /// Callable sharing ownership of the parsed tree.
    std::function<double(double)> as_function() const;

private:
    explicit Expression(std::shared_ptr<const detail::Node> root) : root_(std::move(root)) {}

    std::shared_ptr<const detail::Node> root_;
};

} // namespace hetdiff::cli
