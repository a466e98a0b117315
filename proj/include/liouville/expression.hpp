#ifndef LIOUVILLE_EXPRESSION_HPP
#define LIOUVILLE_EXPRESSION_HPP

// Small arithmetic language for per-vertex potentials and candidate
// functions given on the command line:
//
//   numbers, + - * / ^ (right associative), unary minus, parentheses,
//   exp log sqrt abs sin cos tanh, pow(a, b), min(a, b), max(a, b),
//   variables x1..x9 (coordinates), r (distance to the base vertex),
//   r2 (its square), n (level or hop index), pi.
//
// What the variables mean is decided by the caller per family; a variable
// the caller cannot supply is an EvaluationError at evaluation time.

#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace liouville {

struct ExpressionInputs {
    std::span<const double> coordinates;
    double r = 0.0;
    double r2 = 0.0;
    double n = 0.0;
    bool has_r = false;
    bool has_n = false;
};

class Expression {
public:
    /// Throws SpecError naming the offending column.
    static Expression parse(const std::string& text);

    double evaluate(const ExpressionInputs& in) const;
    const std::string& text() const noexcept { return text_; }

    /// Largest coordinate index used (x3 -> 3), 0 if none.
    int coordinate_arity() const noexcept { return arity_; }
    bool uses_distance() const noexcept { return uses_r_; }
    bool uses_level() const noexcept { return uses_n_; }

    struct Node;

private:
    std::string text_;
    std::shared_ptr<const Node> root_;
    int arity_ = 0;
    bool uses_r_ = false;
    bool uses_n_ = false;
};

}  // namespace liouville

#endif
