#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hypersurf/errors.hpp"
#include "hypersurf/hyperdual.hpp"

namespace hypersurf {

enum class UnaryOp { Neg, Sqrt, Exp, Log, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

// One node of the immutable expression tree.  Nodes are shared const,
// so trees are safe to evaluate from many threads concurrently.
struct ExprNode {
    enum class Kind { Constant, Variable, Unary, Binary };

    Kind kind;
    double value = 0.0;        // Constant
    std::size_t index = 0;     // Variable
    UnaryOp uop = UnaryOp::Neg;
    BinaryOp bop = BinaryOp::Add;
    ExprPtr lhs;               // Unary operand / Binary left
    ExprPtr rhs;               // Binary right

    static ExprPtr constant(double v);
    static ExprPtr variable(std::size_t index);
    static ExprPtr unary(UnaryOp op, ExprPtr operand);
    static ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
};

bool structurally_equal(const ExprNode& a, const ExprNode& b);

// A parsed scalar function f(x_1, ..., x_n).  Carries the variable names
// so it can be pretty-printed and re-parsed.
class Expression {
public:
    Expression(ExprPtr root, std::vector<std::string> variables);

    std::size_t arity() const { return variables_.size(); }
    const ExprPtr& root() const { return root_; }
    const std::vector<std::string>& variables() const { return variables_; }

    double operator()(std::span<const double> point) const;

    // Precedence-aware rendering; re-parsing it reproduces the tree.
    std::string to_string() const;

    bool structurally_equal_to(const Expression& other) const;

private:
    ExprPtr root_;
    std::vector<std::string> variables_;
};

Expression parse(std::string_view source, std::vector<std::string> variables);

// Recursive evaluation over any scalar with the hyper-dual op set.
// Domain violations throw DomainError instead of producing NaN/Inf.
template <typename S>
S evaluate(const ExprNode& node, std::span<const S> point) {
    switch (node.kind) {
        case ExprNode::Kind::Constant:
            return S(node.value);
        case ExprNode::Kind::Variable:
            return point[node.index];
        case ExprNode::Kind::Unary: {
            S v = evaluate(*node.lhs, point);
            using std::abs;
            using std::exp;
            using std::log;
            using std::sqrt;
            switch (node.uop) {
                case UnaryOp::Neg:
                    return -v;
                case UnaryOp::Sqrt:
                    if (real_part(v) < 0.0)
                        throw DomainError("sqrt of negative argument");
                    return sqrt(v);
                case UnaryOp::Exp:
                    return exp(v);
                case UnaryOp::Log:
                    if (real_part(v) <= 0.0)
                        throw DomainError("log of non-positive argument");
                    return log(v);
                case UnaryOp::Abs:
                    return abs(v);
            }
            break;
        }
        case ExprNode::Kind::Binary: {
            S l = evaluate(*node.lhs, point);
            S r = evaluate(*node.rhs, point);
            switch (node.bop) {
                case BinaryOp::Add: return l + r;
                case BinaryOp::Sub: return l - r;
                case BinaryOp::Mul: return l * r;
                case BinaryOp::Div:
                    if (real_part(r) == 0.0)
                        throw DomainError("division by zero");
                    return l / r;
                case BinaryOp::Pow:
                    return pow_checked(l, r);
            }
            break;
        }
    }
    throw Error("corrupt expression node");
}

template <typename S>
S evaluate(const Expression& expr, std::span<const S> point) {
    if (point.size() != expr.arity())
        throw InvalidArgument("evaluation point arity mismatch");
    return evaluate(*expr.root(), point);
}

}  // namespace hypersurf
