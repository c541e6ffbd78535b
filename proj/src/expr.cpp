#include "hypersurf/expr.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace hypersurf {

ExprPtr ExprNode::constant(double v) {
    if (!std::isfinite(v)) throw InvalidArgument("constant must be finite");
    auto n = std::make_shared<ExprNode>();
    n->kind = Kind::Constant;
    n->value = v;
    return n;
}

ExprPtr ExprNode::variable(std::size_t index) {
    auto n = std::make_shared<ExprNode>();
    n->kind = Kind::Variable;
    n->index = index;
    return n;
}

ExprPtr ExprNode::unary(UnaryOp op, ExprPtr operand) {
    auto n = std::make_shared<ExprNode>();
    n->kind = Kind::Unary;
    n->uop = op;
    n->lhs = std::move(operand);
    return n;
}

ExprPtr ExprNode::binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    auto n = std::make_shared<ExprNode>();
    n->kind = Kind::Binary;
    n->bop = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

bool structurally_equal(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprNode::Kind::Constant:
            return a.value == b.value;
        case ExprNode::Kind::Variable:
            return a.index == b.index;
        case ExprNode::Kind::Unary:
            return a.uop == b.uop && structurally_equal(*a.lhs, *b.lhs);
        case ExprNode::Kind::Binary:
            return a.bop == b.bop && structurally_equal(*a.lhs, *b.lhs) &&
                   structurally_equal(*a.rhs, *b.rhs);
    }
    return false;
}

namespace {

std::size_t max_variable_index(const ExprNode& node, std::size_t seen) {
    switch (node.kind) {
        case ExprNode::Kind::Constant:
            return seen;
        case ExprNode::Kind::Variable:
            return std::max(seen, node.index + 1);
        case ExprNode::Kind::Unary:
            return max_variable_index(*node.lhs, seen);
        case ExprNode::Kind::Binary:
            return std::max(max_variable_index(*node.lhs, seen),
                            max_variable_index(*node.rhs, seen));
    }
    return seen;
}

}  // namespace

Expression::Expression(ExprPtr root, std::vector<std::string> variables)
    : root_(std::move(root)), variables_(std::move(variables)) {
    if (!root_) throw InvalidArgument("null expression");
    if (max_variable_index(*root_, 0) > variables_.size())
        throw InvalidArgument("variable index exceeds declared arity");
}

double Expression::operator()(std::span<const double> point) const {
    return evaluate<double>(*this, point);
}

bool Expression::structurally_equal_to(const Expression& other) const {
    return variables_ == other.variables_ &&
           structurally_equal(*root_, *other.root_);
}

// ---------------------------------------------------------------------------
// Parser.  Grammar (see docs/grammar.ebnf):
//   expression = term { ("+" | "-") term } ;
//   term       = unary { ("*" | "/") unary } ;
//   unary      = "-" unary | power ;
//   power      = primary [ "^" unary ] ;          (right-associative)
//   primary    = number | identifier | function "(" expression ")"
//              | "(" expression ")" ;
// "^" binds tighter than unary minus: -x^2 parses as -(x^2).
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum class Kind { Number, Identifier, Op, LParen, RParen, End };
    Kind kind;
    std::string text;
    double number = 0.0;
    std::size_t position = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        std::size_t start = pos_;
        if (pos_ >= src_.size()) return {Token::Kind::End, "", 0.0, start};
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = src_.data() + pos_;
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            if (end == begin) throw ParseError("malformed number", start);
            pos_ += static_cast<std::size_t>(end - begin);
            return {Token::Kind::Number, std::string(begin, static_cast<const char*>(end)), v, start};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = pos_;
            while (j < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
                ++j;
            Token t{Token::Kind::Identifier, std::string(src_.substr(pos_, j - pos_)), 0.0, start};
            pos_ = j;
            return t;
        }
        switch (c) {
            case '+': case '-': case '*': case '/': case '^':
                ++pos_;
                return {Token::Kind::Op, std::string(1, c), 0.0, start};
            case '(':
                ++pos_;
                return {Token::Kind::LParen, "(", 0.0, start};
            case ')':
                ++pos_;
                return {Token::Kind::RParen, ")", 0.0, start};
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
};

const std::map<std::string, UnaryOp, std::less<>>& function_table() {
    static const std::map<std::string, UnaryOp, std::less<>> table = {
        {"sqrt", UnaryOp::Sqrt},
        {"exp", UnaryOp::Exp},
        {"log", UnaryOp::Log},
        {"abs", UnaryOp::Abs},
    };
    return table;
}

class Parser {
public:
    Parser(std::string_view src, const std::vector<std::string>& variables)
        : lexer_(src) {
        for (std::size_t i = 0; i < variables.size(); ++i) {
            if (!variable_index_.emplace(variables[i], i).second)
                throw InvalidArgument("duplicate variable name: " + variables[i]);
        }
        advance();
    }

    ExprPtr run() {
        ExprPtr e = expression();
        if (current_.kind != Token::Kind::End)
            throw ParseError("unexpected token \"" + current_.text + "\"", current_.position);
        return e;
    }

private:
    void advance() { current_ = lexer_.next(); }

    bool accept_op(char op) {
        if (current_.kind == Token::Kind::Op && current_.text[0] == op) {
            advance();
            return true;
        }
        return false;
    }

    ExprPtr expression() {
        ExprPtr lhs = term();
        for (;;) {
            if (accept_op('+')) lhs = ExprNode::binary(BinaryOp::Add, lhs, term());
            else if (accept_op('-')) lhs = ExprNode::binary(BinaryOp::Sub, lhs, term());
            else return lhs;
        }
    }

    ExprPtr term() {
        ExprPtr lhs = unary();
        for (;;) {
            if (accept_op('*')) lhs = ExprNode::binary(BinaryOp::Mul, lhs, unary());
            else if (accept_op('/')) lhs = ExprNode::binary(BinaryOp::Div, lhs, unary());
            else return lhs;
        }
    }

    ExprPtr unary() {
        if (accept_op('-')) return ExprNode::unary(UnaryOp::Neg, unary());
        return power();
    }

    ExprPtr power() {
        ExprPtr base = primary();
        if (accept_op('^')) return ExprNode::binary(BinaryOp::Pow, base, unary());
        return base;
    }

    ExprPtr primary() {
        Token t = current_;
        switch (t.kind) {
            case Token::Kind::Number:
                advance();
                return ExprNode::constant(t.number);
            case Token::Kind::Identifier: {
                advance();
                if (auto fn = function_table().find(t.text); fn != function_table().end()) {
                    if (current_.kind != Token::Kind::LParen)
                        throw ParseError("expected '(' after function " + t.text,
                                         current_.position);
                    advance();
                    ExprPtr arg = expression();
                    expect_rparen();
                    return ExprNode::unary(fn->second, arg);
                }
                if (auto it = variable_index_.find(t.text); it != variable_index_.end())
                    return ExprNode::variable(it->second);
                if (t.text == "pi") return ExprNode::constant(std::numbers::pi);
                if (t.text == "e") return ExprNode::constant(std::numbers::e);
                throw ParseError("unknown identifier \"" + t.text + "\"", t.position);
            }
            case Token::Kind::LParen: {
                advance();
                ExprPtr e = expression();
                expect_rparen();
                return e;
            }
            default:
                throw ParseError("unexpected token \"" +
                                     (t.kind == Token::Kind::End ? "<end>" : t.text) + "\"",
                                 t.position);
        }
    }

    void expect_rparen() {
        if (current_.kind != Token::Kind::RParen)
            throw ParseError("expected ')'", current_.position);
        advance();
    }

    Lexer lexer_;
    Token current_{Token::Kind::End, "", 0.0, 0};
    std::map<std::string, std::size_t, std::less<>> variable_index_;
};

}  // namespace

Expression parse(std::string_view source, std::vector<std::string> variables) {
    if (source.empty()) throw InvalidArgument("empty expression source");
    Parser parser(source, variables);
    return Expression(parser.run(), std::move(variables));
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

// Precedence levels: Add/Sub 1, Mul/Div 2, unary minus 3, Pow 4, atom 5.
int node_precedence(const ExprNode& n) {
    switch (n.kind) {
        case ExprNode::Kind::Constant:
            return n.value < 0.0 ? 3 : 5;
        case ExprNode::Kind::Variable:
            return 5;
        case ExprNode::Kind::Unary:
            return n.uop == UnaryOp::Neg ? 3 : 5;
        case ExprNode::Kind::Binary:
            switch (n.bop) {
                case BinaryOp::Add: case BinaryOp::Sub: return 1;
                case BinaryOp::Mul: case BinaryOp::Div: return 2;
                case BinaryOp::Pow: return 4;
            }
    }
    return 5;
}

void print_node(std::ostringstream& out, const ExprNode& n,
                const std::vector<std::string>& vars, int parent_prec) {
    int prec = node_precedence(n);
    bool parens = prec < parent_prec;
    if (parens) out << '(';
    switch (n.kind) {
        case ExprNode::Kind::Constant: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            out << buf;
            break;
        }
        case ExprNode::Kind::Variable:
            out << vars[n.index];
            break;
        case ExprNode::Kind::Unary:
            switch (n.uop) {
                case UnaryOp::Neg:
                    out << '-';
                    print_node(out, *n.lhs, vars, 4);
                    break;
                case UnaryOp::Sqrt: out << "sqrt("; print_node(out, *n.lhs, vars, 0); out << ')'; break;
                case UnaryOp::Exp:  out << "exp(";  print_node(out, *n.lhs, vars, 0); out << ')'; break;
                case UnaryOp::Log:  out << "log(";  print_node(out, *n.lhs, vars, 0); out << ')'; break;
                case UnaryOp::Abs:  out << "abs(";  print_node(out, *n.lhs, vars, 0); out << ')'; break;
            }
            break;
        case ExprNode::Kind::Binary: {
            const char* op = nullptr;
            int lp = prec, rp = prec + 1;
            switch (n.bop) {
                case BinaryOp::Add: op = " + "; break;
                case BinaryOp::Sub: op = " - "; break;
                case BinaryOp::Mul: op = "*"; break;
                case BinaryOp::Div: op = "/"; break;
                case BinaryOp::Pow:
                    op = "^";
                    lp = prec + 1;  // right-associative
                    rp = prec;
                    break;
            }
            print_node(out, *n.lhs, vars, lp);
            out << op;
            print_node(out, *n.rhs, vars, rp);
            break;
        }
    }
    if (parens) out << ')';
}

}  // namespace

std::string Expression::to_string() const {
    std::ostringstream out;
    print_node(out, *root_, variables_, 0);
    return out.str();
}

}  // namespace hypersurf
