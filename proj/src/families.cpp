#include "hypersurf/families.hpp"

#include <cmath>
#include <numeric>

namespace hypersurf {

FamilyTag family_tag_from_name(const std::string& name) {
    if (name == "cobb-douglas") return FamilyTag::CobbDouglas;
    if (name == "ces" || name == "generalized-ces") return FamilyTag::GeneralizedCes;
    if (name == "multinomial" || name == "binomial") return FamilyTag::Multinomial;
    if (name == "linear") return FamilyTag::Linear;
    if (name == "counterexample-r1") return FamilyTag::CounterexampleR1;
    throw InvalidArgument("unknown family: " + name);
}

std::string to_string(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::CobbDouglas: return "cobb-douglas";
        case FamilyTag::GeneralizedCes: return "generalized-ces";
        case FamilyTag::Multinomial: return "multinomial";
        case FamilyTag::Linear: return "linear";
        case FamilyTag::CounterexampleR1: return "counterexample-r1";
    }
    return "unknown";
}

namespace {

ExprPtr constant(double v) { return ExprNode::constant(v); }

ExprPtr scaled(double a, ExprPtr e) {
    if (a == 1.0) return e;
    return ExprNode::binary(BinaryOp::Mul, constant(a), std::move(e));
}

ExprPtr powered(ExprPtr base, double expo) {
    if (expo == 1.0) return base;
    return ExprNode::binary(BinaryOp::Pow, std::move(base), constant(expo));
}

// c_1 x_1 + ... + c_n x_n
ExprPtr weighted_sum(const std::vector<double>& c,
                     const std::vector<ExprPtr>& vars) {
    ExprPtr sum;
    for (std::size_t i = 0; i < c.size(); ++i) {
        ExprPtr term = scaled(c[i], vars[i]);
        sum = sum ? ExprNode::binary(BinaryOp::Add, std::move(sum), std::move(term))
                  : std::move(term);
    }
    return sum;
}

void require(bool ok, const char* constraint) {
    if (!ok) throw InvalidArgument(std::string("family constraint violated: ") + constraint);
}

}  // namespace

BuiltFamily build(const FamilySpec& spec, std::vector<std::string> variables) {
    const std::size_t n = variables.size();
    require(n >= 1, "arity >= 1 required");

    std::vector<ExprPtr> vars(n);
    for (std::size_t i = 0; i < n; ++i) vars[i] = ExprNode::variable(i);

    switch (spec.tag) {
        case FamilyTag::CobbDouglas: {
            require(spec.scale > 0.0, "A > 0");
            require(spec.coefficients.size() == n, "one exponent per input");
            // A * x1^c1 * ... * xn^cn
            ExprPtr product;
            for (std::size_t i = 0; i < n; ++i) {
                ExprPtr factor = powered(vars[i], spec.coefficients[i]);
                product = product ? ExprNode::binary(BinaryOp::Mul, std::move(product),
                                                     std::move(factor))
                                  : std::move(factor);
            }
            double degree = std::accumulate(spec.coefficients.begin(),
                                            spec.coefficients.end(), 0.0);
            BuiltFamily out{Expression(scaled(spec.scale, std::move(product)),
                                       std::move(variables)),
                            degree, spec.tag};
            out.constant_returns = std::fabs(degree - 1.0) <= 1e-12;
            return out;
        }
        case FamilyTag::GeneralizedCes: {
            require(spec.scale > 0.0, "A > 0");
            require(spec.rho != 0.0, "rho != 0 required");
            require(spec.rho < 1.0, "rho < 1");
            require(spec.gamma > 0.0, "gamma > 0");
            require(spec.coefficients.size() == n, "one coefficient per input");
            for (double c : spec.coefficients) require(c > 0.0, "c_i > 0");
            // A * (sum c_i x_i^rho)^(gamma/rho)
            ExprPtr sum;
            for (std::size_t i = 0; i < n; ++i) {
                ExprPtr term = scaled(spec.coefficients[i], powered(vars[i], spec.rho));
                sum = sum ? ExprNode::binary(BinaryOp::Add, std::move(sum), std::move(term))
                          : std::move(term);
            }
            ExprPtr body = powered(std::move(sum), spec.gamma / spec.rho);
            BuiltFamily out{Expression(scaled(spec.scale, std::move(body)),
                                       std::move(variables)),
                            spec.gamma, spec.tag};
            out.constant_returns = std::fabs(spec.gamma - 1.0) <= 1e-12;
            return out;
        }
        case FamilyTag::Multinomial: {
            require(spec.scale > 0.0, "A > 0");
            require(spec.gamma > 0.0, "gamma > 0");
            require(spec.coefficients.size() == n, "one coefficient per input");
            ExprPtr body = powered(weighted_sum(spec.coefficients, vars), spec.gamma);
            BuiltFamily out{Expression(scaled(spec.scale, std::move(body)),
                                       std::move(variables)),
                            spec.gamma, spec.tag};
            out.binomial = (n == 2);
            out.constant_returns = std::fabs(spec.gamma - 1.0) <= 1e-12;
            return out;
        }
        case FamilyTag::Linear: {
            require(spec.scale > 0.0, "A > 0");
            require(spec.coefficients.size() == n, "one coefficient per input");
            std::vector<double> c(n);
            for (std::size_t i = 0; i < n; ++i) c[i] = spec.scale * spec.coefficients[i];
            BuiltFamily out{Expression(weighted_sum(c, vars), std::move(variables)),
                            1.0, spec.tag};
            out.constant_returns = true;
            return out;
        }
        case FamilyTag::CounterexampleR1: {
            require(n == 3, "arity exactly 3 required");
            require(spec.exponent > 1.0, "r > 1 required");
            // (x + y + sqrt(y*z))^r
            ExprPtr yz = ExprNode::binary(BinaryOp::Mul, vars[1], vars[2]);
            ExprPtr inner = ExprNode::binary(
                BinaryOp::Add,
                ExprNode::binary(BinaryOp::Add, vars[0], vars[1]),
                ExprNode::unary(UnaryOp::Sqrt, std::move(yz)));
            BuiltFamily out{Expression(powered(std::move(inner), spec.exponent),
                                       std::move(variables)),
                            spec.exponent, spec.tag};
            return out;
        }
    }
    throw InvalidArgument("unknown family tag");
}

const std::vector<FamilyCatalogEntry>& list_families() {
    static const std::vector<FamilyCatalogEntry> catalog = {
        {"cobb-douglas", "A * x1^c1 * ... * xn^cn",
         {"A", "c"},
         "A > 0",
         "Cobb & Douglas (1928); constant returns iff sum c_i = 1"},
        {"generalized-ces", "A * (c1*x1^rho + ... + cn*xn^rho)^(gamma/rho)",
         {"A", "c", "rho", "gamma"},
         "A > 0, rho < 1, rho != 0, gamma > 0, c_i > 0",
         "Arrow, Chenery, Minhas & Solow (1961); Uzawa (1963); McFadden (1963)"},
        {"multinomial", "A * (c1*x1 + ... + cn*xn)^gamma",
         {"A", "c", "gamma"},
         "A > 0, gamma > 0",
         "CES limit rho -> 1; called binomial when n = 2"},
        {"linear", "A * (c1*x1 + ... + cn*xn)",
         {"A", "c"},
         "A > 0",
         "perfect substitutes; multinomial with gamma = 1"},
        {"counterexample-r1", "(x + y + sqrt(y*z))^r",
         {"r"},
         "arity 3, r > 1",
         "vanishing Gauss-Kronecker curvature without flatness"},
    };
    return catalog;
}

}  // namespace hypersurf
