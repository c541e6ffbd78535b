#pragma once

#include <string>
#include <vector>

#include "hypersurf/expr.hpp"

namespace hypersurf {

enum class FamilyTag { CobbDouglas, GeneralizedCes, Multinomial, Linear, CounterexampleR1 };

FamilyTag family_tag_from_name(const std::string& name);
std::string to_string(FamilyTag tag);

// Parameters for one named production-function family.  Unused fields
// are ignored by build(); constraints are validated per family.
struct FamilySpec {
    FamilyTag tag = FamilyTag::Multinomial;
    double scale = 1.0;                 // A > 0
    std::vector<double> coefficients;   // c_1 ... c_n
    double rho = 0.5;                   // CES substitution parameter
    double gamma = 1.0;                 // CES / multinomial degree
    double exponent = 2.0;              // counterexample r
};

struct BuiltFamily {
    Expression ast;
    double degree;           // analytically known homogeneity degree
    FamilyTag tag;
    bool binomial = false;   // multinomial with n == 2
    bool constant_returns = false;
};

// Builds the family as an expression over variables x1..xn (or the
// given names).  Throws InvalidArgument naming the violated constraint.
BuiltFamily build(const FamilySpec& spec, std::vector<std::string> variables);

struct FamilyCatalogEntry {
    std::string name;
    std::string formula;
    std::vector<std::string> parameters;
    std::string constraints;
    std::string citation;
};

// Stable machine-readable catalog of the five families.
const std::vector<FamilyCatalogEntry>& list_families();

}  // namespace hypersurf
