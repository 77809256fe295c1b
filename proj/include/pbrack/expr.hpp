#ifndef PBRACK_EXPR_HPP
#define PBRACK_EXPR_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pbrack/normal_form.hpp"
#include "pbrack/rational.hpp"

namespace pbrack {

// Parse-level syntax tree. Sqrt/Exp stay symbolic here; they become interned
// atoms during normalization, once names can be resolved.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Sum, Product, Power, Constant, NameRef, Sqrt, Exp };

  Kind kind;
  std::vector<ExprPtr> children;  // Sum/Product (>= 2 after flattening)
  ExprPtr base;                   // Power/Sqrt/Exp
  int exponent = 0;               // Power
  GaussianRational value;         // Constant
  std::string name;               // NameRef
};

ExprPtr make_constant(GaussianRational c);
ExprPtr make_name(std::string name);
// Flattens singletons: a one-element sum/product is its element; empty sum is
// 0, empty product is 1.
ExprPtr make_sum(std::vector<ExprPtr> children);
ExprPtr make_product(std::vector<ExprPtr> children);
ExprPtr make_power(ExprPtr base, int exponent);
ExprPtr make_sqrt(ExprPtr base);
ExprPtr make_exp(ExprPtr base);
ExprPtr make_neg(ExprPtr e);

// Evaluates the tree into the canonical normal form. NameRefs resolve against
// the workspace symbols first, then through `definitions` (acyclically).
NormalForm normalize(const ExprPtr& e, const WorkspacePtr& ws,
                     const std::map<std::string, ExprPtr>& definitions = {});

// Same, but with already-normalized definitions (the session runner's path).
NormalForm normalize(const ExprPtr& e, const WorkspacePtr& ws,
                     const std::map<std::string, NormalForm>& definitions);

}  // namespace pbrack

#endif
