#include "pbrack/expr.hpp"

#include <cassert>
#include <set>

namespace pbrack {

namespace {

ExprPtr make_node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

}  // namespace

ExprPtr make_constant(GaussianRational c) {
  Expr e;
  e.kind = Expr::Kind::Constant;
  e.value = std::move(c);
  return make_node(std::move(e));
}

ExprPtr make_name(std::string name) {
  Expr e;
  e.kind = Expr::Kind::NameRef;
  e.name = std::move(name);
  return make_node(std::move(e));
}

ExprPtr make_sum(std::vector<ExprPtr> children) {
  if (children.empty()) return make_constant(GaussianRational(0));
  if (children.size() == 1) return children.front();
  Expr e;
  e.kind = Expr::Kind::Sum;
  e.children = std::move(children);
  return make_node(std::move(e));
}

ExprPtr make_product(std::vector<ExprPtr> children) {
  if (children.empty()) return make_constant(GaussianRational(1));
  if (children.size() == 1) return children.front();
  Expr e;
  e.kind = Expr::Kind::Product;
  e.children = std::move(children);
  return make_node(std::move(e));
}

ExprPtr make_power(ExprPtr base, int exponent) {
  Expr e;
  e.kind = Expr::Kind::Power;
  e.base = std::move(base);
  e.exponent = exponent;
  return make_node(std::move(e));
}

ExprPtr make_sqrt(ExprPtr base) {
  Expr e;
  e.kind = Expr::Kind::Sqrt;
  e.base = std::move(base);
  return make_node(std::move(e));
}

ExprPtr make_exp(ExprPtr base) {
  Expr e;
  e.kind = Expr::Kind::Exp;
  e.base = std::move(base);
  return make_node(std::move(e));
}

ExprPtr make_neg(ExprPtr e) {
  return make_product({make_constant(GaussianRational(-1)), std::move(e)});
}

namespace {

struct Normalizer {
  explicit Normalizer(const WorkspacePtr& workspace) : ws(workspace) {}

  const WorkspacePtr& ws;
  const std::map<std::string, ExprPtr>* expr_defs = nullptr;
  const std::map<std::string, NormalForm>* nf_defs = nullptr;

  std::map<std::string, NormalForm> memo;
  std::set<std::string> in_progress;

  NormalForm resolve(const std::string& name) {
    if (auto code = ws->find_symbol(name)) return NormalForm::atom(ws, *code);
    if (nf_defs) {
      auto it = nf_defs->find(name);
      if (it != nf_defs->end()) return it->second;
    }
    if (expr_defs) {
      auto it = expr_defs->find(name);
      if (it != expr_defs->end()) {
        auto hit = memo.find(name);
        if (hit != memo.end()) return hit->second;
        if (!in_progress.insert(name).second) throw CyclicDefinition(name);
        NormalForm value = run(it->second);
        in_progress.erase(name);
        memo.emplace(name, value);
        return value;
      }
    }
    throw UnknownName(name);
  }

  NormalForm run(const ExprPtr& e) {
    assert(e);
    switch (e->kind) {
      case Expr::Kind::Constant:
        return NormalForm::constant(ws, e->value);
      case Expr::Kind::NameRef:
        return resolve(e->name);
      case Expr::Kind::Sum: {
        NormalForm acc = NormalForm::zero(ws);
        for (const auto& child : e->children) acc = acc + run(child);
        return acc;
      }
      case Expr::Kind::Product: {
        NormalForm acc = NormalForm::one(ws);
        for (const auto& child : e->children) acc = acc * run(child);
        return acc;
      }
      case Expr::Kind::Power:
        return pow(run(e->base), e->exponent);
      case Expr::Kind::Sqrt:
        return sqrt_of(run(e->base));
      case Expr::Kind::Exp:
        return exp_of(run(e->base));
    }
    throw Error("corrupt expression node");
  }
};

}  // namespace

NormalForm normalize(const ExprPtr& e, const WorkspacePtr& ws,
                     const std::map<std::string, ExprPtr>& definitions) {
  Normalizer n(ws);
  n.expr_defs = &definitions;
  return n.run(e);
}

NormalForm normalize(const ExprPtr& e, const WorkspacePtr& ws,
                     const std::map<std::string, NormalForm>& definitions) {
  Normalizer n(ws);
  n.nf_defs = &definitions;
  return n.run(e);
}

}  // namespace pbrack
