#include "pbrack/calculus.hpp"

#include <cassert>

namespace pbrack {

namespace {

// d/dv of a radical- and exponential-free polynomial: stays polynomial.
Poly pure_poly_partial(const Poly& p, AtomCode v) {
  Poly out;
  for (const auto& [m, c] : p) {
    int e = m.exponent_of(v);
    if (e == 0) continue;
    Monomial reduced;
    for (const auto& [code, k] : m.entries) {
      if (code == v) {
        if (k > 1) reduced.entries.emplace_back(code, k - 1);
      } else {
        reduced.entries.emplace_back(code, k);
      }
    }
    GaussianRational coeff = c * GaussianRational(e);
    auto [it, inserted] = out.emplace(std::move(reduced), coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) out.erase(it);
    }
  }
  return out;
}

// d/dv of a polynomial in atoms, as a normal form (the radical chain rule
// introduces fractions).
NormalForm poly_partial(const WorkspacePtr& ws, const Poly& p, AtomCode v) {
  NormalForm acc = NormalForm::zero(ws);
  for (const auto& [m, c] : p) {
    for (const auto& [code, e] : m.entries) {
      Monomial rest;
      for (const auto& [other, k] : m.entries) {
        if (other == code) {
          if (k > 1) rest.entries.emplace_back(other, k - 1);
        } else {
          rest.entries.emplace_back(other, k);
        }
      }
      switch (atom_kind(code)) {
        case AtomKind::Coordinate:
        case AtomKind::Momentum: {
          if (code != v) break;
          Poly term;
          term.emplace(std::move(rest), c * GaussianRational(e));
          acc = acc + NormalForm::from_poly(ws, std::move(term));
          break;
        }
        case AtomKind::Radical: {
          assert(e == 1);
          Poly u = ws->radicand(code);
          Poly du = pure_poly_partial(u, v);
          if (du.empty()) break;
          // d(r)/dv = du/(2r) = du*r/(2u); `rest` keeps the other factors.
          Poly num;
          poly_add_scaled_mono(*ws, num, rest, c, du);
          num = poly_mul(*ws, num, poly_atom(code));
          acc = acc + NormalForm::fraction(ws, std::move(num),
                                           poly_scale(u, GaussianRational(2)));
          break;
        }
        case AtomKind::Exponential: {
          assert(e == 1);
          NormalForm darg = poly_partial(ws, ws->exp_argument(code), v);
          if (darg.is_zero()) break;
          // d(exp(u))/dv = exp(u) * du: the monomial keeps its exp factor.
          Poly term;
          term.emplace(m, c);
          acc = acc + NormalForm::from_poly(ws, std::move(term)) * darg;
          break;
        }
        case AtomKind::Hbar:
        case AtomKind::Parameter:
          break;
      }
    }
  }
  return acc;
}

}  // namespace

NormalForm partial(const NormalForm& f, AtomCode variable) {
  AtomKind kind = atom_kind(variable);
  if (kind != AtomKind::Coordinate && kind != AtomKind::Momentum)
    throw UnknownVariable(f.workspace() ? f.workspace()->atom_name(variable) : "?");
  const WorkspacePtr& ws = f.workspace();
  NormalForm dnum = poly_partial(ws, f.num(), variable);
  if (f.is_poly()) return dnum;
  NormalForm dden = poly_partial(ws, f.den(), variable);
  NormalForm den_nf = NormalForm::from_poly(ws, f.den());
  NormalForm num_nf = NormalForm::from_poly(ws, f.num());
  return (dnum * den_nf - num_nf * dden) / (den_nf * den_nf);
}

NormalForm partial(const NormalForm& f, const std::string& variable) {
  const WorkspacePtr& ws = f.workspace();
  auto code = ws->find_symbol(variable);
  if (!code) throw UnknownVariable(variable);
  AtomKind kind = atom_kind(*code);
  if (kind != AtomKind::Coordinate && kind != AtomKind::Momentum) throw UnknownVariable(variable);
  return partial(f, *code);
}

}  // namespace pbrack
