#include "pbrack/bracket.hpp"

#include "pbrack/calculus.hpp"

namespace pbrack {

BracketResult poisson_bracket(const NormalForm& a, const NormalForm& b) {
  require_same_workspace(a, b);
  const WorkspacePtr& ws = a.workspace();
  std::size_t n = ws->space().dimension();
  NormalForm acc = NormalForm::zero(ws);
  for (std::uint32_t i = 0; i < n; ++i) {
    AtomCode q = atom_code(AtomKind::Coordinate, i);
    AtomCode p = atom_code(AtomKind::Momentum, i);
    acc = acc + partial(a, q) * partial(b, p) - partial(a, p) * partial(b, q);
  }
  return {std::move(acc), BracketKind::Poisson, std::nullopt, std::nullopt};
}

BracketResult commutator(const NormalForm& a, const NormalForm& b) {
  BracketResult pb = poisson_bracket(a, b);
  const WorkspacePtr& ws = a.workspace();
  NormalForm i_hbar =
      NormalForm::constant(ws, GaussianRational::i()) * NormalForm::atom(ws, kHbarAtom);
  return {i_hbar * pb.value, BracketKind::Commutator, std::nullopt, std::nullopt};
}

}  // namespace pbrack
