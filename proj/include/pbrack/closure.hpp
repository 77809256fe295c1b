#ifndef PBRACK_CLOSURE_HPP
#define PBRACK_CLOSURE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbrack/normal_form.hpp"

namespace pbrack {

// Named generators plus scalar invariants (like H) that may multiply
// generators inside matched combinations. Names must be distinct and every
// value nonzero.
struct GeneratorSet {
  GeneratorSet(WorkspacePtr ws, std::vector<std::pair<std::string, NormalForm>> scalars,
               std::vector<std::pair<std::string, NormalForm>> generators);

  WorkspacePtr ws;
  std::vector<std::pair<std::string, NormalForm>> scalars;
  std::vector<std::pair<std::string, NormalForm>> generators;
};

// One candidate basis element hbar^a * m, with m a monomial over scalar and
// generator names (total degree <= D) and 0 <= a <= hbar_max; the empty
// monomial is allowed only with a > 0.
struct CombinationTerm {
  GaussianRational coeff;
  int hbar_power = 0;
  std::vector<std::string> monomial;  // sorted name multiset; may be empty
};

struct MatchResult {
  bool matched = false;
  std::vector<CombinationTerm> combination;
  std::optional<NormalForm> residual;  // the whole target, when unmatched
};

struct ClosureEntry {
  std::string lhs, rhs;
  bool scalar_row = false;  // lhs is a scalar invariant
  NormalForm bracket;
  MatchResult match;
};

struct StructureConstant {
  std::string lhs, rhs, target;
  GaussianRational coeff;
  int hbar_power = 0;
};

struct ClosureReport {
  int degree = 0;
  int hbar_max = 0;
  std::vector<std::string> scalar_names, generator_names;
  std::vector<std::string> basis;  // candidate labels in solver order
  std::vector<ClosureEntry> entries;
  bool closed = false;
  std::string verdict;  // "closed" | "not_closed_within_basis"
  // Combinations that are pure degree-1 in generators: {G_i,G_j} = c_ijk G_k.
  std::vector<StructureConstant> structure_constants;
};

// Poisson brackets of every (scalar, generator) pair and every generator pair
// i < j, in declaration order. The (j, i) entries are the negations and are
// not duplicated.
std::vector<ClosureEntry> bracket_table(const GeneratorSet& g);

// Expresses target as an exact linear combination of the candidate basis, or
// returns it as the residual. The reported combination is canonical: the
// solver eliminates in candidate order (hbar power, then total degree, then
// lexicographic names), so free coefficients default to zero.
MatchResult match_combination(const NormalForm& target, const GeneratorSet& g, int degree,
                              int hbar_max);

ClosureReport closure_report(const GeneratorSet& g, int degree, int hbar_max);

// The candidate labels used by match_combination, in solver order.
std::vector<std::string> candidate_basis_labels(const GeneratorSet& g, int degree, int hbar_max);

}  // namespace pbrack

#endif
