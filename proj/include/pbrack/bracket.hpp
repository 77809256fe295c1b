#ifndef PBRACK_BRACKET_HPP
#define PBRACK_BRACKET_HPP

#include <optional>
#include <string>

#include "pbrack/normal_form.hpp"

namespace pbrack {

enum class BracketKind { Poisson, Commutator };

struct BracketResult {
  NormalForm value;
  BracketKind kind = BracketKind::Poisson;
  std::optional<std::string> lhs_name, rhs_name;
};

// {A,B} = sum_i (dA/dq_i dB/dp_i - dA/dp_i dB/dq_i), exact, over the full
// dimension of the shared workspace. No hbar factor.
BracketResult poisson_bracket(const NormalForm& a, const NormalForm& b);

// [A,B] = I*hbar*{A,B}: the classical-bracket reduction, applied literally.
BracketResult commutator(const NormalForm& a, const NormalForm& b);

}  // namespace pbrack

#endif
