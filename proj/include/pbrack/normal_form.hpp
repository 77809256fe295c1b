#ifndef PBRACK_NORMAL_FORM_HPP
#define PBRACK_NORMAL_FORM_HPP

#include <string>
#include <vector>

#include "pbrack/poly.hpp"
#include "pbrack/workspace.hpp"

namespace pbrack {

// Canonical fraction of polynomials over Gaussian rationals in atom
// monomials. Invariants after construction:
//   * den is nonzero and radical-free (denominator radicals are rationalized
//     away through the defining relation radical^2 = radicand);
//   * radical exponents in num are 0 or 1;
//   * each monomial carries at most one exponential atom, with exponent 1
//     (exp factors merge at atom level, exp(0) is eliminated);
//   * num and den share no common monomial factor, den carries no common
//     exponential factor of its own, and den's grlex-leading coefficient is
//     exactly 1 (this pins the scale, so equal pipelines give equal bytes);
//   * zero is uniquely num = 0, den = 1.
//
// Values are immutable after construction and safe to share between threads.
class NormalForm {
public:
  NormalForm() = default;

  static NormalForm zero(WorkspacePtr ws);
  static NormalForm one(WorkspacePtr ws);
  static NormalForm constant(WorkspacePtr ws, const GaussianRational& c);
  static NormalForm atom(WorkspacePtr ws, AtomCode code);
  // Canonicalizes the given fraction.
  static NormalForm fraction(WorkspacePtr ws, Poly num, Poly den);
  static NormalForm from_poly(WorkspacePtr ws, Poly p);

  const WorkspacePtr& workspace() const { return ws_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.empty(); }
  bool is_poly() const { return poly_is_one(den_); }
  // Nonzero only when the value is a constant; nullopt otherwise.
  std::optional<GaussianRational> as_constant() const;

  friend NormalForm operator+(const NormalForm& a, const NormalForm& b);
  friend NormalForm operator-(const NormalForm& a, const NormalForm& b);
  friend NormalForm operator*(const NormalForm& a, const NormalForm& b);
  friend NormalForm operator/(const NormalForm& a, const NormalForm& b);
  friend NormalForm operator-(const NormalForm& a);
  friend bool operator==(const NormalForm& a, const NormalForm& b);

private:
  NormalForm(WorkspacePtr ws, Poly num, Poly den)
      : ws_(std::move(ws)), num_(std::move(num)), den_(std::move(den)) {}

  void canonicalize();

  WorkspacePtr ws_;
  Poly num_;
  Poly den_{poly_one()};
};

NormalForm inverse(const NormalForm& a);
NormalForm pow(const NormalForm& a, int k);

inline NormalForm add(const NormalForm& a, const NormalForm& b) { return a + b; }
inline NormalForm mul(const NormalForm& a, const NormalForm& b) { return a * b; }
inline NormalForm neg(const NormalForm& a) { return -a; }
inline bool is_zero(const NormalForm& a) { return a.is_zero(); }
inline bool equivalent(const NormalForm& a, const NormalForm& b) { return (a - b).is_zero(); }

// sqrt of an arbitrary fraction value: folds sqrt(n/d) into sqrt(n*d)/d,
// extracts numeric and monomial square content, and interns the remaining
// radicand. Throws NonPolynomialRadicand if the value mentions radicals or
// exponentials. sqrt(0) is 0.
NormalForm sqrt_of(const NormalForm& value);

// exp of a polynomial value (radicals allowed in the argument, exponentials
// and proper fractions are not). exp(0) is 1.
NormalForm exp_of(const NormalForm& value);

// True iff both operands live on the same workspace (throws otherwise).
void require_same_workspace(const NormalForm& a, const NormalForm& b);

// All atoms of num/den plus, recursively, atoms inside interned radicands and
// exponential arguments. Sorted, deduplicated.
std::vector<AtomCode> referenced_atoms(const NormalForm& f);

}  // namespace pbrack

#endif
