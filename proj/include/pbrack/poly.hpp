#ifndef PBRACK_POLY_HPP
#define PBRACK_POLY_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pbrack/atoms.hpp"
#include "pbrack/rational.hpp"

namespace pbrack {

class Workspace;

// Sparse exponent vector, entries sorted by atom code, exponents > 0.
struct Monomial {
  std::vector<std::pair<AtomCode, int>> entries;

  bool empty() const { return entries.empty(); }
  int total_degree() const;
  int exponent_of(AtomCode code) const;
  bool contains_kind(AtomKind kind) const;
};

bool operator==(const Monomial& a, const Monomial& b);

// Graded lexicographic: higher total degree wins; ties break lexicographically
// on the exponent vector read in atom-code order.
bool grlex_less(const Monomial& a, const Monomial& b);

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(a, b); }
};

// Polynomial in atom monomials over Gaussian rationals. The map keeps terms
// grlex-ascending, so rbegin() is the leading term. All stored coefficients
// are nonzero.
using Poly = std::map<Monomial, GaussianRational, MonomialLess>;

Poly poly_zero();
Poly poly_one();
Poly poly_constant(const GaussianRational& c);
Poly poly_atom(AtomCode code, int exponent = 1);

bool poly_is_zero(const Poly& p);
bool poly_is_one(const Poly& p);
bool poly_eq(const Poly& a, const Poly& b);

// Deterministic total order for interning tables and report ordering.
bool poly_less(const Poly& a, const Poly& b);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_neg(const Poly& a);
Poly poly_scale(const Poly& a, const GaussianRational& c);

// Multiplication reduces radical squares through their defining relations and
// merges exponential factors, which may intern new exponential atoms.
Poly poly_mul(Workspace& ws, const Poly& a, const Poly& b);
Poly poly_pow(Workspace& ws, const Poly& a, int k);  // k >= 0

// Adds c * (m * b) into acc, reducing radicals/exponentials of m against b's
// monomials.
void poly_add_scaled_mono(Workspace& ws, Poly& acc, const Monomial& m, const GaussianRational& c,
                          const Poly& b);

std::pair<Monomial, GaussianRational> leading_term(const Poly& p);

// Componentwise min of all exponent vectors in p (the common monomial factor).
Monomial common_monomial(const Poly& p);
Monomial monomial_gcd(const Monomial& a, const Monomial& b);
// Requires divisibility entrywise.
Poly poly_divide_monomial(const Poly& p, const Monomial& m);

// Exact multivariate division; nullopt if b does not divide a termwise under
// grlex leading-term elimination (entrywise monomial divisibility, which is
// exact for radical- and exponential-free divisors).
std::optional<Poly> poly_exact_divide(Workspace& ws, const Poly& a, const Poly& b);

// Every atom code appearing anywhere in p (not looking inside interned atoms).
std::vector<AtomCode> poly_atoms(const Poly& p);

}  // namespace pbrack

#endif
