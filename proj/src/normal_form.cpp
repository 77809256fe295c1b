#include "pbrack/normal_form.hpp"

#include <cassert>
#include <set>

namespace pbrack {

namespace {

void check_ws(const WorkspacePtr& ws) {
  assert(ws && "normal form without workspace");
  (void)ws;
}

// gcd of all coefficient magnitudes, as gcd(numerators)/lcm(denominators).
Rational rational_content(const Poly& p) {
  mpz_class g = 0, l = 1;
  auto feed = [&](const Rational& r) {
    if (sgn(r) == 0) return;
    g = gcd(g, mpz_class(abs(r.get_num())));
    l = lcm(l, r.get_den());
  };
  for (const auto& [m, c] : p) {
    feed(c.re);
    feed(c.im);
  }
  if (g == 0) return Rational(1);
  Rational out(g, l);
  out.canonicalize();
  return out;
}

// Largest s with s^2 dividing n (n > 0). Perfect squares are caught exactly;
// otherwise small prime squares are peeled off, which covers every constant
// the engine realistically sees.
mpz_class square_part(mpz_class n) {
  assert(n > 0);
  mpz_class s = 1;
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return root;
  }
  static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                               41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  for (int p : primes) {
    mpz_class p2 = mpz_class(p) * p;
    while (mpz_divisible_p(n.get_mpz_t(), p2.get_mpz_t())) {
      n /= p2;
      s *= p;
    }
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    s *= root;
  }
  return s;
}

bool poly_mentions(const Poly& p, AtomKind kind) {
  for (const auto& [m, c] : p)
    if (m.contains_kind(kind)) return true;
  return false;
}

std::optional<AtomCode> first_radical_in(const Poly& p) {
  for (const auto& [m, c] : p)
    for (const auto& [code, e] : m.entries)
      if (atom_kind(code) == AtomKind::Radical) return code;
  return std::nullopt;
}

// The exponential atom shared by every monomial of p, if any.
std::optional<AtomCode> common_exponential(const Poly& p) {
  std::optional<AtomCode> shared;
  for (const auto& [m, c] : p) {
    std::optional<AtomCode> here;
    for (const auto& [code, e] : m.entries)
      if (atom_kind(code) == AtomKind::Exponential) here = code;
    if (!here) return std::nullopt;
    if (!shared) shared = here;
    if (*here != *shared) return std::nullopt;
  }
  return shared;
}

}  // namespace

NormalForm NormalForm::zero(WorkspacePtr ws) { return {std::move(ws), poly_zero(), poly_one()}; }

NormalForm NormalForm::one(WorkspacePtr ws) { return {std::move(ws), poly_one(), poly_one()}; }

NormalForm NormalForm::constant(WorkspacePtr ws, const GaussianRational& c) {
  return {std::move(ws), poly_constant(c), poly_one()};
}

NormalForm NormalForm::atom(WorkspacePtr ws, AtomCode code) {
  return {std::move(ws), poly_atom(code), poly_one()};
}

NormalForm NormalForm::from_poly(WorkspacePtr ws, Poly p) {
  return fraction(std::move(ws), std::move(p), poly_one());
}

NormalForm NormalForm::fraction(WorkspacePtr ws, Poly num, Poly den) {
  check_ws(ws);
  NormalForm f(std::move(ws), std::move(num), std::move(den));
  f.canonicalize();
  return f;
}

std::optional<GaussianRational> NormalForm::as_constant() const {
  if (num_.empty()) return GaussianRational(0);
  if (!poly_is_one(den_)) return std::nullopt;
  if (num_.size() != 1 || !num_.begin()->first.empty()) return std::nullopt;
  return num_.begin()->second;
}

void NormalForm::canonicalize() {
  if (den_.empty()) throw DivisionByZero("zero denominator in normalization");
  if (num_.empty()) {
    den_ = poly_one();
    return;
  }

  for (int round = 0;; ++round) {
    assert(round < 64 && "canonicalization failed to reach a fixpoint");
    // Shared monomial factor of numerator and denominator.
    Monomial shared = monomial_gcd(common_monomial(num_), common_monomial(den_));
    if (!shared.empty()) {
      num_ = poly_divide_monomial(num_, shared);
      den_ = poly_divide_monomial(den_, shared);
      continue;
    }
    // Exponentials are units: a denominator-wide exp factor moves up as its
    // inverse.
    if (auto e = common_exponential(den_)) {
      Poly neg_arg = poly_neg(ws_->exp_argument(*e));
      Poly shift = poly_atom(ws_->intern_exponential(neg_arg));
      num_ = poly_mul(*ws_, num_, shift);
      den_ = poly_mul(*ws_, den_, shift);
      continue;
    }
    // Cancel interned-radicand factors shared by numerator and denominator:
    // rationalization and the quotient rule only ever stack radicand powers
    // onto denominators, so this keeps those fractions in lowest terms
    // (general polynomial gcd cancellation is deliberately not attempted).
    {
      bool cancelled = false;
      for (std::uint32_t i = 0; i < ws_->radical_count() && !cancelled; ++i) {
        Poly u = ws_->radicand(atom_code(AtomKind::Radical, i));
        if (u.size() == 1 && u.begin()->first.empty()) continue;  // constant radicand
        while (true) {
          auto qd = poly_exact_divide(*ws_, den_, u);
          if (!qd || qd->empty()) break;
          auto qn = poly_exact_divide(*ws_, num_, u);
          if (!qn) break;
          num_ = std::move(*qn);
          den_ = std::move(*qd);
          cancelled = true;
          if (num_.empty()) break;
        }
      }
      if (cancelled) continue;
    }
    // Rationalize one denominator radical per round: den = d0 + d1*r becomes
    // d0^2 - d1^2*u after multiplying both sides by the conjugate.
    if (auto r = first_radical_in(den_)) {
      Poly d0, d1;
      for (const auto& [m, c] : den_) {
        if (m.exponent_of(*r) > 0) {
          Monomial reduced = m;
          std::erase_if(reduced.entries, [&](const auto& en) { return en.first == *r; });
          d1.emplace(std::move(reduced), c);
        } else {
          d0.emplace(m, c);
        }
      }
      Poly conjugate = poly_sub(d0, poly_mul(*ws_, d1, poly_atom(*r)));
      num_ = poly_mul(*ws_, num_, conjugate);
      den_ = poly_mul(*ws_, den_, conjugate);
      if (den_.empty())
        throw DivisionByZero("denominator vanishes identically after rationalization");
      continue;
    }
    break;
  }

  if (num_.empty()) {
    den_ = poly_one();
    return;
  }
  // Pin the scale: the denominator's leading coefficient becomes exactly 1.
  GaussianRational lead = leading_term(den_).second;
  if (!lead.is_one()) {
    GaussianRational inv = inverse(lead);
    num_ = poly_scale(num_, inv);
    den_ = poly_scale(den_, inv);
  }
}

void require_same_workspace(const NormalForm& a, const NormalForm& b) {
  if (a.workspace() != b.workspace()) throw SpaceMismatch();
}

NormalForm operator+(const NormalForm& a, const NormalForm& b) {
  require_same_workspace(a, b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Workspace& ws = *a.ws_;
  if (poly_eq(a.den_, b.den_))
    return NormalForm::fraction(a.ws_, poly_add(a.num_, b.num_), a.den_);
  Poly num = poly_add(poly_mul(ws, a.num_, b.den_), poly_mul(ws, b.num_, a.den_));
  return NormalForm::fraction(a.ws_, std::move(num), poly_mul(ws, a.den_, b.den_));
}

NormalForm operator-(const NormalForm& a, const NormalForm& b) { return a + (-b); }

NormalForm operator-(const NormalForm& a) {
  NormalForm out = a;
  out.num_ = poly_neg(out.num_);
  return out;  // negation preserves every canonical invariant
}

NormalForm operator*(const NormalForm& a, const NormalForm& b) {
  require_same_workspace(a, b);
  if (a.is_zero() || b.is_zero()) return NormalForm::zero(a.ws_);
  Workspace& ws = *a.ws_;
  Poly num = poly_mul(ws, a.num_, b.num_);
  Poly den = poly_is_one(a.den_)   ? b.den_
             : poly_is_one(b.den_) ? a.den_
                                   : poly_mul(ws, a.den_, b.den_);
  return NormalForm::fraction(a.ws_, std::move(num), std::move(den));
}

NormalForm operator/(const NormalForm& a, const NormalForm& b) { return a * inverse(b); }

bool operator==(const NormalForm& a, const NormalForm& b) {
  return a.workspace() == b.workspace() && poly_eq(a.num(), b.num()) && poly_eq(a.den(), b.den());
}

NormalForm inverse(const NormalForm& a) {
  if (a.is_zero()) throw DivisionByZero();
  return NormalForm::fraction(a.workspace(), a.den(), a.num());
}

NormalForm pow(const NormalForm& a, int k) {
  if (k < 0) return pow(inverse(a), -k);
  NormalForm out = NormalForm::one(a.workspace());
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

NormalForm sqrt_of(const NormalForm& value) {
  const WorkspacePtr& ws = value.workspace();
  check_ws(ws);
  if (value.is_zero()) return NormalForm::zero(ws);
  for (const Poly* p : {&value.num(), &value.den()})
    if (poly_mentions(*p, AtomKind::Radical) || poly_mentions(*p, AtomKind::Exponential))
      throw NonPolynomialRadicand();

  // sqrt(n/d) = sqrt(n*d)/d keeps the radicand polynomial.
  Poly w = poly_is_one(value.den()) ? value.num() : poly_mul(*ws, value.num(), value.den());

  // Extract the square part of the numeric content; monomial square content is
  // left alone (pulling q out of sqrt(q^2) would pick a sign branch).
  Rational content = rational_content(w);
  Rational s(square_part(content.get_num()), square_part(content.get_den()));
  s.canonicalize();
  Rational reduced = content / (s * s);
  Poly radicand = poly_scale(w, GaussianRational(reduced / content));

  Poly root;
  if (poly_is_one(radicand)) {
    root = poly_constant(GaussianRational(s));
  } else {
    AtomCode atom = ws->intern_radical(radicand);
    root = poly_scale(poly_atom(atom), GaussianRational(s));
  }
  return NormalForm::fraction(ws, std::move(root), value.den());
}

NormalForm exp_of(const NormalForm& value) {
  const WorkspacePtr& ws = value.workspace();
  check_ws(ws);
  if (value.is_zero()) return NormalForm::one(ws);
  if (!value.is_poly())
    throw NonPolynomialArgument("exp argument must be a polynomial in the phase-space atoms");
  if (poly_mentions(value.num(), AtomKind::Exponential))
    throw NonPolynomialArgument("exp arguments may not contain exponentials");
  return NormalForm::atom(ws, ws->intern_exponential(value.num()));
}

std::vector<AtomCode> referenced_atoms(const NormalForm& f) {
  std::set<AtomCode> seen;
  std::vector<AtomCode> queue;
  auto push = [&](const Poly& p) {
    for (AtomCode code : poly_atoms(p))
      if (seen.insert(code).second) queue.push_back(code);
  };
  push(f.num());
  push(f.den());
  const Workspace& ws = *f.workspace();
  while (!queue.empty()) {
    AtomCode code = queue.back();
    queue.pop_back();
    if (atom_kind(code) == AtomKind::Radical) push(ws.radicand(code));
    if (atom_kind(code) == AtomKind::Exponential) push(ws.exp_argument(code));
  }
  return {seen.begin(), seen.end()};
}

}  // namespace pbrack
