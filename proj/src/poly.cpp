#include "pbrack/poly.hpp"

#include <cassert>
#include <set>

#include "pbrack/workspace.hpp"

namespace pbrack {

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& [code, e] : entries) d += e;
  return d;
}

int Monomial::exponent_of(AtomCode code) const {
  for (const auto& [c, e] : entries)
    if (c == code) return e;
  return 0;
}

bool Monomial::contains_kind(AtomKind kind) const {
  for (const auto& [c, e] : entries)
    if (atom_kind(c) == kind) return true;
  return false;
}

bool operator==(const Monomial& a, const Monomial& b) { return a.entries == b.entries; }

bool grlex_less(const Monomial& a, const Monomial& b) {
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  auto ia = a.entries.begin(), ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    // A positive exponent on an earlier atom outranks absence of that atom.
    if (ia->first != ib->first) return ia->first > ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
    ++ia;
    ++ib;
  }
  return ib != b.entries.end();
}

Poly poly_zero() { return {}; }

Poly poly_one() { return poly_constant(GaussianRational(1)); }

Poly poly_constant(const GaussianRational& c) {
  Poly p;
  if (!c.is_zero()) p.emplace(Monomial{}, c);
  return p;
}

Poly poly_atom(AtomCode code, int exponent) {
  assert(exponent > 0);
  Poly p;
  p.emplace(Monomial{{{code, exponent}}}, GaussianRational(1));
  return p;
}

bool poly_is_zero(const Poly& p) { return p.empty(); }

bool poly_is_one(const Poly& p) {
  return p.size() == 1 && p.begin()->first.empty() && p.begin()->second.is_one();
}

bool poly_eq(const Poly& a, const Poly& b) { return a == b; }

bool poly_less(const Poly& a, const Poly& b) {
  auto ia = a.begin(), ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (!(ia->first == ib->first)) return grlex_less(ia->first, ib->first);
    int c = compare(ia->second, ib->second);
    if (c != 0) return c < 0;
  }
  return ib != b.end();
}

namespace {

void add_term(Poly& acc, const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

// Entrywise exponent sum with no algebraic reduction. Only valid when at most
// one operand carries radical/exponential atoms for any shared code.
Monomial merge_plain(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.entries.reserve(a.entries.size() + b.entries.size());
  auto ia = a.entries.begin(), ib = b.entries.begin();
  while (ia != a.entries.end() || ib != b.entries.end()) {
    if (ib == b.entries.end() || (ia != a.entries.end() && ia->first < ib->first)) {
      out.entries.push_back(*ia++);
    } else if (ia == a.entries.end() || ib->first < ia->first) {
      out.entries.push_back(*ib++);
    } else {
      out.entries.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  return out;
}

// Multiplies two monomials, reducing radical squares via radical^2 = radicand
// and merging exponential factors into a single atom of exponent 1. The
// returned polynomial factor collects the radicand powers (1 when none).
struct MonoProduct {
  Monomial core;
  Poly factor;  // empty means factor 1
};

MonoProduct mono_mul_reduce(Workspace& ws, const Monomial& a, const Monomial& b) {
  Monomial merged = merge_plain(a, b);
  MonoProduct out;
  Poly exp_arg;  // accumulated exponential argument, if any merge is needed
  bool exp_merge = false;
  std::vector<std::pair<AtomCode, int>> exp_entries;

  for (const auto& [code, e] : merged.entries) {
    switch (atom_kind(code)) {
      case AtomKind::Radical: {
        if (e >= 2) {
          Poly radicand_pow = poly_pow(ws, ws.radicand(code), e / 2);
          out.factor = out.factor.empty() ? std::move(radicand_pow)
                                          : poly_mul(ws, out.factor, radicand_pow);
        }
        if (e % 2 != 0) out.core.entries.emplace_back(code, 1);
        break;
      }
      case AtomKind::Exponential:
        exp_entries.emplace_back(code, e);
        if (e != 1) exp_merge = true;
        break;
      default:
        out.core.entries.emplace_back(code, e);
        break;
    }
  }

  if (exp_entries.size() > 1) exp_merge = true;
  if (!exp_merge) {
    for (const auto& en : exp_entries) out.core.entries.push_back(en);
  } else {
    for (const auto& [code, e] : exp_entries) {
      Poly scaled = poly_scale(ws.exp_argument(code), GaussianRational(e));
      exp_arg = exp_arg.empty() ? std::move(scaled) : poly_add(exp_arg, scaled);
    }
    if (!exp_arg.empty())
      out.core.entries.emplace_back(ws.intern_exponential(exp_arg), 1);
  }
  // Entries must stay sorted by code; exponential codes are the largest kind,
  // so appending keeps the order except when a merge replaced them.
  std::sort(out.core.entries.begin(), out.core.entries.end());
  return out;
}

bool try_monomial_divide(const Monomial& a, const Monomial& b, Monomial& quotient) {
  quotient.entries.clear();
  auto ib = b.entries.begin();
  for (const auto& [code, e] : a.entries) {
    int need = 0;
    if (ib != b.entries.end() && ib->first < code) return false;  // b has an atom a lacks
    if (ib != b.entries.end() && ib->first == code) {
      need = ib->second;
      ++ib;
    }
    if (e < need) return false;
    if (e > need) quotient.entries.emplace_back(code, e - need);
  }
  return ib == b.entries.end();
}

bool pure_poly(const Poly& p) {
  for (const auto& [m, c] : p)
    if (m.contains_kind(AtomKind::Radical) || m.contains_kind(AtomKind::Exponential))
      return false;
  return true;
}

}  // namespace

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b) add_term(out, m, c);
  return out;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b) add_term(out, m, -c);
  return out;
}

Poly poly_neg(const Poly& a) {
  Poly out;
  for (const auto& [m, c] : a) out.emplace(m, -c);
  return out;
}

Poly poly_scale(const Poly& a, const GaussianRational& c) {
  if (c.is_zero()) return {};
  Poly out;
  for (const auto& [m, k] : a) out.emplace(m, k * c);
  return out;
}

void poly_add_scaled_mono(Workspace& ws, Poly& acc, const Monomial& m, const GaussianRational& c,
                          const Poly& b) {
  for (const auto& [mb, cb] : b) {
    MonoProduct prod = mono_mul_reduce(ws, m, mb);
    GaussianRational coeff = c * cb;
    if (prod.factor.empty()) {
      add_term(acc, prod.core, coeff);
    } else {
      for (const auto& [mf, cf] : prod.factor)
        add_term(acc, merge_plain(prod.core, mf), coeff * cf);
    }
  }
}

Poly poly_mul(Workspace& ws, const Poly& a, const Poly& b) {
  Poly acc;
  for (const auto& [ma, ca] : a) poly_add_scaled_mono(ws, acc, ma, ca, b);
  return acc;
}

Poly poly_pow(Workspace& ws, const Poly& a, int k) {
  assert(k >= 0);
  Poly out = poly_one();
  for (int i = 0; i < k; ++i) out = poly_mul(ws, out, a);
  return out;
}

std::pair<Monomial, GaussianRational> leading_term(const Poly& p) {
  assert(!p.empty());
  auto it = p.rbegin();
  return {it->first, it->second};
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
  Monomial out;
  auto ib = b.entries.begin();
  for (const auto& [code, e] : a.entries) {
    while (ib != b.entries.end() && ib->first < code) ++ib;
    if (ib != b.entries.end() && ib->first == code)
      out.entries.emplace_back(code, std::min(e, ib->second));
  }
  return out;
}

Monomial common_monomial(const Poly& p) {
  Monomial g;
  bool first = true;
  for (const auto& [m, c] : p) {
    if (first) {
      g = m;
      first = false;
    } else {
      g = monomial_gcd(g, m);
    }
    if (g.empty()) break;
  }
  return g;
}

Poly poly_divide_monomial(const Poly& p, const Monomial& m) {
  if (m.empty()) return p;
  Poly out;
  for (const auto& [mono, c] : p) {
    Monomial q;
    bool ok = try_monomial_divide(mono, m, q);
    assert(ok);
    (void)ok;
    out.emplace(std::move(q), c);
  }
  return out;
}

std::optional<Poly> poly_exact_divide(Workspace& ws, const Poly& a, const Poly& b) {
  if (b.empty()) return std::nullopt;
  if (a.empty()) return poly_zero();
  // Termwise elimination is exact only when the divisor cannot trigger
  // radical/exponential reductions against the quotient monomials.
  if (!pure_poly(b)) return std::nullopt;
  auto [lm_b, lc_b] = leading_term(b);
  Poly rem = a, quotient;
  while (!rem.empty()) {
    auto [lm_r, lc_r] = leading_term(rem);
    Monomial q;
    if (!try_monomial_divide(lm_r, lm_b, q)) return std::nullopt;
    GaussianRational coeff = lc_r / lc_b;
    add_term(quotient, q, coeff);
    poly_add_scaled_mono(ws, rem, q, -coeff, b);
  }
  return quotient;
}

std::vector<AtomCode> poly_atoms(const Poly& p) {
  std::set<AtomCode> codes;
  for (const auto& [m, c] : p)
    for (const auto& [code, e] : m.entries) codes.insert(code);
  return {codes.begin(), codes.end()};
}

}  // namespace pbrack
