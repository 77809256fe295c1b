#include "pbrack/render.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

namespace pbrack {

namespace {

// ---------------------------------------------------------------------------
// Plain polynomial / fraction string building.

struct Piece {
  std::string text;
  bool compound = false;  // needs parens when used as a product factor
};

std::string rational_str(const Rational& r) { return r.get_str(); }

// Magnitude/sign split so sums can join terms with " - ". Mixed complex
// coefficients keep their sign inside the parentheses.
struct CoeffText {
  std::string magnitude;  // "" means 1 (omitted before a monomial)
  bool negative = false;
  bool compound = false;
};

CoeffText coeff_text(const GaussianRational& c) {
  if (sgn(c.im) == 0) {
    Rational a = abs(c.re);
    return {a == 1 ? "" : rational_str(a), sgn(c.re) < 0, false};
  }
  if (sgn(c.re) == 0) {
    Rational b = abs(c.im);
    return {b == 1 ? "I" : rational_str(b) + "*I", sgn(c.im) < 0, false};
  }
  std::string s = rational_str(c.re);
  s += sgn(c.im) < 0 ? " - " : " + ";
  Rational b = abs(c.im);
  s += b == 1 ? "I" : rational_str(b) + "*I";
  return {"(" + s + ")", false, false};
}

std::string poly_str(const Workspace& ws, const Poly& p);

std::string atom_str(const Workspace& ws, AtomCode code) {
  switch (atom_kind(code)) {
    case AtomKind::Radical:
      return "sqrt(" + poly_str(ws, ws.radicand(code)) + ")";
    case AtomKind::Exponential:
      return "exp(" + poly_str(ws, ws.exp_argument(code)) + ")";
    default:
      return ws.atom_name(code);
  }
}

std::string monomial_str(const Workspace& ws, const Monomial& m) {
  std::string out;
  for (const auto& [code, e] : m.entries) {
    if (!out.empty()) out += "*";
    out += atom_str(ws, code);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

// Leading term first.
std::string poly_str(const Workspace& ws, const Poly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    CoeffText c = coeff_text(it->second);
    std::string mono = monomial_str(ws, it->first);
    std::string body;
    if (mono.empty()) {
      body = c.magnitude.empty() ? "1" : c.magnitude;
    } else if (c.magnitude.empty()) {
      body = mono;
    } else {
      body = c.magnitude + "*" + mono;
    }
    if (out.empty())
      out = (c.negative ? "-" : "") + body;
    else
      out += (c.negative ? " - " : " + ") + body;
  }
  return out;
}

Piece poly_piece(const Workspace& ws, const Poly& p) {
  std::string s = poly_str(ws, p);
  bool compound = p.size() > 1 || (p.size() == 1 && s.front() == '-');
  // A single positive term with several factors is still fine as a factor.
  return {std::move(s), compound};
}

// ---------------------------------------------------------------------------
// Multivariate gcd over the Gaussian rationals (radical/exponential-free
// inputs only; used for display factoring, never for canonicalization).

constexpr std::size_t kGcdTermCap = 400;

bool gcd_safe(const Poly& p) {
  if (p.size() > kGcdTermCap) return false;
  for (const auto& [m, c] : p)
    if (m.contains_kind(AtomKind::Radical) || m.contains_kind(AtomKind::Exponential)) return false;
  return true;
}

Poly make_monic(Workspace& ws, const Poly& p) {
  (void)ws;
  if (p.empty()) return p;
  GaussianRational lead = leading_term(p).second;
  if (lead.is_one()) return p;
  return poly_scale(p, inverse(lead));
}

// Views p as univariate in x: exponent -> coefficient polynomial.
std::map<int, Poly> univariate_view(const Poly& p, AtomCode x) {
  std::map<int, Poly> out;
  for (const auto& [m, c] : p) {
    int e = m.exponent_of(x);
    Monomial rest;
    for (const auto& [code, k] : m.entries)
      if (code != x) rest.entries.emplace_back(code, k);
    out[e].emplace(std::move(rest), c);
  }
  return out;
}

Poly from_univariate(Workspace& ws, const std::map<int, Poly>& u, AtomCode x) {
  Poly out;
  for (const auto& [e, coeff] : u) {
    Poly part = e == 0 ? coeff : poly_mul(ws, coeff, poly_atom(x, e));
    out = poly_add(out, part);
  }
  return out;
}

Poly gcd_impl(Workspace& ws, Poly f, Poly g, int depth);

Poly content_of(Workspace& ws, const std::map<int, Poly>& u, int depth) {
  Poly c;
  for (const auto& [e, coeff] : u) {
    c = c.empty() ? coeff : gcd_impl(ws, c, coeff, depth + 1);
    if (poly_is_one(c)) break;
  }
  return c;
}

int uni_degree(const std::map<int, Poly>& u) { return u.empty() ? -1 : u.rbegin()->first; }

// Pseudo-remainder of univariate-with-polynomial-coefficient views.
std::map<int, Poly> pseudo_rem(Workspace& ws, std::map<int, Poly> a,
                               const std::map<int, Poly>& b) {
  int db = uni_degree(b);
  const Poly& lb = b.rbegin()->second;
  while (uni_degree(a) >= db) {
    int da = uni_degree(a);
    Poly la = a.rbegin()->second;
    // a := lb*a - la*x^(da-db)*b
    std::map<int, Poly> next;
    for (const auto& [e, coeff] : a) {
      Poly scaled = poly_mul(ws, coeff, lb);
      if (!scaled.empty()) next[e] = std::move(scaled);
    }
    for (const auto& [e, coeff] : b) {
      Poly sub = poly_mul(ws, coeff, la);
      auto it = next.find(e + da - db);
      if (it == next.end()) {
        if (!sub.empty()) next[e + da - db] = poly_neg(sub);
      } else {
        it->second = poly_sub(it->second, sub);
        if (it->second.empty()) next.erase(it);
      }
    }
    a = std::move(next);
    std::size_t total = 0;
    for (const auto& [e, coeff] : a) total += coeff.size();
    if (total > 4 * kGcdTermCap) return {{0, poly_one()}};  // bail: gcd becomes 1
  }
  return a;
}

Poly gcd_impl(Workspace& ws, Poly f, Poly g, int depth) {
  if (f.empty()) return make_monic(ws, g);
  if (g.empty()) return make_monic(ws, f);
  if (depth > 16) return poly_one();
  auto fa = poly_atoms(f), ga = poly_atoms(g);
  if (fa.empty() || ga.empty()) return poly_one();  // a unit is involved

  // Main variable: smallest atom present in both; if none is shared the gcd
  // can only be a constant.
  AtomCode x = 0;
  bool found = false;
  for (AtomCode c : fa) {
    if (std::binary_search(ga.begin(), ga.end(), c)) {
      x = c;
      found = true;
      break;
    }
  }
  if (!found) return poly_one();

  auto uf = univariate_view(f, x), ug = univariate_view(g, x);
  Poly cf = content_of(ws, uf, depth), cg = content_of(ws, ug, depth);
  Poly cont = gcd_impl(ws, cf, cg, depth + 1);

  auto primitive = [&](std::map<int, Poly>& u, const Poly& c) {
    if (poly_is_one(c)) return;
    for (auto& [e, coeff] : u) {
      auto q = poly_exact_divide(ws, coeff, c);
      assert(q);
      coeff = std::move(*q);
    }
  };
  primitive(uf, cf);
  primitive(ug, cg);

  // Primitive Euclid in x.
  std::map<int, Poly>*a = &uf, *b = &ug;
  if (uni_degree(*a) < uni_degree(*b)) std::swap(a, b);
  std::map<int, Poly> r;
  while (uni_degree(*b) > 0 || (uni_degree(*b) == 0 && !poly_is_one(b->begin()->second))) {
    if (uni_degree(*b) == 0) {
      // Nonconstant content-free polynomial vs constant-in-x: gcd divides it.
      Poly c = gcd_impl(ws, content_of(ws, *a, depth), b->begin()->second, depth + 1);
      return make_monic(ws, poly_mul(ws, cont, c));
    }
    r = pseudo_rem(ws, *a, *b);
    if (r.empty()) {
      Poly pp = from_univariate(ws, *b, x);
      Poly c = content_of(ws, *b, depth);
      auto q = poly_exact_divide(ws, pp, c);
      assert(q);
      return make_monic(ws, poly_mul(ws, cont, *q));
    }
    *a = std::move(*b);
    Poly rc = content_of(ws, r, depth);
    for (auto& [e, coeff] : r) {
      auto q = poly_exact_divide(ws, coeff, rc);
      assert(q);
      coeff = std::move(*q);
    }
    *b = std::move(r);
  }
  return make_monic(ws, cont);
}

// ---------------------------------------------------------------------------
// Human rendering with factor extraction.

struct SectorTerm {
  std::string text;
  bool negative = false;
};

// Operators outside any parentheses force a wrap when used after '/'.
bool needs_parens_as_divisor(const std::string& text) {
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '*' || c == '+' || c == '-' || c == ' ')) return true;
  }
  return false;
}

SectorTerm sector_fraction(const Workspace& ws, const Poly& numerator,
                           const std::vector<AtomCode>& radicals, const std::string& den_text) {
  bool den_compound = needs_parens_as_divisor(den_text);
  Piece np = poly_piece(ws, numerator);
  bool negative = false;
  std::string num_text = np.text;
  if (numerator.size() == 1 && !num_text.empty() && num_text.front() == '-') {
    negative = true;
    num_text.erase(0, 1);
    np.compound = false;
  }
  std::string rad;
  for (AtomCode r : radicals) {
    if (!rad.empty()) rad += "*";
    rad += atom_str(ws, r);
  }
  std::string out;
  if (!rad.empty()) {
    if (num_text == "1")
      out = rad;
    else
      out = (np.compound ? "(" + num_text + ")" : num_text) + "*" + rad;
  } else {
    out = den_text.empty() ? num_text : (np.compound ? "(" + num_text + ")" : num_text);
  }
  if (!den_text.empty()) out += "/" + (den_compound ? "(" + den_text + ")" : den_text);
  return {std::move(out), negative};
}

}  // namespace

Poly poly_gcd(Workspace& ws, const Poly& a, const Poly& b) {
  if (!gcd_safe(a) || !gcd_safe(b)) return poly_one();
  return gcd_impl(ws, a, b, 0);
}

std::string render_human(const NormalForm& f) {
  if (f.is_zero()) return "0";
  Workspace& ws = *f.workspace();

  // Pull out the numeric content (with the leading sign) and the common
  // monomial of the numerator.
  Poly num = f.num();
  GaussianRational lead = leading_term(num).second;
  bool negative = sgn(lead.re) < 0 || (sgn(lead.re) == 0 && sgn(lead.im) < 0);
  Rational content = [&num]() {
    mpz_class g = 0, l = 1;
    for (const auto& [m, c] : num) {
      for (const Rational* r : {&c.re, &c.im}) {
        if (sgn(*r) == 0) continue;
        g = gcd(g, mpz_class(abs(r->get_num())));
        l = lcm(l, r->get_den());
      }
    }
    Rational out(g, l);
    out.canonicalize();
    return out;
  }();
  bool all_imaginary = true;
  for (const auto& [m, c] : num)
    if (sgn(c.re) != 0) all_imaginary = false;
  GaussianRational scale{(negative ? -content : content)};
  if (all_imaginary) scale *= GaussianRational::i();
  num = poly_scale(num, inverse(scale));

  // Radicals stay behind for the sector logic below; everything else common
  // to all terms moves into the prefix.
  Monomial common = common_monomial(num);
  std::erase_if(common.entries,
                [](const auto& en) { return atom_kind(en.first) == AtomKind::Radical; });
  if (!common.empty()) num = poly_divide_monomial(num, common);

  // Split by radical signature, then factor out the polynomial gcd of the
  // sector polynomials (this is what turns the expanded Runge-Lenz bracket
  // back into the product form the formulas are quoted in).
  std::map<std::vector<AtomCode>, Poly> sectors;
  for (const auto& [m, c] : num) {
    std::vector<AtomCode> sig;
    Monomial rest;
    for (const auto& [code, e] : m.entries) {
      if (atom_kind(code) == AtomKind::Radical)
        sig.push_back(code);
      else
        rest.entries.emplace_back(code, e);
    }
    sectors[sig].emplace(std::move(rest), c);
  }

  Poly factor = poly_one();
  bool exp_free = true;
  for (const auto& [sig, p] : sectors)
    if (!gcd_safe(p)) exp_free = false;
  if (exp_free && !sectors.empty()) {
    auto it = sectors.begin();
    factor = it->second;
    for (++it; it != sectors.end() && !poly_is_one(factor); ++it)
      factor = poly_gcd(ws, factor, it->second);
    factor = make_monic(ws, factor);
    if (factor.size() == 1 && factor.begin()->first.empty()) factor = poly_one();
  }

  // Sector terms over the denominator, divided through where exact.
  std::vector<SectorTerm> terms;
  const Poly& den = f.den();
  bool den_is_one = poly_is_one(den);
  for (const auto& [sig, p] : sectors) {
    Poly h = p;
    if (!poly_is_one(factor)) {
      auto q = poly_exact_divide(ws, p, factor);
      assert(q);
      h = std::move(*q);
    }
    if (den_is_one) {
      terms.push_back(sector_fraction(ws, h, sig, ""));
      continue;
    }
    if (sig.empty()) {
      if (auto q = poly_exact_divide(ws, h, den)) {
        terms.push_back(sector_fraction(ws, *q, {}, ""));
      } else {
        terms.push_back(sector_fraction(ws, h, {}, poly_str(ws, den)));
      }
      continue;
    }
    if (sig.size() == 1) {
      Poly u = ws.radicand(sig[0]);
      if (auto w = poly_exact_divide(ws, den, u)) {
        // h*r/(u*w) = h/(r*w)
        std::string dtext = atom_str(ws, sig[0]);
        if (!poly_is_one(*w)) dtext += "*(" + poly_str(ws, *w) + ")";
        terms.push_back(sector_fraction(ws, h, {}, dtext));
        continue;
      }
    }
    if (auto q = poly_exact_divide(ws, h, den)) {
      terms.push_back(sector_fraction(ws, *q, sig, ""));
    } else {
      terms.push_back(sector_fraction(ws, h, sig, poly_str(ws, den)));
    }
  }

  std::string body;
  for (const auto& t : terms) {
    if (body.empty())
      body = (t.negative ? "-" : "") + t.text;
    else
      body += (t.negative ? " - " : " + ") + t.text;
  }

  // Assemble prefix * (body).
  std::vector<std::string> prefix;
  CoeffText c = coeff_text(scale);
  if (!c.magnitude.empty()) prefix.push_back(c.magnitude);
  if (!common.empty()) prefix.push_back(monomial_str(ws, common));
  if (!poly_is_one(factor)) prefix.push_back("(" + poly_str(ws, factor) + ")");

  std::string out = c.negative ? "-" : "";
  if (prefix.empty()) {
    if (c.negative && terms.size() > 1)
      out += "(" + body + ")";
    else
      out += body;
    return out;
  }
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (i) out += "*";
    out += prefix[i];
  }
  if (body != "1") {
    bool wrap = terms.size() > 1 || terms[0].negative ||
                terms[0].text.find_first_of("+-/") != std::string::npos;
    out += "*" + (wrap ? "(" + body + ")" : body);
  }
  return out;
}

namespace {

nlohmann::ordered_json terms_json(const Workspace& ws, const Poly& p) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    nlohmann::ordered_json term;
    term["coeff_re"] = rational_str(it->second.re);
    term["coeff_im"] = rational_str(it->second.im);
    nlohmann::ordered_json powers = nlohmann::ordered_json::object();
    for (const auto& [code, e] : it->first.entries) powers[ws.atom_name(code)] = e;
    term["powers"] = std::move(powers);
    out.push_back(std::move(term));
  }
  return out;
}

}  // namespace

nlohmann::ordered_json render_machine(const NormalForm& f) {
  const Workspace& ws = *f.workspace();
  nlohmann::ordered_json out;
  out["numerator"] = terms_json(ws, f.num());
  out["denominator"] = terms_json(ws, f.den());

  nlohmann::ordered_json atoms = nlohmann::ordered_json::object();
  std::vector<AtomCode> interned;
  for (AtomCode code : referenced_atoms(f)) {
    AtomKind k = atom_kind(code);
    if (k == AtomKind::Radical || k == AtomKind::Exponential) interned.push_back(code);
  }
  std::sort(interned.begin(), interned.end());
  for (AtomCode code : interned) {
    nlohmann::ordered_json entry;
    if (atom_kind(code) == AtomKind::Radical) {
      entry["kind"] = "sqrt";
      entry["radicand"] = terms_json(ws, ws.radicand(code));
    } else {
      entry["kind"] = "exp";
      entry["argument"] = terms_json(ws, ws.exp_argument(code));
    }
    atoms[ws.atom_name(code)] = std::move(entry);
  }
  out["atoms"] = std::move(atoms);
  return out;
}

std::string render(const NormalForm& f, RenderStyle style) {
  if (style == RenderStyle::Human) return render_human(f);
  return render_machine(f).dump();
}

}  // namespace pbrack
