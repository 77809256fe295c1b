#ifndef PBRACK_TEST_SUPPORT_HPP
#define PBRACK_TEST_SUPPORT_HPP

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pbrack/bracket.hpp"
#include "pbrack/calculus.hpp"
#include "pbrack/closure.hpp"
#include "pbrack/expr.hpp"
#include "pbrack/normal_form.hpp"
#include "pbrack/oracle.hpp"
#include "pbrack/parser.hpp"
#include "pbrack/render.hpp"

namespace pbrack::test {

// A workspace with named values, built by parsing definitions in order.
struct Fixture {
  WorkspacePtr ws;
  std::map<std::string, NormalForm> defs;

  NormalForm parse(const std::string& text) const {
    std::set<std::string> names;
    for (const auto& [n, v] : defs) names.insert(n);
    return normalize(parse_expression(text, ws->space(), names), ws, defs);
  }

  void define(const std::string& name, const std::string& text) {
    defs.emplace(name, parse(text));
  }

  const NormalForm& operator[](const std::string& name) const { return defs.at(name); }
};

// The 3-D Coulomb system: r, ham, angular momentum l1..l3 and the Runge-Lenz
// components r1..r3 (with or without the -I*hbar*p terms).
inline Fixture coulomb(bool hbar_terms = true) {
  Fixture f{make_workspace(PhaseSpace(3)), {}};
  f.define("r", "sqrt(q1^2+q2^2+q3^2)");
  f.define("ham", "(p1^2+p2^2+p3^2)/2 - 1/r");
  f.define("l1", "q2*p3 - q3*p2");
  f.define("l2", "q3*p1 - q1*p3");
  f.define("l3", "q1*p2 - q2*p1");
  const char* tail = hbar_terms ? " - I*hbar*p%d - q%d/r" : " - q%d/r";
  auto runge = [&](int i, const std::string& head) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), (head + tail).c_str(), i, i);
    f.define("r" + std::to_string(i), buf);
  };
  runge(1, "l3*p2 - l2*p3");
  runge(2, "l1*p3 - l3*p1");
  runge(3, "l2*p1 - l1*p2");
  return f;
}

// The n-dimensional isotropic harmonic oscillator with its u(n) generators
// a_jk = p_j p_k + q_j q_k (j <= k) and t_jk = q_j p_k - q_k p_j (j < k).
inline Fixture harmonic(int n = 3) {
  Fixture f{make_workspace(PhaseSpace(static_cast<std::size_t>(n))), {}};
  std::string h;
  for (int i = 1; i <= n; ++i) {
    if (!h.empty()) h += " + ";
    h += "(q" + std::to_string(i) + "^2 + p" + std::to_string(i) + "^2)/2";
  }
  f.define("ham", h);
  for (int j = 1; j <= n; ++j)
    for (int k = j; k <= n; ++k) {
      std::string sj = std::to_string(j), sk = std::to_string(k);
      f.define("a" + sj + sk, "p" + sj + "*p" + sk + " + q" + sj + "*q" + sk);
      if (j < k) f.define("t" + sj + sk, "q" + sj + "*p" + sk + " - q" + sk + "*p" + sj);
    }
  return f;
}

// Deterministic random expressions for property tests.
struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  int upto(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n + 1)); }

  GaussianRational coeff() {
    Rational re(static_cast<long>(upto(8)) - 4, 1 + upto(2));
    re.canonicalize();
    if (upto(4) == 0) {
      Rational im(static_cast<long>(upto(6)) - 3, 1 + upto(1));
      im.canonicalize();
      return {re, im};
    }
    return {re};
  }
};

// A sparse random polynomial over the coordinates/momenta (optionally hbar)
// of the workspace.
inline NormalForm random_poly(const WorkspacePtr& ws, Rng& rng, int max_terms = 4,
                              int max_degree = 3, bool allow_hbar = false) {
  std::size_t n = ws->space().dimension();
  NormalForm acc = NormalForm::zero(ws);
  int terms = 1 + rng.upto(max_terms - 1);
  for (int t = 0; t < terms; ++t) {
    NormalForm mono = NormalForm::constant(ws, rng.coeff());
    int deg = rng.upto(max_degree);
    for (int d = 0; d < deg; ++d) {
      std::uint32_t i = static_cast<std::uint32_t>(rng.upto(static_cast<int>(n) - 1));
      AtomKind kind = rng.upto(1) ? AtomKind::Coordinate : AtomKind::Momentum;
      if (allow_hbar && rng.upto(9) == 0)
        mono = mono * NormalForm::atom(ws, kHbarAtom);
      else
        mono = mono * NormalForm::atom(ws, atom_code(kind, i));
    }
    acc = acc + mono;
  }
  return acc;
}

// Polynomial or polynomial * (1/r) against the Coulomb radical, per the shape
// the bracket property tests call for.
inline NormalForm random_fraction(const Fixture& f, Rng& rng, int max_terms = 4,
                                  int max_degree = 3) {
  NormalForm p = random_poly(f.ws, rng, max_terms, max_degree);
  if (rng.upto(2) == 0) p = p * inverse(f["r"]);
  return p;
}

}  // namespace pbrack::test

#endif
