#include <doctest.h>

#include "test_support.hpp"

using namespace pbrack;
using test::Fixture;
using test::Rng;

namespace {

GeneratorSet so4_set(const Fixture& f, bool with_scalar = true) {
  std::vector<std::pair<std::string, NormalForm>> scalars;
  if (with_scalar) scalars.emplace_back("ham", f["ham"]);
  std::vector<std::pair<std::string, NormalForm>> gens;
  for (const char* n : {"l1", "l2", "l3", "r1", "r2", "r3"}) gens.emplace_back(n, f[n]);
  return GeneratorSet(f.ws, std::move(scalars), std::move(gens));
}

const CombinationTerm* find_term(const MatchResult& m, const std::vector<std::string>& names) {
  for (const auto& t : m.combination)
    if (t.monomial == names) return &t;
  return nullptr;
}

}  // namespace

TEST_CASE("bracket table shape for the SO(4) set") {
  // With the classical Runge-Lenz every scalar row vanishes; the hbar-bearing
  // variant leaves the order-hbar residual on the {H, r_i} rows.
  Fixture f = test::coulomb(/*hbar_terms=*/false);
  GeneratorSet set = so4_set(f);
  auto table = bracket_table(set);
  CHECK(table.size() == 6 + 15);  // scalar rows + generator pairs
  int scalar_rows = 0;
  for (const auto& e : table) {
    if (e.scalar_row) {
      ++scalar_rows;
      CHECK(e.lhs == "ham");
      CHECK(e.bracket.is_zero());
    }
  }
  CHECK(scalar_rows == 6);

  Fixture fh = test::coulomb();
  for (const auto& e : bracket_table(so4_set(fh))) {
    if (!e.scalar_row) continue;
    if (e.rhs[0] == 'l')
      CHECK(e.bracket.is_zero());
    else
      CHECK_FALSE(e.bracket.is_zero());
  }
}

TEST_CASE("single generator gives an empty pair list") {
  Fixture f = test::coulomb();
  GeneratorSet set(f.ws, {}, {{"l3", f["l3"]}});
  CHECK(bracket_table(set).empty());
}

TEST_CASE("canonical pair table") {
  Fixture f = test::coulomb();
  GeneratorSet set(f.ws, {}, {{"q1", f.parse("q1")}, {"p1", f.parse("p1")}});
  auto table = bracket_table(set);
  REQUIRE(table.size() == 1);
  CHECK(table[0].bracket == NormalForm::one(f.ws));
}

TEST_CASE("match_combination recognizes -2*H*l3") {
  Fixture f = test::coulomb(/*hbar_terms=*/false);
  GeneratorSet set = so4_set(f);
  NormalForm target = poisson_bracket(f["r1"], f["r2"]).value;
  MatchResult m = match_combination(target, set, 2, 0);
  REQUIRE(m.matched);
  REQUIRE(m.combination.size() == 1);
  const CombinationTerm* t = find_term(m, {"ham", "l3"});
  REQUIRE(t != nullptr);
  CHECK(t->coeff == GaussianRational(-2));
  CHECK(t->hbar_power == 0);
}

TEST_CASE("zero target yields the empty combination") {
  Fixture f = test::coulomb();
  GeneratorSet set = so4_set(f);
  MatchResult m = match_combination(NormalForm::zero(f.ws), set, 2, 1);
  CHECK(m.matched);
  CHECK(m.combination.empty());
}

TEST_CASE("linear independence is respected") {
  Fixture f = test::coulomb();
  GeneratorSet set(f.ws, {}, {{"l1", f["l1"]}, {"l2", f["l2"]}});
  MatchResult m = match_combination(f["l3"], set, 1, 0);
  CHECK_FALSE(m.matched);
  REQUIRE(m.residual.has_value());
  CHECK(*m.residual == f["l3"]);
}

TEST_CASE("the mixed bracket matches r3") {
  Fixture f = test::coulomb();
  GeneratorSet set = so4_set(f);
  NormalForm target = poisson_bracket(f["l1"], f["r2"]).value;
  MatchResult m = match_combination(target, set, 1, 1);
  REQUIRE(m.matched);
  REQUIRE(m.combination.size() == 1);
  CHECK(m.combination[0].monomial == std::vector<std::string>{"r3"});
  CHECK(m.combination[0].coeff == GaussianRational(1));
  CHECK(m.combination[0].hbar_power == 0);
}

TEST_CASE("SO(4) closure with the classical Runge-Lenz") {
  Fixture f = test::coulomb(/*hbar_terms=*/false);
  ClosureReport rep = closure_report(so4_set(f), 2, 0);
  CHECK(rep.closed);
  CHECK(rep.verdict == "closed");
  bool found = false;
  for (const auto& sc : rep.structure_constants) {
    if (sc.lhs == "l1" && sc.rhs == "l2" && sc.target == "l3") {
      found = true;
      CHECK(sc.coeff == GaussianRational(1));
      CHECK(sc.hbar_power == 0);
    }
  }
  CHECK(found);
}

TEST_CASE("harmonic oscillator closes at degree 1") {
  Fixture f = test::harmonic(3);
  std::vector<std::pair<std::string, NormalForm>> gens;
  for (const auto& [name, value] : f.defs)
    if (name != "ham") gens.emplace_back(name, value);
  GeneratorSet set(f.ws, {{"ham", f["ham"]}}, std::move(gens));
  ClosureReport rep = closure_report(set, 1, 0);
  CHECK(rep.closed);
  CHECK(rep.entries.size() == 9 + 36);  // 9 scalar rows, C(9,2) generator pairs
  for (const auto& e : rep.entries) CHECK(e.match.matched);
}

TEST_CASE("Runge-Lenz components alone do not close") {
  Fixture f = test::coulomb();
  std::vector<std::pair<std::string, NormalForm>> gens;
  for (const char* n : {"r1", "r2", "r3"}) gens.emplace_back(n, f[n]);
  GeneratorSet set(f.ws, {}, std::move(gens));
  ClosureReport rep = closure_report(set, 2, 2);
  CHECK_FALSE(rep.closed);
  CHECK(rep.verdict == "not_closed_within_basis");
  for (const auto& e : rep.entries) {
    CHECK_FALSE(e.match.matched);
    REQUIRE(e.match.residual.has_value());
    CHECK_FALSE(e.match.residual->is_zero());
  }
}

TEST_CASE("verdict monotonicity") {
  Fixture f = test::coulomb(/*hbar_terms=*/false);
  CHECK(closure_report(so4_set(f), 2, 0).closed);
  CHECK(closure_report(so4_set(f), 3, 1).closed);
}

TEST_CASE("reports are deterministic") {
  Fixture f = test::coulomb();
  ClosureReport a = closure_report(so4_set(f), 2, 1);
  ClosureReport b = closure_report(so4_set(f), 2, 1);
  CHECK(a.basis == b.basis);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].lhs == b.entries[i].lhs);
    CHECK(a.entries[i].bracket == b.entries[i].bracket);
    REQUIRE(a.entries[i].match.combination.size() == b.entries[i].match.combination.size());
    for (std::size_t j = 0; j < a.entries[i].match.combination.size(); ++j) {
      CHECK(a.entries[i].match.combination[j].coeff == b.entries[i].match.combination[j].coeff);
      CHECK(a.entries[i].match.combination[j].monomial ==
            b.entries[i].match.combination[j].monomial);
    }
  }
}

TEST_CASE("solver recovers randomly constructed combinations") {
  Fixture f = test::coulomb();
  GeneratorSet set = so4_set(f);
  Rng rng(73);
  auto labels = candidate_basis_labels(set, 2, 1);
  // Targets built as random combinations over the same basis must re-expand
  // to themselves after matching (the module re-verifies internally; a
  // matched=false here would be a solver bug).
  std::vector<NormalForm> pool;
  pool.push_back(f["ham"]);
  for (const char* n : {"l1", "l2", "l3", "r1", "r2", "r3"}) pool.push_back(f[n]);
  NormalForm hbar_nf = f.parse("hbar");
  for (int trial = 0; trial < 10; ++trial) {
    NormalForm target = NormalForm::zero(f.ws);
    int terms = 1 + rng.upto(2);
    for (int t = 0; t < terms; ++t) {
      NormalForm mono = NormalForm::constant(f.ws, rng.coeff());
      int deg = 1 + rng.upto(1);
      for (int d = 0; d < deg; ++d) mono = mono * pool[static_cast<std::size_t>(rng.upto(6))];
      if (rng.upto(2) == 0) mono = mono * hbar_nf;
      target = target + mono;
    }
    MatchResult m = match_combination(target, set, 2, 1);
    CHECK(m.matched);
  }
  CHECK(labels.size() > 50);
}

TEST_CASE("generator set validation") {
  Fixture f = test::coulomb();
  CHECK_THROWS_AS(GeneratorSet(f.ws, {}, {}), Error);
  CHECK_THROWS_AS(GeneratorSet(f.ws, {}, {{"x", NormalForm::zero(f.ws)}}), Error);
  CHECK_THROWS_AS(GeneratorSet(f.ws, {{"a", f["l1"]}}, {{"a", f["l2"]}}), Error);
}

TEST_CASE("candidate ordering is hbar power, then degree, then names") {
  Fixture f = test::coulomb();
  GeneratorSet set(f.ws, {{"ham", f["ham"]}}, {{"l1", f["l1"]}, {"l2", f["l2"]}});
  auto labels = candidate_basis_labels(set, 2, 1);
  std::vector<std::string> expected = {
      "ham",      "l1",      "l2",      "ham*ham",    "ham*l1",    "ham*l2",
      "l1*l1",    "l1*l2",   "l2*l2",   "hbar",       "hbar*ham",  "hbar*l1",
      "hbar*l2",  "hbar*ham*ham", "hbar*ham*l1", "hbar*ham*l2", "hbar*l1*l1",
      "hbar*l1*l2", "hbar*l2*l2"};
  CHECK(labels == expected);
}
