#include <doctest.h>

#include "test_support.hpp"

using namespace pbrack;
using test::Fixture;
using test::Rng;

TEST_CASE("canonical relations") {
  for (std::size_t n : {1u, 2u, 3u}) {
    auto ws = make_workspace(PhaseSpace(n));
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = 0; j < n; ++j) {
        NormalForm qi = NormalForm::atom(ws, atom_code(AtomKind::Coordinate, i));
        NormalForm qj = NormalForm::atom(ws, atom_code(AtomKind::Coordinate, j));
        NormalForm pi = NormalForm::atom(ws, atom_code(AtomKind::Momentum, i));
        NormalForm pj = NormalForm::atom(ws, atom_code(AtomKind::Momentum, j));
        NormalForm qp = poisson_bracket(qi, pj).value;
        if (i == j)
          CHECK(qp == NormalForm::one(ws));
        else
          CHECK(qp.is_zero());
        CHECK(poisson_bracket(qi, qj).value.is_zero());
        CHECK(poisson_bracket(pi, pj).value.is_zero());
      }
    }
  }
}

TEST_CASE("angular momentum algebra") {
  Fixture f = test::coulomb();
  CHECK(poisson_bracket(f["l1"], f["l2"]).value == f["l3"]);
  CHECK(poisson_bracket(f["l2"], f["l3"]).value == f["l1"]);
  CHECK(poisson_bracket(f["l3"], f["l1"]).value == f["l2"]);

  NormalForm lhs = commutator(f["l1"], f["l2"]).value;
  CHECK(lhs == f.parse("I*hbar*l3"));
}

TEST_CASE("Runge-Lenz bracket with the hbar-bearing definitions") {
  Fixture f = test::coulomb();
  NormalForm pb = poisson_bracket(f["r1"], f["r2"]).value;
  CHECK((pb - f.parse("-(p2*q1 - p1*q2)*(p1^2+p2^2+p3^2 - 2/r)")).is_zero());
  CHECK((pb - f.parse("-2*ham*l3")).is_zero());

  NormalForm comm = commutator(f["r1"], f["r2"]).value;
  CHECK((comm - f.parse("-I*hbar*(p2*q1 - p1*q2)*(p1^2+p2^2+p3^2 - 2/r)")).is_zero());
}

TEST_CASE("classical Runge-Lenz closes the same way") {
  Fixture f = test::coulomb(/*hbar_terms=*/false);
  NormalForm pb = poisson_bracket(f["r1"], f["r2"]).value;
  CHECK((pb + f.parse("2*ham*l3")).is_zero());
}

TEST_CASE("conservation: brackets with the Hamiltonian") {
  Fixture f = test::coulomb();
  for (const char* name : {"l1", "l2", "l3"})
    CHECK(poisson_bracket(f["ham"], f[name]).value.is_zero());

  // The classical Runge-Lenz components are exactly conserved.
  Fixture fc = test::coulomb(/*hbar_terms=*/false);
  for (const char* name : {"r1", "r2", "r3"})
    CHECK(poisson_bracket(fc["ham"], fc[name]).value.is_zero());

  // With the -I*hbar*p term kept inside r1, the literal classical-bracket
  // reduction leaves the order-hbar^2 artifact hbar^2*q1/r^3, since
  // {H, -I*hbar*p1} = -I*hbar*q1/r^3 has nothing to cancel against.
  NormalForm residual = commutator(f["ham"], f["r1"]).value;
  CHECK((residual - f.parse("hbar^2*q1/r^3")).is_zero());
}

TEST_CASE("the mixed bracket matches the iħR form") {
  Fixture f = test::coulomb();
  CHECK(poisson_bracket(f["l1"], f["r2"]).value == f["r3"]);
  CHECK((commutator(f["l1"], f["r2"]).value - f.parse("I*hbar*r3")).is_zero());
}

TEST_CASE("canonical commutator") {
  Fixture f = test::coulomb();
  CHECK(commutator(f.parse("q1"), f.parse("p1")).value == f.parse("I*hbar"));
}

TEST_CASE("antisymmetry") {
  Fixture f = test::coulomb();
  Rng rng(23);
  for (int i = 0; i < 40; ++i) {
    NormalForm a = test::random_fraction(f, rng);
    NormalForm b = test::random_fraction(f, rng);
    CHECK((poisson_bracket(a, b).value + poisson_bracket(b, a).value).is_zero());
  }
}

TEST_CASE("bilinearity") {
  Fixture f = test::coulomb();
  Rng rng(29);
  for (int i = 0; i < 20; ++i) {
    NormalForm a = NormalForm::constant(f.ws, rng.coeff());
    NormalForm b = NormalForm::constant(f.ws, rng.coeff());
    NormalForm x = test::random_fraction(f, rng, 3, 2);
    NormalForm y = test::random_fraction(f, rng, 3, 2);
    NormalForm z = test::random_fraction(f, rng, 3, 2);
    NormalForm lhs = poisson_bracket(a * x + b * y, z).value;
    NormalForm rhs = a * poisson_bracket(x, z).value + b * poisson_bracket(y, z).value;
    CHECK((lhs - rhs).is_zero());
  }
}

TEST_CASE("Leibniz rule") {
  Fixture f = test::coulomb();
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    NormalForm a = test::random_fraction(f, rng, 3, 2);
    NormalForm b = test::random_fraction(f, rng, 3, 2);
    NormalForm c = test::random_fraction(f, rng, 3, 2);
    NormalForm lhs = poisson_bracket(a, b * c).value;
    NormalForm rhs = b * poisson_bracket(a, c).value + poisson_bracket(a, b).value * c;
    CHECK((lhs - rhs).is_zero());
  }
}

TEST_CASE("Jacobi identity") {
  Fixture f = test::coulomb();
  Rng rng(37);
  for (int i = 0; i < 10; ++i) {
    NormalForm a = test::random_fraction(f, rng, 3, 2);
    NormalForm b = test::random_fraction(f, rng, 3, 2);
    NormalForm c = test::random_fraction(f, rng, 3, 2);
    NormalForm sum = poisson_bracket(a, poisson_bracket(b, c).value).value +
                     poisson_bracket(b, poisson_bracket(c, a).value).value +
                     poisson_bracket(c, poisson_bracket(a, b).value).value;
    CHECK(sum.is_zero());
  }
}

TEST_CASE("commutator equals I*hbar times the Poisson bracket") {
  Fixture f = test::coulomb();
  Rng rng(41);
  NormalForm i_hbar = f.parse("I*hbar");
  for (int i = 0; i < 20; ++i) {
    NormalForm a = test::random_fraction(f, rng, 3, 2);
    NormalForm b = test::random_fraction(f, rng, 3, 2);
    CHECK(commutator(a, b).value == i_hbar * poisson_bracket(a, b).value);
  }
}

TEST_CASE("arbitrary dimension") {
  auto ws = make_workspace(PhaseSpace(6));
  std::set<std::string> no_names;
  auto v = [&](const std::string& t) {
    return normalize(parse_expression(t, ws->space(), no_names), ws);
  };
  // l12 and l34 commute; l12 and l23 bracket into -l13.
  NormalForm l12 = v("q1*p2 - q2*p1");
  NormalForm l34 = v("q3*p4 - q4*p3");
  NormalForm l23 = v("q2*p3 - q3*p2");
  NormalForm l13 = v("q1*p3 - q3*p1");
  CHECK(poisson_bracket(l12, l34).value.is_zero());
  CHECK((poisson_bracket(l12, l23).value + l13).is_zero());
}

TEST_CASE("space mismatch") {
  Fixture a = test::coulomb();
  Fixture b = test::coulomb();
  CHECK_THROWS_AS(poisson_bracket(a["l1"], b["l2"]), SpaceMismatch);
}

TEST_CASE("screened Coulomb system still conserves angular momentum") {
  Fixture f{make_workspace(PhaseSpace(3, {"a"})), {}};
  f.define("r", "sqrt(q1^2+q2^2+q3^2)");
  f.define("ham", "(p1^2+p2^2+p3^2)/2 - exp(-a*r)/r");
  f.define("l3", "q1*p2 - q2*p1");
  CHECK(poisson_bracket(f["ham"], f["l3"]).value.is_zero());
  CHECK(commutator(f["ham"], f["l3"]).value.is_zero());
}
