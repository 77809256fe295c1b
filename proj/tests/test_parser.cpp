#include <doctest.h>

#include "test_support.hpp"

using namespace pbrack;
using test::Fixture;

namespace {

const char* kSo4Session = R"(# SO(4) generators in the 3-D Coulomb potential
dimension 3
define r  = sqrt(q1^2+q2^2+q3^2)
define ham = (p1^2+p2^2+p3^2)/2 - 1/r
define l1 = q2*p3 - q3*p2
define l2 = q3*p1 - q1*p3
define l3 = q1*p2 - q2*p1
define r1 = l3*p2 - l2*p3 - I*hbar*p1 - q1/r
define r2 = l1*p3 - l3*p1 - I*hbar*p2 - q2/r
define r3 = l2*p1 - l1*p2 - I*hbar*p3 - q3/r
commutator r1 r2
commutator ham r1
commutator l1 l2
closure ham | l1 l2 l3 r1 r2 r3 | degree 2 hbar_max 2
)";

}  // namespace

TEST_CASE("simple expression structure") {
  Fixture f = test::coulomb();
  NormalForm direct = f.parse("q2*p3 - q3*p2");
  CHECK(direct == f["l1"]);
}

TEST_CASE("the Coulomb Hamiltonian parses") {
  Fixture f = test::coulomb();
  NormalForm h = f.parse("(p1^2+p2^2+p3^2)/2 - 1/sqrt(q1^2+q2^2+q3^2)");
  CHECK(h == f["ham"]);
}

TEST_CASE("out-of-range index is an unknown name") {
  PhaseSpace space(3);
  CHECK_THROWS_AS(parse_expression("q4", space), UnknownName);
  try {
    parse_expression("q1 + q4", space);
    CHECK(false);
  } catch (const UnknownName& e) {
    CHECK(e.name() == "q4");
    CHECK(e.position() == 5);
  }
}

TEST_CASE("precedence and associativity") {
  Fixture f = test::coulomb();
  CHECK(f.parse("-q1^2") == -f.parse("q1^2"));        // ^ binds tighter than unary minus
  CHECK(f.parse("-q1 + q2") == f.parse("q2 - q1"));   // leading minus negates one term
  CHECK(f.parse("q1^-2") == pow(f.parse("q1"), -2));
  CHECK(f.parse("2^-1") == f.parse("1/2"));
  CHECK(f.parse("8/4/2") == f.parse("1"));            // left-associative division
  CHECK(f.parse("q1^(2)") == f.parse("q1*q1"));
  CHECK(f.parse("q1^(4/2)") == f.parse("q1*q1"));
  CHECK(f.parse("2*q1^2") == f.parse("2*(q1^2)"));
}

TEST_CASE("rational and integer literals are exact") {
  Fixture f = test::coulomb();
  NormalForm half = f.parse("1/2");
  CHECK(half.as_constant().has_value());
  CHECK(*half.as_constant() == GaussianRational(Rational(1, 2)));
  NormalForm big = f.parse("123456789012345678901234567890");
  CHECK(big.as_constant()->re == Rational("123456789012345678901234567890"));
}

TEST_CASE("non-integer exponents are rejected") {
  PhaseSpace space(3);
  CHECK_THROWS_AS(parse_expression("q1^(1/2)", space), NonIntegerExponent);
  CHECK_THROWS_AS(parse_expression("q1^p1", space), NonIntegerExponent);
  CHECK_THROWS_AS(parse_expression("2^(1/2)", space), NonIntegerExponent);
}

TEST_CASE("syntax errors carry positions") {
  PhaseSpace space(3);
  try {
    parse_expression("q1 + + q2", space);
    CHECK(false);
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(parse_expression("(q1", space), SyntaxError);
  CHECK_THROWS_AS(parse_expression("q1 q2", space), SyntaxError);
  CHECK_THROWS_AS(parse_expression("foo(q1)", space), SyntaxError);
  CHECK_THROWS_AS(parse_expression("", space), SyntaxError);
  CHECK_THROWS_AS(parse_expression("q1 @ q2", space), SyntaxError);
}

TEST_CASE("sqrt and exp require call syntax") {
  PhaseSpace space(1);
  CHECK_THROWS_AS(parse_expression("sqrt + 1", space), SyntaxError);
  CHECK_THROWS_AS(parse_expression("exp", space), SyntaxError);
}

TEST_CASE("full SO(4) session parses") {
  SessionScript script = parse_session(kSo4Session);
  CHECK(script.space.dimension() == 3);
  CHECK(script.definitions.size() == 8);
  CHECK(script.commands.size() == 4);
  CHECK(script.commands[0].kind == Command::Kind::Commutator);
  CHECK(script.commands[3].kind == Command::Kind::Closure);
  CHECK(script.commands[3].scalars == std::vector<std::string>{"ham"});
  CHECK(script.commands[3].generators.size() == 6);
  CHECK(script.commands[3].degree == 2);
  CHECK(script.commands[3].hbar_max == 2);
}

TEST_CASE("session error cases") {
  CHECK_THROWS_AS(parse_session(""), MissingDimension);
  CHECK_THROWS_AS(parse_session("# only comments\n\n"), MissingDimension);
  CHECK_THROWS_AS(parse_session("define x = 1\n"), MissingDimension);
  CHECK_THROWS_AS(parse_session("dimension 3\ndefine a = q1\ndefine a = q2\n"),
                  DuplicateDefinition);
  CHECK_THROWS_AS(parse_session("dimension 3\ndefine a = q1\nparam mu\n"), SyntaxError);
  CHECK_THROWS_AS(parse_session("dimension 0\n"), SyntaxError);
  CHECK_THROWS_AS(parse_session("dimension 3\ndimension 2\n"), SyntaxError);
  CHECK_THROWS_AS(parse_session("dimension 3\ndefine q1 = p1\n"), SyntaxError);
  CHECK_THROWS_AS(parse_session("dimension 3\ndefine a = nosuch + 1\n"), SyntaxError);
  CHECK_THROWS_AS(parse_session("dimension 3\nfrobnicate q1\n"), SyntaxError);
  CHECK_THROWS_AS(parse_session("dimension 3\nclosure ham |\n"), SyntaxError);
}

TEST_CASE("closure command variants") {
  SessionScript s1 = parse_session("dimension 3\nclosure | q1 p1 | degree 1 hbar_max 0\n");
  CHECK(s1.commands[0].scalars.empty());
  CHECK(s1.commands[0].degree == 1);
  CHECK(s1.commands[0].hbar_max == 0);
  SessionScript s2 = parse_session("dimension 3\nclosure | q1 p1\n");
  CHECK(s2.commands[0].degree == 2);  // defaults
  CHECK(s2.commands[0].hbar_max == 2);
}

TEST_CASE("check command options") {
  SessionScript s =
      parse_session("dimension 1\ncheck q1 p1 expect 0 trials 10 tol 1e-6\n");
  const Command& c = s.commands[0];
  CHECK(c.kind == Command::Kind::Check);
  CHECK(c.trials == 10);
  CHECK(c.tolerance == doctest::Approx(1e-6));
  CHECK(c.expected_text == "0");
  CHECK(c.expected != nullptr);
}

TEST_CASE("unknown names in command arguments defer to execution") {
  // Parses fine; the name error surfaces when the command runs.
  SessionScript s = parse_session("dimension 3\nbracket l1 l9\n");
  CHECK(s.commands.size() == 1);
}

TEST_CASE("parameters declare extra symbols") {
  SessionScript s = parse_session("dimension 2\nparam a\nparam b\ndefine v = a*q1 + b*q2\n");
  CHECK(s.space.parameters() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("fuzzing never crashes or mis-parses silently") {
  PhaseSpace space(3);
  std::mt19937_64 rng(1234);
  const std::string alphabet = "qp123+-*/^()sqrtexphbarI .,";
  for (int i = 0; i < 3000; ++i) {
    std::string text;
    std::size_t len = rng() % 24;
    for (std::size_t k = 0; k < len; ++k) text += alphabet[rng() % alphabet.size()];
    try {
      ExprPtr e = parse_expression(text, space);
      CHECK(e != nullptr);
    } catch (const Error&) {
      // any engine error is acceptable; crashes and foreign exceptions are not
    }
  }
}

TEST_CASE("session fuzzing never crashes") {
  std::mt19937_64 rng(4321);
  const std::string alphabet = "dimension param define closure check q1p1=|#\n 0123456789";
  for (int i = 0; i < 1500; ++i) {
    std::string text;
    std::size_t len = rng() % 80;
    for (std::size_t k = 0; k < len; ++k) text += alphabet[rng() % alphabet.size()];
    try {
      (void)parse_session(text);
    } catch (const Error&) {
    }
  }
}
