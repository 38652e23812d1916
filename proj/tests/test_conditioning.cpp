#include "credal/conditioning.hpp"

#include "doctest.h"

using namespace credal;

namespace {

Rational q(long long n, long long d) { return Rational(n, d); }

CredalState taxi() {
  return CredalState(Signature({"E", "H"}), {q(68, 100), q(17, 100), q(3, 100), q(12, 100)});
}

}  // namespace

TEST_CASE("bayes conditioning renormalizes onto the condition") {
  CredalState P = taxi();
  CredalState Q = bayes(P, parse_sentence("E"));
  CHECK(Q.prob(parse_sentence("H")) == q(12, 29));
  CHECK(Q.prob(parse_sentence("E")) == Rational(1));
  CHECK(Q.mass(0) == Rational(0));
  CHECK(Q.mass(1) == q(17, 29));
  // Compound conditions are fine without kinetics.
  CredalState R = bayes(P, parse_sentence("E | H"));
  CHECK(R.prob(parse_sentence("E | H")) == Rational(1));
  CHECK(R.prob(parse_sentence("E & H")) == q(12, 32));
}

TEST_CASE("bayes with kinetics drops the consumed atom") {
  CredalState Q = bayes(taxi(), parse_sentence("E"), true);
  CHECK(Q.signature() == Signature({"H"}));
  CHECK(Q.prob(parse_sentence("H")) == q(12, 29));
  CHECK_THROWS_AS(bayes(taxi(), parse_sentence("E & H"), true), KineticsOnCompound);
}

TEST_CASE("bayes rejects zero-probability conditions") {
  CHECK_THROWS_AS(bayes(taxi(), Sentence::bottom()), ZeroCondition);
  CredalState Z(Signature({"E", "H"}), {q(1, 2), Rational(0), q(1, 4), q(1, 4)});
  CHECK_THROWS_AS(bayes(Z, parse_sentence("E & !H")), ZeroCondition);
  CHECK_THROWS_AS(bayes(taxi(), parse_sentence("Z")), UnknownAtom);
}

TEST_CASE("jeffrey conditioning hits its target and is rigid") {
  CredalState P = taxi();
  Sentence E = parse_sentence("E"), H = parse_sentence("H");
  CredalState Q = jeffrey(P, q(3, 4), E);
  CHECK(Q.prob(E) == q(3, 4));
  // Rigidity: conditionals inside and outside the partition cell survive.
  CHECK(cond_prob0(Q, H, E) == cond_prob0(P, H, E));
  CHECK(cond_prob0(Q, H, parse_sentence("!E")) == cond_prob0(P, H, parse_sentence("!E")));
  // The endpoints reduce to plain conditioning.
  CHECK(jeffrey(P, Rational(1), E) == bayes(P, E));
  CHECK(jeffrey(P, Rational(0), E) == bayes(P, parse_sentence("!E")));
  // A no-op target returns the state unchanged.
  CHECK(jeffrey(P, P.prob(E), E) == P);
}

TEST_CASE("jeffrey validates weight and support") {
  CredalState P = taxi();
  Sentence E = parse_sentence("E");
  CHECK_THROWS_AS(jeffrey(P, q(5, 4), E), ParameterOutOfRange);
  CHECK_THROWS_AS(jeffrey(P, q(-1, 4), E), ParameterOutOfRange);
  CredalState Z(Signature({"E", "H"}), {q(1, 2), Rational(0), q(1, 4), q(1, 4)});
  CHECK_THROWS_AS(jeffrey(Z, q(1, 2), parse_sentence("E & !H")), ZeroCondition);
  CHECK(jeffrey(Z, Rational(0), parse_sentence("E & !H")) == Z);
}

TEST_CASE("single-likelihood install sets the conditional and keeps the rest") {
  CredalState P = taxi();
  Sentence E = parse_sentence("E"), H = parse_sentence("H");
  CredalState Q = slac(P, q(1, 2), E, H);
  CHECK(cond_prob0(Q, E, H) == q(1, 2));
  CHECK(Q.prob(H) == P.prob(H));
  // Outside h nothing moves.
  CHECK(Q.prob(parse_sentence("!H & E")) == P.prob(parse_sentence("!H & E")));
  CHECK(Q.prob(parse_sentence("!H & !E")) == P.prob(parse_sentence("!H & !E")));
  // Installing the current likelihood is a no-op.
  CHECK(slac(P, q(4, 5), E, H) == P);
  // l = 1 pushes all of h onto e.
  CHECK(cond_prob0(slac(P, Rational(1), E, H), E, H) == Rational(1));
}

TEST_CASE("single-likelihood install validates parameter and regions") {
  CredalState P = taxi();
  Sentence E = parse_sentence("E"), H = parse_sentence("H");
  CHECK_THROWS_AS(slac(P, Rational(0), E, H), ParameterOutOfRange);
  CHECK_THROWS_AS(slac(P, q(3, 2), E, H), ParameterOutOfRange);
  CredalState Z(Signature({"E", "H"}), {q(1, 2), q(1, 4), q(1, 4), Rational(0)});
  CHECK_THROWS_AS(slac(Z, q(1, 2), E, H), ZeroCondition);
}

TEST_CASE("double-likelihood install sets both conditionals") {
  CredalState P = taxi();
  Sentence E = parse_sentence("E"), H = parse_sentence("H");
  CredalState Q = dlac(P, q(2, 3), q(1, 3), E, H);
  CHECK(cond_prob0(Q, E, H) == q(2, 3));
  CHECK(cond_prob0(Q, E, parse_sentence("!H")) == q(1, 3));
  CHECK(Q.prob(H) == P.prob(H));
  // It factors as two single installs, one per side of the hypothesis.
  CHECK(Q == slac(slac(P, q(2, 3), E, H), q(1, 3), E, parse_sentence("!H")));
  CHECK_THROWS_AS(dlac(P, Rational(0), q(1, 3), E, H), ParameterOutOfRange);
  CHECK_THROWS_AS(dlac(P, q(2, 3), q(4, 3), E, H), ParameterOutOfRange);
  CredalState Z(Signature({"E", "H"}), {q(1, 2), Rational(0), q(1, 4), q(1, 4)});
  CHECK_THROWS_AS(dlac(Z, q(1, 2), q(1, 2), E, H), ZeroCondition);
}

TEST_CASE("expansion adjoins a fresh atom and reduction undoes it") {
  CredalState P = taxi();
  for (ExpansionMode mode : {ExpansionMode::One, ExpansionMode::Zero, ExpansionMode::Half}) {
    CredalState Q = expand(P, "X", mode);
    CHECK(Q.signature() == Signature({"E", "H", "X"}));
    CHECK(Q.prob(parse_sentence("E")) == P.prob(parse_sentence("E")));
    CHECK(reduce(Q, "X") == P);
  }
  CHECK(expand(P, "X", ExpansionMode::One).prob(parse_sentence("X")) == Rational(1));
  CHECK(expand(P, "X", ExpansionMode::Zero).prob(parse_sentence("X")) == Rational(0));
  CHECK(expand(P, "X", ExpansionMode::Half).prob(parse_sentence("X")) == q(1, 2));
  CHECK_THROWS_AS(expand(P, "E", ExpansionMode::One), AtomAlreadyPresent);
  CHECK_THROWS_AS(reduce(P, "X"), UnknownAtom);
}

TEST_CASE("parametrized expansion installs per-minterm conditionals") {
  CredalState P = taxi();
  std::vector<Rational> qv = {q(1, 8), q(2, 8), q(3, 8), q(4, 8)};
  CredalState Q = expand_parametrized(P, "X", qv);
  Sentence X = parse_sentence("X");
  for (std::size_t i = 0; i < 4; ++i) {
    Sentence cell = minterm_sentence(P.signature(), i);
    CHECK(Q.prob(cell) == P.mass(i));
    CHECK(cond_prob0(Q, X, cell) == qv[i]);
  }
  CHECK(reduce(Q, "X") == P);
  CHECK_THROWS_AS(expand_parametrized(P, "X", {q(1, 2)}), ParameterOutOfRange);
  CHECK_THROWS_AS(expand_parametrized(P, "X", {q(1, 2), q(1, 2), q(1, 2), q(3, 2)}),
                  ParameterOutOfRange);
}

TEST_CASE("a two-step build recovers the witness-report prior") {
  CredalState start(Signature{}, {Rational(1)});
  CredalState withH = base_rate(start, "H", q(3, 20));
  CHECK(withH.signature() == Signature({"H"}));
  CHECK(withH.prob(parse_sentence("H")) == q(3, 20));
  // Old minterm order over {H} is !H, H.
  CredalState full = expand_parametrized(withH, "E", {q(1, 5), q(4, 5)});
  CHECK(full == taxi());
  // The base rate is independent of everything already present.
  CredalState R = base_rate(taxi(), "X", q(1, 3));
  CHECK(R.prob(parse_sentence("X & E")) == q(1, 3) * taxi().prob(parse_sentence("E")));
  CHECK_THROWS_AS(base_rate(taxi(), "X", q(3, 2)), ParameterOutOfRange);
}
