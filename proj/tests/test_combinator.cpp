#include "credal/combinator.hpp"

#include "doctest.h"

using namespace credal;

namespace {

Rational q(long long n, long long d) { return Rational(n, d); }

CredalState taxi() {
  return CredalState(Signature({"E", "H"}), {q(68, 100), q(17, 100), q(3, 100), q(12, 100)});
}

CredalState empty_state() { return CredalState(Signature{}, {Rational(1)}); }

}  // namespace

TEST_CASE("terms render and parse back") {
  for (const char* text : {
           "Id",
           "BC(E)",
           "BC(E & !H)",
           "PSE(X,1)",
           "PSE(X,0)",
           "PSE(X,1/2)",
           "PSR(X)",
           "JC(1/3,H)",
           "SLAC(4/5,E,H)",
           "DLAC(4/5,1/5,E,H)",
           "BR(H,3/20)",
           "BC(E).PSE(E,1)",
           "BC(E).DLAC(4/5,1/5,E,H).PSE(E,1).BR(H,3/20)",
       }) {
    CHECK(parse_combinator(text).str() == text);
  }
  CHECK(Combinator::dlac(q(4, 5), q(1, 5), parse_sentence("E"), parse_sentence("H")).str() ==
        "DLAC(4/5,1/5,E,H)");
  // Whitespace around separators is tolerated.
  CHECK(parse_combinator(" BC(E) . PSE(E, 1) ").str() == "BC(E).PSE(E,1)");
}

TEST_CASE("parser rejects malformed terms") {
  CHECK_THROWS_AS(parse_combinator("XYZ(E)"), ParseError);
  CHECK_THROWS_AS(parse_combinator("BC()"), ParseError);
  CHECK_THROWS_AS(parse_combinator("BC(E,H)"), ParseError);
  CHECK_THROWS_AS(parse_combinator("PSE(X,1/4)"), ParseError);
  CHECK_THROWS_AS(parse_combinator("PSR(E & H)"), ParseError);
  CHECK_THROWS_AS(parse_combinator("BC(E"), ParseError);
  CHECK_THROWS_AS(parse_combinator("JC(5/4,H)"), ParameterOutOfRange);
  CHECK_THROWS_AS(parse_combinator("SLAC(0,E,H)"), ParameterOutOfRange);
  CHECK_THROWS_AS(parse_combinator("DLAC(1/2,3/2,E,H)"), ParameterOutOfRange);
  CHECK_THROWS_AS(parse_combinator("BR(X,-1/3)"), ParameterOutOfRange);
}

TEST_CASE("composition applies the rightmost factor first") {
  // PSE wins when it runs first (BR on a present atom is the identity), and
  // vice versa -- so the two orders pin down the convention.
  CHECK(apply(parse_combinator("BR(X,1/3).PSE(X,1/2)"), taxi()).prob(parse_sentence("X")) ==
        q(1, 2));
  CHECK(apply(parse_combinator("PSE(X,1/2).BR(X,1/3)"), taxi()).prob(parse_sentence("X")) ==
        q(1, 3));
  // compose(after, before): `before` is the first to run.
  Combinator c = Combinator::compose(Combinator::br("X", q(1, 3)),
                                     Combinator::pse("X", ExpansionMode::Half));
  CHECK(apply(c, taxi()).prob(parse_sentence("X")) == q(1, 2));
  // Nested compositions flatten into one factor list.
  Combinator nested = Combinator::compose(Combinator::id(), c);
  CHECK(nested.factors().size() == 3);
  CHECK(nested.str() == "Id.BR(X,1/3).PSE(X,1/2)");
}

TEST_CASE("identity and safe conditioning are total") {
  CredalState P = taxi();
  CHECK(apply(Combinator::id(), P) == P);
  // BC on a zero-probability sentence leaves the state unchanged.
  CHECK(apply(Combinator::bc(Sentence::bottom()), P) == P);
  CredalState Z(Signature({"E", "H"}), {q(1, 2), Rational(0), q(1, 4), q(1, 4)});
  CHECK(apply(Combinator::bc(parse_sentence("E & !H")), Z) == Z);
  // On a positive condition it matches strict conditioning.
  CHECK(apply(Combinator::bc(parse_sentence("E")), P) == bayes(P, parse_sentence("E")));
}

TEST_CASE("expansion and reduction combinators degrade to the identity") {
  CredalState P = taxi();
  CHECK(apply(Combinator::pse("E", ExpansionMode::Half), P) == P);
  CHECK(apply(Combinator::psr("X"), P) == P);
  CHECK(apply(Combinator::br("E", q(1, 3)), P) == P);
  // PSR . PSE == Id for every mode.
  for (ExpansionMode mode : {ExpansionMode::One, ExpansionMode::Zero, ExpansionMode::Half}) {
    Combinator round = Combinator::compose(Combinator::psr("X"), Combinator::pse("X", mode));
    CHECK(apply(round, P) == P);
  }
}

TEST_CASE("conditioning on a sentence with missing atoms expands and forgets") {
  CredalState H_only(Signature({"H"}), {q(17, 20), q(3, 20)});
  // The missing atom is adjoined with probability 1, so conditioning on it
  // alone changes nothing.
  CHECK(apply(Combinator::bc(parse_sentence("E")), H_only) == H_only);
  // A compound condition still bites on the atoms that are present.
  CredalState R = apply(Combinator::bc(parse_sentence("E & H")), H_only);
  CHECK(R.signature() == Signature({"H"}));
  CHECK(R.prob(parse_sentence("H")) == Rational(1));
}

TEST_CASE("jeffrey combinator adjoins an unknown atom at one half") {
  CredalState P = taxi();
  CredalState Q = apply(Combinator::jc(q(1, 3), parse_sentence("X")), P);
  CHECK(Q.signature() == Signature({"E", "H", "X"}));
  CHECK(Q.prob(parse_sentence("X")) == q(1, 3));
  // The fresh atom arrives independent, so old probabilities survive.
  CHECK(Q.prob(parse_sentence("E")) == P.prob(parse_sentence("E")));
  CHECK(Q.prob(parse_sentence("H")) == P.prob(parse_sentence("H")));
  CHECK_THROWS_AS(apply(Combinator::jc(q(1, 3), parse_sentence("X & Y")), P), UnknownAtom);
}

TEST_CASE("sub-normalized intermediates are fine, unnormalized finals are not") {
  // Building the witness-report posterior from nothing: the double install
  // after PSE(E,1) leaves total mass 29/100, which the final conditioning
  // step renormalizes.
  CredalState got =
      apply(parse_combinator("BC(E).DLAC(4/5,1/5,E,H).PSE(E,1).BR(H,3/20)"), empty_state());
  CHECK(got.signature() == Signature({"E", "H"}));
  CHECK(got.prob(parse_sentence("H")) == q(12, 29));
  CHECK(got.prob(parse_sentence("E")) == Rational(1));
  // Without the renormalizing step the result is not a probability function.
  CHECK_THROWS_AS(apply(parse_combinator("DLAC(4/5,1/5,E,H).PSE(E,1).BR(H,3/20)"), empty_state()),
                  InvalidState);
  CHECK_THROWS_AS(
      apply(Combinator::slac(q(1, 2), parse_sentence("E"), parse_sentence("H")),
            CredalState::point(Signature({"E", "H"}), 3)),
      InvalidState);
}

TEST_CASE("likelihood-install combinators agree with the strict forms") {
  CredalState P = taxi();
  Sentence E = parse_sentence("E"), H = parse_sentence("H");
  CHECK(apply(Combinator::slac(q(1, 2), E, H), P) == slac(P, q(1, 2), E, H));
  CHECK(apply(Combinator::dlac(q(2, 3), q(1, 3), E, H), P) == dlac(P, q(2, 3), q(1, 3), E, H));
  CHECK(apply(Combinator::jc(q(3, 4), E), P) == jeffrey(P, q(3, 4), E));
  CHECK_THROWS_AS(apply(Combinator::slac(q(1, 2), parse_sentence("X"), H), P), UnknownAtom);
}
