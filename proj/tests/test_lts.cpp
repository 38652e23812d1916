#include "credal/lts.hpp"

#include <algorithm>

#include "doctest.h"

using namespace credal;

namespace {

Rational q(long long n, long long d) { return Rational(n, d); }

CredalState taxi() {
  return CredalState(Signature({"E", "H"}), {q(68, 100), q(17, 100), q(3, 100), q(12, 100)});
}

Sentence E() { return parse_sentence("E"); }
Sentence H() { return parse_sentence("H"); }

}  // namespace

TEST_CASE("labels render with their parameters") {
  CHECK(TransitionLabel::bc(E(), q(29, 100)).str() == "[BC,E,29/100]");
  CHECK(TransitionLabel::bc(E(), q(29, 100), true).str() == "[BC,E,29/100,PK]");
  CHECK(TransitionLabel::bc(parse_sentence("!H"), q(1, 2)).str() == "[BC,!H,1/2,NP]");
  CHECK(TransitionLabel::jc(q(1, 3), H()).str() == "[JC,1/3,H]");
  CHECK(TransitionLabel::slac(q(4, 5), E(), H()).str() == "[SLAC,4/5,E,H]");
  CHECK(TransitionLabel::dlac(q(4, 5), q(1, 5), E(), H()).str() == "[DLAC,4/5,1/5,E,H]");
  CHECK(TransitionLabel::pse("M", ExpansionMode::Half).str() == "[PSE,M,1/2]");
  CHECK(TransitionLabel::psr("M").str() == "[PSR,M]");
}

TEST_CASE("label identity ignores the source-derived annotation") {
  // Two BC labels over the same condition match regardless of the recorded
  // prior probability; it is read off the source, not part of the move.
  CHECK(TransitionLabel::bc(E(), q(29, 100)).matches(TransitionLabel::bc(E(), q(1, 2))));
  CHECK(!TransitionLabel::bc(E(), q(1, 2)).matches(TransitionLabel::bc(E(), q(1, 2), true)));
  CHECK(!TransitionLabel::bc(E(), q(1, 2)).matches(TransitionLabel::bc(H(), q(1, 2))));
  // Free parameters are part of the identity everywhere else.
  CHECK(!TransitionLabel::jc(q(1, 3), H()).matches(TransitionLabel::jc(q(2, 3), H())));
  CHECK(TransitionLabel::jc(q(1, 3), H()).matches(TransitionLabel::jc(q(1, 3), H())));
  CHECK(!TransitionLabel::slac(q(4, 5), E(), H()).matches(
      TransitionLabel::slac(q(4, 5), E(), parse_sentence("!H"))));
  CHECK(!TransitionLabel::jc(q(1, 3), H()).matches(TransitionLabel::psr("H")));
}

TEST_CASE("steps check their guards") {
  CredalState P = taxi();
  TransitionLabel ok = TransitionLabel::bc(E(), q(29, 100));
  CHECK(admits(P, ok));
  CHECK(step(P, ok) == bayes(P, E()));
  // A BC label whose annotation disagrees with the source prior is refused.
  TransitionLabel wrong = TransitionLabel::bc(E(), q(1, 2));
  CHECK(!admits(P, wrong));
  CHECK_THROWS_AS(step(P, wrong), GuardFailed);
  // Kinetics variant consumes the atom.
  CredalState K = step(P, TransitionLabel::bc(E(), q(29, 100), true));
  CHECK(K.signature() == Signature({"H"}));
  CHECK(K.prob(H()) == q(12, 29));
  CHECK(!admits(P, TransitionLabel::bc(parse_sentence("E & H"), q(12, 100), true)));
}

TEST_CASE("jeffrey and install labels respect support guards") {
  CredalState Z(Signature({"E", "H"}), {q(17, 20), Rational(0), q(3, 20), Rational(0)});
  CHECK(!admits(Z, TransitionLabel::jc(q(1, 2), E())));
  CHECK(admits(Z, TransitionLabel::jc(Rational(0), E())));
  CHECK(step(Z, TransitionLabel::jc(Rational(0), E())) == Z);
  CHECK(!admits(Z, TransitionLabel::slac(q(1, 2), E(), H())));
  CHECK(admits(taxi(), TransitionLabel::dlac(q(1, 2), q(1, 2), E(), H())));
  CHECK(!admits(Z, TransitionLabel::dlac(q(1, 2), q(1, 2), E(), H())));
  // Expansion/reduction are total: a present/absent atom gives a self-loop.
  CHECK(step(taxi(), TransitionLabel::pse("E", ExpansionMode::One)) == taxi());
  CHECK(step(taxi(), TransitionLabel::psr("X")) == taxi());
  CHECK(step(taxi(), TransitionLabel::psr("E")) == reduce(taxi(), "E"));
}

TEST_CASE("schemas read the conditioning annotation off the source") {
  LabelSchema bc_schema{TransitionLabel::bc(E(), Rational())};
  auto label = instantiate(bc_schema, taxi());
  REQUIRE(label.has_value());
  CHECK(label->p == q(29, 100));
  CHECK(step(taxi(), *label) == bayes(taxi(), E()));
  // Inadmissible moves instantiate to nothing.
  CredalState Z(Signature({"E", "H"}), {q(17, 20), Rational(0), q(3, 20), Rational(0)});
  CHECK(!instantiate(bc_schema, Z).has_value());
  CHECK(!instantiate(LabelSchema{TransitionLabel::bc(parse_sentence("X"), Rational())}, taxi())
             .has_value());
  CHECK(!instantiate(LabelSchema{TransitionLabel::slac(q(1, 2), E(), H())}, Z).has_value());
}

TEST_CASE("combinator terms convert to label schemas") {
  auto schemas = schemas_from_combinator(parse_combinator("BC(E).SLAC(4/5,E,H)"));
  REQUIRE(schemas.size() == 2);
  // Factors arrive in application order: the install first, then BC.
  CHECK(schemas[0].proto.kind == TransitionLabel::Kind::SLAC);
  CHECK(schemas[1].proto.kind == TransitionLabel::Kind::BC);
  CHECK_THROWS_AS(schemas_from_combinator(Combinator::id()), ParseError);
  CHECK_THROWS_AS(schemas_from_combinator(Combinator::br("X", q(1, 3))), ParseError);
}

TEST_CASE("fragment generation deduplicates and marks the frontier") {
  auto schemas = schemas_from_combinator(parse_combinator("BC(E)"));
  // Depth 0: seeds only, nothing expanded.
  Fragment f0 = generate_fragment({taxi()}, schemas, 0);
  CHECK(f0.states.size() == 1);
  CHECK(f0.edges.empty());
  CHECK(!f0.closed());
  CHECK(f0.str().find(" * ") != std::string::npos);
  // Depth 2: the posterior is a BC fixed point, so the system closes with a
  // self-loop instead of growing.
  Fragment f = generate_fragment({taxi()}, schemas, 2);
  CHECK(f.states.size() == 2);
  REQUIRE(f.edges.size() == 2);
  CHECK(f.edges[0].src == 0);
  CHECK(f.edges[0].dst == 1);
  CHECK(f.edges[1].src == 1);
  CHECK(f.edges[1].dst == 1);
  CHECK(f.closed());
  // Duplicate seeds intern to one state.
  Fragment d = generate_fragment({taxi(), taxi()}, schemas, 1);
  CHECK(d.states.size() == 2);
}

TEST_CASE("fragment generation respects its state budget") {
  auto schemas = schemas_from_combinator(parse_combinator("BC(E)"));
  CHECK_THROWS_AS(generate_fragment({taxi()}, schemas, 2, 1), BudgetExceeded);
}

TEST_CASE("identity and compatibility relations pass on a converging system") {
  // Two priors that agree after the same reweighting: last-wins makes the
  // fragment close on a shared fixed point.
  CredalState A(Signature({"H"}), {q(1, 2), q(1, 2)});
  CredalState B(Signature({"H"}), {q(1, 3), q(2, 3)});
  auto schemas = schemas_from_combinator(parse_combinator("JC(1/4,H)"));
  Fragment f = generate_fragment({A, B}, schemas, 2);
  REQUIRE(f.states.size() == 3);
  CHECK(f.closed());
  CHECK(is_bisimulation(f, identity_relation(f)).ok);
  Relation rmax = max_compatibility(f);
  CHECK(rmax.size() == 9);  // all three states share full support over {H}
  CHECK(is_bisimulation(f, rmax).ok);
}

TEST_CASE("an incompatible pair fails the transfer clause with a witness") {
  CredalState certain(Signature({"H"}), {Rational(0), Rational(1)});
  CredalState uncertain(Signature({"H"}), {q(1, 2), q(1, 2)});
  auto schemas = schemas_from_combinator(parse_combinator("BC(!H)"));
  Fragment f = generate_fragment({certain, uncertain}, schemas, 1);
  REQUIRE(f.states.size() == 3);  // certain, uncertain, and the all-!H point
  Relation r = identity_relation(f);
  r.insert({0, 1});
  r.insert({1, 0});
  BisimReport rep = is_bisimulation(f, r);
  CHECK(!rep.ok);
  REQUIRE(rep.counterexample.has_value());
  auto [x, y, label] = *rep.counterexample;
  CHECK(x == 1);
  CHECK(y == 0);
  CHECK(label.kind == TransitionLabel::Kind::BC);
  // And the maximal candidate never proposed the pair to begin with.
  CHECK(!max_compatibility(f).count({0, 1}));
}

TEST_CASE("relation sanity failures are reported before transfer") {
  CredalState A(Signature({"H"}), {q(1, 2), q(1, 2)});
  CredalState B(Signature({"E"}), {q(1, 2), q(1, 2)});
  Fragment f = generate_fragment({A, B}, {}, 1);
  Relation bad = identity_relation(f);
  bad.insert({0, 1});
  bad.insert({1, 0});
  CHECK(is_bisimulation(f, bad).reason.find("different signatures") != std::string::npos);
  Relation asym = identity_relation(f);
  asym.insert({0, 1});
  CHECK(!is_bisimulation(f, asym).ok);
  Relation missing;
  CHECK(is_bisimulation(f, missing).reason.find("reflexive") != std::string::npos);
}

TEST_CASE("the search enumerates every intermediate bisimulation") {
  CredalState A(Signature({"H"}), {q(1, 2), q(1, 2)});
  CredalState B(Signature({"H"}), {q(1, 3), q(2, 3)});
  auto schemas = schemas_from_combinator(parse_combinator("JC(1/4,H)"));
  Fragment f = generate_fragment({A, B}, schemas, 2);
  auto found = search_intermediate_bisimulations(f);
  // Three mutually compatible states admit four partitions above the
  // identity; on this converging system every one is a bisimulation.
  CHECK(found.size() == 4);
  std::size_t maximal = 0;
  for (const auto& fb : found) {
    CHECK(is_bisimulation(f, fb.rel).ok);
    if (fb.is_max) {
      ++maximal;
      CHECK(fb.rel == max_compatibility(f));
    }
  }
  CHECK(maximal == 1);
  CHECK_THROWS_AS(search_intermediate_bisimulations(f, 2), BudgetExceeded);
}

TEST_CASE("rigid conditioning admits no intermediate bisimulation") {
  // Conditioning the uniform prior on E and on H gives four states with four
  // different supports, so every compatibility class is a singleton and
  // nothing can lie strictly between identity and maximal compatibility.
  CredalState A = CredalState::uniform(Signature({"E", "H"}));
  auto schemas = schemas_from_combinator(parse_combinator("BC(E).BC(H)"));
  Fragment f = generate_fragment({A}, schemas, 2);
  REQUIRE(f.states.size() == 4);
  CHECK(max_compatibility(f) == identity_relation(f));
  auto found = search_intermediate_bisimulations(f);
  CHECK(found.empty());
}

TEST_CASE("pairing two conditioned states survives the annotation-free match") {
  // Distinct priors conditioned on the same evidence loop under BC(E); since
  // the annotation is not part of the label identity, pairing the two loops
  // is a genuine bisimulation (here the maximal compatibility itself).
  CredalState A(Signature({"E", "H"}), {Rational(0), q(1, 2), Rational(0), q(1, 2)});
  CredalState B(Signature({"E", "H"}), {Rational(0), q(17, 29), Rational(0), q(12, 29)});
  auto schemas = schemas_from_combinator(parse_combinator("BC(E)"));
  Fragment f = generate_fragment({A, B}, schemas, 2);
  REQUIRE(f.states.size() == 2);
  CHECK(f.closed());
  Relation r = identity_relation(f);
  r.insert({0, 1});
  r.insert({1, 0});
  CHECK(r == max_compatibility(f));
  CHECK(is_bisimulation(f, r).ok);
}
