#include "credal/state.hpp"

#include "doctest.h"

using credal::compatible;
using credal::cond_prob;
using credal::cond_prob0;
using credal::cond_prob1;
using credal::cond_prob_safe;
using credal::CondVariant;
using credal::CredalState;
using credal::likelihood;
using credal::likelihood_ratio;
using credal::parse_sentence;
using credal::Rational;
using credal::Sentence;
using credal::Signature;

namespace {

Rational q(long long n, long long d) { return Rational(n, d); }

// Minterm order over {E,H}: !E!H, E!H, !EH, EH.
CredalState taxi() {
  return CredalState(Signature({"E", "H"}), {q(68, 100), q(17, 100), q(3, 100), q(12, 100)});
}

}  // namespace

TEST_CASE("construction validates the mass vector") {
  Signature sig({"E", "H"});
  CHECK_THROWS_AS(CredalState(sig, {q(1, 2), q(1, 2)}), credal::InvalidState);
  CHECK_THROWS_AS(CredalState(sig, {q(1, 2), q(1, 2), q(1, 2), q(-1, 2)}),
                  credal::InvalidState);
  CHECK_THROWS_AS(CredalState(sig, {q(1, 2), q(1, 2), q(1, 2), q(1, 2)}),
                  credal::InvalidState);
  CHECK_NOTHROW(CredalState(Signature{}, {Rational(1)}));
}

TEST_CASE("uniform and point states") {
  CredalState u = CredalState::uniform(Signature({"E", "H"}));
  for (std::size_t i = 0; i < 4; ++i) CHECK(u.mass(i) == q(1, 4));
  CredalState p = CredalState::point(Signature({"E", "H"}), 3);
  CHECK(p.prob(parse_sentence("E & H")) == Rational(1));
  CHECK(p.prob(parse_sentence("!E")) == Rational(0));
}

TEST_CASE("probabilities of compound sentences") {
  CredalState P = taxi();
  CHECK(P.prob(parse_sentence("E")) == q(29, 100));
  CHECK(P.prob(parse_sentence("H")) == q(3, 20));
  CHECK(P.prob(parse_sentence("E & H")) == q(12, 100));
  CHECK(P.prob(parse_sentence("E | H")) == q(32, 100));
  CHECK(P.prob(parse_sentence("E -> H")) == q(83, 100));
  CHECK(P.prob(Sentence::top()) == Rational(1));
  CHECK(P.prob(Sentence::bottom()) == Rational(0));
  CHECK_THROWS_AS(P.prob(parse_sentence("Z")), credal::UnknownAtom);
}

TEST_CASE("conditional variants agree on positive conditions") {
  CredalState P = taxi();
  Sentence H = parse_sentence("H");
  Sentence E = parse_sentence("E");
  Rational want = q(12, 29);
  CHECK(cond_prob0(P, H, E) == want);
  CHECK(cond_prob1(P, H, E) == want);
  CHECK(cond_prob_safe(P, H, E) == want);
  auto k = cond_prob(P, CondVariant::Kolmogorov, H, E);
  REQUIRE(k.has_value());
  CHECK(*k == want);
}

TEST_CASE("conditional variants split on zero conditions") {
  CredalState P = taxi();
  Sentence H = parse_sentence("H");
  Sentence never = parse_sentence("F");
  CHECK(cond_prob0(P, H, never) == Rational(0));
  CHECK(cond_prob1(P, H, never) == Rational(1));
  CHECK(cond_prob_safe(P, H, never) == P.prob(H));
  CHECK(!cond_prob(P, CondVariant::Kolmogorov, H, never).has_value());
}

TEST_CASE("likelihoods and their ratio") {
  CredalState P = taxi();
  Sentence E = parse_sentence("E");
  Sentence H = parse_sentence("H");
  CHECK(likelihood(P, E, H) == q(4, 5));
  CHECK(likelihood(P, E, parse_sentence("!H")) == q(1, 5));
  CHECK(likelihood_ratio(P, E, H) == Rational(4));
  // Total division: a vanishing alternative likelihood gives ratio 0.
  CredalState Z(Signature({"E", "H"}), {q(1, 2), Rational(0), q(1, 4), q(1, 4)});
  CHECK(likelihood(Z, E, parse_sentence("!H")) == Rational(0));
  CHECK(likelihood_ratio(Z, E, H) == Rational(0));
}

TEST_CASE("compatibility is equality of zero-mass supports") {
  Signature sig({"E", "H"});
  CredalState a(sig, {q(1, 2), Rational(0), q(1, 4), q(1, 4)});
  CredalState b(sig, {q(1, 10), Rational(0), q(2, 10), q(7, 10)});
  CredalState c(sig, {q(1, 2), q(1, 4), Rational(0), q(1, 4)});
  CHECK(compatible(a, b));
  CHECK(!compatible(a, c));
  CHECK_THROWS_AS(compatible(a, CredalState(Signature({"E"}), {q(1, 2), q(1, 2)})),
                  credal::SignatureMismatch);
}

TEST_CASE("rendering lists the signature and the masses in order") {
  CHECK(taxi().str() == "{E,H | 17/25, 17/100, 3/100, 3/25}");
}
