#include "credal/sentence.hpp"

#include <string>
#include <vector>

#include "doctest.h"

using credal::equivalent;
using credal::evaluate;
using credal::minterm_sentence;
using credal::parse_sentence;
using credal::Sentence;
using credal::Signature;
using credal::signature_of;

TEST_CASE("signatures sort their atoms and index minterms bitwise") {
  Signature sig({"H", "E", "X"});
  CHECK(sig.atoms() == std::vector<std::string>{"E", "H", "X"});
  CHECK(sig.size() == 3);
  CHECK(sig.minterms() == 8);
  CHECK(sig.contains("H"));
  CHECK(!sig.contains("h"));
  CHECK(sig.index_of("E") == 0);
  CHECK(sig.index_of("X") == 2);
  CHECK_THROWS_AS(sig.index_of("Y"), credal::UnknownAtom);
  CHECK(sig.str() == "{E,H,X}");
}

TEST_CASE("signature editing guards duplicates and absences") {
  Signature sig({"E", "H"});
  CHECK(sig.with("A").atoms() == std::vector<std::string>{"A", "E", "H"});
  CHECK(sig.without("E").atoms() == std::vector<std::string>{"H"});
  CHECK_THROWS_AS(sig.with("H"), credal::AtomAlreadyPresent);
  CHECK_THROWS_AS(sig.without("Z"), credal::AtomNotPresent);
  CHECK_THROWS_AS(Signature({"E", "E"}), credal::AtomAlreadyPresent);
  CHECK(Signature({"E"}).subset_of(sig));
  CHECK(!sig.subset_of(Signature({"E"})));
}

TEST_CASE("parser respects precedence and associativity") {
  Sentence s = parse_sentence("a | b & c");
  CHECK(s.same_tree(Sentence::disj(Sentence::atom("a"),
                                   Sentence::conj(Sentence::atom("b"), Sentence::atom("c")))));
  Sentence imp = parse_sentence("a -> b -> c");
  CHECK(imp.same_tree(Sentence::implies(
      Sentence::atom("a"), Sentence::implies(Sentence::atom("b"), Sentence::atom("c")))));
  CHECK(parse_sentence("!a & b").same_tree(
      Sentence::conj(Sentence::negate(Sentence::atom("a")), Sentence::atom("b"))));
  CHECK(parse_sentence("~(a | b)").same_tree(
      Sentence::negate(Sentence::disj(Sentence::atom("a"), Sentence::atom("b")))));
  CHECK(parse_sentence("T").same_tree(Sentence::top()));
  CHECK(parse_sentence("F").same_tree(Sentence::bottom()));
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_sentence(""), credal::ParseError);
  CHECK_THROWS_AS(parse_sentence("&"), credal::ParseError);
  CHECK_THROWS_AS(parse_sentence("a &"), credal::ParseError);
  CHECK_THROWS_AS(parse_sentence("(a"), credal::ParseError);
  CHECK_THROWS_AS(parse_sentence("a b"), credal::ParseError);
}

TEST_CASE("rendering round-trips through the parser") {
  for (const char* text : {"E & !H", "a | b & c", "a -> b -> c", "!(a | b)", "T", "F"}) {
    Sentence s = parse_sentence(text);
    CHECK(parse_sentence(s.str()).same_tree(s));
  }
}

TEST_CASE("evaluation follows the minterm bit convention") {
  Signature sig({"E", "H"});
  // Minterm 1: E true (bit 0), H false (bit 1).
  CHECK(evaluate(Sentence::atom("E"), sig, 1));
  CHECK(!evaluate(Sentence::atom("H"), sig, 1));
  CHECK(evaluate(parse_sentence("E & !H"), sig, 1));
  CHECK(evaluate(parse_sentence("E -> H"), sig, 3));
  CHECK(!evaluate(parse_sentence("E -> H"), sig, 1));
  CHECK(evaluate(Sentence::top(), sig, 0));
  CHECK(!evaluate(Sentence::bottom(), sig, 3));
}

TEST_CASE("semantic equivalence ignores syntax") {
  CHECK(equivalent(parse_sentence("a -> b"), parse_sentence("!a | b")));
  CHECK(equivalent(parse_sentence("!(a & b)"), parse_sentence("!a | !b")));
  CHECK(!equivalent(parse_sentence("a"), parse_sentence("b")));
  CHECK(equivalent(parse_sentence("a | !a"), Sentence::top()));
}

TEST_CASE("minterm sentences pick out exactly one minterm") {
  Signature sig({"E", "H"});
  for (std::size_t i = 0; i < sig.minterms(); ++i) {
    Sentence m = minterm_sentence(sig, i);
    for (std::size_t j = 0; j < sig.minterms(); ++j) {
      CHECK(evaluate(m, sig, j) == (i == j));
    }
  }
}

TEST_CASE("signature_of collects exactly the mentioned atoms") {
  CHECK(signature_of(parse_sentence("b & (a | b)")).atoms() ==
        std::vector<std::string>{"a", "b"});
  CHECK(signature_of(Sentence::top()).size() == 0);
}
