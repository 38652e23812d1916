#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "credal/conditioning.hpp"

namespace credal {

// Revision combinators: a small term language over belief-state
// transformations, closed under composition.  Unlike the strict operations
// in conditioning.hpp these are *total* on their probability parameters:
// conditioning uses the safe conditional (so BC on a zero-probability
// sentence leaves the state unchanged), PSE/PSR/BR degrade to the identity
// when the atom is already present / absent, and BC on a sentence whose
// atoms are partly missing first expands them with probability 1 and
// reduces them away afterwards.
//
// Composition is written with '.', the LEFT factor applying LAST:
// "BC(E).PSE(E,1)" first expands by E, then conditions on it.
//
// A composed term may pass through sub-normalized mass functions (e.g. a
// DLAC step right after PSE(E,1)); only the final result of apply() must be
// a probability function again, otherwise InvalidState is thrown.
class Combinator {
 public:
  enum class Kind { Id, BC, PSE, PSR, JC, Slac, Dlac, BR, Compose };

  static Combinator id();
  static Combinator bc(Sentence phi);
  static Combinator pse(std::string atom, ExpansionMode mode);
  static Combinator psr(std::string atom);
  static Combinator jc(Rational p, Sentence m);
  static Combinator slac(Rational l, Sentence e, Sentence h);
  static Combinator dlac(Rational l, Rational l2, Sentence e, Sentence h);
  static Combinator br(std::string atom, Rational p);
  // after ∘ before (before applies first).
  static Combinator compose(Combinator after, Combinator before);

  Kind kind() const { return node_->kind; }
  const Sentence& phi() const { return node_->phi; }
  const Sentence& hyp() const { return node_->hyp; }
  const std::string& atom() const { return node_->atom; }
  const Rational& p() const { return node_->p; }
  const Rational& p2() const { return node_->p2; }
  ExpansionMode mode() const { return node_->mode; }
  // For Compose: factors in application order (first-applied first).
  const std::vector<Combinator>& factors() const { return node_->factors; }

  std::string str() const;

 private:
  struct Node {
    Kind kind = Kind::Id;
    Sentence phi, hyp;
    std::string atom;
    Rational p, p2;
    ExpansionMode mode = ExpansionMode::One;
    std::vector<Combinator> factors;
  };
  std::shared_ptr<const Node> node_;
  explicit Combinator(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
};

CredalState apply(const Combinator& c, const CredalState& P);

// Grammar: term ('.' term)* where term is one of
//   Id | BC(s) | PSE(a,1|0|1/2) | PSR(a) | JC(r,s) | SLAC(r,s,s)
//      | DLAC(r,r,s,s) | BR(a,r)
// with s a sentence, a an atom and r a rational literal.
Combinator parse_combinator(std::string_view text);

}  // namespace credal
