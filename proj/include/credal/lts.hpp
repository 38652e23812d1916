#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "credal/combinator.hpp"

namespace credal {

// A labeled transition between credal states.  BC labels carry the prior
// probability p of the condition as an annotation *derived from the source
// state* (the guard demands prob(source, phi) == p > 0); the other labels
// carry free parameters that are part of the label's identity.
struct TransitionLabel {
  enum class Kind { BC, JC, SLAC, DLAC, PSE, PSR };

  Kind kind = Kind::BC;
  Sentence phi;        // BC condition / JC target / SLAC-DLAC evidence / PSE-PSR atom
  Sentence hyp;        // SLAC/DLAC hypothesis
  Rational p;          // BC prior prob (derived) / JC weight / SLAC l / DLAC l
  Rational l2;         // DLAC second likelihood
  bool kinetics = false;        // BC with proposition kinetics
  ExpansionMode mode = ExpansionMode::One;  // PSE

  static TransitionLabel bc(Sentence phi, Rational p, bool kinetics = false);
  static TransitionLabel jc(Rational p, Sentence m);
  static TransitionLabel slac(Rational l, Sentence e, Sentence h);
  static TransitionLabel dlac(Rational l, Rational l2, Sentence e, Sentence h);
  static TransitionLabel pse(std::string atom, ExpansionMode mode);
  static TransitionLabel psr(std::string atom);

  // "[BC,E,29/100]", "[BC,E,29/100,PK]", "[BC,!H,1/2,NP]", "[JC,1/3,H]",
  // "[SLAC,4/5,E,H]", "[DLAC,4/5,1/5,E,H]", "[PSE,M,1/2]", "[PSR,M]".
  std::string str() const;

  // Label identity for the bisimulation transfer clause: kind, sentences,
  // flags and free parameters must agree; a BC label's p is source-derived
  // and deliberately not compared (two compatible states admit the same BC
  // moves while generally disagreeing on the prior probability).
  bool matches(const TransitionLabel& other) const;
};

// Applies the labelled transformation, checking the label's guard first
// (GuardFailed when the source state does not admit the move).
CredalState step(const CredalState& P, const TransitionLabel& label);

// True when the state admits the move (the instantiated guard holds).
bool admits(const CredalState& P, const TransitionLabel& label);

// A schema is a label with BC's p left open; instantiation reads the guard
// probability off the source state and rejects inadmissible moves.
struct LabelSchema {
  TransitionLabel proto;
};
std::optional<TransitionLabel> instantiate(const LabelSchema& schema, const CredalState& P);

// Converts a combinator term into the corresponding label schema(s); a
// composition yields one schema per factor.  Id/BR have no label form.
std::vector<LabelSchema> schemas_from_combinator(const Combinator& c);

// A finite, explicitly generated fragment of the transition system.
struct Fragment {
  struct Edge {
    std::size_t src;
    TransitionLabel label;
    std::size_t dst;
  };
  std::vector<CredalState> states;  // deduplicated, insertion order
  std::vector<Edge> edges;
  std::vector<bool> expanded;  // outgoing transitions fully generated?

  bool closed() const;  // every state expanded
  std::string str() const;
};

// Breadth-first generation from `seeds`, applying every admissible schema
// to every state for `depth` levels; throws BudgetExceeded past max_states.
Fragment generate_fragment(const std::vector<CredalState>& seeds,
                           const std::vector<LabelSchema>& schemas, std::size_t depth,
                           std::size_t max_states = 256);

using Relation = std::set<std::pair<std::size_t, std::size_t>>;

struct BisimReport {
  bool ok = false;
  std::string reason;  // failing clause, human-readable
  // (x, x', label): x moves by label, x' has no matching move into R.
  std::optional<std::tuple<std::size_t, std::size_t, TransitionLabel>> counterexample;
};

// Checks reflexivity, symmetry, transitivity, per-pair signature equality
// and the transfer clause, all restricted to the fragment.
BisimReport is_bisimulation(const Fragment& f, const Relation& r);

Relation identity_relation(const Fragment& f);

// All pairs of compatible states over equal signatures (the maximal
// candidate relation R^max).
Relation max_compatibility(const Fragment& f);

struct FoundBisimulation {
  Relation rel;
  bool is_max = false;  // equals R^max restricted to the fragment
};

// Enumerates all equivalence relations strictly above the identity and
// contained in R^max (blocks stay inside compatibility classes) and returns
// those passing is_bisimulation.  An empty result on a fragment where
// R^max != R^id is evidence toward full abstraction on that fragment.
// Bounded: throws BudgetExceeded for fragments over `max_states` states.
std::vector<FoundBisimulation> search_intermediate_bisimulations(const Fragment& f,
                                                                 std::size_t max_states = 12);

}  // namespace credal
