#pragma once

#include <vector>

#include "credal/state.hpp"

namespace credal {

// Revision operations on credal states.  These are the *strict* forms: each
// checks its positivity preconditions (throwing ZeroCondition when a region
// that must carry mass does not) and returns a valid probability function.
// The total combinator forms built on the safe conditional live in
// combinator.hpp.

// Bayes conditioning on `phi` (prob(phi) must be positive).  With
// `kinetics` the condition must be a single atom, which is removed from the
// signature afterwards (proposition kinetics); conditioning on compound
// sentences is allowed only without kinetics.
CredalState bayes(const CredalState& P, const Sentence& phi, bool kinetics = false);

// Jeffrey conditioning: posterior = p*P0(.|m) + (1-p)*P0(.|!m).
// Needs prob(m) > 0 when p > 0 and prob(!m) > 0 when p < 1.
CredalState jeffrey(const CredalState& P, const Rational& p, const Sentence& m);

// Single-likelihood Adams conditioning: install P0(e|h) = l while keeping
// prob(h) and the conditional distribution outside h fixed.
CredalState slac(const CredalState& P, const Rational& l, const Sentence& e, const Sentence& h);

// Double-likelihood Adams conditioning: install P0(e|h) = l and
// P0(e|!h) = l2 simultaneously; prob(h) is preserved.
CredalState dlac(const CredalState& P, const Rational& l, const Rational& l2, const Sentence& e,
                 const Sentence& h);

enum class ExpansionMode { One, Zero, Half };

// Proposition-space expansion by a fresh atom whose conditional probability
// given each old minterm is 1, 0 or 1/2.
CredalState expand(const CredalState& P, const std::string& atom, ExpansionMode mode);

// Parametrized expansion: q[i] is the conditional probability of the new
// atom given old minterm i.  Probabilities of old sentences are preserved.
CredalState expand_parametrized(const CredalState& P, const std::string& atom,
                                const std::vector<Rational>& q);

// Proposition-space reduction: marginalize `atom` out.
CredalState reduce(const CredalState& P, const std::string& atom);

// Base-rate inclusion: adjoin atom `name` independently of everything else
// with probability `p` (Q(name & phi) = p * Q(phi) for old phi).
CredalState base_rate(const CredalState& P, const std::string& name, const Rational& p);

}  // namespace credal
