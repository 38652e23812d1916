#pragma once

#include <optional>
#include <string>
#include <vector>

#include "credal/meadow.hpp"
#include "credal/sentence.hpp"

namespace credal {

// A credal state: a proposition space given by its generators plus an exact
// probability mass for every minterm.  Mass vectors are validated on
// construction (nonnegative, summing to exactly 1).
class CredalState {
 public:
  CredalState(Signature sig, std::vector<Rational> mass);

  static CredalState uniform(Signature sig);
  static CredalState point(Signature sig, std::size_t minterm);

  const Signature& signature() const { return sig_; }
  std::size_t minterm_count() const { return mass_.size(); }
  const Rational& mass(std::size_t i) const { return mass_[i]; }
  const std::vector<Rational>& masses() const { return mass_; }

  Rational prob(const Sentence& s) const;

  bool operator==(const CredalState& other) const {
    return sig_ == other.sig_ && mass_ == other.mass_;
  }

  std::string str() const;  // "{E,H | 17/25, 17/100, 3/100, 3/25}"

 private:
  Signature sig_;
  std::vector<Rational> mass_;
};

// The four conditional-probability variants.  They agree whenever the
// condition has nonzero probability and differ only in the fallback:
//   Zero       -> 0
//   One        -> 1
//   Safe       -> P(x)   (so Safe(.|y) is itself a probability function)
//   Kolmogorov -> undefined (empty optional)
enum class CondVariant { Zero, One, Safe, Kolmogorov };

std::optional<Rational> cond_prob(const CredalState& P, CondVariant v, const Sentence& x,
                                  const Sentence& y);

// Conveniences for the three total variants.
Rational cond_prob0(const CredalState& P, const Sentence& x, const Sentence& y);
Rational cond_prob1(const CredalState& P, const Sentence& x, const Sentence& y);
Rational cond_prob_safe(const CredalState& P, const Sentence& x, const Sentence& y);

// L(E|H) = P0(E|H), and the likelihood ratio L(E|H) / L(E|!H) under total
// division (ratio 0 when the denominator likelihood is 0).
Rational likelihood(const CredalState& P, const Sentence& e, const Sentence& h);
Rational likelihood_ratio(const CredalState& P, const Sentence& e, const Sentence& h);

// Two states over the same signature are compatible when they have the same
// zero-mass minterms — equivalently, the same sentences of probability 1.
// Throws SignatureMismatch when the signatures differ.
bool compatible(const CredalState& P, const CredalState& Q);

}  // namespace credal
