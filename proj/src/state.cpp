#include "credal/state.hpp"

namespace credal {

CredalState::CredalState(Signature sig, std::vector<Rational> mass)
    : sig_(std::move(sig)), mass_(std::move(mass)) {
  if (mass_.size() != sig_.minterms())
    throw InvalidState("mass vector has " + std::to_string(mass_.size()) + " entries, signature " +
                       sig_.str() + " needs " + std::to_string(sig_.minterms()));
  Rational total;
  for (const auto& m : mass_) {
    if (sign(m) < 0) throw InvalidState("negative minterm mass " + m.str());
    total += m;
  }
  if (!(total == Rational(1)))
    throw InvalidState("minterm masses sum to " + total.str() + ", not 1");
}

CredalState CredalState::uniform(Signature sig) {
  std::size_t n = sig.minterms();
  std::vector<Rational> mass(n, Rational(1, static_cast<long long>(n)));
  return CredalState(std::move(sig), std::move(mass));
}

CredalState CredalState::point(Signature sig, std::size_t minterm) {
  std::vector<Rational> mass(sig.minterms());
  mass.at(minterm) = Rational(1);
  return CredalState(std::move(sig), std::move(mass));
}

Rational CredalState::prob(const Sentence& s) const {
  Rational total;
  for (std::size_t i = 0; i < mass_.size(); ++i)
    if (evaluate(s, sig_, i)) total += mass_[i];
  return total;
}

std::string CredalState::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < sig_.size(); ++i) {
    if (i) out += ",";
    out += sig_.atoms()[i];
  }
  out += " | ";
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    if (i) out += ", ";
    out += mass_[i].str();
  }
  return out + "}";
}

std::optional<Rational> cond_prob(const CredalState& P, CondVariant v, const Sentence& x,
                                  const Sentence& y) {
  Rational joint = P.prob(Sentence::conj(x, y));
  Rational py = P.prob(y);
  switch (v) {
    case CondVariant::Zero:
      return joint / py;
    case CondVariant::One:
      return (joint - py) / py + Rational(1);
    case CondVariant::Safe: {
      Rational px = P.prob(x);
      return (joint - py * px) / py + px;
    }
    case CondVariant::Kolmogorov:
      if (py.is_zero()) return std::nullopt;
      return joint / py;
  }
  throw Error("unreachable cond variant");
}

Rational cond_prob0(const CredalState& P, const Sentence& x, const Sentence& y) {
  return *cond_prob(P, CondVariant::Zero, x, y);
}
Rational cond_prob1(const CredalState& P, const Sentence& x, const Sentence& y) {
  return *cond_prob(P, CondVariant::One, x, y);
}
Rational cond_prob_safe(const CredalState& P, const Sentence& x, const Sentence& y) {
  return *cond_prob(P, CondVariant::Safe, x, y);
}

Rational likelihood(const CredalState& P, const Sentence& e, const Sentence& h) {
  return cond_prob0(P, e, h);
}

Rational likelihood_ratio(const CredalState& P, const Sentence& e, const Sentence& h) {
  return likelihood(P, e, h) / likelihood(P, e, Sentence::negate(h));
}

bool compatible(const CredalState& P, const CredalState& Q) {
  if (!(P.signature() == Q.signature()))
    throw SignatureMismatch("compatibility needs equal signatures, got " + P.signature().str() +
                            " vs " + Q.signature().str());
  for (std::size_t i = 0; i < P.minterm_count(); ++i)
    if (P.mass(i).is_zero() != Q.mass(i).is_zero()) return false;
  return true;
}

}  // namespace credal
