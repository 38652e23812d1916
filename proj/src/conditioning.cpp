#include "credal/conditioning.hpp"

#include "mass_detail.hpp"

namespace credal {

namespace {

void require_over(const CredalState& P, const Sentence& s, const char* what) {
  Signature ssig = signature_of(s);
  if (!ssig.subset_of(P.signature()))
    throw UnknownAtom(std::string(what) + " " + s.str() + " mentions atoms outside " +
                      P.signature().str());
}

void require_unit_interval(const Rational& p, const char* name) {
  if (p < Rational(0) || p > Rational(1))
    throw ParameterOutOfRange(std::string(name) + " = " + p.str() + " outside [0,1]");
}

void require_half_open(const Rational& l, const char* name) {
  if (!(l > Rational(0)) || l > Rational(1))
    throw ParameterOutOfRange(std::string(name) + " = " + l.str() + " outside (0,1]");
}

}  // namespace

CredalState bayes(const CredalState& P, const Sentence& phi, bool kinetics) {
  require_over(P, phi, "condition");
  if (kinetics && !phi.is_atom())
    throw KineticsOnCompound("proposition kinetics needs an atomic condition, got " + phi.str());
  Rational pphi = P.prob(phi);
  if (pphi.is_zero())
    throw ZeroCondition("cannot condition on " + phi.str() + " with probability 0");
  std::vector<Rational> mass(P.minterm_count());
  for (std::size_t i = 0; i < P.minterm_count(); ++i)
    if (evaluate(phi, P.signature(), i)) mass[i] = P.mass(i) / pphi;
  CredalState out(P.signature(), std::move(mass));
  if (kinetics) return reduce(out, phi.atom_name());
  return out;
}

CredalState jeffrey(const CredalState& P, const Rational& p, const Sentence& m) {
  require_over(P, m, "condition");
  require_unit_interval(p, "jeffrey weight");
  Sentence notm = Sentence::negate(m);
  Rational pm = P.prob(m), pnm = P.prob(notm);
  if (!p.is_zero() && pm.is_zero())
    throw ZeroCondition("jeffrey target " + p.str() + " > 0 but prob(" + m.str() + ") = 0");
  if (!(p == Rational(1)) && pnm.is_zero())
    throw ZeroCondition("jeffrey target " + p.str() + " < 1 but prob(" + notm.str() + ") = 0");
  Rational q = Rational(1) - p;
  std::vector<Rational> mass(P.minterm_count());
  for (std::size_t i = 0; i < P.minterm_count(); ++i) {
    if (evaluate(m, P.signature(), i))
      mass[i] = p * (P.mass(i) / pm);
    else
      mass[i] = q * (P.mass(i) / pnm);
  }
  return CredalState(P.signature(), std::move(mass));
}

CredalState slac(const CredalState& P, const Rational& l, const Sentence& e, const Sentence& h) {
  require_over(P, e, "evidence");
  require_over(P, h, "hypothesis");
  require_half_open(l, "likelihood l");
  Sentence he = Sentence::conj(h, e);
  Sentence hne = Sentence::conj(h, Sentence::negate(e));
  Rational mhe = P.prob(he), mhne = P.prob(hne), mh = mhe + mhne;
  // A region multiplied by a zero coefficient may be empty; any other region
  // the operation rescales must carry mass.
  if (!l.is_zero() && mhe.is_zero())
    throw ZeroCondition("slac needs prob(" + he.str() + ") > 0 for l = " + l.str());
  if (!(l == Rational(1)) && mhne.is_zero())
    throw ZeroCondition("slac needs prob(" + hne.str() + ") > 0 for l = " + l.str());
  // Coefficients l / P0(e|h) and (1-l) / P0(!e|h); total division keeps the
  // zero-coefficient form harmless even when its denominator is zero.
  Rational ce = l / (mhe / mh);
  Rational cne = (Rational(1) - l) / (mhne / mh);
  std::vector<Rational> mass(P.minterm_count());
  for (std::size_t i = 0; i < P.minterm_count(); ++i) {
    bool inh = evaluate(h, P.signature(), i);
    if (!inh)
      mass[i] = P.mass(i);
    else if (evaluate(e, P.signature(), i))
      mass[i] = P.mass(i) * ce;
    else
      mass[i] = P.mass(i) * cne;
  }
  return CredalState(P.signature(), std::move(mass));
}

CredalState dlac(const CredalState& P, const Rational& l, const Rational& l2, const Sentence& e,
                 const Sentence& h) {
  require_over(P, e, "evidence");
  require_over(P, h, "hypothesis");
  require_half_open(l, "likelihood l");
  require_half_open(l2, "likelihood l2");
  Sentence nh = Sentence::negate(h), ne = Sentence::negate(e);
  Rational mhe = P.prob(Sentence::conj(h, e));
  Rational mhne = P.prob(Sentence::conj(h, ne));
  Rational mnhe = P.prob(Sentence::conj(nh, e));
  Rational mnhne = P.prob(Sentence::conj(nh, ne));
  Rational mh = mhe + mhne, mnh = mnhe + mnhne;
  auto need = [&](const Rational& coeff, const Rational& region, const char* which) {
    if (!coeff.is_zero() && region.is_zero())
      throw ZeroCondition(std::string("dlac needs positive mass on ") + which);
  };
  need(l, mhe, "h & e");
  need(Rational(1) - l, mhne, "h & !e");
  need(l2, mnhe, "!h & e");
  need(Rational(1) - l2, mnhne, "!h & !e");
  Rational che = l / (mhe / mh);
  Rational chne = (Rational(1) - l) / (mhne / mh);
  Rational cnhe = l2 / (mnhe / mnh);
  Rational cnhne = (Rational(1) - l2) / (mnhne / mnh);
  std::vector<Rational> mass(P.minterm_count());
  for (std::size_t i = 0; i < P.minterm_count(); ++i) {
    bool inh = evaluate(h, P.signature(), i);
    bool ine = evaluate(e, P.signature(), i);
    const Rational& c = inh ? (ine ? che : chne) : (ine ? cnhe : cnhne);
    mass[i] = P.mass(i) * c;
  }
  return CredalState(P.signature(), std::move(mass));
}

CredalState expand(const CredalState& P, const std::string& atom, ExpansionMode mode) {
  Rational q;
  switch (mode) {
    case ExpansionMode::One: q = Rational(1); break;
    case ExpansionMode::Zero: q = Rational(0); break;
    case ExpansionMode::Half: q = Rational(1, 2); break;
  }
  return expand_parametrized(P, atom, std::vector<Rational>(P.minterm_count(), q));
}

CredalState expand_parametrized(const CredalState& P, const std::string& atom,
                                const std::vector<Rational>& q) {
  if (q.size() != P.minterm_count())
    throw ParameterOutOfRange("expansion parameter vector has " + std::to_string(q.size()) +
                              " entries, need " + std::to_string(P.minterm_count()));
  for (const auto& qi : q) require_unit_interval(qi, "expansion parameter");
  Signature nsig = P.signature().with(atom);  // throws AtomAlreadyPresent
  std::size_t bit = nsig.index_of(atom);
  std::vector<Rational> mass(nsig.minterms());
  for (std::size_t i = 0; i < P.minterm_count(); ++i) {
    // Old minterm i splits into the two new minterms that agree with i on
    // every old atom; the new atom's bit is spliced in at `bit`.
    std::size_t base = detail::splice_zero(i, bit);
    mass[base] = P.mass(i) * (Rational(1) - q[i]);
    mass[base | (std::size_t{1} << bit)] = P.mass(i) * q[i];
  }
  return CredalState(std::move(nsig), std::move(mass));
}

CredalState reduce(const CredalState& P, const std::string& atom) {
  std::size_t bit = P.signature().index_of(atom);  // throws UnknownAtom
  Signature nsig = P.signature().without(atom);
  std::vector<Rational> mass(nsig.minterms());
  for (std::size_t i = 0; i < nsig.minterms(); ++i) {
    std::size_t base = detail::splice_zero(i, bit);
    mass[i] = P.mass(base) + P.mass(base | (std::size_t{1} << bit));
  }
  return CredalState(std::move(nsig), std::move(mass));
}

CredalState base_rate(const CredalState& P, const std::string& name, const Rational& p) {
  require_unit_interval(p, "base rate");
  return expand_parametrized(P, name, std::vector<Rational>(P.minterm_count(), p));
}

}  // namespace credal
