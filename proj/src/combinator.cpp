#include "credal/combinator.hpp"

#include <algorithm>
#include <cctype>

#include "mass_detail.hpp"

namespace credal {

namespace {

// Working representation during evaluation: a mass per minterm with no
// normalization requirement.
struct MassVec {
  Signature sig;
  std::vector<Rational> m;
};

MassVec from_state(const CredalState& P) { return {P.signature(), P.masses()}; }

Rational mprob(const MassVec& v, const Sentence& s) {
  Rational total;
  for (std::size_t i = 0; i < v.m.size(); ++i)
    if (evaluate(s, v.sig, i)) total += v.m[i];
  return total;
}

// Safe conditional of a mass function: m(.|phi) when m(phi) != 0, m itself
// otherwise (the minterm-level reading of the safe variant).
MassVec bc_core(const MassVec& v, const Sentence& phi) {
  Rational t = mprob(v, phi);
  if (t.is_zero()) return v;
  MassVec out{v.sig, std::vector<Rational>(v.m.size())};
  for (std::size_t i = 0; i < v.m.size(); ++i)
    if (evaluate(phi, v.sig, i)) out.m[i] = v.m[i] / t;
  return out;
}

MassVec jc_core(const MassVec& v, const Rational& p, const Sentence& m) {
  MassVec pos = bc_core(v, m);
  MassVec neg = bc_core(v, Sentence::negate(m));
  MassVec out{v.sig, std::vector<Rational>(v.m.size())};
  Rational q = Rational(1) - p;
  for (std::size_t i = 0; i < v.m.size(); ++i) out.m[i] = p * pos.m[i] + q * neg.m[i];
  return out;
}

// Safe conditional probability of e given h in a raw mass function:
// m(e & h)/m(h) when m(h) != 0, else m(e).
Rational safe_given(const MassVec& v, const Sentence& e, const Sentence& h) {
  Rational mh = mprob(v, h);
  if (mh.is_zero()) return mprob(v, e);
  return mprob(v, Sentence::conj(e, h)) / mh;
}

MassVec slac_core(const MassVec& v, const Rational& l, const Sentence& e, const Sentence& h) {
  Sentence ne = Sentence::negate(e);
  Rational ce = l / safe_given(v, e, h);
  Rational cne = (Rational(1) - l) / safe_given(v, ne, h);
  MassVec out{v.sig, v.m};
  for (std::size_t i = 0; i < v.m.size(); ++i) {
    if (!evaluate(h, v.sig, i)) continue;
    out.m[i] = v.m[i] * (evaluate(e, v.sig, i) ? ce : cne);
  }
  return out;
}

MassVec dlac_core(const MassVec& v, const Rational& l, const Rational& l2, const Sentence& e,
                  const Sentence& h) {
  Sentence ne = Sentence::negate(e), nh = Sentence::negate(h);
  Rational che = l / safe_given(v, e, h);
  Rational chne = (Rational(1) - l) / safe_given(v, ne, h);
  Rational cnhe = l2 / safe_given(v, e, nh);
  Rational cnhne = (Rational(1) - l2) / safe_given(v, ne, nh);
  MassVec out{v.sig, std::vector<Rational>(v.m.size())};
  for (std::size_t i = 0; i < v.m.size(); ++i) {
    bool inh = evaluate(h, v.sig, i);
    bool ine = evaluate(e, v.sig, i);
    const Rational& c = inh ? (ine ? che : chne) : (ine ? cnhe : cnhne);
    out.m[i] = v.m[i] * c;
  }
  return out;
}

MassVec pse_core(const MassVec& v, const std::string& atom, const Rational& q) {
  if (v.sig.contains(atom)) return v;  // expansion by a present atom: identity
  Signature nsig = v.sig.with(atom);
  std::size_t bit = nsig.index_of(atom);
  MassVec out{nsig, std::vector<Rational>(nsig.minterms())};
  for (std::size_t i = 0; i < v.m.size(); ++i) {
    std::size_t base = detail::splice_zero(i, bit);
    out.m[base] = v.m[i] * (Rational(1) - q);
    out.m[base | (std::size_t{1} << bit)] = v.m[i] * q;
  }
  return out;
}

MassVec psr_core(const MassVec& v, const std::string& atom) {
  if (!v.sig.contains(atom)) return v;  // reduction of an absent atom: identity
  std::size_t bit = v.sig.index_of(atom);
  Signature nsig = v.sig.without(atom);
  MassVec out{nsig, std::vector<Rational>(nsig.minterms())};
  for (std::size_t i = 0; i < out.m.size(); ++i) {
    std::size_t base = detail::splice_zero(i, bit);
    out.m[i] = v.m[base] + v.m[base | (std::size_t{1} << bit)];
  }
  return out;
}

Rational mode_value(ExpansionMode mode) {
  switch (mode) {
    case ExpansionMode::One: return Rational(1);
    case ExpansionMode::Zero: return Rational(0);
    case ExpansionMode::Half: return Rational(1, 2);
  }
  throw Error("unreachable expansion mode");
}

MassVec eval(const Combinator& c, MassVec v) {
  using K = Combinator::Kind;
  switch (c.kind()) {
    case K::Id:
      return v;
    case K::BC: {
      // Atoms of the condition that the space lacks are adjoined with
      // probability 1 and forgotten again afterwards.
      std::vector<std::string> missing;
      const Signature phi_sig = signature_of(c.phi());
      for (const auto& a : phi_sig.atoms())
        if (!v.sig.contains(a)) missing.push_back(a);
      for (const auto& a : missing) v = pse_core(v, a, Rational(1));
      v = bc_core(v, c.phi());
      for (auto it = missing.rbegin(); it != missing.rend(); ++it) v = psr_core(v, *it);
      return v;
    }
    case K::PSE:
      return pse_core(v, c.atom(), mode_value(c.mode()));
    case K::PSR:
      return psr_core(v, c.atom());
    case K::JC: {
      Signature msig = signature_of(c.phi());
      if (!msig.subset_of(v.sig)) {
        if (!c.phi().is_atom())
          throw UnknownAtom("JC on compound " + c.phi().str() + " outside " + v.sig.str());
        v = pse_core(v, c.phi().atom_name(), Rational(1, 2));
      }
      return jc_core(v, c.p(), c.phi());
    }
    case K::Slac:
      if (!signature_of(c.phi()).subset_of(v.sig) || !signature_of(c.hyp()).subset_of(v.sig))
        throw UnknownAtom("SLAC arguments mention atoms outside " + v.sig.str());
      return slac_core(v, c.p(), c.phi(), c.hyp());
    case K::Dlac:
      if (!signature_of(c.phi()).subset_of(v.sig) || !signature_of(c.hyp()).subset_of(v.sig))
        throw UnknownAtom("DLAC arguments mention atoms outside " + v.sig.str());
      return dlac_core(v, c.p(), c.p2(), c.phi(), c.hyp());
    case K::BR:
      if (v.sig.contains(c.atom())) return v;  // base rate already included
      return pse_core(v, c.atom(), c.p());
    case K::Compose:
      for (const auto& f : c.factors()) v = eval(f, std::move(v));
      return v;
  }
  throw Error("unreachable combinator kind");
}

}  // namespace

Combinator Combinator::id() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Id;
  return Combinator(std::move(n));
}
Combinator Combinator::bc(Sentence phi) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::BC;
  n->phi = std::move(phi);
  return Combinator(std::move(n));
}
Combinator Combinator::pse(std::string atom, ExpansionMode mode) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::PSE;
  n->atom = std::move(atom);
  n->mode = mode;
  return Combinator(std::move(n));
}
Combinator Combinator::psr(std::string atom) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::PSR;
  n->atom = std::move(atom);
  return Combinator(std::move(n));
}
Combinator Combinator::jc(Rational p, Sentence m) {
  if (p < Rational(0) || p > Rational(1))
    throw ParameterOutOfRange("JC weight " + p.str() + " outside [0,1]");
  auto n = std::make_shared<Node>();
  n->kind = Kind::JC;
  n->p = std::move(p);
  n->phi = std::move(m);
  return Combinator(std::move(n));
}
Combinator Combinator::slac(Rational l, Sentence e, Sentence h) {
  if (!(l > Rational(0)) || l > Rational(1))
    throw ParameterOutOfRange("SLAC likelihood " + l.str() + " outside (0,1]");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Slac;
  n->p = std::move(l);
  n->phi = std::move(e);
  n->hyp = std::move(h);
  return Combinator(std::move(n));
}
Combinator Combinator::dlac(Rational l, Rational l2, Sentence e, Sentence h) {
  for (const Rational* x : {&l, &l2})
    if (!(*x > Rational(0)) || *x > Rational(1))
      throw ParameterOutOfRange("DLAC likelihood " + x->str() + " outside (0,1]");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Dlac;
  n->p = std::move(l);
  n->p2 = std::move(l2);
  n->phi = std::move(e);
  n->hyp = std::move(h);
  return Combinator(std::move(n));
}
Combinator Combinator::br(std::string atom, Rational p) {
  if (p < Rational(0) || p > Rational(1))
    throw ParameterOutOfRange("base rate " + p.str() + " outside [0,1]");
  auto n = std::make_shared<Node>();
  n->kind = Kind::BR;
  n->atom = std::move(atom);
  n->p = std::move(p);
  return Combinator(std::move(n));
}
Combinator Combinator::compose(Combinator after, Combinator before) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Compose;
  // Flatten nested compositions; factors stored in application order.
  auto push = [&](const Combinator& c) {
    if (c.kind() == Kind::Compose)
      for (const auto& f : c.factors()) n->factors.push_back(f);
    else
      n->factors.push_back(c);
  };
  push(before);
  push(after);
  return Combinator(std::move(n));
}

CredalState apply(const Combinator& c, const CredalState& P) {
  MassVec out = eval(c, from_state(P));
  return CredalState(std::move(out.sig), std::move(out.m));
}

namespace {

std::string mode_str(ExpansionMode m) {
  switch (m) {
    case ExpansionMode::One: return "1";
    case ExpansionMode::Zero: return "0";
    case ExpansionMode::Half: return "1/2";
  }
  throw Error("unreachable expansion mode");
}

}  // namespace

std::string Combinator::str() const {
  switch (kind()) {
    case Kind::Id: return "Id";
    case Kind::BC: return "BC(" + phi().str() + ")";
    case Kind::PSE: return "PSE(" + atom() + "," + mode_str(mode()) + ")";
    case Kind::PSR: return "PSR(" + atom() + ")";
    case Kind::JC: return "JC(" + p().str() + "," + phi().str() + ")";
    case Kind::Slac: return "SLAC(" + p().str() + "," + phi().str() + "," + hyp().str() + ")";
    case Kind::Dlac:
      return "DLAC(" + p().str() + "," + p2().str() + "," + phi().str() + "," + hyp().str() + ")";
    case Kind::BR: return "BR(" + atom() + "," + p().str() + ")";
    case Kind::Compose: {
      std::string out;
      // factors() is application order; rendering is left-applies-last.
      for (auto it = factors().rbegin(); it != factors().rend(); ++it) {
        if (!out.empty()) out += ".";
        out += it->str();
      }
      return out;
    }
  }
  throw Error("unreachable combinator kind");
}

namespace {

// Splits `s` on `sep` at paren depth 0.
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string parse_atom_arg(const std::string& s) {
  Sentence a = parse_sentence(s);
  if (!a.is_atom()) throw ParseError("expected an atom, got '" + s + "'");
  return a.atom_name();
}

ExpansionMode parse_mode(const std::string& s) {
  Rational r = Rational::parse(s);
  if (r == Rational(1)) return ExpansionMode::One;
  if (r == Rational(0)) return ExpansionMode::Zero;
  if (r == Rational(1, 2)) return ExpansionMode::Half;
  throw ParseError("expansion mode must be 1, 0 or 1/2, got '" + s + "'");
}

Combinator parse_term(const std::string& term) {
  auto open = term.find('(');
  std::string head = trim(open == std::string::npos ? term : term.substr(0, open));
  std::vector<std::string> args;
  if (open != std::string::npos) {
    if (term.back() != ')') throw ParseError("missing ')' in combinator term '" + term + "'");
    std::string inner = term.substr(open + 1, term.size() - open - 2);
    for (auto& a : split_top(inner, ',')) args.push_back(trim(a));
  }
  auto want = [&](std::size_t n) {
    if (args.size() != n)
      throw ParseError(head + " takes " + std::to_string(n) + " argument(s), got " +
                       std::to_string(args.size()));
  };
  if (head == "Id") {
    want(0);
    return Combinator::id();
  }
  if (head == "BC") {
    want(1);
    return Combinator::bc(parse_sentence(args[0]));
  }
  if (head == "PSE") {
    want(2);
    return Combinator::pse(parse_atom_arg(args[0]), parse_mode(args[1]));
  }
  if (head == "PSR") {
    want(1);
    return Combinator::psr(parse_atom_arg(args[0]));
  }
  if (head == "JC") {
    want(2);
    return Combinator::jc(Rational::parse(args[0]), parse_sentence(args[1]));
  }
  if (head == "SLAC") {
    want(3);
    return Combinator::slac(Rational::parse(args[0]), parse_sentence(args[1]),
                            parse_sentence(args[2]));
  }
  if (head == "DLAC") {
    want(4);
    return Combinator::dlac(Rational::parse(args[0]), Rational::parse(args[1]),
                            parse_sentence(args[2]), parse_sentence(args[3]));
  }
  if (head == "BR") {
    want(2);
    return Combinator::br(parse_atom_arg(args[0]), Rational::parse(args[1]));
  }
  throw ParseError("unknown combinator '" + head + "'");
}

}  // namespace

Combinator parse_combinator(std::string_view text) {
  std::vector<std::string> terms = split_top(text, '.');
  if (terms.empty()) throw ParseError("empty combinator");
  // Leftmost term applies last: fold right-to-left.
  Combinator out = parse_term(trim(terms.back()));
  for (auto it = std::next(terms.rbegin()); it != terms.rend(); ++it)
    out = Combinator::compose(parse_term(trim(*it)), out);
  return out;
}

}  // namespace credal
