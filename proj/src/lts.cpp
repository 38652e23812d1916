#include "credal/lts.hpp"

#include <algorithm>
#include <map>

#include "credal/conditioning.hpp"

namespace credal {

TransitionLabel TransitionLabel::bc(Sentence phi, Rational p, bool kinetics) {
  TransitionLabel l;
  l.kind = Kind::BC;
  l.phi = std::move(phi);
  l.p = std::move(p);
  l.kinetics = kinetics;
  return l;
}
TransitionLabel TransitionLabel::jc(Rational p, Sentence m) {
  TransitionLabel l;
  l.kind = Kind::JC;
  l.p = std::move(p);
  l.phi = std::move(m);
  return l;
}
TransitionLabel TransitionLabel::slac(Rational lv, Sentence e, Sentence h) {
  TransitionLabel l;
  l.kind = Kind::SLAC;
  l.p = std::move(lv);
  l.phi = std::move(e);
  l.hyp = std::move(h);
  return l;
}
TransitionLabel TransitionLabel::dlac(Rational lv, Rational l2v, Sentence e, Sentence h) {
  TransitionLabel l;
  l.kind = Kind::DLAC;
  l.p = std::move(lv);
  l.l2 = std::move(l2v);
  l.phi = std::move(e);
  l.hyp = std::move(h);
  return l;
}
TransitionLabel TransitionLabel::pse(std::string atom, ExpansionMode mode) {
  TransitionLabel l;
  l.kind = Kind::PSE;
  l.phi = Sentence::atom(std::move(atom));
  l.mode = mode;
  return l;
}
TransitionLabel TransitionLabel::psr(std::string atom) {
  TransitionLabel l;
  l.kind = Kind::PSR;
  l.phi = Sentence::atom(std::move(atom));
  return l;
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

std::string TransitionLabel::str() const {
  switch (kind) {
    case Kind::BC: {
      std::string out = "[BC," + phi.str() + "," + p.str();
      if (kinetics)
        out += ",PK";
      else if (!phi.is_atom())
        out += ",NP";
      return out + "]";
    }
    case Kind::JC: return "[JC," + p.str() + "," + phi.str() + "]";
    case Kind::SLAC: return "[SLAC," + p.str() + "," + phi.str() + "," + hyp.str() + "]";
    case Kind::DLAC:
      return "[DLAC," + p.str() + "," + l2.str() + "," + phi.str() + "," + hyp.str() + "]";
    case Kind::PSE: return "[PSE," + phi.str() + "," + mode_str(mode) + "]";
    case Kind::PSR: return "[PSR," + phi.str() + "]";
  }
  throw Error("unreachable label kind");
}

bool TransitionLabel::matches(const TransitionLabel& other) const {
  if (kind != other.kind) return false;
  auto same_opt = [](const Sentence& a, const Sentence& b) {
    if (a.valid() != b.valid()) return false;
    return !a.valid() || a.same_tree(b);
  };
  if (!same_opt(phi, other.phi) || !same_opt(hyp, other.hyp)) return false;
  switch (kind) {
    case Kind::BC:
      return kinetics == other.kinetics;  // p is a source-derived annotation
    case Kind::JC:
    case Kind::SLAC:
      return p == other.p;
    case Kind::DLAC:
      return p == other.p && l2 == other.l2;
    case Kind::PSE:
      return mode == other.mode;
    case Kind::PSR:
      return true;
  }
  return false;
}

bool admits(const CredalState& P, const TransitionLabel& label) {
  using K = TransitionLabel::Kind;
  switch (label.kind) {
    case K::BC: {
      if (!signature_of(label.phi).subset_of(P.signature())) return false;
      Rational prior = P.prob(label.phi);
      return prior == label.p && !prior.is_zero() && !(label.kinetics && !label.phi.is_atom());
    }
    case K::JC: {
      if (!signature_of(label.phi).subset_of(P.signature())) return false;
      if (label.p < Rational(0) || label.p > Rational(1)) return false;
      if (!label.p.is_zero() && P.prob(label.phi).is_zero()) return false;
      if (!(label.p == Rational(1)) && P.prob(Sentence::negate(label.phi)).is_zero()) return false;
      return true;
    }
    case K::SLAC: {
      if (!signature_of(label.phi).subset_of(P.signature()) ||
          !signature_of(label.hyp).subset_of(P.signature()))
        return false;
      if (!(label.p > Rational(0)) || label.p > Rational(1)) return false;
      if (P.prob(Sentence::conj(label.hyp, label.phi)).is_zero()) return false;
      if (!(label.p == Rational(1)) &&
          P.prob(Sentence::conj(label.hyp, Sentence::negate(label.phi))).is_zero())
        return false;
      return true;
    }
    case K::DLAC: {
      if (!signature_of(label.phi).subset_of(P.signature()) ||
          !signature_of(label.hyp).subset_of(P.signature()))
        return false;
      for (const Rational* x : {&label.p, &label.l2})
        if (!(*x > Rational(0)) || *x > Rational(1)) return false;
      Sentence nh = Sentence::negate(label.hyp), ne = Sentence::negate(label.phi);
      if (P.prob(Sentence::conj(label.hyp, label.phi)).is_zero()) return false;
      if (!(label.p == Rational(1)) && P.prob(Sentence::conj(label.hyp, ne)).is_zero())
        return false;
      if (P.prob(Sentence::conj(nh, label.phi)).is_zero()) return false;
      if (!(label.l2 == Rational(1)) && P.prob(Sentence::conj(nh, ne)).is_zero()) return false;
      return true;
    }
    case K::PSE:
    case K::PSR:
      return true;  // total; present/absent atom degrades to a self-loop
  }
  return false;
}

CredalState step(const CredalState& P, const TransitionLabel& label) {
  if (!admits(P, label))
    throw GuardFailed("state " + P.str() + " does not admit " + label.str());
  using K = TransitionLabel::Kind;
  switch (label.kind) {
    case K::BC:
      return bayes(P, label.phi, label.kinetics);
    case K::JC:
      return jeffrey(P, label.p, label.phi);
    case K::SLAC:
      return slac(P, label.p, label.phi, label.hyp);
    case K::DLAC:
      return dlac(P, label.p, label.l2, label.phi, label.hyp);
    case K::PSE:
      if (P.signature().contains(label.phi.atom_name())) return P;
      return expand(P, label.phi.atom_name(), label.mode);
    case K::PSR:
      if (!P.signature().contains(label.phi.atom_name())) return P;
      return reduce(P, label.phi.atom_name());
  }
  throw Error("unreachable label kind");
}

std::optional<TransitionLabel> instantiate(const LabelSchema& schema, const CredalState& P) {
  TransitionLabel label = schema.proto;
  if (label.kind == TransitionLabel::Kind::BC) {
    if (!signature_of(label.phi).subset_of(P.signature())) return std::nullopt;
    label.p = P.prob(label.phi);
  }
  if (!admits(P, label)) return std::nullopt;
  return label;
}

std::vector<LabelSchema> schemas_from_combinator(const Combinator& c) {
  using CK = Combinator::Kind;
  std::vector<LabelSchema> out;
  switch (c.kind()) {
    case CK::Compose:
      for (const auto& f : c.factors())
        for (auto& s : schemas_from_combinator(f)) out.push_back(std::move(s));
      return out;
    case CK::BC:
      out.push_back({TransitionLabel::bc(c.phi(), Rational())});
      return out;
    case CK::JC:
      out.push_back({TransitionLabel::jc(c.p(), c.phi())});
      return out;
    case CK::Slac:
      out.push_back({TransitionLabel::slac(c.p(), c.phi(), c.hyp())});
      return out;
    case CK::Dlac:
      out.push_back({TransitionLabel::dlac(c.p(), c.p2(), c.phi(), c.hyp())});
      return out;
    case CK::PSE:
      out.push_back({TransitionLabel::pse(c.atom(), c.mode())});
      return out;
    case CK::PSR:
      out.push_back({TransitionLabel::psr(c.atom())});
      return out;
    case CK::Id:
    case CK::BR:
      throw ParseError("combinator " + c.str() + " has no transition-label form");
  }
  throw Error("unreachable combinator kind");
}

bool Fragment::closed() const {
  return std::all_of(expanded.begin(), expanded.end(), [](bool b) { return b; });
}

std::string Fragment::str() const {
  std::string out;
  for (std::size_t i = 0; i < states.size(); ++i) {
    out += "S" + std::to_string(i) + (expanded[i] ? "  " : " *") + " " + states[i].str() + "\n";
  }
  for (const auto& e : edges) {
    out += "S" + std::to_string(e.src) + " --" + e.label.str() + "--> S" + std::to_string(e.dst) +
           "\n";
  }
  return out;
}

Fragment generate_fragment(const std::vector<CredalState>& seeds,
                           const std::vector<LabelSchema>& schemas, std::size_t depth,
                           std::size_t max_states) {
  Fragment f;
  std::map<std::string, std::size_t> index;  // canonical rendering -> state id
  auto intern = [&](const CredalState& s) {
    auto key = s.str();
    if (auto it = index.find(key); it != index.end()) return it->second;
    if (f.states.size() >= max_states)
      throw BudgetExceeded("fragment exceeds " + std::to_string(max_states) + " states");
    f.states.push_back(s);
    f.expanded.push_back(false);
    index.emplace(std::move(key), f.states.size() - 1);
    return f.states.size() - 1;
  };

  std::vector<std::size_t> frontier;
  for (const auto& s : seeds) {
    std::size_t id = intern(s);
    if (std::find(frontier.begin(), frontier.end(), id) == frontier.end()) frontier.push_back(id);
  }
  for (std::size_t level = 0; level < depth && !frontier.empty(); ++level) {
    std::vector<std::size_t> next;
    for (std::size_t src : frontier) {
      if (f.expanded[src]) continue;
      f.expanded[src] = true;
      for (const auto& schema : schemas) {
        auto label = instantiate(schema, f.states[src]);
        if (!label) continue;
        CredalState target = step(f.states[src], *label);
        bool fresh = index.find(target.str()) == index.end();
        std::size_t dst = intern(target);
        f.edges.push_back({src, *label, dst});
        if (fresh) next.push_back(dst);
      }
    }
    frontier = std::move(next);
  }
  return f;
}

namespace {

// Support key: signature rendering plus the zero/nonzero pattern.
std::string support_key(const CredalState& s) {
  std::string key = s.signature().str() + "|";
  for (std::size_t i = 0; i < s.minterm_count(); ++i) key += s.mass(i).is_zero() ? '0' : '1';
  return key;
}

}  // namespace

BisimReport is_bisimulation(const Fragment& f, const Relation& r) {
  BisimReport rep;
  for (const auto& [a, b] : r) {
    if (a >= f.states.size() || b >= f.states.size()) {
      rep.reason = "relation mentions a state outside the fragment";
      return rep;
    }
    if (!(f.states[a].signature() == f.states[b].signature())) {
      rep.reason = "pair (S" + std::to_string(a) + ",S" + std::to_string(b) +
                   ") relates states over different signatures";
      return rep;
    }
  }
  for (std::size_t i = 0; i < f.states.size(); ++i) {
    if (!r.count({i, i})) {
      rep.reason = "not reflexive: missing (S" + std::to_string(i) + ",S" + std::to_string(i) + ")";
      return rep;
    }
  }
  for (const auto& [a, b] : r) {
    if (!r.count({b, a})) {
      rep.reason = "not symmetric at (S" + std::to_string(a) + ",S" + std::to_string(b) + ")";
      return rep;
    }
  }
  for (const auto& [a, b] : r) {
    for (const auto& [c, d] : r) {
      if (b == c && !r.count({a, d})) {
        rep.reason = "not transitive at (S" + std::to_string(a) + ",S" + std::to_string(d) + ")";
        return rep;
      }
    }
  }
  // Transfer clause: every move of one component must be matched, up to
  // label identity, by a move of the other with related targets.
  for (const auto& [a, b] : r) {
    for (const auto& e : f.edges) {
      if (e.src != a) continue;
      bool matched = false;
      for (const auto& e2 : f.edges) {
        if (e2.src != b || !e.label.matches(e2.label)) continue;
        if (r.count({e.dst, e2.dst})) {
          matched = true;
          break;
        }
      }
      if (!matched) {
        rep.reason = "transfer fails: S" + std::to_string(a) + " --" + e.label.str() + "--> S" +
                     std::to_string(e.dst) + " has no matching move from S" + std::to_string(b);
        rep.counterexample = {a, b, e.label};
        return rep;
      }
    }
  }
  rep.ok = true;
  rep.reason = "bisimulation";
  return rep;
}

Relation identity_relation(const Fragment& f) {
  Relation r;
  for (std::size_t i = 0; i < f.states.size(); ++i) r.insert({i, i});
  return r;
}

Relation max_compatibility(const Fragment& f) {
  Relation r;
  for (std::size_t i = 0; i < f.states.size(); ++i) {
    for (std::size_t j = 0; j < f.states.size(); ++j) {
      if (!(f.states[i].signature() == f.states[j].signature())) continue;
      if (compatible(f.states[i], f.states[j])) r.insert({i, j});
    }
  }
  return r;
}

std::vector<FoundBisimulation> search_intermediate_bisimulations(const Fragment& f,
                                                                 std::size_t max_states) {
  std::size_t n = f.states.size();
  if (n > max_states)
    throw BudgetExceeded("bisimulation search over " + std::to_string(n) + " states exceeds " +
                         std::to_string(max_states));
  // Compatibility class of each state; blocks may not cross classes.
  std::vector<std::string> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = support_key(f.states[i]);

  Relation rid = identity_relation(f);
  Relation rmax = max_compatibility(f);

  std::vector<FoundBisimulation> found;
  if (n <= 1) return found;  // nothing lies strictly above the identity

  // Enumerate set partitions (restricted growth), pruning any block that
  // would mix compatibility classes — such a relation leaves R^max anyway.
  std::vector<std::size_t> block(n, 0);
  std::vector<std::string> block_cls;
  auto consider = [&]() {
    Relation r;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (block[i] == block[j]) r.insert({i, j});
    if (r == rid) return;  // must lie strictly above the identity
    if (is_bisimulation(f, r).ok) found.push_back({r, r == rmax});
  };
  auto rec = [&](auto&& self, std::size_t idx) -> void {
    if (idx == n) {
      consider();
      return;
    }
    for (std::size_t b = 0; b <= block_cls.size(); ++b) {
      if (b < block_cls.size()) {
        if (block_cls[b] != cls[idx]) continue;
        block[idx] = b;
        self(self, idx + 1);
      } else {
        block[idx] = b;
        block_cls.push_back(cls[idx]);
        self(self, idx + 1);
        block_cls.pop_back();
      }
    }
  };
  rec(rec, 0);
  return found;
}

}  // namespace credal
