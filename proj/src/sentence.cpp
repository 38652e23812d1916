#include "credal/sentence.hpp"

#include <algorithm>
#include <cctype>

namespace credal {

Signature::Signature(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end());
  auto dup = std::adjacent_find(atoms_.begin(), atoms_.end());
  if (dup != atoms_.end()) throw AtomAlreadyPresent("duplicate atom '" + *dup + "' in signature");
  for (const auto& a : atoms_)
    if (a.empty()) throw ParseError("empty atom name in signature");
}

bool Signature::contains(std::string_view name) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), name);
}

std::size_t Signature::index_of(std::string_view name) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), name);
  if (it == atoms_.end() || *it != name)
    throw UnknownAtom("atom '" + std::string(name) + "' not in signature " + str());
  return static_cast<std::size_t>(it - atoms_.begin());
}

Signature Signature::with(const std::string& name) const {
  if (contains(name)) throw AtomAlreadyPresent("atom '" + name + "' already in " + str());
  auto atoms = atoms_;
  atoms.push_back(name);
  return Signature(std::move(atoms));
}

Signature Signature::without(const std::string& name) const {
  if (!contains(name)) throw AtomNotPresent("atom '" + name + "' not in " + str());
  auto atoms = atoms_;
  atoms.erase(std::find(atoms.begin(), atoms.end(), name));
  Signature out;
  out.atoms_ = std::move(atoms);  // still sorted
  return out;
}

bool Signature::subset_of(const Signature& other) const {
  return std::includes(other.atoms_.begin(), other.atoms_.end(), atoms_.begin(), atoms_.end());
}

std::string Signature::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i) out += ",";
    out += atoms_[i];
  }
  return out + "}";
}

Sentence Sentence::top() {
  return Sentence(std::make_shared<const Node>(Kind::Top, "", Sentence{}, Sentence{}));
}
Sentence Sentence::bottom() {
  return Sentence(std::make_shared<const Node>(Kind::Bottom, "", Sentence{}, Sentence{}));
}
Sentence Sentence::atom(std::string name) {
  return Sentence(std::make_shared<const Node>(Kind::Atom, std::move(name), Sentence{}, Sentence{}));
}
Sentence Sentence::negate(Sentence s) {
  return Sentence(std::make_shared<const Node>(Kind::Not, "", std::move(s), Sentence{}));
}
Sentence Sentence::conj(Sentence a, Sentence b) {
  return Sentence(std::make_shared<const Node>(Kind::And, "", std::move(a), std::move(b)));
}
Sentence Sentence::disj(Sentence a, Sentence b) {
  return Sentence(std::make_shared<const Node>(Kind::Or, "", std::move(a), std::move(b)));
}
Sentence Sentence::implies(Sentence a, Sentence b) {
  return Sentence(std::make_shared<const Node>(Kind::Implies, "", std::move(a), std::move(b)));
}

bool Sentence::same_tree(const Sentence& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case Kind::Top:
    case Kind::Bottom:
      return true;
    case Kind::Atom:
      return node_->name == other.node_->name;
    case Kind::Not:
      return node_->lhs.same_tree(other.node_->lhs);
    default:
      return node_->lhs.same_tree(other.node_->lhs) && node_->rhs.same_tree(other.node_->rhs);
  }
}

namespace {

int precedence(Sentence::Kind k) {
  switch (k) {
    case Sentence::Kind::Implies: return 1;
    case Sentence::Kind::Or: return 2;
    case Sentence::Kind::And: return 3;
    default: return 4;  // Not, atoms, constants never need outer parens
  }
}

void render(const Sentence& s, std::string& out, int parent_prec) {
  using K = Sentence::Kind;
  int prec = precedence(s.kind());
  bool parens = prec < parent_prec;
  if (parens) out += "(";
  switch (s.kind()) {
    case K::Top: out += "T"; break;
    case K::Bottom: out += "F"; break;
    case K::Atom: out += s.atom_name(); break;
    case K::Not:
      out += "!";
      render(s.child(), out, 4);
      break;
    case K::And:
      render(s.lhs(), out, 3);
      out += " & ";
      render(s.rhs(), out, 3);
      break;
    case K::Or:
      render(s.lhs(), out, 2);
      out += " | ";
      render(s.rhs(), out, 2);
      break;
    case K::Implies:
      render(s.lhs(), out, 2);  // left operand binds tighter (-> is right assoc)
      out += " -> ";
      render(s.rhs(), out, 1);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

std::string Sentence::str() const {
  std::string out;
  render(*this, out, 0);
  return out;
}

namespace {

// Recursive-descent parser over: implies <- or ("->" implies)?
//                                or      <- and ("|" and)*
//                                and     <- unary ("&" unary)*
//                                unary   <- ("!" | "~") unary | "(" implies ")" | "T" | "F" | atom
struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool eat_arrow() {
    skip_ws();
    if (pos + 1 < text.size() && text[pos] == '-' && text[pos + 1] == '>') {
      pos += 2;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw ParseError(why + " at offset " + std::to_string(pos) + " in '" + std::string(text) + "'");
  }

  Sentence parse_implies() {
    Sentence lhs = parse_or();
    if (eat_arrow()) return Sentence::implies(std::move(lhs), parse_implies());
    return lhs;
  }
  Sentence parse_or() {
    Sentence s = parse_and();
    while (eat('|')) s = Sentence::disj(std::move(s), parse_and());
    return s;
  }
  Sentence parse_and() {
    Sentence s = parse_unary();
    while (eat('&')) s = Sentence::conj(std::move(s), parse_unary());
    return s;
  }
  Sentence parse_unary() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of sentence");
    char c = text[pos];
    if (c == '!' || c == '~') {
      ++pos;
      return Sentence::negate(parse_unary());
    }
    if (c == '(') {
      ++pos;
      Sentence s = parse_implies();
      if (!eat(')')) fail("missing ')'");
      return s;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      std::string name(text.substr(start, pos - start));
      if (name == "T") return Sentence::top();
      if (name == "F") return Sentence::bottom();
      return Sentence::atom(std::move(name));
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Sentence parse_sentence(std::string_view text) {
  Parser p{text};
  Sentence s = p.parse_implies();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return s;
}

bool evaluate(const Sentence& s, const Signature& sig, std::size_t index) {
  using K = Sentence::Kind;
  switch (s.kind()) {
    case K::Top: return true;
    case K::Bottom: return false;
    case K::Atom: return (index >> sig.index_of(s.atom_name())) & 1;
    case K::Not: return !evaluate(s.child(), sig, index);
    case K::And: return evaluate(s.lhs(), sig, index) && evaluate(s.rhs(), sig, index);
    case K::Or: return evaluate(s.lhs(), sig, index) || evaluate(s.rhs(), sig, index);
    case K::Implies: return !evaluate(s.lhs(), sig, index) || evaluate(s.rhs(), sig, index);
  }
  throw Error("unreachable sentence kind");
}

namespace {

void collect_atoms(const Sentence& s, std::vector<std::string>& out) {
  using K = Sentence::Kind;
  switch (s.kind()) {
    case K::Top:
    case K::Bottom:
      return;
    case K::Atom:
      out.push_back(s.atom_name());
      return;
    case K::Not:
      collect_atoms(s.child(), out);
      return;
    default:
      collect_atoms(s.lhs(), out);
      collect_atoms(s.rhs(), out);
      return;
  }
}

}  // namespace

Signature signature_of(const Sentence& s) {
  std::vector<std::string> atoms;
  collect_atoms(s, atoms);
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  Signature out;
  for (auto& a : atoms) out = out.with(a);
  return out;
}

bool equivalent(const Sentence& a, const Sentence& b) {
  std::vector<std::string> atoms;
  collect_atoms(a, atoms);
  collect_atoms(b, atoms);
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  Signature sig(std::move(atoms));
  for (std::size_t i = 0; i < sig.minterms(); ++i)
    if (evaluate(a, sig, i) != evaluate(b, sig, i)) return false;
  return true;
}

Sentence minterm_sentence(const Signature& sig, std::size_t index) {
  if (sig.size() == 0) return Sentence::top();
  Sentence out;
  for (std::size_t j = 0; j < sig.size(); ++j) {
    Sentence lit = Sentence::atom(sig.atoms()[j]);
    if (!((index >> j) & 1)) lit = Sentence::negate(std::move(lit));
    out = out.valid() ? Sentence::conj(std::move(out), std::move(lit)) : std::move(lit);
  }
  return out;
}

}  // namespace credal
