#include "reasonkit/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace reasonkit {

bool VarUniverse::valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto tail = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  if (!head(name.front())) return false;
  return std::all_of(name.begin() + 1, name.end(), tail);
}

VarUniverse::VarUniverse(std::vector<std::string> names) : names_(std::move(names)) {
  index_.reserve(names_.size());
  for (unsigned i = 0; i < names_.size(); ++i) index_.emplace_back(names_[i], i);
  std::sort(index_.begin(), index_.end());
}

UniversePtr VarUniverse::make(std::vector<std::string> names) {
  for (const auto& name : names) {
    if (!valid_identifier(name))
      throw SchemaError("invalid variable identifier: '" + name + "'");
  }
  auto sorted = names;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) throw SchemaError("duplicate variable: '" + *dup + "'");
  return UniversePtr(new VarUniverse(std::move(names)));
}

int VarUniverse::index_of(std::string_view name) const {
  auto it = std::lower_bound(index_.begin(), index_.end(), name,
                             [](const auto& entry, std::string_view key) { return entry.first < key; });
  if (it == index_.end() || it->first != name) return -1;
  return static_cast<int>(it->second);
}

unsigned VarUniverse::require(std::string_view name) const {
  int i = index_of(name);
  if (i < 0) throw UniverseError("unknown variable: '" + std::string(name) + "'");
  return static_cast<unsigned>(i);
}

bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

Instance Instance::from_bits(std::string_view bits) {
  std::vector<bool> values;
  values.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw SchemaError("bitstring may contain only 0 and 1");
    values.push_back(c == '1');
  }
  return Instance(std::move(values));
}

Instance Instance::from_index(std::uint64_t index, unsigned n) {
  std::vector<bool> values(n);
  for (unsigned i = 0; i < n; ++i) values[i] = (index >> (n - 1 - i)) & 1u;
  return Instance(std::move(values));
}

std::uint64_t Instance::as_index() const {
  std::uint64_t value = 0;
  for (bool bit : bits_) value = (value << 1) | (bit ? 1u : 0u);
  return value;
}

std::string Instance::to_bitstring() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool bit : bits_) s.push_back(bit ? '1' : '0');
  return s;
}

Formula Formula::var(UniversePtr universe, unsigned index) {
  if (!universe || index >= universe->size()) throw UniverseError("variable index out of range");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Var;
  node->var = index;
  return Formula(std::move(universe), std::move(node));
}

Formula Formula::var(UniversePtr universe, std::string_view name) {
  unsigned index = universe->require(name);
  return var(std::move(universe), index);
}

Formula Formula::constant(UniversePtr universe, bool value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Const;
  node->value = value;
  return Formula(std::move(universe), std::move(node));
}

UniversePtr Formula::merged_universe(const Formula& a, const Formula& b) {
  if (!same_universe(a.universe_, b.universe_))
    throw UniverseError("cannot combine formulas over different universes");
  return a.universe_;
}

Formula Formula::operator!() const {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Not;
  node->left = root_;
  return Formula(universe_, std::move(node));
}

namespace {

Formula::NodePtr binary(Formula::Kind kind, Formula::NodePtr left, Formula::NodePtr right) {
  auto node = std::make_shared<Formula::Node>();
  node->kind = kind;
  node->left = std::move(left);
  node->right = std::move(right);
  return node;
}

}  // namespace

Formula Formula::operator&(const Formula& rhs) const {
  return Formula(merged_universe(*this, rhs), binary(Kind::And, root_, rhs.root_));
}

Formula Formula::operator|(const Formula& rhs) const {
  return Formula(merged_universe(*this, rhs), binary(Kind::Or, root_, rhs.root_));
}

Formula implies(const Formula& lhs, const Formula& rhs) {
  return Formula(Formula::merged_universe(lhs, rhs),
                 binary(Formula::Kind::Implies, lhs.root_, rhs.root_));
}

Formula iff(const Formula& lhs, const Formula& rhs) {
  return Formula(Formula::merged_universe(lhs, rhs),
                 binary(Formula::Kind::Iff, lhs.root_, rhs.root_));
}

bool Formula::eval(const Instance& x) const {
  if (x.size() != universe_->size())
    throw PreconditionError("instance arity does not match universe");
  // Explicit stack; shared subtrees make the tree potentially deep.
  struct Frame {
    const Node* node;
    int stage;
  };
  std::vector<Frame> stack{{root_.get(), 0}};
  std::vector<bool> results;
  while (!stack.empty()) {
    auto& [node, stage] = stack.back();
    switch (node->kind) {
      case Kind::Var:
        results.push_back(x.bit(node->var));
        stack.pop_back();
        break;
      case Kind::Const:
        results.push_back(node->value);
        stack.pop_back();
        break;
      case Kind::Not:
        if (stage == 0) {
          stage = 1;
          stack.push_back({node->left.get(), 0});
        } else {
          results.back() = !results.back();
          stack.pop_back();
        }
        break;
      default:
        if (stage == 0) {
          stage = 1;
          stack.push_back({node->left.get(), 0});
        } else if (stage == 1) {
          stage = 2;
          stack.push_back({node->right.get(), 0});
        } else {
          bool b = results.back();
          results.pop_back();
          bool a = results.back();
          bool out = false;
          switch (node->kind) {
            case Kind::And: out = a && b; break;
            case Kind::Or: out = a || b; break;
            case Kind::Implies: out = !a || b; break;
            case Kind::Iff: out = a == b; break;
            default: break;
          }
          results.back() = out;
          stack.pop_back();
        }
        break;
    }
  }
  return results.back();
}

namespace {

void render(const Formula::Node* node, const VarUniverse& universe, std::string& out) {
  using Kind = Formula::Kind;
  switch (node->kind) {
    case Kind::Var:
      out += universe.name(node->var);
      break;
    case Kind::Const:
      out += node->value ? "true" : "false";
      break;
    case Kind::Not:
      out += '!';
      if (node->left->kind == Kind::Var || node->left->kind == Kind::Const ||
          node->left->kind == Kind::Not) {
        render(node->left.get(), universe, out);
      } else {
        out += '(';
        render(node->left.get(), universe, out);
        out += ')';
      }
      break;
    default: {
      const char* op = node->kind == Kind::And       ? " & "
                       : node->kind == Kind::Or      ? " | "
                       : node->kind == Kind::Implies ? " -> "
                                                     : " <-> ";
      out += '(';
      render(node->left.get(), universe, out);
      out += op;
      render(node->right.get(), universe, out);
      out += ')';
      break;
    }
  }
}

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  render(root_.get(), *universe_, out);
  return out;
}

bool Formula::same_structure(const Formula& other) const {
  if (!same_universe(universe_, other.universe_)) return false;
  struct Pair {
    const Node* a;
    const Node* b;
  };
  std::vector<Pair> stack{{root_.get(), other.root_.get()}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    if (a == b) continue;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case Kind::Var:
        if (a->var != b->var) return false;
        break;
      case Kind::Const:
        if (a->value != b->value) return false;
        break;
      case Kind::Not:
        stack.push_back({a->left.get(), b->left.get()});
        break;
      default:
        stack.push_back({a->left.get(), b->left.get()});
        stack.push_back({a->right.get(), b->right.get()});
        break;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok : std::uint8_t {
  Ident, True, False, Not, And, Or, Implies, Iff, LParen, RParen, End
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_trivia();
    int line = line_, column = column_;
    if (pos_ >= text_.size()) return {Tok::End, "", line, column};
    char c = text_[pos_];
    switch (c) {
      case '(': advance(); return {Tok::LParen, "(", line, column};
      case ')': advance(); return {Tok::RParen, ")", line, column};
      case '!': advance(); return {Tok::Not, "!", line, column};
      case '&': advance(); return {Tok::And, "&", line, column};
      case '|': advance(); return {Tok::Or, "|", line, column};
      case '-':
        advance();
        if (pos_ < text_.size() && text_[pos_] == '>') {
          advance();
          return {Tok::Implies, "->", line, column};
        }
        throw ParseError("expected '->'", line, column);
      case '<':
        advance();
        if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
          advance();
          advance();
          return {Tok::Iff, "<->", line, column};
        }
        throw ParseError("expected '<->'", line, column);
      default:
        break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        advance();
      std::string word(text_.substr(start, pos_ - start));
      if (word == "true") return {Tok::True, word, line, column};
      if (word == "false") return {Tok::False, word, line, column};
      return {Tok::Ident, word, line, column};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, column);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

// Grammar, loosest binding first (implication and biconditional associate to
// the right, conjunction and disjunction to the left):
//   iff     := implies ( "<->" iff )?
//   implies := or ( "->" implies )?
//   or      := and ( "|" and )*
//   and     := unary ( "&" unary )*
//   unary   := "!" unary | atom
//   atom    := ident | "true" | "false" | "(" iff ")"
class Parser {
 public:
  Parser(std::string_view text, UniversePtr universe, bool infer)
      : lexer_(text), universe_(std::move(universe)), infer_(infer) {
    if (infer_) {
      collect_identifiers(text);
    }
    current_ = lexer_.next();
  }

  Formula parse() {
    Formula f = parse_iff();
    if (current_.kind != Tok::End)
      throw ParseError("unexpected trailing input '" + current_.text + "'", current_.line,
                       current_.column);
    return f;
  }

  UniversePtr universe() const { return universe_; }

 private:
  void collect_identifiers(std::string_view text) {
    Lexer scan(text);
    std::vector<std::string> names;
    for (Token t = scan.next(); t.kind != Tok::End; t = scan.next()) {
      if (t.kind != Tok::Ident) continue;
      if (std::find(names.begin(), names.end(), t.text) == names.end()) names.push_back(t.text);
    }
    if (names.empty()) throw SchemaError("formula mentions no variables; cannot infer a universe");
    universe_ = VarUniverse::make(std::move(names));
  }

  Token take() {
    Token t = current_;
    current_ = lexer_.next();
    return t;
  }

  Formula parse_iff() {
    Formula left = parse_implies();
    if (current_.kind == Tok::Iff) {
      take();
      return iff(left, parse_iff());
    }
    return left;
  }

  Formula parse_implies() {
    Formula left = parse_or();
    if (current_.kind == Tok::Implies) {
      take();
      return implies(left, parse_implies());
    }
    return left;
  }

  Formula parse_or() {
    Formula left = parse_and();
    while (current_.kind == Tok::Or) {
      take();
      left = left | parse_and();
    }
    return left;
  }

  Formula parse_and() {
    Formula left = parse_unary();
    while (current_.kind == Tok::And) {
      take();
      left = left & parse_unary();
    }
    return left;
  }

  Formula parse_unary() {
    if (current_.kind == Tok::Not) {
      take();
      return !parse_unary();
    }
    return parse_atom();
  }

  Formula parse_atom() {
    Token t = take();
    switch (t.kind) {
      case Tok::Ident:
        return Formula::var(universe_, universe_->require(t.text));
      case Tok::True:
        return Formula::constant(universe_, true);
      case Tok::False:
        return Formula::constant(universe_, false);
      case Tok::LParen: {
        Formula inner = parse_iff();
        if (current_.kind != Tok::RParen)
          throw ParseError("expected ')'", current_.line, current_.column);
        take();
        return inner;
      }
      case Tok::End:
        throw ParseError("unexpected end of input", t.line, t.column);
      default:
        throw ParseError("unexpected token '" + t.text + "'", t.line, t.column);
    }
  }

  Lexer lexer_;
  UniversePtr universe_;
  bool infer_;
  Token current_{Tok::End, "", 0, 0};
};

}  // namespace

Formula parse_formula(std::string_view text, UniversePtr universe) {
  if (!universe) throw PreconditionError("parse_formula requires a universe");
  Parser parser(text, std::move(universe), /*infer=*/false);
  return parser.parse();
}

std::vector<std::string> collect_identifiers(std::string_view text) {
  Lexer scan(text);
  std::vector<std::string> names;
  for (Token t = scan.next(); t.kind != Tok::End; t = scan.next()) {
    if (t.kind != Tok::Ident) continue;
    if (std::find(names.begin(), names.end(), t.text) == names.end()) names.push_back(t.text);
  }
  return names;
}

std::pair<Formula, UniversePtr> parse_formula(std::string_view text) {
  Parser parser(text, nullptr, /*infer=*/true);
  Formula f = parser.parse();
  return {f, parser.universe()};
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_bitstring(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

}  // namespace

Instance parse_instance(std::string_view text, const VarUniverse& universe) {
  std::string_view body = trim(text);
  if (body.empty()) throw ParseError("empty instance");

  // Optional decorative label before '=' when the payload is a bitstring.
  if (auto eq = body.find('='); eq != std::string_view::npos && body.find(',') == std::string_view::npos) {
    std::string_view tail = trim(body.substr(eq + 1));
    if (is_bitstring(tail) && tail.size() == universe.size()) body = tail;
  }

  if (is_bitstring(body)) {
    if (body.size() != universe.size())
      throw ParseError("instance has " + std::to_string(body.size()) + " bits; universe has " +
                        std::to_string(universe.size()) + " variables");
    return Instance::from_bits(body);
  }

  // name=bit comma list
  std::vector<int> values(universe.size(), -1);
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string_view item = trim(body.substr(pos, comma == std::string_view::npos ? body.size() - pos
                                                                                  : comma - pos));
    if (item.empty()) throw ParseError("empty assignment in instance");
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected name=bit in instance, got '" + std::string(item) + "'");
    std::string_view name = trim(item.substr(0, eq));
    std::string_view bit = trim(item.substr(eq + 1));
    unsigned index = universe.require(name);
    if (bit != "0" && bit != "1")
      throw ParseError("expected 0 or 1 for '" + std::string(name) + "'");
    if (values[index] != -1)
      throw ParseError("variable assigned twice: '" + std::string(name) + "'");
    values[index] = bit == "1" ? 1 : 0;
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  std::vector<bool> bits(universe.size());
  for (unsigned i = 0; i < universe.size(); ++i) {
    if (values[i] == -1)
      throw ParseError("instance does not assign '" + universe.name(i) + "'");
    bits[i] = values[i] == 1;
  }
  return Instance(std::move(bits));
}

}  // namespace reasonkit
