#include "mge/expr.hpp"

#include <cctype>
#include <utility>

#include "mge/error.hpp"
#include "mge/perm.hpp"

namespace mge {

namespace {

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class WordParser {
 public:
  explicit WordParser(std::string_view s) : s_(s) {}

  Word run() {
    Word w;
    w.source = std::string(s_);
    skip();
    if (s_.substr(pos_) == "1") return w;
    w.factors = sequence(false);
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return w;
  }

 private:
  std::vector<WordFactor> sequence(bool nested) {
    std::vector<WordFactor> out;
    for (;;) {
      skip();
      if (pos_ >= s_.size()) break;
      char c = s_[pos_];
      if (c == '*') {
        ++pos_;
        continue;
      }
      if (c == ')') {
        if (!nested) fail("unbalanced ')'");
        break;
      }
      out.push_back(factor());
    }
    return out;
  }

  WordFactor factor() {
    WordFactor f;
    char c = s_[pos_];
    if (c == '(') {
      if (cycle_ahead()) {
        f.kind = WordFactor::Kind::Cycles;
        // Adjacent cycles form a single permutation.
        while (pos_ < s_.size() && s_[pos_] == '(' && cycle_ahead()) {
          auto close = s_.find(')', pos_);
          f.text += std::string(s_.substr(pos_, close - pos_ + 1));
          pos_ = close + 1;
        }
      } else {
        ++pos_;
        f.kind = WordFactor::Kind::Sub;
        f.sub = sequence(true);
        skip();
        if (pos_ >= s_.size() || s_[pos_] != ')') fail("missing ')'");
        ++pos_;
      }
    } else if (is_ident_char(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && is_ident_char(s_[pos_])) ++pos_;
      f.text = std::string(s_.substr(start, pos_ - start));
    } else {
      fail("unexpected '" + std::string(1, c) + "'");
    }
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip();
      bool neg = false;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("missing exponent");
      long e = std::stol(std::string(s_.substr(start, pos_ - start)));
      f.exponent = neg ? -e : e;
    }
    return f;
  }

  bool cycle_ahead() const {
    auto close = s_.find(')', pos_);
    if (close == std::string_view::npos) return false;
    for (std::size_t i = pos_ + 1; i < close; ++i) {
      char c = s_[i];
      if (!(std::isdigit(static_cast<unsigned char>(c)) || c == ',' || c == ' ')) return false;
    }
    return true;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("word \"" + std::string(s_) + "\": " + msg);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  GroupExpr run() {
    GroupExpr e = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  GroupExpr expr() {
    std::vector<GroupExpr> factors;
    factors.push_back(atom());
    while (product_sign_ahead()) {
      skip();
      ++pos_;
      factors.push_back(atom());
    }
    if (factors.size() == 1) return std::move(factors.front());
    return make_direct(std::move(factors));
  }

  // Only called after a complete atom, where an identifier cannot start, so
  // "C(2)xC(3)" needs no spaces.
  bool product_sign_ahead() {
    skip();
    return pos_ < s_.size() && s_[pos_] == 'x';
  }

  GroupExpr atom() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      GroupExpr inner = expr();
      expect(')');
      suffix(inner);
      return inner;
    }
    std::string name = ident();
    expect('(');
    GroupExpr e;
    if (name == "C" || name == "D" || name == "Q" || name == "S" || name == "A") {
      e.kind = name == "C"   ? ExprKind::Cyclic
               : name == "D" ? ExprKind::Dihedral
               : name == "Q" ? ExprKind::Dicyclic
               : name == "S" ? ExprKind::Symmetric
                             : ExprKind::Alternating;
      e.ints.push_back(integer());
      expect(')');
    } else if (name == "EA") {
      e.kind = ExprKind::ElemAbelian;
      e.ints.push_back(integer());
      expect(',');
      e.ints.push_back(integer());
      expect(')');
    } else if (name == "sd") {
      e.kind = ExprKind::SemidirectProduct;
      e.children.push_back(expr());
      expect(',');
      e.children.push_back(expr());
      while (accept(',')) e.actions.push_back(clause(raw_segment()));
      expect(')');
    } else if (name == "cp") {
      e.kind = ExprKind::CentralProduct;
      e.children.push_back(expr());
      expect(',');
      e.children.push_back(expr());
      expect(',');
      std::string ident_clause = raw_segment();
      auto eq = ident_clause.find('=');
      if (eq == std::string::npos) fail("cp identification needs u=v");
      e.words.push_back(trim(ident_clause.substr(0, eq)));
      e.words.push_back(trim(ident_clause.substr(eq + 1)));
      expect(')');
    } else if (name == "quo") {
      e.kind = ExprKind::Quotient;
      e.children.push_back(expr());
      while (accept(',')) e.words.push_back(trim(raw_segment()));
      expect(')');
    } else if (name == "perm") {
      e.kind = ExprKind::PermGroup;
      e.ints.push_back(integer());
      expect(';');
      do {
        e.words.push_back(quoted());
      } while (accept(','));
      expect(')');
    } else if (name == "named") {
      e.kind = ExprKind::Named;
      e.label = trim(raw_segment());
      expect(')');
    } else if (name == "tw") {
      e.kind = ExprKind::Twisted;
      e.children.push_back(expr());
      while (accept(',')) e.children.push_back(expr());
      if (accept(';')) {
        skip();
        if (s_.substr(pos_, 5) != "span=") fail("expected span=");
        pos_ += 5;
        e.words.push_back(trim(raw_segment()));
        while (accept(',')) e.words.push_back(trim(raw_segment()));
      }
      expect(')');
    } else {
      fail("unknown constructor '" + name + "'");
    }
    suffix(e);
    return e;
  }

  void suffix(GroupExpr& e) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '[') {
      ++pos_;
      auto close = s_.find(']', pos_);
      if (close == std::string_view::npos) fail("unterminated rename list");
      std::string body(s_.substr(pos_, close - pos_));
      pos_ = close + 1;
      std::size_t start = 0;
      for (;;) {
        auto comma = body.find(',', start);
        e.rename.push_back(trim(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
  }

  static ActionClause clause(const std::string& text) {
    ActionClause c;
    auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError("action clause \"" + text + "\" needs '='");
    std::string lhs = trim(text.substr(0, eq));
    c.image = trim(text.substr(eq + 1));
    auto colon = lhs.find(':');
    if (colon != std::string::npos) {
      c.actor_gen = trim(lhs.substr(0, colon));
      c.base_gen = trim(lhs.substr(colon + 1));
    } else {
      c.base_gen = lhs;
    }
    return c;
  }

  // Text up to the next top-level ',', ';' or ')'.
  std::string raw_segment() {
    skip();
    int depth = 0;
    std::size_t start = pos_;
    bool in_quote = false;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '"') in_quote = !in_quote;
      if (!in_quote) {
        if (c == '(' || c == '[') ++depth;
        if ((c == ')' || c == ']') && depth == 0) break;
        if (c == ')' || c == ']') --depth;
        if ((c == ',' || c == ';') && depth == 0) break;
      }
      ++pos_;
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string quoted() {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != '"') {
      // Unquoted cycle strings are accepted too.
      return trim(raw_segment());
    }
    auto close = s_.find('"', pos_ + 1);
    if (close == std::string_view::npos) fail("unterminated string");
    std::string out(s_.substr(pos_ + 1, close - pos_ - 1));
    pos_ = close + 1;
    return out;
  }

  std::string ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && is_ident_char(s_[pos_])) ++pos_;
    if (start == pos_) fail("expected constructor name");
    return std::string(s_.substr(start, pos_ - start));
  }

  long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  static std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("expression \"" + std::string(s_) + "\" at offset " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

Word parse_word(std::string_view text) { return WordParser(text).run(); }

GroupExpr parse_group_expr(std::string_view text) { return ExprParser(text).run(); }

GroupExpr make_cyclic(long n) {
  GroupExpr e;
  e.kind = ExprKind::Cyclic;
  e.ints = {n};
  return e;
}

GroupExpr make_named(std::string label) {
  GroupExpr e;
  e.kind = ExprKind::Named;
  e.label = std::move(label);
  return e;
}

GroupExpr make_direct(std::vector<GroupExpr> factors) {
  GroupExpr e;
  e.kind = ExprKind::DirectProduct;
  e.children = std::move(factors);
  return e;
}

std::string GroupExpr::to_string() const {
  std::string out;
  switch (kind) {
    case ExprKind::Cyclic: out = "C(" + std::to_string(ints[0]) + ")"; break;
    case ExprKind::ElemAbelian: out = "EA(" + std::to_string(ints[0]) + "," + std::to_string(ints[1]) + ")"; break;
    case ExprKind::Dihedral: out = "D(" + std::to_string(ints[0]) + ")"; break;
    case ExprKind::Dicyclic: out = "Q(" + std::to_string(ints[0]) + ")"; break;
    case ExprKind::Symmetric: out = "S(" + std::to_string(ints[0]) + ")"; break;
    case ExprKind::Alternating: out = "A(" + std::to_string(ints[0]) + ")"; break;
    case ExprKind::DirectProduct: {
      std::vector<std::string> parts;
      for (const auto& c : children) {
        std::string s = c.to_string();
        parts.push_back(c.kind == ExprKind::DirectProduct && c.rename.empty() ? "(" + s + ")" : s);
      }
      out = join(parts, " x ");
      if (!rename.empty()) out = "(" + out + ")";
      break;
    }
    case ExprKind::SemidirectProduct: {
      out = "sd(" + children[0].to_string() + ", " + children[1].to_string();
      for (const auto& a : actions)
        out += ", " + (a.actor_gen.empty() ? "" : a.actor_gen + ":") + a.base_gen + "=" + a.image;
      out += ")";
      break;
    }
    case ExprKind::CentralProduct:
      out = "cp(" + children[0].to_string() + ", " + children[1].to_string() + ", " + words[0] + "=" + words[1] + ")";
      break;
    case ExprKind::Quotient:
      out = "quo(" + children[0].to_string();
      for (const auto& w : words) out += ", " + w;
      out += ")";
      break;
    case ExprKind::PermGroup: {
      out = "perm(" + std::to_string(ints[0]) + ";";
      for (std::size_t i = 0; i < words.size(); ++i) out += std::string(i ? ", " : " ") + "\"" + words[i] + "\"";
      out += ")";
      break;
    }
    case ExprKind::Named: out = "named(" + label + ")"; break;
    case ExprKind::Twisted: {
      std::vector<std::string> parts;
      for (const auto& c : children) parts.push_back(c.to_string());
      out = "tw(" + join(parts, ", ");
      if (!words.empty()) out += "; span=" + join(words, ", ");
      out += ")";
      break;
    }
  }
  if (!rename.empty()) out += "[" + join(rename, ",") + "]";
  return out;
}

}  // namespace mge
