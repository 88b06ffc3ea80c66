#include "parser.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace llfp {

namespace {

enum class Tok {
  Ident,
  KwType,
  KwLockTy,   // Lock
  KwLockObj,  // lock
  KwUnlock,
  KwPred,
  Bang,
  Backslash,
  Colon,
  Dot,
  Comma,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Arrow,
  Turnstile,
  DirCheck,
  DirCheckTy,
  DirNormalize,
  ExpectFail,
  Eof,
};

struct Token {
  Tok kind;
  std::string text;
  Pos pos;
};

bool identStart(char ch) { return std::isalpha(static_cast<unsigned char>(ch)) || ch == '_'; }
bool identChar(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'' || ch == '$';
}

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    skipSpace();
    if (pendingExpect_) {
      tok_ = {Tok::ExpectFail, *pendingExpect_, pos()};
      pendingExpect_.reset();
      return;
    }
    tok_.pos = pos();
    if (i_ >= text_.size()) {
      tok_ = {Tok::Eof, "", tok_.pos};
      return;
    }
    char ch = text_[i_];
    if (ch == '#') {
      size_t j = i_ + 1;
      std::string word;
      while (j < text_.size() && identChar(text_[j])) word += text_[j++];
      if (word == "check") tok_ = {Tok::DirCheck, "#check", tok_.pos};
      else if (word == "checkty") tok_ = {Tok::DirCheckTy, "#checkty", tok_.pos};
      else if (word == "normalize") tok_ = {Tok::DirNormalize, "#normalize", tok_.pos};
      else throw ParseError("unknown directive #" + word, tok_.pos);
      bump(j - i_);
      return;
    }
    if (identStart(ch)) {
      std::string word;
      size_t j = i_;
      while (j < text_.size() && identChar(text_[j])) word += text_[j++];
      bump(j - i_);
      if (word == "Type") tok_ = {Tok::KwType, word, tok_.pos};
      else if (word == "Lock") tok_ = {Tok::KwLockTy, word, tok_.pos};
      else if (word == "lock") tok_ = {Tok::KwLockObj, word, tok_.pos};
      else if (word == "unlock") tok_ = {Tok::KwUnlock, word, tok_.pos};
      else if (word == "pred") tok_ = {Tok::KwPred, word, tok_.pos};
      else tok_ = {Tok::Ident, word, tok_.pos};
      return;
    }
    switch (ch) {
      case '!': tok_ = {Tok::Bang, "!", tok_.pos}; bump(1); return;
      case '\\': tok_ = {Tok::Backslash, "\\", tok_.pos}; bump(1); return;
      case ':': tok_ = {Tok::Colon, ":", tok_.pos}; bump(1); return;
      case '.': tok_ = {Tok::Dot, ".", tok_.pos}; bump(1); return;
      case ',': tok_ = {Tok::Comma, ",", tok_.pos}; bump(1); return;
      case '(': tok_ = {Tok::LParen, "(", tok_.pos}; bump(1); return;
      case ')': tok_ = {Tok::RParen, ")", tok_.pos}; bump(1); return;
      case '[': tok_ = {Tok::LBracket, "[", tok_.pos}; bump(1); return;
      case ']': tok_ = {Tok::RBracket, "]", tok_.pos}; bump(1); return;
      case '-':
        if (i_ + 1 < text_.size() && text_[i_ + 1] == '>') {
          tok_ = {Tok::Arrow, "->", tok_.pos};
          bump(2);
          return;
        }
        throw ParseError("stray '-'", tok_.pos);
      case '|':
        if (i_ + 1 < text_.size() && text_[i_ + 1] == '-') {
          tok_ = {Tok::Turnstile, "|-", tok_.pos};
          bump(2);
          return;
        }
        throw ParseError("stray '|'", tok_.pos);
      default:
        throw ParseError(std::string("unexpected character '") + ch + "'", tok_.pos);
    }
  }

  void skipSpace() {
    while (i_ < text_.size()) {
      char ch = text_[i_];
      if (ch == '%') {
        // comment to end of line; %expect-fail <class> becomes a marker token
        Pos markerPos = pos();
        size_t j = i_ + 1;
        std::string word;
        while (j < text_.size() && (identChar(text_[j]) || text_[j] == '-')) word += text_[j++];
        if (word == "expect-fail") {
          bump(j - i_);
          while (i_ < text_.size() && (text_[i_] == ' ' || text_[i_] == '\t')) bump(1);
          std::string cls;
          while (i_ < text_.size() && (identChar(text_[i_]) || text_[i_] == '-')) {
            cls += text_[i_];
            bump(1);
          }
          if (cls.empty()) throw ParseError("%expect-fail needs an error class", markerPos);
          pendingExpect_ = cls;
        }
        while (i_ < text_.size() && text_[i_] != '\n') bump(1);
        continue;
      }
      if (ch == '\n' || ch == '\r' || ch == '\t' || ch == ' ') {
        bump(1);
        continue;
      }
      break;
    }
  }

  void bump(size_t n) {
    for (size_t k = 0; k < n && i_ < text_.size(); ++k, ++i_) {
      if (text_[i_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  Pos pos() const { return {line_, col_}; }

  const std::string& text_;
  size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
  std::optional<std::string> pendingExpect_;
};

struct NameInfo {
  bool isFamily = false;  // classifier is a kind
};

class Parser {
public:
  Parser(const std::string& text, std::string name, std::vector<std::string> builtinPreds)
      : lex_(text), fileName_(std::move(name)) {
    for (auto& p : builtinPreds) predicates_.insert(p);
  }

  SourceFile file() {
    SourceFile out;
    out.name = fileName_;
    std::optional<std::string> expect;
    while (true) {
      Token t = lex_.peek();
      if (t.kind == Tok::Eof) break;
      if (t.kind == Tok::ExpectFail) {
        lex_.next();
        expect = t.text;
        continue;
      }
      if (t.kind == Tok::DirCheck || t.kind == Tok::DirCheckTy || t.kind == Tok::DirNormalize) {
        Directive d = directive();
        d.expectFail = expect;
        expect.reset();
        out.items.push_back({std::nullopt, d});
        continue;
      }
      SourceDecl d = declaration();
      out.items.push_back({d, std::nullopt});
    }
    return out;
  }

  Term termOnly(const std::vector<std::string>& constFamilies,
                const std::vector<std::string>& scope,
                const std::vector<std::string>& preds) {
    for (auto& f : constFamilies) names_[f] = {true};
    for (auto& p : preds) predicates_.insert(p);
    scope_.assign(scope.begin(), scope.end());
    Term t = term();
    expect(Tok::Eof, "end of input");
    return t;
  }

private:
  SourceDecl declaration() {
    Token t = lex_.next();
    if (t.kind == Tok::KwPred) {
      Token id = expect(Tok::Ident, "predicate name");
      expect(Tok::Dot, "'.'");
      if (!predicates_.insert(id.text).second)
        throw ParseError("duplicate predicate declaration '" + id.text + "'", id.pos);
      return {id.text, Term(), true, t.pos};
    }
    if (t.kind != Tok::Ident) throw ParseError("expected a declaration or directive", t.pos);
    expect(Tok::Colon, "':'");
    Term cls = term();
    expect(Tok::Dot, "'.'");
    if (names_.count(t.text))
      throw ParseError("duplicate declaration '" + t.text + "'", t.pos);
    names_[t.text] = {level(cls) == Level::Kind};
    return {t.text, cls, false, t.pos};
  }

  Directive directive() {
    Token t = lex_.next();
    Directive d;
    d.pos = t.pos;
    if (t.kind == Tok::DirNormalize) {
      d.kind = Directive::Kind::Normalize;
      d.subject = term();
      expect(Tok::Dot, "'.'");
      return d;
    }
    d.kind = t.kind == Tok::DirCheck ? Directive::Kind::Check : Directive::Kind::CheckTy;
    // context: empty or comma-separated bindings, then |-
    scope_.clear();
    if (lex_.peek().kind != Tok::Turnstile) {
      while (true) {
        Token id = expect(Tok::Ident, "context variable");
        expect(Tok::Colon, "':'");
        Term ty = term();
        d.ctx.push_back({id.text, ty});
        scope_.push_back(id.text);
        if (lex_.peek().kind == Tok::Comma) {
          lex_.next();
          continue;
        }
        break;
      }
    }
    expect(Tok::Turnstile, "'|-'");
    d.subject = term();
    expect(Tok::Colon, "':'");
    if (d.kind == Directive::Kind::CheckTy) {
      expect(Tok::KwType, "'Type'");
      d.classifier = tType();
    } else {
      d.classifier = term();
    }
    expect(Tok::Dot, "'.'");
    scope_.clear();
    return d;
  }

  // term := binder forms | arrow
  Term term() {
    Token t = lex_.peek();
    if (t.kind == Tok::Bang) return binder(true);
    if (t.kind == Tok::Backslash) return binder(false);
    Term lhs = application();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.next();
      Term rhs = term();
      if (level(lhs) != Level::Family)
        throw ParseError("'->' expects a type on the left", t.pos);
      return arrow(lhs, rhs);
    }
    return lhs;
  }

  Term binder(bool isPi) {
    Token head = lex_.next();
    Token id = expect(Tok::Ident, "binder name");
    expect(Tok::Colon, "':'");
    Term dom = term();
    expect(Tok::Dot, "'.'");
    scope_.push_back(id.text);
    Term body = term();
    scope_.pop_back();
    if (level(dom) != Level::Family)
      throw ParseError("binder domain must be a type", head.pos);
    if (isPi) {
      if (level(body) == Level::Kind) return kindPi(id.text, dom, body);
      if (level(body) != Level::Family)
        throw ParseError("Pi body must be a type or kind", head.pos);
      return famPi(id.text, dom, body);
    }
    if (level(body) != Level::Object)
      throw ParseError("abstraction body must be an object", head.pos);
    return abs(id.text, dom, body);
  }

  Term application() {
    Token start = lex_.peek();
    Term head = atomOrFail();
    while (atomAhead()) {
      Term arg = atomOrFail();
      if (level(head) == Level::Family) {
        if (level(arg) != Level::Object)
          throw ParseError("type families apply to objects", start.pos);
        head = famApp(head, arg);
      } else if (level(head) == Level::Object) {
        if (level(arg) != Level::Object)
          throw ParseError("objects apply to objects", start.pos);
        head = app(head, arg);
      } else {
        throw ParseError("kinds cannot be applied", start.pos);
      }
    }
    return head;
  }

  bool atomAhead() {
    switch (lex_.peek().kind) {
      case Tok::Ident:
      case Tok::KwType:
      case Tok::LParen:
      case Tok::KwLockTy:
      case Tok::KwLockObj:
      case Tok::KwUnlock:
        return true;
      default:
        return false;
    }
  }

  Term atomOrFail() {
    Token t = lex_.next();
    switch (t.kind) {
      case Tok::KwType:
        return tType();
      case Tok::LParen: {
        Term inner = term();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::KwLockTy:
      case Tok::KwLockObj:
      case Tok::KwUnlock: {
        expect(Tok::LBracket, "'['");
        Token pid = expect(Tok::Ident, "predicate name");
        if (!predicates_.count(pid.text))
          throw ParseError("unknown predicate '" + pid.text + "'", pid.pos);
        expect(Tok::Comma, "','");
        Term witness = term();
        expect(Tok::Comma, "','");
        Term witnessTy = term();
        expect(Tok::RBracket, "']'");
        expect(Tok::LParen, "'('");
        Term body = term();
        expect(Tok::RParen, "')'");
        if (level(witness) != Level::Object)
          throw ParseError("lock witness must be an object", t.pos);
        if (level(witnessTy) != Level::Family)
          throw ParseError("lock witness type must be a type", t.pos);
        if (t.kind == Tok::KwLockTy) {
          if (level(body) != Level::Family)
            throw ParseError("Lock[...] encloses a type", t.pos);
          return lockTy(pid.text, witness, witnessTy, body);
        }
        if (level(body) != Level::Object)
          throw ParseError("lock/unlock enclose an object", t.pos);
        if (t.kind == Tok::KwLockObj) return lock(pid.text, witness, witnessTy, body);
        return unlock(pid.text, witness, witnessTy, body);
      }
      case Tok::Ident: {
        // innermost binding wins
        for (int i = static_cast<int>(scope_.size()) - 1; i >= 0; --i) {
          if (scope_[i] == t.text)
            return var(static_cast<int>(scope_.size()) - 1 - i, t.text);
        }
        auto it = names_.find(t.text);
        if (it != names_.end() && it->second.isFamily) return famConst(t.text);
        // unknown names parse as object constants; the kernel reports them
        return objConst(t.text);
      }
      default:
        throw ParseError("expected a term", t.pos);
    }
  }

  Token expect(Tok kind, const std::string& what) {
    Token t = lex_.next();
    if (t.kind != kind) throw ParseError("expected " + what, t.pos);
    return t;
  }

  Lexer lex_;
  std::string fileName_;
  std::map<std::string, NameInfo> names_;
  std::set<std::string> predicates_;
  std::vector<std::string> scope_;
};

}  // namespace

SourceFile parseFile(const std::string& text, const std::string& name,
                     const std::vector<std::string>& extraPredicates) {
  Parser p(text, name, extraPredicates);
  return p.file();
}

Term parseTerm(const std::string& text, const std::vector<std::string>& constFamilies,
               const std::vector<std::string>& scope, const std::vector<std::string>& predicates) {
  Parser p(text, "<term>", {});
  return p.termOnly(constFamilies, scope, predicates);
}

namespace {

void collectNames(Term t, std::set<std::string>& out) {
  if (t.empty()) return;
  if (t.tag() == Tag::FamConst || t.tag() == Tag::ObjConst) out.insert(t.name());
  collectNames(t.a(), out);
  collectNames(t.b(), out);
  collectNames(t.c(), out);
}

std::string freshen(const std::string& hint, const std::set<std::string>& avoid) {
  std::string base = hint.empty() || hint == "_" ? "x" : hint;
  if (!avoid.count(base)) return base;
  std::string cand = base;
  do {
    cand += '\'';
  } while (avoid.count(cand));
  return cand;
}

// prec: 0 = term (arrows, binders), 1 = application, 2 = atom
void print(Term t, std::vector<std::string>& scope, std::set<std::string>& used, int prec,
           std::string& out) {
  auto paren = [&](int need, auto&& body) {
    if (prec > need) out += '(';
    body();
    if (prec > need) out += ')';
  };
  switch (t.tag()) {
    case Tag::Type:
      out += "Type";
      return;
    case Tag::FamConst:
    case Tag::ObjConst:
      out += t.name();
      return;
    case Tag::Var: {
      int i = t.index();
      if (i >= 0 && i < static_cast<int>(scope.size()))
        out += scope[scope.size() - 1 - i];
      else
        out += "?" + std::to_string(i);
      return;
    }
    case Tag::KindPi:
    case Tag::FamPi: {
      if (!occursFree(t.b(), 0)) {
        paren(0, [&] {
          print(t.a(), scope, used, 1, out);
          out += " -> ";
          // non-dependent: unshift by printing under a dummy binding
          scope.push_back("_");
          print(t.b(), scope, used, 0, out);
          scope.pop_back();
        });
        return;
      }
      paren(0, [&] {
        std::string x = freshen(t.name(), used);
        out += "!" + x + ":";
        print(t.a(), scope, used, 1, out);
        out += ". ";
        scope.push_back(x);
        used.insert(x);
        print(t.b(), scope, used, 0, out);
        scope.pop_back();
      });
      return;
    }
    case Tag::Abs: {
      paren(0, [&] {
        std::string x = freshen(t.name(), used);
        out += "\\" + x + ":";
        print(t.a(), scope, used, 1, out);
        out += ". ";
        scope.push_back(x);
        used.insert(x);
        print(t.b(), scope, used, 0, out);
        scope.pop_back();
      });
      return;
    }
    case Tag::FamApp:
    case Tag::App: {
      paren(1, [&] {
        print(t.a(), scope, used, 1, out);
        out += ' ';
        print(t.b(), scope, used, 2, out);
      });
      return;
    }
    case Tag::LockTy:
    case Tag::Lock:
    case Tag::Unlock: {
      out += t.tag() == Tag::LockTy ? "Lock" : (t.tag() == Tag::Lock ? "lock" : "unlock");
      out += '[';
      out += t.name();
      out += ',';
      print(t.a(), scope, used, 0, out);
      out += ',';
      print(t.b(), scope, used, 0, out);
      out += "](";
      print(t.c(), scope, used, 0, out);
      out += ')';
      return;
    }
  }
}

}  // namespace

std::string printTerm(Term t, const std::vector<std::string>& scope) {
  std::string out;
  std::vector<std::string> sc(scope.begin(), scope.end());
  std::set<std::string> used;
  collectNames(t, used);
  for (auto& s : sc) used.insert(s);
  print(t, sc, used, 0, out);
  return out;
}

std::string printBindings(const std::vector<Binding>& ctx) {
  std::string out;
  std::vector<std::string> scope;
  for (size_t i = 0; i < ctx.size(); ++i) {
    if (i) out += ", ";
    out += ctx[i].name + ":";
    out += printTerm(ctx[i].type, scope);
    scope.push_back(ctx[i].name);
  }
  return out;
}

}  // namespace llfp
