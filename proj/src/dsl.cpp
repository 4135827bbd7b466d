#include "dga/dsl.hpp"

#include <algorithm>
#include <sstream>

#include "dga/bar.hpp"

namespace dga {

namespace {

struct Token {
  enum Type { Ident, Int, Punct, End };
  Type type = End;
  std::string text;
  int line = 1;
  int col = 1;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto bump = [&](size_t n) {
    for (size_t t = 0; t < n; ++t) {
      if (text[i + t] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      bump(1);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') bump(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.col = col;
    if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < text.size() &&
             (isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      tok.type = Token::Ident;
      tok.text = text.substr(i, j - i);
      bump(j - i);
    } else if (isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() && isdigit(static_cast<unsigned char>(text[j]))) ++j;
      tok.type = Token::Int;
      tok.text = text.substr(i, j - i);
      bump(j - i);
    } else if (static_cast<unsigned char>(c) == 0xE2 && i + 2 < text.size() &&
               static_cast<unsigned char>(text[i + 1]) == 0x8A &&
               static_cast<unsigned char>(text[i + 2]) == 0x97) {
      tok.type = Token::Punct;
      tok.text = "\xE2\x8A\x97";  // the tensor sign
      bump(3);
    } else if (std::string("{}():;,*+-/#=").find(c) != std::string::npos) {
      tok.type = Token::Punct;
      tok.text = std::string(1, c);
      bump(1);
    } else {
      throw ParseError(line, col, {"token"}, std::string(1, c));
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.type = Token::End;
  end.text = "end of input";
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;

  const Token& peek() const { return toks[pos]; }
  const Token& next() { return toks[pos++]; }
  bool at(const std::string& s) const {
    return peek().type != Token::End && peek().text == s;
  }
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw ParseError(t.line, t.col, std::move(expected),
                     t.type == Token::End ? t.text : "'" + t.text + "'");
  }
  void expect(const std::string& s) {
    if (!at(s)) fail({"'" + s + "'"});
    ++pos;
  }
  std::string ident(const std::string& what) {
    if (peek().type != Token::Ident) fail({what});
    return next().text;
  }
  int integer() {
    bool neg = false;
    if (at("-")) {
      ++pos;
      neg = true;
    }
    if (peek().type != Token::Int) fail({"integer"});
    int v = std::stoi(next().text);
    return neg ? -v : v;
  }

  Rational rational() {
    bool neg = false;
    if (at("-")) {
      ++pos;
      neg = true;
    }
    if (peek().type != Token::Int) fail({"number"});
    long num = std::stol(next().text);
    long den = 1;
    if (at("/")) {
      ++pos;
      if (peek().type != Token::Int) fail({"integer"});
      den = std::stol(next().text);
    }
    return rat(neg ? -num : num, den);
  }

  AstLabel label() {
    AstLabel l;
    std::string head = ident("'w' or 'sym'");
    if (head == "w") {
      l.kind = AstLabel::GmRep;
      expect("(");
      l.a = integer();
      expect(")");
    } else if (head == "sym") {
      l.kind = AstLabel::Gl2Rep;
      expect("(");
      l.a = integer();
      expect(")");
      std::string det = ident("'det'");
      if (det != "det") fail({"'det'"});
      expect("(");
      l.b = integer();
      expect(")");
    } else {
      --pos;
      fail({"'w'", "'sym'"});
    }
    return l;
  }

  /* the ": deg INT, adams INT|rep LABEL ;" tail shared by gen and vec */
  AstGen grading(std::string name) {
    AstGen g;
    g.name = std::move(name);
    expect(":");
    std::string kw = ident("'deg'");
    if (kw != "deg") fail({"'deg'"});
    g.deg = integer();
    expect(",");
    std::string how = ident("'adams' or 'rep'");
    if (how == "adams") {
      g.label.kind = AstLabel::Adams;
      g.label.a = integer();
    } else if (how == "rep") {
      g.label = label();
    } else {
      --pos;
      fail({"'adams'", "'rep'"});
    }
    expect(";");
    return g;
  }

  /* coeff and factor list shared by cdga terms and glue terms */
  std::pair<Rational, bool> term_head() {
    Rational coeff = rat(1);
    bool had_sign = false;
    if (at("-")) {
      ++pos;
      coeff = rat(-1);
      had_sign = true;
    }
    if (peek().type == Token::Int) {
      Rational mag = rational();
      coeff *= mag;
      expect("*");
    }
    return {coeff, had_sign};
  }

  void factors(std::vector<std::string>& out, int& copy) {
    out.push_back(ident("name"));
    while (at("*")) {
      ++pos;
      out.push_back(ident("name"));
    }
    copy = 0;
    if (at("#")) {
      ++pos;
      if (peek().type != Token::Int) fail({"integer"});
      copy = std::stoi(next().text);
    }
  }

  bool poly_is_zero() {
    if (peek().type == Token::Int && peek().text == "0" &&
        toks[pos + 1].type == Token::Punct && toks[pos + 1].text == ";") {
      ++pos;
      return true;
    }
    return false;
  }

  std::vector<AstTerm> poly() {
    std::vector<AstTerm> out;
    if (poly_is_zero()) return out;
    for (;;) {
      AstTerm t;
      t.coeff = term_head().first;
      factors(t.factors, t.copy);
      out.push_back(std::move(t));
      if (at("+")) {
        ++pos;
        continue;
      }
      if (at("-")) continue;  // sign belongs to the next term
      break;
    }
    return out;
  }

  std::vector<AstMDiffTerm> mpoly() {
    std::vector<AstMDiffTerm> out;
    if (poly_is_zero()) return out;
    for (;;) {
      AstMDiffTerm t;
      t.coeff = term_head().first;
      t.vec = ident("vector name");
      out.push_back(std::move(t));
      if (at("+")) {
        ++pos;
        continue;
      }
      if (at("-")) continue;
      break;
    }
    return out;
  }

  std::vector<AstGlueTerm> gpoly() {
    std::vector<AstGlueTerm> out;
    if (poly_is_zero()) return out;
    for (;;) {
      AstGlueTerm t;
      t.coeff = term_head().first;
      factors(t.factors, t.copy);
      expect("\xE2\x8A\x97");
      t.vec = ident("vector name");
      out.push_back(std::move(t));
      if (at("+")) {
        ++pos;
        continue;
      }
      if (at("-")) continue;
      break;
    }
    return out;
  }

  AstCdga cdga() {
    AstCdga c;
    c.name = ident("name");
    expect("{");
    while (!at("}")) {
      if (at("gen")) {
        ++pos;
        c.gens.push_back(grading(ident("name")));
      } else if (at("d")) {
        ++pos;
        AstDiff d;
        d.target = ident("name");
        expect("=");
        d.terms = poly();
        expect(";");
        c.diffs.push_back(std::move(d));
      } else {
        fail({"'gen'", "'d'", "'}'"});
      }
    }
    ++pos;
    return c;
  }

  AstModule module() {
    AstModule m;
    m.name = ident("name");
    std::string over = ident("'over'");
    if (over != "over") fail({"'over'"});
    m.over = ident("name");
    expect("{");
    while (!at("}")) {
      if (at("vec")) {
        ++pos;
        m.vecs.push_back(grading(ident("name")));
      } else if (at("dM")) {
        ++pos;
        AstMDiff d;
        d.target = ident("name");
        expect("=");
        d.terms = mpoly();
        expect(";");
        m.mdiffs.push_back(std::move(d));
      } else if (at("G")) {
        ++pos;
        AstGlue g;
        g.target = ident("name");
        expect("=");
        g.terms = gpoly();
        expect(";");
        m.glues.push_back(std::move(g));
      } else {
        fail({"'vec'", "'dM'", "'G'", "'}'"});
      }
    }
    ++pos;
    return m;
  }

  AstFile file() {
    AstFile f;
    std::string kw = ident("'group'");
    if (kw != "group") fail({"'group'"});
    std::string g = ident("'Gm' or 'GL2'");
    if (g == "Gm")
      f.group = GroupKind::Gm;
    else if (g == "GL2")
      f.group = GroupKind::GL2;
    else {
      --pos;
      fail({"'Gm'", "'GL2'"});
    }
    while (peek().type != Token::End) {
      if (at("window")) {
        ++pos;
        Window w;
        w.n_min = integer();
        expect(":");
        w.n_max = integer();
        expect(",");
        w.r_min = integer();
        expect(":");
        w.r_max = integer();
        f.window = w;
      } else if (at("cutoff")) {
        ++pos;
        f.cutoff = integer();
      } else if (at("cdga")) {
        ++pos;
        f.cdgas.push_back(cdga());
      } else if (at("module")) {
        ++pos;
        f.modules.push_back(module());
      } else {
        fail({"'window'", "'cutoff'", "'cdga'", "'module'"});
      }
    }
    return f;
  }
};

// ---------------------------------------------------------------------------
// printing

void print_coeff(std::ostream& os, const Rational& c, bool first) {
  Rational mag = c < 0 ? Rational(-c) : c;
  if (!first)
    os << (c < 0 ? " - " : " + ");
  else if (c < 0)
    os << "-";
  if (mag != 1) os << mag.get_str() << " * ";
}

void print_factors(std::ostream& os, const std::vector<std::string>& fs, int copy) {
  for (size_t i = 0; i < fs.size(); ++i) os << (i ? "*" : "") << fs[i];
  if (copy != 0) os << "#" << copy;
}

void print_grading(std::ostream& os, const AstGen& g) {
  os << g.name << " : deg " << g.deg << ", ";
  switch (g.label.kind) {
    case AstLabel::Adams: os << "adams " << g.label.a; break;
    case AstLabel::GmRep: os << "rep w(" << g.label.a << ")"; break;
    case AstLabel::Gl2Rep:
      os << "rep sym(" << g.label.a << ")det(" << g.label.b << ")";
      break;
  }
  os << ";\n";
}

}  // namespace

ParseError::ParseError(int line_, int col_, std::vector<std::string> expected_,
                       const std::string& got)
    : DslError([&] {
        std::string msg = "line " + std::to_string(line_) + ", col " +
                          std::to_string(col_) + ": expected ";
        for (size_t i = 0; i < expected_.size(); ++i) {
          if (i) msg += expected_.size() == 2 ? " or " : (i + 1 == expected_.size() ? ", or " : ", ");
          msg += expected_[i];
        }
        return msg + ", got " + got;
      }()),
      line(line_),
      col(col_),
      expected(std::move(expected_)) {}

AstFile parse(const std::string& text) {
  Parser p{lex(text)};
  return p.file();
}

std::string print(const AstFile& f) {
  std::ostringstream os;
  os << "group " << to_string(f.group) << "\n";
  if (f.window)
    os << "window " << f.window->n_min << ":" << f.window->n_max << ", "
       << f.window->r_min << ":" << f.window->r_max << "\n";
  if (f.cutoff) os << "cutoff " << *f.cutoff << "\n";
  for (const AstCdga& c : f.cdgas) {
    os << "\ncdga " << c.name << " {\n";
    for (const AstGen& g : c.gens) {
      os << "  gen ";
      print_grading(os, g);
    }
    for (const AstDiff& d : c.diffs) {
      os << "  d " << d.target << " = ";
      if (d.terms.empty()) os << "0";
      for (size_t i = 0; i < d.terms.size(); ++i) {
        print_coeff(os, d.terms[i].coeff, i == 0);
        print_factors(os, d.terms[i].factors, d.terms[i].copy);
      }
      os << ";\n";
    }
    os << "}\n";
  }
  for (const AstModule& m : f.modules) {
    os << "\nmodule " << m.name << " over " << m.over << " {\n";
    for (const AstGen& v : m.vecs) {
      os << "  vec ";
      print_grading(os, v);
    }
    for (const AstMDiff& d : m.mdiffs) {
      os << "  dM " << d.target << " = ";
      if (d.terms.empty()) os << "0";
      for (size_t i = 0; i < d.terms.size(); ++i) {
        print_coeff(os, d.terms[i].coeff, i == 0);
        os << d.terms[i].vec;
      }
      os << ";\n";
    }
    for (const AstGlue& g : m.glues) {
      os << "  G " << g.target << " = ";
      if (g.terms.empty()) os << "0";
      for (size_t i = 0; i < g.terms.size(); ++i) {
        print_coeff(os, g.terms[i].coeff, i == 0);
        print_factors(os, g.terms[i].factors, g.terms[i].copy);
        os << " \xE2\x8A\x97 " << g.terms[i].vec;
      }
      os << ";\n";
    }
    os << "}\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// elaboration

IrrLabel parse_irr_label(GroupKind g, const std::string& text) {
  Parser p{lex(text)};
  AstLabel l;
  if (p.at("adams")) {
    ++p.pos;
    l.kind = AstLabel::Adams;
    l.a = p.integer();
  } else {
    l = p.label();
  }
  if (p.peek().type != Token::End) p.fail({"end of label"});
  return resolve_label(g, l);
}

IrrLabel resolve_label(GroupKind g, const AstLabel& l) {
  switch (l.kind) {
    case AstLabel::Adams:
      if (g != GroupKind::Gm)
        throw DegreeMismatch("adams grading is only defined for group Gm; use rep sym(a)det(b)");
      return IrrLabel::gm(-l.a);
    case AstLabel::GmRep:
      if (g != GroupKind::Gm) throw DegreeMismatch("label w(n) needs group Gm");
      return IrrLabel::gm(l.a);
    case AstLabel::Gl2Rep:
      if (g != GroupKind::GL2) throw DegreeMismatch("label sym(a)det(b) needs group GL2");
      if (l.a < 0) throw DegreeMismatch("sym part of a label cannot be negative");
      return IrrLabel::gl2(l.a, l.b);
  }
  throw DegreeMismatch("unrecognized grading");
}

FreeCdgaPresentation elaborate_cdga(const AstFile& f, const AstCdga& c) {
  FreeCdgaPresentation p;
  p.group = f.group;
  for (const AstGen& g : c.gens) {
    if (p.find(g.name) >= 0) throw NameError("duplicate generator '" + g.name + "'");
    p.gens.push_back({g.name, g.deg, resolve_label(f.group, g.label)});
  }
  for (const AstDiff& d : c.diffs) {
    int gi = p.find(d.target);
    if (gi < 0) throw NameError("differential of unknown generator '" + d.target + "'");
    for (const AstTerm& t : d.terms) {
      DiffTerm dt;
      dt.coeff = t.coeff;
      dt.copy = t.copy;
      for (const std::string& name : t.factors) {
        int fi = p.find(name);
        if (fi < 0) throw NameError("unknown generator '" + name + "' in differential");
        dt.profile.push_back(fi);
      }
      std::sort(dt.profile.begin(), dt.profile.end());
      p.diff[gi].push_back(std::move(dt));
    }
  }
  return p;
}

Connection elaborate_module(const AstModule& m, const LevelwiseCdga& base) {
  Connection c;
  c.base = &base;
  std::vector<CarrierSlot> slots;
  auto slot_of = [&](const std::string& name) -> int {
    for (size_t i = 0; i < slots.size(); ++i)
      if (slots[i].name == name) return static_cast<int>(i);
    return -1;
  };
  for (const AstGen& v : m.vecs) {
    if (slot_of(v.name) >= 0) throw NameError("duplicate vector '" + v.name + "'");
    slots.push_back({v.name, v.deg, resolve_label(base.group, v.label)});
  }
  c.car = make_carrier(base.group, slots);
  Index dm = c.car.dim();
  c.d0 = Mat::Zero(dm, dm);

  for (const AstMDiff& d : m.mdiffs) {
    int s = slot_of(d.target);
    if (s < 0) throw NameError("dM of unknown vector '" + d.target + "'");
    for (const AstMDiffTerm& t : d.terms) {
      int w = slot_of(t.vec);
      if (w < 0) throw NameError("unknown vector '" + t.vec + "' in dM");
      if (!(slots[static_cast<size_t>(w)].label == slots[static_cast<size_t>(s)].label))
        throw DegreeMismatch("dM entry " + d.target + " -> " + t.vec +
                             " changes the representation");
      Index ds = dim_of(slots[static_cast<size_t>(s)].label);
      c.d0.block(c.car.offset[static_cast<size_t>(w)], c.car.offset[static_cast<size_t>(s)],
                 ds, ds) += t.coeff * Mat::Identity(ds, ds);
    }
  }

  auto gen_of = [&](const std::string& name) -> int {
    for (size_t i = 0; i < base.gens.size(); ++i)
      if (base.gens[i].name == name) return static_cast<int>(i);
    return -1;
  };
  for (const AstGlue& g : m.glues) {
    int s = slot_of(g.target);
    if (s < 0) throw NameError("G of unknown vector '" + g.target + "'");
    const IrrLabel& ls = slots[static_cast<size_t>(s)].label;
    for (const AstGlueTerm& t : g.terms) {
      int w = slot_of(t.vec);
      if (w < 0) throw NameError("unknown vector '" + t.vec + "' in G entry");
      const IrrLabel& lw = slots[static_cast<size_t>(w)].label;
      std::vector<int> profile;
      Bidegree bd{0, 0};
      std::string mono;
      for (const std::string& name : t.factors) {
        int fi = gen_of(name);
        if (fi < 0) throw NameError("unknown generator '" + name + "' in G entry");
        profile.push_back(fi);
        bd.n += base.gens[static_cast<size_t>(fi)].deg;
        bd.r += adams_of(base.gens[static_cast<size_t>(fi)].label);
        mono += (mono.empty() ? "" : "*") + name;
      }
      std::sort(profile.begin(), profile.end());
      if (!base.window.contains(bd))
        throw WindowTooSmall("G entry " + mono + " lies outside the window");
      const Component* comp = base.comp(bd);
      Mat span = comp ? profile_span(*comp, profile) : Mat();
      if (span.cols() == 0)
        throw DegreeMismatch("monomial " + mono + " vanishes in the base");
      RepSpace lwrep = model_space(lw);
      RepSpace t2 = tensor(comp->rep, lwrep);
      Mat sub = kron(span, Mat::Identity(lwrep.dim(), lwrep.dim()));
      Mat hw = hw_vectors_in(t2, highest_weight(ls), sub);
      if (t.copy < 0 || t.copy >= hw.cols())
        throw DegreeMismatch("no equivariant copy #" + std::to_string(t.copy) + " of " +
                             g.target + " in " + mono + " \xE2\x8A\x97 " + t.vec);
      Mat full = embed_copy(t2, ls, hw.col(t.copy));
      auto& fam = c.gamma[bd];
      if (fam.empty()) fam.assign(static_cast<size_t>(base.dim(bd)), Mat());
      Index dls = dim_of(ls), dlw = lwrep.dim();
      for (Index k = 0; k < base.dim(bd); ++k) {
        Mat& blk = fam[static_cast<size_t>(k)];
        if (blk.size() == 0) blk = Mat::Zero(dm, dm);
        for (Index jt = 0; jt < dlw; ++jt)
          for (Index js = 0; js < dls; ++js)
            blk(c.car.offset[static_cast<size_t>(w)] + jt,
                c.car.offset[static_cast<size_t>(s)] + js) +=
                t.coeff * full(k * dlw + jt, js);
      }
    }
  }
  for (auto it = c.gamma.begin(); it != c.gamma.end();) {
    bool live = false;
    for (const Mat& blk : it->second)
      if (blk.size() != 0 && !is_zero(blk)) live = true;
    it = live ? std::next(it) : c.gamma.erase(it);
  }
  return c;
}

LoadedFile load_file(const std::string& text, std::optional<Window> window,
                     std::optional<int> cutoff) {
  LoadedFile lf;
  lf.ast = parse(text);
  lf.window = window ? *window : lf.ast.window.value_or(Window::upto(4, 4));
  lf.cutoff = cutoff ? *cutoff : lf.ast.cutoff.value_or(4);
  for (const AstCdga& c : lf.ast.cdgas) {
    if (lf.presentations.count(c.name)) throw NameError("duplicate cdga '" + c.name + "'");
    lf.presentations.emplace(c.name, elaborate_cdga(lf.ast, c));
  }
  for (const auto& [name, p] : lf.presentations)
    lf.expanded.emplace(name, expand_free(p, lf.window));
  for (const AstModule& m : lf.ast.modules) {
    if (lf.modules.count(m.name)) throw NameError("duplicate module '" + m.name + "'");
    auto it = lf.expanded.find(m.over);
    if (it == lf.expanded.end())
      throw NameError("module '" + m.name + "' is over undeclared cdga '" + m.over + "'");
    lf.modules.emplace(m.name, elaborate_module(m, it->second));
  }
  return lf;
}

}  // namespace dga
