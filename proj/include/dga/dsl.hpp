#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dga/connection.hpp"

namespace dga {

// Errors on the input side. These map to exit code 2 in the CLI, unlike
// AlgebraError which signals a mathematical problem with exit code 1.
struct DslError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : DslError {
  int line = 0;
  int col = 0;
  std::vector<std::string> expected;
  ParseError(int line_, int col_, std::vector<std::string> expected_, const std::string& got);
};

struct NameError : DslError {
  using DslError::DslError;
};

struct DegreeMismatch : DslError {
  using DslError::DslError;
};

// ---------------------------------------------------------------------------
// syntax tree

// grading clause of a generator or carrier vector, kept as written
struct AstLabel {
  enum Kind { Adams, GmRep, Gl2Rep };
  Kind kind = Adams;
  int a = 0;  // adams value, or w weight, or sym part
  int b = 0;  // det part
  bool operator==(const AstLabel&) const = default;
};

struct AstGen {
  std::string name;
  int deg = 0;
  AstLabel label;
  bool operator==(const AstGen&) const = default;
};

// one summand of a generator differential: coeff * product of generators,
// with # selecting an equivariant copy when there are several
struct AstTerm {
  Rational coeff;
  std::vector<std::string> factors;
  int copy = 0;
  bool operator==(const AstTerm&) const = default;
};

struct AstDiff {
  std::string target;
  std::vector<AstTerm> terms;
  bool operator==(const AstDiff&) const = default;
};

struct AstCdga {
  std::string name;
  std::vector<AstGen> gens;
  std::vector<AstDiff> diffs;
  bool operator==(const AstCdga&) const = default;
};

struct AstMDiffTerm {
  Rational coeff;
  std::string vec;
  bool operator==(const AstMDiffTerm&) const = default;
};

struct AstMDiff {
  std::string target;
  std::vector<AstMDiffTerm> terms;
  bool operator==(const AstMDiff&) const = default;
};

// one summand of a glue line: coeff * monomial (x) vector
struct AstGlueTerm {
  Rational coeff;
  std::vector<std::string> factors;
  int copy = 0;
  std::string vec;
  bool operator==(const AstGlueTerm&) const = default;
};

struct AstGlue {
  std::string target;
  std::vector<AstGlueTerm> terms;
  bool operator==(const AstGlue&) const = default;
};

struct AstModule {
  std::string name;
  std::string over;
  std::vector<AstGen> vecs;
  std::vector<AstMDiff> mdiffs;
  std::vector<AstGlue> glues;
  bool operator==(const AstModule&) const = default;
};

struct AstFile {
  GroupKind group = GroupKind::Gm;
  std::optional<Window> window;
  std::optional<int> cutoff;
  std::vector<AstCdga> cdgas;
  std::vector<AstModule> modules;
  bool operator==(const AstFile&) const = default;
};

// ---------------------------------------------------------------------------
// parsing and printing

AstFile parse(const std::string& text);

// canonical text form; parse(print(parse(t))) == parse(t)
std::string print(const AstFile& f);

// ---------------------------------------------------------------------------
// elaboration

IrrLabel resolve_label(GroupKind g, const AstLabel& l);

// a lone grading clause, "adams N", "w(N)" or "sym(A)det(B)"
IrrLabel parse_irr_label(GroupKind g, const std::string& text);

FreeCdgaPresentation elaborate_cdga(const AstFile& f, const AstCdga& c);

// base must be the expanded cdga the module's `over` clause names
Connection elaborate_module(const AstModule& m, const LevelwiseCdga& base);

// A whole source file brought to life: presentations, their expansions on the
// resolved window, and the modules glued over them. Connections point into
// `expanded`, so the struct is move only.
struct LoadedFile {
  AstFile ast;
  Window window;
  int cutoff = 4;
  std::map<std::string, FreeCdgaPresentation> presentations;
  std::map<std::string, LevelwiseCdga> expanded;
  std::map<std::string, Connection> modules;

  LoadedFile() = default;
  LoadedFile(const LoadedFile&) = delete;
  LoadedFile& operator=(const LoadedFile&) = delete;
  LoadedFile(LoadedFile&&) = default;
  LoadedFile& operator=(LoadedFile&&) = default;
};

// explicit arguments win over file directives, which win over upto(4, 4) / 4
LoadedFile load_file(const std::string& text, std::optional<Window> window = {},
                     std::optional<int> cutoff = {});

}  // namespace dga
