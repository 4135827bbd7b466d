#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dga/repsemi.hpp"

namespace dga {

// Errors shared by the algebra layer. Everything derives from AlgebraError
// so callers can catch the whole family at once.
struct AlgebraError : std::runtime_error {
  explicit AlgebraError(const std::string& msg) : std::runtime_error(msg) {}
};
struct InvalidGenerator : AlgebraError {
  using AlgebraError::AlgebraError;
};
struct WindowTooSmall : AlgebraError {
  using AlgebraError::AlgebraError;
};
struct OutOfWindow : AlgebraError {
  using AlgebraError::AlgebraError;
};
struct NotConnected : AlgebraError {
  using AlgebraError::AlgebraError;
};
struct NotAdamsConnected : AlgebraError {
  using AlgebraError::AlgebraError;
};
struct NotCohConnected : AlgebraError {
  using AlgebraError::AlgebraError;
};
struct NonTermination : AlgebraError {
  using AlgebraError::AlgebraError;
};
struct InvalidMorphism : AlgebraError {
  using AlgebraError::AlgebraError;
};

// Cohomological degree n together with the Adams degree r.
struct Bidegree {
  int n = 0;
  int r = 0;
  auto operator<=>(const Bidegree&) const = default;
};
std::string to_string(Bidegree bd);

// The finite region where a levelwise algebra is materialized. Reads outside
// the window fail loudly instead of silently returning zero.
struct Window {
  int n_min = 0;
  int n_max = 0;
  int r_min = 0;
  int r_max = 0;
  static Window upto(int n_max, int r_max) { return Window{0, n_max, 0, r_max}; }
  bool operator==(const Window&) const = default;
  bool contains(Bidegree bd) const {
    return bd.n >= n_min && bd.n <= n_max && bd.r >= r_min && bd.r <= r_max;
  }
};

// ---------------------------------------------------------------------------
// presentations

struct GenDecl {
  std::string name;
  int deg = 1;
  IrrLabel label;  // Adams degree is -central_weight(label)
};

// One summand of a generator differential: coeff times the copy-th embedding
// of the generator's label into the span of monomials with the given
// generator multiset. For Gm every profile carries exactly one copy.
struct DiffTerm {
  Rational coeff;
  std::vector<int> profile;  // generator indices, sorted, with multiplicity
  int copy = 0;
  bool operator==(const DiffTerm&) const = default;
};

struct FreeCdgaPresentation {
  GroupKind group = GroupKind::Gm;
  std::vector<GenDecl> gens;
  std::map<int, std::vector<DiffTerm>> diff;  // generator index -> terms

  int adams(int g) const { return adams_of(gens.at(g).label); }
  int find(const std::string& name) const;  // -1 if absent
};

// ---------------------------------------------------------------------------
// monomials

// A variable is one model-basis slot of one generator.
using VarId = std::pair<int, int>;  // (generator index, model component)

// Sorted multiset of variables. Power-lex order puts higher powers of the
// earlier variable first, so x^2 < xy < y^2.
using Monomial = std::vector<std::pair<VarId, int>>;

// Flattened letter sequence, one letter per power.
using Word = std::vector<VarId>;

Word mono_to_word(const Monomial& m);
Monomial word_to_mono(const Word& w);
bool mono_less(const Monomial& a, const Monomial& b);

// Sort the concatenation a.b, counting Koszul transpositions between odd
// letters. Returns nothing when an odd letter would repeat.
std::optional<std::pair<Word, int>> word_merge(const Word& a, const Word& b,
                                               const std::vector<int>& letter_deg);

// ---------------------------------------------------------------------------
// levelwise algebra

struct Component {
  std::vector<Monomial> basis;
  RepSpace rep;
  std::map<Monomial, Index, bool (*)(const Monomial&, const Monomial&)> index{mono_less};
};

struct DiffBlock {
  Bidegree target;
  Mat m;  // dim(target) x dim(source)
};

struct ProdBlock {
  Bidegree target;
  Mat m;  // dim(target) x dim(a)*dim(b), column i*dim(b)+j for a_i * b_j
};

struct LevelwiseCdga {
  GroupKind group = GroupKind::Gm;
  Window window;
  std::vector<GenDecl> gens;
  std::map<Bidegree, Component> comps;
  std::map<Bidegree, std::vector<DiffBlock>> diff;
  std::map<std::pair<Bidegree, Bidegree>, ProdBlock> prod;
  std::vector<Mat> gen_diff;  // elaborated generator differentials (may be empty)

  Index dim(Bidegree bd) const;
  const Component* comp(Bidegree bd) const;
  // the matrix of d from bd into (bd.n + 1, bd.r); throws OutOfWindow when
  // the target level is not materialized
  Mat diff_matrix(Bidegree bd) const;
  const ProdBlock* prod_block(Bidegree a, Bidegree b) const;
  // v at bd_a times w at bd_b, as a vector at the product bidegree
  Vec multiply(Bidegree bd_a, const Vec& v, Bidegree bd_b, const Vec& w) const;
  std::string mono_name(Bidegree bd, Index i) const;
};

// Build the free cdga on the presentation, materialized on the window.
// Throws InvalidGenerator for degree < 1 and WindowTooSmall when a declared
// generator differential cannot be stored inside the window.
LevelwiseCdga expand_free(const FreeCdgaPresentation& p, Window w);

// Rewrite a vector of the component at bd as presentation differential
// terms for a generator with the given label (bd must be its target level).
std::vector<DiffTerm> express_in_terms(const LevelwiseCdga& a, Bidegree bd,
                                       const IrrLabel& l, const Vec& hw);

// Elaborate one generator differential into the matrix model(label) -> target
// component. Exposed for reuse by the morphism and module layers.
Mat elaborate_diff_terms(const LevelwiseCdga& a, const IrrLabel& l, Bidegree target,
                         const std::vector<DiffTerm>& terms);

// span of the basis monomials whose generator multiset equals the profile
Mat profile_span(const Component& c, const std::vector<int>& profile);

// restrict a representation to the span of weight pure columns
RepSpace restrict_rep(const RepSpace& r, const Mat& cols);

// multiplicities of the quotient of a representation by an invariant span
SemisimpleObject quotient_object(const RepSpace& rep, const Mat& span_cols);

// ---------------------------------------------------------------------------
// structure checks

struct CheckViolation {
  std::string kind;  // degree, adams, d-squared, leibniz, commutativity,
                     // associativity, equivariance, unit, shape
  std::string where;
};

struct CheckReport {
  std::vector<CheckViolation> violations;
  bool ok() const { return violations.empty(); }
  bool has(const std::string& kind) const;
};

CheckReport check_cdga(const LevelwiseCdga& a);

struct ConnectivityReport {
  bool connected = false;        // A^0 = Q and nothing below degree 0
  bool adams_connected = false;  // connected, A<<0>> = Q, nothing below Adams 0
  bool coh_connected = false;    // H^0 = Q concentrated in Adams 0
};

ConnectivityReport connectivity(const LevelwiseCdga& a);

// ---------------------------------------------------------------------------
// cohomology

struct Cohomology {
  Bidegree bd;
  SemisimpleObject obj;
  std::map<IrrLabel, Mat> hw_reps;           // one column per copy, cocycles
  std::map<IrrLabel, std::vector<Mat>> reps;  // full copies, dim x dim(label)
  Mat kernel;
  Mat image;
};

// Requires the window to hold bd and the target of d from bd. Incoming
// differentials from below the window are only taken as zero at the bottom
// edge of a degree-0-based window.
Cohomology cohomology(const LevelwiseCdga& a, Bidegree bd);

// coordinates of an HW cocycle in the chosen representative basis of the
// label-l isotypic part of the cohomology
Vec class_coords(const Cohomology& h, const IrrLabel& l, const Vec& hw_cocycle);

// indecomposables Q(A) = IA / IA*IA per bidegree
std::map<Bidegree, SemisimpleObject> indecomposables(const LevelwiseCdga& a);

// ---------------------------------------------------------------------------
// morphisms

// A map of cdgas out of a free presentation, given on generators. The image
// of generator g spans an equivariant copy of its label, stored as the full
// matrix model(label) -> target component.
struct CdgaMorphism {
  const LevelwiseCdga* src = nullptr;
  const LevelwiseCdga* tgt = nullptr;
  std::vector<Mat> gen_images;  // per generator; 0x0 when outside the window

  Mat matrix_at(Bidegree bd) const;
};

// verifies dimensions, equivariance of the generator images, and that the
// induced map commutes with d wherever both sides are materialized
CheckReport check_morphism(const CdgaMorphism& f);

// per-label matrix of H(f) at bd, rows indexed by target copies
std::map<IrrLabel, Mat> cohomology_map(const CdgaMorphism& f, Bidegree bd);

// true when H(f) is an isomorphism at every bidegree in the window interior
// (all n with n+1 <= n_max on both sides)
bool compare_quasi_iso(const CdgaMorphism& f, Window w);

}  // namespace dga
