#pragma once
// Semisimple representation bookkeeping for the two supported groups: the
// multiplicative group (irreducibles = integer weights, all one dimensional)
// and GL2 (irreducibles = sym(a) twisted by det powers). Concrete model
// spaces carry torus weights plus sl2 raising/lowering operators, and all
// decompositions run through highest weight vectors, which keeps every basis
// deterministic. The Adams degree of an irreducible is minus its central
// weight, so the faithful weight -1 character sits in Adams degree 1.
#include "dga/exactla.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace dga {

enum class GroupKind { Gm, GL2 };
std::string to_string(GroupKind g);

struct IrrLabel {
  GroupKind group = GroupKind::Gm;
  int weight = 0;        // Gm: the character t -> t^weight
  int sym = 0, det = 0;  // GL2: Sym^sym(std) tensored with det^det

  static IrrLabel gm(int w);
  static IrrLabel gl2(int sym, int det);
  static IrrLabel trivial(GroupKind g);
  bool operator==(const IrrLabel&) const = default;
  bool operator<(const IrrLabel& o) const;
};
std::string to_string(const IrrLabel& l);

Index dim_of(const IrrLabel& l);        // Gm: 1; GL2: sym+1
int central_weight(const IrrLabel& l);  // Gm: weight; GL2: sym + 2*det
int adams_of(const IrrLabel& l);        // minus the central weight
IrrLabel dual(const IrrLabel& l);       // Gm: -w; GL2: (sym, -sym-det)

struct SemisimpleObject {
  GroupKind group = GroupKind::Gm;
  std::map<IrrLabel, int> mult;  // strictly positive multiplicities only
  Index dim() const;
  void add(const IrrLabel& l, int k = 1);
  bool operator==(const SemisimpleObject&) const = default;
};
SemisimpleObject dual(const SemisimpleObject& x);
Index hom_dim(const SemisimpleObject& x, const SemisimpleObject& y);
Index invariants_dim(const SemisimpleObject& x);

// Torus weight of a basis vector; Gm uses entry 0 only.
using Weight = std::array<int, 2>;

// A concrete representation: each basis vector has a pure torus weight, and
// e/f give the sl2 action (zero matrices for Gm). e raises, f lowers.
struct RepSpace {
  GroupKind group = GroupKind::Gm;
  std::vector<Weight> weights;
  Mat e, f;
  Index dim() const { return static_cast<Index>(weights.size()); }
  static RepSpace empty(GroupKind g);
};

// Model of one irreducible. For GL2 sym(a)det(b) the basis vector i stands
// for x^(a-i) y^i det^b, so index 0 is the highest weight vector, with
// e(i) = i*(i-1) and f(i) = (a-i)*(i+1) as index maps.
RepSpace model_space(const IrrLabel& l);
Weight highest_weight(const IrrLabel& l);
IrrLabel label_of_highest_weight(GroupKind g, Weight w);
bool weight_dominant(GroupKind g, Weight w);

RepSpace tensor(const RepSpace& x, const RepSpace& y);
RepSpace direct_sum(const RepSpace& x, const RepSpace& y);

// Basis of { v : v has pure weight w and e.v = 0 }, optionally intersected
// with a G-stable subspace given by spanning columns.
Mat hw_vectors(const RepSpace& x, Weight w);
Mat hw_vectors_in(const RepSpace& x, Weight w, const Mat& span);

SemisimpleObject decompose(const RepSpace& x);
SemisimpleObject decompose_span(const RepSpace& x, const Mat& span);

// Full irreducible copy generated by a highest weight vector: column i is
// the image of model basis vector i (lowering operators normalized to match
// the model, so this commutes with e, f and the torus on the nose).
Mat embed_copy(const RepSpace& x, const IrrLabel& l, const Vec& hw);

// V_x ⊗ V_y split into irreducibles, in the pair basis (i,j) -> i*dim(y)+j.
// Highest weight vectors are normalized to leading coefficient 1; GL2
// summands appear with sym descending (the usual Clebsch-Gordan ladder).
struct TensorDecomposition {
  std::vector<IrrLabel> labels;
  std::vector<Mat> inc;   // dim(x)*dim(y) x dim(label)
  std::vector<Mat> proj;  // dim(label) x dim(x)*dim(y)
};
const TensorDecomposition& tensor_decompose(const IrrLabel& x, const IrrLabel& y);

// Invariant pairing dual(l) ⊗ l -> Q as a matrix over the two model bases.
Mat pairing_matrix(const IrrLabel& l);

}  // namespace dga
