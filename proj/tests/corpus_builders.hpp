#pragma once

#include "dga/cdga.hpp"

/* small algebras reused across the test files */
namespace corpus {

using namespace dga;

inline FreeCdgaPresentation rationals_gm() {
  FreeCdgaPresentation p;
  p.group = GroupKind::Gm;
  return p;
}

/* one odd generator in degree 1, Adams 1 */
inline FreeCdgaPresentation lambda_x() {
  FreeCdgaPresentation p;
  p.group = GroupKind::Gm;
  p.gens.push_back({"x", 1, IrrLabel::gm(-1)});
  return p;
}

inline FreeCdgaPresentation lambda_xy() {
  FreeCdgaPresentation p;
  p.group = GroupKind::Gm;
  p.gens.push_back({"x", 1, IrrLabel::gm(-1)});
  p.gens.push_back({"y", 1, IrrLabel::gm(-1)});
  return p;
}

/* x, y in Adams 1 and z in Adams 2 with dz = xy */
inline FreeCdgaPresentation heisenberg() {
  FreeCdgaPresentation p;
  p.group = GroupKind::Gm;
  p.gens.push_back({"x", 1, IrrLabel::gm(-1)});
  p.gens.push_back({"y", 1, IrrLabel::gm(-1)});
  p.gens.push_back({"z", 1, IrrLabel::gm(-2)});
  p.diff[2] = {DiffTerm{rat(1), {0, 1}, 0}};
  return p;
}

/* one even generator in degree 2, Adams 1 */
inline FreeCdgaPresentation sym_u() {
  FreeCdgaPresentation p;
  p.group = GroupKind::Gm;
  p.gens.push_back({"u", 2, IrrLabel::gm(-1)});
  return p;
}

/* exterior algebra on the two dimensional faithful representation */
inline FreeCdgaPresentation gl2_lambda_f() {
  FreeCdgaPresentation p;
  p.group = GroupKind::GL2;
  p.gens.push_back({"F", 1, IrrLabel::gl2(1, -1)});
  return p;
}

/* contractible: du = w, both in Adams 2 */
inline FreeCdgaPresentation acyclic_uw() {
  FreeCdgaPresentation p;
  p.group = GroupKind::Gm;
  p.gens.push_back({"u", 1, IrrLabel::gm(-2)});
  p.gens.push_back({"w", 2, IrrLabel::gm(-2)});
  p.diff[0] = {DiffTerm{rat(1), {1}, 0}};
  return p;
}

/* lambda_x with a contractible pair glued on */
inline FreeCdgaPresentation lambda_x_acyclic() {
  FreeCdgaPresentation p;
  p.group = GroupKind::Gm;
  p.gens.push_back({"x", 1, IrrLabel::gm(-1)});
  p.gens.push_back({"u", 1, IrrLabel::gm(-2)});
  p.gens.push_back({"w", 2, IrrLabel::gm(-2)});
  p.diff[1] = {DiffTerm{rat(1), {2}, 0}};
  return p;
}

}  // namespace corpus
