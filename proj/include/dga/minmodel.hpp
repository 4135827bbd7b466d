#pragma once

#include <memory>

#include "dga/cdga.hpp"

namespace dga {

// One construction stage: which generator spaces were adjoined while working
// on the given cohomological degree at the given Adams degree.
struct StageLog {
  int adams = 0;
  int degree = 0;
  std::string action;  // "classes" or "killers"
  SemisimpleObject added;
};

struct MinimalModelResult {
  FreeCdgaPresentation model;
  // the model materialized on degrees 0..n+2 and Adams 0..adams_max; psi
  // points into this, so the expansion is shared with the result
  std::shared_ptr<const LevelwiseCdga> model_expanded;
  CdgaMorphism psi;  // model -> the input algebra (which must outlive psi)
  std::vector<StageLog> log;
  // H^i(psi) iso for i <= n and injective at n+1 on Adams 1..adams_max,
  // and the model differential is decomposable: checked after the build
  bool verified = false;
};

// Degreewise construction of the n-minimal model: per Adams degree, adjoin
// closed generators for the missing cohomology classes in degrees <= n and
// kill kernel classes one degree below them, ending with the injectivity
// repair at degree n+1. Kill rounds that fail to settle within stage_budget
// stages per Adams degree raise NonTermination.
MinimalModelResult minimal_model(const LevelwiseCdga& a, int n, int adams_max,
                                 int stage_budget = 64);

// no generator differential has a linear term
bool is_minimal(const FreeCdgaPresentation& p);

// the generator filtration with d(stage q) inside the subalgebra of stages
// < q exhausts all generators visible in the window
bool is_generalized_nilpotent(const FreeCdgaPresentation& p, Window w);

// Greedy images for a map s -> a, built stagewise in Adams order: closed
// generators are sent to fresh cohomology class representatives, the others
// to equivariant primitives of the images of their differentials. Throws
// AlgebraError when some generator admits no compatible image.
std::vector<Mat> fit_generator_images(const FreeCdgaPresentation& s,
                                      const LevelwiseCdga& s_exp, const LevelwiseCdga& a);

}  // namespace dga
