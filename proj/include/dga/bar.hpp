#pragma once

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "dga/cdga.hpp"

namespace dga {

struct CoJacobiViolation : AlgebraError {
  using AlgebraError::AlgebraError;
};

// one tensor factor of a bar word: basis element i of the component at bd
struct BarEntry {
  Bidegree bd;
  Index i = 0;
  auto operator<=>(const BarEntry&) const = default;
};
using BarWord = std::vector<BarEntry>;

// shifted degree conventions: a factor in degree n counts n-1
int bar_degree(const BarWord& w);
int bar_adams(const BarWord& w);

struct BarLevel {
  std::vector<BarWord> words;
  std::map<BarWord, Index> index;
  RepSpace rep;
};

// the piece of the reduced bar construction in one Adams degree, with the
// levels of shifted total degree lo..hi and the differentials between them
struct BarSlice {
  const LevelwiseCdga* base = nullptr;
  int adams = 0;
  int lo = 0, hi = 0;
  std::map<int, BarLevel> levels;
  std::map<int, Mat> d;  // d[b] maps level b to level b+1, for b in [lo, hi)
  Index dim(int b) const;
};

// needs an Adams connected base covering degrees up to hi+2
BarSlice bar_slice(const LevelwiseCdga& a, int adams, int lo, int hi);

// formal word operations with the shifted degree signs
std::vector<std::pair<BarWord, int>> shuffle_words(const BarWord& x, const BarWord& y);
std::pair<BarWord, int> reverse_word(const BarWord& w);

// degree zero bar cohomology in one Adams degree; every column of kernel is a
// cocycle in level zero word coordinates (there are no coboundaries there)
struct ChiPiece {
  int adams = 0;
  Mat kernel;
  RepSpace rep;
  SemisimpleObject obj;
};

// the Hopf algebra structure carried by the degree zero bar cohomology,
// truncated at adams_max: shuffle products, deconcatenation coproducts and
// the reversal involution, all in kernel coordinates
struct HopfTruncation {
  const LevelwiseCdga* base = nullptr;
  int adams_max = 0;
  std::map<int, BarSlice> slices;
  std::map<int, ChiPiece> chi;
  std::map<std::pair<int, int>, Mat> mult;         // (r,s): chi_r x chi_s -> chi_{r+s}
  std::map<std::tuple<int, int, int>, Mat> comul;  // (r,s,t): chi_r -> chi_s (x) chi_t
  std::map<int, Mat> invol;
  Index dim(int r) const;
};

HopfTruncation hopf_truncation(const LevelwiseCdga& a, int adams_max);

// quotient of chi by shuffle products, kept as explicit lifts: each slot is
// one irreducible copy given by a block of chi coordinates
struct CoLiePiece {
  SemisimpleObject obj;
  std::vector<std::pair<IrrLabel, Mat>> slots;
  Index dim() const;
};

struct CoLieData {
  GroupKind group = GroupKind::Gm;
  int adams_max = 0;
  std::map<int, CoLiePiece> pieces;                    // r = 1..adams_max
  std::map<std::tuple<int, int, int>, Mat> cobracket;  // (r,s,t): gamma_r -> gamma_s (x) gamma_t
  Index dim(int r) const;
};

CoLieData gamma(const HopfTruncation& h);

bool co_jacobi_ok(const CoLieData& g);

// Chevalley Eilenberg style cdga on the dual shifted pieces: one degree one
// generator per slot, d = half the multiplication composed with the cobracket.
// Throws CoJacobiViolation if the cobracket data is inconsistent.
FreeCdgaPresentation sullivan_cdga(const CoLieData& g);

Mat kron(const Mat& a, const Mat& b);

}  // namespace dga
