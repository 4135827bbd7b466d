#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "dga/bar.hpp"
#include "dga/cdga.hpp"

namespace dga {

struct BaseMismatch : AlgebraError {
  using AlgebraError::AlgebraError;
};
struct NotClosed : AlgebraError {
  using AlgebraError::AlgebraError;
};
struct ClosureFailure : AlgebraError {
  using AlgebraError::AlgebraError;
};
struct BaseNotConnected : AlgebraError {
  using AlgebraError::AlgebraError;
};
struct NotCdgaMap : AlgebraError {
  using AlgebraError::AlgebraError;
};
struct NotAComplex : AlgebraError {
  using AlgebraError::AlgebraError;
};
struct NotInHeart : AlgebraError {
  using AlgebraError::AlgebraError;
};

// One generating cell: an irreducible copy placed in a cohomological degree.
// Its Adams degree is determined by the label.
struct CarrierSlot {
  std::string name;
  int deg = 0;
  IrrLabel label;
};

struct Carrier {
  GroupKind group = GroupKind::Gm;
  std::vector<CarrierSlot> slots;
  RepSpace rep;                // concatenated slot model spaces
  std::vector<Index> offset;   // first column of each slot
  std::vector<int> col_deg;    // per column
  std::vector<int> col_adams;  // per column
  std::vector<int> col_slot;   // owning slot per column

  Index dim() const { return rep.dim(); }
};

Carrier make_carrier(GroupKind g, const std::vector<CarrierSlot>& slots);

// A finite cell module presented as the free module A (x) M twisted by a
// connection: d0 is the internal degree +1 differential of the carrier and
// gamma[bd][k] the coefficient matrix of the k-th basis monomial of the base
// component at bd, so Gamma(m) = sum u_k (x) gamma[bd][k] m over IA.
struct Connection {
  const LevelwiseCdga* base = nullptr;
  Carrier car;
  Mat d0;
  std::map<Bidegree, std::vector<Mat>> gamma;

  Mat gamma_at(Bidegree bd, Index k) const;  // zero when absent
};

Connection unit_connection(const LevelwiseCdga& a);
// v placed in degree 0 with d0 = 0 and gamma = 0
Connection free_connection(const LevelwiseCdga& a, const SemisimpleObject& v);

// structure report: degree / adams placement, equivariance, the flatness
// identity per base monomial, the adams drop that guarantees nilpotence, and
// the squared twisted differential on the realized module
CheckReport check_connection(const Connection& c);

// f = f0 + f^+ with f^+ encoded like gamma; chain rule checked per monomial
struct ConnectionMorphism {
  const Connection* src = nullptr;
  const Connection* tgt = nullptr;
  Mat f0;
  std::map<Bidegree, std::vector<Mat>> fplus;

  Mat fplus_at(Bidegree bd, Index k) const;
};

CheckReport check_connection_morphism(const ConnectionMorphism& f);
ConnectionMorphism identity_morphism(const Connection& c);
// g after f; both parts composed with the product corrections
ConnectionMorphism compose(const ConnectionMorphism& g, const ConnectionMorphism& f);

Connection direct_sum(const Connection& a, const Connection& b);
Connection tensor(const Connection& a, const Connection& b);
Connection dual(const Connection& c);
Connection shift(const Connection& c, int k);
Connection cone(const ConnectionMorphism& f);

// The realized module A (x) M with its twisted differential, materialized at
// the total bidegrees whose contributions all fit inside the base window.
struct TotalComplex {
  const Connection* conn = nullptr;
  // basis of each piece: (base bidegree, base monomial, carrier column)
  std::map<Bidegree, std::vector<std::tuple<Bidegree, Index, Index>>> basis;
  std::map<Bidegree, RepSpace> pieces;
  std::map<Bidegree, Mat> d;  // into (n+1, r); stored when both ends are complete

  bool complete(Bidegree bd) const;
  bool d_squared_zero() const;
  SemisimpleObject h(Bidegree bd) const;  // throws OutOfWindow off the materialized region
};

TotalComplex total_complex(const Connection& c);

// base change along the augmentation: the carrier with d0 alone, graded by
// the slot degrees
struct QComplex {
  GroupKind group = GroupKind::Gm;
  std::map<int, RepSpace> pieces;
  std::map<int, Mat> include;  // carrier columns of each piece
  std::map<int, Mat> d;
  SemisimpleObject h(int n) const;
};

QComplex q(const Connection& c);
std::map<int, SemisimpleObject> graded_cohomology(const QComplex& qc);

struct Filtration {
  std::shared_ptr<Connection> w;   // stable so the inclusion can point at it
  std::shared_ptr<Connection> gr;
  ConnectionMorphism inclusion;    // *w -> the original argument
};
// W_n spans the slots of Adams degree <= n; gr the Adams = n layer with the
// induced structure (gamma vanishes on the layer)
Filtration weight_filtration(const Connection& c, int n);

struct Truncation {
  std::shared_ptr<Connection> t;
  ConnectionMorphism inclusion;  // *t -> the original argument
};
// spanned by everything below degree zero plus ker(d0) in degree zero
Truncation truncate_le0(const Connection& c);

// H^n(q) = 0 for all n != 0
bool heart_test(const Connection& c);
// q(cone f) acyclic; q is conservative over a cohomologically connected base
bool quasi_iso_test(const ConnectionMorphism& f);

Connection base_change(const CdgaMorphism& phi, const Connection& c);

// realize a bounded complex of heart objects, terms[i] sitting in
// cohomological degree first_degree + i, as a single connection
Connection rho(const std::vector<Connection>& terms,
               const std::vector<ConnectionMorphism>& deltas, int first_degree = 0);

// Hom_A(A (x) M, A (x) N) realized as the module of dual(m) (x) n
Connection hom_connection(const Connection& m, const Connection& n);
// invariants of H^k of the hom complex: maps in the homotopy category
Index hom_groups(const Connection& m, const Connection& n, int k);

struct ExtResult {
  Index dim = 0;
  std::map<IrrLabel, Mat> reps;  // highest weight cocycles per contributing label
};
// Ext^k(V, W) over the co-Lie algebra g, computed as the trivial isotypic
// part of H^k of the Sullivan algebra tensored with dual(V) (x) W
ExtResult ext(const CoLieData& g, const SemisimpleObject& v, const SemisimpleObject& w, int k,
              int adams_max);

}  // namespace dga
