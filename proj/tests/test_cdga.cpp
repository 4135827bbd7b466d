#include "dga/cdga.hpp"

#include <random>

#include "corpus_builders.hpp"
#include "doctest.h"

using namespace dga;

namespace {

int dim_at(const LevelwiseCdga& a, int n, int r) { return static_cast<int>(a.dim({n, r})); }

SemisimpleObject one(GroupKind g, IrrLabel l, int k = 1) {
  SemisimpleObject s;
  s.group = g;
  s.add(l, k);
  return s;
}

}  // namespace

TEST_CASE("word merge signs") {
  std::vector<int> deg{1, 1, 2};
  Word x{{0, 0}}, y{{1, 0}}, w{{2, 0}};

  auto xy = word_merge(x, y, deg);
  REQUIRE(xy);
  CHECK(xy->second == 1);
  CHECK(xy->first == Word{{0, 0}, {1, 0}});

  auto yx = word_merge(y, x, deg);
  REQUIRE(yx);
  CHECK(yx->second == -1);
  CHECK(yx->first == Word{{0, 0}, {1, 0}});

  CHECK(!word_merge(x, x, deg));

  /* even letters never contribute signs */
  auto wx = word_merge(w, x, deg);
  REQUIRE(wx);
  CHECK(wx->second == 1);
  auto ww = word_merge(w, w, deg);
  REQUIRE(ww);
  CHECK(ww->second == 1);
}

TEST_CASE("exterior on one odd generator") {
  auto a = expand_free(corpus::lambda_x(), Window::upto(4, 4));
  CHECK(dim_at(a, 0, 0) == 1);
  CHECK(dim_at(a, 1, 1) == 1);
  CHECK(a.comps.size() == 2);
  CHECK(a.mono_name({1, 1}, 0) == "x");

  /* x*x = 0 shows up as a product block with no rows */
  const ProdBlock* p = a.prod_block({1, 1}, {1, 1});
  REQUIRE(p != nullptr);
  CHECK(p->m.rows() == 0);

  CHECK(check_cdga(a).ok());
  auto h = cohomology(a, {1, 1});
  CHECK(h.obj == one(GroupKind::Gm, IrrLabel::gm(-1)));
  CHECK(cohomology(a, {2, 2}).obj.dim() == 0);
}

TEST_CASE("exterior on two odd generators") {
  auto a = expand_free(corpus::lambda_xy(), Window::upto(4, 4));
  CHECK(dim_at(a, 1, 1) == 2);
  CHECK(dim_at(a, 2, 2) == 1);
  CHECK(a.mono_name({2, 2}, 0) == "x*y");

  const ProdBlock* p = a.prod_block({1, 1}, {1, 1});
  REQUIRE(p != nullptr);
  REQUIRE(p->m.rows() == 1);
  CHECK(p->m(0, 0 * 2 + 1) == 1);
  CHECK(p->m(0, 1 * 2 + 0) == -1);
  CHECK(p->m(0, 0) == 0);
  CHECK(p->m(0, 3) == 0);

  CHECK(check_cdga(a).ok());
  CHECK(cohomology(a, {1, 1}).obj == one(GroupKind::Gm, IrrLabel::gm(-1), 2));
  CHECK(cohomology(a, {2, 2}).obj == one(GroupKind::Gm, IrrLabel::gm(-2)));
}

TEST_CASE("heisenberg expansion and cohomology") {
  auto a = expand_free(corpus::heisenberg(), Window::upto(4, 4));
  CHECK(dim_at(a, 1, 1) == 2);
  CHECK(dim_at(a, 1, 2) == 1);
  CHECK(dim_at(a, 2, 2) == 1);
  CHECK(dim_at(a, 2, 3) == 2);
  CHECK(dim_at(a, 3, 4) == 1);
  CHECK(a.comps.size() == 6);

  Mat dz = a.diff_matrix({1, 2});
  REQUIRE(dz.rows() == 1);
  CHECK(dz(0, 0) == 1);
  CHECK(rank(dz) == 1);

  /* d(xz) = -x*xy = 0 and d(yz) = -y*xy = 0 */
  CHECK(is_zero(a.diff_matrix({2, 3})));

  CHECK(check_cdga(a).ok());
  auto conn = connectivity(a);
  CHECK(conn.connected);
  CHECK(conn.adams_connected);
  CHECK(conn.coh_connected);

  CHECK(cohomology(a, {1, 1}).obj == one(GroupKind::Gm, IrrLabel::gm(-1), 2));
  CHECK(cohomology(a, {1, 2}).obj.dim() == 0);
  CHECK(cohomology(a, {2, 2}).obj.dim() == 0);
  CHECK(cohomology(a, {2, 3}).obj == one(GroupKind::Gm, IrrLabel::gm(-3), 2));

  auto ind = indecomposables(a);
  CHECK(ind[{1, 1}] == one(GroupKind::Gm, IrrLabel::gm(-1), 2));
  CHECK(ind[{1, 2}] == one(GroupKind::Gm, IrrLabel::gm(-2)));
  CHECK(ind[{2, 2}].dim() == 0);
  CHECK(ind[{2, 3}].dim() == 0);
}

TEST_CASE("euler characteristic matches cohomology") {
  /* all components sit strictly below the degree cutoff, so every level is computable */
  auto a = expand_free(corpus::heisenberg(), Window::upto(4, 4));
  for (int r = 0; r <= 4; ++r) {
    int chi_a = 0, chi_h = 0;
    for (int n = 0; n <= 3; ++n) {
      int sgn = n % 2 != 0 ? -1 : 1;
      chi_a += sgn * dim_at(a, n, r);
      chi_h += sgn * static_cast<int>(cohomology(a, {n, r}).obj.dim());
    }
    CHECK(chi_a == chi_h);
  }
}

TEST_CASE("symmetric algebra on an even generator") {
  auto a = expand_free(corpus::sym_u(), Window::upto(4, 4));
  CHECK(dim_at(a, 2, 1) == 1);
  CHECK(dim_at(a, 4, 2) == 1);
  CHECK(a.mono_name({4, 2}, 0) == "u^2");
  CHECK(check_cdga(a).ok());
  CHECK(cohomology(a, {2, 1}).obj == one(GroupKind::Gm, IrrLabel::gm(-1)));
}

TEST_CASE("gl2 exterior algebra on the standard representation") {
  auto a = expand_free(corpus::gl2_lambda_f(), Window::upto(4, 4));
  CHECK(dim_at(a, 1, 1) == 2);
  CHECK(dim_at(a, 2, 2) == 1);
  CHECK(a.comps.size() == 3);
  CHECK(a.mono_name({2, 2}, 0) == "F[0]*F[1]");

  /* the square of the standard representation collapses to its determinant */
  const Component* c = a.comp({2, 2});
  REQUIRE(c != nullptr);
  CHECK(decompose(c->rep) == one(GroupKind::GL2, IrrLabel::gl2(0, -1)));

  CHECK(check_cdga(a).ok());
  CHECK(cohomology(a, {1, 1}).obj == one(GroupKind::GL2, IrrLabel::gl2(1, -1)));
  CHECK(cohomology(a, {2, 2}).obj == one(GroupKind::GL2, IrrLabel::gl2(0, -1)));
  CHECK(connectivity(a).coh_connected);
}

TEST_CASE("acyclic algebra has trivial higher cohomology") {
  auto a = expand_free(corpus::acyclic_uw(), Window::upto(4, 4));
  CHECK(check_cdga(a).ok());
  for (int n = 1; n <= 3; ++n)
    for (int r = 0; r <= 4; ++r) CHECK(cohomology(a, {n, r}).obj.dim() == 0);
  SemisimpleObject q;
  q.group = GroupKind::Gm;
  q.add(IrrLabel::trivial(GroupKind::Gm));
  CHECK(cohomology(a, {0, 0}).obj == q);
}

TEST_CASE("express and elaborate are inverse") {
  auto a = expand_free(corpus::heisenberg(), Window::upto(4, 4));
  const Mat& dz = a.gen_diff[2];
  REQUIRE(dz.size() != 0);
  auto terms = express_in_terms(a, {2, 2}, IrrLabel::gm(-2), dz.col(0));
  REQUIRE(terms.size() == 1);
  CHECK(terms[0].coeff == 1);
  CHECK(terms[0].profile == std::vector<int>{0, 1});
  CHECK(terms[0].copy == 0);
  Mat back = elaborate_diff_terms(a, IrrLabel::gm(-2), {2, 2}, terms);
  CHECK(mat_eq(back, dz));
}

TEST_CASE("expansion rejects bad generators") {
  FreeCdgaPresentation p;
  p.group = GroupKind::Gm;
  p.gens.push_back({"x", 0, IrrLabel::gm(-1)});
  CHECK_THROWS_AS(expand_free(p, Window::upto(2, 2)), InvalidGenerator);

  FreeCdgaPresentation q;
  q.group = GroupKind::Gm;
  q.gens.push_back({"x", 1, IrrLabel::gl2(1, -1)});
  CHECK_THROWS_AS(expand_free(q, Window::upto(2, 2)), InvalidGenerator);

  FreeCdgaPresentation r;
  r.group = GroupKind::Gm;
  r.gens.push_back({"x", 1, IrrLabel::gm(-1)});
  r.gens.push_back({"x", 1, IrrLabel::gm(-1)});
  CHECK_THROWS_AS(expand_free(r, Window::upto(2, 2)), InvalidGenerator);
}

TEST_CASE("window too small only when a needed differential cannot land") {
  /* the negative Adams generator drags a product inside the window while the
     differential of b lands outside it */
  FreeCdgaPresentation p;
  p.group = GroupKind::Gm;
  p.gens.push_back({"a", 1, IrrLabel::gm(1)});
  p.gens.push_back({"b", 1, IrrLabel::gm(-4)});
  p.gens.push_back({"c", 2, IrrLabel::gm(-4)});
  p.diff[1] = {DiffTerm{rat(1), {2}, 0}};
  Window w{0, 4, 0, 3};
  CHECK_THROWS_AS(expand_free(p, w), WindowTooSmall);

  /* with the differential removed the same window is fine */
  p.diff.clear();
  auto a = expand_free(p, w);
  CHECK(a.dim({2, 3}) == 1);
}

TEST_CASE("narrow adams window drops the relation but stays consistent") {
  auto a = expand_free(corpus::heisenberg(), Window{0, 2, 0, 1});
  CHECK(a.comps.size() == 2);
  CHECK(check_cdga(a).ok());
  CHECK(cohomology(a, {1, 1}).obj == one(GroupKind::Gm, IrrLabel::gm(-1), 2));
}

TEST_CASE("cohomology refuses degrees at the window edge") {
  auto a = expand_free(corpus::lambda_x(), Window::upto(4, 4));
  CHECK_THROWS_AS(cohomology(a, {4, 4}), OutOfWindow);
  CHECK_THROWS_AS(cohomology(a, {5, 1}), OutOfWindow);
  CHECK_THROWS_AS(a.diff_matrix({4, 4}), OutOfWindow);
}

TEST_CASE("connectivity flags negative adams generators") {
  FreeCdgaPresentation p;
  p.group = GroupKind::Gm;
  p.gens.push_back({"a", 1, IrrLabel::gm(1)});
  auto a = expand_free(p, Window{0, 2, -2, 2});
  auto conn = connectivity(a);
  CHECK(conn.connected);
  CHECK(!conn.adams_connected);
  CHECK(!conn.coh_connected);
}

TEST_CASE("indecomposables need the unit component") {
  auto a = expand_free(corpus::lambda_x(), Window::upto(2, 2));
  a.comps.erase({0, 0});
  CHECK(!connectivity(a).connected);
  CHECK_THROWS_AS(indecomposables(a), NotConnected);
}

/* the six seeded corruption flavours */

TEST_CASE("corruption: differential squares to something nonzero") {
  FreeCdgaPresentation p;
  p.group = GroupKind::Gm;
  p.gens.push_back({"x", 1, IrrLabel::gm(-1)});
  p.gens.push_back({"a", 2, IrrLabel::gm(-1)});
  p.gens.push_back({"c", 3, IrrLabel::gm(-1)});
  p.diff[0] = {DiffTerm{rat(1), {1}, 0}};
  p.diff[1] = {DiffTerm{rat(1), {2}, 0}};
  auto a = expand_free(p, Window::upto(4, 4));
  auto rep = check_cdga(a);
  CHECK(!rep.ok());
  CHECK(rep.has("d-squared"));
  CHECK(!rep.has("leibniz"));
  CHECK(!rep.has("commutativity"));
}

TEST_CASE("corruption: composite differential loses the leibniz rule") {
  FreeCdgaPresentation p;
  p.group = GroupKind::Gm;
  p.gens.push_back({"u", 1, IrrLabel::gm(-1)});
  p.gens.push_back({"w", 2, IrrLabel::gm(-1)});
  p.diff[0] = {DiffTerm{rat(1), {1}, 0}};
  auto a = expand_free(p, Window::upto(4, 4));
  REQUIRE(check_cdga(a).ok());
  a.diff[{3, 2}][0].m *= rat(2);
  auto rep = check_cdga(a);
  CHECK(!rep.ok());
  CHECK(rep.has("leibniz"));
  CHECK(!rep.has("d-squared"));
}

TEST_CASE("corruption: one sided product scaling breaks commutativity") {
  FreeCdgaPresentation p;
  p.group = GroupKind::Gm;
  p.gens.push_back({"u", 1, IrrLabel::gm(-1)});
  p.gens.push_back({"w", 2, IrrLabel::gm(-1)});
  auto a = expand_free(p, Window::upto(4, 4));
  REQUIRE(check_cdga(a).ok());
  a.prod[{Bidegree{1, 1}, Bidegree{2, 1}}].m *= rat(2);
  auto rep = check_cdga(a);
  CHECK(!rep.ok());
  CHECK(rep.has("commutativity"));
  CHECK(!rep.has("leibniz"));
  CHECK(!rep.has("associativity"));
}

TEST_CASE("corruption: symmetric product scaling breaks associativity") {
  FreeCdgaPresentation p;
  p.group = GroupKind::Gm;
  p.gens.push_back({"u", 1, IrrLabel::gm(-1)});
  p.gens.push_back({"w", 2, IrrLabel::gm(-1)});
  p.diff[0] = {DiffTerm{rat(1), {1}, 0}};
  auto a = expand_free(p, Window::upto(5, 4));
  REQUIRE(check_cdga(a).ok());
  a.prod[{Bidegree{3, 2}, Bidegree{2, 1}}].m *= rat(2);
  a.prod[{Bidegree{2, 1}, Bidegree{3, 2}}].m *= rat(2);
  auto rep = check_cdga(a);
  CHECK(!rep.ok());
  CHECK(rep.has("associativity"));
  CHECK(!rep.has("commutativity"));
}

TEST_CASE("corruption: differential block shifted in adams degree") {
  auto a = expand_free(corpus::heisenberg(), Window::upto(4, 4));
  Mat m = Mat::Zero(a.dim({2, 3}), a.dim({1, 2}));
  m(0, 0) = 1;
  a.diff[{1, 2}] = {DiffBlock{{2, 3}, m}};
  auto rep = check_cdga(a);
  CHECK(!rep.ok());
  CHECK(rep.has("adams"));
  CHECK(!rep.has("degree"));
}

TEST_CASE("corruption: broken sl2 action flags equivariance") {
  auto a = expand_free(corpus::gl2_lambda_f(), Window::upto(4, 4));
  a.comps[{1, 1}].rep.e = Mat::Zero(2, 2);
  auto rep = check_cdga(a);
  CHECK(!rep.ok());
  CHECK(rep.has("equivariance"));
}

TEST_CASE("corruption: differential landing in the same degree") {
  auto a = expand_free(corpus::lambda_xy(), Window::upto(4, 4));
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1; /* pretends d(y) = x */
  a.diff[{1, 1}].push_back(DiffBlock{{1, 1}, m});
  auto rep = check_cdga(a);
  CHECK(!rep.ok());
  CHECK(rep.has("degree"));
}

TEST_CASE("random differential free algebras always check clean") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 8; ++trial) {
    FreeCdgaPresentation p;
    p.group = trial % 2 == 0 ? GroupKind::Gm : GroupKind::GL2;
    int ngens = 1 + static_cast<int>(rng() % 3);
    for (int g = 0; g < ngens; ++g) {
      int deg = 1 + static_cast<int>(rng() % 3);
      IrrLabel l = p.group == GroupKind::Gm
                       ? IrrLabel::gm(-static_cast<int>(rng() % 3))
                       : IrrLabel::gl2(static_cast<int>(rng() % 3), -1 + static_cast<int>(rng() % 3));
      p.gens.push_back({"g" + std::to_string(g), deg, l});
    }
    auto a = expand_free(p, Window{0, 4, -6, 6});
    auto rep = check_cdga(a);
    if (!rep.ok()) {
      for (const auto& v : rep.violations) MESSAGE(v.kind << " " << v.where);
    }
    CHECK(rep.ok());
  }
}

TEST_CASE("identity morphism is a quasi isomorphism") {
  auto a = expand_free(corpus::heisenberg(), Window::upto(4, 4));
  CdgaMorphism f;
  f.src = &a;
  f.tgt = &a;
  for (size_t g = 0; g < a.gens.size(); ++g) {
    const GenDecl& gd = a.gens[g];
    Bidegree gb{gd.deg, adams_of(gd.label)};
    const Component* c = a.comp(gb);
    REQUIRE(c != nullptr);
    Mat img = Mat::Zero(a.dim(gb), dim_of(gd.label));
    for (int k = 0; k < dim_of(gd.label); ++k) {
      Monomial m{{{static_cast<int>(g), k}, 1}};
      img(c->index.at(m), k) = 1;
    }
    f.gen_images.push_back(img);
  }
  CHECK(check_morphism(f).ok());
  CHECK(compare_quasi_iso(f, Window::upto(4, 4)));

  auto blocks = cohomology_map(f, {1, 1});
  REQUIRE(blocks.count(IrrLabel::gm(-1)) == 1);
  CHECK(mat_eq(blocks[IrrLabel::gm(-1)], Mat::Identity(2, 2)));
}

TEST_CASE("strict inclusion is not a quasi isomorphism") {
  auto small = expand_free(corpus::lambda_x(), Window::upto(4, 4));
  auto big = expand_free(corpus::lambda_xy(), Window::upto(4, 4));
  CdgaMorphism f;
  f.src = &small;
  f.tgt = &big;
  Mat img = Mat::Zero(2, 1);
  img(0, 0) = 1;
  f.gen_images.push_back(img);
  CHECK(check_morphism(f).ok());
  CHECK(!compare_quasi_iso(f, Window::upto(4, 4)));
}

TEST_CASE("morphisms that ignore the differential are rejected") {
  auto a = expand_free(corpus::heisenberg(), Window::upto(4, 4));
  CdgaMorphism f;
  f.src = &a;
  f.tgt = &a;
  for (size_t g = 0; g < a.gens.size(); ++g) {
    Bidegree gb{a.gens[g].deg, adams_of(a.gens[g].label)};
    Mat img = Mat::Zero(a.dim(gb), dim_of(a.gens[g].label));
    /* x and y map to themselves but z dies, so f(dz) = xy is not d(fz) = 0 */
    if (g < 2) {
      Monomial m{{{static_cast<int>(g), 0}, 1}};
      img(a.comp(gb)->index.at(m), 0) = 1;
    }
    f.gen_images.push_back(img);
  }
  auto rep = check_morphism(f);
  CHECK(!rep.ok());
  CHECK(rep.has("d-commute"));
}
