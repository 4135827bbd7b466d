#include "dga/minmodel.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>

namespace dga {

namespace {

/* weight pure highest weight solution u of d u = img inside the component at
   bd, so that the copy generated by u is equivariant */
Vec equivariant_primitive(const LevelwiseCdga& a, Bidegree bd, const IrrLabel& l,
                          const Vec& img) {
  const Component* c = a.comp(bd);
  if (!c || c->rep.dim() == 0) {
    if (!is_zero(img))
      throw AlgebraError("primitive: nonzero cocycle with no room for a primitive at " +
                         to_string(bd));
    return Vec::Zero(0);
  }
  Weight hw = highest_weight(l);
  std::vector<Index> cols;
  for (Index j = 0; j < c->rep.dim(); ++j)
    if (c->rep.weights[static_cast<size_t>(j)] == hw) cols.push_back(j);
  Mat sel = Mat::Zero(c->rep.dim(), static_cast<Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) sel(cols[j], static_cast<Index>(j)) = 1;
  Mat dm = a.diff_matrix(bd);
  /* du = img and e.u = 0 in one system; semisimplicity makes it consistent
     whenever img is a coboundary at all */
  Mat sys = vcat(dm * sel, Mat(c->rep.e * sel));
  Vec rhs = Vec::Zero(sys.rows());
  rhs.head(img.size()) = img;
  auto x = solve(sys, rhs);
  if (!x)
    throw AlgebraError("primitive: cocycle is not an equivariant coboundary at " + to_string(bd));
  return sel * *x;
}

Mat image_or_empty(const LevelwiseCdga& a, Bidegree bd, const IrrLabel& l, const Vec& hw) {
  const Component* c = a.comp(bd);
  if (!c || c->rep.dim() == 0) return Mat::Zero(0, dim_of(l));
  return embed_copy(c->rep, l, hw);
}

struct Builder {
  const LevelwiseCdga& a;
  FreeCdgaPresentation p;
  std::vector<Mat> images;
  Window sw;
  LevelwiseCdga s;
  CdgaMorphism f;

  explicit Builder(const LevelwiseCdga& a_) : a(a_) {}

  void refresh() {
    s = expand_free(p, sw);
    f = CdgaMorphism{&s, &a, images};
  }

  /* adjoin a generator one degree below deg for every kernel class of
     H^deg(f) at adams m; returns how many were added */
  int kill(int deg, int m, std::vector<StageLog>& log) {
    auto hs = cohomology(s, {deg, m});
    auto hm = cohomology_map(f, {deg, m});
    struct Fresh {
      IrrLabel l;
      std::vector<DiffTerm> terms;
      Mat image;
    };
    std::vector<Fresh> fresh;
    for (const auto& [l, block] : hm) {
      if (block.cols() == 0) continue;
      Mat k = kernel_basis(block);
      for (Index j = 0; j < k.cols(); ++j) {
        Vec v = hs.hw_reps.at(l) * k.col(j);
        Vec img = f.matrix_at({deg, m}) * v;
        Vec u = equivariant_primitive(a, {deg - 1, m}, l, img);
        fresh.push_back({l, express_in_terms(s, {deg, m}, l, v),
                         image_or_empty(a, {deg - 1, m}, l, u)});
      }
    }
    if (fresh.empty()) return 0;
    if (deg == 1)
      throw AlgebraError("minimal_model: kernel classes in degree one cannot be killed");
    SemisimpleObject added;
    added.group = p.group;
    for (size_t j = 0; j < fresh.size(); ++j) {
      int gi = static_cast<int>(p.gens.size());
      p.gens.push_back({"u" + std::to_string(m) + "_" + std::to_string(deg) + "_" +
                            std::to_string(j),
                        deg - 1, fresh[j].l});
      p.diff[gi] = std::move(fresh[j].terms);
      images.push_back(std::move(fresh[j].image));
      added.add(fresh[j].l);
    }
    log.push_back({m, deg, "killers", std::move(added)});
    refresh();
    return static_cast<int>(fresh.size());
  }

  /* adjoin closed degree deg generators for the cokernel of H^deg(f) at
     adams m */
  int adjoin(int deg, int m, std::vector<StageLog>& log) {
    auto ha = cohomology(a, {deg, m});
    auto hm = cohomology_map(f, {deg, m});
    SemisimpleObject added;
    added.group = p.group;
    int count = 0;
    for (const auto& [l, mult] : ha.obj.mult) {
      auto it = hm.find(l);
      Mat block = it != hm.end() ? it->second : Mat::Zero(mult, 0);
      Mat missing = subquotient_basis(block, Mat::Identity(mult, mult));
      for (Index j = 0; j < missing.cols(); ++j) {
        Vec w = ha.hw_reps.at(l) * missing.col(j);
        p.gens.push_back({"e" + std::to_string(m) + "_" + std::to_string(deg) + "_" +
                              std::to_string(count),
                          deg, l});
        images.push_back(image_or_empty(a, {deg, m}, l, w));
        added.add(l);
        ++count;
      }
    }
    if (count == 0) return 0;
    log.push_back({m, deg, "classes", std::move(added)});
    refresh();
    return count;
  }
};

}  // namespace

MinimalModelResult minimal_model(const LevelwiseCdga& a, int n, int adams_max,
                                 int stage_budget) {
  if (n < 1) throw AlgebraError("minimal_model: n must be positive");
  if (a.window.n_min != 0 || a.window.n_max < n + 2 || a.window.r_min > 0 ||
      a.window.r_max < adams_max)
    throw WindowTooSmall(
        "minimal_model: the input must be materialized for degrees up to n+2 and the whole "
        "adams range");
  if (!connectivity(a).coh_connected)
    throw NotCohConnected(
        "minimal_model: the input must be adams connected with H^0 the base field");

  Builder b(a);
  b.p.group = a.group;
  b.sw = Window{0, n + 2, 0, std::max(adams_max, 0)};
  b.refresh();

  MinimalModelResult out;
  for (int m = 1; m <= adams_max; ++m) {
    int stages = 0;
    auto spend = [&] {
      if (++stages > stage_budget)
        throw NonTermination("minimal_model: stage budget exhausted at adams degree " +
                             std::to_string(m));
    };
    for (int i = 1; i <= n + 1; ++i) {
      for (;;) {
        spend();
        if (b.kill(i, m, out.log) == 0) break;
      }
      if (i <= n) {
        spend();
        b.adjoin(i, m, out.log);
      }
    }
  }

  out.verified = is_minimal(b.p);
  for (int m = 1; m <= adams_max && out.verified; ++m)
    for (int i = 1; i <= n + 1 && out.verified; ++i)
      for (const auto& [l, block] : cohomology_map(b.f, {i, m})) {
        if (rank(block) != block.cols()) out.verified = false;
        if (i <= n && block.rows() != block.cols()) out.verified = false;
      }

  out.model = std::move(b.p);
  out.model_expanded = std::make_shared<const LevelwiseCdga>(std::move(b.s));
  out.psi = CdgaMorphism{out.model_expanded.get(), &a, std::move(b.images)};
  return out;
}

bool is_minimal(const FreeCdgaPresentation& p) {
  for (const auto& g : p.gens)
    if (g.deg < 1) throw NotConnected("is_minimal: generators must sit in positive degree");
  for (const auto& [gi, terms] : p.diff)
    for (const auto& t : terms)
      if (t.coeff != 0 && t.profile.size() < 2) return false;
  return true;
}

bool is_generalized_nilpotent(const FreeCdgaPresentation& p, Window w) {
  std::vector<bool> in_window(p.gens.size()), admitted(p.gens.size());
  bool shortcut = true;
  for (size_t g = 0; g < p.gens.size(); ++g) {
    const GenDecl& d = p.gens[g];
    int r = adams_of(d.label);
    in_window[g] = d.deg >= w.n_min && d.deg <= w.n_max && r >= w.r_min && r <= w.r_max;
    if (in_window[g] && (d.deg < 1 || 2 * r < d.deg)) shortcut = false;
  }
  /* support bound plus minimality already force nilpotence */
  if (shortcut) {
    bool minimal = true;
    for (const auto& [gi, terms] : p.diff)
      for (const auto& t : terms)
        if (t.coeff != 0 && t.profile.size() < 2) minimal = false;
    if (minimal) return true;
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (size_t g = 0; g < p.gens.size(); ++g) {
      if (!in_window[g] || admitted[g]) continue;
      bool ok = true;
      auto it = p.diff.find(static_cast<int>(g));
      if (it != p.diff.end())
        for (const auto& t : it->second) {
          if (t.coeff == 0) continue;
          for (int gi : t.profile)
            ok = ok && in_window[static_cast<size_t>(gi)] && admitted[static_cast<size_t>(gi)];
        }
      if (ok) admitted[g] = grew = true;
    }
  }
  for (size_t g = 0; g < p.gens.size(); ++g)
    if (in_window[g] && !admitted[g]) return false;
  return true;
}

std::vector<Mat> fit_generator_images(const FreeCdgaPresentation& s,
                                      const LevelwiseCdga& s_exp, const LevelwiseCdga& a) {
  std::vector<Mat> images(s.gens.size());
  for (size_t g = 0; g < s.gens.size(); ++g) {
    Bidegree bd{s.gens[g].deg, s.adams(static_cast<int>(g))};
    const Component* c = a.comp(bd);
    images[g] = Mat::Zero(c ? c->rep.dim() : 0, dim_of(s.gens[g].label));
  }

  auto is_killer = [&](int g) {
    auto it = s.diff.find(g);
    return it != s.diff.end() && !it->second.empty();
  };
  auto key = [&](int g) {
    return std::tuple(s.adams(g), s.gens[g].deg, is_killer(g));
  };
  std::vector<int> order(s.gens.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return key(x) < key(y); });

  for (size_t pos = 0; pos < order.size();) {
    size_t end = pos;
    while (end < order.size() && key(order[end]) == key(order[pos])) ++end;
    int m = s.adams(order[pos]);
    int deg = s.gens[static_cast<size_t>(order[pos])].deg;
    CdgaMorphism f{&s_exp, &a, images};
    if (!is_killer(order[pos])) {
      /* closed generators become fresh class representatives; the pending
         ones still map to zero, so the cokernel below is computed against
         the part of the map that is already built */
      auto ha = cohomology(a, {deg, m});
      auto hm = cohomology_map(f, {deg, m});
      std::map<IrrLabel, std::pair<Mat, Index>> missing;  // complement and cursor
      for (const auto& [l, mult] : ha.obj.mult) {
        auto it = hm.find(l);
        Mat block = it != hm.end() ? it->second : Mat::Zero(mult, 0);
        missing[l] = {subquotient_basis(block, Mat::Identity(mult, mult)), 0};
      }
      for (size_t q = pos; q < end; ++q) {
        const IrrLabel& l = s.gens[static_cast<size_t>(order[q])].label;
        auto it = missing.find(l);
        if (it == missing.end() || it->second.second >= it->second.first.cols()) continue;
        Vec w = ha.hw_reps.at(l) * it->second.first.col(it->second.second++);
        images[static_cast<size_t>(order[q])] = image_or_empty(a, {deg, m}, l, w);
      }
    } else {
      for (size_t q = pos; q < end; ++q) {
        int g = order[q];
        const IrrLabel& l = s.gens[static_cast<size_t>(g)].label;
        Mat dz = elaborate_diff_terms(s_exp, l, {deg + 1, m}, s.diff.at(g));
        Vec img = f.matrix_at({deg + 1, m}) * dz.col(0);
        Vec u = equivariant_primitive(a, {deg, m}, l, img);
        images[static_cast<size_t>(g)] = image_or_empty(a, {deg, m}, l, u);
      }
    }
    pos = end;
  }
  return images;
}

}  // namespace dga
