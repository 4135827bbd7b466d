#include "dga/cdga.hpp"

#include <algorithm>
#include <sstream>

#include "dga/exactla.hpp"

namespace dga {

std::string to_string(Bidegree bd) {
  std::ostringstream os;
  os << "(" << bd.n << "," << bd.r << ")";
  return os.str();
}

int FreeCdgaPresentation::find(const std::string& name) const {
  for (size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return static_cast<int>(i);
  return -1;
}

// ---------------------------------------------------------------------------
// words and monomials

Word mono_to_word(const Monomial& m) {
  Word w;
  for (const auto& [v, e] : m)
    for (int k = 0; k < e; ++k) w.push_back(v);
  return w;
}

Monomial word_to_mono(const Word& w) {
  Monomial m;
  for (const auto& v : w) {
    if (!m.empty() && m.back().first == v)
      m.back().second += 1;
    else
      m.push_back({v, 1});
  }
  return m;
}

// power-lex: compare letter sequences, so x*x < x*y < y*y
bool mono_less(const Monomial& a, const Monomial& b) {
  return mono_to_word(a) < mono_to_word(b);
}

std::optional<std::pair<Word, int>> word_merge(const Word& a, const Word& b,
                                               const std::vector<int>& gen_deg) {
  auto odd = [&](VarId v) { return gen_deg[v.first] % 2 != 0; };
  int flips = 0;
  for (const auto& x : a)
    for (const auto& y : b) {
      if (x == y && odd(x)) return std::nullopt;
      if (y < x && odd(x) && odd(y)) flips ^= 1;
    }
  Word out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return std::make_pair(out, flips ? -1 : 1);
}

// one letter replaced in place by another of the same parity, then moved to
// its sorted position; used for the group action on basis monomials
static std::optional<std::pair<Word, int>> word_replace(const Word& w, size_t p, VarId nv,
                                                        const std::vector<int>& gen_deg) {
  auto odd = [&](VarId v) { return gen_deg[v.first] % 2 != 0; };
  Word rest;
  rest.reserve(w.size());
  for (size_t q = 0; q < w.size(); ++q)
    if (q != p) rest.push_back(w[q]);
  if (odd(nv))
    for (const auto& x : rest)
      if (x == nv) return std::nullopt;
  size_t q = static_cast<size_t>(std::lower_bound(rest.begin(), rest.end(), nv) - rest.begin());
  int flips = 0;
  if (odd(nv)) {
    size_t lo = std::min(p, q), hi = std::max(p, q);
    for (size_t t = lo; t < hi; ++t)
      if (odd(rest[t])) flips ^= 1;
  }
  rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(q), nv);
  return std::make_pair(rest, flips ? -1 : 1);
}

// ---------------------------------------------------------------------------
// levelwise accessors

Index LevelwiseCdga::dim(Bidegree bd) const {
  auto it = comps.find(bd);
  return it == comps.end() ? 0 : static_cast<Index>(it->second.basis.size());
}

const Component* LevelwiseCdga::comp(Bidegree bd) const {
  auto it = comps.find(bd);
  return it == comps.end() ? nullptr : &it->second;
}

Mat LevelwiseCdga::diff_matrix(Bidegree bd) const {
  Bidegree tgt{bd.n + 1, bd.r};
  if (!window.contains(bd) || !window.contains(tgt))
    throw OutOfWindow("diff_matrix: " + to_string(bd) + " needs " + to_string(tgt) +
                      " inside the window");
  Mat m = Mat::Zero(dim(tgt), dim(bd));
  auto it = diff.find(bd);
  if (it != diff.end())
    for (const auto& blk : it->second)
      if (blk.target == tgt && blk.m.rows() == m.rows() && blk.m.cols() == m.cols()) m += blk.m;
  return m;
}

const ProdBlock* LevelwiseCdga::prod_block(Bidegree a, Bidegree b) const {
  auto it = prod.find({a, b});
  return it == prod.end() ? nullptr : &it->second;
}

Vec LevelwiseCdga::multiply(Bidegree bd_a, const Vec& v, Bidegree bd_b, const Vec& w) const {
  Bidegree tgt{bd_a.n + bd_b.n, bd_a.r + bd_b.r};
  if (!window.contains(tgt))
    throw OutOfWindow("multiply: product lands at " + to_string(tgt) + " outside the window");
  Vec out = Vec::Zero(dim(tgt));
  const ProdBlock* blk = prod_block(bd_a, bd_b);
  if (blk == nullptr) return out;
  Index db = dim(bd_b);
  for (Index i = 0; i < v.size(); ++i) {
    if (v(i) == 0) continue;
    for (Index j = 0; j < w.size(); ++j) {
      if (w(j) == 0) continue;
      out += v(i) * w(j) * blk->m.col(i * db + j);
    }
  }
  return out;
}

std::string LevelwiseCdga::mono_name(Bidegree bd, Index i) const {
  const Component* c = comp(bd);
  if (c == nullptr || i >= static_cast<Index>(c->basis.size())) return "?";
  const Monomial& m = c->basis[static_cast<size_t>(i)];
  if (m.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, e] : m) {
    if (!first) os << "*";
    first = false;
    os << gens[static_cast<size_t>(v.first)].name;
    if (dim_of(gens[static_cast<size_t>(v.first)].label) > 1) os << "[" << v.second << "]";
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// expansion

namespace {

struct VarInfo {
  VarId id;
  int deg;
  int adams;
  Weight wt;
};

struct ExpandCtx {
  const FreeCdgaPresentation* p = nullptr;
  std::vector<int> gen_deg;
  std::vector<RepSpace> models;
  std::vector<VarInfo> vars;
};

int mono_deg(const ExpandCtx& cx, const Monomial& m) {
  int d = 0;
  for (const auto& [v, e] : m) d += e * cx.gen_deg[static_cast<size_t>(v.first)];
  return d;
}

void enumerate(const ExpandCtx& cx, Window w, size_t idx, Monomial& cur, int deg, int adams,
               std::map<Bidegree, std::vector<Monomial>>& out) {
  if (idx == cx.vars.size()) {
    Bidegree bd{deg, adams};
    if (w.contains(bd)) out[bd].push_back(cur);
    return;
  }
  enumerate(cx, w, idx + 1, cur, deg, adams, out);
  const VarInfo& v = cx.vars[idx];
  int max_e = (v.deg % 2 != 0) ? 1 : (w.n_max - deg) / v.deg;
  for (int e = 1; e <= max_e; ++e) {
    cur.push_back({v.id, e});
    enumerate(cx, w, idx + 1, cur, deg + e * v.deg, adams + e * v.adams, out);
    cur.pop_back();
  }
}

RepSpace component_rep(const ExpandCtx& cx, const std::vector<Monomial>& basis,
                       const std::map<Monomial, Index, bool (*)(const Monomial&, const Monomial&)>& index) {
  RepSpace r;
  r.group = cx.p->group;
  Index n = static_cast<Index>(basis.size());
  r.e = Mat::Zero(n, n);
  r.f = Mat::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    Weight wt{0, 0};
    Word word = mono_to_word(basis[static_cast<size_t>(i)]);
    for (const auto& v : word) {
      const Weight& vw = cx.models[static_cast<size_t>(v.first)].weights[static_cast<size_t>(v.second)];
      wt[0] += vw[0];
      wt[1] += vw[1];
    }
    r.weights.push_back(wt);
    // e and f act by derivation on the letters, no Koszul signs (the group
    // operators are even); replacing a letter may reorder odd letters though
    for (size_t p = 0; p < word.size(); ++p) {
      const RepSpace& model = cx.models[static_cast<size_t>(word[p].first)];
      for (Index c2 = 0; c2 < model.dim(); ++c2) {
        VarId nv{word[p].first, static_cast<int>(c2)};
        if (model.e(c2, word[p].second) != 0) {
          auto rep = word_replace(word, p, nv, cx.gen_deg);
          if (rep) {
            auto it = index.find(word_to_mono(rep->first));
            if (it != index.end()) r.e(it->second, i) += rep->second * model.e(c2, word[p].second);
          }
        }
        if (model.f(c2, word[p].second) != 0) {
          auto rep = word_replace(word, p, nv, cx.gen_deg);
          if (rep) {
            auto it = index.find(word_to_mono(rep->first));
            if (it != index.end()) r.f(it->second, i) += rep->second * model.f(c2, word[p].second);
          }
        }
      }
    }
  }
  return r;
}

}  // namespace

Mat profile_span(const Component& c, const std::vector<int>& profile) {
  std::vector<Index> cols;
  for (Index i = 0; i < static_cast<Index>(c.basis.size()); ++i) {
    std::vector<int> prof;
    for (const auto& [v, e] : c.basis[static_cast<size_t>(i)])
      for (int k = 0; k < e; ++k) prof.push_back(v.first);
    if (prof == profile) cols.push_back(i);
  }
  Mat m = Mat::Zero(static_cast<Index>(c.basis.size()), static_cast<Index>(cols.size()));
  for (Index j = 0; j < static_cast<Index>(cols.size()); ++j) m(cols[static_cast<size_t>(j)], j) = 1;
  return m;
}

Mat elaborate_diff_terms(const LevelwiseCdga& a, const IrrLabel& l, Bidegree target,
                         const std::vector<DiffTerm>& terms) {
  const Component* c = a.comp(target);
  Index dim_t = a.dim(target);
  Mat d = Mat::Zero(dim_t, dim_of(l));
  if (c == nullptr) {
    if (!terms.empty())
      throw WindowTooSmall("differential lands in the empty component " + to_string(target));
    return d;
  }
  for (const auto& t : terms) {
    Mat span = profile_span(*c, t.profile);
    Mat hws = hw_vectors_in(c->rep, highest_weight(l), span);
    if (t.copy < 0 || t.copy >= hws.cols())
      throw InvalidGenerator("no copy " + std::to_string(t.copy) + " of " + to_string(l) +
                             " in the named profile at " + to_string(target));
    d += t.coeff * embed_copy(c->rep, l, hws.col(t.copy));
  }
  return d;
}

std::vector<DiffTerm> express_in_terms(const LevelwiseCdga& a, Bidegree bd, const IrrLabel& l,
                                       const Vec& hw) {
  const Component* c = a.comp(bd);
  if (c == nullptr) {
    if (!is_zero(hw)) throw AlgebraError("express_in_terms: nonzero vector in empty component");
    return {};
  }
  // collect the highest weight vectors of label l inside each profile span
  std::map<std::vector<int>, std::vector<Index>> profiles;
  for (Index i = 0; i < static_cast<Index>(c->basis.size()); ++i) {
    std::vector<int> prof;
    for (const auto& [v, e] : c->basis[static_cast<size_t>(i)])
      for (int k = 0; k < e; ++k) prof.push_back(v.first);
    profiles[prof].push_back(i);
  }
  std::vector<DiffTerm> slots;
  Mat h(c->rep.dim(), 0);
  for (const auto& [prof, cols] : profiles) {
    Mat span = Mat::Zero(c->rep.dim(), static_cast<Index>(cols.size()));
    for (Index j = 0; j < static_cast<Index>(cols.size()); ++j) span(cols[static_cast<size_t>(j)], j) = 1;
    Mat hws = hw_vectors_in(c->rep, highest_weight(l), span);
    for (Index k = 0; k < hws.cols(); ++k) {
      slots.push_back(DiffTerm{rat(0), prof, static_cast<int>(k)});
      h = hcat(h, hws.col(k));
    }
  }
  auto sol = solve(h, hw);
  if (!sol) throw AlgebraError("express_in_terms: vector is not a highest weight combination");
  std::vector<DiffTerm> out;
  for (Index k = 0; k < sol->size(); ++k)
    if ((*sol)(k) != 0) {
      slots[static_cast<size_t>(k)].coeff = (*sol)(k);
      out.push_back(slots[static_cast<size_t>(k)]);
    }
  return out;
}

LevelwiseCdga expand_free(const FreeCdgaPresentation& p, Window w) {
  LevelwiseCdga a;
  a.group = p.group;
  a.window = w;
  a.gens = p.gens;

  ExpandCtx cx;
  cx.p = &p;
  for (size_t g = 0; g < p.gens.size(); ++g) {
    const GenDecl& gd = p.gens[g];
    if (gd.deg < 1) throw InvalidGenerator("generator " + gd.name + " has degree < 1");
    if (gd.label.group != p.group)
      throw InvalidGenerator("generator " + gd.name + " has a label for the wrong group");
    for (size_t h = 0; h < g; ++h)
      if (p.gens[h].name == gd.name) throw InvalidGenerator("duplicate generator " + gd.name);
    cx.gen_deg.push_back(gd.deg);
    cx.models.push_back(model_space(gd.label));
    for (Index c = 0; c < cx.models.back().dim(); ++c)
      cx.vars.push_back(VarInfo{{static_cast<int>(g), static_cast<int>(c)}, gd.deg,
                                adams_of(gd.label), cx.models.back().weights[static_cast<size_t>(c)]});
  }

  std::map<Bidegree, std::vector<Monomial>> buckets;
  Monomial cur;
  enumerate(cx, w, 0, cur, 0, 0, buckets);
  for (auto& [bd, monos] : buckets) {
    std::sort(monos.begin(), monos.end(), mono_less);
    Component c;
    c.basis = monos;
    for (Index i = 0; i < static_cast<Index>(monos.size()); ++i) c.index[monos[static_cast<size_t>(i)]] = i;
    c.rep = component_rep(cx, c.basis, c.index);
    a.comps[bd] = std::move(c);
  }

  // products for every pair whose target stays inside the window
  for (const auto& [bd1, c1] : a.comps)
    for (const auto& [bd2, c2] : a.comps) {
      Bidegree tgt{bd1.n + bd2.n, bd1.r + bd2.r};
      if (!w.contains(tgt)) continue;
      const Component* ct = a.comp(tgt);
      Index d1 = static_cast<Index>(c1.basis.size());
      Index d2 = static_cast<Index>(c2.basis.size());
      Mat m = Mat::Zero(a.dim(tgt), d1 * d2);
      if (ct != nullptr) {
        for (Index i = 0; i < d1; ++i) {
          Word wi = mono_to_word(c1.basis[static_cast<size_t>(i)]);
          for (Index j = 0; j < d2; ++j) {
            auto merged = word_merge(wi, mono_to_word(c2.basis[static_cast<size_t>(j)]), cx.gen_deg);
            if (!merged) continue;
            auto it = ct->index.find(word_to_mono(merged->first));
            if (it != ct->index.end()) m(it->second, i * d2 + j) = merged->second;
          }
        }
      }
      a.prod[{bd1, bd2}] = ProdBlock{tgt, std::move(m)};
    }

  // a generator differential is needed whenever the generator occurs in a
  // component whose own differential must be stored
  std::vector<bool> needed(p.gens.size(), false);
  for (const auto& [bd, c] : a.comps) {
    if (bd.n + 1 > w.n_max) continue;
    for (const auto& m : c.basis)
      for (const auto& [v, e] : m) needed[static_cast<size_t>(v.first)] = true;
  }
  a.gen_diff.resize(p.gens.size());
  for (size_t g = 0; g < p.gens.size(); ++g) {
    auto it = p.diff.find(static_cast<int>(g));
    bool zero = it == p.diff.end() || it->second.empty();
    Bidegree tgt{p.gens[g].deg + 1, p.adams(static_cast<int>(g))};
    if (zero) continue;
    if (!w.contains(tgt)) {
      if (needed[g])
        throw WindowTooSmall("d(" + p.gens[g].name + ") lands at " + to_string(tgt) +
                             " outside the window; widen it");
      continue;
    }
    a.gen_diff[g] = elaborate_diff_terms(a, p.gens[g].label, tgt, it->second);
  }

  // extend d to monomials by the Leibniz rule
  for (const auto& [bd, c] : a.comps) {
    Bidegree tgt{bd.n + 1, bd.r};
    if (!w.contains(tgt)) continue;
    const Component* ct = a.comp(tgt);
    Mat m = Mat::Zero(a.dim(tgt), static_cast<Index>(c.basis.size()));
    if (ct != nullptr) {
      for (Index i = 0; i < static_cast<Index>(c.basis.size()); ++i) {
        Word word = mono_to_word(c.basis[static_cast<size_t>(i)]);
        int sign_p = 1;
        for (size_t pos = 0; pos < word.size(); ++pos) {
          int g = word[pos].first;
          const Mat& dg = a.gen_diff[static_cast<size_t>(g)];
          if (dg.size() != 0) {
            Bidegree gb{p.gens[static_cast<size_t>(g)].deg + 1, p.adams(g)};
            const Component* cg = a.comp(gb);
            Word prefix(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(pos));
            Word suffix(word.begin() + static_cast<std::ptrdiff_t>(pos) + 1, word.end());
            for (Index t = 0; t < dg.rows(); ++t) {
              if (dg(t, word[pos].second) == 0) continue;
              auto m1 = word_merge(prefix, mono_to_word(cg->basis[static_cast<size_t>(t)]), cx.gen_deg);
              if (!m1) continue;
              auto m2 = word_merge(m1->first, suffix, cx.gen_deg);
              if (!m2) continue;
              auto it = ct->index.find(word_to_mono(m2->first));
              if (it != ct->index.end())
                m(it->second, i) += rat(sign_p * m1->second * m2->second) * dg(t, word[pos].second);
            }
          }
          if (cx.gen_deg[static_cast<size_t>(g)] % 2 != 0) sign_p = -sign_p;
        }
      }
    }
    a.diff[bd].push_back(DiffBlock{tgt, std::move(m)});
  }
  return a;
}

// ---------------------------------------------------------------------------
// checks

bool CheckReport::has(const std::string& kind) const {
  for (const auto& v : violations)
    if (v.kind == kind) return true;
  return false;
}

namespace {

void check_rep_structure(const LevelwiseCdga& a, Bidegree bd, const Component& c, CheckReport& rep) {
  const RepSpace& r = c.rep;
  std::string at = "component " + to_string(bd);
  if (static_cast<Index>(c.basis.size()) != r.dim() || r.e.rows() != r.dim() || r.f.rows() != r.dim()) {
    rep.violations.push_back({"shape", at});
    return;
  }
  for (Index i = 0; i < r.dim(); ++i) {
    // the central character of the weight has to match the Adams degree
    int cw = a.group == GroupKind::Gm ? r.weights[static_cast<size_t>(i)][0]
                                      : r.weights[static_cast<size_t>(i)][0] + r.weights[static_cast<size_t>(i)][1];
    if (cw != -bd.r) {
      rep.violations.push_back({"adams", at + " basis " + std::to_string(i)});
      break;
    }
  }
  if (a.group == GroupKind::Gm) {
    if (!is_zero(r.e) || !is_zero(r.f)) rep.violations.push_back({"equivariance", at + " torus has no sl2"});
    return;
  }
  bool ok = true;
  for (Index j = 0; j < r.dim() && ok; ++j)
    for (Index i = 0; i < r.dim() && ok; ++i) {
      const Weight& wi = r.weights[static_cast<size_t>(i)];
      const Weight& wj = r.weights[static_cast<size_t>(j)];
      if (r.e(i, j) != 0 && (wi[0] != wj[0] + 1 || wi[1] != wj[1] - 1)) ok = false;
      if (r.f(i, j) != 0 && (wi[0] != wj[0] - 1 || wi[1] != wj[1] + 1)) ok = false;
    }
  Mat h = r.e * r.f - r.f * r.e;
  for (Index i = 0; i < r.dim() && ok; ++i)
    for (Index j = 0; j < r.dim() && ok; ++j) {
      Rational want = i == j ? rat(r.weights[static_cast<size_t>(i)][0] - r.weights[static_cast<size_t>(i)][1]) : rat(0);
      if (h(i, j) != want) ok = false;
    }
  if (!ok) rep.violations.push_back({"equivariance", at + " invalid sl2 action"});
}

bool intertwines(const RepSpace& src, const RepSpace& tgt, const Mat& m) {
  if (!mat_eq(m * src.e, tgt.e * m)) return false;
  if (!mat_eq(m * src.f, tgt.f * m)) return false;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0 && tgt.weights[static_cast<size_t>(i)] != src.weights[static_cast<size_t>(j)])
        return false;
  return true;
}

RepSpace pair_rep(const RepSpace& x, const RepSpace& y) { return tensor(x, y); }

}  // namespace

CheckReport check_cdga(const LevelwiseCdga& a) {
  CheckReport rep;
  for (const auto& [bd, c] : a.comps) check_rep_structure(a, bd, c, rep);

  // unit component and unit laws
  Bidegree unit{0, 0};
  if (const Component* cu = a.comp(unit)) {
    if (cu->basis.size() != 1 || !cu->basis[0].empty())
      rep.violations.push_back({"unit", "component (0,0) is not spanned by 1"});
    for (const auto& [bd, c] : a.comps) {
      const ProdBlock* l = a.prod_block(unit, bd);
      const ProdBlock* r = a.prod_block(bd, unit);
      Mat id = Mat::Identity(static_cast<Index>(c.basis.size()), static_cast<Index>(c.basis.size()));
      if (l != nullptr && !mat_eq(l->m, id)) rep.violations.push_back({"unit", "1*x at " + to_string(bd)});
      if (r != nullptr && !mat_eq(r->m, id)) rep.violations.push_back({"unit", "x*1 at " + to_string(bd)});
    }
  }

  // differential blocks: placement, equivariance, d^2
  for (const auto& [bd, blocks] : a.diff) {
    for (const auto& blk : blocks) {
      std::string at = "d at " + to_string(bd) + " -> " + to_string(blk.target);
      if (blk.target.n != bd.n + 1) rep.violations.push_back({"degree", at});
      if (blk.target.r != bd.r) rep.violations.push_back({"adams", at});
      if (blk.m.rows() != a.dim(blk.target) || blk.m.cols() != a.dim(bd)) {
        rep.violations.push_back({"shape", at});
        continue;
      }
      const Component* cs = a.comp(bd);
      const Component* ct = a.comp(blk.target);
      if (cs != nullptr && ct != nullptr && !intertwines(cs->rep, ct->rep, blk.m))
        rep.violations.push_back({"equivariance", at});
    }
  }
  for (const auto& [bd, c] : a.comps) {
    if (bd.n + 2 > a.window.n_max) continue;
    Mat d1 = a.diff_matrix(bd);
    Mat d2 = a.diff_matrix({bd.n + 1, bd.r});
    if (!is_zero(d2 * d1)) rep.violations.push_back({"d-squared", "at " + to_string(bd)});
  }

  // products: placement, equivariance, commutativity, Leibniz, associativity
  for (const auto& [key, blk] : a.prod) {
    auto [bd1, bd2] = key;
    std::string at = "product " + to_string(bd1) + "*" + to_string(bd2);
    if (blk.target.n != bd1.n + bd2.n) rep.violations.push_back({"degree", at});
    if (blk.target.r != bd1.r + bd2.r) rep.violations.push_back({"adams", at});
    if (blk.m.rows() != a.dim(blk.target) || blk.m.cols() != a.dim(bd1) * a.dim(bd2)) {
      rep.violations.push_back({"shape", at});
      continue;
    }
    const Component* c1 = a.comp(bd1);
    const Component* c2 = a.comp(bd2);
    const Component* ct = a.comp(blk.target);
    if (c1 == nullptr || c2 == nullptr) continue;
    if (ct != nullptr && !intertwines(pair_rep(c1->rep, c2->rep), ct->rep, blk.m))
      rep.violations.push_back({"equivariance", at});
    const ProdBlock* flip = a.prod_block(bd2, bd1);
    if (flip != nullptr && flip->target == blk.target && flip->m.rows() == blk.m.rows() &&
        flip->m.cols() == a.dim(bd2) * a.dim(bd1)) {
      int sign = (bd1.n % 2 != 0 && bd2.n % 2 != 0) ? -1 : 1;
      bool ok = true;
      for (Index i = 0; i < a.dim(bd1) && ok; ++i)
        for (Index j = 0; j < a.dim(bd2) && ok; ++j)
          if (!mat_eq(blk.m.col(i * a.dim(bd2) + j), rat(sign) * flip->m.col(j * a.dim(bd1) + i))) ok = false;
      if (!ok) rep.violations.push_back({"commutativity", at});
    }
  }

  // Leibniz on pairs of components
  for (const auto& [key, blk] : a.prod) {
    auto [bd1, bd2] = key;
    if (blk.target.n + 1 > a.window.n_max) continue;
    if (blk.m.rows() != a.dim(blk.target) || blk.m.cols() != a.dim(bd1) * a.dim(bd2)) continue;
    Bidegree t1{bd1.n + 1, bd1.r};
    Bidegree t2{bd2.n + 1, bd2.r};
    Mat d1 = a.diff_matrix(bd1);
    Mat d2 = a.diff_matrix(bd2);
    Mat dt = a.diff_matrix(blk.target);
    int sgn = bd1.n % 2 != 0 ? -1 : 1;
    bool ok = true;
    for (Index i = 0; i < a.dim(bd1) && ok; ++i)
      for (Index j = 0; j < a.dim(bd2) && ok; ++j) {
        Vec lhs = dt * blk.m.col(i * a.dim(bd2) + j);
        Vec rhs = a.multiply(t1, d1.col(i), bd2, Vec::Unit(a.dim(bd2), j)) +
                  rat(sgn) * a.multiply(bd1, Vec::Unit(a.dim(bd1), i), t2, d2.col(j));
        if (!mat_eq(lhs, rhs)) ok = false;
      }
    if (!ok)
      rep.violations.push_back({"leibniz", "pair " + to_string(bd1) + "," + to_string(bd2)});
  }

  // associativity on triples
  for (const auto& [bd1, c1] : a.comps)
    for (const auto& [bd2, c2] : a.comps)
      for (const auto& [bd3, c3] : a.comps) {
        Bidegree t12{bd1.n + bd2.n, bd1.r + bd2.r};
        Bidegree t23{bd2.n + bd3.n, bd2.r + bd3.r};
        Bidegree t{t12.n + bd3.n, t12.r + bd3.r};
        if (!a.window.contains(t12) || !a.window.contains(t23) || !a.window.contains(t)) continue;
        if (a.dim(bd1) == 0 || a.dim(bd2) == 0 || a.dim(bd3) == 0 || a.dim(t) == 0) continue;
        const ProdBlock* p12 = a.prod_block(bd1, bd2);
        const ProdBlock* p23 = a.prod_block(bd2, bd3);
        if (p12 == nullptr || p23 == nullptr) continue;
        if (p12->m.cols() != a.dim(bd1) * a.dim(bd2) || p23->m.cols() != a.dim(bd2) * a.dim(bd3)) continue;
        bool ok = true;
        for (Index i = 0; i < a.dim(bd1) && ok; ++i)
          for (Index j = 0; j < a.dim(bd2) && ok; ++j)
            for (Index k = 0; k < a.dim(bd3) && ok; ++k) {
              Vec lhs = a.multiply(t12, p12->m.col(i * a.dim(bd2) + j), bd3, Vec::Unit(a.dim(bd3), k));
              Vec rhs = a.multiply(bd1, Vec::Unit(a.dim(bd1), i), t23, p23->m.col(j * a.dim(bd3) + k));
              if (!mat_eq(lhs, rhs)) ok = false;
            }
        if (!ok)
          rep.violations.push_back(
              {"associativity", to_string(bd1) + "," + to_string(bd2) + "," + to_string(bd3)});
      }

  return rep;
}

ConnectivityReport connectivity(const LevelwiseCdga& a) {
  ConnectivityReport r;
  r.connected = true;
  r.adams_connected = true;
  for (const auto& [bd, c] : a.comps) {
    if (c.basis.empty()) continue;
    if (bd.n < 0) r.connected = false;
    if (bd.n == 0 && bd != Bidegree{0, 0}) r.connected = false;
    if (bd.r < 0) r.adams_connected = false;
    if (bd.r == 0 && bd != Bidegree{0, 0}) r.adams_connected = false;
  }
  if (a.window.contains({0, 0})) {
    const Component* cu = a.comp({0, 0});
    if (cu == nullptr || cu->basis.size() != 1 || cu->rep.weights[0] != Weight{0, 0}) {
      r.connected = false;
      r.adams_connected = false;
    }
  }
  r.adams_connected = r.adams_connected && r.connected;
  r.coh_connected = r.connected && r.adams_connected;
  if (r.coh_connected && a.window.n_max >= 1) {
    for (int rr = a.window.r_min; rr <= a.window.r_max && r.coh_connected; ++rr) {
      Cohomology h = cohomology(a, {0, rr});
      if (rr == 0) {
        SemisimpleObject q;
        q.group = a.group;
        q.add(IrrLabel::trivial(a.group));
        if (!(h.obj == q)) r.coh_connected = false;
      } else if (h.obj.dim() != 0) {
        r.coh_connected = false;
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// cohomology

namespace {

SemisimpleObject ss_minus(const SemisimpleObject& x, const SemisimpleObject& y) {
  SemisimpleObject out;
  out.group = x.group;
  for (const auto& [l, k] : x.mult) {
    auto it = y.mult.find(l);
    int d = k - (it == y.mult.end() ? 0 : it->second);
    if (d < 0) throw AlgebraError("subquotient with negative multiplicity");
    if (d > 0) out.mult[l] = d;
  }
  for (const auto& [l, k] : y.mult)
    if (x.mult.find(l) == x.mult.end() && k > 0)
      throw AlgebraError("subquotient with negative multiplicity");
  return out;
}

}  // namespace

SemisimpleObject quotient_object(const RepSpace& rep, const Mat& span_cols) {
  return ss_minus(decompose(rep), decompose_span(rep, span_cols));
}

RepSpace restrict_rep(const RepSpace& r, const Mat& cols) {
  RepSpace out;
  out.group = r.group;
  for (Index j = 0; j < cols.cols(); ++j) {
    Weight w{0, 0};
    bool seen = false;
    for (Index i = 0; i < cols.rows(); ++i)
      if (cols(i, j) != 0) {
        if (!seen) {
          w = r.weights[static_cast<size_t>(i)];
          seen = true;
        } else if (r.weights[static_cast<size_t>(i)] != w) {
          throw AlgebraError("restrict_rep: column mixes weights");
        }
      }
    out.weights.push_back(w);
  }
  out.e = solve_many(cols, r.e * cols);
  out.f = solve_many(cols, r.f * cols);
  return out;
}

Cohomology cohomology(const LevelwiseCdga& a, Bidegree bd) {
  if (!a.window.contains(bd) || bd.n + 1 > a.window.n_max)
    throw OutOfWindow("cohomology at " + to_string(bd) + " needs the next level in the window");
  Bidegree below{bd.n - 1, bd.r};
  bool below_ok = a.window.contains(below) || (a.window.n_min == 0 && bd.n == 0);
  if (!below_ok) throw OutOfWindow("cohomology at " + to_string(bd) + " needs the level below");

  Cohomology h;
  h.bd = bd;
  h.obj.group = a.group;
  const Component* c = a.comp(bd);
  if (c == nullptr) {
    h.kernel = Mat(0, 0);
    h.image = Mat(0, 0);
    return h;
  }
  Mat d_out = a.diff_matrix(bd);
  Mat d_in = a.window.contains(below) && a.comp(below) != nullptr
                 ? a.diff_matrix(below)
                 : Mat::Zero(a.dim(bd), 0);
  h.kernel = kernel_basis(d_out);
  h.image = image_basis(d_in);

  RepSpace krep = restrict_rep(c->rep, h.kernel);
  Mat img_in_k = solve_many(h.kernel, h.image);
  h.obj = ss_minus(decompose(krep), decompose_span(krep, img_in_k));

  for (const auto& [l, mult] : h.obj.mult) {
    Mat hk = hw_vectors(krep, highest_weight(l));
    Mat hs = hw_vectors_in(krep, highest_weight(l), img_in_k);
    Mat comp_cols = subquotient_basis(hs, hk);
    Mat reps = h.kernel * comp_cols;
    h.hw_reps[l] = reps;
    for (Index j = 0; j < reps.cols(); ++j)
      h.reps[l].push_back(embed_copy(c->rep, l, reps.col(j)));
  }
  return h;
}

Vec class_coords(const Cohomology& h, const IrrLabel& l, const Vec& hw_cocycle) {
  auto it = h.hw_reps.find(l);
  Mat basis = it == h.hw_reps.end() ? Mat(h.image.rows(), 0) : it->second;
  Index k = basis.cols();
  auto sol = solve(hcat(basis, h.image), hw_cocycle);
  if (!sol) throw AlgebraError("class_coords: not a cocycle of the expected class");
  return sol->head(k);
}

std::map<Bidegree, SemisimpleObject> indecomposables(const LevelwiseCdga& a) {
  if (!connectivity(a).connected) throw NotConnected("indecomposables need a connected algebra");
  std::map<Bidegree, SemisimpleObject> out;
  for (const auto& [bd, c] : a.comps) {
    if (bd.n < 1) continue;
    Mat sub(static_cast<Index>(c.basis.size()), 0);
    for (const auto& [key, blk] : a.prod) {
      auto [bd1, bd2] = key;
      if (blk.target != bd) continue;
      if (bd1 == Bidegree{0, 0} || bd2 == Bidegree{0, 0}) continue;
      if (blk.m.rows() != static_cast<Index>(c.basis.size())) continue;
      sub = hcat(sub, blk.m);
    }
    out[bd] = ss_minus(decompose(c.rep), decompose_span(c.rep, image_basis(sub)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// morphisms

Mat CdgaMorphism::matrix_at(Bidegree bd) const {
  const Component* c = src->comp(bd);
  Index cols = src->dim(bd);
  Index rows = tgt->dim(bd);
  Mat m = Mat::Zero(rows, cols);
  if (c == nullptr) return m;
  for (Index i = 0; i < cols; ++i) {
    Word word = mono_to_word(c->basis[static_cast<size_t>(i)]);
    Bidegree cur{0, 0};
    Vec v = Vec::Zero(tgt->dim({0, 0}));
    if (v.size() > 0) v(0) = 1;
    bool dead = false;
    for (const auto& letter : word) {
      const GenDecl& gd = src->gens[static_cast<size_t>(letter.first)];
      Bidegree gb{gd.deg, adams_of(gd.label)};
      const Mat& img = gen_images[static_cast<size_t>(letter.first)];
      if (img.size() == 0) {
        dead = true;
        break;
      }
      v = tgt->multiply(cur, v, gb, img.col(letter.second));
      cur = Bidegree{cur.n + gb.n, cur.r + gb.r};
      if (is_zero(v)) {
        dead = true;
        break;
      }
    }
    if (!dead && cur == bd && v.size() == rows) m.col(i) = v;
  }
  return m;
}

CheckReport check_morphism(const CdgaMorphism& f) {
  CheckReport rep;
  if (f.src == nullptr || f.tgt == nullptr || f.src->group != f.tgt->group ||
      f.gen_images.size() != f.src->gens.size()) {
    rep.violations.push_back({"shape", "morphism data"});
    return rep;
  }
  for (size_t g = 0; g < f.src->gens.size(); ++g) {
    const GenDecl& gd = f.src->gens[g];
    Bidegree gb{gd.deg, adams_of(gd.label)};
    const Mat& img = f.gen_images[g];
    if (img.size() == 0) continue;
    if (img.rows() != f.tgt->dim(gb) || img.cols() != dim_of(gd.label)) {
      rep.violations.push_back({"shape", "image of " + gd.name});
      continue;
    }
    const Component* ct = f.tgt->comp(gb);
    if (ct != nullptr && !intertwines(model_space(gd.label), ct->rep, img))
      rep.violations.push_back({"equivariance", "image of " + gd.name});
  }
  if (!rep.ok()) return rep;
  for (const auto& [bd, c] : f.src->comps) {
    if (bd.n + 1 > f.src->window.n_max || bd.n + 1 > f.tgt->window.n_max) continue;
    Bidegree up{bd.n + 1, bd.r};
    Mat lhs = f.matrix_at(up) * f.src->diff_matrix(bd);
    Mat rhs = f.tgt->diff_matrix(bd) * f.matrix_at(bd);
    if (!mat_eq(lhs, rhs)) rep.violations.push_back({"d-commute", "at " + to_string(bd)});
  }
  return rep;
}

std::map<IrrLabel, Mat> cohomology_map(const CdgaMorphism& f, Bidegree bd) {
  Cohomology hs = cohomology(*f.src, bd);
  Cohomology ht = cohomology(*f.tgt, bd);
  Mat m = f.matrix_at(bd);
  std::map<IrrLabel, Mat> out;
  for (const auto& [l, mult] : hs.obj.mult) {
    auto it = ht.obj.mult.find(l);
    Index rows = it == ht.obj.mult.end() ? 0 : it->second;
    Mat block(rows, mult);
    const Mat& reps = hs.hw_reps[l];
    for (Index j = 0; j < reps.cols(); ++j) block.col(j) = class_coords(ht, l, m * reps.col(j));
    out[l] = block;
  }
  for (const auto& [l, mult] : ht.obj.mult)
    if (hs.obj.mult.find(l) == hs.obj.mult.end()) out[l] = Mat(mult, 0);
  return out;
}

bool compare_quasi_iso(const CdgaMorphism& f, Window w) {
  const Window& ws = f.src->window;
  const Window& wt = f.tgt->window;
  if (w.n_min < ws.n_min || w.n_max > ws.n_max || w.r_min < ws.r_min || w.r_max > ws.r_max ||
      w.n_min < wt.n_min || w.n_max > wt.n_max || w.r_min < wt.r_min || w.r_max > wt.r_max)
    throw OutOfWindow("compare_quasi_iso: window exceeds the materialized region");
  for (int n = w.n_min; n + 1 <= w.n_max; ++n)
    for (int r = w.r_min; r <= w.r_max; ++r) {
      auto blocks = cohomology_map(f, {n, r});
      for (const auto& [l, m] : blocks)
        if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
    }
  return true;
}

}  // namespace dga
