#include "dga/repsemi.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <stdexcept>

namespace dga {

std::string to_string(GroupKind g) { return g == GroupKind::Gm ? "Gm" : "GL2"; }

IrrLabel IrrLabel::gm(int w) {
  IrrLabel l;
  l.group = GroupKind::Gm;
  l.weight = w;
  return l;
}

IrrLabel IrrLabel::gl2(int sym, int det) {
  if (sym < 0) throw std::invalid_argument("IrrLabel: sym must be >= 0");
  IrrLabel l;
  l.group = GroupKind::GL2;
  l.sym = sym;
  l.det = det;
  return l;
}

IrrLabel IrrLabel::trivial(GroupKind g) {
  return g == GroupKind::Gm ? gm(0) : gl2(0, 0);
}

bool IrrLabel::operator<(const IrrLabel& o) const {
  if (group != o.group) return group < o.group;
  if (group == GroupKind::Gm) return weight < o.weight;
  if (sym != o.sym) return sym < o.sym;
  return det < o.det;
}

std::string to_string(const IrrLabel& l) {
  if (l.group == GroupKind::Gm) return "w(" + std::to_string(l.weight) + ")";
  return "sym(" + std::to_string(l.sym) + ")det(" + std::to_string(l.det) + ")";
}

Index dim_of(const IrrLabel& l) {
  return l.group == GroupKind::Gm ? 1 : l.sym + 1;
}

int central_weight(const IrrLabel& l) {
  return l.group == GroupKind::Gm ? l.weight : l.sym + 2 * l.det;
}

int adams_of(const IrrLabel& l) { return -central_weight(l); }

IrrLabel dual(const IrrLabel& l) {
  if (l.group == GroupKind::Gm) return IrrLabel::gm(-l.weight);
  return IrrLabel::gl2(l.sym, -l.sym - l.det);
}

Index SemisimpleObject::dim() const {
  Index d = 0;
  for (auto& [l, k] : mult) d += dim_of(l) * k;
  return d;
}

void SemisimpleObject::add(const IrrLabel& l, int k) {
  if (k == 0) return;
  int& m = mult[l];
  m += k;
  if (m == 0) mult.erase(l);
  if (m < 0) throw std::invalid_argument("SemisimpleObject: negative multiplicity");
}

SemisimpleObject dual(const SemisimpleObject& x) {
  SemisimpleObject d;
  d.group = x.group;
  for (auto& [l, k] : x.mult) d.add(dual(l), k);
  return d;
}

Index hom_dim(const SemisimpleObject& x, const SemisimpleObject& y) {
  Index h = 0;
  for (auto& [l, k] : x.mult) {
    auto it = y.mult.find(l);
    if (it != y.mult.end()) h += static_cast<Index>(k) * it->second;
  }
  return h;
}

Index invariants_dim(const SemisimpleObject& x) {
  auto it = x.mult.find(IrrLabel::trivial(x.group));
  return it == x.mult.end() ? 0 : it->second;
}

RepSpace RepSpace::empty(GroupKind g) {
  RepSpace r;
  r.group = g;
  r.e = Mat::Zero(0, 0);
  r.f = Mat::Zero(0, 0);
  return r;
}

RepSpace model_space(const IrrLabel& l) {
  RepSpace r;
  r.group = l.group;
  if (l.group == GroupKind::Gm) {
    r.weights = {Weight{l.weight, 0}};
    r.e = Mat::Zero(1, 1);
    r.f = Mat::Zero(1, 1);
    return r;
  }
  const int a = l.sym, b = l.det;
  const Index d = a + 1;
  r.weights.resize(d);
  r.e = Mat::Zero(d, d);
  r.f = Mat::Zero(d, d);
  for (int i = 0; i <= a; ++i) {
    r.weights[i] = Weight{a - i + b, i + b};
    if (i > 0) r.e(i - 1, i) = rat(i);          // e: x^(a-i)y^i -> i x^(a-i+1)y^(i-1)
    if (i < a) r.f(i + 1, i) = rat(a - i);      // f: x^(a-i)y^i -> (a-i) x^(a-i-1)y^(i+1)
  }
  return r;
}

Weight highest_weight(const IrrLabel& l) {
  if (l.group == GroupKind::Gm) return {l.weight, 0};
  return {l.sym + l.det, l.det};
}

IrrLabel label_of_highest_weight(GroupKind g, Weight w) {
  if (g == GroupKind::Gm) return IrrLabel::gm(w[0]);
  return IrrLabel::gl2(w[0] - w[1], w[1]);
}

bool weight_dominant(GroupKind g, Weight w) {
  return g == GroupKind::Gm || w[0] >= w[1];
}

RepSpace tensor(const RepSpace& x, const RepSpace& y) {
  RepSpace t;
  t.group = x.group;
  const Index dx = x.dim(), dy = y.dim(), d = dx * dy;
  t.weights.resize(d);
  t.e = Mat::Zero(d, d);
  t.f = Mat::Zero(d, d);
  for (Index i = 0; i < dx; ++i)
    for (Index j = 0; j < dy; ++j) {
      Index p = i * dy + j;
      t.weights[p] = {x.weights[i][0] + y.weights[j][0],
                      x.weights[i][1] + y.weights[j][1]};
      // group operators act by derivation, no signs (they are even)
      for (Index i2 = 0; i2 < dx; ++i2) {
        if (x.e(i2, i) != 0) t.e(i2 * dy + j, p) += x.e(i2, i);
        if (x.f(i2, i) != 0) t.f(i2 * dy + j, p) += x.f(i2, i);
      }
      for (Index j2 = 0; j2 < dy; ++j2) {
        if (y.e(j2, j) != 0) t.e(i * dy + j2, p) += y.e(j2, j);
        if (y.f(j2, j) != 0) t.f(i * dy + j2, p) += y.f(j2, j);
      }
    }
  return t;
}

RepSpace direct_sum(const RepSpace& x, const RepSpace& y) {
  RepSpace s;
  s.group = x.group;
  const Index dx = x.dim(), dy = y.dim();
  s.weights = x.weights;
  s.weights.insert(s.weights.end(), y.weights.begin(), y.weights.end());
  s.e = Mat::Zero(dx + dy, dx + dy);
  s.f = Mat::Zero(dx + dy, dx + dy);
  s.e.topLeftCorner(dx, dx) = x.e;
  s.e.bottomRightCorner(dy, dy) = y.e;
  s.f.topLeftCorner(dx, dx) = x.f;
  s.f.bottomRightCorner(dy, dy) = y.f;
  return s;
}

Mat hw_vectors(const RepSpace& x, Weight w) {
  std::vector<Index> idx;
  for (Index i = 0; i < x.dim(); ++i)
    if (x.weights[i] == w) idx.push_back(i);
  if (idx.empty()) return Mat(x.dim(), 0);
  // restrict e to the weight-w coordinate subspace and take its kernel
  Mat ew(x.dim(), static_cast<Index>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) ew.col(k) = x.e.col(idx[k]);
  Mat ker = kernel_basis(ew);
  Mat out = Mat::Zero(x.dim(), ker.cols());
  for (size_t k = 0; k < idx.size(); ++k)
    out.row(idx[k]) = ker.row(static_cast<Index>(k));
  return out;
}

Mat hw_vectors_in(const RepSpace& x, Weight w, const Mat& span) {
  if (span.cols() == 0) return Mat(x.dim(), 0);
  // conditions on coefficients c: off-weight rows of span*c vanish, e*span*c = 0
  std::vector<Index> off;
  for (Index i = 0; i < x.dim(); ++i)
    if (x.weights[i] != w) off.push_back(i);
  Mat cond(static_cast<Index>(off.size()) + x.dim(), span.cols());
  for (size_t k = 0; k < off.size(); ++k) cond.row(k) = span.row(off[k]);
  cond.bottomRows(x.dim()) = x.e * span;
  Mat ker = kernel_basis(cond);
  if (ker.cols() == 0) return Mat(x.dim(), 0);
  return image_basis(span * ker);
}

SemisimpleObject decompose(const RepSpace& x) {
  SemisimpleObject s;
  s.group = x.group;
  std::set<Weight> seen(x.weights.begin(), x.weights.end());
  for (const Weight& w : seen) {
    if (!weight_dominant(x.group, w)) continue;
    Index m = hw_vectors(x, w).cols();
    if (m > 0) s.add(label_of_highest_weight(x.group, w), static_cast<int>(m));
  }
  return s;
}

SemisimpleObject decompose_span(const RepSpace& x, const Mat& span) {
  SemisimpleObject s;
  s.group = x.group;
  std::set<Weight> seen(x.weights.begin(), x.weights.end());
  for (const Weight& w : seen) {
    if (!weight_dominant(x.group, w)) continue;
    Index m = hw_vectors_in(x, w, span).cols();
    if (m > 0) s.add(label_of_highest_weight(x.group, w), static_cast<int>(m));
  }
  return s;
}

Mat embed_copy(const RepSpace& x, const IrrLabel& l, const Vec& hw) {
  Mat emb(x.dim(), dim_of(l));
  emb.col(0) = hw;
  for (Index i = 0; i + 1 < dim_of(l); ++i) {
    // model convention: f(model_i) = (sym - i) model_{i+1}
    Rational c = rat(l.sym - static_cast<long>(i));
    emb.col(i + 1) = (x.f * emb.col(i)) / c;
  }
  return emb;
}

static Vec normalize_leading(Vec v) {
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return v / v(i);
  return v;
}

const TensorDecomposition& tensor_decompose(const IrrLabel& x, const IrrLabel& y) {
  static std::map<std::pair<IrrLabel, IrrLabel>, TensorDecomposition> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(x, y);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  TensorDecomposition td;
  RepSpace t = tensor(model_space(x), model_space(y));
  SemisimpleObject parts = decompose(t);
  // list summands with sym descending (Gm has a single summand)
  std::vector<IrrLabel> order;
  for (auto& [l, k] : parts.mult)
    for (int c = 0; c < k; ++c) order.push_back(l);
  std::sort(order.begin(), order.end(), [](const IrrLabel& a, const IrrLabel& b) {
    if (a.group == GroupKind::GL2 && a.sym != b.sym) return a.sym > b.sym;
    return b < a;
  });
  Mat all(t.dim(), 0);
  for (const IrrLabel& l : order) {
    Mat hw = hw_vectors(t, highest_weight(l));
    // GL2 Clebsch-Gordan is multiplicity free; Gm blocks are 1-dim anyway
    if (hw.cols() != 1)
      throw std::runtime_error("tensor_decompose: unexpected multiplicity");
    Mat emb = embed_copy(t, l, normalize_leading(hw.col(0)));
    td.labels.push_back(l);
    td.inc.push_back(emb);
    all = hcat(all, emb);
  }
  Mat inv = inverse(all);
  Index at = 0;
  for (size_t k = 0; k < td.labels.size(); ++k) {
    td.proj.push_back(inv.block(at, 0, dim_of(td.labels[k]), t.dim()));
    at += dim_of(td.labels[k]);
  }
  auto [pos, ok] = cache.emplace(key, std::move(td));
  (void)ok;
  return pos->second;
}

Mat pairing_matrix(const IrrLabel& l) {
  const TensorDecomposition& td = tensor_decompose(dual(l), l);
  const Index d = dim_of(l);
  for (size_t k = 0; k < td.labels.size(); ++k) {
    if (td.labels[k] == IrrLabel::trivial(l.group)) {
      Mat p(d, d);
      for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) p(i, j) = td.proj[k](0, i * d + j);
      return p;
    }
  }
  throw std::runtime_error("pairing_matrix: no invariant in dual(l) ⊗ l");
}

}  // namespace dga
