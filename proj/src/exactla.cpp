#include "dga/exactla.hpp"

namespace dga {

Rref rref(Mat m) {
  const Index rows = m.rows(), cols = m.cols();
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < cols && row < rows; ++col) {
    Index piv = -1;
    for (Index i = row; i < rows; ++i) {
      if (m(i, col) != 0) { piv = i; break; }
    }
    if (piv < 0) continue;
    if (piv != row) m.row(piv).swap(m.row(row));
    Rational inv = m(row, col);
    for (Index j = col; j < cols; ++j) m(row, j) /= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rational f = m(i, col);
      for (Index j = col; j < cols; ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

Index rank(const Mat& m) { return static_cast<Index>(rref(m).pivots.size()); }

Mat kernel_basis(const Mat& m) {
  const Index cols = m.cols();
  Rref r = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (Index p : r.pivots) is_pivot[p] = true;
  std::vector<Index> free_cols;
  for (Index c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat ker = Mat::Zero(cols, static_cast<Index>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    Index fc = free_cols[k];
    ker(fc, k) = 1;
    for (size_t i = 0; i < r.pivots.size(); ++i)
      ker(r.pivots[i], k) = -r.m(static_cast<Index>(i), fc);
  }
  return ker;
}

Mat image_basis(const Mat& m) {
  Rref r = rref(m);
  Mat img(m.rows(), static_cast<Index>(r.pivots.size()));
  for (size_t i = 0; i < r.pivots.size(); ++i) img.col(i) = m.col(r.pivots[i]);
  return img;
}

Mat subquotient_basis(const Mat& sub, const Mat& total) {
  if (sub.cols() > 0 && !span_contains(total, sub))
    throw SubspaceNotContained("subquotient: sub is not contained in span(total)");
  Mat both = hcat(sub, total);
  Rref r = rref(both);
  std::vector<Index> take;
  for (Index p : r.pivots)
    if (p >= sub.cols()) take.push_back(p - sub.cols());
  Mat reps(total.rows(), static_cast<Index>(take.size()));
  for (size_t i = 0; i < take.size(); ++i) reps.col(i) = total.col(take[i]);
  return reps;
}

Subquotient subquotient(const Mat& sub, const Mat& total) {
  const Index n = total.rows() > 0 ? total.rows() : sub.rows();
  Mat s = image_basis(sub);
  Mat reps = subquotient_basis(sub, total);
  // Complete [s | reps] to a basis of the ambient space with unit vectors.
  Mat sr = hcat(s, reps);
  Rref r = rref(sr.transpose());  // pivots = independent coordinate positions
  std::vector<bool> hit(n, false);
  for (Index p : r.pivots) hit[p] = true;
  Index extra = n - sr.cols();
  Mat full(n, n);
  full.leftCols(sr.cols()) = sr;
  Index at = sr.cols();
  for (Index i = 0; i < n && at < n; ++i) {
    if (hit[i]) continue;
    Vec e = Vec::Zero(n);
    e(i) = 1;
    full.col(at++) = e;
  }
  (void)extra;
  Mat inv = inverse(full);
  Subquotient q;
  q.reps = reps;
  q.coords = inv.block(s.cols(), 0, reps.cols(), n);
  return q;
}

bool in_span(const Mat& span, const Vec& v) {
  if (is_zero(v)) return true;
  return rank(hcat(span, v)) == rank(span);
}

bool span_contains(const Mat& span, const Mat& vectors) {
  if (vectors.cols() == 0) return true;
  return rank(hcat(span, vectors)) == rank(span);
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  Rref r = rref(hcat(a, b));
  for (Index p : r.pivots)
    if (p == a.cols()) return std::nullopt;
  Vec x = Vec::Zero(a.cols());
  for (size_t i = 0; i < r.pivots.size(); ++i)
    x(r.pivots[i]) = r.m(static_cast<Index>(i), a.cols());
  return x;
}

Mat solve_many(const Mat& a, const Mat& b) {
  Rref r = rref(hcat(a, b));
  Mat x = Mat::Zero(a.cols(), b.cols());
  for (size_t i = 0; i < r.pivots.size(); ++i) {
    Index p = r.pivots[i];
    if (p >= a.cols()) throw std::runtime_error("solve_many: inconsistent system");
    for (Index c = 0; c < b.cols(); ++c)
      x(p, c) = r.m(static_cast<Index>(i), a.cols() + c);
  }
  // Verify: residual must vanish (catches ranks hidden past a's columns).
  if (!mat_eq(a * x, b)) throw std::runtime_error("solve_many: inconsistent system");
  return x;
}

Mat left_inverse(const Mat& h) {
  Rref r = rref(hcat(h, Mat::Identity(h.rows(), h.rows())));
  Index inside = 0;
  for (Index p : r.pivots)
    if (p < h.cols()) ++inside;
  if (inside != h.cols())
    throw std::runtime_error("left_inverse: matrix does not have full column rank");
  Mat l(h.cols(), h.rows());
  for (Index i = 0; i < h.cols(); ++i)
    l.row(i) = r.m.block(i, h.cols(), 1, h.rows());
  return l;
}

Mat inverse(const Mat& m) {
  if (m.rows() != m.cols()) throw std::runtime_error("inverse: not square");
  Rref r = rref(hcat(m, Mat::Identity(m.rows(), m.rows())));
  if (static_cast<Index>(r.pivots.size()) != m.rows())
    throw std::runtime_error("inverse: singular matrix");
  return r.m.rightCols(m.rows());
}

Mat hcat(const Mat& a, const Mat& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  if (a.rows() != b.rows()) throw std::runtime_error("hcat: row mismatch");
  Mat m(a.rows(), a.cols() + b.cols());
  m.leftCols(a.cols()) = a;
  m.rightCols(b.cols()) = b;
  return m;
}

Mat vcat(const Mat& a, const Mat& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw std::runtime_error("vcat: col mismatch");
  Mat m(a.rows() + b.rows(), a.cols());
  m.topRows(a.rows()) = a;
  m.bottomRows(b.rows()) = b;
  return m;
}

bool is_zero(const Mat& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) return false;
  return true;
}

bool mat_eq(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

}  // namespace dga
