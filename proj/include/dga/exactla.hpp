#pragma once
// Exact linear algebra over Q: reduced row echelon form, kernel/image bases,
// subquotient representatives. Pivoting is always leftmost-first, so every
// basis coming out of here is deterministic.
#include "dga/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace dga {

struct SubspaceNotContained : std::runtime_error {
  explicit SubspaceNotContained(const std::string& msg) : std::runtime_error(msg) {}
};

struct Rref {
  Mat m;
  std::vector<Index> pivots;  // pivot column of each nonzero row, increasing
};

Rref rref(Mat m);
Index rank(const Mat& m);

// Columns span ker(m). Free columns are set to 1 one at a time, in column
// order, so e.g. ker [[1,2],[2,4]] = {(-2,1)}.
Mat kernel_basis(const Mat& m);

// The pivot columns of m itself (original vectors, not reduced ones).
Mat image_basis(const Mat& m);

// Columns of `total` whose classes form a basis of (span(sub)+span(total))/span(sub).
// Throws SubspaceNotContained unless span(sub) is contained in span(total).
Mat subquotient_basis(const Mat& sub, const Mat& total);

// Representatives plus a coordinate map for total/sub. For v in span(total),
// coords*v gives the class of v in the reps basis; coords kills span(sub).
// Off span(total) the value is an arbitrary (but fixed) linear extension.
struct Subquotient {
  Mat reps;    // ambient x k
  Mat coords;  // k x ambient
};
Subquotient subquotient(const Mat& sub, const Mat& total);

bool in_span(const Mat& span, const Vec& v);
bool span_contains(const Mat& span, const Mat& vectors);

// Particular solution of A x = b with free variables set to 0.
std::optional<Vec> solve(const Mat& a, const Vec& b);
// Columnwise solve; throws std::runtime_error if any column is inconsistent.
Mat solve_many(const Mat& a, const Mat& b);

// L with L*h = I for h of full column rank (throws otherwise).
Mat left_inverse(const Mat& h);
// Exact inverse of a nonsingular square matrix (throws otherwise).
Mat inverse(const Mat& m);

Mat hcat(const Mat& a, const Mat& b);
Mat vcat(const Mat& a, const Mat& b);

// Exact elementwise tests (Eigen's isZero/operator== are float-minded).
bool is_zero(const Mat& m);
bool mat_eq(const Mat& a, const Mat& b);

}  // namespace dga
