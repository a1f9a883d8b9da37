#pragma once

#include <vector>

#include "scroll/gf.hpp"

namespace scroll::linalg {

// Small dense exact matrices over one FieldSpec. Everything here is sized
// for projective work in at most 5 coordinates; clarity over blocking.
using Row = std::vector<FieldElement>;
using Mat = std::vector<Row>;

Mat zeros(const FieldSpec& f, int rows, int cols);
Mat identity(const FieldSpec& f, int n);

/// Full Gauss-Jordan reduction to reduced row echelon form (leading ones,
/// zeros above and below pivots, pivot columns strictly increasing, zero
/// rows dropped). Returns the pivot columns.
std::vector<int> rref_in_place(Mat& m);
Mat rref(Mat m);
int rank(Mat m);

/// Basis of the right kernel {v : m v = 0}, returned as RREF rows.
Mat kernel(const Mat& m);

Mat matmul(const Mat& a, const Mat& b);
Row matvec(const Mat& a, const Row& v);
Mat transpose(const Mat& m);
FieldElement det(Mat m);
Mat inverse(Mat m);  // throws DomainError when singular

}  // namespace scroll::linalg
