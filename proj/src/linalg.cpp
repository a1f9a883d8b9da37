#include "scroll/linalg.hpp"

#include "scroll/errors.hpp"

namespace scroll::linalg {

Mat zeros(const FieldSpec& f, int rows, int cols) {
  return Mat(rows, Row(cols, f.zero()));
}

Mat identity(const FieldSpec& f, int n) {
  Mat m = zeros(f, n, n);
  for (int i = 0; i < n; ++i) m[i][i] = f.one();
  return m;
}

std::vector<int> rref_in_place(Mat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (!m[i][c].is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(m[r], m[sel]);
    FieldElement inv = m[r][c].inverse();
    for (int j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      FieldElement f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

Mat rref(Mat m) {
  rref_in_place(m);
  return m;
}

int rank(Mat m) { return static_cast<int>(rref_in_place(m).size()); }

Mat kernel(const Mat& m) {
  if (m.empty()) return {};
  const FieldSpec& f = m[0][0].spec();
  const int cols = static_cast<int>(m[0].size());
  Mat red = m;
  std::vector<int> pivots = rref_in_place(red);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  Mat ker;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    Row v(cols, f.zero());
    v[c] = f.one();
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -red[r][c];
    ker.push_back(std::move(v));
  }
  rref_in_place(ker);
  return ker;
}

Mat matmul(const Mat& a, const Mat& b) {
  const FieldSpec& f = a[0][0].spec();
  const int n = static_cast<int>(a.size());
  const int k = static_cast<int>(b.size());
  const int m = static_cast<int>(b[0].size());
  Mat r = zeros(f, n, m);
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (int j = 0; j < m; ++j) r[i][j] = r[i][j] + a[i][t] * b[t][j];
    }
  return r;
}

Row matvec(const Mat& a, const Row& v) {
  const FieldSpec& f = a[0][0].spec();
  Row r(a.size(), f.zero());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) r[i] = r[i] + a[i][j] * v[j];
  return r;
}

Mat transpose(const Mat& m) {
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  Mat t(cols, Row(rows, m[0][0].spec().zero()));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

FieldElement det(Mat m) {
  const FieldSpec& f = m[0][0].spec();
  const int n = static_cast<int>(m.size());
  FieldElement d = f.one();
  for (int c = 0; c < n; ++c) {
    int sel = -1;
    for (int i = c; i < n; ++i)
      if (!m[i][c].is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) return f.zero();
    if (sel != c) {
      std::swap(m[sel], m[c]);
      d = -d;
    }
    d = d * m[c][c];
    FieldElement inv = m[c][c].inverse();
    for (int i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      FieldElement fct = m[i][c] * inv;
      for (int j = c; j < n; ++j) m[i][j] = m[i][j] - fct * m[c][j];
    }
  }
  return d;
}

Mat inverse(Mat m) {
  const FieldSpec& f = m[0][0].spec();
  const int n = static_cast<int>(m.size());
  Mat aug = m;
  for (int i = 0; i < n; ++i) {
    Row id(n, f.zero());
    id[i] = f.one();
    aug[i].insert(aug[i].end(), id.begin(), id.end());
  }
  std::vector<int> pivots = rref_in_place(aug);
  if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1)
    throw DomainError("matrix is singular");
  Mat inv(n, Row(n, f.zero()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

}  // namespace scroll::linalg
