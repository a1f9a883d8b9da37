#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <string>
#include <vector>

#include "scroll/gf.hpp"
#include "scroll/linalg.hpp"

namespace scroll {

/// Point of PG(n,q): a nonzero coordinate vector normalized so the first
/// nonzero coordinate is 1. Canonical, so equality is coordinate equality
/// and points order lexicographically (field elements compared by their
/// coefficient vectors).
class ProjPoint {
 public:
  ProjPoint(const FieldSpec& spec, std::vector<FieldElement> coords);
  static ProjPoint from_indices(const FieldSpec& spec, const std::vector<int>& idx);

  const FieldSpec& spec() const { return *spec_; }
  int ambient() const { return static_cast<int>(coords_.size()) - 1; }
  const std::vector<FieldElement>& coords() const { return coords_; }
  FieldElement operator[](int i) const { return coords_[i]; }

  /// Injective within one (spec, ambient): 7 bits per coordinate index.
  uint64_t key() const;
  bool operator==(const ProjPoint& o) const { return coords_ == o.coords_; }
  bool operator!=(const ProjPoint& o) const { return !(*this == o); }
  bool operator<(const ProjPoint& o) const;
  std::string to_string() const;

 private:
  const FieldSpec* spec_;
  std::vector<FieldElement> coords_;
};

/// Subspace of PG(n,q) in canonical reduced-row-echelon basis form.
/// Hyperplanes built via from_dual carry a cached dual covector for O(n)
/// incidence tests; the covector does not take part in equality.
class Subspace {
 public:
  Subspace(const FieldSpec& spec, int ambient, linalg::Mat generating_rows);
  static Subspace empty(const FieldSpec& spec, int ambient);
  static Subspace full(const FieldSpec& spec, int ambient);
  static Subspace from_dual(const FieldSpec& spec, const linalg::Row& covector);

  const FieldSpec& spec() const { return *spec_; }
  int ambient() const { return ambient_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  int proj_dim() const { return rank() - 1; }
  const linalg::Mat& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains(const ProjPoint& p) const;
  bool contains(const Subspace& s) const;
  const std::optional<linalg::Row>& dual() const { return dual_; }
  FieldElement eval_dual(const ProjPoint& p) const;

  /// Coordinates of a point of this subspace w.r.t. the RREF basis rows.
  /// Throws UsageError if the point is outside.
  linalg::Row internal_coords(const ProjPoint& p) const;
  ProjPoint from_internal(const linalg::Row& c) const;

  /// All (q^rank - 1)/(q-1) points, sorted.
  std::vector<ProjPoint> points() const;

  /// Injective for rank*(ambient+1-rank) <= 7: pivot mask plus the free
  /// entries of the canonical basis.
  uint64_t key() const;
  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }
  bool operator!=(const Subspace& o) const { return !(*this == o); }
  bool operator<(const Subspace& o) const;
  std::string to_string() const;

 private:
  const FieldSpec* spec_;
  int ambient_;
  linalg::Mat basis_;
  std::vector<int> pivots_;
  std::optional<linalg::Row> dual_;
};

/// Sorted duplicate-free point set with O(1) membership via the injective
/// point keys. The workhorse container for exhaustive section scans.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<ProjPoint> pts);

  const std::vector<ProjPoint>& points() const { return pts_; }
  std::size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }
  bool contains(const ProjPoint& p) const { return keys_.count(p.key()) > 0; }
  bool contains_all(const std::vector<ProjPoint>& v) const;
  bool operator==(const PointSet& o) const { return pts_ == o.pts_; }
  bool operator!=(const PointSet& o) const { return !(*this == o); }
  auto begin() const { return pts_.begin(); }
  auto end() const { return pts_.end(); }

 private:
  std::vector<ProjPoint> pts_;
  std::unordered_set<uint64_t> keys_;
};

Subspace span(const std::vector<ProjPoint>& pts);
Subspace span(const Subspace& a, const Subspace& b);
Subspace span(const Subspace& a, const ProjPoint& p);
Subspace meet(const Subspace& a, const Subspace& b);
Subspace line_through(const ProjPoint& a, const ProjPoint& b);

/// All points of PG(n,q), lexicographic on normalized coordinates.
std::vector<ProjPoint> enumerate_points(const FieldSpec& spec, int n);
/// All hyperplanes of PG(n,q), lexicographic on the normalized dual
/// covector. Each carries its cached dual.
std::vector<Subspace> enumerate_hyperplanes(const FieldSpec& spec, int n);
/// Parameter points of PG(1,q) in canonical order.
std::vector<ProjPoint> parameter_line(const FieldSpec& spec);

/// Projection from a point onto a hyperplane not through it:
/// X -> <X, center> meet hyperplane. Fixes the hyperplane pointwise.
class PointProjection {
 public:
  PointProjection(ProjPoint center, Subspace hyperplane);
  ProjPoint operator()(const ProjPoint& x) const;
  const ProjPoint& center() const { return center_; }
  const Subspace& hyperplane() const { return hyperplane_; }

 private:
  ProjPoint center_;
  Subspace hyperplane_;
  FieldElement fc_;  // dual value at the center
};

/// Invertible (n+1)x(n+1) matrix up to scalar; first nonzero entry
/// normalized to 1 so equality is matrix equality.
class Projectivity {
 public:
  Projectivity(const FieldSpec& spec, linalg::Mat m);
  static Projectivity identity(const FieldSpec& spec, int n);

  const FieldSpec& spec() const { return *spec_; }
  int dim() const { return static_cast<int>(m_.size()) - 1; }
  const linalg::Mat& matrix() const { return m_; }
  ProjPoint apply(const ProjPoint& p) const;
  Subspace apply(const Subspace& s) const;
  Projectivity compose(const Projectivity& inner) const;  // this after inner
  Projectivity inverse() const;
  bool operator==(const Projectivity& o) const { return m_ == o.m_; }
  bool operator!=(const Projectivity& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  const FieldSpec* spec_;
  linalg::Mat m_;
};

/// Canonical parametrization of a line: (s:u) -> s*b0 + u*b1 over the RREF
/// basis rows. Two charts of the same line agree up to a projectivity of
/// PG(1,q), which is all the ruling machinery needs.
class LineChart {
 public:
  explicit LineChart(Subspace line);
  const Subspace& line() const { return line_; }
  ProjPoint point_at(const ProjPoint& param) const;
  ProjPoint param_of(const ProjPoint& x) const;

 private:
  Subspace line_;
};

/// Cross-ratio with the normalization cross_ratio(A,B,C,D) = image of D
/// under the unique projectivity sending A,B,C to 0,1,infinity. nullopt
/// encodes infinity. Requires four distinct collinear points.
std::optional<FieldElement> cross_ratio(const ProjPoint& a, const ProjPoint& b,
                                        const ProjPoint& c, const ProjPoint& d);

/// Unique projectivity of PG(1,q) sending one distinct triple to another.
Projectivity fit_projectivity_line(const std::vector<ProjPoint>& src,
                                   const std::vector<ProjPoint>& dst);

/// Unique projectivity sending the standard frame e0..en, (1,...,1) to the
/// given n+2 points in general position.
Projectivity frame_projectivity(const std::vector<ProjPoint>& pts);

}  // namespace scroll
