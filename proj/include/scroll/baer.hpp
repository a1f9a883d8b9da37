#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scroll/varieties.hpp"

namespace scroll {

/// The line {z = 0} of PG(2,q^2); its complement holds the affine points.
Subspace line_at_infinity(const FieldSpec& ext);

/// Baer subline: the unique PG(1,q) inside a line of PG(2,q^2) through
/// three collinear points.
class BaerSubline {
 public:
  Subspace carrier;
  std::vector<ProjPoint> pts;  // q+1 points, sorted

  bool contains(const ProjPoint& p) const {
    return std::binary_search(pts.begin(), pts.end(), p);
  }
  bool operator==(const BaerSubline& o) const { return pts == o.pts; }
};

BaerSubline baer_subline_through(const ExtensionEmbedding& emb, const ProjPoint& a,
                                 const ProjPoint& b, const ProjPoint& c);

/// q^2+q+1 points of PG(2,q^2) meeting the line at infinity in one point.
/// A genuine Baer subplane carries a canonical internal coordinatization
/// (the lexicographically least quadrangle mapped to the standard frame);
/// arbitrary tangent sets (mutation trials) carry none.
class BaerSubplane {
 public:
  static BaerSubplane from_points(const ExtensionEmbedding& emb, PointSet pts);

  const ExtensionEmbedding& embedding() const { return *emb_; }
  const PointSet& points() const { return pts_; }
  const ProjPoint& tangent_point() const { return tangent_; }
  /// Maps this subplane onto the standard subfield plane; empty when the
  /// point set is not a Baer subplane.
  const std::optional<Projectivity>& internal() const { return internal_; }

 private:
  BaerSubplane(const ExtensionEmbedding& emb, PointSet pts, ProjPoint tangent)
      : emb_(&emb), pts_(std::move(pts)), tangent_(std::move(tangent)) {}

  const ExtensionEmbedding* emb_;
  PointSet pts_;
  ProjPoint tangent_;
  std::optional<Projectivity> internal_;
};

/// Seed-deterministic tangent Baer subplane through a chosen point of the
/// line at infinity: a projective image of the standard subfield plane
/// moving one of its tangent lines onto the line at infinity.
BaerSubplane make_tangent_baer_subplane(const ExtensionEmbedding& emb, const ProjPoint& t,
                                        uint64_t seed);

/// Cone of q+1 lines joining a vertex to a Baer subline base.
class BaerPencil {
 public:
  ProjPoint vertex;
  BaerSubline base;
  std::vector<Subspace> cone_lines;
  PointSet pts;  // q^2(q+1)+1 points

  bool contains(const ProjPoint& p) const { return pts.contains(p); }
};

BaerPencil make_baer_pencil(const ExtensionEmbedding& emb, const ProjPoint& vertex,
                            const BaerSubline& base);

/// Vertex on the line at infinity and base meeting it: the cone contains
/// the whole line at infinity.
bool is_linf_pencil(const BaerPencil& d, const FieldSpec& ext);

/// True iff the internal-coordinate image of pts is a non-degenerate conic
/// of the standard PG(2,q). False whenever the subplane has no internal
/// coordinatization.
bool is_fq_conic(const std::vector<ProjPoint>& pts, const BaerSubplane& b);

enum class PencilClass { Point, OneSubline, TwoSublines, FqConic, Other };
std::string to_string(PencilClass c);

struct PencilIntersection {
  PencilClass cls = PencilClass::Other;
  std::string subcase;  // TwoSublines: "both-through-T" or "one-in-vertex-line"
  std::string diagnostic;
  std::vector<ProjPoint> common;  // B meet D, sorted
  std::vector<BaerSubline> sublines;
  bool conic = false;
};

/// How an linf-pencil meets a tangent set: the tangent point alone, one or
/// two Baer sublines through it, or an F_q-conic; Other with a diagnostic
/// when none of the shapes fit exactly.
PencilIntersection classify_pencil_intersection(const BaerSubplane& b, const BaerPencil& d);

}  // namespace scroll
