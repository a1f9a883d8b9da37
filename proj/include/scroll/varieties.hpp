#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "scroll/projgeom.hpp"

namespace scroll {

/// Quadratic form on a plane chart, six coefficients ordered
/// xx, xy, xz, yy, yz, zz. Works in every characteristic: the polar form
/// is computed as Q(u+v) - Q(u) - Q(v).
struct PlaneForm {
  std::array<FieldElement, 6> c;

  FieldElement eval(const linalg::Row& v) const;
  FieldElement polar(const linalg::Row& u, const linalg::Row& v) const;
  std::string to_string() const;
};

/// Non-degenerate conic: carrier plane, fitted form in the plane chart,
/// and its q+1 points (sorted, ambient coordinates). origin/axis fix the
/// canonical rational parametrization so that charts extend verbatim to
/// field extensions.
class Conic {
 public:
  Subspace plane;
  PlaneForm form;
  std::vector<ProjPoint> pts;
  linalg::Row origin_internal;  // chart origin O on the conic
  int axis_i = 0, axis_j = 1;   // chart line <e_i, e_j> of the plane, O not on it

  const FieldSpec& spec() const { return plane.spec(); }
  bool contains(const ProjPoint& p) const;
  ProjPoint origin() const { return plane.from_internal(origin_internal); }
  /// Tangent line of the conic at one of its points.
  Subspace tangent_at(const ProjPoint& p) const;
  bool operator==(const Conic& o) const { return pts == o.pts; }
};

/// Canonical parametrization of a conic: the pencil of lines through the
/// chart origin, indexed by the chart axis line. point_at(param) is the
/// second intersection of the pencil line with the conic.
class ConicChart {
 public:
  explicit ConicChart(const Conic& c) : conic_(&c) {}
  ProjPoint point_at(const ProjPoint& param) const;
  ProjPoint param_of(const ProjPoint& pt) const;

 private:
  const Conic* conic_;
};

/// Twisted cubic: carrier 3-space, the parametrizing coefficient matrix
/// over the degree-3 Veronese (s^3, s^2 t, s t^2, t^3) in carrier-internal
/// coordinates, and the q+1 points.
class TwistedCubic {
 public:
  Subspace carrier;
  linalg::Mat coeff;  // 4x4, internal coords = coeff * veronese(s,t)
  std::vector<ProjPoint> pts;

  ProjPoint point_at(const ProjPoint& param) const;
  bool operator==(const TwistedCubic& o) const { return pts == o.pts; }
};

/// Scroll ruling a line and a conic according to a projectivity: the
/// parameter t runs over PG(1,q); generator t joins directrix chart point
/// t to conic chart point sigma(t).
class RuledCubicSurface {
 public:
  Projectivity sigma;
  Subspace directrix;
  Conic conic;                       // the conic directrix used by the ruling
  std::vector<Subspace> generators;  // parameter order
  PointSet pts;

  const FieldSpec& spec() const { return directrix.spec(); }
  int q() const { return spec().order(); }
};

/// A regulus and the hyperbolic quadric it rules.
class Regulus {
 public:
  Subspace carrier;               // the 3-space
  std::vector<Subspace> lines;    // q+1 mutually skew lines, sorted
  std::array<FieldElement, 10> form;  // rank-4 quadratic form, carrier chart
  PointSet quadric;               // (q+1)^2 points

  bool operator==(const Regulus& o) const { return lines == o.lines; }
};

enum class SectionClass { T1, T2, T3, T4, T5, T6, T7, T8, Other };
std::string to_string(SectionClass c);

/// Result of classifying a hyperplane section: the class plus a witness
/// decomposition that reproduces the section exactly as a set.
struct SectionType {
  SectionClass cls = SectionClass::Other;
  std::string diagnostic;
  std::vector<ProjPoint> section;   // K meet Pi, sorted
  std::vector<Subspace> lines;      // fully contained lines of the witness
  std::optional<Conic> conic;
  std::optional<TwistedCubic> cubic;

  bool in_first_five() const {
    return cls == SectionClass::T1 || cls == SectionClass::T2 ||
           cls == SectionClass::T3 || cls == SectionClass::T4 ||
           cls == SectionClass::T5;
  }
};

/// Standard-coordinates scroll: directrix {(s,u,0,0,0)}, conic
/// {(0,0,s^2,su,u^2)}, generators pairing parameters through sigma.
RuledCubicSurface make_ruled_cubic_surface(const FieldSpec& spec, const Projectivity& sigma);

/// Scroll over arbitrary ruling data. The directrix must miss the conic
/// plane; the generators must come out pairwise disjoint.
RuledCubicSurface surface_from_ruling(const Subspace& directrix, const Conic& conic,
                                      const Projectivity& sigma);

/// The q^2 conics contained in the surface other than through the ruling:
/// every conic section of the surface. Each meets every generator once,
/// misses the directrix, and two of them share exactly one point.
std::vector<Conic> conic_directrices(const RuledCubicSurface& s);

/// Accepts exactly the point sets that span a plane, have q+1 points and
/// are the full zero set of a non-degenerate quadratic form there.
std::optional<Conic> recognize_conic(const std::vector<ProjPoint>& pts);

/// Accepts exactly the (q+1)-point sets spanning a 3-space with no four
/// points coplanar that a projectivity carries onto the standard curve
/// {(1,t,t^2,t^3)} u {(0,0,0,1)}.
std::optional<TwistedCubic> recognize_twisted_cubic(const std::vector<ProjPoint>& pts);

/// Exactly the lines all of whose q+1 points lie in the set, sorted.
std::vector<Subspace> lines_fully_contained(const PointSet& pts);

/// Classify K meet hyperplane against the eight section shapes. Every
/// returned witness reproduces the section exactly; anything that does not
/// decompose is Other with a diagnostic.
SectionType classify_section(const PointSet& k, const Subspace& hyperplane);

/// The q+1 pairwise skew lines partitioning a set that satisfies the
/// section hypothesis, seeded from the lexicographically least conic
/// plane. Throws ReconstructionError naming the failed stage otherwise.
std::vector<Subspace> extract_sticks(const PointSet& k, bool verify_hypothesis = false);

/// The unique contained line that is not a stick; meets every stick.
Subspace extract_baseline(const PointSet& k, const std::vector<Subspace>& sticks);

/// The unique conic of K through two points on distinct sticks, neither on
/// the baseline. Meets each stick once and misses the baseline.
Conic unique_conic_through(const PointSet& k, const ProjPoint& p, const ProjPoint& q,
                           const std::vector<Subspace>& sticks, const Subspace& baseline);

struct RulingRecovery {
  std::vector<Subspace> sticks;
  Subspace baseline;
  Conic conic;
  Projectivity sigma;
  RuledCubicSurface surface;  // regenerated from (baseline, conic, sigma)
};

/// Full reconstruction pipeline on a bare point set: sticks, baseline,
/// conic, ruling projectivity; the regenerated scroll must reproduce K.
RulingRecovery recover_ruling(const PointSet& k);

/// Regulus through three pairwise skew lines of a common 3-space, plus the
/// opposite family.
Regulus regulus_through(const Subspace& l1, const Subspace& l2, const Subspace& l3);
Regulus opposite_regulus(const Regulus& r);

}  // namespace scroll
