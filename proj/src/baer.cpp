#include "scroll/baer.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "scroll/errors.hpp"

namespace scroll {

namespace {

std::vector<ProjPoint> embedded_parameters(const ExtensionEmbedding& emb) {
  const FieldSpec& ext = emb.ext();
  std::vector<ProjPoint> out;
  for (const ProjPoint& t : parameter_line(emb.base())) {
    out.push_back(ProjPoint(ext, {emb.embed(t[0]), emb.embed(t[1])}));
  }
  return out;
}

}  // namespace

Subspace line_at_infinity(const FieldSpec& ext) {
  linalg::Row cov(3, ext.zero());
  cov[2] = ext.one();
  return Subspace::from_dual(ext, cov);
}

BaerSubline baer_subline_through(const ExtensionEmbedding& emb, const ProjPoint& a,
                                 const ProjPoint& b, const ProjPoint& c) {
  const FieldSpec& ext = emb.ext();
  if (a == b || a == c || b == c) throw UsageError("three distinct points required");
  Subspace carrier = line_through(a, b);
  if (!carrier.contains(c)) throw UsageError("points are not collinear");
  LineChart chart(carrier);
  ProjPoint zero = ProjPoint::from_indices(ext, {1, 0});
  ProjPoint one = ProjPoint::from_indices(ext, {1, 1});
  ProjPoint inf = ProjPoint::from_indices(ext, {0, 1});
  Projectivity g = fit_projectivity_line(
      {zero, one, inf}, {chart.param_of(a), chart.param_of(b), chart.param_of(c)});
  std::vector<ProjPoint> pts;
  for (const ProjPoint& t : embedded_parameters(emb))
    pts.push_back(chart.point_at(g.apply(t)));
  std::sort(pts.begin(), pts.end());
  return BaerSubline{std::move(carrier), std::move(pts)};
}

BaerSubplane BaerSubplane::from_points(const ExtensionEmbedding& emb, PointSet pts) {
  const FieldSpec& ext = emb.ext();
  const int q = emb.base().order();
  if (static_cast<int>(pts.size()) != q * q + q + 1)
    throw UsageError("tangent set must have q^2+q+1 points");
  Subspace linf = line_at_infinity(ext);
  std::vector<ProjPoint> on_inf;
  for (const auto& p : pts)
    if (linf.eval_dual(p).is_zero()) on_inf.push_back(p);
  if (on_inf.size() != 1)
    throw UsageError("tangent set must meet the line at infinity in one point");

  BaerSubplane b(emb, std::move(pts), on_inf[0]);

  // canonical internal coordinatization: lexicographically least quadrangle
  // mapped onto the standard frame
  const auto& v = b.pts_.points();
  const int n = static_cast<int>(v.size());
  auto collinear = [&](const ProjPoint& x, const ProjPoint& y, const ProjPoint& z) {
    return (x[0] * (y[1] * z[2] - y[2] * z[1]) - x[1] * (y[0] * z[2] - y[2] * z[0]) +
            x[2] * (y[0] * z[1] - y[1] * z[0]))
        .is_zero();
  };
  std::optional<Projectivity> internal;
  for (int a = 0; a < n && !internal; ++a)
    for (int c = a + 1; c < n && !internal; ++c)
      for (int d = c + 1; d < n && !internal; ++d) {
        if (collinear(v[a], v[c], v[d])) continue;
        for (int e = d + 1; e < n && !internal; ++e) {
          if (collinear(v[a], v[c], v[e]) || collinear(v[a], v[d], v[e]) ||
              collinear(v[c], v[d], v[e]))
            continue;
          internal = frame_projectivity({v[a], v[c], v[d], v[e]}).inverse();
        }
      }
  if (internal) {
    bool subfield_image = true;
    for (const auto& p : b.pts_) {
      ProjPoint ip = internal->apply(p);
      for (int i = 0; i < 3 && subfield_image; ++i)
        if (!emb.in_subfield(ip[i])) subfield_image = false;
      if (!subfield_image) break;
    }
    if (subfield_image) b.internal_ = internal;
  }
  return b;
}

BaerSubplane make_tangent_baer_subplane(const ExtensionEmbedding& emb, const ProjPoint& t,
                                        uint64_t seed) {
  const FieldSpec& ext = emb.ext();
  Subspace linf = line_at_infinity(ext);
  if (!linf.contains(t)) throw UsageError("tangency point must lie at infinity");

  // standard subfield plane
  std::vector<ProjPoint> b0;
  for (const ProjPoint& p : enumerate_points(emb.base(), 2)) {
    b0.push_back(ProjPoint(ext, {emb.embed(p[0]), emb.embed(p[1]), emb.embed(p[2])}));
  }
  PointSet b0set(b0);

  // tangent lines of the subfield plane, with their tangency points
  std::vector<std::pair<Subspace, ProjPoint>> tangents;
  for (const Subspace& l : enumerate_hyperplanes(ext, 2)) {
    std::optional<ProjPoint> hit;
    int cnt = 0;
    for (const auto& p : b0set) {
      if (l.eval_dual(p).is_zero()) {
        hit = p;
        if (++cnt > 1) break;
      }
    }
    if (cnt == 1) tangents.emplace_back(l, *hit);
  }
  if (tangents.empty()) throw ReconstructionError("subplane-seed", "no tangent line found");

  std::mt19937_64 rng(seed);
  auto [lt, p0] = tangents[rng() % tangents.size()];

  auto pick = [&](const std::vector<ProjPoint>& pool) { return pool[rng() % pool.size()]; };
  auto collinear = [&](const ProjPoint& x, const ProjPoint& y, const ProjPoint& z) {
    return (x[0] * (y[1] * z[2] - y[2] * z[1]) - x[1] * (y[0] * z[2] - y[2] * z[0]) +
            x[2] * (y[0] * z[1] - y[1] * z[0]))
        .is_zero();
  };

  std::vector<ProjPoint> lt_pts = lt.points();
  std::vector<ProjPoint> all = enumerate_points(ext, 2);
  std::vector<ProjPoint> linf_pts = linf.points();

  // source frame along the tangent line, target frame along infinity
  ProjPoint a2 = [&] {
    while (true) {
      ProjPoint cand = pick(lt_pts);
      if (cand != p0) return cand;
    }
  }();
  ProjPoint a3 = [&] {
    while (true) {
      ProjPoint cand = pick(all);
      if (!lt.contains(cand)) return cand;
    }
  }();
  ProjPoint a4 = [&] {
    while (true) {
      ProjPoint cand = pick(all);
      if (lt.contains(cand)) continue;
      if (collinear(p0, a3, cand) || collinear(a2, a3, cand)) continue;
      return cand;
    }
  }();
  ProjPoint b2 = [&] {
    while (true) {
      ProjPoint cand = pick(linf_pts);
      if (cand != t) return cand;
    }
  }();
  ProjPoint b3 = [&] {
    while (true) {
      ProjPoint cand = pick(all);
      if (!linf.contains(cand)) return cand;
    }
  }();
  ProjPoint b4 = [&] {
    while (true) {
      ProjPoint cand = pick(all);
      if (linf.contains(cand)) continue;
      if (collinear(t, b3, cand) || collinear(b2, b3, cand)) continue;
      return cand;
    }
  }();

  Projectivity m = frame_projectivity({t, b2, b3, b4})
                       .compose(frame_projectivity({p0, a2, a3, a4}).inverse());
  std::vector<ProjPoint> image;
  for (const auto& p : b0set) image.push_back(m.apply(p));
  BaerSubplane b = BaerSubplane::from_points(emb, PointSet(std::move(image)));
  if (b.tangent_point() != t)
    throw ReconstructionError("subplane-seed", "tangency point moved");
  if (!b.internal())
    throw ReconstructionError("subplane-seed", "constructed subplane lost its coordinates");
  return b;
}

BaerPencil make_baer_pencil(const ExtensionEmbedding& emb, const ProjPoint& vertex,
                            const BaerSubline& base) {
  const FieldSpec& ext = emb.ext();
  const int q = emb.base().order();
  if (base.carrier.contains(vertex))
    throw UsageError("pencil vertex must avoid the base carrier");
  std::vector<Subspace> cone;
  std::vector<ProjPoint> pts;
  for (const auto& bp : base.pts) {
    Subspace l = line_through(vertex, bp);
    for (const auto& p : l.points()) pts.push_back(p);
    cone.push_back(std::move(l));
  }
  PointSet ps(std::move(pts));
  if (static_cast<int>(ps.size()) != q * q * (q + 1) + 1)
    throw ReconstructionError("pencil", "cone point count is off");
  return BaerPencil{vertex, base, std::move(cone), std::move(ps)};
}

bool is_linf_pencil(const BaerPencil& d, const FieldSpec& ext) {
  Subspace linf = line_at_infinity(ext);
  if (!linf.contains(d.vertex)) return false;
  for (const auto& p : d.base.pts)
    if (linf.eval_dual(p).is_zero()) return true;
  return false;
}

bool is_fq_conic(const std::vector<ProjPoint>& pts, const BaerSubplane& b) {
  for (const auto& p : pts)
    if (!b.points().contains(p)) throw UsageError("points must lie in the subplane");
  if (!b.internal()) return false;
  const ExtensionEmbedding& emb = b.embedding();
  std::vector<ProjPoint> base_pts;
  for (const auto& p : pts) {
    ProjPoint ip = b.internal()->apply(p);
    linalg::Row coords;
    for (int i = 0; i < 3; ++i) {
      if (!emb.in_subfield(ip[i])) return false;
      coords.push_back(emb.project(ip[i]));
    }
    base_pts.push_back(ProjPoint(emb.base(), coords));
  }
  return recognize_conic(base_pts).has_value();
}

std::string to_string(PencilClass c) {
  switch (c) {
    case PencilClass::Point: return "Point";
    case PencilClass::OneSubline: return "OneSubline";
    case PencilClass::TwoSublines: return "TwoSublines";
    case PencilClass::FqConic: return "FqConic";
    case PencilClass::Other: return "Other";
  }
  return "?";
}

PencilIntersection classify_pencil_intersection(const BaerSubplane& b, const BaerPencil& d) {
  const ExtensionEmbedding& emb = b.embedding();
  const FieldSpec& ext = emb.ext();
  const int q = emb.base().order();
  PencilIntersection out;

  std::vector<ProjPoint> s;
  for (const auto& p : b.points())
    if (d.contains(p)) s.push_back(p);
  out.common = s;
  const ProjPoint& t = b.tangent_point();

  if (s.empty()) {
    out.diagnostic = "empty intersection";
    return out;
  }
  if (s.size() == 1) {
    if (s[0] == t) {
      out.cls = PencilClass::Point;
    } else {
      out.diagnostic = "single point differs from the tangent point";
    }
    return out;
  }

  bool has_t = std::binary_search(s.begin(), s.end(), t);

  if (static_cast<int>(s.size()) == q + 1) {
    Subspace carrier = line_through(s[0], s[1]);
    bool collinear = true;
    for (const auto& p : s)
      if (!carrier.contains(p)) {
        collinear = false;
        break;
      }
    if (collinear) {
      BaerSubline bs = baer_subline_through(emb, s[0], s[1], s[2]);
      if (bs.pts == s && has_t) {
        out.cls = PencilClass::OneSubline;
        out.sublines.push_back(std::move(bs));
      } else {
        out.diagnostic = has_t ? "collinear set is not a Baer subline"
                               : "subline misses the tangent point";
      }
      return out;
    }
    if (has_t && is_fq_conic(s, b)) {
      out.cls = PencilClass::FqConic;
      out.conic = true;
      return out;
    }
    out.diagnostic = "q+1 points, neither subline nor conic";
    return out;
  }

  if (static_cast<int>(s.size()) == 2 * q + 1 || static_cast<int>(s.size()) == 2 * q + 2) {
    // candidate carriers: lines holding at least three intersection points
    std::map<uint64_t, std::pair<Subspace, std::vector<ProjPoint>>> carriers;
    for (size_t i = 0; i < s.size(); ++i)
      for (size_t j = i + 1; j < s.size(); ++j) {
        Subspace l = line_through(s[i], s[j]);
        auto it = carriers.find(l.key());
        if (it == carriers.end())
          carriers.emplace(l.key(), std::make_pair(l, std::vector<ProjPoint>{}));
      }
    for (auto& [key, entry] : carriers) {
      for (const auto& p : s)
        if (entry.first.contains(p)) entry.second.push_back(p);
    }
    std::vector<std::pair<Subspace, BaerSubline>> cands;
    for (auto& [key, entry] : carriers) {
      auto& pts_on = entry.second;
      if (static_cast<int>(pts_on.size()) != q + 1) continue;
      BaerSubline bs = baer_subline_through(emb, pts_on[0], pts_on[1], pts_on[2]);
      if (bs.pts == pts_on) cands.emplace_back(entry.first, std::move(bs));
    }
    std::sort(cands.begin(), cands.end(),
              [](const auto& a, const auto& b2) { return a.first < b2.first; });
    for (size_t i = 0; i < cands.size(); ++i)
      for (size_t j = i + 1; j < cands.size(); ++j) {
        std::vector<ProjPoint> uni = cands[i].second.pts;
        uni.insert(uni.end(), cands[j].second.pts.begin(), cands[j].second.pts.end());
        std::sort(uni.begin(), uni.end());
        uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
        if (uni != s) continue;
        bool ti = cands[i].second.contains(t);
        bool tj = cands[j].second.contains(t);
        if (ti && tj) {
          out.cls = PencilClass::TwoSublines;
          out.subcase = "both-through-T";
        } else if (ti || tj) {
          const Subspace& other = ti ? cands[j].first : cands[i].first;
          if (other.contains(d.vertex)) {
            out.cls = PencilClass::TwoSublines;
            out.subcase = "one-in-vertex-line";
          } else {
            out.diagnostic = "second subline avoids the vertex";
            continue;
          }
        } else {
          out.diagnostic = "no subline through the tangent point";
          continue;
        }
        out.sublines.push_back(cands[i].second);
        out.sublines.push_back(cands[j].second);
        return out;
      }
    if (out.diagnostic.empty()) out.diagnostic = "no two-subline decomposition";
    return out;
  }

  out.diagnostic = "intersection size " + std::to_string(s.size()) + " fits no shape";
  return out;
}

}  // namespace scroll
