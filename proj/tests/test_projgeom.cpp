#include <map>
#include <set>

#include "doctest.h"
#include "scroll/projgeom.hpp"
#include "test_util.hpp"

using namespace scroll;

namespace {

std::set<Subspace> all_lines(const FieldSpec& f, int n) {
  std::set<Subspace> lines;
  auto pts = enumerate_points(f, n);
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) lines.insert(line_through(pts[i], pts[j]));
  return lines;
}

}  // namespace

TEST_CASE("span and meet basics") {
  const FieldSpec& f3 = FieldSpec::for_order(3);
  auto pts = enumerate_points(f3, 4);
  Subspace l = span({pts[0], pts[1]});
  CHECK(l.proj_dim() == 1);

  auto hps = enumerate_hyperplanes(f3, 4);
  Subspace m = meet(hps[0], hps[1]);
  CHECK(m.proj_dim() == 2);
}

TEST_CASE("the directrix line misses the conic plane") {
  // plane x0=x1=0 and line {(s,u,0,0,0)} in PG(4,3)
  const FieldSpec& f3 = FieldSpec::for_order(3);
  Subspace plane(f3, 4,
                 {ProjPoint::from_indices(f3, {0, 0, 1, 0, 0}).coords(),
                  ProjPoint::from_indices(f3, {0, 0, 0, 1, 0}).coords(),
                  ProjPoint::from_indices(f3, {0, 0, 0, 0, 1}).coords()});
  Subspace line(f3, 4,
                {ProjPoint::from_indices(f3, {1, 0, 0, 0, 0}).coords(),
                 ProjPoint::from_indices(f3, {0, 1, 0, 0, 0}).coords()});
  CHECK(meet(plane, line).proj_dim() == -1);
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_points(FieldSpec::for_order(3), 4).size() == 121);
  CHECK(enumerate_hyperplanes(FieldSpec::for_order(3), 4).size() == 121);
  CHECK(enumerate_points(FieldSpec::for_order(9), 2).size() == 91);
  CHECK(enumerate_points(FieldSpec::for_order(4), 1).size() == 5);
}

TEST_CASE("enumeration is duplicate-free and sorted") {
  auto pts = enumerate_points(FieldSpec::for_order(4), 2);
  for (size_t i = 1; i < pts.size(); ++i) CHECK(pts[i - 1] < pts[i]);
  std::set<uint64_t> keys;
  for (const auto& p : pts) keys.insert(p.key());
  CHECK(keys.size() == pts.size());
}

TEST_CASE("normalization is canonical and idempotent") {
  const FieldSpec& f5 = FieldSpec::for_order(5);
  ProjPoint a = ProjPoint::from_indices(f5, {2, 3, 1});
  ProjPoint b = ProjPoint::from_indices(f5, {4, 1, 2});  // 2*(2,3,1) = (4,6,2) = (4,1,2)
  CHECK(a == b);
  CHECK(a.coords()[0] == f5.one());
  ProjPoint c(f5, a.coords());
  CHECK(c == a);
}

TEST_CASE("projection from a point onto a hyperplane") {
  const FieldSpec& f3 = FieldSpec::for_order(3);
  auto hps = enumerate_hyperplanes(f3, 4);
  const Subspace& pi = hps[0];  // x4 = 0
  ProjPoint center = ProjPoint::from_indices(f3, {0, 0, 0, 0, 1});
  REQUIRE(!pi.contains(center));
  PointProjection proj(center, pi);

  for (const auto& x : pi.points().empty() ? std::vector<ProjPoint>{} : pi.points())
    CHECK(proj(x) == x);

  // collinear with the center -> same image
  ProjPoint x = ProjPoint::from_indices(f3, {1, 2, 0, 1, 1});
  ProjPoint y = ProjPoint::from_indices(f3, {1, 2, 0, 1, 2});  // x + center
  CHECK(line_through(x, y).contains(center));
  CHECK(proj(x) == proj(y));

  CHECK_THROWS_AS(proj(center), DomainError);
}

TEST_CASE("projection maps lines not through the center onto lines of the target") {
  const FieldSpec& f3 = FieldSpec::for_order(3);
  auto hps = enumerate_hyperplanes(f3, 4);
  const Subspace& pi = hps[0];
  ProjPoint center = ProjPoint::from_indices(f3, {0, 0, 0, 0, 1});
  PointProjection proj(center, pi);
  for (const Subspace& l : all_lines(f3, 4)) {
    if (l.contains(center)) continue;
    std::set<ProjPoint> images;
    for (const auto& p : l.points()) images.insert(proj(p));
    Subspace img = span(std::vector<ProjPoint>(images.begin(), images.end()));
    CHECK(img.proj_dim() == 1);
    CHECK(images.size() == l.points().size());
    CHECK(pi.contains(img));
  }
}

TEST_CASE("cross-ratio normalization (0,1,inf,lambda) -> lambda") {
  const FieldSpec& f7 = FieldSpec::for_order(7);
  ProjPoint p0 = ProjPoint::from_indices(f7, {1, 0});
  ProjPoint p1 = ProjPoint::from_indices(f7, {1, 1});
  ProjPoint pinf = ProjPoint::from_indices(f7, {0, 1});
  for (int lam = 2; lam < 7; ++lam) {
    ProjPoint pl = ProjPoint::from_indices(f7, {1, lam});
    auto cr = cross_ratio(p0, p1, pinf, pl);
    REQUIRE(cr.has_value());
    CHECK(*cr == f7.element(lam));
  }
}

TEST_CASE("cross-ratio is invariant under projectivities of PG(1,5)") {
  const FieldSpec& f5 = FieldSpec::for_order(5);
  auto pts = parameter_line(f5);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Projectivity g = testutil::random_projectivity(rng, f5, 1);
    for (size_t a = 0; a < pts.size(); ++a)
      for (size_t b = 0; b < pts.size(); ++b)
        for (size_t c = 0; c < pts.size(); ++c)
          for (size_t d = 0; d < pts.size(); ++d) {
            if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
            auto before = cross_ratio(pts[a], pts[b], pts[c], pts[d]);
            auto after = cross_ratio(g.apply(pts[a]), g.apply(pts[b]), g.apply(pts[c]),
                                     g.apply(pts[d]));
            REQUIRE(before.has_value());
            REQUIRE(after.has_value());
            CHECK(*before == *after);
          }
  }
}

TEST_CASE("cross-ratio rejects repeated or non-collinear input") {
  const FieldSpec& f5 = FieldSpec::for_order(5);
  ProjPoint a = ProjPoint::from_indices(f5, {1, 0});
  ProjPoint b = ProjPoint::from_indices(f5, {0, 1});
  ProjPoint c = ProjPoint::from_indices(f5, {1, 1});
  CHECK_THROWS_AS(cross_ratio(a, b, c, c), UsageError);
  ProjPoint x = ProjPoint::from_indices(f5, {1, 0, 0});
  ProjPoint y = ProjPoint::from_indices(f5, {0, 1, 0});
  ProjPoint z = ProjPoint::from_indices(f5, {0, 0, 1});
  ProjPoint w = ProjPoint::from_indices(f5, {1, 1, 1});
  CHECK_THROWS_AS(cross_ratio(x, y, z, w), UsageError);
}

TEST_CASE("line projectivity fit") {
  const FieldSpec& f7 = FieldSpec::for_order(7);
  auto pts = parameter_line(f7);
  std::vector<ProjPoint> t0{pts[0], pts[1], pts[2]};

  CHECK(fit_projectivity_line(t0, t0) == Projectivity::identity(f7, 1));

  // the fitted map preserves cross-ratio against the fourth point
  std::vector<ProjPoint> t1{pts[3], pts[5], pts[7]};
  Projectivity g = fit_projectivity_line(t0, t1);
  for (size_t i = 0; i < 3; ++i) CHECK(g.apply(t0[i]) == t1[i]);
  for (const auto& d : pts) {
    if (d == t0[0] || d == t0[1] || d == t0[2]) continue;
    auto cr0 = cross_ratio(t0[0], t0[1], t0[2], d);
    auto cr1 = cross_ratio(t1[0], t1[1], t1[2], g.apply(d));
    CHECK(cr0 == cr1);
  }
}

TEST_CASE("line projectivity fit composes (PG(1,7), fixed source triple)") {
  const FieldSpec& f7 = FieldSpec::for_order(7);
  auto pts = parameter_line(f7);
  std::vector<ProjPoint> a{pts[0], pts[1], pts[2]};
  // exhaust all ordered target triples for b and c
  std::vector<std::vector<ProjPoint>> triples;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = 0; j < pts.size(); ++j)
      for (size_t k = 0; k < pts.size(); ++k) {
        if (i == j || i == k || j == k) continue;
        triples.push_back({pts[i], pts[j], pts[k]});
      }
  for (size_t bi = 0; bi < triples.size(); bi += 17) {
    const auto& b = triples[bi];
    for (size_t ci = 0; ci < triples.size(); ci += 13) {
      const auto& c = triples[ci];
      Projectivity ab = fit_projectivity_line(a, b);
      Projectivity bc = fit_projectivity_line(b, c);
      Projectivity ac = fit_projectivity_line(a, c);
      CHECK(bc.compose(ab) == ac);
    }
  }
}

TEST_CASE("modular law holds for all subspace pairs of PG(3,3)") {
  const FieldSpec& f3 = FieldSpec::for_order(3);
  std::vector<Subspace> subs;
  subs.push_back(Subspace::empty(f3, 3));
  for (const auto& p : enumerate_points(f3, 3)) subs.push_back(span({p}));
  for (const auto& l : all_lines(f3, 3)) subs.push_back(l);
  for (const auto& h : enumerate_hyperplanes(f3, 3)) subs.push_back(h);
  subs.push_back(Subspace::full(f3, 3));
  REQUIRE(subs.size() == 1 + 40 + 130 + 40 + 1);
  for (const auto& a : subs)
    for (const auto& b : subs) {
      int ds = span(a, b).proj_dim();
      int dm = meet(a, b).proj_dim();
      CHECK(ds + dm == a.proj_dim() + b.proj_dim());
    }
}

TEST_CASE("every point of PG(4,3) lies on 40 hyperplanes") {
  const FieldSpec& f3 = FieldSpec::for_order(3);
  auto pts = enumerate_points(f3, 4);
  auto hps = enumerate_hyperplanes(f3, 4);
  for (const auto& p : pts) {
    int cnt = 0;
    for (const auto& h : hps)
      if (h.eval_dual(p).is_zero()) ++cnt;
    CHECK(cnt == 40);
  }
}

TEST_CASE("span is monotone and idempotent") {
  const FieldSpec& f4 = FieldSpec::for_order(4);
  auto pts = enumerate_points(f4, 3);
  Subspace a = span({pts[0], pts[3]});
  Subspace b = span({pts[0], pts[3], pts[10]});
  CHECK(b.contains(a));
  CHECK(span(a, a) == a);
  CHECK(span(b, a) == b);
}

TEST_CASE("internal coordinates round-trip") {
  const FieldSpec& f9 = FieldSpec::for_order(9);
  auto pts = enumerate_points(f9, 2);
  Subspace l = line_through(pts[0], pts[5]);
  for (const auto& p : l.points()) {
    auto c = l.internal_coords(p);
    CHECK(l.from_internal(c) == p);
  }
  LineChart chart(l);
  for (const auto& prm : parameter_line(f9)) {
    ProjPoint p = chart.point_at(prm);
    CHECK(chart.param_of(p) == prm);
  }
  REQUIRE(!l.contains(pts[20]));
  CHECK_THROWS_AS(l.internal_coords(pts[20]), UsageError);
}

TEST_CASE("span of empty input is rejected") {
  CHECK_THROWS_AS(span(std::vector<ProjPoint>{}), UsageError);
}

TEST_CASE("frame projectivity sends the standard frame to the given points") {
  const FieldSpec& f5 = FieldSpec::for_order(5);
  std::vector<ProjPoint> frame = {
      ProjPoint::from_indices(f5, {1, 0, 0}), ProjPoint::from_indices(f5, {0, 1, 0}),
      ProjPoint::from_indices(f5, {0, 0, 1}), ProjPoint::from_indices(f5, {1, 1, 1})};
  std::vector<ProjPoint> target = {
      ProjPoint::from_indices(f5, {1, 2, 0}), ProjPoint::from_indices(f5, {0, 1, 4}),
      ProjPoint::from_indices(f5, {1, 0, 1}), ProjPoint::from_indices(f5, {1, 1, 2})};
  Projectivity g = frame_projectivity(target);
  for (size_t i = 0; i < 4; ++i) CHECK(g.apply(frame[i]) == target[i]);

  std::vector<ProjPoint> bad = {
      ProjPoint::from_indices(f5, {1, 0, 0}), ProjPoint::from_indices(f5, {0, 1, 0}),
      ProjPoint::from_indices(f5, {1, 1, 0}), ProjPoint::from_indices(f5, {1, 1, 1})};
  CHECK_THROWS_AS(frame_projectivity(bad), UsageError);
}
