#include "scroll/varieties.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "scroll/errors.hpp"

namespace scroll {

namespace {

using linalg::Mat;
using linalg::Row;

FieldElement det3(const Row& a, const Row& b, const Row& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

std::vector<ProjPoint> sorted_unique(std::vector<ProjPoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// The q+1 hyperplanes containing a plane of PG(4,q), in parameter order.
std::vector<Subspace> hyperplanes_through_plane(const Subspace& plane) {
  const FieldSpec& f = plane.spec();
  Mat ker = linalg::kernel(plane.basis());
  if (ker.size() != 2) throw UsageError("expected a plane of a 4-space");
  std::vector<Subspace> out;
  for (const ProjPoint& prm : parameter_line(f)) {
    Row cov(plane.ambient() + 1, f.zero());
    for (int j = 0; j <= plane.ambient(); ++j)
      cov[j] = prm[0] * ker[0][j] + prm[1] * ker[1][j];
    out.push_back(Subspace::from_dual(f, cov));
  }
  return out;
}

uint64_t internal_key(const Row& v) {
  uint64_t k = 1;
  for (const auto& c : v) k = (k << 7) | c.index();
  return k;
}

// Monomial vector (x^2, xy, xz, y^2, yz, z^2) of an internal plane point.
std::array<FieldElement, 6> conic_monomials(const Row& v) {
  return {v[0] * v[0], v[0] * v[1], v[0] * v[2], v[1] * v[1], v[1] * v[2], v[2] * v[2]};
}

// Monomials of degree 2 in four variables, the fixed order used for
// quadric fitting in a 3-space chart.
std::array<FieldElement, 10> quadric_monomials(const Row& v) {
  return {v[0] * v[0], v[0] * v[1], v[0] * v[2], v[0] * v[3], v[1] * v[1],
          v[1] * v[2], v[1] * v[3], v[2] * v[2], v[2] * v[3], v[3] * v[3]};
}

}  // namespace

FieldElement PlaneForm::eval(const Row& v) const {
  auto m = conic_monomials(v);
  FieldElement acc = v[0].spec().zero();
  for (int i = 0; i < 6; ++i) acc = acc + c[i] * m[i];
  return acc;
}

FieldElement PlaneForm::polar(const Row& u, const Row& v) const {
  Row s{u[0] + v[0], u[1] + v[1], u[2] + v[2]};
  return eval(s) - eval(u) - eval(v);
}

std::string PlaneForm::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < 6; ++i) {
    if (i) os << ' ';
    os << c[i].to_string();
  }
  return os.str();
}

bool Conic::contains(const ProjPoint& p) const {
  return std::binary_search(pts.begin(), pts.end(), p);
}

Subspace Conic::tangent_at(const ProjPoint& p) const {
  Row pi = plane.internal_coords(p);
  if (!form.eval(pi).is_zero()) throw UsageError("tangent point is not on the conic");
  const FieldSpec& f = spec();
  Row functional{form.polar(pi, {f.one(), f.zero(), f.zero()}),
                 form.polar(pi, {f.zero(), f.one(), f.zero()}),
                 form.polar(pi, {f.zero(), f.zero(), f.one()})};
  Mat ker = linalg::kernel(Mat{functional});
  if (ker.size() != 2) throw DomainError("degenerate polar at a conic point");
  return span({plane.from_internal(ker[0]), plane.from_internal(ker[1])});
}

ProjPoint ConicChart::point_at(const ProjPoint& param) const {
  const Conic& c = *conic_;
  const FieldSpec& f = c.spec();
  Row x(3, f.zero());
  x[c.axis_i] = param[0];
  x[c.axis_j] = param[1];
  FieldElement qx = c.form.eval(x);
  FieldElement bx = c.form.polar(c.origin_internal, x);
  Row r(3, f.zero());
  for (int i = 0; i < 3; ++i) r[i] = qx * c.origin_internal[i] - bx * x[i];
  return c.plane.from_internal(r);
}

ProjPoint ConicChart::param_of(const ProjPoint& pt) const {
  const Conic& c = *conic_;
  const FieldSpec& f = c.spec();
  Row y = c.plane.internal_coords(pt);
  if (!c.form.eval(y).is_zero()) throw UsageError("point is not on the conic");
  Row ei(3, f.zero()), ej(3, f.zero());
  ei[c.axis_i] = f.one();
  ej[c.axis_j] = f.one();
  const Row& o = c.origin_internal;
  bool is_origin = ProjPoint(f, y) == ProjPoint(f, o);
  FieldElement s = f.zero(), u = f.zero();
  if (is_origin) {
    // tangent direction: polar(O, s*ei + u*ej) = 0
    s = c.form.polar(o, ej);
    u = -c.form.polar(o, ei);
  } else {
    s = det3(o, y, ej);
    u = -det3(o, y, ei);
  }
  return ProjPoint(f, {s, u});
}

ProjPoint TwistedCubic::point_at(const ProjPoint& param) const {
  FieldElement s = param[0], t = param[1];
  Row nu{s * s * s, s * s * t, s * t * t, t * t * t};
  return carrier.from_internal(linalg::matvec(coeff, nu));
}

std::string to_string(SectionClass c) {
  switch (c) {
    case SectionClass::T1: return "T1";
    case SectionClass::T2: return "T2";
    case SectionClass::T3: return "T3";
    case SectionClass::T4: return "T4";
    case SectionClass::T5: return "T5";
    case SectionClass::T6: return "T6";
    case SectionClass::T7: return "T7";
    case SectionClass::T8: return "T8";
    case SectionClass::Other: return "Other";
  }
  return "?";
}

std::optional<Conic> recognize_conic(const std::vector<ProjPoint>& pts_in) {
  if (pts_in.empty()) return std::nullopt;
  const FieldSpec& f = pts_in[0].spec();
  const int q = f.order();
  std::vector<ProjPoint> pts = sorted_unique(pts_in);
  if (static_cast<int>(pts.size()) != q + 1) return std::nullopt;
  Subspace plane = span(pts);
  if (plane.proj_dim() != 2) return std::nullopt;

  Mat ic;
  ic.reserve(pts.size());
  for (const auto& p : pts) ic.push_back(plane.internal_coords(p));

  // arc pre-check: a conic has no three collinear points
  for (size_t i = 0; i < ic.size(); ++i)
    for (size_t j = i + 1; j < ic.size(); ++j)
      for (size_t k = j + 1; k < ic.size(); ++k)
        if (det3(ic[i], ic[j], ic[k]).is_zero()) return std::nullopt;

  Mat sys;
  for (const auto& v : ic) {
    auto m = conic_monomials(v);
    sys.push_back(Row(m.begin(), m.end()));
  }
  Mat ker = linalg::kernel(sys);
  if (ker.empty()) return std::nullopt;

  std::set<uint64_t> want;
  for (const auto& v : ic) want.insert(internal_key(v));

  std::optional<PlaneForm> accepted;
  for (const ProjPoint& combo : enumerate_points(f, static_cast<int>(ker.size()) - 1)) {
    Row coeffs(6, f.zero());
    for (size_t r = 0; r < ker.size(); ++r)
      for (int j = 0; j < 6; ++j) coeffs[j] = coeffs[j] + combo[static_cast<int>(r)] * ker[r][j];
    PlaneForm form{{coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4], coeffs[5]}};
    // zero set within the plane must be exactly the input
    std::set<uint64_t> zeros;
    bool bad = false;
    for (const ProjPoint& prm : enumerate_points(f, 2)) {
      if (form.eval(prm.coords()).is_zero()) {
        zeros.insert(internal_key(prm.coords()));
        if (zeros.size() > want.size()) {
          bad = true;
          break;
        }
      }
    }
    if (bad || zeros != want) continue;
    if (accepted) return std::nullopt;  // two exact forms cannot happen
    accepted = form;
  }
  if (!accepted) return std::nullopt;

  Row origin = plane.internal_coords(pts[0]);
  Conic c{plane, *accepted, pts, origin, 0, 1};
  // chart axis: first coordinate pair whose span misses the origin
  const std::array<std::pair<int, int>, 3> axes{{{0, 1}, {0, 2}, {1, 2}}};
  for (auto [i, j] : axes) {
    int other = 3 - i - j;
    if (!c.origin_internal[other].is_zero()) {
      c.axis_i = i;
      c.axis_j = j;
      break;
    }
  }
  return c;
}

namespace {

// Unique twisted cubic through six points in the normalized frame chart:
// e0..e3 sit at parameters (0, 1, b2, b3), the unit point at infinity, and
// x_i(t) = prod_{j != i} (t - b_j).
std::optional<Mat> cubic_family_solve(const FieldSpec& f, const Row& y) {
  for (const auto& c : y)
    if (c.is_zero()) return std::nullopt;
  if (y[0] == y[1]) return std::nullopt;
  FieldElement kappa = (y[1] - y[0]) / (y[0] * y[1]);
  FieldElement t6 = (kappa * y[0]).inverse();
  Row beta{f.zero(), f.one(), t6 - (kappa * y[2]).inverse(), t6 - (kappa * y[3]).inverse()};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (beta[i] == beta[j]) return std::nullopt;
  // rows (-e3, e2, -e1, 1) over the Veronese (s^3, s^2 t, s t^2, t^3)
  Mat a = linalg::zeros(f, 4, 4);
  for (int i = 0; i < 4; ++i) {
    std::vector<FieldElement> b;
    for (int j = 0; j < 4; ++j)
      if (j != i) b.push_back(beta[j]);
    FieldElement e1 = b[0] + b[1] + b[2];
    FieldElement e2 = b[0] * b[1] + b[0] * b[2] + b[1] * b[2];
    FieldElement e3 = b[0] * b[1] * b[2];
    a[i][0] = -e3;
    a[i][1] = e2;
    a[i][2] = -e1;
    a[i][3] = f.one();
  }
  return a;
}

std::vector<ProjPoint> curve_points(const FieldSpec& f, const Mat& coeff) {
  std::vector<ProjPoint> out;
  for (const ProjPoint& prm : parameter_line(f)) {
    FieldElement s = prm[0], t = prm[1];
    Row nu{s * s * s, s * s * t, s * t * t, t * t * t};
    out.push_back(ProjPoint(f, linalg::matvec(coeff, nu)));
  }
  return out;
}

}  // namespace

std::optional<TwistedCubic> recognize_twisted_cubic(const std::vector<ProjPoint>& pts_in) {
  if (pts_in.empty()) return std::nullopt;
  const FieldSpec& f = pts_in[0].spec();
  const int q = f.order();
  std::vector<ProjPoint> pts = sorted_unique(pts_in);
  if (static_cast<int>(pts.size()) != q + 1) return std::nullopt;
  Subspace carrier = span(pts);
  if (carrier.proj_dim() != 3) return std::nullopt;

  Mat ic;
  ic.reserve(pts.size());
  for (const auto& p : pts) ic.push_back(carrier.internal_coords(p));

  // no four points coplanar
  const size_t n = ic.size();
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b)
      for (size_t c = b + 1; c < n; ++c)
        for (size_t d = c + 1; d < n; ++d)
          if (linalg::det(Mat{ic[a], ic[b], ic[c], ic[d]}).is_zero()) return std::nullopt;

  Mat coeff;
  if (q <= 4) {
    // every spanning (q+1)-arc is projectively a standard curve here; a
    // point-to-point frame match produces the parametrization
    std::vector<ProjPoint> std_pts = curve_points(f, linalg::identity(f, 4));
    if (q == 3) {
      Mat mp = linalg::zeros(f, 4, 4), ms = linalg::zeros(f, 4, 4);
      for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) {
          mp[i][j] = ic[j][i];
          ms[i][j] = std_pts[j][i];
        }
      // N: pts -> std; the curve is N^{-1} of the standard one
      Mat ninv = linalg::inverse(linalg::matmul(ms, linalg::inverse(mp)));
      coeff = ninv;
    } else {
      std::vector<ProjPoint> ip;
      for (const auto& v : ic) ip.push_back(ProjPoint(f, v));
      Projectivity fp = frame_projectivity({ip[0], ip[1], ip[2], ip[3], ip[4]});
      Projectivity fs = frame_projectivity(
          {std_pts[0], std_pts[1], std_pts[2], std_pts[3], std_pts[4]});
      coeff = linalg::matmul(fp.matrix(), linalg::inverse(fs.matrix()));
    }
  } else {
    std::vector<ProjPoint> ip;
    for (const auto& v : ic) ip.push_back(ProjPoint(f, v));
    std::optional<Projectivity> fr;
    try {
      fr = frame_projectivity({ip[0], ip[1], ip[2], ip[3], ip[4]});
    } catch (const UsageError&) {
      return std::nullopt;
    }
    Row y = fr->inverse().apply(ip[5]).coords();
    auto fam = cubic_family_solve(f, y);
    if (!fam) return std::nullopt;
    coeff = linalg::matmul(fr->matrix(), *fam);
  }

  // the parametrized curve must reproduce the set exactly
  std::set<uint64_t> want;
  for (const auto& v : ic) want.insert(ProjPoint(f, v).key());
  std::set<uint64_t> got;
  for (const auto& p : curve_points(f, coeff)) got.insert(p.key());
  if (got != want) return std::nullopt;

  return TwistedCubic{carrier, coeff, pts};
}

std::vector<Subspace> lines_fully_contained(const PointSet& pts) {
  std::vector<Subspace> out;
  const auto& v = pts.points();
  std::unordered_set<uint64_t> done;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j) {
      Subspace l = line_through(v[i], v[j]);
      if (!done.insert(l.key()).second) continue;
      bool full = true;
      for (const auto& p : l.points())
        if (!pts.contains(p)) {
          full = false;
          break;
        }
      if (full) out.push_back(l);
    }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Conic completion: a non-degenerate conic containing all residue points
// plus up to two points per found line, together with the lines covering
// the section exactly. Deterministic first match.
std::optional<Conic> conic_completion(const PointSet& sect, const std::vector<Subspace>& lines,
                                      const std::vector<ProjPoint>& resid, int q) {
  const int m = q + 1 - static_cast<int>(resid.size());
  if (m < 0 || m > 2 * static_cast<int>(lines.size())) return std::nullopt;
  if (m == 0) return recognize_conic(resid);

  std::vector<ProjPoint> pool;
  {
    std::unordered_set<uint64_t> seen;
    for (const auto& l : lines)
      for (const auto& p : l.points())
        if (sect.contains(p) && seen.insert(p.key()).second) pool.push_back(p);
    std::sort(pool.begin(), pool.end());
  }

  if (resid.size() >= 3) {
    Subspace plane = span(resid);
    if (plane.proj_dim() != 2) return std::nullopt;
    std::vector<ProjPoint> cand;
    for (const auto& p : pool)
      if (plane.contains(p)) cand.push_back(p);
    if (static_cast<int>(cand.size()) < m) return std::nullopt;
    std::vector<int> pick(m);
    // iterate m-subsets of cand in lexicographic order
    for (int i = 0; i < m; ++i) pick[i] = i;
    while (true) {
      std::vector<ProjPoint> trial = resid;
      for (int i : pick) trial.push_back(cand[i]);
      if (auto c = recognize_conic(trial)) return c;
      int pos = m - 1;
      while (pos >= 0 && pick[pos] == static_cast<int>(cand.size()) - m + pos) --pos;
      if (pos < 0) break;
      ++pick[pos];
      for (int i = pos + 1; i < m; ++i) pick[i] = pick[i - 1] + 1;
    }
    return std::nullopt;
  }

  // tiny residue: enumerate at most two chosen points per line
  std::vector<std::vector<ProjPoint>> per_line;
  for (const auto& l : lines) {
    std::vector<ProjPoint> lp;
    for (const auto& p : l.points())
      if (sect.contains(p)) lp.push_back(p);
    std::sort(lp.begin(), lp.end());
    per_line.push_back(std::move(lp));
  }
  std::vector<std::vector<std::vector<ProjPoint>>> options;  // per line: subsets size<=2
  for (const auto& lp : per_line) {
    std::vector<std::vector<ProjPoint>> opts;
    opts.push_back({});
    for (size_t i = 0; i < lp.size(); ++i) {
      opts.push_back({lp[i]});
      for (size_t j = i + 1; j < lp.size(); ++j) opts.push_back({lp[i], lp[j]});
    }
    options.push_back(std::move(opts));
  }
  std::set<std::vector<uint64_t>> tried;
  std::vector<size_t> idx(options.size(), 0);
  while (true) {
    std::vector<ProjPoint> extra;
    for (size_t l = 0; l < options.size(); ++l)
      for (const auto& p : options[l][idx[l]]) extra.push_back(p);
    std::vector<ProjPoint> trial = resid;
    trial.insert(trial.end(), extra.begin(), extra.end());
    trial = sorted_unique(trial);
    if (static_cast<int>(trial.size()) == q + 1) {
      std::vector<uint64_t> sig;
      for (const auto& p : trial) sig.push_back(p.key());
      if (tried.insert(sig).second) {
        if (auto c = recognize_conic(trial)) return c;
      }
    }
    size_t pos = options.size();
    while (pos > 0 && idx[pos - 1] + 1 == options[pos - 1].size()) {
      idx[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
    ++idx[pos - 1];
  }
  return std::nullopt;
}

std::optional<TwistedCubic> cubic_completion(const PointSet& sect, const Subspace& line,
                                             const std::vector<ProjPoint>& resid, int q) {
  const int m = q + 1 - static_cast<int>(resid.size());
  if (m < 0 || m > 2) return std::nullopt;
  if (m == 0) return recognize_twisted_cubic(resid);
  std::vector<ProjPoint> pool;
  for (const auto& p : line.points())
    if (sect.contains(p)) pool.push_back(p);
  std::sort(pool.begin(), pool.end());
  const int n = static_cast<int>(pool.size());
  if (m == 1) {
    for (int i = 0; i < n; ++i) {
      std::vector<ProjPoint> trial = resid;
      trial.push_back(pool[i]);
      if (auto t = recognize_twisted_cubic(trial)) return t;
    }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        std::vector<ProjPoint> trial = resid;
        trial.push_back(pool[i]);
        trial.push_back(pool[j]);
        if (auto t = recognize_twisted_cubic(trial)) return t;
      }
  }
  return std::nullopt;
}

}  // namespace

SectionType classify_section(const PointSet& k, const Subspace& hyperplane) {
  const FieldSpec& f = hyperplane.spec();
  const int q = f.order();
  SectionType out;

  std::vector<ProjPoint> s;
  for (const auto& p : k)
    if (hyperplane.dual() ? hyperplane.eval_dual(p).is_zero() : hyperplane.contains(p))
      s.push_back(p);
  out.section = s;

  if (s.empty()) {
    out.diagnostic = "empty section";
    return out;
  }
  if (s.size() == 1) {
    out.cls = SectionClass::T6;
    return out;
  }

  PointSet sect(s);
  std::vector<Subspace> ls = lines_fully_contained(sect);
  std::unordered_set<uint64_t> covered;
  for (const auto& l : ls)
    for (const auto& p : l.points()) covered.insert(p.key());
  std::vector<ProjPoint> resid;
  for (const auto& p : s)
    if (!covered.count(p.key())) resid.push_back(p);

  out.lines = ls;

  if (resid.empty()) {
    switch (ls.size()) {
      case 1: out.cls = SectionClass::T1; return out;
      case 2: out.cls = SectionClass::T2; return out;
      case 3: out.cls = SectionClass::T3; return out;
      default:
        out.diagnostic = std::to_string(ls.size()) + " full lines";
        return out;
    }
  }

  if (ls.empty()) {
    if (auto t = recognize_twisted_cubic(s)) {
      out.cls = SectionClass::T5;
      out.cubic = t;
      return out;
    }
    out.diagnostic = "no decomposition (no lines)";
    return out;
  }

  if (ls.size() <= 2) {
    // conic decompositions take precedence: for q <= 4 a line-and-conic
    // section can also split as line plus 4-point twisted cubic, and the
    // line-and-conic reading is the one the forward classes use. For
    // q >= 5 the two readings are mutually exclusive (a cubic completion
    // would need at least four coplanar curve points).
    if (auto conic = conic_completion(sect, ls, resid, q)) {
      out.cls = ls.size() == 1 ? SectionClass::T4 : SectionClass::T7;
      out.conic = conic;
      return out;
    }
    if (ls.size() == 1) {
      if (auto cubic = cubic_completion(sect, ls[0], resid, q)) {
        out.cls = SectionClass::T8;
        out.cubic = cubic;
        return out;
      }
    }
    out.diagnostic = "no decomposition (" + std::to_string(ls.size()) + " lines + residue)";
    return out;
  }

  out.diagnostic = std::to_string(ls.size()) + " full lines plus residue";
  return out;
}

RuledCubicSurface surface_from_ruling(const Subspace& directrix, const Conic& conic,
                                      const Projectivity& sigma) {
  const FieldSpec& f = directrix.spec();
  const int q = f.order();
  if (directrix.proj_dim() != 1) throw UsageError("directrix must be a line");
  if (sigma.dim() != 1) throw UsageError("ruling projectivity must act on PG(1,q)");
  if (meet(directrix, conic.plane).proj_dim() != -1)
    throw UsageError("directrix must miss the conic plane");

  LineChart lchart(directrix);
  ConicChart cchart(conic);
  std::vector<Subspace> gens;
  std::vector<ProjPoint> all;
  for (const ProjPoint& t : parameter_line(f)) {
    ProjPoint a = lchart.point_at(t);
    ProjPoint b = cchart.point_at(sigma.apply(t));
    Subspace g = line_through(a, b);
    for (const auto& p : g.points()) all.push_back(p);
    gens.push_back(std::move(g));
  }
  PointSet pts(std::move(all));
  if (static_cast<int>(pts.size()) != (q + 1) * (q + 1))
    throw UsageError("ruling produced overlapping generators");
  return RuledCubicSurface{sigma, directrix, conic, std::move(gens), std::move(pts)};
}

RuledCubicSurface make_ruled_cubic_surface(const FieldSpec& f, const Projectivity& sigma) {
  Subspace directrix(f, 4,
                     {ProjPoint::from_indices(f, {1, 0, 0, 0, 0}).coords(),
                      ProjPoint::from_indices(f, {0, 1, 0, 0, 0}).coords()});
  std::vector<ProjPoint> conic_pts;
  for (const ProjPoint& t : parameter_line(f)) {
    FieldElement s = t[0], u = t[1];
    conic_pts.push_back(
        ProjPoint(f, {f.zero(), f.zero(), s * s, s * u, u * u}));
  }
  auto conic = recognize_conic(conic_pts);
  if (!conic) throw ReconstructionError("standard-conic", "fit failed");
  return surface_from_ruling(directrix, *conic, sigma);
}

std::vector<Conic> conic_directrices(const RuledCubicSurface& s) {
  const FieldSpec& f = s.spec();
  const int q = s.q();
  std::vector<Conic> out;
  std::unordered_set<uint64_t> seen_planes;
  auto g0 = s.generators[0].points();
  auto g1 = s.generators[1].points();
  auto g2 = s.generators[2].points();
  for (const auto& a : g0)
    for (const auto& b : g1)
      for (const auto& c : g2) {
        Subspace pl = span({a, b, c});
        if (pl.proj_dim() != 2) continue;
        if (!seen_planes.insert(pl.key()).second) continue;
        std::vector<ProjPoint> sect;
        for (const auto& p : s.pts)
          if (pl.contains(p)) sect.push_back(p);
        if (static_cast<int>(sect.size()) != q + 1) continue;
        auto conic = recognize_conic(sect);
        if (!conic) continue;
        bool touches_directrix = false;
        for (const auto& p : conic->pts)
          if (s.directrix.contains(p)) {
            touches_directrix = true;
            break;
          }
        if (touches_directrix) continue;
        bool one_per_generator = true;
        for (const auto& g : s.generators) {
          int cnt = 0;
          for (const auto& p : conic->pts)
            if (g.contains(p)) ++cnt;
          if (cnt != 1) {
            one_per_generator = false;
            break;
          }
        }
        if (!one_per_generator) continue;
        out.push_back(std::move(*conic));
      }
  if (static_cast<int>(out.size()) != q * q)
    throw ReconstructionError("conic-directrices",
                              "expected q^2 conics, found " + std::to_string(out.size()));
  std::sort(out.begin(), out.end(),
            [](const Conic& a, const Conic& b) { return a.pts < b.pts; });
  // two conic directrices share exactly one point
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j) {
      int common = 0;
      for (const auto& p : out[i].pts)
        if (out[j].contains(p)) ++common;
      if (common != 1)
        throw ReconstructionError("conic-directrices", "pairwise intersection is not a point");
    }
  return out;
}

std::vector<Subspace> extract_sticks(const PointSet& k, bool verify_hypothesis) {
  if (k.empty()) throw ReconstructionError("cardinality", "empty point set");
  const FieldSpec& f = k.points()[0].spec();
  const int q = f.order();
  if (static_cast<int>(k.size()) != (q + 1) * (q + 1))
    throw ReconstructionError("cardinality", "expected q^2+2q+1 points, got " +
                                                 std::to_string(k.size()));
  if (verify_hypothesis) {
    for (const auto& h : enumerate_hyperplanes(f, 4)) {
      SectionType st = classify_section(k, h);
      if (!st.in_first_five())
        throw ReconstructionError("section-class",
                                  "hyperplane section of class " + to_string(st.cls));
    }
  }

  // seed: lexicographically least plane meeting the set in a conic
  const auto& v = k.points();
  std::unordered_set<uint64_t> seen;
  std::optional<Subspace> seed;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      for (size_t l = j + 1; l < v.size(); ++l) {
        Subspace pl = span({v[i], v[j], v[l]});
        if (pl.proj_dim() != 2) continue;
        if (!seen.insert(pl.key()).second) continue;
        if (seed && !(pl < *seed)) continue;
        std::vector<ProjPoint> sect;
        for (const auto& p : v)
          if (pl.contains(p)) sect.push_back(p);
        if (static_cast<int>(sect.size()) != q + 1) continue;
        if (recognize_conic(sect)) seed = pl;
      }
  if (!seed) throw ReconstructionError("conic-seed", "the set contains no conic");

  std::vector<Subspace> sticks;
  for (const Subspace& h : hyperplanes_through_plane(*seed)) {
    SectionType st = classify_section(k, h);
    if (st.cls != SectionClass::T4)
      throw ReconstructionError("stick-extraction",
                                "3-space about the seed conic has class " + to_string(st.cls));
    sticks.push_back(st.lines[0]);
  }

  std::unordered_set<uint64_t> stick_keys;
  std::unordered_set<uint64_t> covered;
  for (const auto& st : sticks) {
    if (!stick_keys.insert(st.key()).second)
      throw ReconstructionError("stick-partition", "repeated stick");
    for (const auto& p : st.points()) {
      if (!k.contains(p))
        throw ReconstructionError("stick-partition", "stick leaves the set");
      if (!covered.insert(p.key()).second)
        throw ReconstructionError("stick-partition", "sticks are not pairwise skew");
    }
  }
  if (covered.size() != k.size())
    throw ReconstructionError("stick-partition", "sticks do not cover the set");

  for (size_t a = 0; a < sticks.size(); ++a)
    for (size_t b = a + 1; b < sticks.size(); ++b) {
      Subspace t = span(sticks[a], sticks[b]);
      for (size_t c = 0; c < sticks.size(); ++c) {
        if (c == a || c == b) continue;
        if (t.contains(sticks[c]))
          throw ReconstructionError("stick-3space", "three sticks in a 3-space");
      }
    }

  std::sort(sticks.begin(), sticks.end());
  return sticks;
}

Subspace extract_baseline(const PointSet& k, const std::vector<Subspace>& sticks) {
  const FieldSpec& f = k.points()[0].spec();
  const int q = f.order();
  std::vector<Subspace> lines = lines_fully_contained(k);
  if (static_cast<int>(lines.size()) != q + 2)
    throw ReconstructionError("line-count", "expected q+2 contained lines, found " +
                                                std::to_string(lines.size()));
  std::unordered_set<uint64_t> stick_keys;
  for (const auto& s : sticks) stick_keys.insert(s.key());
  std::optional<Subspace> base;
  for (const auto& l : lines) {
    if (stick_keys.count(l.key())) continue;
    if (base) throw ReconstructionError("baseline", "two non-stick lines");
    base = l;
  }
  if (!base) throw ReconstructionError("baseline", "no non-stick line");
  for (const auto& s : sticks)
    if (meet(*base, s).proj_dim() != 0)
      throw ReconstructionError("baseline", "baseline misses a stick");
  return *base;
}

Conic unique_conic_through(const PointSet& k, const ProjPoint& p, const ProjPoint& q_,
                           const std::vector<Subspace>& sticks, const Subspace& baseline) {
  const FieldSpec& f = p.spec();
  const int q = f.order();
  if (!k.contains(p) || !k.contains(q_)) throw UsageError("points must lie in the set");
  if (baseline.contains(p) || baseline.contains(q_))
    throw UsageError("points must avoid the baseline");
  int sp = -1, sq = -1;
  for (size_t i = 0; i < sticks.size(); ++i) {
    if (sticks[i].contains(p)) sp = static_cast<int>(i);
    if (sticks[i].contains(q_)) sq = static_cast<int>(i);
  }
  if (sp < 0 || sq < 0 || sp == sq) throw UsageError("points must lie on distinct sticks");

  std::unordered_set<uint64_t> seen;
  std::vector<Conic> found;
  std::set<std::vector<uint64_t>> distinct;
  for (const auto& r : k.points()) {
    if (r == p || r == q_) continue;
    Subspace pl = span({p, q_, r});
    if (pl.proj_dim() != 2) continue;
    if (!seen.insert(pl.key()).second) continue;
    std::vector<ProjPoint> sect;
    for (const auto& x : k.points())
      if (pl.contains(x)) sect.push_back(x);
    if (static_cast<int>(sect.size()) != q + 1) continue;
    auto c = recognize_conic(sect);
    if (!c) continue;
    std::vector<uint64_t> sig;
    for (const auto& x : c->pts) sig.push_back(x.key());
    if (distinct.insert(sig).second) found.push_back(std::move(*c));
  }
  if (found.size() != 1)
    throw ReconstructionError("conic-uniqueness",
                              std::to_string(found.size()) + " conics through the pair");
  const Conic& c = found[0];
  for (const auto& s : sticks) {
    int cnt = 0;
    for (const auto& x : c.pts)
      if (s.contains(x)) ++cnt;
    if (cnt != 1)
      throw ReconstructionError("conic-stick", "conic does not meet every stick once");
  }
  for (const auto& x : c.pts)
    if (baseline.contains(x))
      throw ReconstructionError("conic-baseline", "conic meets the baseline");
  return found[0];
}

RulingRecovery recover_ruling(const PointSet& k) {
  std::vector<Subspace> sticks = extract_sticks(k);
  Subspace baseline = extract_baseline(k, sticks);

  auto off_baseline = [&](const Subspace& s) {
    for (const auto& p : s.points())
      if (k.contains(p) && !baseline.contains(p)) return p;
    throw ReconstructionError("ruling-projectivity", "stick inside the baseline");
  };
  ProjPoint p = off_baseline(sticks[0]);
  ProjPoint q_ = off_baseline(sticks[1]);
  Conic conic = unique_conic_through(k, p, q_, sticks, baseline);

  LineChart bchart(baseline);
  ConicChart cchart(conic);
  std::vector<ProjPoint> src, dst;
  for (const auto& s : sticks) {
    Subspace mb = meet(s, baseline);
    if (mb.proj_dim() != 0)
      throw ReconstructionError("ruling-projectivity", "stick/baseline meet is not a point");
    ProjPoint m = mb.points()[0];
    std::optional<ProjPoint> on_conic;
    for (const auto& x : conic.pts)
      if (s.contains(x)) on_conic = x;
    if (!on_conic)
      throw ReconstructionError("ruling-projectivity", "stick misses the conic");
    src.push_back(bchart.param_of(m));
    dst.push_back(cchart.param_of(*on_conic));
  }
  Projectivity sigma = fit_projectivity_line({src[0], src[1], src[2]}, {dst[0], dst[1], dst[2]});
  for (size_t i = 0; i < src.size(); ++i)
    if (sigma.apply(src[i]) != dst[i])
      throw ReconstructionError("ruling-projectivity",
                                "stick pairing is not a projectivity");

  RuledCubicSurface regen = [&] {
    try {
      return surface_from_ruling(baseline, conic, sigma);
    } catch (const UsageError& e) {
      throw ReconstructionError("ruling-regeneration", e.what());
    }
  }();
  if (regen.pts != k)
    throw ReconstructionError("ruling-regeneration", "regenerated scroll differs from the set");
  return RulingRecovery{std::move(sticks), std::move(baseline), std::move(conic),
                        std::move(sigma), std::move(regen)};
}

namespace {

std::vector<Subspace> transversal_family(const Subspace& l1, const Subspace& l2,
                                         const Subspace& l3) {
  std::vector<Subspace> out;
  for (const auto& x : l1.points()) {
    Subspace t = meet(span(l2, x), span(l3, x));
    if (t.proj_dim() != 1)
      throw UsageError("transversal construction degenerated");
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Regulus regulus_through(const Subspace& l1, const Subspace& l2, const Subspace& l3) {
  if (l1.proj_dim() != 1 || l2.proj_dim() != 1 || l3.proj_dim() != 1)
    throw UsageError("regulus needs three lines");
  if (meet(l1, l2).proj_dim() != -1 || meet(l1, l3).proj_dim() != -1 ||
      meet(l2, l3).proj_dim() != -1)
    throw UsageError("regulus needs pairwise skew lines");
  Subspace carrier = span(l1, l2);
  if (carrier.proj_dim() != 3 || !carrier.contains(l3))
    throw UsageError("regulus lines must lie in a common 3-space");
  const FieldSpec& f = l1.spec();
  const int q = f.order();

  std::vector<Subspace> opp = transversal_family(l1, l2, l3);
  std::vector<Subspace> reg = transversal_family(opp[0], opp[1], opp[2]);

  std::unordered_set<uint64_t> reg_keys;
  for (const auto& l : reg) reg_keys.insert(l.key());
  if (!reg_keys.count(l1.key()) || !reg_keys.count(l2.key()) || !reg_keys.count(l3.key()))
    throw ReconstructionError("regulus", "family does not contain the three lines");
  for (const auto& t : opp)
    for (const auto& l : reg)
      if (meet(t, l).proj_dim() != 0)
        throw ReconstructionError("regulus", "opposite line misses a ruling line");

  std::vector<ProjPoint> all;
  for (const auto& l : reg)
    for (const auto& p : l.points()) all.push_back(p);
  PointSet quadric(std::move(all));
  if (static_cast<int>(quadric.size()) != (q + 1) * (q + 1))
    throw ReconstructionError("regulus", "ruling lines are not pairwise skew");

  Mat sys;
  for (const auto& p : quadric) {
    auto m = quadric_monomials(carrier.internal_coords(p));
    sys.push_back(Row(m.begin(), m.end()));
  }
  Mat ker = linalg::kernel(sys);
  if (ker.size() != 1)
    throw ReconstructionError("regulus", "quadric form is not unique");
  std::array<FieldElement, 10> form;
  for (int i = 0; i < 10; ++i) form[i] = ker[0][i];

  return Regulus{carrier, std::move(reg), form, std::move(quadric)};
}

Regulus opposite_regulus(const Regulus& r) {
  std::vector<Subspace> opp = transversal_family(r.lines[0], r.lines[1], r.lines[2]);
  return Regulus{r.carrier, std::move(opp), r.form, r.quadric};
}

}  // namespace scroll
