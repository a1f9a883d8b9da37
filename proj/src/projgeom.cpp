#include "scroll/projgeom.hpp"

#include <algorithm>
#include <sstream>

#include "scroll/errors.hpp"

namespace scroll {

namespace {

void normalize_row(linalg::Row& v) {
  for (auto& c : v) {
    if (!c.is_zero()) {
      if (c == c.spec().one()) return;
      FieldElement inv = c.inverse();
      for (auto& d : v) d = d * inv;
      return;
    }
  }
  throw UsageError("zero vector cannot represent a projective point");
}

bool row_less(const linalg::Row& a, const linalg::Row& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

}  // namespace

ProjPoint::ProjPoint(const FieldSpec& spec, std::vector<FieldElement> coords)
    : spec_(&spec), coords_(std::move(coords)) {
  if (coords_.empty()) throw UsageError("point needs at least one coordinate");
  for (const auto& c : coords_)
    if (c.spec_ptr() != spec_) throw UsageError("point coordinate from a foreign field");
  normalize_row(coords_);
}

ProjPoint ProjPoint::from_indices(const FieldSpec& spec, const std::vector<int>& idx) {
  std::vector<FieldElement> c;
  c.reserve(idx.size());
  for (int v : idx) c.push_back(spec.element(v));
  return ProjPoint(spec, std::move(c));
}

uint64_t ProjPoint::key() const {
  uint64_t k = 1;
  for (const auto& c : coords_) k = (k << 7) | c.index();
  return k;
}

bool ProjPoint::operator<(const ProjPoint& o) const { return row_less(coords_, o.coords_); }

std::string ProjPoint::to_string() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << " : ";
    os << coords_[i].to_string();
  }
  os << ')';
  return os.str();
}

Subspace::Subspace(const FieldSpec& spec, int ambient, linalg::Mat rows)
    : spec_(&spec), ambient_(ambient) {
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != ambient + 1)
      throw UsageError("basis row length does not match the ambient space");
  basis_ = std::move(rows);
  pivots_ = linalg::rref_in_place(basis_);
}

Subspace Subspace::empty(const FieldSpec& spec, int ambient) {
  return Subspace(spec, ambient, {});
}

Subspace Subspace::full(const FieldSpec& spec, int ambient) {
  return Subspace(spec, ambient, linalg::identity(spec, ambient + 1));
}

Subspace Subspace::from_dual(const FieldSpec& spec, const linalg::Row& covector) {
  linalg::Mat m{covector};
  linalg::Mat ker = linalg::kernel(m);
  Subspace s(spec, static_cast<int>(covector.size()) - 1, std::move(ker));
  linalg::Row d = covector;
  normalize_row(d);
  s.dual_ = std::move(d);
  return s;
}

bool Subspace::contains(const ProjPoint& p) const {
  if (p.ambient() != ambient_) throw UsageError("ambient dimension mismatch");
  if (dual_) return eval_dual(p).is_zero();
  linalg::Row v = p.coords();
  for (size_t r = 0; r < basis_.size(); ++r) {
    FieldElement c = v[pivots_[r]];
    if (c.is_zero()) continue;
    for (int j = 0; j <= ambient_; ++j) v[j] = v[j] - c * basis_[r][j];
  }
  for (const auto& c : v)
    if (!c.is_zero()) return false;
  return true;
}

bool Subspace::contains(const Subspace& s) const {
  for (const auto& row : s.basis_)
    if (!contains(ProjPoint(*spec_, row))) return false;
  return true;
}

FieldElement Subspace::eval_dual(const ProjPoint& p) const {
  if (!dual_) throw UsageError("subspace has no cached dual covector");
  FieldElement acc = spec_->zero();
  const auto& d = *dual_;
  for (int i = 0; i <= ambient_; ++i) acc = acc + d[i] * p[i];
  return acc;
}

linalg::Row Subspace::internal_coords(const ProjPoint& p) const {
  linalg::Row c;
  c.reserve(basis_.size());
  for (size_t r = 0; r < basis_.size(); ++r) c.push_back(p[pivots_[r]]);
  // reconstruct and compare: RREF rows read coefficients off pivot columns
  linalg::Row v(ambient_ + 1, spec_->zero());
  for (size_t r = 0; r < basis_.size(); ++r)
    for (int j = 0; j <= ambient_; ++j) v[j] = v[j] + c[r] * basis_[r][j];
  if (v != p.coords()) throw UsageError("point is not in the subspace");
  return c;
}

ProjPoint Subspace::from_internal(const linalg::Row& c) const {
  if (c.size() != basis_.size()) throw UsageError("internal coordinate length mismatch");
  linalg::Row v(ambient_ + 1, spec_->zero());
  for (size_t r = 0; r < basis_.size(); ++r) {
    if (c[r].is_zero()) continue;
    for (int j = 0; j <= ambient_; ++j) v[j] = v[j] + c[r] * basis_[r][j];
  }
  return ProjPoint(*spec_, std::move(v));
}

std::vector<ProjPoint> Subspace::points() const {
  std::vector<ProjPoint> out;
  if (rank() == 0) return out;
  for (const ProjPoint& prm : enumerate_points(*spec_, rank() - 1))
    out.push_back(from_internal(prm.coords()));
  std::sort(out.begin(), out.end());
  return out;
}

uint64_t Subspace::key() const {
  uint64_t mask = 0;
  for (int p : pivots_) mask |= (1ull << p);
  uint64_t k = mask + 1;
  std::vector<bool> is_pivot(ambient_ + 1, false);
  for (int p : pivots_) is_pivot[p] = true;
  for (const auto& row : basis_)
    for (int j = 0; j <= ambient_; ++j)
      if (!is_pivot[j]) k = (k << 7) | row[j].index();
  return k;
}

bool Subspace::operator<(const Subspace& o) const {
  if (rank() != o.rank()) return rank() < o.rank();
  for (size_t r = 0; r < basis_.size(); ++r) {
    if (row_less(basis_[r], o.basis_[r])) return true;
    if (row_less(o.basis_[r], basis_[r])) return false;
  }
  return false;
}

std::string Subspace::to_string() const {
  std::ostringstream os;
  os << "span{";
  for (size_t r = 0; r < basis_.size(); ++r) {
    if (r) os << ", ";
    os << ProjPoint(*spec_, basis_[r]).to_string();
  }
  os << '}';
  return os.str();
}

PointSet::PointSet(std::vector<ProjPoint> pts) : pts_(std::move(pts)) {
  std::sort(pts_.begin(), pts_.end());
  pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
  keys_.reserve(pts_.size() * 2);
  for (const auto& p : pts_) keys_.insert(p.key());
}

bool PointSet::contains_all(const std::vector<ProjPoint>& v) const {
  for (const auto& p : v)
    if (!contains(p)) return false;
  return true;
}

Subspace span(const std::vector<ProjPoint>& pts) {
  if (pts.empty()) throw UsageError("span of an empty point list");
  linalg::Mat rows;
  rows.reserve(pts.size());
  for (const auto& p : pts) {
    if (p.ambient() != pts[0].ambient()) throw UsageError("ambient dimension mismatch");
    rows.push_back(p.coords());
  }
  return Subspace(pts[0].spec(), pts[0].ambient(), std::move(rows));
}

Subspace span(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw UsageError("ambient dimension mismatch");
  linalg::Mat rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return Subspace(a.spec(), a.ambient(), std::move(rows));
}

Subspace span(const Subspace& a, const ProjPoint& p) {
  linalg::Mat rows = a.basis();
  rows.push_back(p.coords());
  return Subspace(a.spec(), a.ambient(), std::move(rows));
}

Subspace meet(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw UsageError("ambient dimension mismatch");
  const FieldSpec& f = a.spec();
  const int w = a.ambient() + 1;
  // Zassenhaus: rows [A|A] and [B|0]; reduced rows with zero left half
  // carry an intersection basis on the right.
  linalg::Mat big;
  for (const auto& r : a.basis()) {
    linalg::Row row = r;
    row.insert(row.end(), r.begin(), r.end());
    big.push_back(std::move(row));
  }
  for (const auto& r : b.basis()) {
    linalg::Row row = r;
    row.insert(row.end(), w, f.zero());
    big.push_back(std::move(row));
  }
  linalg::rref_in_place(big);
  linalg::Mat inter;
  for (const auto& row : big) {
    bool left_zero = true;
    for (int j = 0; j < w; ++j)
      if (!row[j].is_zero()) {
        left_zero = false;
        break;
      }
    if (left_zero) inter.push_back(linalg::Row(row.begin() + w, row.end()));
  }
  return Subspace(f, a.ambient(), std::move(inter));
}

Subspace line_through(const ProjPoint& a, const ProjPoint& b) {
  if (a == b) throw UsageError("line through equal points");
  return span({a, b});
}

std::vector<ProjPoint> enumerate_points(const FieldSpec& spec, int n) {
  std::vector<ProjPoint> out;
  std::vector<FieldElement> elems = spec.enumerate();  // lex order
  const int q = spec.order();
  // first-nonzero position descending gives lexicographic order on
  // normalized coordinate vectors
  for (int fnz = n; fnz >= 0; --fnz) {
    const int tail = n - fnz;
    std::vector<int> odo(tail, 0);
    while (true) {
      std::vector<FieldElement> c;
      c.reserve(n + 1);
      for (int i = 0; i < fnz; ++i) c.push_back(spec.zero());
      c.push_back(spec.one());
      for (int i = 0; i < tail; ++i) c.push_back(elems[odo[i]]);
      out.push_back(ProjPoint(spec, std::move(c)));
      int pos = tail - 1;
      while (pos >= 0 && odo[pos] == q - 1) {
        odo[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++odo[pos];
    }
  }
  return out;
}

std::vector<Subspace> enumerate_hyperplanes(const FieldSpec& spec, int n) {
  std::vector<Subspace> out;
  for (const ProjPoint& cov : enumerate_points(spec, n))
    out.push_back(Subspace::from_dual(spec, cov.coords()));
  return out;
}

std::vector<ProjPoint> parameter_line(const FieldSpec& spec) {
  return enumerate_points(spec, 1);
}

PointProjection::PointProjection(ProjPoint center, Subspace hyperplane)
    : center_(std::move(center)),
      hyperplane_(std::move(hyperplane)),
      fc_(center_.spec().zero()) {
  if (hyperplane_.proj_dim() != hyperplane_.ambient() - 1)
    throw UsageError("projection target must be a hyperplane");
  if (!hyperplane_.dual())
    hyperplane_ = Subspace::from_dual(hyperplane_.spec(),
                                      linalg::kernel(hyperplane_.basis())[0]);
  fc_ = hyperplane_.eval_dual(center_);
  if (fc_.is_zero()) throw UsageError("projection center lies in the hyperplane");
}

ProjPoint PointProjection::operator()(const ProjPoint& x) const {
  if (x == center_) throw DomainError("cannot project the center itself");
  FieldElement fx = hyperplane_.eval_dual(x);
  linalg::Row v(x.ambient() + 1, x.spec().zero());
  for (int i = 0; i <= x.ambient(); ++i) v[i] = x[i] * fc_ - center_[i] * fx;
  return ProjPoint(x.spec(), std::move(v));
}

Projectivity::Projectivity(const FieldSpec& spec, linalg::Mat m) : spec_(&spec), m_(std::move(m)) {
  const size_t n = m_.size();
  for (const auto& r : m_)
    if (r.size() != n) throw UsageError("projectivity matrix must be square");
  if (linalg::det(m_).is_zero()) throw UsageError("projectivity matrix is singular");
  // canonical scale: first nonzero entry (row-major) becomes 1
  for (auto& row : m_)
    for (auto& c : row)
      if (!c.is_zero()) {
        FieldElement inv = c.inverse();
        for (auto& r2 : m_)
          for (auto& c2 : r2) c2 = c2 * inv;
        return;
      }
}

Projectivity Projectivity::identity(const FieldSpec& spec, int n) {
  return Projectivity(spec, linalg::identity(spec, n + 1));
}

ProjPoint Projectivity::apply(const ProjPoint& p) const {
  if (p.ambient() != dim()) throw UsageError("ambient dimension mismatch");
  return ProjPoint(*spec_, linalg::matvec(m_, p.coords()));
}

Subspace Projectivity::apply(const Subspace& s) const {
  if (s.ambient() != dim()) throw UsageError("ambient dimension mismatch");
  linalg::Mat rows;
  for (const auto& r : s.basis()) rows.push_back(linalg::matvec(m_, r));
  return Subspace(*spec_, s.ambient(), std::move(rows));
}

Projectivity Projectivity::compose(const Projectivity& inner) const {
  return Projectivity(*spec_, linalg::matmul(m_, inner.m_));
}

Projectivity Projectivity::inverse() const {
  return Projectivity(*spec_, linalg::inverse(m_));
}

std::string Projectivity::to_string() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < m_.size(); ++i) {
    if (i) os << "; ";
    for (size_t j = 0; j < m_.size(); ++j) {
      if (j) os << ' ';
      os << m_[i][j].to_string();
    }
  }
  os << ']';
  return os.str();
}

LineChart::LineChart(Subspace line) : line_(std::move(line)) {
  if (line_.proj_dim() != 1) throw UsageError("line chart needs a projective line");
}

ProjPoint LineChart::point_at(const ProjPoint& param) const {
  if (param.ambient() != 1) throw UsageError("line parameter must be a PG(1,q) point");
  return line_.from_internal(param.coords());
}

ProjPoint LineChart::param_of(const ProjPoint& x) const {
  return ProjPoint(line_.spec(), line_.internal_coords(x));
}

std::optional<FieldElement> cross_ratio(const ProjPoint& a, const ProjPoint& b,
                                        const ProjPoint& c, const ProjPoint& d) {
  if (a == b || a == c || b == c || d == a || d == b || d == c)
    throw UsageError("cross-ratio requires four distinct points");
  Subspace l = line_through(a, b);
  if (!l.contains(c) || !l.contains(d)) throw UsageError("cross-ratio points not collinear");
  LineChart chart(l);
  // coordinates in the (a, b) basis
  linalg::Row pa = chart.param_of(a).coords(), pb = chart.param_of(b).coords();
  linalg::Mat base{{pa[0], pb[0]}, {pa[1], pb[1]}};
  linalg::Mat binv = linalg::inverse(base);
  linalg::Row cc = linalg::matvec(binv, chart.param_of(c).coords());
  linalg::Row dd = linalg::matvec(binv, chart.param_of(d).coords());
  FieldElement alpha = cc[0], beta = cc[1], gamma = dd[0], delta = dd[1];
  FieldElement num = alpha * delta;
  FieldElement den = num - beta * gamma;
  if (den.is_zero()) return std::nullopt;
  return num / den;
}

namespace {

// 2x2 matrix sending (1,0),(0,1),(1,1) to the triple a,b,c of PG(1,q).
linalg::Mat triple_matrix(const std::vector<ProjPoint>& t) {
  if (t.size() != 3) throw UsageError("need exactly three points");
  const ProjPoint &a = t[0], &b = t[1], &c = t[2];
  if (a == b || a == c || b == c) throw UsageError("degenerate triple");
  linalg::Mat base{{a[0], b[0]}, {a[1], b[1]}};
  linalg::Row s = linalg::matvec(linalg::inverse(base), c.coords());
  return {{a[0] * s[0], b[0] * s[1]}, {a[1] * s[0], b[1] * s[1]}};
}

}  // namespace

Projectivity fit_projectivity_line(const std::vector<ProjPoint>& src,
                                   const std::vector<ProjPoint>& dst) {
  for (const auto& p : src)
    if (p.ambient() != 1) throw UsageError("line fit expects PG(1,q) points");
  for (const auto& p : dst)
    if (p.ambient() != 1) throw UsageError("line fit expects PG(1,q) points");
  const FieldSpec& f = src[0].spec();
  linalg::Mat ms = triple_matrix(src);
  linalg::Mat md = triple_matrix(dst);
  return Projectivity(f, linalg::matmul(md, linalg::inverse(ms)));
}

Projectivity frame_projectivity(const std::vector<ProjPoint>& pts) {
  const int n = pts[0].ambient();
  if (static_cast<int>(pts.size()) != n + 2)
    throw UsageError("frame fit needs n+2 points");
  const FieldSpec& f = pts[0].spec();
  linalg::Mat cols = linalg::zeros(f, n + 1, n + 1);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) cols[i][j] = pts[j][i];
  if (linalg::det(cols).is_zero())
    throw UsageError("frame points are not in general position");
  linalg::Row scale = linalg::matvec(linalg::inverse(cols), pts[n + 1].coords());
  for (const auto& s : scale)
    if (s.is_zero()) throw UsageError("frame points are not in general position");
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) cols[i][j] = cols[i][j] * scale[j];
  return Projectivity(f, std::move(cols));
}

}  // namespace scroll
