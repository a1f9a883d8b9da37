#include "scroll/gf.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace scroll {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Polynomials over GF(p), coefficients low-to-high, not necessarily trimmed.
using Poly = std::vector<int>;

int pdeg(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != 0) return i;
  return -1;
}

Poly pmul(const Poly& a, const Poly& b, int p) {
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return r;
}

// Remainder of a modulo monic b.
Poly pmod(Poly a, const Poly& b, int p) {
  int db = pdeg(b);
  for (int da = pdeg(a); da >= db; da = pdeg(a)) {
    int c = a[da];
    if (c != 0) {
      for (int i = 0; i <= db; ++i) {
        a[da - db + i] = ((a[da - db + i] - c * b[i]) % p + p) % p;
      }
    } else {
      a.resize(da);
    }
  }
  a.resize(db);
  return a;
}

// Exhaustive trial division by monic polynomials of degree 1..deg/2.
bool is_irreducible(const Poly& m, int p) {
  int deg = pdeg(m);
  if (deg < 1) return false;
  for (int d = 1; 2 * d <= deg; ++d) {
    // all monic divisor candidates of degree d
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int code = 0; code < count; ++code) {
      Poly cand(d + 1, 0);
      int c = code;
      for (int i = 0; i < d; ++i) {
        cand[i] = c % p;
        c /= p;
      }
      cand[d] = 1;
      if (pdeg(pmod(m, cand, p)) < 0) return false;
    }
  }
  return true;
}

struct SpecKey {
  int p;
  int k;
  std::vector<int> mod;
  bool operator<(const SpecKey& o) const {
    return std::tie(p, k, mod) < std::tie(o.p, o.k, o.mod);
  }
};

// Default presentations for the orders the suites support, plus their
// quadratic extensions.
const std::map<int, SpecKey>& default_specs() {
  static const std::map<int, SpecKey> table = {
      {2, {2, 1, {0, 1}}},
      {3, {3, 1, {0, 1}}},
      {4, {2, 2, {1, 1, 1}}},
      {5, {5, 1, {0, 1}}},
      {7, {7, 1, {0, 1}}},
      {8, {2, 3, {1, 1, 0, 1}}},
      {9, {3, 2, {1, 0, 1}}},
      {16, {2, 4, {1, 1, 0, 0, 1}}},
      {25, {5, 2, {2, 0, 1}}},
      {49, {7, 2, {1, 0, 1}}},
      {64, {2, 6, {1, 1, 0, 0, 0, 0, 1}}},
      {81, {3, 4, {2, 1, 0, 0, 1}}},
  };
  return table;
}

}  // namespace

FieldSpec::FieldSpec(int p, int k, std::vector<int> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  if (!is_prime(p_)) throw UsageError("field characteristic must be prime");
  if (k_ < 1) throw UsageError("field degree must be >= 1");
  if (static_cast<int>(modulus_.size()) != k_ + 1)
    throw UsageError("modulus must have degree k (k+1 coefficients)");
  for (int& c : modulus_) c = ((c % p_) + p_) % p_;
  if (modulus_.back() != 1) throw UsageError("modulus must be monic");
  if (!is_irreducible(modulus_, p_)) throw UsageError("modulus is reducible over GF(p)");
  q_ = 1;
  for (int i = 0; i < k_; ++i) q_ *= p_;
  if (q_ > 8192) throw UsageError("field order too large for table-backed arithmetic");
  build_tables();
}

void FieldSpec::build_tables() {
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  auto digits = [&](int v) {
    Poly d(k_, 0);
    for (int i = 0; i < k_; ++i) {
      d[i] = v % p_;
      v /= p_;
    }
    return d;
  };
  auto encode = [&](const Poly& d) {
    int v = 0;
    for (int i = k_ - 1; i >= 0; --i) v = v * p_ + (i < static_cast<int>(d.size()) ? d[i] : 0);
    return v;
  };
  for (int a = 0; a < q_; ++a) {
    Poly da = digits(a);
    Poly na(k_);
    for (int i = 0; i < k_; ++i) na[i] = (p_ - da[i]) % p_;
    neg_[a] = static_cast<uint16_t>(encode(na));
    for (int b = 0; b < q_; ++b) {
      Poly db = digits(b);
      Poly s(k_);
      for (int i = 0; i < k_; ++i) s[i] = (da[i] + db[i]) % p_;
      add_[a * q_ + b] = static_cast<uint16_t>(encode(s));
      Poly m = pmod(pmul(da, db, p_), modulus_, p_);
      mul_[a * q_ + b] = static_cast<uint16_t>(encode(m));
    }
  }
  for (int a = 1; a < q_; ++a)
    for (int b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) {
        inv_[a] = static_cast<uint16_t>(b);
        break;
      }
  // rank elements lexicographically on (c0, c1, ..., c_{k-1})
  std::vector<uint16_t> order(q_);
  std::iota(order.begin(), order.end(), 0);
  std::vector<Poly> digs(q_);
  for (int v = 0; v < q_; ++v) digs[v] = digits(v);
  std::sort(order.begin(), order.end(),
            [&](uint16_t a, uint16_t b) { return digs[a] < digs[b]; });
  lex_rank_.resize(q_);
  for (int r = 0; r < q_; ++r) lex_rank_[order[r]] = static_cast<uint16_t>(r);
}

uint16_t FieldSpec::inv(uint16_t a) const {
  if (a == 0) throw DomainError("inverse of zero");
  return inv_[a];
}

const FieldSpec& FieldSpec::get(int p, int k, const std::vector<int>& modulus) {
  static std::mutex mu;
  static std::map<SpecKey, std::unique_ptr<FieldSpec>> registry;
  std::vector<int> norm = modulus;
  for (int& c : norm) {
    if (p < 2) throw UsageError("field characteristic must be prime");
    c = ((c % p) + p) % p;
  }
  SpecKey key{p, k, norm};
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(key);
  if (it == registry.end()) {
    auto spec = std::unique_ptr<FieldSpec>(new FieldSpec(p, k, norm));
    it = registry.emplace(key, std::move(spec)).first;
  }
  return *it->second;
}

const FieldSpec& FieldSpec::for_order(int q) {
  auto it = default_specs().find(q);
  if (it == default_specs().end())
    throw UsageError("no built-in field presentation for order " + std::to_string(q));
  return get(it->second.p, it->second.k, it->second.mod);
}

bool FieldSpec::supported_order(int q) { return default_specs().count(q) > 0; }

std::string FieldSpec::modulus_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < modulus_.size(); ++i) {
    if (i) os << ',';
    os << modulus_[i];
  }
  return os.str();
}

FieldElement FieldSpec::element(int index) const {
  if (index < 0 || index >= q_) throw UsageError("element index out of range");
  return FieldElement(*this, static_cast<uint16_t>(index));
}

FieldElement FieldSpec::zero() const { return FieldElement(*this, 0); }
FieldElement FieldSpec::one() const { return FieldElement(*this, 1); }

FieldElement FieldSpec::from_coefficients(const std::vector<int>& coeffs) const {
  if (static_cast<int>(coeffs.size()) > k_)
    throw UsageError("coefficient vector longer than field degree");
  int v = 0;
  for (int i = k_ - 1; i >= 0; --i) {
    int c = i < static_cast<int>(coeffs.size()) ? ((coeffs[i] % p_) + p_) % p_ : 0;
    v = v * p_ + c;
  }
  return FieldElement(*this, static_cast<uint16_t>(v));
}

std::vector<int> FieldSpec::coefficients_of(uint16_t index) const {
  std::vector<int> d(k_);
  int v = index;
  for (int i = 0; i < k_; ++i) {
    d[i] = v % p_;
    v /= p_;
  }
  return d;
}

std::vector<FieldElement> FieldSpec::enumerate() const {
  std::vector<FieldElement> out;
  out.reserve(q_);
  for (int v = 0; v < q_; ++v) out.push_back(FieldElement(*this, static_cast<uint16_t>(v)));
  std::sort(out.begin(), out.end());
  return out;
}

FieldElement FieldElement::pow(uint64_t e) const {
  FieldElement base = *this;
  FieldElement acc = spec_->one();
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

std::string FieldElement::to_string() const {
  std::ostringstream os;
  auto c = coefficients();
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) os << ',';
    os << c[i];
  }
  return os.str();
}

ExtensionEmbedding::ExtensionEmbedding(const FieldSpec& base, const FieldSpec& ext)
    : base_(&base), ext_(&ext) {
  if (base.characteristic() != ext.characteristic())
    throw UsageError("embedding requires equal characteristics");
  if (ext.degree() != 2 * base.degree())
    throw UsageError("embedding requires a quadratic extension");
  const int q = base.order();
  const int Q = ext.order();

  // image of the base generator coset: lexicographically least root of the
  // base modulus inside the extension
  FieldElement gen_image = ext.zero();
  bool found = false;
  for (FieldElement u : ext.enumerate()) {
    FieldElement acc = ext.zero();
    FieldElement up = ext.one();
    for (int c : base.modulus()) {
      if (c != 0) acc = acc + up * ext.element(c % ext.characteristic());
      up = up * u;
    }
    if (acc.is_zero()) {
      gen_image = u;
      found = true;
      break;
    }
  }
  if (!found) throw UsageError("base modulus has no root in the extension");

  embed_.resize(q);
  for (int v = 0; v < q; ++v) {
    auto coeffs = base.coefficients_of(static_cast<uint16_t>(v));
    FieldElement acc = ext.zero();
    FieldElement up = ext.one();
    for (int c : coeffs) {
      if (c != 0) acc = acc + up * ext.element(c);
      up = up * gen_image;
    }
    embed_[v] = acc.index();
  }

  omega_ = static_cast<uint16_t>(ext.characteristic());  // the coset of x
  // a + b*omega must reach every extension element exactly once
  decompose_.assign(Q, -1);
  FieldElement om(ext, omega_);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      FieldElement x = FieldElement(ext, embed_[a]) + FieldElement(ext, embed_[b]) * om;
      if (decompose_[x.index()] != -1)
        throw UsageError("omega does not generate the extension over the subfield");
      decompose_[x.index()] = a + b * q;
    }

  frob_.resize(Q);
  for (int v = 0; v < Q; ++v)
    frob_[v] = FieldElement(ext, static_cast<uint16_t>(v)).pow(q).index();
}

const ExtensionEmbedding& ExtensionEmbedding::get(const FieldSpec& base,
                                                  const FieldSpec& ext) {
  static std::mutex mu;
  static std::map<std::pair<const FieldSpec*, const FieldSpec*>,
                  std::unique_ptr<ExtensionEmbedding>>
      registry;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(&base, &ext);
  auto it = registry.find(key);
  if (it == registry.end()) {
    auto e = std::unique_ptr<ExtensionEmbedding>(new ExtensionEmbedding(base, ext));
    it = registry.emplace(key, std::move(e)).first;
  }
  return *it->second;
}

const ExtensionEmbedding& ExtensionEmbedding::for_order(int q) {
  return get(FieldSpec::for_order(q), FieldSpec::for_order(q * q));
}

FieldElement ExtensionEmbedding::embed(FieldElement a) const {
  if (a.spec_ptr() != base_) throw UsageError("embed: element not in the base field");
  return FieldElement(*ext_, embed_[a.index()]);
}

bool ExtensionEmbedding::in_subfield(FieldElement x) const {
  if (x.spec_ptr() != ext_) throw UsageError("element not in the extension field");
  return decompose_[x.index()] < base_->order();  // b == 0
}

FieldElement ExtensionEmbedding::project(FieldElement x) const {
  if (!in_subfield(x)) throw DomainError("element is not in the embedded subfield");
  return FieldElement(*base_, static_cast<uint16_t>(decompose_[x.index()]));
}

std::pair<FieldElement, FieldElement> ExtensionEmbedding::decompose(FieldElement x) const {
  if (x.spec_ptr() != ext_) throw UsageError("element not in the extension field");
  int code = decompose_[x.index()];
  int q = base_->order();
  return {FieldElement(*base_, static_cast<uint16_t>(code % q)),
          FieldElement(*base_, static_cast<uint16_t>(code / q))};
}

FieldElement ExtensionEmbedding::compose(FieldElement a, FieldElement b) const {
  return embed(a) + embed(b) * omega();
}

FieldElement ExtensionEmbedding::frobenius(FieldElement x) const {
  if (x.spec_ptr() != ext_) throw UsageError("element not in the extension field");
  return FieldElement(*ext_, frob_[x.index()]);
}

std::vector<int> parse_modulus(const std::string& text) {
  std::vector<int> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    try {
      size_t pos = 0;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad modulus coefficient: '" + tok + "'");
    }
  }
  if (out.empty()) throw UsageError("empty modulus");
  return out;
}

}  // namespace scroll
