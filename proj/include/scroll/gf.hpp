#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "scroll/errors.hpp"

namespace scroll {

class FieldElement;

/// Exact arithmetic in GF(p^k), presented as GF(p)[x]/(m(x)) for a monic
/// irreducible modulus m of degree k. A FieldSpec owns the operation tables
/// for one presentation; elements are coefficient vectors encoded as base-p
/// integers (constant coefficient least significant). Specs are interned,
/// immutable and shareable across threads; two elements are compatible
/// exactly when they hold the same FieldSpec pointer.
class FieldSpec {
 public:
  /// Interned spec for GF(p^k) with an explicit modulus (coefficients
  /// low-to-high, length k+1). Throws UsageError if p is not prime, the
  /// modulus is not monic of degree k, or it is reducible over GF(p).
  static const FieldSpec& get(int p, int k, const std::vector<int>& modulus);

  /// Built-in default modulus for a supported order q = p^k.
  static const FieldSpec& for_order(int q);

  /// True if `q` has a built-in default presentation (3..81 prime powers
  /// needed here, including the quadratic extensions of the supported base
  /// orders).
  static bool supported_order(int q);

  int characteristic() const { return p_; }
  int degree() const { return k_; }
  int order() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }
  std::string modulus_string() const;  // "c0,c1,..."

  FieldElement element(int index) const;
  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_coefficients(const std::vector<int>& coeffs) const;

  /// All q elements, ordered lexicographically on the coefficient vector
  /// (constant coefficient compared first).
  std::vector<FieldElement> enumerate() const;

  // Index-level arithmetic used by FieldElement.
  uint16_t add(uint16_t a, uint16_t b) const { return add_[a * q_ + b]; }
  uint16_t sub(uint16_t a, uint16_t b) const { return add_[a * q_ + neg_[b]]; }
  uint16_t mul(uint16_t a, uint16_t b) const { return mul_[a * q_ + b]; }
  uint16_t neg(uint16_t a) const { return neg_[a]; }
  uint16_t inv(uint16_t a) const;
  uint16_t lex_rank(uint16_t a) const { return lex_rank_[a]; }

  std::vector<int> coefficients_of(uint16_t index) const;

 private:
  FieldSpec(int p, int k, std::vector<int> modulus);
  void build_tables();

  int p_;
  int k_;
  int q_;
  std::vector<int> modulus_;
  std::vector<uint16_t> add_;
  std::vector<uint16_t> mul_;
  std::vector<uint16_t> neg_;
  std::vector<uint16_t> inv_;
  std::vector<uint16_t> lex_rank_;
};

/// One element of a FieldSpec. Value type, two bytes of payload plus the
/// spec pointer; canonical (equal coefficient vectors compare equal).
class FieldElement {
 public:
  FieldElement() : spec_(nullptr), v_(0) {}
  FieldElement(const FieldSpec& spec, uint16_t index) : spec_(&spec), v_(index) {}

  const FieldSpec& spec() const { return *spec_; }
  const FieldSpec* spec_ptr() const { return spec_; }
  uint16_t index() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  std::vector<int> coefficients() const { return spec_->coefficients_of(v_); }
  std::string to_string() const;  // "c0,c1,..." (length k)

  FieldElement operator+(FieldElement o) const { return bin(o, spec_->add(v_, o.v_)); }
  FieldElement operator-(FieldElement o) const { return bin(o, spec_->sub(v_, o.v_)); }
  FieldElement operator*(FieldElement o) const { return bin(o, spec_->mul(v_, o.v_)); }
  FieldElement operator/(FieldElement o) const {
    return bin(o, spec_->mul(v_, spec_->inv(o.v_)));
  }
  FieldElement operator-() const { return FieldElement(*spec_, spec_->neg(v_)); }
  FieldElement inverse() const { return FieldElement(*spec_, spec_->inv(v_)); }
  FieldElement pow(uint64_t e) const;

  bool operator==(FieldElement o) const { return check(o), v_ == o.v_; }
  bool operator!=(FieldElement o) const { return !(*this == o); }
  /// Lexicographic on coefficient vectors, constant coefficient first.
  bool operator<(FieldElement o) const {
    return check(o), spec_->lex_rank(v_) < spec_->lex_rank(o.v_);
  }

 private:
  FieldElement bin(FieldElement o, uint16_t r) const {
    check(o);
    return FieldElement(*spec_, r);
  }
  void check(FieldElement o) const {
    if (spec_ != o.spec_) throw UsageError("field mismatch between operands");
  }

  const FieldSpec* spec_;
  uint16_t v_;
};

/// The quadratic extension GF(q) < GF(q^2) with a chosen omega so that
/// every extension element is uniquely a + b*omega with a, b in the
/// embedded subfield. omega defaults to the generator coset x of the
/// extension modulus. Immutable, interned.
class ExtensionEmbedding {
 public:
  static const ExtensionEmbedding& get(const FieldSpec& base, const FieldSpec& ext);
  /// Default base and extension presentations for base order q.
  static const ExtensionEmbedding& for_order(int q);

  const FieldSpec& base() const { return *base_; }
  const FieldSpec& ext() const { return *ext_; }
  FieldElement omega() const { return FieldElement(*ext_, omega_); }
  std::string omega_string() const { return omega().to_string(); }

  FieldElement embed(FieldElement a) const;
  bool in_subfield(FieldElement x) const;
  /// Inverse of embed; throws DomainError when x is not in the subfield.
  FieldElement project(FieldElement x) const;
  /// x = a + b*omega with a, b in GF(q); returned as base-field elements.
  std::pair<FieldElement, FieldElement> decompose(FieldElement x) const;
  FieldElement compose(FieldElement a, FieldElement b) const;

  /// x -> x^q. An automorphism of GF(q^2) of order 2 fixing exactly the
  /// embedded subfield.
  FieldElement frobenius(FieldElement x) const;

 private:
  ExtensionEmbedding(const FieldSpec& base, const FieldSpec& ext);

  const FieldSpec* base_;
  const FieldSpec* ext_;
  uint16_t omega_;
  std::vector<uint16_t> embed_;      // base index -> ext index
  std::vector<uint16_t> frob_;       // ext index  -> ext index
  std::vector<int32_t> decompose_;   // ext index  -> a + b*q (base indices)
};

/// Parses "c0,c1,..." into a coefficient list. Throws UsageError on junk.
std::vector<int> parse_modulus(const std::string& text);

}  // namespace scroll
