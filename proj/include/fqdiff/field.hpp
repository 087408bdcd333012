#pragma once

// Arithmetic in odd-characteristic finite fields F_{p^n} in polynomial basis.
//
// Elements are handled by their canonical index idx(x) = sum c_i p^i, where
// c_0..c_{n-1} are the coefficients of x in the basis 1, t, ..., t^{n-1}.
// Index 0 is zero and index 1 is one. Multiplication goes through log/exp
// tables built against a primitive element at construction time; the
// quadratic character is precomputed as a table of length q.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fqdiff {

/// Largest field order accepted by make_field.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

/// Canonical index of a field element. Carries no field pointer; only
/// meaningful together with the Field it was produced by.
struct Elem {
  std::uint32_t idx = 0;

  constexpr Elem() = default;
  constexpr explicit Elem(std::uint32_t i) : idx(i) {}

  friend constexpr auto operator<=>(Elem, Elem) = default;
};

namespace detail {

inline bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (std::uint64_t d = 3; d * d <= v; d += 2)
    if (v % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

inline std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  // p is prime, a in [1, p)
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

// Dense polynomials over F_p, constant term first, no trailing zeros
// (the zero polynomial is the empty vector).
using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = mod_inverse(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = (a[shift + i] + p - c * m[i] % p) % p;
    trim(a);
  }
  return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(out), m, p);
}

inline Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

inline Poly poly_sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin's test: f of degree n is irreducible over F_p iff
// t^{p^n} = t mod f and gcd(t^{p^{n/d}} - t, f) = 1 for every prime d | n.
inline bool is_irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t n = f.size() - 1;
  if (n == 0) return false;
  if (n == 1) return true;
  const Poly t{0, 1};
  std::vector<Poly> frob(n + 1);
  frob[0] = poly_mod(t, f, p);
  for (std::size_t k = 1; k <= n; ++k) frob[k] = poly_powmod(frob[k - 1], p, f, p);
  if (poly_sub(frob[n], frob[0], p) != Poly{}) return false;
  for (std::uint64_t d : prime_factors(n)) {
    Poly g = poly_gcd(f, poly_sub(frob[n / d], frob[0], p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

// Smallest monic irreducible polynomial of degree n, comparing coefficient
// tuples (c_0, ..., c_{n-1}) lexicographically with c_0 most significant.
inline Poly smallest_irreducible(std::uint64_t p, std::uint64_t n) {
  if (n == 1) return {0, 1};
  std::vector<std::uint64_t> digits(n, 0);
  for (;;) {
    Poly f(digits.begin(), digits.end());
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
    // Increment with c_{n-1} as the least significant digit.
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++digits[i] < p) break;
      digits[i] = 0;
      if (i == 0) throw std::logic_error("no irreducible polynomial found");
    }
  }
}

}  // namespace detail

class Field {
 public:
  Field(std::uint64_t p, std::uint64_t n) : p_(p), n_(n) {
    if (n < 1) throw std::invalid_argument("extension degree must be >= 1");
    if (p == 2) throw std::invalid_argument("characteristic 2 is not supported");
    if (!detail::is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    q_ = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      q_ *= p;
      if (q_ > kMaxFieldOrder)
        throw std::invalid_argument("field order exceeds " + std::to_string(kMaxFieldOrder));
    }
    modulus_ = detail::smallest_irreducible(p, n);
    pow_p_.resize(n);
    pow_p_[0] = 1;
    for (std::uint64_t i = 1; i < n; ++i) pow_p_[i] = pow_p_[i - 1] * p;
    build_tables();
  }

  std::uint64_t p() const { return p_; }
  std::uint64_t n() const { return n_; }
  std::uint64_t q() const { return q_; }
  /// Monic modulus, constant term first, length n + 1. For n = 1 this is
  /// the placeholder x - 0 and arithmetic is plain mod p.
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  /// (q + 1) / 4 when q = 3 (mod 4).
  std::optional<std::uint64_t> r() const {
    if (q_ % 4 == 3) return (q_ + 1) / 4;
    return std::nullopt;
  }
  Elem generator() const { return generator_; }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }

  Elem element(std::uint64_t idx) const {
    if (idx >= q_) throw std::out_of_range("element index out of range");
    return Elem{static_cast<std::uint32_t>(idx)};
  }

  /// Image of an integer in the prime subfield.
  Elem from_int(std::int64_t v) const {
    const auto sp = static_cast<std::int64_t>(p_);
    return Elem{static_cast<std::uint32_t>(((v % sp) + sp) % sp)};
  }

  std::vector<std::uint32_t> coeffs(Elem x) const {
    std::vector<std::uint32_t> out(n_);
    std::uint64_t v = x.idx;
    for (auto& c : out) {
      c = static_cast<std::uint32_t>(v % p_);
      v /= p_;
    }
    return out;
  }

  Elem from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (c.size() != n_) throw std::invalid_argument("expected exactly n coefficients");
    std::uint64_t idx = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] >= p_) throw std::invalid_argument("coefficient not reduced mod p");
      idx = idx * p_ + c[i];
    }
    return Elem{static_cast<std::uint32_t>(idx)};
  }

  bool in_prime_subfield(Elem x) const { return x.idx < p_; }

  Elem add(Elem a, Elem b) const {
    if (n_ == 1) return Elem{static_cast<std::uint32_t>((a.idx + b.idx) % p_)};
    std::uint64_t x = a.idx, y = b.idx, out = 0;
    for (std::uint64_t i = 0; i < n_; ++i) {
      out += ((x % p_ + y % p_) % p_) * pow_p_[i];
      x /= p_;
      y /= p_;
    }
    return Elem{static_cast<std::uint32_t>(out)};
  }

  Elem neg(Elem a) const { return Elem{neg_[a.idx]}; }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  /// x + 1, touching only the constant coefficient.
  Elem succ(Elem a) const {
    const std::uint32_t c0 = a.idx % p_;
    return Elem{static_cast<std::uint32_t>(a.idx - c0 + (c0 + 1) % p_)};
  }

  Elem mul(Elem a, Elem b) const {
    if (a.idx == 0 || b.idx == 0) return zero();
    std::uint64_t e = std::uint64_t{log_[a.idx]} + log_[b.idx];
    if (e >= q_ - 1) e -= q_ - 1;
    return Elem{exp_[e]};
  }

  Elem inv(Elem a) const {
    if (a.idx == 0) throw std::domain_error("inverse of zero");
    const std::uint32_t l = log_[a.idx];
    return Elem{exp_[l == 0 ? 0 : (q_ - 1 - l)]};
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem x, std::uint64_t e) const {
    Elem result = one();
    while (e) {
      if (e & 1) result = mul(result, x);
      x = mul(x, x);
      e >>= 1;
    }
    return result;
  }

  Elem square(Elem x) const { return mul(x, x); }

  /// Quadratic character; chi(0) = 0.
  int chi(Elem x) const { return chi_[x.idx]; }

  /// Discrete logarithm base generator(); x must be nonzero.
  std::uint32_t log(Elem x) const {
    if (x.idx == 0) throw std::domain_error("log of zero");
    return log_[x.idx];
  }

  /// Square root with the smaller canonical index, or nullopt for a
  /// non-square. Needs q = 3 (mod 4), where x^{(q+1)/4} is a root.
  std::optional<Elem> sqrt_if_square(Elem x) const {
    if (q_ % 4 != 3) throw std::domain_error("sqrt_if_square needs q = 3 (mod 4)");
    if (chi(x) < 0) return std::nullopt;
    const Elem y = pow(x, (q_ + 1) / 4);
    const Elem z = neg(y);
    return z.idx < y.idx ? z : y;
  }

  std::vector<Elem> enumerate_elements() const {
    std::vector<Elem> out(q_);
    for (std::uint64_t i = 0; i < q_; ++i) out[i] = Elem{static_cast<std::uint32_t>(i)};
    return out;
  }

  bool same_as(const Field& other) const {
    return p_ == other.p_ && n_ == other.n_ && modulus_ == other.modulus_;
  }

  /// Polynomial-basis product computed directly, bypassing the log tables.
  Elem mul_slow(Elem a, Elem b) const {
    const auto ca = coeffs(a), cb = coeffs(b);
    detail::Poly pa(ca.begin(), ca.end());
    detail::Poly pb(cb.begin(), cb.end());
    detail::trim(pa);
    detail::trim(pb);
    detail::Poly prod = detail::poly_mulmod(pa, pb, modulus_, p_);
    std::vector<std::uint32_t> c(n_, 0);
    for (std::size_t i = 0; i < prod.size(); ++i) c[i] = static_cast<std::uint32_t>(prod[i]);
    return from_coeffs(c);
  }

 private:
  void build_tables() {
    neg_.resize(q_);
    for (std::uint64_t i = 0; i < q_; ++i) {
      std::uint64_t v = i, out = 0;
      for (std::uint64_t k = 0; k < n_; ++k) {
        out += ((p_ - v % p_) % p_) * pow_p_[k];
        v /= p_;
      }
      neg_[i] = static_cast<std::uint32_t>(out);
    }

    const std::uint64_t order = q_ - 1;
    const auto factors = detail::prime_factors(order);
    auto pow_slow = [this](Elem x, std::uint64_t e) {
      Elem result = one();
      while (e) {
        if (e & 1) result = mul_slow(result, x);
        x = mul_slow(x, x);
        e >>= 1;
      }
      return result;
    };
    for (std::uint64_t g = 1; g < q_; ++g) {
      const Elem cand{static_cast<std::uint32_t>(g)};
      const bool primitive = std::all_of(factors.begin(), factors.end(), [&](std::uint64_t l) {
        return pow_slow(cand, order / l).idx != 1;
      });
      if (primitive) {
        generator_ = cand;
        break;
      }
    }
    exp_.assign(order, 0);
    log_.assign(q_, 0);
    Elem cur = one();
    for (std::uint64_t k = 0; k < order; ++k) {
      exp_[k] = cur.idx;
      cur = mul_slow(cur, generator_);
    }
    for (std::uint64_t k = 0; k < order; ++k) log_[exp_[k]] = static_cast<std::uint32_t>(k);

    chi_.assign(q_, 0);
    for (std::uint64_t i = 1; i < q_; ++i) chi_[i] = (log_[i] % 2 == 0) ? 1 : -1;
  }

  std::uint64_t p_, n_, q_ = 0;
  std::vector<std::uint64_t> modulus_;
  std::vector<std::uint64_t> pow_p_;
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::int8_t> chi_;
  Elem generator_{1};
};

using FieldPtr = std::shared_ptr<const Field>;

/// Builds F_{p^n} with the smallest-lex monic irreducible modulus.
inline FieldPtr make_field(std::uint64_t p, std::uint64_t n) {
  return std::make_shared<const Field>(p, n);
}

/// Field element bound to its field. Binary operations on elements of
/// different fields throw std::invalid_argument.
class FieldElement {
 public:
  FieldElement(FieldPtr f, Elem e) : field_(std::move(f)), e_(e) {
    if (e_.idx >= field_->q()) throw std::out_of_range("element index out of range");
  }

  const FieldPtr& field() const { return field_; }
  Elem elem() const { return e_; }
  std::uint64_t index() const { return e_.idx; }
  std::vector<std::uint32_t> coeffs() const { return field_->coeffs(e_); }

  FieldElement operator+(const FieldElement& o) const { return {field_, field_->add(e_, check(o))}; }
  FieldElement operator-(const FieldElement& o) const { return {field_, field_->sub(e_, check(o))}; }
  FieldElement operator*(const FieldElement& o) const { return {field_, field_->mul(e_, check(o))}; }
  FieldElement operator/(const FieldElement& o) const { return {field_, field_->div(e_, check(o))}; }
  FieldElement operator-() const { return {field_, field_->neg(e_)}; }
  FieldElement inv() const { return {field_, field_->inv(e_)}; }
  FieldElement pow(std::uint64_t e) const { return {field_, field_->pow(e_, e)}; }
  int chi() const { return field_->chi(e_); }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_->same_as(*b.field_) && a.e_ == b.e_;
  }

 private:
  Elem check(const FieldElement& o) const {
    if (field_ != o.field_ && !field_->same_as(*o.field_))
      throw std::invalid_argument("operands belong to different fields");
    return o.e_;
  }

  FieldPtr field_;
  Elem e_;
};

}  // namespace fqdiff
