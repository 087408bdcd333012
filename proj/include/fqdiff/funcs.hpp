#pragma once

// Function tables for the binomial family x^r (1 + u chi(x)) and for power
// maps, plus the two permutation tests (direct and character criterion).

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fqdiff/field.hpp"

namespace fqdiff {

struct BinomialParams {
  std::uint64_t r = 0;
  Elem u;
};

/// Parameters with the default exponent r = (q + 1) / 4.
inline BinomialParams default_params(const Field& f, Elem u) {
  const auto r = f.r();
  if (!r) throw std::domain_error("default exponent needs q = 3 (mod 4)");
  return {*r, u};
}

inline BinomialParams default_params(const Field& f, std::int64_t u) {
  return default_params(f, f.from_int(u));
}

/// A function F_q -> F_q stored as outputs[idx(x)] = F(x).
struct FunctionTable {
  FieldPtr field;
  std::vector<Elem> outputs;
  std::string label;

  Elem operator()(Elem x) const { return outputs[x.idx]; }
  std::uint64_t size() const { return outputs.size(); }
};

inline FunctionTable build_binomial(const FieldPtr& f, const BinomialParams& params) {
  if (params.u.idx >= f->q()) throw std::out_of_range("u is not an element of the field");
  FunctionTable t{f, std::vector<Elem>(f->q()), {}};
  for (std::uint64_t i = 0; i < f->q(); ++i) {
    const Elem x{static_cast<std::uint32_t>(i)};
    const Elem factor = f->add(f->one(), f->mul(params.u, f->from_int(f->chi(x))));
    t.outputs[i] = f->mul(f->pow(x, params.r), factor);
  }
  t.label = "x^" + std::to_string(params.r) + "(1+u*chi(x)), u=#" + std::to_string(params.u.idx);
  if (params.u.idx == 0) t.label += " (power map)";
  return t;
}

inline FunctionTable build_power(const FieldPtr& f, std::uint64_t d) {
  if (d == 0) throw std::invalid_argument("power map exponent must be positive");
  FunctionTable t{f, std::vector<Elem>(f->q()), "x^" + std::to_string(d)};
  for (std::uint64_t i = 0; i < f->q(); ++i) t.outputs[i] = f->pow(Elem{static_cast<std::uint32_t>(i)}, d);
  return t;
}

inline bool is_permutation(const FunctionTable& F) {
  std::vector<bool> seen(F.size(), false);
  for (Elem y : F.outputs) {
    if (seen[y.idx]) return false;
    seen[y.idx] = true;
  }
  return true;
}

/// Permutation criterion for x^r h(x^{(q-1)/2}) with h(x) = 1 + u x:
/// gcd(r, (q-1)/2) = 1 and chi(1+u) != (-1)^r chi(1-u).
/// u = 1 and u = -1 are rejected since then chi(1 -+ u) = 0.
inline bool predict_permutation(const Field& f, const BinomialParams& params) {
  const Elem one = f.one();
  const Elem minus_one = f.neg(one);
  if (params.u == one || params.u == minus_one)
    throw std::invalid_argument("permutation criterion is undefined for u = +-1");
  if (std::gcd(params.r, (f.q() - 1) / 2) != 1) return false;
  const int sign = (params.r % 2 == 0) ? 1 : -1;
  return f.chi(f.add(one, params.u)) != sign * f.chi(f.sub(one, params.u));
}

}  // namespace fqdiff
