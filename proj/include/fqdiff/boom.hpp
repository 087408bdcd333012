#pragma once

// Boomerang analysis for functions that need not be permutations:
// beta_F(a, b) = #{(x, y) : F(x) - F(y) = b, F(x+a) - F(y+a) = b}.
//
// Both equations hold iff D_a(x) = D_a(y) (with D_a(x) = F(x+a) - F(x)) and
// F(x) - F(y) = b. Rows are therefore computed by bucketing x by its
// derivative value and enumerating ordered pairs inside each bucket, which
// costs sum_c delta(a, c)^2 instead of q^2.

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "fqdiff/charsum.hpp"
#include "fqdiff/diff.hpp"
#include "fqdiff/field.hpp"
#include "fqdiff/funcs.hpp"

namespace fqdiff {

struct BoomSpectrum {
  SpectrumCounts counts;
  std::uint64_t uniformity = 0;

  friend bool operator==(const BoomSpectrum&, const BoomSpectrum&) = default;
};

/// Pair counts of the u = 1 boomerang system split by (quadrant of x,
/// quadrant of y). Index i*8 + j*4 + k*2 + l for x in S_ij, y in S_kl.
struct BoomQuadrantCounts {
  Elem b;
  std::array<std::uint64_t, 16> counts{};
  std::uint64_t boundary = 0;  // pairs with x or y in {0, -1}

  std::uint64_t at(int i, int j, int k, int l) const { return counts[i * 8 + j * 4 + k * 2 + l]; }
  std::uint64_t total() const {
    std::uint64_t t = boundary;
    for (auto c : counts) t += c;
    return t;
  }
};

struct BoomPairPrediction {
  int c01 = 0;  // B_0001 + B_0100
  int c10 = 0;  // B_0010 + B_1000
};

/// Direct definition: one pass over all q^2 ordered pairs.
inline std::uint64_t beta(const FunctionTable& F, Elem a, Elem b) {
  const Field& f = *F.field;
  if (a.idx == 0) throw std::invalid_argument("beta needs a != 0");
  const std::uint64_t q = f.q();
  std::vector<Elem> shifted(q);
  for (std::uint64_t i = 0; i < q; ++i) shifted[i] = F(f.add(Elem{static_cast<std::uint32_t>(i)}, a));
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < q; ++i) {
    const Elem fx = F.outputs[i], fxa = shifted[i];
    for (std::uint64_t j = 0; j < q; ++j) {
      if (f.sub(fx, F.outputs[j]) == b && f.sub(fxa, shifted[j]) == b) ++count;
    }
  }
  return count;
}

namespace detail {

// x values grouped by D_a(x): members[start[c] .. start[c+1]) share D_a = c.
struct DerivativeBuckets {
  std::vector<std::uint32_t> start;
  std::vector<std::uint32_t> members;
};

inline DerivativeBuckets bucket_by_derivative(const FunctionTable& F, Elem a) {
  const Field& f = *F.field;
  const std::uint64_t q = f.q();
  const bool unit = a == f.one();
  std::vector<std::uint32_t> deriv(q);
  DerivativeBuckets out;
  out.start.assign(q + 1, 0);
  for (std::uint64_t i = 0; i < q; ++i) {
    const Elem x{static_cast<std::uint32_t>(i)};
    deriv[i] = f.sub(F(unit ? f.succ(x) : f.add(x, a)), F(x)).idx;
    ++out.start[deriv[i] + 1];
  }
  for (std::uint64_t c = 0; c < q; ++c) out.start[c + 1] += out.start[c];
  out.members.resize(q);
  std::vector<std::uint32_t> fill(out.start.begin(), out.start.end() - 1);
  for (std::uint64_t i = 0; i < q; ++i) out.members[fill[deriv[i]]++] = static_cast<std::uint32_t>(i);
  return out;
}

template <typename Visit>
void for_each_boomerang_pair(const FunctionTable& F, Elem a, Visit&& visit) {
  const Field& f = *F.field;
  const auto buckets = bucket_by_derivative(F, a);
  for (std::uint64_t c = 0; c < f.q(); ++c) {
    const std::uint32_t lo = buckets.start[c], hi = buckets.start[c + 1];
    for (std::uint32_t s = lo; s < hi; ++s) {
      const Elem x{buckets.members[s]};
      for (std::uint32_t t = lo; t < hi; ++t) {
        const Elem y{buckets.members[t]};
        visit(x, y, f.sub(F(x), F(y)));
      }
    }
  }
}

}  // namespace detail

/// row[idx(b)] = beta_F(a, b). Entry 0 counts the trivial x = y pairs too
/// and is reported for diagnostics only.
inline std::vector<std::uint64_t> bct_row(const FunctionTable& F, Elem a) {
  if (a.idx == 0) throw std::invalid_argument("bct_row needs a != 0");
  std::vector<std::uint64_t> row(F.field->q(), 0);
  detail::for_each_boomerang_pair(F, a, [&](Elem, Elem, Elem b) { ++row[b.idx]; });
  return row;
}

/// Maximum of beta_F(a, b) over a, b != 0.
inline std::uint64_t boomerang_uniformity(const FunctionTable& F) {
  std::uint64_t best = 0;
  for (std::uint64_t a = 1; a < F.field->q(); ++a) {
    const auto row = bct_row(F, Elem{static_cast<std::uint32_t>(a)});
    for (std::uint64_t b = 1; b < row.size(); ++b) best = std::max(best, row[b]);
  }
  return best;
}

/// beta(a, b) = beta(1, b / a^r) for chi(a) = 1 and
/// beta(1, b / ((-1)^r a^r)) for chi(a) = -1, over all b != 0.
inline bool verify_boom_row_reduction(const FunctionTable& F, const BinomialParams& params, Elem a,
                                      const std::vector<std::uint64_t>& row_1) {
  const Field& f = *F.field;
  if (a.idx == 0) throw std::invalid_argument("row reduction needs a != 0");
  return detail::rows_related(f, bct_row(F, a), row_1, detail::reduction_divisor(f, params.r, a, true), true);
}

inline bool verify_boom_row_reduction(const FieldPtr& f, const BinomialParams& params, Elem a) {
  const auto F = build_binomial(f, params);
  return verify_boom_row_reduction(F, params, a, bct_row(F, f->one()));
}

/// nu_i = #{b != 0 : beta(1, b) = i}; sum nu_i = q - 1 is validated.
inline BoomSpectrum boom_spectrum_from_row(const std::vector<std::uint64_t>& row) {
  BoomSpectrum s;
  for (std::uint64_t b = 1; b < row.size(); ++b) ++s.counts[row[b]];
  std::uint64_t total = 0;
  for (auto [i, v] : s.counts) total += v;
  if (total + 1 != row.size()) throw std::logic_error("boomerang spectrum violates sum(nu_i) = q - 1");
  s.uniformity = s.counts.empty() ? 0 : s.counts.rbegin()->first;
  return s;
}

inline BoomSpectrum boom_spectrum(const FunctionTable& F) {
  return boom_spectrum_from_row(bct_row(F, F.field->one()));
}

/// Quadrant-pair counts for every b (entry idx(b)) of the a = 1 system.
inline std::vector<BoomQuadrantCounts> boom_quadrant_counts_all(const FunctionTable& F) {
  const Field& f = *F.field;
  std::vector<BoomQuadrantCounts> out(f.q());
  for (std::uint64_t i = 0; i < f.q(); ++i) out[i].b = Elem{static_cast<std::uint32_t>(i)};
  std::vector<int> quad(f.q(), -1);
  for (std::uint64_t i = 0; i < f.q(); ++i) {
    if (auto s = quadrant_of(f, Elem{static_cast<std::uint32_t>(i)})) quad[i] = static_cast<int>(*s);
  }
  detail::for_each_boomerang_pair(F, f.one(), [&](Elem x, Elem y, Elem b) {
    auto& bc = out[b.idx];
    const int qx = quad[x.idx], qy = quad[y.idx];
    if (qx < 0 || qy < 0) {
      ++bc.boundary;
    } else {
      ++bc.counts[qx * 4 + qy];
    }
  });
  return out;
}

inline BoomQuadrantCounts boom_quadrant_counts(const FieldPtr& f, const BinomialParams& params, Elem b) {
  if (params.u != f->one()) throw std::invalid_argument("boomerang quadrant counts are defined for u = 1");
  if (b.idx == 0) throw std::invalid_argument("boomerang quadrant counts need b != 0");
  return boom_quadrant_counts_all(build_binomial(f, params))[b.idx];
}

/// For q = 7 (mod 8), u = 1, b != 0:
///   B_0001 + B_0100 = 1 iff chi(b^2-4) = 1 and chi(b^2+2b) = -1
///   B_0010 + B_1000 = 1 iff chi(b^2+4) = 1 and chi(2 + (b^2+4)^r) = 1
inline BoomPairPrediction predict_boom_pair_counts(const Field& f, Elem b) {
  if (f.q() % 8 != 7) throw std::domain_error("boomerang pair predictor needs q = 7 (mod 8)");
  if (b.idx == 0) throw std::invalid_argument("boomerang pair predictor needs b != 0");
  const Elem two = f.from_int(2), four = f.from_int(4);
  const Elem b2 = f.square(b);
  BoomPairPrediction out;
  out.c01 = (f.chi(f.sub(b2, four)) == 1 && f.chi(f.add(b2, f.mul(two, b))) == -1) ? 1 : 0;
  const Elem plus4 = f.add(b2, four);
  out.c10 = (f.chi(plus4) == 1 && f.chi(f.add(two, f.pow(plus4, *f.r()))) == 1) ? 1 : 0;
  return out;
}

/// Boomerang spectrum of x^r (1 + chi(x)), r = (q+1)/4:
///   q = 3 (mod 8): nu_0 = q - 1
///   q = 7 (mod 8): nu_0 = (9(q+1) + 4G)/16, nu_1 = (3q - 13 - 4G)/8,
///                  nu_2 = (q + 1 + 4G)/16 with G = gamma(f).
inline BoomSpectrum predict_boom_spectrum(const Field& f) {
  const std::uint64_t q = f.q();
  if (q % 4 != 3) throw std::domain_error("closed form needs q = 3 (mod 4)");
  BoomSpectrum s;
  if (q % 8 == 3) {
    s.counts[0] = q - 1;
    return s;
  }
  const auto g = gamma(f);
  const auto sq = static_cast<std::int64_t>(q);
  const std::int64_t n0 = 9 * (sq + 1) + 4 * g, n1 = 3 * sq - 13 - 4 * g, n2 = sq + 1 + 4 * g;
  if (n0 % 16 || n1 % 8 || n2 % 16 || n0 < 0 || n1 < 0 || n2 < 0)
    throw std::logic_error("gamma yields a non-integral boomerang spectrum");
  const std::int64_t nu[3] = {n0 / 16, n1 / 8, n2 / 16};
  for (int i = 0; i < 3; ++i)
    if (nu[i] > 0) s.counts[i] = static_cast<std::uint64_t>(nu[i]);
  s.uniformity = s.counts.rbegin()->first;
  return s;
}

}  // namespace fqdiff
