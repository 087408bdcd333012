#pragma once

// Differential analysis: delta_F(a, b), DDT rows, differential spectra,
// locality classification, and the quadrant decomposition of solutions of
// F(x+1) - F(x) = b together with its closed-form predictors.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fqdiff/field.hpp"
#include "fqdiff/funcs.hpp"

namespace fqdiff {

/// Multiplicity -> number of b attaining it. Zero counts are never stored.
using SpectrumCounts = std::map<std::uint64_t, std::uint64_t>;

struct DiffSpectrum {
  SpectrumCounts counts;
  std::uint64_t uniformity = 0;

  friend bool operator==(const DiffSpectrum&, const DiffSpectrum&) = default;
};

/// Quadrants S_ij = {x : chi(x) = (-1)^i, chi(x+1) = (-1)^j}.
enum class Quadrant : std::uint8_t { S00 = 0, S01 = 1, S10 = 2, S11 = 3 };

inline std::string to_string(Quadrant s) {
  static const char* names[] = {"S00", "S01", "S10", "S11"};
  return names[static_cast<int>(s)];
}

/// Quadrant of x, or nullopt for x in {0, -1}.
inline std::optional<Quadrant> quadrant_of(const Field& f, Elem x) {
  const int c0 = f.chi(x), c1 = f.chi(f.succ(x));
  if (c0 == 0 || c1 == 0) return std::nullopt;
  return static_cast<Quadrant>((c0 < 0 ? 2 : 0) + (c1 < 0 ? 1 : 0));
}

struct QuadrantCounts {
  Elem b;
  std::array<std::uint64_t, 4> d{};  // indexed by Quadrant
  bool sol_at_0 = false;
  bool sol_at_neg1 = false;

  std::uint64_t at(Quadrant s) const { return d[static_cast<int>(s)]; }
  std::uint64_t total() const { return d[0] + d[1] + d[2] + d[3] + sol_at_0 + sol_at_neg1; }
};

struct QuadrantWitness {
  Quadrant quadrant;
  Elem x;
};

struct QuadrantPrediction {
  Elem b;
  std::array<std::uint64_t, 4> d{};
  std::optional<Elem> R1;  // (b^2 + 2(1+u^2))^r
  std::optional<Elem> R2;  // (b^2 - 2(1+u^2))^r
  std::vector<QuadrantWitness> witnesses;

  std::uint64_t at(Quadrant s) const { return d[static_cast<int>(s)]; }
  std::uint64_t sum() const { return d[0] + d[1] + d[2] + d[3]; }
};

enum class LocalityMode { Strict, Punctured };
enum class Locality { LocallyPN, LocallyAPN, Neither };

inline std::string to_string(Locality l) {
  switch (l) {
    case Locality::LocallyPN: return "locally-PN";
    case Locality::LocallyAPN: return "locally-APN";
    case Locality::Neither: return "neither";
  }
  return "?";
}

inline std::uint64_t delta(const FunctionTable& F, Elem a, Elem b) {
  const Field& f = *F.field;
  if (a.idx == 0) throw std::invalid_argument("delta needs a != 0");
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < f.q(); ++i) {
    const Elem x{static_cast<std::uint32_t>(i)};
    if (f.sub(F(f.add(x, a)), F(x)) == b) ++count;
  }
  return count;
}

/// row[idx(b)] = delta_F(a, b).
inline std::vector<std::uint64_t> ddt_row(const FunctionTable& F, Elem a) {
  const Field& f = *F.field;
  if (a.idx == 0) throw std::invalid_argument("ddt_row needs a != 0");
  std::vector<std::uint64_t> row(f.q(), 0);
  const bool unit = a == f.one();
  for (std::uint64_t i = 0; i < f.q(); ++i) {
    const Elem x{static_cast<std::uint32_t>(i)};
    const Elem xa = unit ? f.succ(x) : f.add(x, a);
    ++row[f.sub(F(xa), F(x)).idx];
  }
  return row;
}

/// Maximum of delta_F(a, b) over a != 0 and all b.
inline std::uint64_t differential_uniformity(const FunctionTable& F) {
  std::uint64_t best = 0;
  for (std::uint64_t a = 1; a < F.field->q(); ++a) {
    const auto row = ddt_row(F, Elem{static_cast<std::uint32_t>(a)});
    best = std::max(best, *std::max_element(row.begin(), row.end()));
  }
  return best;
}

namespace detail {

// Divisor g with delta(a, b) = delta(1, b / g): a^r for chi(a) = 1 and
// sign * a^r for chi(a) = -1, where the sign is (-1)^{r+1} for the DDT
// and (-1)^r for the BCT.
inline Elem reduction_divisor(const Field& f, std::uint64_t r, Elem a, bool boomerang) {
  Elem g = f.pow(a, r);
  if (f.chi(a) < 0) {
    const bool odd_exponent = boomerang ? (r % 2 == 1) : (r % 2 == 0);
    if (odd_exponent) g = f.neg(g);
  }
  return g;
}

inline bool rows_related(const Field& f, const std::vector<std::uint64_t>& row_a,
                         const std::vector<std::uint64_t>& row_1, Elem divisor, bool skip_zero) {
  const Elem inv = f.inv(divisor);
  for (std::uint64_t i = skip_zero ? 1 : 0; i < f.q(); ++i) {
    const Elem b{static_cast<std::uint32_t>(i)};
    if (row_a[i] != row_1[f.mul(b, inv).idx]) return false;
  }
  return true;
}

}  // namespace detail

/// Checks delta(a, b) = delta(1, b / a^r) for chi(a) = 1 and
/// delta(a, b) = delta(1, b / ((-1)^{r+1} a^r)) for chi(a) = -1, for every b.
inline bool verify_row_reduction(const FunctionTable& F, const BinomialParams& params, Elem a,
                                 const std::vector<std::uint64_t>& row_1) {
  const Field& f = *F.field;
  if (a.idx == 0) throw std::invalid_argument("row reduction needs a != 0");
  return detail::rows_related(f, ddt_row(F, a), row_1, detail::reduction_divisor(f, params.r, a, false), false);
}

inline bool verify_row_reduction(const FieldPtr& f, const BinomialParams& params, Elem a) {
  const auto F = build_binomial(f, params);
  return verify_row_reduction(F, params, a, ddt_row(F, f->one()));
}

namespace detail {

inline void check_diff_identities(const SpectrumCounts& counts, std::uint64_t q) {
  std::uint64_t total = 0, weighted = 0;
  for (auto [i, w] : counts) {
    total += w;
    weighted += i * w;
  }
  if (total != q || weighted != q)
    throw std::logic_error("differential spectrum violates sum(w_i) = sum(i w_i) = q");
}

}  // namespace detail

/// Spectrum of a DDT row: counts[i] = #{b : row[b] = i}. Both count
/// identities (sum w_i = sum i w_i = q) are validated before returning.
inline DiffSpectrum diff_spectrum_from_row(const std::vector<std::uint64_t>& row) {
  DiffSpectrum s;
  for (auto v : row) ++s.counts[v];
  s.uniformity = s.counts.empty() ? 0 : s.counts.rbegin()->first;
  detail::check_diff_identities(s.counts, row.size());
  return s;
}

/// Differential spectrum {w_i}, w_i = #{b : delta_F(1, b) = i}. Assumes every
/// other DDT row is a permutation of row 1.
inline DiffSpectrum diff_spectrum(const FunctionTable& F) {
  return diff_spectrum_from_row(ddt_row(F, F.field->one()));
}

/// Strict: b ranges over F_q minus F_p. Punctured: b ranges over F_q^*.
inline Locality classify_locality(const FunctionTable& F, LocalityMode mode) {
  const Field& f = *F.field;
  const auto row = ddt_row(F, f.one());
  std::uint64_t worst = 0;
  for (std::uint64_t i = 1; i < f.q(); ++i) {
    if (mode == LocalityMode::Strict && f.in_prime_subfield(Elem{static_cast<std::uint32_t>(i)})) continue;
    worst = std::max(worst, row[i]);
  }
  if (worst <= 1) return Locality::LocallyPN;
  if (worst <= 2) return Locality::LocallyAPN;
  return Locality::Neither;
}

/// Brute-force quadrant counts for every b at once; entry idx(b).
inline std::vector<QuadrantCounts> quadrant_counts_all(const FunctionTable& F) {
  const Field& f = *F.field;
  std::vector<QuadrantCounts> out(f.q());
  for (std::uint64_t i = 0; i < f.q(); ++i) out[i].b = Elem{static_cast<std::uint32_t>(i)};
  const Elem minus_one = f.neg(f.one());
  for (std::uint64_t i = 0; i < f.q(); ++i) {
    const Elem x{static_cast<std::uint32_t>(i)};
    auto& qc = out[f.sub(F(f.succ(x)), F(x)).idx];
    if (x.idx == 0) {
      qc.sol_at_0 = true;
    } else if (x == minus_one) {
      qc.sol_at_neg1 = true;
    } else {
      ++qc.d[static_cast<int>(*quadrant_of(f, x))];
    }
  }
  return out;
}

inline QuadrantCounts quadrant_counts(const FieldPtr& f, const BinomialParams& params, Elem b) {
  return quadrant_counts_all(build_binomial(f, params))[b.idx];
}

namespace detail {

inline void require_default_r(const Field& f, const BinomialParams& params) {
  const auto r = f.r();
  if (!r) throw std::domain_error("predictor needs q = 3 (mod 4)");
  if (params.r != *r) throw std::domain_error("predictor needs r = (q + 1) / 4");
}

}  // namespace detail

/// Closed-form quadrant counts for u = 1 and b != 0:
///   S00: chi(b(b^2+4)) = 1 and chi(b(b^2-4)) = -1, witness (4-b^2)^2 / (16 b^2)
///   S01: chi(b) = -chi(2) and chi(b^2+4) = -1,    witness b^2 / 4
///   S10: chi(b) = chi(2) and chi(b^2-4) = -1,     witness (b^2-4) / 4
///   S11: never (only b = 0 has solutions there).
inline QuadrantPrediction predict_quadrants_u1(const Field& f, Elem b) {
  if (!f.r()) throw std::domain_error("predictor needs q = 3 (mod 4)");
  if (b.idx == 0) throw std::invalid_argument("predictor needs b != 0");
  QuadrantPrediction pred;
  pred.b = b;
  const Elem two = f.from_int(2), four = f.from_int(4);
  const Elem b2 = f.square(b);
  const Elem plus4 = f.add(b2, four), minus4 = f.sub(b2, four);
  const int chi_b = f.chi(b), chi_2 = f.chi(two);

  if (f.chi(f.mul(b, plus4)) == 1 && f.chi(f.mul(b, minus4)) == -1) {
    pred.d[0] = 1;
    const Elem num = f.square(f.sub(four, b2));
    pred.witnesses.push_back({Quadrant::S00, f.div(num, f.mul(f.from_int(16), b2))});
  }
  if (chi_b == -chi_2 && f.chi(plus4) == -1) {
    pred.d[1] = 1;
    pred.witnesses.push_back({Quadrant::S01, f.div(b2, four)});
  }
  if (chi_b == chi_2 && f.chi(minus4) == -1) {
    pred.d[2] = 1;
    pred.witnesses.push_back({Quadrant::S10, f.div(minus4, four)});
  }
  return pred;
}

/// Closed-form quadrant counts for u not in {0, 1, -1} and b != 0.
///
/// S00/S11 have at most one candidate each. S01 and S10 reduce to quadratics
/// whose discriminants are -4b^2(1-u^2)^2 (b^2 +- 2(1+u^2)); each root is
/// written as a square with R1 or R2 and is a solution exactly when two
/// character conditions hold for its sign epsilon.
inline QuadrantPrediction predict_quadrants_general(const Field& f, const BinomialParams& params, Elem b) {
  detail::require_default_r(f, params);
  const Elem one = f.one(), u = params.u;
  if (u.idx == 0 || u == one || u == f.neg(one))
    throw std::invalid_argument("general predictor needs u not in {0, 1, -1}");
  if (b.idx == 0) throw std::invalid_argument("predictor needs b != 0");

  QuadrantPrediction pred;
  pred.b = b;
  const std::uint64_t r = params.r;
  const int sign_r = (r % 2 == 0) ? 1 : -1;
  const Elem two = f.from_int(2), four = f.from_int(4);
  const Elem up = f.add(one, u), um = f.sub(one, u);
  const Elem s = f.add(one, f.square(u));  // 1 + u^2, never 0 since chi(-1) = -1
  const Elem b2 = f.square(b);
  const Elem up2 = f.square(up), um2 = f.square(um);

  {
    const Elem plus = f.add(up2, b2), minus = f.sub(up2, b2), c = f.mul(two, f.mul(b, up));
    if (f.chi(plus) == f.chi(c) && f.chi(minus) == f.chi(c)) {
      pred.d[0] = 1;
      const Elem x = f.div(f.square(minus), f.mul(four, f.mul(b2, up2)));
      pred.witnesses.push_back({Quadrant::S00, x});
    }
  }
  {
    const Elem plus = f.add(um2, b2), minus = f.sub(um2, b2), c = f.mul(b, um);
    if (f.chi(plus) == -f.chi(c) && f.chi(minus) == -f.chi(c)) {
      pred.d[3] = 1;
      const Elem x = f.neg(f.div(f.square(plus), f.mul(four, f.mul(b2, um2))));
      pred.witnesses.push_back({Quadrant::S11, x});
    }
  }

  const Elem two_s_inv = f.inv(f.mul(two, s));
  auto candidates = [&](Elem R) { return R.idx == 0 ? std::vector<int>{1} : std::vector<int>{1, -1}; };
  auto signed_mul = [&](int eps, Elem v) { return eps > 0 ? v : f.neg(v); };

  const Elem disc1 = f.add(b2, f.mul(two, s));
  pred.R1 = f.pow(disc1, r);
  if (f.chi(disc1) != 1) {
    for (int eps : candidates(*pred.R1)) {
      const Elem P = f.mul(f.add(f.mul(b, up), signed_mul(eps, f.mul(um, *pred.R1))), two_s_inv);
      const Elem Q = f.mul(f.sub(f.mul(b, um), signed_mul(eps, f.mul(up, *pred.R1))), two_s_inv);
      if (f.chi(P) == -1 && f.chi(Q) == sign_r) {
        ++pred.d[1];
        pred.witnesses.push_back({Quadrant::S01, f.square(P)});
      }
    }
  }

  const Elem disc2 = f.sub(b2, f.mul(two, s));
  pred.R2 = f.pow(disc2, r);
  if (f.chi(disc2) != 1) {
    for (int eps : candidates(*pred.R2)) {
      const Elem P = f.mul(f.add(f.mul(b, up), signed_mul(eps, f.mul(um, *pred.R2))), two_s_inv);
      const Elem Q = f.mul(f.sub(f.mul(b, um), signed_mul(eps, f.mul(up, *pred.R2))), two_s_inv);
      if (f.chi(P) == 1 && f.chi(Q) == -sign_r) {
        ++pred.d[2];
        pred.witnesses.push_back({Quadrant::S10, f.neg(f.square(Q))});
      }
    }
  }
  return pred;
}

/// The two-solution criterion for S01 stated with R1:
/// chi(b^2+2(1+u^2)) = -1, chi(b(1-u) +- (1+u)R1) = chi(1+u^2) and
/// chi(b(1+u) +- (1-u)R1) = -chi(2(1+u^2)).
inline bool s01_has_two_solutions(const Field& f, const BinomialParams& params, Elem b) {
  const Elem one = f.one(), u = params.u, two = f.from_int(2);
  const Elem up = f.add(one, u), um = f.sub(one, u), s = f.add(one, f.square(u));
  const Elem disc = f.add(f.square(b), f.mul(two, s));
  if (f.chi(disc) != -1) return false;
  const Elem R = f.pow(disc, params.r);
  const int want1 = f.chi(s), want2 = -f.chi(f.mul(two, s));
  const Elem t1 = f.mul(b, um), t2 = f.mul(up, R), t3 = f.mul(b, up), t4 = f.mul(um, R);
  return f.chi(f.add(t1, t2)) == want1 && f.chi(f.sub(t1, t2)) == want1 &&
         f.chi(f.add(t3, t4)) == want2 && f.chi(f.sub(t3, t4)) == want2;
}

/// Same for S10 with R2: chi(b^2-2(1+u^2)) = -1,
/// chi(b(1-u) +- (1+u)R2) = -chi(1+u^2), chi(b(1+u) +- (1-u)R2) = chi(2(1+u^2)).
inline bool s10_has_two_solutions(const Field& f, const BinomialParams& params, Elem b) {
  const Elem one = f.one(), u = params.u, two = f.from_int(2);
  const Elem up = f.add(one, u), um = f.sub(one, u), s = f.add(one, f.square(u));
  const Elem disc = f.sub(f.square(b), f.mul(two, s));
  if (f.chi(disc) != -1) return false;
  const Elem R = f.pow(disc, params.r);
  const int want1 = -f.chi(s), want2 = f.chi(f.mul(two, s));
  const Elem t1 = f.mul(b, um), t2 = f.mul(up, R), t3 = f.mul(b, up), t4 = f.mul(um, R);
  return f.chi(f.add(t1, t2)) == want1 && f.chi(f.sub(t1, t2)) == want1 &&
         f.chi(f.add(t3, t4)) == want2 && f.chi(f.sub(t3, t4)) == want2;
}

/// F(x+1) - F(x) = b with x in the declared quadrant.
inline bool witness_holds(const FunctionTable& F, Elem b, const QuadrantWitness& w) {
  const Field& f = *F.field;
  const auto s = quadrant_of(f, w.x);
  return s && *s == w.quadrant && f.sub(F(f.succ(w.x)), F(w.x)) == b;
}

/// The b values hit by x = 0 and x = -1: 1 + u and (-1)^{r+1} (1 - u).
inline std::pair<Elem, Elem> boundary_values(const Field& f, const BinomialParams& params) {
  const Elem one = f.one();
  const Elem b0 = f.add(one, params.u);
  Elem bm1 = f.sub(one, params.u);
  if (params.r % 2 == 0) bm1 = f.neg(bm1);
  return {b0, bm1};
}

/// Differential spectrum of x^r (1 + chi(x)) with r = (q+1)/4:
///   q = 3 (mod 8): w_0 = (q-3)/4, w_1 = (3q-1)/4, w_{(q+1)/4} = 1
///   q = 7 (mod 8): w_0 = (q-3)/2, w_1 = (q+5)/4, w_2 = (q-3)/4, w_{(q+1)/4} = 1
/// Colliding indices (q = 3, 7) are merged additively.
inline DiffSpectrum predict_diff_spectrum_u1(const Field& f) {
  const std::uint64_t q = f.q();
  if (q % 4 != 3) throw std::domain_error("closed form needs q = 3 (mod 4)");
  DiffSpectrum s;
  auto put = [&](std::uint64_t i, std::uint64_t w) {
    if (w) s.counts[i] += w;
  };
  if (q % 8 == 3) {
    put(0, (q - 3) / 4);
    put(1, (3 * q - 1) / 4);
  } else {
    put(0, (q - 3) / 2);
    put(1, (q + 5) / 4);
    put(2, (q - 3) / 4);
  }
  put((q + 1) / 4, 1);
  s.uniformity = s.counts.rbegin()->first;
  return s;
}

}  // namespace fqdiff
