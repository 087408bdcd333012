#pragma once

// Theorem harness: compares brute-force results with the closed forms for
// one field at a time, and scans ranges of prime powers.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <exception>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fqdiff/boom.hpp"
#include "fqdiff/charsum.hpp"
#include "fqdiff/diff.hpp"
#include "fqdiff/field.hpp"
#include "fqdiff/funcs.hpp"

namespace fqdiff {

enum class Theorem { DS, BS, BU3, DU, SpecialU, PP, Identities, Lemma5, Quadrants };
enum class ResidueFilter { Mod4Is3, Mod8Is3, Mod8Is7 };
enum class UPolicy { Default, U1, AllU, SpecialU };

inline std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::DS: return "DS";
    case Theorem::BS: return "BS";
    case Theorem::BU3: return "BU3";
    case Theorem::DU: return "DU";
    case Theorem::SpecialU: return "SPECIAL_U";
    case Theorem::PP: return "PP";
    case Theorem::Identities: return "IDENTITIES";
    case Theorem::Lemma5: return "LEMMA5";
    case Theorem::Quadrants: return "QUADRANTS";
  }
  return "?";
}

inline std::optional<Theorem> parse_theorem(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  std::replace(s.begin(), s.end(), '-', '_');
  for (Theorem t : {Theorem::DS, Theorem::BS, Theorem::BU3, Theorem::DU, Theorem::SpecialU, Theorem::PP,
                    Theorem::Identities, Theorem::Lemma5, Theorem::Quadrants})
    if (to_string(t) == s) return t;
  return std::nullopt;
}

inline std::string to_string(ResidueFilter r) {
  switch (r) {
    case ResidueFilter::Mod4Is3: return "3mod4";
    case ResidueFilter::Mod8Is3: return "3mod8";
    case ResidueFilter::Mod8Is7: return "7mod8";
  }
  return "?";
}

inline std::optional<ResidueFilter> parse_filter(const std::string& s) {
  for (auto r : {ResidueFilter::Mod4Is3, ResidueFilter::Mod8Is3, ResidueFilter::Mod8Is7})
    if (to_string(r) == s) return r;
  return std::nullopt;
}

inline std::optional<UPolicy> parse_u_policy(const std::string& s) {
  if (s == "default") return UPolicy::Default;
  if (s == "u1" || s == "1") return UPolicy::U1;
  if (s == "all") return UPolicy::AllU;
  if (s == "special") return UPolicy::SpecialU;
  return std::nullopt;
}

inline bool passes(ResidueFilter r, std::uint64_t q) {
  switch (r) {
    case ResidueFilter::Mod4Is3: return q % 4 == 3;
    case ResidueFilter::Mod8Is3: return q % 8 == 3;
    case ResidueFilter::Mod8Is7: return q % 8 == 7;
  }
  return false;
}

/// Residue class a theorem is stated for.
inline ResidueFilter natural_filter(Theorem t) {
  switch (t) {
    case Theorem::BS: return ResidueFilter::Mod8Is7;
    case Theorem::BU3:
    case Theorem::SpecialU: return ResidueFilter::Mod8Is3;
    default: return ResidueFilter::Mod4Is3;
  }
}

inline bool theorem_applies(Theorem t, std::uint64_t p, std::uint64_t q) {
  if (!passes(natural_filter(t), q)) return false;
  // F_3 has no u outside {0, 1, -1}
  if ((t == Theorem::DU || t == Theorem::PP) && q == 3) return false;
  return t != Theorem::SpecialU || p > 3;
}

struct VerificationReport {
  std::uint64_t q = 0, p = 0, n = 0;
  Theorem theorem = Theorem::DS;
  bool match = true;
  SpectrumCounts computed;   // spectrum, or a histogram for the all-u theorems
  SpectrumCounts predicted;  // empty when there is no closed form to compare
  std::optional<std::int64_t> gamma;
  std::optional<std::uint64_t> uniformity;
  std::uint64_t checks = 0;
  std::vector<std::string> failures;  // proved statements that did not hold
  std::vector<std::string> info;      // conjectural observations, scope notes
  double elapsed_ms = 0;

  void fail(std::string msg) {
    match = false;
    failures.push_back(std::move(msg));
  }
  void expect(bool ok, const std::string& msg) {
    ++checks;
    if (!ok) fail(msg);
  }
};

struct ScanConfig {
  std::uint64_t q_max = 200;
  std::optional<ResidueFilter> filter;  // defaults to the theorem's class
  Theorem theorem = Theorem::DS;
  UPolicy u_policy = UPolicy::Default;
  unsigned jobs = 1;
  std::uint64_t full_bct_cap = 1024;  // largest q with a full BCT pass
  std::uint64_t seed = 20240611;
  bool allow_large = false;  // lift the 1024 cap on full_bct_cap
};

/// All odd prime powers q = p^n <= limit in the residue class, ascending.
struct PrimePower {
  std::uint64_t p, n, q;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

inline std::vector<PrimePower> enumerate_prime_powers(std::uint64_t limit, ResidueFilter filter) {
  if (limit < 3) throw std::invalid_argument("limit must be at least 3");
  std::vector<PrimePower> out;
  for (std::uint64_t p = 3; p <= limit; p += 2) {
    if (!detail::is_prime(p)) continue;
    std::uint64_t q = p;
    for (std::uint64_t n = 1; q <= limit; ++n) {
      if (passes(filter, q)) out.push_back({p, n, q});
      if (q > limit / p) break;
      q *= p;
    }
  }
  std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.q < b.q; });
  return out;
}

namespace detail {

inline std::string spectrum_text(const SpectrumCounts& c) {
  std::string s;
  for (auto [i, v] : c) {
    if (!s.empty()) s += ";";
    s += std::to_string(i) + ":" + std::to_string(v);
  }
  return s;
}

inline std::vector<Elem> nontrivial_u(const Field& f) {
  std::vector<Elem> out;
  const Elem one = f.one(), minus_one = f.neg(one);
  for (std::uint64_t i = 1; i < f.q(); ++i) {
    const Elem u{static_cast<std::uint32_t>(i)};
    if (u != one && u != minus_one) out.push_back(u);
  }
  return out;
}

/// u = +-(1 - 2^{r+1}) / 3.
inline std::vector<Elem> special_u(const Field& f) {
  const Elem base = f.div(f.sub(f.one(), f.pow(f.from_int(2), *f.r() + 1)), f.from_int(3));
  return {base, f.neg(base)};
}

inline std::string u_name(Elem u) { return "u=#" + std::to_string(u.idx); }

inline bool du4_condition(const Field& f, Elem u, std::uint64_t r) {
  const int sign = (r % 2 == 0) ? 1 : -1;
  return f.chi(f.add(f.one(), u)) == sign * f.chi(f.sub(f.one(), u));
}

inline void verify_ds(const FieldPtr& f, VerificationReport& rep) {
  const auto F = build_binomial(f, default_params(*f, 1));
  const auto ds = diff_spectrum(F);
  const auto want = predict_diff_spectrum_u1(*f);
  rep.computed = ds.counts;
  rep.predicted = want.counts;
  rep.uniformity = ds.uniformity;
  rep.expect(ds == want, "differential spectrum differs from the closed form");
  const auto loc = classify_locality(F, LocalityMode::Punctured);
  const auto loc_want = f->q() % 8 == 3 ? Locality::LocallyPN : Locality::LocallyAPN;
  rep.expect(loc == loc_want, "locality is " + to_string(loc) + ", expected " + to_string(loc_want));
  rep.info.push_back("locality (punctured): " + to_string(loc));
  rep.info.push_back("locality (strict): " + to_string(classify_locality(F, LocalityMode::Strict)));
}

inline void verify_bs(const FieldPtr& f, const ScanConfig& cfg, VerificationReport& rep) {
  const auto F = build_binomial(f, default_params(*f, 1));
  const std::uint64_t q = f->q();
  const auto row = bct_row(F, f->one());
  const auto bs = boom_spectrum_from_row(row);
  const auto want = predict_boom_spectrum(*f);
  const auto g = gamma(*f);
  rep.computed = bs.counts;
  rep.predicted = want.counts;
  rep.gamma = g;
  rep.expect(bs == want, "boomerang spectrum differs from the closed form");
  rep.expect(gamma_decomposed(*f) == g, "Gamma routes disagree");
  rep.expect(gamma_within_bound(g, q), "|Gamma| exceeds 7 sqrt(q) + 1");
  if (q > 790) rep.expect(bs.counts.count(2) && bs.counts.at(2) > 0, "nu_2 = 0 although q > 790");

  std::uint64_t beta_f = bs.uniformity;
  if (q <= cfg.full_bct_cap) {
    beta_f = boomerang_uniformity(F);
  } else {
    rep.info.push_back("boomerang uniformity taken from row 1 (q above full-BCT cap)");
  }
  rep.uniformity = beta_f;
  const std::uint64_t beta_want = (q == 7 || q == 31) ? 1 : 2;
  rep.expect(beta_f == beta_want,
             "boomerang uniformity " + std::to_string(beta_f) + ", expected " + std::to_string(beta_want));
}

inline void verify_bu3(const FieldPtr& f, const ScanConfig& cfg, VerificationReport& rep) {
  const bool full = f->q() <= cfg.full_bct_cap;
  if (!full) rep.info.push_back("row 1 only (q above full-BCT cap)");
  std::uint64_t worst = 0;
  for (std::int64_t uv : {1, -1}) {
    const auto F = build_binomial(f, default_params(*f, uv));
    const std::uint64_t last_a = full ? f->q() - 1 : 1;
    for (std::uint64_t a = 1; a <= last_a; ++a) {
      const auto row = bct_row(F, Elem{static_cast<std::uint32_t>(a)});
      for (std::uint64_t b = 1; b < row.size(); ++b) worst = std::max(worst, row[b]);
      if (a == 1) {
        const auto bs = boom_spectrum_from_row(row);
        if (uv == 1) rep.computed = bs.counts;
      }
    }
    rep.expect(worst == 0, "nonzero BCT entry for u=" + std::to_string(uv));
  }
  rep.predicted = {{0, f->q() - 1}};
  rep.uniformity = worst;
}

inline void verify_du(const FieldPtr& f, VerificationReport& rep) {
  const std::uint64_t q = f->q(), r = *f->r();
  const bool q3mod8 = q % 8 == 3;
  const auto special = q3mod8 && f->p() > 3 ? special_u(*f) : std::vector<Elem>{};
  std::uint64_t worst = 0;
  for (Elem u : nontrivial_u(*f)) {
    const BinomialParams params{r, u};
    const auto F = build_binomial(f, params);
    const std::uint64_t delta_f = diff_spectrum(F).uniformity;
    ++rep.computed[delta_f];
    worst = std::max(worst, delta_f);
    const bool cond = du4_condition(*f, u, r);
    const bool perm = is_permutation(F);
    rep.expect(perm == predict_permutation(*f, params), "permutation criterion disagrees at " + u_name(u));
    if (cond) {
      rep.expect(delta_f <= 4, "delta " + std::to_string(delta_f) + " > 4 at " + u_name(u));
      rep.expect(!perm, "permutation despite chi(1+u) = (-1)^r chi(1-u) at " + u_name(u));
    } else {
      rep.expect(delta_f <= 5, "delta " + std::to_string(delta_f) + " > 5 at " + u_name(u));
      rep.expect(perm, "not a permutation at " + u_name(u));
    }
    const bool is_special = std::find(special.begin(), special.end(), u) != special.end();
    if ((cond || is_special) && q > 523 && delta_f != 4)
      rep.info.push_back("observed delta " + std::to_string(delta_f) + " (conjectured 4) at " + u_name(u));
    if (!cond && !is_special && q > 4007 && delta_f != 5)
      rep.info.push_back("observed delta " + std::to_string(delta_f) + " (conjectured 5) at " + u_name(u));
  }
  rep.uniformity = worst;
}

inline void verify_special_u(const FieldPtr& f, VerificationReport& rep) {
  const std::uint64_t r = *f->r();
  std::uint64_t worst = 0;
  for (Elem u : special_u(*f)) {
    const auto F = build_binomial(f, {r, u});
    const std::uint64_t delta_f = diff_spectrum(F).uniformity;
    ++rep.computed[delta_f];
    worst = std::max(worst, delta_f);
    rep.expect(delta_f <= 4, "delta " + std::to_string(delta_f) + " > 4 at " + u_name(u));
    rep.expect(is_permutation(F), "not a permutation at " + u_name(u));
  }
  rep.uniformity = worst;
}

inline void verify_pp(const FieldPtr& f, VerificationReport& rep) {
  const std::uint64_t r = *f->r();
  for (Elem u : nontrivial_u(*f)) {
    const BinomialParams params{r, u};
    const bool perm = is_permutation(build_binomial(f, params));
    const bool pred = predict_permutation(*f, params);
    ++rep.computed[perm ? 1 : 0];
    ++rep.predicted[pred ? 1 : 0];
    rep.expect(perm == pred, "permutation criterion disagrees at " + u_name(u));
  }
}

inline void verify_identities(const FieldPtr& f, const ScanConfig& cfg, VerificationReport& rep) {
  for (const auto& id : identity_suite(*f, cfg.seed)) {
    if (!id.applicable) continue;
    ++rep.computed[id.match ? 1 : 0];
    rep.expect(id.match, id.name + ": " + std::to_string(id.computed) + " != " + std::to_string(id.expected));
  }
  if (f->q() % 8 == 7) {
    const auto g = gamma(*f);
    rep.gamma = g;
    rep.expect(gamma_within_bound(g, f->q()), "|Gamma| exceeds 7 sqrt(q) + 1");
  }
}

inline std::vector<Elem> lemma5_u_values(const Field& f, UPolicy policy, std::uint64_t seed) {
  const Elem one = f.one(), minus_one = f.neg(one);
  switch (policy) {
    case UPolicy::AllU: {
      std::vector<Elem> out;
      for (std::uint64_t i = 1; i < f.q(); ++i) out.push_back(Elem{static_cast<std::uint32_t>(i)});
      return out;
    }
    case UPolicy::U1: return {one};
    case UPolicy::SpecialU: return special_u(f);
    case UPolicy::Default: break;
  }
  std::vector<Elem> out{one, minus_one};
  std::mt19937_64 rng(seed ^ (f.q() * 0x9e3779b97f4a7c15ULL));
  std::uniform_int_distribution<std::uint64_t> pick(1, f.q() - 1);
  for (int i = 0; i < 8; ++i) out.push_back(Elem{static_cast<std::uint32_t>(pick(rng))});
  return out;
}

inline void verify_lemma5(const FieldPtr& f, const ScanConfig& cfg, VerificationReport& rep) {
  const std::uint64_t r = *f->r();
  for (Elem u : lemma5_u_values(*f, cfg.u_policy, cfg.seed)) {
    const BinomialParams params{r, u};
    const auto F = build_binomial(f, params);
    const auto ddt1 = ddt_row(F, f->one());
    const auto bct1 = bct_row(F, f->one());
    bool ddt_ok = true, bct_ok = true;
    for (std::uint64_t a = 1; a < f->q(); ++a) {
      const Elem ea{static_cast<std::uint32_t>(a)};
      ddt_ok = ddt_ok && verify_row_reduction(F, params, ea, ddt1);
      bct_ok = bct_ok && verify_boom_row_reduction(F, params, ea, bct1);
    }
    ++rep.computed[(ddt_ok && bct_ok) ? 1 : 0];
    rep.expect(ddt_ok, "DDT row reduction fails at " + u_name(u));
    rep.expect(bct_ok, "BCT row reduction fails at " + u_name(u));
  }
}

inline void compare_quadrants(const FunctionTable& F, const QuadrantCounts& got, const QuadrantPrediction& pred,
                              const std::string& where, VerificationReport& rep) {
  rep.expect(got.d == pred.d, "quadrant counts differ from prediction at " + where);
  for (const auto& w : pred.witnesses)
    rep.expect(witness_holds(F, got.b, w), "witness fails in " + to_string(w.quadrant) + " at " + where);
}

inline void verify_quadrants(const FieldPtr& f, const ScanConfig& cfg, VerificationReport& rep) {
  const std::uint64_t q = f->q(), r = *f->r();
  std::vector<Elem> us;
  if (cfg.u_policy == UPolicy::Default || cfg.u_policy == UPolicy::U1) {
    const auto F = build_binomial(f, default_params(*f, 1));
    const auto all = quadrant_counts_all(F);
    for (std::uint64_t b = 1; b < q; ++b) {
      const auto pred = predict_quadrants_u1(*f, all[b].b);
      ++rep.computed[pred.sum()];
      compare_quadrants(F, all[b], pred, "u=1, b=#" + std::to_string(b), rep);
    }
    if (q % 8 == 7) {
      const auto pairs = boom_quadrant_counts_all(F);
      for (std::uint64_t b = 1; b < q; ++b) {
        const auto& bc = pairs[b];
        const auto pred = predict_boom_pair_counts(*f, bc.b);
        const std::uint64_t c01 = bc.at(0, 0, 0, 1) + bc.at(0, 1, 0, 0);
        const std::uint64_t c10 = bc.at(0, 0, 1, 0) + bc.at(1, 0, 0, 0);
        rep.expect(c01 == static_cast<std::uint64_t>(pred.c01) && c10 == static_cast<std::uint64_t>(pred.c10),
                   "boomerang pair counts differ at b=#" + std::to_string(b));
      }
    }
    if (cfg.u_policy == UPolicy::U1) return;
    us = nontrivial_u(*f);
  } else if (cfg.u_policy == UPolicy::AllU) {
    us = nontrivial_u(*f);
  } else {
    if (q % 8 != 3 || f->p() <= 3) return;
    us = special_u(*f);
  }
  for (Elem u : us) {
    const BinomialParams params{r, u};
    const auto F = build_binomial(f, params);
    const auto all = quadrant_counts_all(F);
    for (std::uint64_t b = 1; b < q; ++b) {
      const auto pred = predict_quadrants_general(*f, params, all[b].b);
      const std::string where = u_name(u) + ", b=#" + std::to_string(b);
      compare_quadrants(F, all[b], pred, where, rep);
      rep.expect(s01_has_two_solutions(*f, params, all[b].b) == (all[b].at(Quadrant::S01) == 2),
                 "two-solution criterion for S01 fails at " + where);
      rep.expect(s10_has_two_solutions(*f, params, all[b].b) == (all[b].at(Quadrant::S10) == 2),
                 "two-solution criterion for S10 fails at " + where);
    }
  }
}

}  // namespace detail

/// Verifies one theorem on one field. Throws std::domain_error when q is
/// outside the theorem's residue class.
inline VerificationReport verify_field(const FieldPtr& f, Theorem theorem, const ScanConfig& cfg = {}) {
  if (!theorem_applies(theorem, f->p(), f->q()))
    throw std::domain_error(to_string(theorem) + " does not apply to q = " + std::to_string(f->q()));
  VerificationReport rep;
  rep.q = f->q();
  rep.p = f->p();
  rep.n = f->n();
  rep.theorem = theorem;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (theorem) {
      case Theorem::DS: detail::verify_ds(f, rep); break;
      case Theorem::BS: detail::verify_bs(f, cfg, rep); break;
      case Theorem::BU3: detail::verify_bu3(f, cfg, rep); break;
      case Theorem::DU: detail::verify_du(f, rep); break;
      case Theorem::SpecialU: detail::verify_special_u(f, rep); break;
      case Theorem::PP: detail::verify_pp(f, rep); break;
      case Theorem::Identities: detail::verify_identities(f, cfg, rep); break;
      case Theorem::Lemma5: detail::verify_lemma5(f, cfg, rep); break;
      case Theorem::Quadrants: detail::verify_quadrants(f, cfg, rep); break;
    }
  } catch (const std::logic_error& e) {
    // spectrum identity violations and similar internal checks
    rep.fail(std::string("internal check: ") + e.what());
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline VerificationReport verify_field(std::uint64_t p, std::uint64_t n, Theorem theorem, const ScanConfig& cfg = {}) {
  return verify_field(make_field(p, n), theorem, cfg);
}

/// Runs verify_field over every applicable q <= cfg.q_max. Results are in
/// ascending q whatever the completion order; failures are recorded in the
/// reports, never thrown.
inline std::vector<VerificationReport> scan(const ScanConfig& cfg) {
  if (cfg.q_max > kMaxFieldOrder) throw std::invalid_argument("q_max exceeds 2^20");
  if (cfg.full_bct_cap > 1024 && !cfg.allow_large) throw std::invalid_argument("full-BCT cap exceeds 1024");
  const ResidueFilter filter = cfg.filter.value_or(natural_filter(cfg.theorem));
  std::vector<PrimePower> fields;
  for (const auto& pp : enumerate_prime_powers(std::max<std::uint64_t>(cfg.q_max, 3), filter))
    if (pp.q <= cfg.q_max && theorem_applies(cfg.theorem, pp.p, pp.q)) fields.push_back(pp);

  std::vector<VerificationReport> out(fields.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  // largest fields first so the tail of the scan stays balanced
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= fields.size() || failed) return;
      const std::size_t i = fields.size() - 1 - k;
      try {
        out[i] = verify_field(make_field(fields[i].p, fields[i].n), cfg.theorem, cfg);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(fields.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

inline bool all_match(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const VerificationReport& r) { return r.match; });
}

}  // namespace fqdiff
