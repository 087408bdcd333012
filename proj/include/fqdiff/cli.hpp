#pragma once

// Command implementations behind tools/fqdiff. Each returns an OutputDoc;
// argument parsing lives in the tool itself.

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fqdiff/boom.hpp"
#include "fqdiff/charsum.hpp"
#include "fqdiff/diff.hpp"
#include "fqdiff/field.hpp"
#include "fqdiff/funcs.hpp"
#include "fqdiff/output.hpp"
#include "fqdiff/verify.hpp"

namespace fqdiff {

inline constexpr std::uint64_t kDefaultSeed = 20240611;
inline constexpr std::uint64_t kLongRunQMax = 100000;

/// Jobs from FQDIFF_JOBS, else the number of logical cores.
inline unsigned default_jobs() {
  if (const char* env = std::getenv("FQDIFF_JOBS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// "5" and "-1" are integers mapped into the prime subfield; "#12" is a
/// canonical index.
inline Elem parse_element(const Field& f, const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty field element");
  std::size_t used = 0;
  if (s[0] == '#') {
    const auto v = std::stoull(s.substr(1), &used);
    if (used + 1 != s.size()) throw std::invalid_argument("bad element index: " + s);
    return f.element(v);
  }
  const auto v = std::stoll(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad element: " + s);
  return f.from_int(v);
}

/// Comma-separated coefficients, constant first. Over prime fields values
/// are reduced mod p; over extensions non-negative values are canonical
/// indices and negative values are taken in the prime subfield.
inline PolySpec parse_poly(const Field& f, const std::string& text) {
  std::vector<Elem> coeffs;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t"), e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty coefficient in polynomial");
    tok = tok.substr(b, e - b + 1);
    std::size_t used = 0;
    const auto v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("bad coefficient: " + tok);
    coeffs.push_back(f.n() == 1 || v < 0 ? f.from_int(v) : f.element(static_cast<std::uint64_t>(v)));
  }
  if (coeffs.empty()) throw std::invalid_argument("polynomial needs at least one coefficient");
  return PolySpec(std::move(coeffs));
}

namespace detail {

inline std::string join_u32(const std::vector<std::uint32_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline Json spectrum_json(const SpectrumCounts& c) {
  Json j = Json::object();
  for (auto [i, v] : c) j[std::to_string(i)] = v;
  return j;
}

// {w_0 = 2, w_1 = 3} in the layout of the published tables
inline std::string spectrum_braces(const SpectrumCounts& c, const std::string& sym) {
  std::string s = "{";
  bool first = true;
  for (auto [i, v] : c) {
    s += (first ? "" : ", ") + sym + "_" + std::to_string(i) + " = " + std::to_string(v);
    first = false;
  }
  return s + "}";
}

inline Json kv(const std::string& item, Json value) {
  Json row;
  row["item"] = item;
  row["value"] = std::move(value);
  return row;
}

}  // namespace detail

inline OutputDoc cmd_field_info(std::uint64_t p, std::uint64_t n) {
  const auto f = make_field(p, n);
  OutputDoc doc;
  doc.kind = "field-info";
  doc.columns = {"p", "n", "q", "modulus", "r", "generator", "S00", "S01", "S10", "S11"};
  Json row;
  row["p"] = p;
  row["n"] = n;
  row["q"] = f->q();
  std::string mod;
  for (std::size_t i = 0; i < f->modulus().size(); ++i) mod += (i ? "," : "") + std::to_string(f->modulus()[i]);
  row["modulus"] = mod;
  row["r"] = f->r() ? Json(*f->r()) : Json(nullptr);
  row["generator"] = "#" + std::to_string(f->generator().idx) + " (" + detail::join_u32(f->coeffs(f->generator())) + ")";
  const auto sizes = quadrant_set_sizes(*f);
  const char* names[] = {"S00", "S01", "S10", "S11"};
  for (int i = 0; i < 4; ++i) row[names[i]] = sizes[i];
  doc.rows.push_back(row);
  return doc;
}

struct AnalyzeOptions {
  std::uint64_t p = 0, n = 1;
  std::optional<std::uint64_t> r;
  std::string u = "1";
  bool diff = false, boom = false, quadrants = false;
  std::vector<std::string> b_values;
  std::uint64_t full_cap = 1024;
};

inline OutputDoc cmd_analyze(const AnalyzeOptions& opt) {
  const auto f = make_field(opt.p, opt.n);
  const Elem u = parse_element(*f, opt.u);
  BinomialParams params;
  params.u = u;
  if (opt.r) {
    params.r = *opt.r;
  } else {
    if (!f->r()) throw std::domain_error("q = 1 (mod 4) needs an explicit --r");
    params.r = *f->r();
  }
  const auto F = build_binomial(f, params);
  OutputDoc doc;
  doc.kind = "analyze";
  doc.columns = {"item", "value"};
  doc.rows.push_back(detail::kv("function", F.label));
  doc.rows.push_back(detail::kv("q", f->q()));
  doc.rows.push_back(detail::kv("r", params.r));
  doc.rows.push_back(detail::kv("u", "#" + std::to_string(u.idx)));
  doc.rows.push_back(detail::kv("permutation", is_permutation(F)));
  const bool full = f->q() <= opt.full_cap;
  const bool reducible = f->r() && params.r == *f->r();

  if (opt.diff) {
    const auto ds = diff_spectrum(F);
    doc.rows.push_back(detail::kv("differential spectrum", detail::spectrum_braces(ds.counts, "w")));
    doc.rows.push_back(
        detail::kv("differential uniformity", full || !reducible ? differential_uniformity(F) : ds.uniformity));
    if (reducible) {
      doc.rows.push_back(detail::kv("locality (punctured)", to_string(classify_locality(F, LocalityMode::Punctured))));
      doc.rows.push_back(detail::kv("locality (strict)", to_string(classify_locality(F, LocalityMode::Strict))));
    }
  }
  if (opt.boom) {
    const auto bs = boom_spectrum(F);
    doc.rows.push_back(detail::kv("boomerang spectrum", detail::spectrum_braces(bs.counts, "v")));
    doc.rows.push_back(
        detail::kv("boomerang uniformity", full || !reducible ? boomerang_uniformity(F) : bs.uniformity));
  }
  if (opt.quadrants) {
    const auto all = quadrant_counts_all(F);
    std::vector<Elem> bs;
    if (opt.b_values.empty()) {
      for (std::uint64_t i = 1; i < f->q(); ++i) bs.push_back(Elem{static_cast<std::uint32_t>(i)});
    } else {
      for (const auto& s : opt.b_values) bs.push_back(parse_element(*f, s));
    }
    for (Elem b : bs) {
      const auto& qc = all[b.idx];
      Json v;
      v["S00"] = qc.at(Quadrant::S00);
      v["S01"] = qc.at(Quadrant::S01);
      v["S10"] = qc.at(Quadrant::S10);
      v["S11"] = qc.at(Quadrant::S11);
      v["sol_at_0"] = qc.sol_at_0;
      v["sol_at_neg1"] = qc.sol_at_neg1;
      doc.rows.push_back(detail::kv("quadrants b=#" + std::to_string(b.idx), v));
    }
  }
  return doc;
}

inline OutputDoc cmd_scan(const ScanConfig& cfg) {
  const auto reports = scan(cfg);
  OutputDoc doc;
  doc.kind = "scan";
  doc.columns = {"q", "p", "n", "theorem", "match", "spectrum", "gamma", "elapsed_ms"};
  const bool is_ds = cfg.theorem == Theorem::DS, is_bs = cfg.theorem == Theorem::BS;
  if (is_ds) {
    doc.md_header = {"q", "DS", "match"};
    doc.caption = "Differential spectrum of x^r(1+chi(x)), q <= " + std::to_string(cfg.q_max);
  } else if (is_bs) {
    doc.md_header = {"q", "Gamma", "BS", "match"};
    doc.caption = "Boomerang spectrum of x^r(1+chi(x)), q <= " + std::to_string(cfg.q_max);
  } else {
    doc.md_header = {"q", "theorem", "checks", "computed", "uniformity", "match", "notes"};
  }
  for (const auto& r : reports) {
    Json row;
    row["q"] = r.q;
    row["p"] = r.p;
    row["n"] = r.n;
    row["theorem"] = to_string(r.theorem);
    row["match"] = r.match;
    row["spectrum"] = detail::spectrum_text(r.computed);
    row["gamma"] = r.gamma ? Json(*r.gamma) : Json(nullptr);
    row["elapsed_ms"] = r.elapsed_ms;
    row["computed"] = detail::spectrum_json(r.computed);
    row["predicted"] = detail::spectrum_json(r.predicted);
    row["uniformity"] = r.uniformity ? Json(*r.uniformity) : Json(nullptr);
    row["checks"] = r.checks;
    row["failures"] = r.failures;
    row["info"] = r.info;
    doc.rows.push_back(row);

    const std::string ok = r.match ? "yes" : "NO";
    if (is_ds) {
      doc.md_rows.push_back({std::to_string(r.q), detail::spectrum_braces(r.computed, "w"), ok});
    } else if (is_bs) {
      doc.md_rows.push_back({std::to_string(r.q), r.gamma ? std::to_string(*r.gamma) : "",
                             detail::spectrum_braces(r.computed, "v"), ok});
    } else {
      std::string notes;
      for (const auto& s : r.failures) notes += (notes.empty() ? "" : "; ") + s;
      for (const auto& s : r.info) notes += (notes.empty() ? "" : "; ") + s;
      doc.md_rows.push_back({std::to_string(r.q), to_string(r.theorem), std::to_string(r.checks),
                             detail::spectrum_text(r.computed), r.uniformity ? std::to_string(*r.uniformity) : "",
                             ok, notes});
    }
  }
  doc.exit_status = all_match(reports) ? 0 : 1;
  return doc;
}

struct CharsumOptions {
  std::uint64_t p = 0, n = 1;
  bool identity_suite = false;
  bool gamma = false;
  std::optional<std::string> poly;
  std::optional<std::uint64_t> roots;  // distinct roots, enables the Weil check
  std::uint64_t seed = kDefaultSeed;
};

inline OutputDoc cmd_charsums(const CharsumOptions& opt) {
  const auto f = make_field(opt.p, opt.n);
  OutputDoc doc;
  doc.kind = "charsums";
  doc.columns = {"name", "q", "computed", "expected", "applicable", "match"};
  auto push = [&](const std::string& name, Json computed, Json expected, bool applicable, Json match) {
    Json row;
    row["name"] = name;
    row["q"] = f->q();
    row["computed"] = std::move(computed);
    row["expected"] = std::move(expected);
    row["applicable"] = applicable;
    row["match"] = std::move(match);
    doc.rows.push_back(row);
  };
  if (opt.poly) {
    const auto poly = parse_poly(*f, *opt.poly);
    const auto s = char_sum(*f, poly);
    push("sum chi(poly)", s, nullptr, true, nullptr);
    if (poly.degree() == 2) {
      const auto closed = quad_char_sum_closed(*f, poly.coeffs[2], poly.coeffs[1], poly.coeffs[0]);
      push("quadratic closed form", closed, s, true, closed == s);
      if (closed != s) doc.exit_status = 1;
    }
    if (opt.roots) push("weil bound (d=" + std::to_string(*opt.roots) + ")", weil_check(*f, poly, *opt.roots), true,
                        true, weil_check(*f, poly, *opt.roots));
  }
  if (opt.gamma) {
    if (f->q() % 8 != 7) throw std::domain_error("Gamma needs q = 7 (mod 8)");
    const auto g = gamma(*f), gd = gamma_decomposed(*f);
    push("gamma", g, gd, true, g == gd);
    push("gamma bound |G| <= 7 sqrt(q) + 1", gamma_within_bound(g, f->q()), true, true, gamma_within_bound(g, f->q()));
    if (g != gd) doc.exit_status = 1;
  }
  if (opt.identity_suite) {
    for (const auto& id : identity_suite(*f, opt.seed)) {
      push(id.name, id.applicable ? Json(id.computed) : Json(nullptr), id.applicable ? Json(id.expected) : Json(nullptr),
           id.applicable, id.applicable ? Json(id.match) : Json(nullptr));
      if (id.applicable && !id.match) doc.exit_status = 1;
    }
  }
  return doc;
}

}  // namespace fqdiff
