// fqdiff: differential and boomerang analysis of x^r(1 + u chi(x)) over F_q.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "fqdiff/cli.hpp"

using namespace fqdiff;

namespace {

int emit(const OutputDoc& doc, Format format, const std::string& out) {
  const std::string text = render(doc, format);
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    std::ofstream os(out, std::ios::binary);
    if (!os) {
      std::cerr << "fqdiff: cannot open " << out << "\n";
      return 2;
    }
    os << text;
  }
  return doc.exit_status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential and boomerang properties of x^r(1+u*chi(x)) over odd finite fields"};
  app.require_subcommand(1);

  std::string format_name = "markdown", out;
  app.add_option("--format", format_name, "json, csv or markdown")->check(CLI::IsMember({"json", "csv", "markdown", "md"}));
  app.add_option("--out", out, "output file (default stdout)");

  std::uint64_t p = 0, n = 1;

  auto* info = app.add_subcommand("field-info", "modulus, generator, r and quadrant sizes");
  info->add_option("p", p, "characteristic")->required();
  info->add_option("n", n, "extension degree");

  AnalyzeOptions an;
  std::uint64_t r_opt = 0;
  auto* analyze = app.add_subcommand("analyze", "spectra, uniformities and quadrant counts of one function");
  analyze->add_option("p", an.p, "characteristic")->required();
  analyze->add_option("n", an.n, "extension degree");
  analyze->add_option("--r", r_opt, "exponent (default (q+1)/4)");
  analyze->add_option("--u", an.u, "u as an integer or #index");
  analyze->add_flag("--diff", an.diff, "differential spectrum and uniformity");
  analyze->add_flag("--boom", an.boom, "boomerang spectrum and uniformity");
  analyze->add_flag("--quadrants", an.quadrants, "quadrant counts of F(x+1)-F(x)=b");
  analyze->add_option("--b", an.b_values, "b values for --quadrants (default all b != 0)");
  analyze->add_option("--full-cap", an.full_cap, "largest q with full DDT/BCT uniformity passes");

  ScanConfig cfg;
  cfg.jobs = default_jobs();
  std::string theorem = "ds", filter, u_policy = "default";
  bool long_run = false;
  auto* scan_cmd = app.add_subcommand("scan", "verify a theorem over a range of prime powers");
  auto* qmax_opt = scan_cmd->add_option("--q-max", cfg.q_max, "largest q (default 200)");
  scan_cmd->add_option("--filter", filter, "3mod4, 3mod8 or 7mod8 (default: the theorem's class)")
      ->check(CLI::IsMember({"3mod4", "3mod8", "7mod8"}));
  scan_cmd->add_option("--theorem", theorem, "ds, bs, bu3, du, special_u, pp, identities, lemma5, quadrants");
  scan_cmd->add_option("--u-policy", u_policy, "default, u1, all or special")
      ->check(CLI::IsMember({"default", "u1", "all", "special"}));
  scan_cmd->add_option("--jobs", cfg.jobs, "worker threads (default FQDIFF_JOBS or core count)");
  scan_cmd->add_option("--full-bct-cap", cfg.full_bct_cap, "largest q with a full BCT pass (<= 1024)");
  scan_cmd->add_option("--seed", cfg.seed, "seed for sampled parameters");
  scan_cmd->add_flag("--long-run", long_run, "extend the default range to q <= 100000");

  CharsumOptions cs;
  std::string poly;
  std::uint64_t roots = 0;
  auto* charsums = app.add_subcommand("charsums", "quadratic character sums");
  charsums->add_option("p", cs.p, "characteristic")->required();
  charsums->add_option("n", cs.n, "extension degree");
  charsums->add_flag("--identity-suite", cs.identity_suite, "evaluate the identity suite");
  charsums->add_flag("--gamma", cs.gamma, "Gamma by both routes");
  auto* poly_opt = charsums->add_option("--poly", poly, "coefficients, constant first, comma-separated");
  auto* roots_opt = charsums->add_option("--roots", roots, "distinct roots of --poly, enables the Weil check");
  charsums->add_option("--seed", cs.seed, "seed for sampled identity parameters");

  CLI11_PARSE(app, argc, argv);

  const Format format = *parse_format(format_name);
  try {
    if (*info) return emit(cmd_field_info(p, n), format, out);
    if (*analyze) {
      if (r_opt) an.r = r_opt;
      return emit(cmd_analyze(an), format, out);
    }
    if (*scan_cmd) {
      const auto t = parse_theorem(theorem);
      if (!t) throw std::invalid_argument("unknown theorem: " + theorem);
      cfg.theorem = *t;
      if (!filter.empty()) cfg.filter = parse_filter(filter);
      cfg.u_policy = *parse_u_policy(u_policy);
      if (long_run && qmax_opt->count() == 0) cfg.q_max = kLongRunQMax;
      return emit(cmd_scan(cfg), format, out);
    }
    if (*charsums) {
      if (poly_opt->count()) cs.poly = poly;
      if (roots_opt->count()) cs.roots = roots;
      if (!cs.identity_suite && !cs.gamma && !cs.poly) throw std::invalid_argument("nothing to compute");
      return emit(cmd_charsums(cs), format, out);
    }
  } catch (const std::exception& e) {
    std::cerr << "fqdiff: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
