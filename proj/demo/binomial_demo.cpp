// Walks through x^r(1 + chi(x)) over a few small fields: spectra, Gamma and
// the quadrant counts behind them.

#include <cstdio>

#include "fqdiff/boom.hpp"
#include "fqdiff/charsum.hpp"
#include "fqdiff/diff.hpp"

using namespace fqdiff;

static void print_counts(const char* sym, const SpectrumCounts& c) {
  for (auto [i, v] : c) std::printf(" %s_%llu=%llu", sym, (unsigned long long)i, (unsigned long long)v);
  std::printf("\n");
}

int main() {
  for (auto [p, n] : {std::pair{7u, 1u}, {3u, 3u}, {23u, 1u}, {7u, 3u}}) {
    const auto f = make_field(p, n);
    const auto F = build_binomial(f, default_params(*f, 1));
    std::printf("F_%llu  r=%llu  %s\n", (unsigned long long)f->q(), (unsigned long long)*f->r(), F.label.c_str());

    const auto ds = diff_spectrum(F);
    std::printf("  DS:");
    print_counts("w", ds.counts);
    std::printf("  delta=%llu  %s\n", (unsigned long long)ds.uniformity,
                to_string(classify_locality(F, LocalityMode::Punctured)).c_str());

    const auto bs = boom_spectrum(F);
    std::printf("  BS:");
    print_counts("v", bs.counts);
    if (f->q() % 8 == 7) std::printf("  Gamma=%lld\n", (long long)gamma(*f));

    // quadrant split of F(x+1) - F(x) = b for the first few b
    for (std::uint32_t b = 1; b <= 3; ++b) {
      const auto qc = quadrant_counts(f, default_params(*f, 1), Elem{b});
      std::printf("  b=#%u: S00=%llu S01=%llu S10=%llu S11=%llu%s%s\n", b, (unsigned long long)qc.at(Quadrant::S00),
                  (unsigned long long)qc.at(Quadrant::S01), (unsigned long long)qc.at(Quadrant::S10),
                  (unsigned long long)qc.at(Quadrant::S11), qc.sol_at_0 ? " x=0" : "", qc.sol_at_neg1 ? " x=-1" : "");
    }
  }
}
