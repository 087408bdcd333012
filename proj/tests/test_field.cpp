#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fqdiff/field.hpp"

using namespace fqdiff;

namespace {

using IntPoly = std::vector<long>;

long eval_mod(const IntPoly& c, long x, long p) {
  long acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * x + *it) % p;
  return acc;
}

bool has_root(const IntPoly& c, long p) {
  for (long x = 0; x < p; ++x)
    if (eval_mod(c, x, p) == 0) return true;
  return false;
}

// First monic polynomial of degree n (n <= 3) without roots, walking
// coefficient tuples with c0 most significant.
IntPoly oracle_modulus(long p, int n) {
  IntPoly c(n + 1, 0);
  c[n] = 1;
  long total = 1;
  for (int i = 0; i < n; ++i) total *= p;
  for (long k = 0; k < total; ++k) {
    long v = k;
    for (int i = n - 1; i >= 0; --i) {
      c[i] = v % p;
      v /= p;
    }
    if (!has_root(c, p)) return c;
  }
  return {};
}

// Schoolbook product reduced by the monic modulus.
std::vector<std::uint32_t> oracle_mul(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                      const std::vector<std::uint64_t>& m, long p) {
  const std::size_t n = a.size();
  std::vector<long> prod(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + long(a[i]) * b[j]) % p;
  for (std::size_t d = 2 * n - 1; d >= n; --d) {
    const long lead = prod[d];
    if (!lead) continue;
    for (std::size_t i = 0; i <= n; ++i) prod[d - n + i] = ((prod[d - n + i] - lead * long(m[i])) % p + p) % p;
  }
  return {prod.begin(), prod.begin() + n};
}

long mobius(long v) {
  int k = 0;
  for (long d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      v /= d;
      if (v % d == 0) return 0;
      ++k;
    }
  }
  if (v > 1) ++k;
  return k % 2 ? -1 : 1;
}

long irreducible_count(long p, long n) {
  long s = 0;
  for (long d = 1; d <= n; ++d) {
    if (n % d) continue;
    long pw = 1;
    for (long i = 0; i < n / d; ++i) pw *= p;
    s += mobius(d) * pw;
  }
  return s / n;
}

}  // namespace

TEST(Field, ModulusOfF27) {
  const Field f(3, 3);
  EXPECT_EQ(f.modulus(), (std::vector<std::uint64_t>{1, 0, 2, 1}));
  EXPECT_EQ(f.q(), 27u);
  EXPECT_EQ(f.r(), 7u);
}

TEST(Field, PrimeFieldModulusPlaceholder) {
  const Field f(7, 1);
  EXPECT_EQ(f.modulus(), (std::vector<std::uint64_t>{0, 1}));
  EXPECT_EQ(f.r(), 2u);
}

TEST(Field, ModulusMatchesLexOracle) {
  for (long p : {3, 5, 7, 11, 13}) {
    for (int n : {2, 3}) {
      if ((n == 3 && p > 11)) continue;
      const Field f(p, n);
      const auto want = oracle_modulus(p, n);
      std::vector<std::uint64_t> got_vec(f.modulus().begin(), f.modulus().end());
      std::vector<std::uint64_t> want_vec(want.begin(), want.end());
      EXPECT_EQ(got_vec, want_vec) << "p=" << p << " n=" << n;
    }
  }
}

TEST(Field, IrreducibleCountMatchesGaussFormula) {
  for (long p : {3, 5}) {
    for (long n = 1; n <= (p == 3 ? 6 : 4); ++n) {
      long total = 1;
      for (long i = 0; i < n; ++i) total *= p;
      long count = 0;
      for (long k = 0; k < total; ++k) {
        detail::Poly c(n + 1, 0);
        c[n] = 1;
        long v = k;
        for (long i = 0; i < n; ++i) {
          c[i] = v % p;
          v /= p;
        }
        if (detail::is_irreducible(c, p)) ++count;
      }
      EXPECT_EQ(count, irreducible_count(p, n)) << "p=" << p << " n=" << n;
    }
  }
}

TEST(Field, RejectsBadParameters) {
  EXPECT_THROW(Field(4, 1), std::invalid_argument);
  EXPECT_THROW(Field(2, 3), std::invalid_argument);
  EXPECT_THROW(Field(7, 0), std::invalid_argument);
  EXPECT_THROW(Field(1048583, 1), std::invalid_argument);
  EXPECT_THROW(Field(3, 13), std::invalid_argument);
  EXPECT_NO_THROW(Field(3, 12));
}

TEST(Field, MultiplicationMatchesSchoolbookOracle) {
  for (auto [p, n] : {std::pair{3, 2}, {3, 3}, {5, 2}, {7, 2}, {3, 4}, {7, 3}}) {
    const Field f(p, n);
    for (std::uint64_t a = 0; a < f.q(); ++a) {
      for (std::uint64_t b = 0; b < f.q(); ++b) {
        const Elem ea{static_cast<std::uint32_t>(a)}, eb{static_cast<std::uint32_t>(b)};
        const auto want = oracle_mul(f.coeffs(ea), f.coeffs(eb), f.modulus(), p);
        ASSERT_EQ(f.mul(ea, eb), f.from_coeffs(want)) << "p=" << p << " n=" << n << " a=" << a << " b=" << b;
        ASSERT_EQ(f.mul_slow(ea, eb), f.mul(ea, eb));
      }
    }
  }
}

TEST(Field, PrimeFieldArithmeticIsModular) {
  const Field f(31, 1);
  for (std::uint32_t a = 0; a < 31; ++a) {
    for (std::uint32_t b = 0; b < 31; ++b) {
      EXPECT_EQ(f.add(Elem{a}, Elem{b}).idx, (a + b) % 31);
      EXPECT_EQ(f.sub(Elem{a}, Elem{b}).idx, (a + 31 - b) % 31);
      EXPECT_EQ(f.mul(Elem{a}, Elem{b}).idx, (a * b) % 31);
    }
  }
}

TEST(Field, AxiomsOnRandomTriples) {
  std::mt19937_64 rng(7);
  for (auto [p, n] : {std::pair{3, 5}, {5, 3}, {11, 2}, {1019, 1}, {3, 7}}) {
    const Field f(p, n);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(f.q() - 1));
    for (int t = 0; t < 2000; ++t) {
      const Elem a{pick(rng)}, b{pick(rng)}, c{pick(rng)};
      ASSERT_EQ(f.add(a, b), f.add(b, a));
      ASSERT_EQ(f.mul(a, b), f.mul(b, a));
      ASSERT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
      ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
      ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      ASSERT_EQ(f.add(a, f.neg(a)), f.zero());
      ASSERT_EQ(f.succ(a), f.add(a, f.one()));
      if (a.idx) { ASSERT_EQ(f.mul(a, f.inv(a)), f.one()); }
      if (b.idx) { ASSERT_EQ(f.mul(f.div(a, b), b), a); }
    }
  }
}

TEST(Field, PowerMatchesRepeatedProduct) {
  const Field f(3, 4);
  for (std::uint32_t x = 0; x < f.q(); ++x) {
    Elem acc = f.one();
    for (std::uint64_t e = 0; e < 100; ++e) {
      ASSERT_EQ(f.pow(Elem{x}, e), acc) << x << "^" << e;
      acc = f.mul_slow(acc, Elem{x});
    }
  }
}

TEST(Field, GeneratorIsSmallestPrimitiveElement) {
  for (auto [p, n] : {std::pair{7, 1}, {11, 1}, {3, 3}, {5, 2}, {7, 3}, {43, 1}}) {
    const Field f(p, n);
    std::uint32_t smallest = 0;
    for (std::uint32_t g = 1; g < f.q() && !smallest; ++g) {
      std::set<std::uint32_t> seen;
      Elem cur = f.one();
      for (std::uint64_t k = 0; k + 1 < f.q(); ++k) {
        seen.insert(cur.idx);
        cur = f.mul_slow(cur, Elem{g});
      }
      if (seen.size() == f.q() - 1) smallest = g;
    }
    EXPECT_EQ(f.generator().idx, smallest) << "p=" << p << " n=" << n;
  }
}

TEST(Field, CharacterMatchesEulerCriterion) {
  for (auto [p, n] : {std::pair{7, 1}, {3, 3}, {5, 2}, {23, 1}, {7, 3}, {3, 5}}) {
    const Field f(p, n);
    EXPECT_EQ(f.chi(f.zero()), 0);
    std::set<std::uint32_t> squares;
    for (std::uint32_t x = 1; x < f.q(); ++x) squares.insert(f.mul_slow(Elem{x}, Elem{x}).idx);
    for (std::uint32_t x = 1; x < f.q(); ++x) {
      Elem e = f.one();
      for (std::uint64_t k = 0; k < (f.q() - 1) / 2; ++k) e = f.mul_slow(e, Elem{x});
      const int euler = e == f.one() ? 1 : -1;
      ASSERT_EQ(f.chi(Elem{x}), euler);
      ASSERT_EQ(f.chi(Elem{x}) == 1, squares.count(x) == 1);
    }
  }
}

TEST(Field, MinusOneIsNonSquareWhenQIs3Mod4) {
  for (auto [p, n] : {std::pair{3, 1}, {7, 1}, {3, 3}, {11, 1}, {7, 3}, {3, 5}}) {
    const Field f(p, n);
    EXPECT_EQ(f.chi(f.neg(f.one())), -1);
  }
}

TEST(Field, SquareRootPicksSmallerIndex) {
  const Field f(3, 3);
  for (std::uint32_t x = 0; x < f.q(); ++x) {
    const auto root = f.sqrt_if_square(Elem{x});
    if (f.chi(Elem{x}) < 0) {
      EXPECT_FALSE(root);
      continue;
    }
    ASSERT_TRUE(root);
    EXPECT_EQ(f.square(*root), Elem{x});
    EXPECT_LE(root->idx, f.neg(*root).idx);
  }
  EXPECT_THROW(Field(5, 1).sqrt_if_square(Elem{1}), std::domain_error);
}

TEST(Field, CoefficientRoundTripAndValidation) {
  const Field f(5, 3);
  for (std::uint32_t x = 0; x < f.q(); ++x) EXPECT_EQ(f.from_coeffs(f.coeffs(Elem{x})), Elem{x});
  EXPECT_EQ(f.coeffs(Elem{7}), (std::vector<std::uint32_t>{2, 1, 0}));
  EXPECT_THROW(f.from_coeffs({5, 0, 0}), std::invalid_argument);
  EXPECT_THROW(f.from_coeffs({1, 0}), std::invalid_argument);
  EXPECT_THROW(f.element(125), std::out_of_range);
  EXPECT_EQ(f.from_int(-1), f.neg(f.one()));
  EXPECT_EQ(f.from_int(12), Elem{2});
  EXPECT_TRUE(f.in_prime_subfield(Elem{4}));
  EXPECT_FALSE(f.in_prime_subfield(Elem{5}));
}

TEST(Field, ZeroHasNoInverseOrLog) {
  const Field f(7, 1);
  EXPECT_THROW(f.inv(f.zero()), std::domain_error);
  EXPECT_THROW(f.log(f.zero()), std::domain_error);
}

TEST(Field, LogExpConsistency) {
  const Field f(7, 2);
  for (std::uint32_t x = 1; x < f.q(); ++x) EXPECT_EQ(f.pow(f.generator(), f.log(Elem{x})), Elem{x});
}

TEST(FieldElement, OperatorsAndFieldMixing) {
  const auto f = make_field(7, 1);
  const FieldElement a(f, Elem{3}), b(f, Elem{5});
  EXPECT_EQ((a + b).index(), 1u);
  EXPECT_EQ((a - b).index(), 5u);
  EXPECT_EQ((a * b).index(), 1u);
  EXPECT_EQ((a / b).index(), 2u);
  EXPECT_EQ((-a).index(), 4u);
  EXPECT_EQ(a.inv().index(), 5u);
  EXPECT_EQ(a.pow(6).index(), 1u);
  EXPECT_EQ(a.chi(), -1);

  const auto g = make_field(11, 1);
  const FieldElement c(g, Elem{3});
  EXPECT_THROW(a + c, std::invalid_argument);
  EXPECT_THROW(a * c, std::invalid_argument);
  EXPECT_FALSE(a == c);

  const FieldElement twin(make_field(7, 1), Elem{3});
  EXPECT_TRUE(a == twin);
  EXPECT_NO_THROW(a + twin);
  EXPECT_THROW(FieldElement(f, Elem{7}), std::out_of_range);
}
