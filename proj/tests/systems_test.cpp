#include <gtest/gtest.h>

#include <cmath>

#include "fkdist/error.hpp"
#include "fkdist/systems.hpp"
#include "oracle.hpp"

namespace fkdist {
namespace {

Word W(std::initializer_list<Symbol> s) { return Word(s); }

Word digits(const std::string& s) {
  Word w;
  for (char c : s) w.push_back(static_cast<Symbol>(c - '0'));
  return w;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected fkdist::Error";
  return ErrorCode::invalid_argument;
}

TEST(Substitution, ThueMorsePrefix) { EXPECT_EQ(substitution_word(thue_morse_rules(), 8), digits("01101001")); }

TEST(Substitution, FibonacciPrefix) { EXPECT_EQ(substitution_word(fibonacci_rules(), 8), digits("01001010")); }

TEST(Substitution, ChaconPrefix) { EXPECT_EQ(substitution_word(chacon_rules(), 13), digits("0010001010010")); }

TEST(Substitution, ExactLength) {
  for (std::size_t len : {1u, 2u, 3u, 17u, 1000u}) EXPECT_EQ(substitution_word(thue_morse_rules(), len).size(), len);
}

TEST(Substitution, RejectsBadRules) {
  EXPECT_EQ(code_of([] { substitution_word({{W({1, 0}), W({0, 1})}, 0}, 4); }), ErrorCode::invalid_rules);
  EXPECT_EQ(code_of([] { substitution_word({{W({0, 1}), W({})}, 0}, 4); }), ErrorCode::invalid_rules);
  EXPECT_EQ(code_of([] { substitution_word({{W({0, 2}), W({1})}, 0}, 4); }), ErrorCode::invalid_rules);
  EXPECT_EQ(code_of([] { substitution_word({{W({0}), W({1})}, 0}, 4); }), ErrorCode::non_expanding);
  EXPECT_EQ(code_of([] { OrbitSource::substitution({{W({0}), W({1, 1})}, 0}); }), ErrorCode::non_expanding);
}

// Applying the rules to a prefix of the fixed point reproduces a longer prefix.
TEST(Substitution, FixedPointCoherence) {
  for (const auto& rules : {thue_morse_rules(), fibonacci_rules(), chacon_rules()}) {
    const Word big = substitution_word(rules, 4096);
    for (std::size_t m : {1u, 5u, 33u, 200u}) {
      Word image;
      for (std::size_t i = 0; i < m; ++i) {
        const Word& r = rules.images[big[i]];
        image.insert(image.end(), r.begin(), r.end());
      }
      ASSERT_LE(image.size(), big.size());
      EXPECT_TRUE(std::equal(image.begin(), image.end(), big.begin()));
    }
  }
}

TEST(Sturmian, GoldenPrefix) {
  const auto s = sturmian_word(kGolden, 0.0, 6);
  EXPECT_EQ(s.word, digits("010110"));
  EXPECT_FALSE(s.near_rational);
}

TEST(Sturmian, FirstSymbolIsZeroWhenInterceptIsZero) {
  for (double alpha : {0.01, 0.3, kGolden, 0.999}) EXPECT_EQ(sturmian_word(alpha, 0.0, 1).word.front(), 0u);
}

TEST(Sturmian, NearRationalFlag) {
  const auto s = sturmian_word(std::nextafter(0.5, 1.0), 0.0, 4);
  EXPECT_EQ(s.word, digits("0101"));
  EXPECT_TRUE(s.near_rational);
  EXPECT_TRUE(is_near_rational(1.0 / 3.0));
  EXPECT_TRUE(is_near_rational(37.0 / 97.0));
  EXPECT_FALSE(is_near_rational(kGolden));
  EXPECT_FALSE(is_near_rational(std::sqrt(2.0) - 1.0));
}

TEST(Sturmian, SymbolsMatchFloorFormula) {
  const double alpha = std::sqrt(2.0) - 1.0;
  const double beta = 0.3;
  const auto s = sturmian_word(alpha, beta, 500);
  for (std::size_t k = 0; k < 500; ++k) {
    const long double a = alpha;
    const long double b = beta;
    const auto expected = static_cast<Symbol>(std::floor((k + 1) * a + b) - std::floor(k * a + b));
    EXPECT_EQ(s.word[k], expected) << k;
  }
}

TEST(Sturmian, RejectsBadParameters) {
  EXPECT_EQ(code_of([] { sturmian_word(0.0, 0.0, 3); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { sturmian_word(0.5, 1.0, 3); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { sturmian_word(0.5, 0.0, 0); }), ErrorCode::invalid_argument);
}

TEST(Bernoulli, DegenerateProbabilities) {
  EXPECT_EQ(bernoulli_word(123, 0.0, 5), digits("00000"));
  EXPECT_EQ(bernoulli_word(123, 1.0, 5), digits("11111"));
}

TEST(Bernoulli, Deterministic) {
  const Word a = bernoulli_word(42, 0.5, 10000);
  const Word b = bernoulli_word(42, 0.5, 10000);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, bernoulli_word(43, 0.5, 10000));
  const auto ones = std::count(a.begin(), a.end(), 1u);
  EXPECT_NEAR(static_cast<double>(ones) / 10000.0, 0.5, 0.03);
}

// Pinned output of the versioned generator: a change here breaks
// reproducibility of every published experiment.
TEST(Bernoulli, GeneratorVersionIsPinned) {
  EXPECT_STREQ(kRngVersion, "splitmix64-counter/1");
  const Word w = bernoulli_word(42, 0.5, 32);
  const Word again = orbit_word(OrbitSource::bernoulli(42, 0.5), 0, 32);
  EXPECT_EQ(w, again);
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
}

TEST(OrbitWord, PeriodicRotation) {
  EXPECT_EQ(orbit_word(OrbitSource::periodic(digits("01")), 1, 4), digits("1010"));
}

TEST(OrbitWord, ExplicitIdentityAndBounds) {
  const Word w = digits("0110100");
  const auto src = OrbitSource::explicit_word(w);
  EXPECT_EQ(orbit_word(src, 0, w.size()), w);
  EXPECT_EQ(src.capacity(), w.size());
  EXPECT_EQ(code_of([&] { orbit_word(src, 3, 5); }), ErrorCode::input_length);
  EXPECT_EQ(orbit_word(src.shifted(2), 0, 5), digits("10100"));
}

TEST(OrbitWord, SturmianShiftMovesIntercept) {
  const double beta = 0.0;
  const auto shifted = OrbitSource::sturmian(kGolden, beta).shifted(1);
  const double moved = std::fmod(beta + kGolden, 1.0);
  EXPECT_EQ(orbit_word(shifted, 0, 100), sturmian_word(kGolden, moved, 100).word);
}

TEST(OrbitWord, ShiftIsIndexAdvance) {
  const auto tm = OrbitSource::thue_morse();
  const Word base = orbit_word(tm, 0, 300);
  EXPECT_EQ(orbit_word(tm.shifted(17), 3, 100), Word(base.begin() + 20, base.begin() + 120));
}

TEST(OrbitWord, DeterministicForEveryKind) {
  const std::vector<OrbitSource> sources = {
      OrbitSource::thue_morse(),          OrbitSource::sturmian(kGolden, 0.2), OrbitSource::bernoulli(5, 0.3),
      OrbitSource::periodic(digits("011")), OrbitSource::explicit_word(digits("0110101101")),
      OrbitSource::chacon().shifted(99)};
  for (const auto& s : sources) {
    const std::size_t len = std::min<std::size_t>(10, s.capacity());
    EXPECT_EQ(orbit_word(s, 0, len), orbit_word(s, 0, len)) << s.describe();
    for (Symbol c : orbit_word(s, 0, len)) EXPECT_LT(c, s.alphabet_size());
  }
  const auto rot = OrbitSource::rotation(kGolden, 0.1);
  EXPECT_EQ(orbit_points(rot, 5, 10), orbit_points(rot, 5, 10));
  EXPECT_EQ(code_of([&] { orbit_word(rot, 0, 3); }), ErrorCode::incompatible_sources);
  EXPECT_EQ(code_of([] { orbit_points(OrbitSource::thue_morse(), 0, 3); }), ErrorCode::incompatible_sources);
}

TEST(OrbitSource, PrefixOnlyForBernoulli) {
  const auto b = OrbitSource::bernoulli(9, 0.5).with_prefix(digits("1111111"));
  EXPECT_EQ(orbit_word(b, 0, 7), digits("1111111"));
  EXPECT_EQ(orbit_word(b, 7, 20), orbit_word(OrbitSource::bernoulli(9, 0.5), 7, 20));
  EXPECT_EQ(orbit_word(b.shifted(3), 0, 4), digits("1111"));
  EXPECT_EQ(code_of([] { OrbitSource::thue_morse().with_prefix(digits("0")); }), ErrorCode::incompatible_sources);
}

TEST(AgreementLength, Examples) {
  EXPECT_EQ(agreement_length(2.0), 0u);
  EXPECT_EQ(agreement_length(1.0), 1u);
  EXPECT_EQ(agreement_length(0.25), 3u);
  EXPECT_EQ(agreement_length(0.26), 2u);
  EXPECT_EQ(agreement_length(1.0 / 64.0), 7u);
  EXPECT_EQ(code_of([] { agreement_length(0.0); }), ErrorCode::invalid_argument);
}

// Exhaustive over binary words of length 8: agreeing on the first L(delta)
// symbols is the same as 2^-k < delta for the first disagreement k.
TEST(AgreementLength, MatchesShiftMetricExhaustively) {
  const std::vector<double> deltas = {2.0, 1.0, 0.75, 0.5, 0.3, 0.25, 0.2, 0.125, 0.1, 1.0 / 32, 1.0 / 128, 0.009};
  for (std::uint32_t a = 0; a < 256; ++a) {
    for (std::uint32_t b = 0; b < 256; ++b) {
      int k = 0;
      while (k < 8 && (((a >> k) & 1u) == ((b >> k) & 1u))) ++k;
      for (double delta : deltas) {
        const std::size_t L = agreement_length(delta);
        ASSERT_LE(L, 8u);
        const bool agree = static_cast<std::size_t>(k) >= L;
        // k == 8 means the words agree on everything we can see; with L <= 8
        // the true distance is at most 2^-8, below every tested delta.
        const bool close = k == 8 ? true : std::ldexp(1.0, -k) < delta;
        EXPECT_EQ(agree, close) << a << ' ' << b << ' ' << delta;
      }
    }
  }
}

TEST(Rotation, Examples) {
  EXPECT_EQ(rotation_orbit(0.0, 0.3, 3), (std::vector<double>{0.3, 0.3, 0.3}));
  EXPECT_EQ(rotation_orbit(0.5, 0.0, 4), (std::vector<double>{0.0, 0.5, 0.0, 0.5}));
  EXPECT_NEAR(circle_distance(0.1, 0.9), 0.2, 1e-15);
  EXPECT_EQ(circle_distance(0.25, 0.75), 0.5);
}

// Dyadic points keep every subtraction exact, so the metric axioms can be
// checked without rounding slack.
TEST(Rotation, CircleMetricAxioms) {
  SeededStream rng(3);
  const auto point = [&] { return static_cast<double>(rng.below(1u << 20)) * 0x1.0p-20; };
  for (int t = 0; t < 20000; ++t) {
    const double a = point();
    const double b = point();
    const double c = point();
    EXPECT_EQ(circle_distance(a, b), circle_distance(b, a));
    EXPECT_EQ(circle_distance(a, a), 0.0);
    if (a != b) EXPECT_GT(circle_distance(a, b), 0.0);
    EXPECT_LE(circle_distance(a, c), circle_distance(a, b) + circle_distance(b, c));
    EXPECT_LE(circle_distance(a, b), 0.5);
  }
}

TEST(SeededStream, BelowStaysInRange) {
  SeededStream rng(11);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 7000; ++i) ++counts[rng.below(7)];
  for (int c : counts) EXPECT_GT(c, 800);
  EXPECT_THROW(rng.below(0), Error);
}

}  // namespace
}  // namespace fkdist
