#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gll/errors.hpp"
#include "gll/moebius.hpp"
#include "gll/pants.hpp"
#include "gll/surface.hpp"

using namespace gll;

namespace {

constexpr double kPi = 3.14159265358979323846;

double seam_of(double c) {
  const double ch = std::cosh(c / 2.0);
  return std::acosh(ch / (ch - 1.0));
}

const SurfaceGroup& surface15() {
  static const SurfaceGroup S = build_surface(1.5);
  return S;
}

const DomainNormalizer& normalizer15() {
  static const DomainNormalizer D = build_normalizer(surface15());
  return D;
}

const std::vector<ClosedGeodesicRecord>& records5() {
  static const std::vector<ClosedGeodesicRecord> recs =
      enumerate_closed_geodesics(surface15(), normalizer15(), 5.0);
  return recs;
}

// All reduced words over the four surface generators up to max_len.
std::vector<Word> reduced_words(int max_len) {
  std::vector<Word> out{Word{}};
  std::size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (int l : {1, -1, 2, -2, 3, -3, 4, -4}) {
        if (!out[i].empty() && out[i].back() == static_cast<std::int8_t>(-l))
          continue;
        Word w = out[i];
        w.push_back(static_cast<std::int8_t>(l));
        out.push_back(std::move(w));
      }
    }
    level_begin = level_end;
  }
  return out;
}

Word cyclic_reduce(Word w) {
  while (w.size() >= 2 && w.front() == static_cast<std::int8_t>(-w.back())) {
    w.erase(w.begin());
    w.pop_back();
  }
  return w;
}

// Reference canonical class word: shortlex least cyclic rotation of the
// cyclically reduced word and of its inverse.
Word canonical_class(const Word& w0) {
  const Word w = cyclic_reduce(w0);
  if (w.empty()) return w;
  Word best = w;
  for (const Word& base : {w, word_inverse(w)}) {
    for (std::size_t r = 0; r < base.size(); ++r) {
      Word rot(base.begin() + static_cast<std::ptrdiff_t>(r), base.end());
      rot.insert(rot.end(), base.begin(),
                 base.begin() + static_cast<std::ptrdiff_t>(r));
      if (shortlex_less(rot, best)) best = rot;
    }
  }
  return best;
}

GroupElement identity_frame() { return GroupElement{}; }

}  // namespace

TEST_CASE("construction at the reference cuff length") {
  const SurfaceGroup& S = surface15();
  CHECK(S.cuff_length == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(S.seam_length == doctest::Approx(seam_of(1.5)).epsilon(1e-10));
  CHECK(S.genus == 2);
  CHECK(S.euler_abs == 2);

  const double tr_cuff = 2.0 * std::cosh(0.75);
  const double tr_seam = 2.0 * std::cosh(seam_of(1.5));
  CHECK(std::abs(S.gen[0].trace()) == doctest::Approx(tr_cuff).epsilon(1e-10));
  CHECK(std::abs(S.gen[1].trace()) == doctest::Approx(tr_cuff).epsilon(1e-10));
  CHECK(std::abs(S.gen[2].trace()) == doctest::Approx(tr_seam).epsilon(1e-10));
  CHECK(std::abs(S.gen[3].trace()) == doctest::Approx(tr_seam).epsilon(1e-10));

  REQUIRE(!S.relator.empty());
  CHECK(S.relator == cyclic_reduce(S.relator));
  CHECK(group_distance_linf(S.element(S.relator), GroupElement{}) < 1e-8);

  for (int m = 0; m < 3; ++m) {
    CHECK(trace_to_length(S.pants_curve(m)) ==
          doctest::Approx(1.5).epsilon(1e-10));
    CHECK(group_distance_linf(S.element(S.pants_curve_word(m)),
                              S.pants_curve(m)) < 1e-9);
  }
}

TEST_CASE("construction across cuff lengths") {
  for (double c : {1.0, 2.5, 3.9}) {
    CAPTURE(c);
    const SurfaceGroup S = build_surface(c);
    CHECK(S.seam_length == doctest::Approx(seam_of(c)).epsilon(1e-10));
    CHECK(group_distance_linf(S.element(S.relator), GroupElement{}) < 1e-6);
    for (int m = 0; m < 3; ++m)
      CHECK(trace_to_length(S.pants_curve(m)) ==
            doctest::Approx(c).epsilon(1e-10));
  }
  CHECK_THROWS_AS(build_surface(0.0), DomainError);
  CHECK_THROWS_AS(build_surface(-1.0), DomainError);
  CHECK_THROWS_AS(build_surface(4.5), DomainError);
  CHECK_THROWS_AS(surface15().pants_curve(3), DomainError);
  CHECK_THROWS_AS(surface15().element(Word{5}), DomainError);
}

TEST_CASE("systole over reduced words of length six") {
  const std::vector<Word> words = reduced_words(6);
  for (double c : {1.5, 3.5}) {
    CAPTURE(c);
    const SurfaceGroup S = build_surface(c);
    double shortest = HUGE_VAL;
    for (const Word& w : words) {
      if (w.empty()) continue;
      const GroupElement g = S.element(w);
      // Torsion-free cocompact: every nontrivial element is hyperbolic.
      REQUIRE(std::abs(g.trace()) > 2.0 + 0.1);
      shortest = std::min(shortest, trace_to_length(g));
    }
    const double expected = std::min(c, 2.0 * seam_of(c));
    // Conjugate words amplify the last-ulp error of the generator entries
    // by the square of the conjugator norm, so the minimum over all words
    // sits a few 1e-7 below the exact systole.
    CHECK(shortest == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("fundamental polygon certificate") {
  const DomainNormalizer& D = normalizer15();
  const SurfaceGroup& S = surface15();
  REQUIRE(D.sides.size() >= 12);
  CHECK(D.sides.size() % 2 == 0);
  CHECK(D.area == doctest::Approx(4.0 * kPi).epsilon(1e-7));
  CHECK(D.circumradius > 1.0);
  CHECK(D.circumradius < 6.0);
  CHECK(D.contains(D.center));
  CHECK(!D.contains(Complex(0.0, 30.0)));

  const std::size_t n = D.sides.size();
  for (std::size_t i = 0; i < n; ++i) {
    const FundamentalSide& s = D.sides[i];
    REQUIRE(s.partner >= 0);
    REQUIRE(static_cast<std::size_t>(s.partner) < n);
    const FundamentalSide& p = D.sides[static_cast<std::size_t>(s.partner)];
    CHECK(p.partner == static_cast<int>(i));
    CHECK(group_distance_linf(p.pairing, s.pairing.inverse()) < 1e-7);
    CHECK(group_distance_linf(S.element(s.word), s.pairing) < 1e-7);
    // Sides are listed in cyclic order sharing endpoints.
    CHECK(std::abs(s.v1 - D.sides[(i + 1) % n].v0) < 1e-9);
    // The pairing carries this side to its partner with endpoints swapped.
    const GroupElement inv = s.pairing.inverse();
    CHECK(std::abs(inv.apply(s.v0) - p.v1) < 1e-7);
    CHECK(std::abs(inv.apply(s.v1) - p.v0) < 1e-7);
  }
}

TEST_CASE("deck transformation ball") {
  const DomainNormalizer& D = normalizer15();
  const SurfaceGroup& S = surface15();
  REQUIRE(!D.ball.empty());
  CHECK(D.ball_radius >= 6.0);
  CHECK(D.ball[0].word.empty());
  CHECK(group_distance_linf(D.ball[0].g, GroupElement{}) < 1e-12);

  for (std::size_t i = 0; i + 1 < D.ball.size(); ++i)
    CHECK(D.ball[i].displacement <= D.ball[i + 1].displacement + 1e-12);

  for (const auto& b : D.ball) {
    CHECK(b.displacement <= D.ball_radius + 1e-9);
    CHECK(std::abs(dist_h2(D.center, b.g.apply(D.center)) - b.displacement) <
          1e-9);
    CHECK(group_distance_linf(S.element(b.word), b.g) < 1e-6);
  }

  // Inverse closure: g and g^{-1} displace the center equally, so the
  // inverse sits in a same-displacement window.
  for (const auto& b : D.ball) {
    const GroupElement inv = b.g.inverse();
    bool found = false;
    for (const auto& o : D.ball) {
      if (std::abs(o.displacement - b.displacement) > 1e-6) continue;
      if (group_distance_linf(o.g, inv) < 1e-6) {
        found = true;
        break;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("normalize retracts into the polygon and is idempotent") {
  const SurfaceGroup& S = surface15();
  const DomainNormalizer& D = normalizer15();

  // The identity frame is based inside already.
  const NormalizeResult n0 = normalize(S, D, identity_frame());
  CHECK(n0.move_word.empty());
  CHECK(group_distance_linf(n0.normalized, identity_frame()) == 0.0);

  const Word deep = {1, 2, -3, 1, 4, 4, -2};
  const GroupElement x = compose(S.element(deep), identity_frame());
  const NormalizeResult n1 = normalize(S, D, x);
  CHECK(!n1.move_word.empty());
  CHECK(D.contains(n1.normalized.base(), 1e-9));
  // The move word multiplies out through entries of size exp(depth), so the
  // honest noise floor here is well above one ulp.
  CHECK(group_distance_linf(compose(S.element(n1.move_word), x),
                            n1.normalized) < 1e-6);

  const NormalizeResult n2 = normalize(S, D, n1.normalized);
  CHECK(n2.move_word.empty());
  CHECK(group_distance_linf(n2.normalized, n1.normalized) == 0.0);

  // Deck invariance: every translate normalizes to the same frame.
  for (int l : {1, -1, 2, -2, 3, -3, 4, -4}) {
    CAPTURE(l);
    const GroupElement gx =
        compose(S.element(Word{static_cast<std::int8_t>(l)}), x);
    const NormalizeResult ng = normalize(S, D, gx);
    CHECK(group_distance_linf(ng.normalized, n1.normalized) < 1e-6);
  }

  const GroupElement far{std::exp(30.0), 0.0, 0.0, std::exp(-30.0)};
  CHECK_THROWS_AS(normalize(S, D, far), DomainError);
}

TEST_CASE("quotient distance") {
  const SurfaceGroup& S = surface15();
  const DomainNormalizer& D = normalizer15();
  const GroupElement x = identity_frame();

  CHECK(quotient_distance(S, D, x, x, 4.0) < 1e-12);

  // Vanishes along the deck orbit.
  for (int l : {1, -1, 2, -2, 3, -3, 4, -4}) {
    CAPTURE(l);
    const GroupElement gx =
        compose(S.element(Word{static_cast<std::int8_t>(l)}), x);
    CHECK(quotient_distance(S, D, gx, x, 8.0) < 1e-9);
    CHECK(quotient_distance(S, D, x, gx, 8.0) < 1e-9);
  }

  // Symmetric, bounded by the unquotiented distance, and exact for small
  // separations (below half the systole nothing deck-shorter exists).
  const double t = 0.1;
  const GroupElement y{std::exp(t), 0.02, -0.01, std::exp(-t)};
  const double q_xy = quotient_distance(S, D, x, y, 8.0);
  const double q_yx = quotient_distance(S, D, y, x, 8.0);
  CHECK(std::abs(q_xy - q_yx) < 1e-9);
  CHECK(q_xy <= dist_ut(x, y) + 1e-12);
  CHECK(q_xy == doctest::Approx(dist_ut(x, y)).epsilon(1e-9));
}

TEST_CASE("pants id folds and is deck invariant") {
  const SurfaceGroup& S = surface15();
  const Complex z0{0.37, 1.21};

  CHECK(pants_id(S, Complex(0.0, 1.0)) == 0);

  const int p0 = pants_id(S, z0);
  for (int l : {1, -1, 2, -2, 3, -3, 4, -4}) {
    CAPTURE(l);
    const Complex gz = S.element(Word{static_cast<std::int8_t>(l)}).apply(z0);
    CHECK(pants_id(S, gz) == p0);
  }

  // Reflecting across a cuff line lands in the other pants; across a seam
  // line stays in the same one.
  const Complex cuff_flip = apply_antiholomorphic(S.hex_reflection[0], z0);
  CHECK(pants_id(S, cuff_flip) == 1 - p0);
  const Complex seam_flip = apply_antiholomorphic(S.hex_reflection[1], z0);
  CHECK(pants_id(S, seam_flip) == p0);
}

TEST_CASE("closed geodesic census at radius five") {
  const SurfaceGroup& S = surface15();
  const std::vector<ClosedGeodesicRecord>& recs = records5();
  REQUIRE(!recs.empty());

  // Sorted by length up to the tie window, shortlex within a tie.
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
    CHECK(recs[i].length <= recs[i + 1].length + 1e-9);
    if (std::abs(recs[i].length - recs[i + 1].length) < 1e-9)
      CHECK(shortlex_less(recs[i].word, recs[i + 1].word));
  }

  // The three pants curves are the whole bottom of the spectrum.
  std::set<std::string> shortest;
  for (const auto& r : recs)
    if (r.length < 1.5 + 1e-6) {
      CHECK(r.length == doctest::Approx(1.5).epsilon(1e-10));
      CHECK(r.primitive);
      shortest.insert(word_to_string(r.word));
    }
  CHECK(shortest == std::set<std::string>{"a", "b", "ab"});

  // Doubled seams: three classes of twice the seam length.
  const double two_seam = 2.0 * seam_of(1.5);
  std::set<std::string> seams;
  for (const auto& r : recs)
    if (std::abs(r.length - two_seam) < 1e-6) {
      CHECK(r.primitive);
      seams.insert(word_to_string(r.word));
    }
  CHECK(seams == std::set<std::string>{"c", "d", "cD"});

  // Squares of the pants curves, flagged as powers with the right root.
  std::map<std::string, std::string> squares;
  for (const auto& r : recs)
    if (std::abs(r.length - 3.0) < 1e-6) {
      CHECK(!r.primitive);
      CHECK(r.k == 2);
      squares[word_to_string(r.word)] = word_to_string(r.root);
    }
  CHECK(squares ==
        std::map<std::string, std::string>{
            {"aa", "a"}, {"bb", "b"}, {"abab", "ab"}});

  for (const auto& r : recs) {
    CAPTURE(word_to_string(r.word));
    CHECK(trace_to_length(S.element(r.word)) ==
          doctest::Approx(r.length).epsilon(1e-9));
    CHECK(r.word == canonical_class(r.word));
    if (r.primitive) {
      CHECK(r.k == 1);
      CHECK(r.root == r.word);
    } else {
      CHECK(r.k >= 2);
      CHECK(r.word == word_power(r.root, r.k));
      const auto [root, k] = primitive_root(r.word);
      CHECK(k == r.k);
      CHECK(canonical_class(root) == r.root);
    }
  }

  // Census density: within the loose first-order bracket.
  const double ratio = static_cast<double>(recs.size()) * 5.0 / std::exp(5.0);
  CHECK(ratio > 0.3);
  CHECK(ratio < 3.0);
}

TEST_CASE("non-primitive records are exactly the powers") {
  const std::vector<ClosedGeodesicRecord>& recs = records5();
  std::set<std::string> observed;
  for (const auto& r : recs)
    if (!r.primitive) observed.insert(word_to_string(r.word));

  std::set<std::string> expected;
  for (const auto& r : recs) {
    if (!r.primitive) continue;
    for (int k = 2; r.length * k <= 5.0 + 1e-9; ++k)
      expected.insert(word_to_string(canonical_class(word_power(r.word, k))));
  }
  CHECK(observed == expected);
}

TEST_CASE("census is stable under radius growth") {
  const std::vector<ClosedGeodesicRecord> small =
      enumerate_closed_geodesics(surface15(), normalizer15(), 4.0);
  std::vector<ClosedGeodesicRecord> want;
  for (const auto& r : records5())
    if (r.length <= 4.0 + 1e-9) want.push_back(r);
  REQUIRE(small.size() == want.size());
  for (std::size_t i = 0; i < small.size(); ++i) {
    CHECK(small[i].word == want[i].word);
    // Lengths come from different cluster representatives per run.
    CHECK(small[i].length ==
          doctest::Approx(want[i].length).epsilon(1e-10));
  }
}

TEST_CASE("census budgets and domain checks") {
  const SurfaceGroup& S = surface15();
  const DomainNormalizer& D = normalizer15();
  CHECK_THROWS_AS(enumerate_closed_geodesics(S, D, 0.0), DomainError);
  CHECK_THROWS_AS(enumerate_closed_geodesics(S, D, -2.0), DomainError);
  CHECK_THROWS_AS(
      enumerate_closed_geodesics(S, D, 5.0, EnumerationBudget{1, 100000000}),
      BudgetExceeded);
  CHECK_THROWS_AS(
      enumerate_closed_geodesics(S, D, 5.0, EnumerationBudget{1000000, 10}),
      BudgetExceeded);
}

TEST_CASE("primitive root of a word") {
  CHECK(primitive_root(Word{}) == std::make_pair(Word{}, 1));
  CHECK(primitive_root(Word{1}) == std::make_pair(Word{1}, 1));
  CHECK(primitive_root(Word{1, 2}) == std::make_pair(Word{1, 2}, 1));
  CHECK(primitive_root(Word{1, 2, 1, 2}) == std::make_pair(Word{1, 2}, 2));
  CHECK(primitive_root(Word{1, 2, 1, 2, 1, 2}) ==
        std::make_pair(Word{1, 2}, 3));
  // Cyclic reduction happens first.
  CHECK(primitive_root(Word{2, 1, 1, -2}) == std::make_pair(Word{1}, 2));
  // Power length identity.
  const SurfaceGroup& S = surface15();
  CHECK(trace_to_length(S.element(word_power(Word{1, 2}, 3))) ==
        doctest::Approx(3.0 * trace_to_length(S.element(Word{1, 2})))
            .epsilon(1e-9));
}

TEST_CASE("glued boundary classes are conjugate") {
  const SurfaceGroup& S = surface15();
  const std::vector<Word> words = reduced_words(6);
  for (int m = 0; m < 3; ++m) {
    CAPTURE(m);
    const GroupElement ga = S.element(S.gluing[m].side_a);
    const GroupElement gb = S.element(S.gluing[m].side_b);
    CHECK(std::abs(ga.trace()) ==
          doctest::Approx(std::abs(gb.trace())).epsilon(1e-10));
    bool conjugate = false;
    for (const Word& w : words) {
      const GroupElement d = S.element(w);
      const GroupElement z =
          compose(compose(d, ga).renormalized(), d.inverse()).renormalized();
      if (group_distance_linf(z, gb) < 1e-6 ||
          group_distance_linf(z, gb.inverse()) < 1e-6) {
        conjugate = true;
        break;
      }
    }
    CHECK(conjugate);
  }
}
