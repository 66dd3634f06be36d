#include <gtest/gtest.h>

#include "placemeasure/tower.hpp"
#include "support/oracles.hpp"

using namespace placemeasure;

namespace {

const rational_place inf = rational_place::infinite();
rational_place fin(natural p) { return rational_place::finite(p); }

std::vector<natural> reps(const std::vector<place>& places) {
  std::vector<natural> out;
  for (const auto& v : places) out.push_back(v.rep());
  return out;
}

std::vector<natural> canonical_levels(natural bound) {
  std::vector<natural> out;
  for (natural n = 1; n <= bound; ++n)
    if (n % 4 != 2) out.push_back(n);
  return out;
}

}  // namespace

TEST(Level, CanonicalConductor) {
  EXPECT_EQ(canonical_conductor(1).conductor(), 1u);
  EXPECT_EQ(canonical_conductor(6).conductor(), 3u);
  EXPECT_EQ(canonical_conductor(2).conductor(), 1u);
  EXPECT_EQ(canonical_conductor(24).conductor(), 24u);
  EXPECT_EQ(oracle::phi(6), oracle::phi(3));
  EXPECT_THROW(level(0), domain_error);
}

TEST(Level, DegreeIsEulerPhi) {
  for (natural n : canonical_levels(300)) EXPECT_EQ(level(n).degree(), oracle::phi(n)) << n;
}

TEST(RationalPlace, RejectsComposite) {
  EXPECT_THROW(rational_place::finite(9), domain_error);
  EXPECT_THROW(rational_place::finite(1), domain_error);
  EXPECT_EQ(fin(5).enumeration_index(), 4u);
  EXPECT_EQ(inf.enumeration_index(), 1u);
  EXPECT_EQ(inf.next(), fin(2));
  EXPECT_EQ(fin(7).next(), fin(11));
}

TEST(Place, RejectsNonCanonicalRepresentative) {
  EXPECT_THROW(place(level(7), fin(2), 2), domain_error);   // coset {1,2,4}
  EXPECT_THROW(place(level(12), inf, 7), domain_error);     // folds to 5
  EXPECT_THROW(place(level(8), fin(2), 1), domain_error);   // totally ramified: rep 0
  EXPECT_NO_THROW(place(level(7), fin(2), 3));
}

TEST(PlacesAbove, Examples) {
  EXPECT_EQ(reps(places_above(level(5), fin(2))), (std::vector<natural>{1}));
  EXPECT_EQ(reps(places_above(level(7), fin(2))), (std::vector<natural>{1, 3}));
  EXPECT_EQ(reps(places_above(level(12), inf)), (std::vector<natural>{1, 5}));
  EXPECT_EQ(reps(places_above(level(1), inf)), (std::vector<natural>{0}));
  EXPECT_EQ(reps(places_above(level(8), fin(2))), (std::vector<natural>{0}));
}

TEST(PlacesAbove, MatchesGaloisCosetOracle) {
  for (natural n : canonical_levels(120))
    for (natural p : {0u, 2u, 3u, 5u, 7u, 11u, 13u}) {
      auto base = p == 0 ? inf : fin(p);
      auto places = places_above(level(n), base);
      std::vector<natural> expected;
      for (const auto& coset : oracle::coset_places(n, p)) expected.push_back(oracle::label(coset, n, p));
      std::sort(expected.begin(), expected.end());
      EXPECT_EQ(reps(places), expected) << n << " " << p;
      for (const auto& v : places) {
        EXPECT_EQ(local_degree(v), oracle::local_degree(n, p)) << v;
        EXPECT_EQ(place(v.at(), v.base(), v.rep()), v);  // reps are fixed points
      }
    }
}

TEST(LocalDegree, Examples) {
  EXPECT_EQ(local_degree(place(level(5), fin(2), 1)), 4u);
  EXPECT_EQ(local_degree(place(level(8), fin(2), 0)), 4u);
  EXPECT_EQ(local_degree(place(level(1), inf, 0)), 1u);
  EXPECT_EQ(local_degree(place(level(7), fin(2), 3)), 3u);
}

TEST(Restrict, Examples) {
  EXPECT_EQ(restrict(place(level(15), fin(2), 7), level(5)), place(level(5), fin(2), 1));
  EXPECT_EQ(restrict(place(level(7), fin(2), 3), level(1)), place(level(1), fin(2), 0));
  EXPECT_EQ(restrict(place(level(12), inf, 5), level(3)), place(level(3), inf, 1));
  auto v = place(level(12), inf, 5);
  EXPECT_EQ(restrict(v, v.at()), v);
  EXPECT_THROW(restrict(v, level(5)), domain_error);
}

TEST(Restrict, MatchesOracleAndIsTransitive) {
  for (natural n : {12u, 15u, 21u, 24u, 35u, 36u, 45u, 60u, 84u, 105u})
    for (natural p : {0u, 2u, 3u, 5u, 7u}) {
      auto base = p == 0 ? inf : fin(p);
      for (const auto& w : places_above(level(n), base))
        for (natural mid : canonical_levels(n)) {
          if (n % mid) continue;
          EXPECT_EQ(restrict(w, level(mid)).rep(), oracle::restrict_label(w, mid)) << w << " -> " << mid;
          for (natural low : canonical_levels(mid)) {
            if (mid % low) continue;
            EXPECT_EQ(restrict(restrict(w, level(mid)), level(low)), restrict(w, level(low)));
          }
        }
    }
}

TEST(Fiber, Examples) {
  auto to_strings = [](const std::vector<place>& ps) {
    std::vector<std::string> out;
    for (const auto& v : ps) out.push_back(v.to_string());
    return out;
  };
  EXPECT_EQ(to_strings(fiber(place(level(1), fin(2), 0), level(7))),
            (std::vector<std::string>{"7:2:1", "7:2:3"}));
  EXPECT_EQ(to_strings(fiber(place(level(5), fin(2), 1), level(15))),
            (std::vector<std::string>{"15:2:1", "15:2:7"}));
  EXPECT_EQ(to_strings(fiber(place(level(1), inf, 0), level(5))),
            (std::vector<std::string>{"5:inf:1", "5:inf:2"}));
  EXPECT_THROW(fiber(place(level(7), fin(2), 1), level(5)), domain_error);
}

TEST(Fiber, PartitionsPlacesAbove) {
  for (natural n : {1u, 3u, 4u, 5u, 12u, 15u})
    for (natural mult : {1u, 3u, 4u, 5u, 7u}) {
      level big = compositum(level(n), level(n * mult));
      for (natural p : {0u, 2u, 3u, 5u}) {
        auto base = p == 0 ? inf : fin(p);
        std::vector<place> all;
        for (const auto& v : places_above(level(n), base)) {
          auto f = fiber(v, big);
          ASSERT_FALSE(f.empty());
          for (const auto& w : f) EXPECT_EQ(restrict(w, level(n)), v);
          all.insert(all.end(), f.begin(), f.end());
        }
        std::sort(all.begin(), all.end());
        EXPECT_TRUE(std::adjacent_find(all.begin(), all.end()) == all.end());
        EXPECT_EQ(all, places_above(big, base));
      }
    }
}

TEST(Tower, DegreeSumLaws) {
  for (natural n : canonical_levels(60))
    for (natural p : {0u, 2u, 3u, 5u}) {
      auto base = p == 0 ? inf : fin(p);
      natural total = 0;
      for (const auto& v : places_above(level(n), base)) total += local_degree(v);
      EXPECT_EQ(total, level(n).degree());
    }
}

TEST(Compositum, Examples) {
  EXPECT_EQ(compositum(level(5), level(7)).conductor(), 35u);
  EXPECT_EQ(compositum(level(12), level(8)).conductor(), 24u);
  EXPECT_EQ(compositum(level(9), level(1)).conductor(), 9u);
  EXPECT_EQ(compositum(level(4), level(3)), compositum(level(3), level(4)));
  EXPECT_EQ(compositum(level(12), level(12)).conductor(), 12u);
}

TEST(TowerProvider, CyclotomicImplementationDelegates) {
  cyclotomic_tower t;
  const tower_provider& provider = t;
  auto v = place(level(7), fin(2), 3);
  EXPECT_EQ(provider.local_degree(v), 3u);
  EXPECT_EQ(provider.global_degree(level(7)), 6u);
  EXPECT_EQ(provider.places_above(level(7), fin(2)).size(), 2u);
  EXPECT_EQ(provider.restrict(v, level(1)).rep(), 0u);
  EXPECT_EQ(provider.fiber(v, level(35)).size(), 1u);
  EXPECT_EQ(provider.compositum(level(7), level(5)).conductor(), 35u);
}
