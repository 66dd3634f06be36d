#include <gtest/gtest.h>

#include "placemeasure/global.hpp"
#include "support/generators.hpp"

using namespace placemeasure;

namespace {

const rational_place inf = rational_place::infinite();
rational_place fin(natural p) { return rational_place::finite(p); }
place at(natural n, rational_place p, natural rep) { return place(level(n), p, rep); }

const consistent_map lambda = make_builtin(builtin_map::lambda);
const consistent_map omega = make_builtin(builtin_map::omega);
const consistent_map alternating = make_builtin(builtin_map::alternating);

consistent_map finite_map() {
  base_assignment base;
  base.table.emplace(inf, map_value::exact(1));
  base.table.emplace(fin(2), map_value::exact(-3));
  return consistent_map::from_spec(base, {});
}

ring_set single(const place& v) { return ring_set(v.at(), {v}); }

partition split2_at7() {
  return partition(algebra_set::everything(),
                   {{fin(2), {single(at(7, fin(2), 1)), single(at(7, fin(2), 3))}}});
}

// 3 is inert at level 5, so the split uses level 13, where it has four places.
partition split3_at13() {
  auto first = single(at(13, fin(3), 1));
  return partition(algebra_set::everything(), {{fin(3), {first, subtract(rational_fiber(fin(3)), first)}}});
}

extended_value ext(long n) { return extended_value(map_value::exact(n)); }

}  // namespace

TEST(Extended, Arithmetic) {
  auto pinf = extended_value::plus_infinity();
  auto minf = extended_value::minus_infinity();
  EXPECT_TRUE(same_value(pinf + ext(3), pinf));
  EXPECT_TRUE(same_value(ext(3) - pinf, minf));
  EXPECT_TRUE(same_value(ext(2) + ext(-5), ext(-3)));
  try {
    (void)(pinf + minf);
    FAIL();
  } catch (const domain_error& e) {
    EXPECT_EQ(e.code(), error_code::infinite_contradiction);
  }
  EXPECT_EQ(pinf.to_string(), "+inf");
  EXPECT_EQ(minf.to_string(), "-inf");
}

TEST(Partition, Examples) {
  partition canonical;
  EXPECT_TRUE(canonical.is_basis());
  EXPECT_TRUE(canonical.exceptional().empty());
  auto split = split2_at7();
  EXPECT_TRUE(split.is_basis());
  EXPECT_EQ(split.parts_above(fin(2)).size(), 2u);
  try {
    partition(algebra_set::everything(), {{fin(2), {single(at(7, fin(2), 1))}}});
    FAIL();
  } catch (const domain_error& e) {
    EXPECT_EQ(e.code(), error_code::not_a_partition);
    EXPECT_NE(std::string(e.what()).find("7:2:3"), std::string::npos);
  }
}

TEST(Partition, Overlaps) {
  auto whole = lift(rational_fiber(fin(2)), level(7));
  try {
    partition(algebra_set::everything(), {{fin(2), {whole, single(at(7, fin(2), 1))}}});
    FAIL();
  } catch (const domain_error& e) {
    EXPECT_EQ(e.code(), error_code::not_a_partition);
  }
  EXPECT_THROW(partition(algebra_set::everything(), {{fin(2), {single(at(7, fin(3), 1))}}}), domain_error);
}

TEST(Partition, NonBasisParts) {
  auto two = unite(single(at(31, fin(2), 1)), single(at(31, fin(2), 3)));
  auto rest = subtract(rational_fiber(fin(2)), two);
  partition p(algebra_set::everything(), {{fin(2), {two, rest}}});
  EXPECT_FALSE(p.is_basis());
}

TEST(Partition, Scope) {
  auto scope = complement(algebra_set(unite(rational_fiber(fin(2)), rational_fiber(inf))));
  partition p(scope, {});
  EXPECT_TRUE(p.parts_above(fin(2)).empty());
  EXPECT_FALSE(p.is_finite());
  auto compact = algebra_set(unite(rational_fiber(fin(3)), single(at(5, fin(2), 1))));
  partition q(compact, {});
  EXPECT_TRUE(q.is_finite());
  EXPECT_EQ(q.parts_above(fin(2)).size(), 1u);
  EXPECT_TRUE(q.parts_above(fin(7)).empty());
}

TEST(Refinement, Examples) {
  partition canonical;
  auto split = split2_at7();
  auto r = is_refinement(split, canonical);
  EXPECT_TRUE(r.refines);
  EXPECT_EQ(r.groups.at({fin(2), 0}).size(), 2u);
  EXPECT_FALSE(is_refinement(canonical, split).refines);
  auto self = is_refinement(split, split);
  EXPECT_TRUE(self.refines);
  for (const auto& [key, group] : self.groups) EXPECT_EQ(group.size(), 1u);
  partition other_scope(algebra_set(rational_fiber(fin(2))), {});
  try {
    is_refinement(split, other_scope);
    FAIL();
  } catch (const domain_error& e) {
    EXPECT_EQ(e.code(), error_code::scope_mismatch);
  }
}

TEST(Refinement, CommonRefinement) {
  partition canonical;
  EXPECT_EQ(common_refinement(canonical, canonical), canonical);
  auto both = common_refinement(split2_at7(), split3_at13());
  EXPECT_EQ(both.exceptional().size(), 2u);
  EXPECT_TRUE(is_refinement(both, split2_at7()).refines);
  EXPECT_TRUE(is_refinement(both, split3_at13()).refines);
  gen::rng r(4);
  for (int i = 0; i < 40; ++i) {
    auto g = gen::any_partition(r, algebra_set::everything(), false);
    auto f = gen::refine(r, g, i % 2 == 0);
    EXPECT_EQ(common_refinement(g, f), f);
  }
}

TEST(PrefixCheck, Examples) {
  partition canonical;
  auto split = split2_at7();
  auto a = refine_prefix_check(lambda, split, canonical, {}, 2);
  EXPECT_TRUE(a.holds);
  EXPECT_EQ(a.coarse_terms, 2u);
  EXPECT_EQ(a.fine_terms, 3u);
  EXPECT_EQ(a.fine_sum.to_string(), "2");
  auto b = refine_prefix_check(lambda, split, canonical, {}, 1);
  EXPECT_TRUE(b.holds);
  EXPECT_EQ(b.fine_terms, 1u);
  auto c = refine_prefix_check(omega, split, canonical, {}, 3);
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.fine_terms, 4u);
  try {
    refine_prefix_check(lambda, canonical, split, {}, 3);
    FAIL();
  } catch (const domain_error& e) {
    EXPECT_EQ(e.code(), error_code::not_a_refinement);
  }
}

TEST(PrefixCheck, DeclaredOrderComesFirst) {
  partition canonical;
  auto r = refine_prefix_check(lambda, split2_at7(), canonical, {fin(7), fin(2)}, 2);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.fine_terms, 3u);
  EXPECT_EQ(partition(algebra_set::everything(), {}, {fin(7)}).fiber_sequence(3),
            (std::vector<rational_place>{fin(7), inf, fin(2)}));
}

TEST(PrefixCheck, RandomRefinements) {
  gen::rng r(31);
  for (int i = 0; i < 60; ++i) {
    auto c = gen::any_map(r, {.exact_only = i % 2 == 0, .allow_alternating = true});
    auto delta = gen::any_partition(r, algebra_set::everything(), i % 3 == 0);
    auto gamma = gen::refine(r, delta, i % 2 == 1);
    auto n = static_cast<std::size_t>(gen::integer(r, 1, 30));
    EXPECT_TRUE(refine_prefix_check(c, gamma, delta, {}, n).holds);
  }
}

TEST(Classify, Examples) {
  partition canonical;
  EXPECT_EQ(classify_series(alternating, canonical).kind(), classification::tag::conditional);
  EXPECT_EQ(classify_series(omega, canonical).kind(), classification::tag::minus_infinity);
  auto f = classify_series(finite_map(), canonical);
  EXPECT_EQ(f.to_string(), "finite -2");
  EXPECT_EQ(classify_series(lambda, canonical).to_string(), "+inf");
  EXPECT_EQ(classify_series(alternating, canonical).to_string(), "conditional");
}

TEST(Classify, MixedTails) {
  base_assignment base;
  base.table.emplace(inf, map_value::exact(0));
  base.tail.lambda = 1;
  base.tail.reciprocal_log = -5;
  EXPECT_EQ(classify_series(consistent_map::from_spec(base, {}), partition()).kind(),
            classification::tag::plus_infinity);
  base_assignment cancel;
  cancel.tail.lambda = 1;
  cancel.tail.alternating = 1;
  // 2 on even positions and 0 on odd ones.
  EXPECT_EQ(classify_series(consistent_map::from_spec(cancel, {}), partition()).kind(),
            classification::tag::plus_infinity);
  cancel.tail.alternating = 2;
  EXPECT_EQ(classify_series(consistent_map::from_spec(cancel, {}), partition()).kind(),
            classification::tag::conditional);
}

TEST(Classify, SameAcrossPartitions) {
  gen::rng r(77);
  for (int i = 0; i < 10; ++i) {
    auto c = gen::any_map(r, {.exact_only = i % 2 == 0});
    auto expected = classify_series(c, partition());
    for (int k = 0; k < 20; ++k) {
      auto gamma = gen::any_partition(r, algebra_set::everything(), k % 2 == 0);
      auto got = classify_series(c, gamma);
      ASSERT_EQ(got.kind(), expected.kind());
      if (got.kind() == classification::tag::finite) {
        EXPECT_TRUE(approx_equal(got.value(), expected.value()));
      }
    }
  }
}

TEST(Global, ConsistencyAndIndex) {
  EXPECT_TRUE(is_globally_consistent(lambda));
  EXPECT_TRUE(is_globally_consistent(omega));
  EXPECT_FALSE(is_globally_consistent(alternating));
  EXPECT_EQ(index(lambda).to_string(), "+inf");
  EXPECT_EQ(index(omega).to_string(), "-inf");
  EXPECT_EQ(index(finite_map()).to_string(), "-2");
  try {
    index(alternating);
    FAIL();
  } catch (const domain_error& e) {
    EXPECT_EQ(e.code(), error_code::not_globally_consistent);
  }
}

TEST(Global, Nu) {
  auto c = finite_map();
  auto hole = complement(algebra_set(unite(rational_fiber(fin(2)), rational_fiber(inf))));
  EXPECT_EQ(nu(c, hole).to_string(), "0");
  EXPECT_TRUE(same_value(nu(c, algebra_set::everything()), index(c)));
  EXPECT_EQ(nu(omega, complement(algebra_set(rational_fiber(fin(2))))).to_string(), "-inf");
  EXPECT_THROW(nu(alternating, algebra_set::everything()), domain_error);
  gen::rng r(6);
  for (int i = 0; i < 30; ++i) {
    auto a = gen::any_ring_set(r);
    EXPECT_TRUE(exactly_equal(nu(lambda, algebra_set(a)).value(), charge(lambda, a)));
  }
}

TEST(Additivity, Cases) {
  auto i = additivity_check(lambda, std::vector<algebra_set>{algebra_set(single(at(7, fin(2), 1))),
                                                              algebra_set(single(at(7, fin(2), 3)))});
  EXPECT_EQ(i.which, additivity_case::finite_ring);
  EXPECT_TRUE(i.holds);
  EXPECT_EQ(i.sum.to_string(), "1");

  auto y2 = algebra_set(rational_fiber(fin(2)));
  auto ii = additivity_check(lambda, std::vector<algebra_set>{y2, complement(y2)});
  EXPECT_EQ(ii.which, additivity_case::finite_with_complement);
  EXPECT_TRUE(ii.holds);
  EXPECT_EQ(ii.sum.to_string(), "+inf");

  auto iii = additivity_check(omega, partition());
  EXPECT_EQ(iii.which, additivity_case::infinite_ring);
  EXPECT_TRUE(iii.holds);
  EXPECT_EQ(iii.union_value.to_string(), "-inf");

  auto scope = complement(y2);
  auto iv = additivity_check(finite_map(), partition(scope, {}), complement(algebra_set(rational_fiber(fin(3)))));
  EXPECT_EQ(iv.which, additivity_case::impossible_configuration);
  EXPECT_FALSE(iv.holds);

  auto with_extra = additivity_check(finite_map(), partition(scope, {}), y2);
  EXPECT_EQ(with_extra.which, additivity_case::infinite_ring);
  EXPECT_TRUE(with_extra.holds);

  try {
    additivity_check(lambda, std::vector<algebra_set>{y2, algebra_set(single(at(7, fin(2), 1)))});
    FAIL();
  } catch (const domain_error& e) {
    EXPECT_EQ(e.code(), error_code::not_disjoint);
  }
}

TEST(Extension, Examples) {
  auto y = algebra_set::everything();
  EXPECT_EQ(r_extension(alternating, ext(0), y).to_string(), "0");
  EXPECT_FALSE(countably_additive(alternating, ext(0)));
  EXPECT_EQ(r_extension(lambda, extended_value::plus_infinity(), y).to_string(), "+inf");
  EXPECT_TRUE(countably_additive(lambda, extended_value::plus_infinity()));
  EXPECT_EQ(r_extension(finite_map(), ext(5), y).to_string(), "5");
  EXPECT_FALSE(countably_additive(finite_map(), ext(5)));
  EXPECT_TRUE(countably_additive(finite_map(), ext(-2)));
}

TEST(Extension, FinitelyAdditiveForEveryR) {
  gen::rng r(55);
  std::vector<extended_value> rs{ext(0), ext(7), extended_value(map_value::exact(rational(-3, 2))),
                                 extended_value::plus_infinity(), extended_value::minus_infinity()};
  for (int i = 0; i < 100; ++i) {
    auto c = gen::any_map(r, {.allow_alternating = true});
    auto rr = gen::pick(r, rs);
    // Disjoint family: pieces of a ring set, optionally plus the complement of their union.
    auto whole = gen::any_ring_set(r);
    std::vector<algebra_set> parts;
    for (auto& piece : gen::shatter(r, whole, false)) parts.emplace_back(piece);
    if (i % 2) parts.push_back(complement(algebra_set(whole)));
    extended_value sum;
    algebra_set all;
    for (const auto& a : parts) {
      sum = sum + r_extension(c, rr, a);
      all = unite(all, a);
    }
    EXPECT_TRUE(same_value(sum, r_extension(c, rr, all))) << i;
  }
}
