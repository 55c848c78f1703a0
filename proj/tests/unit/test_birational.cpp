#include <algorithm>
#include <optional>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "toric/birational.hpp"
#include "toric/error.hpp"
#include "toric/primitive.hpp"

using namespace toric;

namespace {

PrimitiveRelation relation_of(const LatticeFan& f, std::initializer_list<const char*> names) {
  return primitive_relation(f, fixtures::labels(f, names));
}

bool blowdown_shaped(const PrimitiveRelation& r) {
  return r.focus.size() == 1 && r.coefficients[0] == 1 && r.collection.size() >= 2;
}

bool flip_shaped(const PrimitiveRelation& r) {
  return r.collection.size() >= 2 && r.focus.size() >= 2 &&
         std::all_of(r.coefficients.begin(), r.coefficients.end(), [](const Integer& c) { return c == 1; });
}

std::vector<LatticeFan> test_fans() {
  auto fans = fixtures::small_fans();
  for (const auto& id : fixtures::m2_ids()) fans.push_back(fixtures::listed(id));
  for (const auto& id : fixtures::m3_ids()) fans.push_back(fixtures::listed(id));
  fans.push_back(build_bundle_over_p1({0, 1, 1}));
  return fans;
}

LatticeFan random_blowup_chain(std::mt19937& rng, LatticeFan f, int steps) {
  for (int s = 0; s < steps; ++s) {
    const auto faces = faces_of_dim(f, 2 + static_cast<int>(rng() % static_cast<unsigned>(f.rank() - 1)));
    f = blowup(f, faces[rng() % faces.size()]).fan;
  }
  return f;
}

// The flip undoing `r` on the flipped fan: collection and focus swap roles.
PrimitiveRelation reverse_of(const LatticeFan& flipped, const PrimitiveRelation& r) {
  const auto back = primitive_relation(flipped, r.focus);
  REQUIRE(back.focus == r.collection);
  return back;
}

}  // namespace

TEST_CASE("contractibility of listed relations") {
  const auto b3 = fixtures::b3();
  for (const auto& r : primitive_relations(b3)) CHECK(is_contractible(b3, r));

  for (const auto& id : {"gr5_550", "gr5_659", "gr5_708"}) {
    const auto f = fixtures::listed(id);
    for (auto names : {std::initializer_list<const char*>{"x0", "c"}, {"x1", "a"}, {"x2", "b"}, {"u", "v"},
                       {"b", "y1", "y2"}})
      CHECK(is_contractible(f, relation_of(f, names)));
  }
  for (const auto& id : {"gr6_276", "gr6_333", "gr6_338"}) {
    const auto f = fixtures::listed(id);
    for (auto names : {std::initializer_list<const char*>{"x0", "c"}, {"x1", "a"}, {"x2", "b"},
                       {"y0", "y1", "y2", "c"}, {"z1", "z2"}})
      CHECK(is_contractible(f, relation_of(f, names)));
  }
  {
    const auto f = fixtures::listed("gr6_2170");
    CHECK_FALSE(is_contractible(f, relation_of(f, {"x0", "x1", "b"})));
    CHECK_FALSE(is_contractible(f, relation_of(f, {"x2", "x3", "a"})));
    CHECK(is_contractible(f, relation_of(f, {"a", "b"})));
    CHECK(is_contractible(f, relation_of(f, {"x0", "x1", "t"})));
    CHECK(is_contractible(f, relation_of(f, {"x2", "x3", "t"})));
  }
  {
    const auto f = fixtures::listed("gr6_2268");
    CHECK_FALSE(is_contractible(f, relation_of(f, {"x0", "x1", "x2", "b"})));
    CHECK(is_contractible(f, relation_of(f, {"y0", "b"})));
    CHECK(is_contractible(f, relation_of(f, {"x0", "x1", "x2", "a"})));
  }
}

TEST_CASE("degree-one relations of Fano fans are contractible") {
  for (const auto& f : test_fans()) {
    if (!is_fano(f)) continue;
    for (const auto& r : primitive_relations(f))
      if (r.degree == 1) CHECK(is_contractible(f, r));
  }
}

TEST_CASE("blowdown of B3 is P3") {
  const auto b3 = fixtures::b3();
  const auto down = contract(b3, relation_of(b3, {"v2", "v3"}));
  CHECK(down == fixtures::p3_b3_order());
  CHECK_THROWS_AS(contract(b3, relation_of(b3, {"v1", "v0", "b"})), Error);
}

TEST_CASE("contract after blowup is the identity") {
  std::mt19937 rng(21);
  const auto fans = test_fans();
  int done = 0;
  for (int trial = 0; done < 50; ++trial) {
    const LatticeFan f = random_blowup_chain(rng, fans[rng() % fans.size()], static_cast<int>(rng() % 2));
    const auto faces = faces_of_dim(f, 2 + static_cast<int>(rng() % static_cast<unsigned>(f.rank() - 1)));
    const RaySet center = faces[rng() % faces.size()];
    const auto up = blowup(f, center, "z");
    CHECK(up.relation.collection == center);
    CHECK(up.relation.focus == RaySet{f.ray_count()});
    CHECK(up.relation.degree == static_cast<long>(center.size()) - 1);
    CHECK(is_contractible(up.fan, up.relation));
    CHECK(contract(up.fan, up.relation) == f);
    ++done;
  }
}

TEST_CASE("collection transfer across blowups") {
  std::mt19937 rng(22);
  const auto fans = test_fans();
  for (int trial = 0; trial < 60; ++trial) {
    const LatticeFan f = random_blowup_chain(rng, fans[rng() % fans.size()], static_cast<int>(rng() % 2));
    const auto faces = faces_of_dim(f, 2 + static_cast<int>(rng() % static_cast<unsigned>(f.rank() - 1)));
    const RaySet center = faces[rng() % faces.size()];
    const auto up = blowup(f, center);
    auto predicted = predicted_collections_after_blowup(f, center);
    std::sort(predicted.begin(), predicted.end(), LexLess{});
    CHECK(predicted == primitive_collections(up.fan));
  }
}

TEST_CASE("collection transfer across blowdowns") {
  std::mt19937 rng(23);
  auto fans = test_fans();
  for (int i = 0; i < 30; ++i) fans.push_back(random_blowup_chain(rng, fans[rng() % 7], 1 + static_cast<int>(rng() % 2)));
  int checked = 0;
  for (const auto& f : fans) {
    for (const auto& r : primitive_relations(f)) {
      if (!blowdown_shaped(r) || !is_contractible(f, r)) continue;
      LatticeFan down;
      try {
        down = contract(f, r);
      } catch (const Error&) {
        continue;  // contractible, but the blowdown is not smooth
      }
      auto predicted = predicted_collections_after_blowdown(f, r);
      std::sort(predicted.begin(), predicted.end(), LexLess{});
      CHECK(predicted == primitive_collections(down));
      ++checked;
    }
  }
  CHECK(checked > 40);
}

TEST_CASE("flips: blowup-blowdown agrees with surgery, reverse flip restores") {
  std::mt19937 rng(24);
  auto fans = test_fans();
  for (int i = 0; i < 40; ++i) {
    const auto& base = fans[rng() % fans.size()];
    fans.push_back(random_blowup_chain(rng, base, 1 + static_cast<int>(rng() % 3)));
  }
  int checked = 0;
  for (const auto& f : fans) {
    for (const auto& r : primitive_relations(f)) {
      if (!flip_shaped(r) || !is_contractible(f, r)) continue;
      const auto g = flip(f, r);
      CHECK(g == flip_by_surgery(f, r));
      CHECK(g.rays() == f.rays());
      CHECK(validate(g).ok());
      const auto back = reverse_of(g, r);
      CHECK(is_contractible(g, back));
      CHECK(flip(g, back) == f);
      ++checked;
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("flip preconditions") {
  const auto b3 = fixtures::b3();
  CHECK_THROWS_AS(flip(b3, relation_of(b3, {"v2", "v3"})), Error);
  const auto f = fixtures::listed("gr6_2268");
  // r8 has the right shape but is not contractible
  try {
    flip(f, relation_of(f, {"x0", "x1", "x2", "b"}));
    FAIL("flip of a non-contractible relation succeeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::flip);
  }
}

TEST_CASE("multi_flip is independent of order") {
  std::mt19937 rng(3);
  const auto fans = test_fans();
  int pairs = 0, triples = 0;
  for (int trial = 0; trial < 300 && (pairs < 10 || triples < 2); ++trial) {
    const LatticeFan f = random_blowup_chain(rng, fans[rng() % fans.size()], 1 + static_cast<int>(rng() % 3));
    std::vector<PrimitiveRelation> fl;
    for (const auto& r : primitive_relations(f))
      if (flip_shaped(r) && is_contractible(f, r)) fl.push_back(r);
    // keep a set of flips with pairwise non-spanning foci
    std::vector<PrimitiveRelation> chosen;
    for (const auto& r : fl) {
      bool ok = true;
      for (const auto& c : chosen) ok = ok && !f.spans_cone(c.focus | r.focus);
      if (ok) chosen.push_back(r);
    }
    if (chosen.size() < 2) continue;
    if (chosen.size() > 3) chosen.resize(3);
    std::vector<std::size_t> order(chosen.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::optional<LatticeFan> first;
    bool all_ok = true;
    do {
      std::vector<PrimitiveRelation> rs;
      for (auto i : order) rs.push_back(chosen[i]);
      try {
        const auto g = multi_flip(f, rs);
        if (!first) first = g;
        CHECK(g == *first);
      } catch (const Error&) {
        all_ok = false;
      }
    } while (std::next_permutation(order.begin(), order.end()));
    if (!all_ok) continue;
    (chosen.size() == 2 ? pairs : triples)++;
  }
  CHECK(pairs >= 10);
  CHECK(triples >= 1);
}

TEST_CASE("multi_flip rejects foci spanning a common cone") {
  const auto x = build_bundle_over_p1({0, 1, 1});
  const auto xx = product(x, x);
  std::vector<PrimitiveRelation> fl;
  for (const auto& r : primitive_relations(xx))
    if (flip_shaped(r)) fl.push_back(r);
  REQUIRE(fl.size() == 2);
  CHECK(xx.spans_cone(fl[0].focus | fl[1].focus));
  try {
    multi_flip(xx, fl);
    FAIL("expected a disjointness error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::disjointness);
  }
  // Each flip on its own is fine.
  CHECK(validate(flip(xx, fl[0])).ok());
}
