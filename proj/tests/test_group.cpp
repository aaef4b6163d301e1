#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "cmtor/errors.hpp"
#include "cmtor/group.hpp"

using namespace cmtor;

namespace {

bool throws_named(const std::function<void()>& fn, ErrorKind kind, const std::string& name) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind && e.name() == name;
  }
  return false;
}

}  // namespace

TEST_CASE("cyclic table of order 4") {
  std::vector<std::vector<int>> mul = {
      {0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}};
  GroupTable G = build_group_from_table(mul);
  CHECK(G.order == 4);
  CHECK(G.identity == 0);
  CHECK(G.inverse(1) == 3);
  CHECK(G.inverse(2) == 2);
  CHECK(G.label(3) == "3");  // default labels are the indices
  CHECK(G.element_by_label("2") == 2);
  CHECK(element_order(G, 0) == 1);
  CHECK(element_order(G, 1) == 4);
  CHECK(element_order(G, 2) == 2);
}

TEST_CASE("table validation rejects bad input") {
  CHECK(throws_named([] { build_group_from_table({}); }, ErrorKind::Config, "NoIdentity"));
  CHECK(throws_named([] { build_group_from_table({{0, 1}, {1, 0}, {0, 1}}); }, ErrorKind::Config,
                     "NotLatinSquare"));
  // no two-sided identity at all
  CHECK(throws_named([] { build_group_from_table({{0, 0}, {1, 1}}); }, ErrorKind::Config,
                     "NoIdentity"));
  // identity present, second row repeats an entry
  CHECK(throws_named([] { build_group_from_table({{0, 1, 2}, {1, 1, 0}, {2, 0, 1}}); },
                     ErrorKind::Config, "NotLatinSquare"));
  // identity present, entry out of range
  CHECK(throws_named([] { build_group_from_table({{0, 1}, {1, 5}}); }, ErrorKind::Config,
                     "NotLatinSquare"));
  // labels must match the order
  CHECK(throws_named([] { build_group_from_table({{0, 1}, {1, 0}}, {"e"}); }, ErrorKind::Config,
                     "NotLatinSquare"));
  // no element labeled that way
  GroupTable G = build_group_from_table({{0, 1}, {1, 0}});
  CHECK(throws_named([&] { (void)G.element_by_label("q"); }, ErrorKind::Config, "UnknownLabel"));
}

TEST_CASE("latin square with two-sided inverses but no associativity") {
  // order 5 loop, every element its own inverse, (1*1)*2 != 1*(1*2)
  std::vector<std::vector<int>> loop = {{0, 1, 2, 3, 4},
                                        {1, 0, 3, 4, 2},
                                        {2, 4, 0, 1, 3},
                                        {3, 2, 4, 0, 1},
                                        {4, 3, 1, 2, 0}};
  CHECK(throws_named([&] { build_group_from_table(loop); }, ErrorKind::Config, "NonAssociative"));
}

TEST_CASE("group order cap") {
  std::vector<std::vector<int>> mul(kMaxGroupOrder + 1,
                                    std::vector<int>(kMaxGroupOrder + 1));
  for (int a = 0; a <= kMaxGroupOrder; ++a)
    for (int b = 0; b <= kMaxGroupOrder; ++b) mul[a][b] = (a + b) % (kMaxGroupOrder + 1);
  CHECK(throws_named([&] { build_group_from_table(mul); }, ErrorKind::Resource, "TooLarge"));
}

TEST_CASE("unit groups mod m") {
  GroupTable G5 = build_cyclotomic_group(5);
  CHECK(G5.order == 4);
  CHECK(G5.label(G5.identity) == "1");
  CHECK(G5.minusOne == G5.element_by_label("4"));
  CHECK(element_order(G5, G5.element_by_label("2")) == 4);
  CHECK(element_order(G5, G5.element_by_label("4")) == 2);

  GroupTable G8 = build_cyclotomic_group(8);
  CHECK(G8.order == 4);
  for (int a = 0; a < G8.order; ++a) CHECK(G8.op(a, a) == G8.identity);

  CHECK(build_cyclotomic_group(12).order == 4);
  CHECK(build_cyclotomic_group(50).order == 20);

  CHECK(throws_named([] { build_cyclotomic_group(2); }, ErrorKind::Config, "ModulusTooSmall"));
  CHECK(throws_named([] { build_cyclotomic_group(51); }, ErrorKind::Resource, "TooLarge"));
}

TEST_CASE("subgroup validation") {
  GroupTable G = build_cyclotomic_group(8);
  Subgroup trivial = subgroup_from_indices(G, {});
  CHECK(trivial.size() == 1);
  CHECK(trivial.contains(G.identity));

  Subgroup half = subgroup_from_labels(G, {"1", "7"});
  CHECK(half.size() == 2);

  // {3} misses the identity and is not closed
  CHECK(throws_named([&] { subgroup_from_indices(G, {G.element_by_label("3")}); },
                     ErrorKind::Config, "NotSubgroup"));
  CHECK(throws_named([&] { subgroup_from_indices(G, {99}); }, ErrorKind::Config, "NotSubgroup"));
}

TEST_CASE("coset space partitions the group") {
  GroupTable G = build_cyclotomic_group(16);  // order 8
  Subgroup H = subgroup_from_labels(G, {"1", "7"});
  CosetSpace C = right_coset_space(G, H);
  CHECK(C.count == 4);
  CHECK(std::is_sorted(C.reps.begin(), C.reps.end()));
  for (int x = 0; x < G.order; ++x) {
    int c = C.cosetOf[x];
    CHECK(c >= 0);
    CHECK(c < C.count);
    // x lies in the coset of its representative
    bool found = false;
    for (int h : H.members)
      if (G.op(h, C.reps[c]) == x) found = true;
    CHECK(found);
  }
  for (int c = 0; c < C.count; ++c) CHECK(C.cosetOf[C.reps[c]] == c);
}

TEST_CASE("right action is a group action") {
  struct Case {
    GroupTable G;
    Subgroup H;
  };
  std::vector<Case> cases;
  {
    GroupTable G = build_cyclotomic_group(13);
    Subgroup H = subgroup_from_indices(G, {});
    cases.push_back({std::move(G), std::move(H)});
  }
  {
    GroupTable G = build_cyclotomic_group(16);
    Subgroup H = subgroup_from_labels(G, {"1", "7"});
    cases.push_back({std::move(G), std::move(H)});
  }
  for (const Case& k : cases) {
    CosetSpace C = right_coset_space(k.G, k.H);
    for (int c = 0; c < C.count; ++c) {
      CHECK(act_right(k.G, C, c, k.G.identity) == c);
      for (int x = 0; x < k.G.order; ++x)
        for (int y = 0; y < k.G.order; ++y)
          CHECK(act_right(k.G, C, act_right(k.G, C, c, x), y) ==
                act_right(k.G, C, c, k.G.op(x, y)));
    }
  }
}
