#include "cmtor/group.hpp"

#include <algorithm>
#include <numeric>

#include "cmtor/errors.hpp"

namespace cmtor {

namespace {

std::string triple_str(const GroupTable& G, int a, int b, int c) {
  return "(" + G.label(a) + ", " + G.label(b) + ", " + G.label(c) + ")";
}

void validate_table(const GroupTable& G) {
  const int n = G.order;
  // Latin square: every row and column is a permutation.
  for (int a = 0; a < n; ++a) {
    std::vector<char> seenRow(n, 0), seenCol(n, 0);
    for (int b = 0; b < n; ++b) {
      int rv = G.mul[a][b];
      int cv = G.mul[b][a];
      if (rv < 0 || rv >= n || cv < 0 || cv >= n)
        fail_config("NotLatinSquare", "entry out of range in row " + G.label(a));
      if (seenRow[rv]) fail_config("NotLatinSquare", "row " + G.label(a) + " repeats " + G.label(rv));
      if (seenCol[cv]) fail_config("NotLatinSquare", "column " + G.label(a) + " repeats " + G.label(cv));
      seenRow[rv] = seenCol[cv] = 1;
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (G.mul[a][G.mul[b][c]] != G.mul[G.mul[a][b]][c])
          fail_config("NonAssociative", "first violating triple " + triple_str(G, a, b, c));
}

}  // namespace

int GroupTable::element_by_label(const std::string& lbl) const {
  for (int i = 0; i < order; ++i)
    if (labels[i] == lbl) return i;
  fail_config("UnknownLabel", "no element labeled '" + lbl + "'");
}

GroupTable build_group_from_table(const std::vector<std::vector<int>>& mul,
                                  std::vector<std::string> labels) {
  const int n = static_cast<int>(mul.size());
  if (n < 1) fail_config("NoIdentity", "empty multiplication table");
  if (n > kMaxGroupOrder)
    fail_resource("TooLarge", "group order " + std::to_string(n) + " exceeds cap " +
                                  std::to_string(kMaxGroupOrder));
  for (const auto& row : mul)
    if (static_cast<int>(row.size()) != n)
      fail_config("NotLatinSquare", "table is not square");

  GroupTable G;
  G.order = n;
  G.mul = mul;
  if (labels.empty()) {
    for (int i = 0; i < n; ++i) G.labels.push_back(std::to_string(i));
  } else {
    if (static_cast<int>(labels.size()) != n)
      fail_config("NotLatinSquare", "label count does not match order");
    G.labels = std::move(labels);
  }

  int e = -1;
  for (int i = 0; i < n && e < 0; ++i) {
    bool ok = true;
    for (int a = 0; a < n; ++a)
      if (G.mul[i][a] != a || G.mul[a][i] != a) { ok = false; break; }
    if (ok) e = i;
  }
  if (e < 0) fail_config("NoIdentity", "no two-sided identity element");
  G.identity = e;

  validate_table(G);

  G.inv.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (G.mul[a][b] == e && G.mul[b][a] == e) { G.inv[a] = b; break; }
    }
    if (G.inv[a] < 0)
      fail_config("NoIdentity", "element " + G.label(a) + " has no two-sided inverse");
  }
  return G;
}

GroupTable build_cyclotomic_group(long long m) {
  if (m < 3) fail_config("ModulusTooSmall", "modulus " + std::to_string(m) + " < 3");
  if (m > 50) fail_resource("TooLarge", "modulus " + std::to_string(m) + " exceeds cap 50");

  std::vector<long long> units;
  for (long long a = 1; a < m; ++a)
    if (std::gcd(a, m) == 1) units.push_back(a);

  const int n = static_cast<int>(units.size());
  std::vector<int> pos(m, -1);
  for (int i = 0; i < n; ++i) pos[units[i]] = i;

  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mul[i][j] = pos[(units[i] * units[j]) % m];

  std::vector<std::string> labels;
  for (long long u : units) labels.push_back(std::to_string(u));

  GroupTable G = build_group_from_table(mul, labels);
  G.minusOne = pos[m - 1];
  return G;
}

Subgroup subgroup_from_indices(const GroupTable& G, std::vector<int> idx) {
  for (int x : idx)
    if (x < 0 || x >= G.order) fail_config("NotSubgroup", "element index out of range");
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  if (idx.empty()) idx.push_back(G.identity);

  Subgroup H;
  H.members = idx;
  H.inSet.assign(G.order, 0);
  for (int x : idx) H.inSet[x] = 1;

  if (!H.contains(G.identity)) fail_config("NotSubgroup", "identity not a member");
  for (int a : idx) {
    if (!H.contains(G.inverse(a)))
      fail_config("NotSubgroup", "inverse of " + G.label(a) + " not a member");
    for (int b : idx)
      if (!H.contains(G.op(a, b)))
        fail_config("NotSubgroup", "product " + G.label(a) + "*" + G.label(b) + " = " +
                                       G.label(G.op(a, b)) + " not a member");
  }
  return H;
}

Subgroup subgroup_from_labels(const GroupTable& G, const std::vector<std::string>& labels) {
  std::vector<int> idx;
  for (const auto& lbl : labels) idx.push_back(G.element_by_label(lbl));
  return subgroup_from_indices(G, idx);
}

CosetSpace right_coset_space(const GroupTable& G, const Subgroup& H) {
  CosetSpace C;
  C.cosetOf.assign(G.order, -1);
  // scanning elements in index order makes each coset's first-seen element its
  // minimal one, so cosets come out ordered by canonical representative
  for (int x = 0; x < G.order; ++x) {
    if (C.cosetOf[x] >= 0) continue;
    int idx = C.count++;
    C.reps.push_back(x);
    for (int h : H.members) C.cosetOf[G.op(h, x)] = idx;
    if (C.cosetOf[x] != idx)
      fail_invariant("InconsistentCosets", "representative not in its own coset");
  }
  if (C.count * H.size() != G.order)
    fail_invariant("InconsistentCosets", "cosets do not partition the group evenly");
  return C;
}

int act_right(const GroupTable& G, const CosetSpace& C, int c, int x) {
  return C.cosetOf[G.op(C.reps[c], x)];
}

int element_order(const GroupTable& G, int x) {
  int k = 1, y = x;
  while (y != G.identity) {
    y = G.op(y, x);
    ++k;
  }
  return k;
}

}  // namespace cmtor
