#ifndef CMTOR_GROUP_HPP
#define CMTOR_GROUP_HPP

#include <string>
#include <vector>

namespace cmtor {

inline constexpr int kMaxGroupOrder = 48;

// Finite group stored as a full Cayley table. Elements are indices
// 0..order-1; labels are the display names used in configs and reports.
struct GroupTable {
  int order = 0;
  std::vector<std::vector<int>> mul;  // mul[a][b] = a*b
  int identity = 0;
  std::vector<int> inv;
  std::vector<std::string> labels;
  int minusOne = -1;  // for unit groups mod m: index of the residue -1, else -1

  int op(int a, int b) const { return mul[a][b]; }
  int inverse(int a) const { return inv[a]; }
  const std::string& label(int a) const { return labels[a]; }
  // index of the element with the given label; Config error if absent
  int element_by_label(const std::string& lbl) const;
};

GroupTable build_group_from_table(const std::vector<std::vector<int>>& mul,
                                  std::vector<std::string> labels = {});

// (Z/m)^x with elements labeled by their residues; 3 <= m <= 50
GroupTable build_cyclotomic_group(long long m);

struct Subgroup {
  std::vector<int> members;   // sorted element indices
  std::vector<char> inSet;    // size order
  bool contains(int x) const { return inSet[x] != 0; }
  int size() const { return static_cast<int>(members.size()); }
};

// Validates closure under mul/inv and identity membership; the empty list
// denotes the trivial subgroup.
Subgroup subgroup_from_indices(const GroupTable& G, std::vector<int> idx);
Subgroup subgroup_from_labels(const GroupTable& G, const std::vector<std::string>& labels);

// Right cosets H\G. Canonical representative = smallest element index;
// cosets are ordered by their representative.
struct CosetSpace {
  int count = 0;
  std::vector<int> reps;
  std::vector<int> cosetOf;  // size order
};

CosetSpace right_coset_space(const GroupTable& G, const Subgroup& H);

// index of the coset H*(rep(c)*x): the right action of G on H\G
int act_right(const GroupTable& G, const CosetSpace& C, int c, int x);

int element_order(const GroupTable& G, int x);

}  // namespace cmtor

#endif
