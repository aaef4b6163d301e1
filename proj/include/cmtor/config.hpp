#ifndef CMTOR_CONFIG_HPP
#define CMTOR_CONFIG_HPP

#include <string>
#include <utility>
#include <vector>

#include "cmtor/bounds.hpp"
#include "cmtor/cm.hpp"
#include "cmtor/group.hpp"
#include "cmtor/torus.hpp"

namespace cmtor {

// One parsed `key = value` right-hand side. Scalars keep their raw token;
// numeric interpretation happens in the typed accessors so errors can cite
// the source line.
struct ConfigValue {
  int line = 0;
  bool isList = false;
  bool isNested = false;
  std::string scalar;
  std::vector<std::string> items;
  std::vector<std::vector<std::string>> rows;
};

struct ConfigBlock {
  std::string source;
  std::string type;  // group | cm | bounds | ring | filtration | cartan
  std::string name;
  int line = 0;
  std::vector<std::pair<std::string, ConfigValue>> entries;

  bool has(const std::string& key) const;
  const ConfigValue& get(const std::string& key) const;
  long long get_int(const std::string& key) const;
  long long get_int_or(const std::string& key, long long dflt) const;
  std::string get_word(const std::string& key) const;
  std::vector<std::string> get_list(const std::string& key) const;
  std::vector<long long> get_int_list(const std::string& key) const;
  std::vector<std::vector<long long>> get_int_rows(const std::string& key) const;
  // every present key must appear in `keys`
  void allow_keys(const std::vector<std::string>& keys) const;
};

struct ConfigStore {
  std::string source;
  std::vector<ConfigBlock> blocks;

  const ConfigBlock* find(const std::string& type, const std::string& name) const;
  const ConfigBlock& require(const std::string& type, const std::string& name) const;
  std::vector<const ConfigBlock*> of_type(const std::string& type) const;
};

// Line-oriented grammar:
//   [type name]        block header
//   key = value        value is an integer, a word, [items], or [[rows]]
//   # comment          (also allowed at end of line)
// Lists may span lines until brackets balance. Commas count as whitespace.
ConfigStore parse_config(const std::string& text, const std::string& sourceName = "<memory>");
ConfigStore load_config_file(const std::string& path);

// ---- typed builders ----

// keys: cyclotomic = m, or order = N with mul = [[rows]] and optional labels
GroupTable group_from_block(const ConfigBlock& b);

struct CmBundle {
  CmDatum datum;
  CmType type;
};

// keys: group (block reference), H = [labels], tau = label, S = [rep labels]
CmBundle cm_from_block(const ConfigBlock& b, const ConfigStore& store);

// keys: cm (block reference), ell, n, hK, muE, muStar, K_over_Estar,
// disc_E (optional), dim_T (optional), flags = [unramified-in-E,
// unramified-in-K, good-reduction, ell-divides-F]. g, r and |F| are derived
// from the referenced type; a declared ell-divides-F flag must match.
BoundContext bounds_from_block(const ConfigBlock& b, const ConfigStore& store);

// keys: ell, N, modulus = [low-to-high coeffs], tau = [coeffs]
FiniteRingDatum ring_from_block(const ConfigBlock& b);

// keys: ell, N, d, kMax
FiltrationSpec filtration_from_block(const ConfigBlock& b);

// keys: c, d, ell, n
CartanDatum cartan_from_block(const ConfigBlock& b);

}  // namespace cmtor

#endif
