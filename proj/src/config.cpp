#include "cmtor/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "cmtor/errors.hpp"
#include "cmtor/numeric.hpp"
#include "cmtor/lattice.hpp"

namespace cmtor {

namespace {

[[noreturn]] void parse_fail(const std::string& source, int line, const std::string& msg) {
  fail_config("ConfigParseError", source + ":" + std::to_string(line) + ": " + msg);
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '+' ||
         c == '*' || c == '^' || c == '.' || c == '/';
}

std::vector<std::string> tokenize(const std::string& source, int line, const std::string& text) {
  std::vector<std::string> toks;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == ',' || c == '\r' || c == '\n') {
      ++i;
    } else if (c == '[' || c == ']') {
      toks.emplace_back(1, c);
      ++i;
    } else if (word_char(c)) {
      size_t j = i;
      while (j < text.size() && word_char(text[j])) ++j;
      toks.push_back(text.substr(i, j - i));
      i = j;
    } else {
      parse_fail(source, line, std::string("unexpected character '") + c + "' in value");
    }
  }
  return toks;
}

long long parse_int_token(const std::string& source, int line, const std::string& tok) {
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    parse_fail(source, line, "expected an integer, got '" + tok + "'");
  }
  if (pos != tok.size()) parse_fail(source, line, "expected an integer, got '" + tok + "'");
  return v;
}

ConfigValue parse_value(const std::string& source, int line, const std::string& text) {
  std::vector<std::string> toks = tokenize(source, line, text);
  if (toks.empty()) parse_fail(source, line, "missing value after '='");

  ConfigValue v;
  v.line = line;
  if (toks[0] != "[") {
    if (toks.size() != 1)
      parse_fail(source, line, "scalar value must be a single token, got '" + toks[1] + "' after '" +
                                   toks[0] + "'");
    v.scalar = toks[0];
    return v;
  }
  if (toks.back() != "]") parse_fail(source, line, "unbalanced brackets in value");

  v.isList = true;
  size_t i = 1;
  bool sawRow = false, sawItem = false;
  while (i + 1 < toks.size()) {
    if (toks[i] == "[") {
      sawRow = true;
      std::vector<std::string> row;
      ++i;
      while (i + 1 < toks.size() && toks[i] != "]") {
        if (toks[i] == "[") parse_fail(source, line, "lists nest at most two levels");
        row.push_back(toks[i]);
        ++i;
      }
      if (i + 1 >= toks.size() || toks[i] != "]")
        parse_fail(source, line, "unbalanced brackets in value");
      ++i;
      v.rows.push_back(std::move(row));
    } else if (toks[i] == "]") {
      parse_fail(source, line, "unbalanced brackets in value");
    } else {
      sawItem = true;
      v.items.push_back(toks[i]);
      ++i;
    }
  }
  if (sawRow && sawItem) parse_fail(source, line, "cannot mix items and nested lists");
  v.isNested = sawRow;
  return v;
}

}  // namespace

bool ConfigBlock::has(const std::string& key) const {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const auto& e) { return e.first == key; });
}

const ConfigValue& ConfigBlock::get(const std::string& key) const {
  for (const auto& e : entries)
    if (e.first == key) return e.second;
  parse_fail(source, line, "[" + type + " " + name + "] is missing required key '" + key + "'");
}

long long ConfigBlock::get_int(const std::string& key) const {
  const ConfigValue& v = get(key);
  if (v.isList) parse_fail(source, v.line, "key '" + key + "' must be a single integer");
  return parse_int_token(source, v.line, v.scalar);
}

long long ConfigBlock::get_int_or(const std::string& key, long long dflt) const {
  return has(key) ? get_int(key) : dflt;
}

std::string ConfigBlock::get_word(const std::string& key) const {
  const ConfigValue& v = get(key);
  if (v.isList) parse_fail(source, v.line, "key '" + key + "' must be a single word");
  return v.scalar;
}

std::vector<std::string> ConfigBlock::get_list(const std::string& key) const {
  const ConfigValue& v = get(key);
  if (!v.isList || v.isNested)
    parse_fail(source, v.line, "key '" + key + "' must be a flat [list]");
  return v.items;
}

std::vector<long long> ConfigBlock::get_int_list(const std::string& key) const {
  const ConfigValue& v = get(key);
  if (!v.isList || v.isNested)
    parse_fail(source, v.line, "key '" + key + "' must be a flat [list] of integers");
  std::vector<long long> out;
  for (const auto& t : v.items) out.push_back(parse_int_token(source, v.line, t));
  return out;
}

std::vector<std::vector<long long>> ConfigBlock::get_int_rows(const std::string& key) const {
  const ConfigValue& v = get(key);
  if (!v.isList || !v.isNested)
    parse_fail(source, v.line, "key '" + key + "' must be a nested [[list]] of integer rows");
  std::vector<std::vector<long long>> out;
  for (const auto& row : v.rows) {
    std::vector<long long> r;
    for (const auto& t : row) r.push_back(parse_int_token(source, v.line, t));
    out.push_back(std::move(r));
  }
  return out;
}

void ConfigBlock::allow_keys(const std::vector<std::string>& keys) const {
  for (const auto& e : entries)
    if (std::find(keys.begin(), keys.end(), e.first) == keys.end())
      parse_fail(source, e.second.line,
                 "unknown key '" + e.first + "' in [" + type + " " + name + "]");
}

const ConfigBlock* ConfigStore::find(const std::string& type, const std::string& name) const {
  for (const auto& b : blocks)
    if (b.type == type && b.name == name) return &b;
  return nullptr;
}

const ConfigBlock& ConfigStore::require(const std::string& type, const std::string& name) const {
  const ConfigBlock* b = find(type, name);
  if (!b)
    fail_config("ConfigParseError",
                source + ": no [" + type + " " + name + "] block found");
  return *b;
}

std::vector<const ConfigBlock*> ConfigStore::of_type(const std::string& type) const {
  std::vector<const ConfigBlock*> out;
  for (const auto& b : blocks)
    if (b.type == type) out.push_back(&b);
  return out;
}

ConfigStore parse_config(const std::string& text, const std::string& sourceName) {
  static const std::vector<std::string> kBlockTypes = {"group",      "cm",     "bounds",
                                                       "ring",       "filtration", "cartan"};
  ConfigStore store;
  store.source = sourceName;

  std::istringstream in(text);
  std::string raw;
  int lineNo = 0;
  ConfigBlock* current = nullptr;

  while (std::getline(in, raw)) {
    ++lineNo;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[' && line.back() == ']' &&
        line.find('=') == std::string::npos) {
      std::istringstream hdr(line.substr(1, line.size() - 2));
      std::string type, name, extra;
      if (!(hdr >> type >> name) || (hdr >> extra))
        parse_fail(sourceName, lineNo, "block header must be [type name]");
      if (std::find(kBlockTypes.begin(), kBlockTypes.end(), type) == kBlockTypes.end())
        parse_fail(sourceName, lineNo, "unknown block type '" + type + "'");
      if (store.find(type, name))
        parse_fail(sourceName, lineNo, "duplicate block [" + type + " " + name + "]");
      ConfigBlock b;
      b.source = sourceName;
      b.type = type;
      b.name = name;
      b.line = lineNo;
      store.blocks.push_back(std::move(b));
      current = &store.blocks.back();
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string::npos)
      parse_fail(sourceName, lineNo, "expected 'key = value' or a [type name] header");
    if (!current) parse_fail(sourceName, lineNo, "key/value outside of any block");

    std::string key = trim(line.substr(0, eq));
    if (key.empty() || !std::all_of(key.begin(), key.end(), word_char))
      parse_fail(sourceName, lineNo, "invalid key '" + key + "'");
    if (current->has(key))
      parse_fail(sourceName, lineNo, "duplicate key '" + key + "' in [" + current->type + " " +
                                         current->name + "]");

    std::string value = line.substr(eq + 1);
    int startLine = lineNo;
    long long depth = std::count(value.begin(), value.end(), '[') -
                      std::count(value.begin(), value.end(), ']');
    while (depth > 0 && std::getline(in, raw)) {
      ++lineNo;
      std::string more = strip_comment(raw);
      value += ' ' + more;
      depth += std::count(more.begin(), more.end(), '[') -
               std::count(more.begin(), more.end(), ']');
    }
    if (depth != 0) parse_fail(sourceName, startLine, "unbalanced brackets in value");

    current->entries.emplace_back(key, parse_value(sourceName, startLine, value));
  }
  return store;
}

ConfigStore load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_config("ConfigParseError", "cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

GroupTable group_from_block(const ConfigBlock& b) {
  if (b.has("cyclotomic")) {
    b.allow_keys({"cyclotomic"});
    return build_cyclotomic_group(b.get_int("cyclotomic"));
  }
  b.allow_keys({"order", "mul", "labels"});
  long long order = b.get_int("order");
  auto rows = b.get_int_rows("mul");
  if (static_cast<long long>(rows.size()) != order)
    parse_fail(b.source, b.get("mul").line,
               "mul table has " + std::to_string(rows.size()) + " rows, order says " +
                   std::to_string(order));
  std::vector<std::vector<int>> mul;
  for (const auto& r : rows) {
    std::vector<int> ri;
    for (long long v : r) ri.push_back(static_cast<int>(v));
    mul.push_back(std::move(ri));
  }
  std::vector<std::string> labels;
  if (b.has("labels")) labels = b.get_list("labels");
  return build_group_from_table(mul, std::move(labels));
}

CmBundle cm_from_block(const ConfigBlock& b, const ConfigStore& store) {
  b.allow_keys({"group", "H", "tau", "S"});
  GroupTable G = group_from_block(store.require("group", b.get_word("group")));
  Subgroup H = subgroup_from_labels(G, b.get_list("H"));
  int tau = G.element_by_label(b.get_word("tau"));

  CmBundle out;
  out.datum = validate_cm_datum(std::move(G), std::move(H), tau);
  std::vector<int> cosetIdx;
  for (const auto& lbl : b.get_list("S")) {
    int e = out.datum.G.element_by_label(lbl);
    int c = out.datum.cosets.cosetOf[e];
    if (std::find(cosetIdx.begin(), cosetIdx.end(), c) != cosetIdx.end())
      parse_fail(b.source, b.get("S").line, "label '" + lbl + "' repeats a coset in S");
    cosetIdx.push_back(c);
  }
  out.type = validate_cm_type(out.datum, std::move(cosetIdx));
  return out;
}

BoundContext bounds_from_block(const ConfigBlock& b, const ConfigStore& store) {
  b.allow_keys({"cm", "ell", "n", "hK", "muE", "muStar", "K_over_Estar", "disc_E", "dim_T",
                "flags"});
  CmBundle cm = cm_from_block(store.require("cm", b.get_word("cm")), store);
  ReflexDatum X = compute_reflex(cm.datum, cm.type);
  ReflexNormMatrix nm = reflex_norm_matrix(cm.datum, X);
  MtInvariants inv = mt_invariants(nm.M, cm.datum.g);

  BoundContext ctx;
  ctx.g = cm.datum.g;
  ctx.r = inv.rank;
  ctx.orderF = inv.orderF;
  ctx.ell = b.get_int("ell");
  ctx.n = static_cast<int>(b.get_int("n"));
  ctx.hK = z_ll(b.get_int("hK"));
  ctx.muE = b.get_int("muE");
  ctx.muStar = b.get_int("muStar");
  ctx.degKoverEstar = z_ll(b.get_int("K_over_Estar"));
  ctx.discE = z_ll(b.get_int_or("disc_E", 0));
  ctx.dimT = static_cast<int>(b.get_int_or("dim_T", 0));

  if (b.has("flags")) {
    bool declaredEllDividesF = false;
    for (const auto& f : b.get_list("flags")) {
      if (f == "unramified-in-E") {
        ctx.unramifiedE = true;
      } else if (f == "unramified-in-K") {
        ctx.unramifiedK = true;
      } else if (f == "good-reduction") {
        ctx.goodReduction = true;
      } else if (f == "ell-divides-F") {
        declaredEllDividesF = true;
      } else {
        parse_fail(b.source, b.get("flags").line, "unknown flag '" + f + "'");
      }
    }
    bool derived = mpz_divisible_ui_p(ctx.orderF.get_mpz_t(),
                                      static_cast<unsigned long>(ctx.ell)) != 0;
    if (declaredEllDividesF != derived)
      parse_fail(b.source, b.get("flags").line,
                 std::string("ell-divides-F flag ") + (declaredEllDividesF ? "set" : "not set") +
                     " but |F| = " + ctx.orderF.get_str() + " says otherwise");
  }
  validate_bound_context(ctx);
  return ctx;
}

FiniteRingDatum ring_from_block(const ConfigBlock& b) {
  b.allow_keys({"ell", "N", "modulus", "tau"});
  return make_ring(b.get_int("ell"), static_cast<int>(b.get_int("N")),
                   b.get_int_list("modulus"), b.get_int_list("tau"));
}

FiltrationSpec filtration_from_block(const ConfigBlock& b) {
  b.allow_keys({"ell", "N", "d", "kMax"});
  FiltrationSpec s;
  s.ell = b.get_int("ell");
  s.N = static_cast<int>(b.get_int("N"));
  s.d = b.get_int("d");
  s.kMax = static_cast<int>(b.get_int("kMax"));
  return s;
}

CartanDatum cartan_from_block(const ConfigBlock& b) {
  b.allow_keys({"c", "d", "ell", "n"});
  CartanDatum d;
  d.c = b.get_int("c");
  d.d = b.get_int("d");
  d.ell = b.get_int("ell");
  d.n = static_cast<int>(b.get_int("n"));
  return d;
}

}  // namespace cmtor
