#include "cmtor/cm.hpp"

#include <algorithm>

#include "cmtor/errors.hpp"

namespace cmtor {

CmDatum validate_cm_datum(GroupTable G, Subgroup H, int tau) {
  if (tau < 0 || tau >= G.order) fail_config("UnknownLabel", "tau index out of range");
  if (tau == G.identity) fail_config("TauNotInvolution", "tau is the identity");
  if (G.op(tau, tau) != G.identity)
    fail_config("TauNotInvolution", "tau*tau = " + G.label(G.op(tau, tau)));

  CmDatum D;
  D.cosets = right_coset_space(G, H);
  if (D.cosets.count % 2 != 0)
    fail_config("OddCosetCount", std::to_string(D.cosets.count) + " cosets");
  D.g = D.cosets.count / 2;

  D.tauOnCosets.resize(D.cosets.count);
  for (int c = 0; c < D.cosets.count; ++c) {
    int ct = act_right(G, D.cosets, c, tau);
    if (ct == c)
      fail_config("TauFixesACoset",
                  "coset of " + G.label(D.cosets.reps[c]) + " is fixed; no CM type exists");
    D.tauOnCosets[c] = ct;
  }

  D.G = std::move(G);
  D.H = std::move(H);
  D.tau = tau;
  return D;
}

CmType validate_cm_type(const CmDatum& D, std::vector<int> cosetIdx) {
  std::sort(cosetIdx.begin(), cosetIdx.end());
  cosetIdx.erase(std::unique(cosetIdx.begin(), cosetIdx.end()), cosetIdx.end());
  for (int c : cosetIdx)
    if (c < 0 || c >= D.cosets.count) fail_config("UnknownLabel", "coset index out of range");

  CmType T;
  T.S = std::move(cosetIdx);
  T.inS.assign(D.cosets.count, 0);
  for (int c : T.S) T.inS[c] = 1;

  for (int c : T.S)
    if (T.inS[D.tauOnCosets[c]])
      fail_config("NotDisjointFromConjugate",
                  "coset of " + D.G.label(D.cosets.reps[c]) + " and its tau-conjugate both in S");
  if (static_cast<int>(T.S.size()) != D.g)
    fail_config("NotCovering", "|S| = " + std::to_string(T.S.size()) + ", need " +
                                   std::to_string(D.g));

  for (int x = 0; x < D.G.order; ++x)
    if (T.inS[D.cosets.cosetOf[x]]) T.Stilde.push_back(x);
  return T;
}

std::vector<CmType> enumerate_cm_types(const CmDatum& D) {
  if (D.g > kMaxEnumeratePairs)
    fail_resource("TooLarge", "2^" + std::to_string(D.g) + " types exceed enumeration cap");

  // tau-pairs ordered by smaller coset index
  std::vector<std::pair<int, int>> pairs;
  std::vector<char> seen(D.cosets.count, 0);
  for (int c = 0; c < D.cosets.count; ++c) {
    if (seen[c]) continue;
    int ct = D.tauOnCosets[c];
    seen[c] = seen[ct] = 1;
    pairs.emplace_back(c, ct);
  }

  std::vector<CmType> out;
  out.reserve(1u << D.g);
  for (unsigned mask = 0; mask < (1u << D.g); ++mask) {
    std::vector<int> pick;
    for (int i = 0; i < D.g; ++i)
      pick.push_back((mask >> i) & 1 ? pairs[i].second : pairs[i].first);
    out.push_back(validate_cm_type(D, pick));
  }
  return out;
}

namespace {

// whether x * Stilde = Stilde (left) or Stilde * x = Stilde (right)
bool stabilizes(const CmDatum& D, const CmType& T, int x, bool left) {
  std::vector<char> inStilde(D.G.order, 0);
  for (int s : T.Stilde) inStilde[s] = 1;
  for (int s : T.Stilde) {
    int y = left ? D.G.op(x, s) : D.G.op(s, x);
    if (!inStilde[y]) return false;
  }
  return true;
}

}  // namespace

bool is_simple_type(const CmDatum& D, const CmType& S) {
  for (int x = 0; x < D.G.order; ++x) {
    bool stab = stabilizes(D, S, x, /*left=*/true);
    if (stab && !D.H.contains(x)) return false;
    if (!stab && D.H.contains(x))
      fail_invariant("InconsistentStabilizer",
                     "subgroup element " + D.G.label(x) + " does not left-stabilize Stilde");
  }
  return true;
}

ReflexDatum compute_reflex(const CmDatum& D, const CmType& S) {
  std::vector<int> stab;
  for (int x = 0; x < D.G.order; ++x)
    if (stabilizes(D, S, x, /*left=*/false)) stab.push_back(x);

  Subgroup Hprime = subgroup_from_indices(D.G, stab);

  CmDatum dual;
  try {
    dual = validate_cm_datum(D.G, Hprime, D.tau);
  } catch (const Error& e) {
    fail_invariant("ReflexNotCMType", "dual datum rejected: " + std::string(e.what()));
  }

  std::vector<int> rCosets;
  for (int s : S.Stilde) rCosets.push_back(dual.cosets.cosetOf[D.G.inverse(s)]);
  std::sort(rCosets.begin(), rCosets.end());
  rCosets.erase(std::unique(rCosets.begin(), rCosets.end()), rCosets.end());

  ReflexDatum X;
  try {
    X.R = validate_cm_type(dual, rCosets);
  } catch (const Error& e) {
    fail_invariant("ReflexNotCMType", "reflex set rejected: " + std::string(e.what()));
  }
  X.reflexDegree = dual.cosets.count;
  X.dual = std::move(dual);
  return X;
}

}  // namespace cmtor
