#ifndef CMTOR_REPORT_HPP
#define CMTOR_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include "cmtor/bounds.hpp"

namespace cmtor {

inline constexpr const char* kToolVersion = "cmtor 1.0.0";

// Every quantitative entry names the claim backing it; the statements live
// in a fixed in-code registry so reports never carry free-form citations.
struct Report {
  std::string toolVersion = kToolVersion;
  std::string command;
  std::string inputEcho;  // resolved input summary, part of the deterministic section
  std::vector<BoundEntry> entries;
  std::vector<std::pair<std::string, std::string>> citations;  // claimId -> statement
  long long timingMs = 0;  // excluded from the deterministic section
};

const std::vector<std::pair<std::string, std::string>>& claim_registry();
const std::string& claim_statement(const std::string& id);  // Config error if unknown

// fills `citations` with the statements for the claim ids used by `entries`
void finalize_citations(Report& r);

// Structured form: {"deterministic": {...}, "timingMs": n}. Serialization is
// byte-stable for identical inputs and round-trips through parsing.
std::string report_to_json(const Report& r, bool pretty = true);
Report report_from_json(const std::string& text);
std::string report_to_text(const Report& r);

}  // namespace cmtor

#endif
