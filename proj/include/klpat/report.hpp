#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "klpat/error.hpp"

namespace klpat {

inline constexpr const char* kVerdictSchema = "klpat.verdict/1";
inline constexpr const char* kSummarySchema = "klpat.summary/1";

/// One (y, term) row of a main-theorem verdict.
struct VerdictTerm {
  std::string y;
  std::int64_t p_yw = 0;
  std::int64_t p_prime = 0;
  bool operator==(const VerdictTerm&) const = default;
};

/// A single check, already rendered to strings so every output format sees
/// the same values. lhs/rhs are integers or compact polynomials ("1+q").
struct Verdict {
  std::string theorem;
  std::string family;
  int rank = 0;
  std::string subgroup = "-";
  std::string x = "-", w = "-";
  std::string lhs, rhs;
  bool holds = true;
  std::vector<std::string> flags;
  std::vector<std::string> maximal_set;
  std::vector<VerdictTerm> per_term;
  bool operator==(const Verdict&) const = default;
};

struct Summary {
  std::string suite;
  std::string type;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  std::uint64_t vacuous = 0;     // checks whose hypothesis (x <= w) did not apply
  std::uint64_t candidates = 0;  // conjecture-p2: converse candidates
  double elapsed = 0;
};

namespace detail {

inline bool is_integer_text(const std::string& s) {
  if (s.empty() || s.size() > 18) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return s == std::to_string(std::stoll(s));
}

inline nlohmann::ordered_json value_json(const std::string& s) {
  if (is_integer_text(s)) return std::stoll(s);
  return s;
}

inline std::string value_text(const nlohmann::ordered_json& j) {
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  if (j.is_string()) return j.get<std::string>();
  throw ParseError("lhs/rhs must be an integer or a string");
}

}  // namespace detail

/// `THEOREM family rank W'-spec x w lhs rhs HOLDS|FAILS`
inline std::string render_text(const Verdict& v) {
  std::string s = v.theorem + " " + v.family + " " + std::to_string(v.rank) + " " + v.subgroup + " " + v.x + " " +
                  v.w + " " + v.lhs + " " + v.rhs + " " + (v.holds ? "HOLDS" : "FAILS");
  for (const auto& f : v.flags) s += " [" + f + "]";
  return s;
}

inline nlohmann::ordered_json to_json(const Verdict& v) {
  nlohmann::ordered_json j;
  j["schema"] = kVerdictSchema;
  j["theorem"] = v.theorem;
  j["family"] = v.family;
  j["rank"] = v.rank;
  j["subgroup"] = v.subgroup;
  j["x"] = v.x;
  j["w"] = v.w;
  j["lhs"] = detail::value_json(v.lhs);
  j["rhs"] = detail::value_json(v.rhs);
  j["holds"] = v.holds;
  j["flags"] = v.flags;
  j["maximal_set"] = v.maximal_set;
  auto terms = nlohmann::ordered_json::array();
  for (const auto& t : v.per_term) {
    nlohmann::ordered_json tj;
    tj["y"] = t.y;
    tj["p_yw"] = t.p_yw;
    tj["p_prime"] = t.p_prime;
    terms.push_back(std::move(tj));
  }
  j["per_term"] = std::move(terms);
  return j;
}

inline std::string render_json(const Verdict& v) { return to_json(v).dump(); }

inline Verdict verdict_from_json(const nlohmann::ordered_json& j) {
  try {
    if (j.at("schema").get<std::string>() != kVerdictSchema) throw ParseError("unknown verdict schema");
    Verdict v;
    v.theorem = j.at("theorem").get<std::string>();
    v.family = j.at("family").get<std::string>();
    v.rank = j.at("rank").get<int>();
    v.subgroup = j.at("subgroup").get<std::string>();
    v.x = j.at("x").get<std::string>();
    v.w = j.at("w").get<std::string>();
    v.lhs = detail::value_text(j.at("lhs"));
    v.rhs = detail::value_text(j.at("rhs"));
    v.holds = j.at("holds").get<bool>();
    v.flags = j.at("flags").get<std::vector<std::string>>();
    v.maximal_set = j.at("maximal_set").get<std::vector<std::string>>();
    for (const auto& t : j.at("per_term"))
      v.per_term.push_back({t.at("y").get<std::string>(), t.at("p_yw").get<std::int64_t>(), t.at("p_prime").get<std::int64_t>()});
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad verdict JSON: ") + e.what());
  }
}

inline Verdict parse_verdict_json(const std::string& text) {
  try {
    return verdict_from_json(nlohmann::ordered_json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad verdict JSON: ") + e.what());
  }
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline const char* csv_header() { return "theorem,family,rank,subgroup,x,w,lhs,rhs,holds,flags,y,p_yw,p_prime"; }

/// One row per (y, term) pair; verdicts without terms give one row with
/// the term columns empty.
inline std::string render_csv(const Verdict& v) {
  std::string flags;
  for (std::size_t i = 0; i < v.flags.size(); ++i) flags += (i ? ";" : "") + v.flags[i];
  const std::string head = csv_field(v.theorem) + "," + csv_field(v.family) + "," + std::to_string(v.rank) + "," +
                           csv_field(v.subgroup) + "," + csv_field(v.x) + "," + csv_field(v.w) + "," +
                           csv_field(v.lhs) + "," + csv_field(v.rhs) + "," + (v.holds ? "true" : "false") + "," +
                           csv_field(flags) + ",";
  if (v.per_term.empty()) return head + ",,";
  std::string out;
  for (std::size_t i = 0; i < v.per_term.size(); ++i) {
    const auto& t = v.per_term[i];
    if (i) out += "\n";
    out += head + csv_field(t.y) + "," + std::to_string(t.p_yw) + "," + std::to_string(t.p_prime);
  }
  return out;
}

inline std::string format_elapsed(double seconds) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << seconds << "s";
  return os.str();
}

inline std::string render_summary_text(const Summary& s) {
  std::string out = "checked=" + std::to_string(s.checked) + " failed=" + std::to_string(s.failed);
  if (s.vacuous) out += " vacuous=" + std::to_string(s.vacuous);
  if (s.suite == "conjecture-p2") out += " converse_candidates=" + std::to_string(s.candidates);
  return out + " elapsed=" + format_elapsed(s.elapsed);
}

inline std::string render_summary_json(const Summary& s) {
  nlohmann::ordered_json j;
  j["schema"] = kSummarySchema;
  j["suite"] = s.suite;
  j["type"] = s.type;
  j["checked"] = s.checked;
  j["failed"] = s.failed;
  j["vacuous"] = s.vacuous;
  j["converse_candidates"] = s.candidates;
  j["elapsed"] = format_elapsed(s.elapsed);
  return j.dump();
}

}  // namespace klpat
