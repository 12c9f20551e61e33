#pragma once

#include "scarf/instance.hpp"
#include "scarf/scarf.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

// External formats use 1-based agents, columns, rows and iteration numbers.
namespace scarf {

namespace detail {

struct Token {
  std::string_view text;
  int column; // 1-based
};

inline std::vector<Token> tokens(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

inline long parse_int(const Token &t, int line) {
  long v = 0;
  const char *end = t.text.data() + t.text.size();
  auto [p, ec] = std::from_chars(t.text.data(), end, v);
  if (ec != std::errc{} || p != end)
    throw ParseError(line, t.column, "expected an integer, got '" + std::string(t.text) + "'");
  return v;
}

struct Line {
  int number;
  std::vector<Token> toks;
};

// Non-comment, non-blank lines. Token views point into `text`.
inline std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++number;
    auto toks = tokens(line);
    if (!toks.empty() && toks.front().text.front() != '#') out.push_back({number, std::move(toks)});
    pos = nl + 1;
  }
  return out;
}

} // namespace detail

/// Line 1: k. Then k men's lists and k women's lists, 1-based, best first; shorter
/// lists are completed. Lines starting with '#' and blank lines are skipped, so
/// an empty list cannot be written.
inline MarriageInstance parse_instance(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "missing k");
  const auto &first = lines.front();
  if (first.toks.size() != 1) throw ParseError(first.number, first.toks[1].column, "expected k alone");
  const long k = detail::parse_int(first.toks[0], first.number);
  if (k <= 0) throw ParseError(first.number, first.toks[0].column, "k must be positive");
  if (static_cast<long>(lines.size()) - 1 < 2 * k)
    throw ParseError(lines.back().number + 1, 1, "expected " + std::to_string(2 * k) + " preference lists");
  if (static_cast<long>(lines.size()) - 1 > 2 * k)
    throw ParseError(lines[2 * k + 1].number, 1, "unexpected content after the preference lists");
  std::vector<std::vector<int>> lists(2 * k);
  for (long a = 0; a < 2 * k; ++a) {
    const auto &l = lines[a + 1];
    for (const auto &t : l.toks) {
      const long v = detail::parse_int(t, l.number);
      if (v < 1 || v > k)
        throw ParseError(l.number, t.column, "index " + std::to_string(v) + " outside 1.." + std::to_string(k));
      lists[a].push_back(static_cast<int>(v - 1));
    }
  }
  std::vector<std::vector<int>> men(lists.begin(), lists.begin() + k), women(lists.begin() + k, lists.end());
  return MarriageInstance::make(static_cast<int>(k), std::move(men), std::move(women));
}

inline std::string format_instance(const MarriageInstance &inst) {
  std::ostringstream os;
  os << inst.k << '\n';
  for (const auto *side : {&inst.men, &inst.women})
    for (const auto &l : *side) {
      for (std::size_t r = 0; r < l.size(); ++r) os << (r ? " " : "") << l[r] + 1;
      os << '\n';
    }
  return os.str();
}

/// One "m w" pair per line; '#' lines are comments.
inline Matching parse_matching(std::string_view text, int k) {
  std::vector<std::pair<int, int>> pairs;
  for (const auto &l : detail::content_lines(text)) {
    if (l.toks.size() != 2) throw ParseError(l.number, l.toks.front().column, "expected 'man woman'");
    const long m = detail::parse_int(l.toks[0], l.number), w = detail::parse_int(l.toks[1], l.number);
    if (m < 1 || m > k) throw ParseError(l.number, l.toks[0].column, "man index out of range");
    if (w < 1 || w > k) throw ParseError(l.number, l.toks[1].column, "woman index out of range");
    pairs.emplace_back(static_cast<int>(m - 1), static_cast<int>(w - 1));
  }
  return Matching::from_pairs(k, pairs);
}

inline std::string format_matching(const Matching &mu) {
  std::string out;
  for (auto [m, w] : mu.pairs()) out += std::to_string(m + 1) + " " + std::to_string(w + 1) + "\n";
  return out;
}

enum class TraceFormat { json, csv_summary };

inline constexpr const char *trace_schema = "scarf-trace/1";

inline const char *phase_name(Phase p) {
  switch (p) {
  case Phase::L: return "L";
  case Phase::M: return "M";
  default: return "none";
  }
}

namespace detail {

inline nlohmann::ordered_json one_based(const std::vector<int> &v) {
  auto a = nlohmann::ordered_json::array();
  for (int x : v) a.push_back(x + 1);
  return a;
}

inline std::vector<int> zero_based(const nlohmann::ordered_json &a) {
  std::vector<int> v;
  for (const auto &x : a) v.push_back(x.get<int>() - 1);
  return v;
}

inline int shift(int x) { return x < 0 ? x : x + 1; }
inline int unshift(int x) { return x < 0 ? x : x - 1; }

} // namespace detail

inline std::string serialize_trace(const PivotTrace &trace, TraceFormat format = TraceFormat::json) {
  using detail::one_based;
  using detail::shift;
  if (format == TraceFormat::csv_summary) {
    std::ostringstream os;
    os << "iteration,separator,phase,sum_women_utility,entering,leaving\n";
    for (const auto &r : trace.iterations)
      os << r.iteration + 1 << ',' << r.separator << ',' << phase_name(r.phase) << ','
         << r.potential.second << ',' << r.entering + 1 << ',' << r.leaving + 1 << '\n';
    return os.str();
  }
  nlohmann::ordered_json j;
  j["schema"] = trace_schema;
  auto its = nlohmann::ordered_json::array();
  for (const auto &r : trace.iterations) {
    nlohmann::ordered_json o;
    o["iteration"] = r.iteration + 1;
    o["B"] = one_based(r.B);
    o["D"] = one_based(r.D);
    o["entering"] = shift(r.entering);
    o["candidates"] = one_based(r.candidates);
    o["leaving"] = shift(r.leaving);
    if (r.ordinal) {
      const auto &p = *r.ordinal;
      o["ordinal"] = {{"leaving", shift(p.leaving)},     {"reference", shift(p.reference)},
                      {"entering", shift(p.entering)},   {"row_gainer", shift(p.row_gainer)},
                      {"row_loser", shift(p.row_loser)}, {"candidate_set_size", p.candidate_set_size}};
    } else {
      o["ordinal"] = nullptr;
    }
    o["utility"] = r.utility;
    o["phase"] = phase_name(r.phase);
    o["separator"] = r.separator;
    o["potential"] = {r.potential.first, r.potential.second};
    its.push_back(std::move(o));
  }
  j["iterations"] = std::move(its);
  j["final_basis"] = one_based(trace.final_basis);
  j["final_utility"] = trace.final_utility;
  return j.dump(2) + "\n";
}

/// Inverse of serialize_trace for the json format.
inline PivotTrace parse_trace(std::string_view text) {
  using detail::unshift;
  using detail::zero_based;
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(1, static_cast<int>(e.byte), e.what());
  }
  try {
    if (j.at("schema") != trace_schema) throw ParseError(1, 1, "unknown trace schema");
    PivotTrace t;
    for (const auto &o : j.at("iterations")) {
      IterationRecord r;
      r.iteration = o.at("iteration").get<int>() - 1;
      r.B = zero_based(o.at("B"));
      r.D = zero_based(o.at("D"));
      r.entering = unshift(o.at("entering").get<int>());
      r.candidates = zero_based(o.at("candidates"));
      r.leaving = unshift(o.at("leaving").get<int>());
      if (const auto &p = o.at("ordinal"); !p.is_null()) {
        OrdinalPivotResult q;
        q.leaving = unshift(p.at("leaving").get<int>());
        q.reference = unshift(p.at("reference").get<int>());
        q.entering = unshift(p.at("entering").get<int>());
        q.row_gainer = unshift(p.at("row_gainer").get<int>());
        q.row_loser = unshift(p.at("row_loser").get<int>());
        q.candidate_set_size = p.at("candidate_set_size").get<int>();
        r.ordinal = q;
      }
      r.utility = o.at("utility").get<std::vector<std::int64_t>>();
      const auto phase = o.at("phase").get<std::string>();
      r.phase = phase == "L" ? Phase::L : phase == "M" ? Phase::M : Phase::none;
      r.separator = o.at("separator").get<int>();
      r.potential = {o.at("potential").at(0).get<std::int64_t>(), o.at("potential").at(1).get<std::int64_t>()};
      t.iterations.push_back(std::move(r));
    }
    t.final_basis = zero_based(j.at("final_basis"));
    t.final_utility = j.at("final_utility").get<std::vector<std::int64_t>>();
    return t;
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(1, 1, std::string("malformed trace: ") + e.what());
  }
}

} // namespace scarf
