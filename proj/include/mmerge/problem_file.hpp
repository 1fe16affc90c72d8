#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mmerge/errors.hpp"
#include "mmerge/formula.hpp"
#include "mmerge/parser.hpp"

namespace mmerge {

// Sectioned problem text:
//
//   # comment
//   [kb]
//   a & b
//   [kb]
//   !a
//   [upper]
//   b
//   [lower]
//   true
//
// `[kb]` repeats, `[upper]` and `[lower]` appear at most once and default to
// `true`. A section body is one formula and may span lines.
struct ProblemFile {
  std::vector<Formula> bases;
  Formula upper = Formula::True();
  Formula lower = Formula::True();
};

inline ProblemFile parse_problem(std::string_view text) {
  struct Section {
    std::string name;
    std::size_t header_line;
    std::string body;  // comment lines blanked so line numbers survive
  };
  std::vector<Section> sections;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no;
    start = end + 1;

    const auto first = line.find_first_not_of(" \t");
    const std::string trimmed =
        first == std::string::npos ? "" : line.substr(first, line.find_last_not_of(" \t") - first + 1);
    if (!trimmed.empty() && trimmed.front() == '[') {
      if (trimmed != "[kb]" && trimmed != "[upper]" && trimmed != "[lower]") {
        throw ParseError("unknown section " + trimmed, line_no, first + 1);
      }
      sections.push_back(Section{trimmed.substr(1, trimmed.size() - 2), line_no, ""});
      continue;
    }
    const bool blank = trimmed.empty() || trimmed.front() == '#';
    if (sections.empty()) {
      if (!blank) throw ParseError("text before the first section header", line_no, first + 1);
      continue;
    }
    sections.back().body += blank ? std::string() : line;
    sections.back().body += '\n';
    if (end == text.size()) break;
  }

  ProblemFile out;
  bool seen_upper = false;
  bool seen_lower = false;
  for (const auto& sec : sections) {
    Formula f;
    try {
      // Trailing blank lines would push end-of-input errors past the section.
      f = parse_formula(std::string_view(sec.body).substr(0, sec.body.find_last_not_of(" \t\n") + 1));
    } catch (const ParseError& e) {
      if (e.message() == "empty formula") {
        throw ParseError("empty [" + sec.name + "] section", sec.header_line, 1);
      }
      throw ParseError(e.message(), sec.header_line + e.line(), e.column());
    }
    if (sec.name == "kb") {
      out.bases.push_back(f);
    } else if (sec.name == "upper") {
      if (seen_upper) throw ParseError("duplicate [upper] section", sec.header_line, 1);
      seen_upper = true;
      out.upper = f;
    } else {
      if (seen_lower) throw ParseError("duplicate [lower] section", sec.header_line, 1);
      seen_lower = true;
      out.lower = f;
    }
  }
  if (out.bases.empty()) throw ParseError("no [kb] section", line_no, 1);
  return out;
}

}  // namespace mmerge
