#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "adr/errors.hpp"
#include "adr/qubo.hpp"

namespace adr::qubo {

namespace {

void flush(std::ostream& out, fmt::memory_buffer& buf) {
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  buf.clear();
}

std::string_view next_token(std::string_view& s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  std::size_t k = 0;
  while (k < s.size() && s[k] != ' ' && s[k] != '\t' && s[k] != '\r') ++k;
  const auto tok = s.substr(0, k);
  s.remove_prefix(k);
  return tok;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line, std::string_view what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(fmt::format("bad {} '{}'", what, tok), line);
  return v;
}

}  // namespace

void write_qubo(std::ostream& out, const QuboModel& model, std::span<const std::string> comments) {
  fmt::memory_buffer buf;
  for (const auto& c : comments) fmt::format_to(std::back_inserter(buf), "c {}\n", c);
  fmt::format_to(std::back_inserter(buf), "p qubo {} {} {}\n", model.n_vars(), model.terms().size(), model.offset());
  for (const auto& t : model.terms()) {
    fmt::format_to(std::back_inserter(buf), "{} {} {}\n", t.i, t.j, t.value);
    if (buf.size() > (1U << 20)) flush(out, buf);
  }
  flush(out, buf);
}

std::string export_qubo(const QuboModel& model) {
  std::ostringstream out;
  write_qubo(out, model);
  return out.str();
}

void write_name_map(std::ostream& out, const QuboModel& model) {
  fmt::memory_buffer buf;
  for (std::size_t k = 0; k < model.n_vars(); ++k) {
    fmt::format_to(std::back_inserter(buf), "{} {}\n", k, model.name(k));
    if (buf.size() > (1U << 20)) flush(out, buf);
  }
  flush(out, buf);
}

std::string export_name_map(const QuboModel& model) {
  std::ostringstream out;
  write_name_map(out, model);
  return out.str();
}

QuboModel read_qubo(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n_vars = 0;
  std::size_t n_terms = 0;
  double offset = 0.0;
  std::vector<Term> terms;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s(line);
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
    if (s.empty() || s.front() == 'c' || s.front() == '#') continue;
    if (s.front() == 'p') {
      if (have_header) throw ParseError("duplicate header", line_no);
      next_token(s);
      if (next_token(s) != "qubo") throw ParseError("header must read 'p qubo ...'", line_no);
      n_vars = parse_number<std::size_t>(next_token(s), line_no, "variable count");
      n_terms = parse_number<std::size_t>(next_token(s), line_no, "term count");
      offset = parse_number<double>(next_token(s), line_no, "offset");
      terms.reserve(n_terms);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("coefficient before header", line_no);
    const auto i = parse_number<std::uint32_t>(next_token(s), line_no, "index");
    const auto j = parse_number<std::uint32_t>(next_token(s), line_no, "index");
    const auto v = parse_number<double>(next_token(s), line_no, "coefficient");
    if (!next_token(s).empty()) throw ParseError("trailing data on coefficient line", line_no);
    if (i > j) throw ParseError(fmt::format("key ({}, {}) is below the diagonal", i, j), line_no);
    if (j >= n_vars) throw ParseError(fmt::format("index {} exceeds {} variables", j, n_vars), line_no);
    terms.push_back({i, j, v});
  }
  if (!have_header) throw ParseError("missing 'p qubo' header");
  if (terms.size() != n_terms)
    throw ParseError(fmt::format("header declares {} terms, found {}", n_terms, terms.size()));
  return QuboModel(n_vars, offset, std::move(terms));
}

QuboModel import_qubo(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_qubo(in);
}

}  // namespace adr::qubo
