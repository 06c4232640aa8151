#include "fermatci_app/job.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fermatci/errors.hpp"
#include "fermatci/expr.hpp"
#include "fermatci/prime_field.hpp"

namespace fermatci::app {

namespace {

constexpr std::size_t kMaxN = 32;

struct Value {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;  // 1-based column of text[0]
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

/// Trims and keeps the column of the first kept character.
Value trimmed(const std::string& line_text, std::size_t begin, std::size_t end, std::size_t line) {
  while (begin < end && is_space(line_text[begin])) ++begin;
  while (end > begin && is_space(line_text[end - 1])) --end;
  return Value{line_text.substr(begin, end - begin), line, begin + 1};
}

std::uint64_t parse_uint(const Value& v, std::uint64_t max) {
  std::uint64_t out = 0;
  const char* first = v.text.data();
  const char* last = first + v.text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (v.text.empty() || ec != std::errc() || ptr != last) {
    throw ParseError("expected a non-negative integer, got '" + v.text + "'", v.line, v.column);
  }
  if (out > max) throw ParseError("value " + v.text + " is too large", v.line, v.column);
  return out;
}

bool parse_bool(const Value& v) {
  if (v.text == "true" || v.text == "yes" || v.text == "1") return true;
  if (v.text == "false" || v.text == "no" || v.text == "0") return false;
  throw ParseError("expected true or false, got '" + v.text + "'", v.line, v.column);
}

/// Whitespace-separated words with their columns.
std::vector<Value> words(const Value& v) {
  std::vector<Value> out;
  std::size_t i = 0;
  while (i < v.text.size()) {
    while (i < v.text.size() && (is_space(v.text[i]) || v.text[i] == ',')) ++i;
    std::size_t start = i;
    while (i < v.text.size() && !is_space(v.text[i]) && v.text[i] != ',') ++i;
    if (i > start) out.push_back(Value{v.text.substr(start, i - start), v.line, v.column + start});
  }
  return out;
}

std::vector<RatFunc> expressions(const Value& v, const std::vector<std::string>& names, PrimeField f,
                                 std::size_t expected, const char* what) {
  auto out = parse_expression_list(v.text, names, f, v.line, v.column);
  if (out.size() != expected) {
    throw ParseError(std::string(what) + ": expected " + std::to_string(expected) + " expressions, got " +
                         std::to_string(out.size()),
                     v.line, v.column);
  }
  return out;
}

}  // namespace

const char* to_string(Command c) noexcept {
  switch (c) {
    case Command::Validate: return "validate";
    case Command::Chain: return "chain";
    case Command::Invariants: return "invariants";
    case Command::GenusChange: return "genus-change";
    case Command::ClassifyConic: return "classify-conic";
    case Command::PFermat: return "pfermat";
    case Command::Bounds: return "bounds";
  }
  return "?";
}

const std::vector<Command>& all_commands() {
  static const std::vector<Command> order{Command::Validate,      Command::Chain,   Command::Invariants,
                                          Command::GenusChange,   Command::ClassifyConic,
                                          Command::PFermat,       Command::Bounds};
  return order;
}

std::optional<Command> parse_command(const std::string& name) {
  for (Command c : all_commands()) {
    if (name == to_string(c)) return c;
  }
  return std::nullopt;
}

JobSpec parse_job(const std::string& text, const std::string& source) {
  JobSpec job;
  job.source = source;
  std::map<std::string, Value> single;
  std::map<unsigned, Value> rows;
  std::vector<Value> avoid;

  std::istringstream in(text);
  std::string line_text;
  std::size_t line = 0;
  while (std::getline(in, line_text)) {
    ++line;
    std::size_t end = line_text.find('#');
    if (end == std::string::npos) end = line_text.size();
    Value whole = trimmed(line_text, 0, end, line);
    if (whole.text.empty()) continue;
    std::size_t eq = line_text.find('=');
    if (eq == std::string::npos || eq >= end) throw ParseError("expected 'key = value'", line, whole.column);
    Value key = trimmed(line_text, 0, eq, line);
    Value value = trimmed(line_text, eq + 1, end, line);
    if (key.text.empty()) throw ParseError("missing key before '='", line, whole.column);

    if (key.text.rfind("coeff[", 0) == 0) {
      if (key.text.back() != ']') throw ParseError("malformed coefficient key", line, key.column);
      Value idx{key.text.substr(6, key.text.size() - 7), line, key.column + 6};
      auto i = static_cast<unsigned>(parse_uint(idx, kMaxN));
      if (i == 0) throw ParseError("coefficient rows are numbered from 1", line, idx.column);
      if (!rows.emplace(i, value).second) throw ParseError("duplicate row " + key.text, line, key.column);
      continue;
    }
    if (key.text == "pfermat.avoid") {
      avoid.push_back(value);
      continue;
    }
    static const std::set<std::string> known{"prime", "e",     "N",          "r",         "params",
                                             "commands", "conic", "homogenize", "pfermat.a", "search_bound",
                                             "index_multiplier"};
    if (!known.count(key.text)) throw ParseError("unknown key '" + key.text + "'", line, key.column);
    if (!single.emplace(key.text, value).second) {
      throw ParseError("duplicate key '" + key.text + "'", line, key.column);
    }
  }

  auto it = single.find("prime");
  if (it == single.end()) throw ParseError("missing 'prime'", line + 1, 1);
  {
    const Value& v = it->second;
    std::uint64_t p = parse_uint(v, (1ULL << 31) - 1);
    if (!is_prime(p)) throw ParseError(v.text + " is not prime", v.line, v.column);
    job.prime = static_cast<std::uint32_t>(p);
  }
  const PrimeField field(job.prime);

  if (auto pv = single.find("params"); pv != single.end()) {
    for (const Value& w : words(pv->second)) {
      if (!is_identifier(w.text)) throw ParseError("'" + w.text + "' is not an identifier", w.line, w.column);
      if (std::find(job.params.begin(), job.params.end(), w.text) != job.params.end()) {
        throw ParseError("duplicate parameter '" + w.text + "'", w.line, w.column);
      }
      job.params.push_back(w.text);
    }
  }

  const bool any_ci = single.count("e") || single.count("N") || single.count("r") || !rows.empty();
  if (any_ci) {
    for (const char* k : {"e", "N", "r"}) {
      if (!single.count(k)) throw ParseError(std::string("missing '") + k + "'", line + 1, 1);
    }
    job.e = static_cast<unsigned>(parse_uint(single["e"], 16));
    job.N = static_cast<unsigned>(parse_uint(single["N"], kMaxN));
    job.r = static_cast<unsigned>(parse_uint(single["r"], kMaxN));
    const Value& rv = single["r"];
    if (*job.N == 0) throw ParseError("N must be at least 1", single["N"].line, single["N"].column);
    if (*job.r >= *job.N) throw ParseError("need r < N", rv.line, rv.column);
    for (const auto& [i, v] : rows) {
      if (i > *job.r) throw ParseError("row " + std::to_string(i) + " exceeds r = " + std::to_string(*job.r), v.line, 1);
    }
    for (unsigned i = 1; i <= *job.r; ++i) {
      auto row = rows.find(i);
      if (row == rows.end()) throw ParseError("missing coeff[" + std::to_string(i) + "]", rv.line, rv.column);
      job.coeffs.push_back(expressions(row->second, job.params, field, *job.N + 1, "coefficient row"));
    }
  }

  if (auto hv = single.find("homogenize"); hv != single.end()) job.homogenize = parse_bool(hv->second);
  if (auto cv = single.find("commands"); cv != single.end()) {
    for (const Value& w : words(cv->second)) {
      auto c = parse_command(w.text);
      if (!c) throw ParseError("unknown command '" + w.text + "'", w.line, w.column);
      if (std::find(job.commands.begin(), job.commands.end(), *c) == job.commands.end()) job.commands.push_back(*c);
    }
  }
  if (auto cv = single.find("conic"); cv != single.end()) {
    job.conic = expressions(cv->second, job.params, field, 6, "conic");
  }
  const std::vector<std::string> st{"s", "t"};
  if (auto av = single.find("pfermat.a"); av != single.end()) {
    job.pfermat_a = expressions(av->second, st, field, 1, "pfermat.a").front();
  }
  const std::string suffix = "_rt" + std::to_string(job.prime);
  const std::vector<std::string> roots{"s" + suffix, "t" + suffix};
  for (const Value& v : avoid) {
    auto pt = expressions(v, roots, field, 3, "pfermat.avoid");
    job.pfermat_avoid.push_back({pt[0], pt[1], pt[2]});
  }
  if (auto sv = single.find("search_bound"); sv != single.end()) {
    job.search_bound = parse_uint(sv->second, 1u << 20);
    if (job.search_bound == 0) throw ParseError("search_bound must be positive", sv->second.line, sv->second.column);
  }
  if (auto nv = single.find("index_multiplier"); nv != single.end()) {
    job.index_multiplier = parse_uint(nv->second, ~0ULL);
    if (job.index_multiplier == 0) {
      throw ParseError("index_multiplier must be positive", nv->second.line, nv->second.column);
    }
  }
  return job;
}

JobSpec load_job(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open job file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_job(buf.str(), path);
}

JobSpec generic_job(std::uint32_t p, unsigned e, unsigned N, unsigned r) {
  if (!is_prime(p)) throw StructuralError(std::to_string(p) + " is not prime");
  if (N == 0 || r >= N) throw StructuralError("generic job needs 0 <= r < N");
  JobSpec job;
  job.source = "generic " + std::to_string(p) + " " + std::to_string(e) + " " + std::to_string(N) + " " +
               std::to_string(r);
  job.prime = p;
  job.e = e;
  job.N = N;
  job.r = r;
  for (unsigned i = 1; i <= r; ++i) {
    for (unsigned j = 0; j <= N; ++j) job.params.push_back("s" + std::to_string(i) + std::to_string(j));
  }
  const PrimeField field(p);
  std::size_t g = 0;
  for (unsigned i = 0; i < r; ++i) {
    std::vector<RatFunc> row;
    for (unsigned j = 0; j <= N; ++j) row.push_back(RatFunc::variable(field, job.params.size(), g++));
    job.coeffs.push_back(std::move(row));
  }
  return job;
}

}  // namespace fermatci::app
