#include "fermatci_app/grid.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "fermatci/errors.hpp"

namespace fermatci::app {

namespace {

unsigned grid_number(const std::string& word, std::size_t line, std::size_t column) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
  if (word.empty() || ec != std::errc() || ptr != word.data() + word.size()) {
    throw ParseError("expected a non-negative integer, got '" + word + "'", line, column);
  }
  return v;
}

Report run_entry(const GridEntry& entry, const RunOptions& options) {
  try {
    JobSpec job = entry.generic ? generic_job(entry.p, entry.e, entry.N, entry.r) : load_job(entry.path);
    return run(job, options);
  } catch (const Error& err) {
    return input_error_report(entry.label, err.what());
  } catch (const std::exception& err) {
    Report r = input_error_report(entry.label, std::string("internal: ") + err.what());
    r.status = Status::InternalError;
    r.json["status"] = to_string(r.status);
    return r;
  }
}

}  // namespace

std::vector<GridEntry> parse_grid(const std::string& text, const std::string& base_dir) {
  std::vector<GridEntry> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    std::vector<std::pair<std::string, std::size_t>> ws;
    std::string w;
    std::size_t search = 0;
    while (words >> w) {
      std::size_t col = raw.find(w, search);
      search = col + w.size();
      ws.emplace_back(w, col + 1);
    }
    if (ws.empty()) continue;
    GridEntry e;
    if (ws[0].first == "generic") {
      if (ws.size() != 5) throw ParseError("expected 'generic p e N r'", line, ws[0].second);
      e.generic = true;
      e.p = grid_number(ws[1].first, line, ws[1].second);
      e.e = grid_number(ws[2].first, line, ws[2].second);
      e.N = grid_number(ws[3].first, line, ws[3].second);
      e.r = grid_number(ws[4].first, line, ws[4].second);
      e.label = "generic " + ws[1].first + " " + ws[2].first + " " + ws[3].first + " " + ws[4].first;
    } else {
      if (ws.size() != 1) throw ParseError("expected a single job path", line, ws[1].second);
      std::filesystem::path p(ws[0].first);
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      e.path = p.lexically_normal().string();
      e.label = ws[0].first;
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<GridEntry> load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open grid file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  auto dir = std::filesystem::path(path).parent_path();
  return parse_grid(buf.str(), dir.empty() ? "." : dir.string());
}

std::vector<GridEntry> generic_grid(const std::vector<unsigned>& primes, const std::vector<unsigned>& exponents,
                                    unsigned max_N) {
  std::vector<GridEntry> out;
  for (unsigned p : primes) {
    for (unsigned e : exponents) {
      for (unsigned N = 2; N <= max_N; ++N) {
        for (unsigned r = 1; r < N; ++r) {
          GridEntry g;
          g.generic = true;
          g.p = p;
          g.e = e;
          g.N = N;
          g.r = r;
          g.label = "generic " + std::to_string(p) + " " + std::to_string(e) + " " + std::to_string(N) + " " +
                    std::to_string(r);
          out.push_back(g);
        }
      }
    }
  }
  return out;
}

Report run_grid(const std::vector<GridEntry>& entries, const RunOptions& options, std::size_t threads) {
  std::vector<Report> reports(entries.size());
  if (threads == 0) threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(1, entries.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) reports[i] = run_entry(entries[i], options);
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Report out;
  Json list = Json::array();
  std::size_t passed = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    Report& r = reports[i];
    out.status = worst(out.status, r.status);
    if (r.status == Status::Pass) ++passed;
    Json item;
    item["label"] = entries[i].label;
    for (auto& [key, value] : r.json.items()) item[key] = std::move(value);
    list.push_back(std::move(item));
  }
  out.json["schema"] = kSchemaVersion;
  out.json["grid"] = std::move(list);
  out.json["summary"] = Json{{"jobs", entries.size()}, {"passed", passed}};
  out.json["status"] = to_string(out.status);
  out.json["pass"] = out.status == Status::Pass;
  return out;
}

}  // namespace fermatci::app
