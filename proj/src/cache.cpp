// Copyright 2026 The Termmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "termmap/cache.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <unistd.h>

#include <spdlog/spdlog.h>

#include "termmap/csv.hpp"
#include "termmap/error.hpp"
#include "termmap/fetch.hpp"

namespace termmap {
namespace fs = std::filesystem;
namespace {

constexpr char kManifest[] = "manifest.txt";
constexpr char kTerms[] = "terms.tsv";

std::string FormatTime(std::chrono::system_clock::time_point t) {
  std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

std::chrono::system_clock::time_point ParseTime(const std::string& text) {
  std::tm tm{};
  std::istringstream in(text);
  in >> std::get_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  if (in.fail()) return {};
  return std::chrono::system_clock::from_time_t(timegm(&tm));
}

void WriteFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw Error("cannot write " + path.string());
}

std::map<std::string, std::string> ReadManifest(const fs::path& path) {
  std::map<std::string, std::string> values;
  std::istringstream in(ReadFile(path.string()));
  std::string line;
  while (std::getline(in, line)) {
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string value = line.substr(colon + 1);
    if (!value.empty() && value.front() == ' ') value.erase(0, 1);
    values[line.substr(0, colon)] = value;
  }
  return values;
}

std::string UniqueSuffix() {
  static std::atomic<unsigned> counter{0};
  auto now = std::chrono::steady_clock::now().time_since_epoch().count();
  return std::to_string(::getpid()) + "-" + std::to_string(now) + "-" +
         std::to_string(counter++);
}

}  // namespace

bool IsValidAcronym(std::string_view acronym) {
  return !acronym.empty() && std::all_of(acronym.begin(), acronym.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

OntologyCache::OntologyCache(fs::path root) : root_(std::move(root)) {}

fs::path OntologyCache::DefaultRoot() {
  if (const char* env = std::getenv("TERMMAP_CACHE_DIR"); env && *env) return env;
  return fs::current_path() / ".termmap-cache";
}

CacheEntry OntologyCache::CacheOntology(const std::string& source_locator,
                                        const std::string& acronym) {
  if (!IsValidAcronym(acronym)) {
    throw ConfigError("invalid cache acronym '" + acronym + "' (allowed: A-Z a-z 0-9 _ -)");
  }
  Ontology ontology = LoadOntology(source_locator, acronym);
  return Store(ontology, acronym);
}

CacheEntry OntologyCache::Store(const Ontology& ontology, const std::string& acronym) {
  if (!IsValidAcronym(acronym)) {
    throw ConfigError("invalid cache acronym '" + acronym + "' (allowed: A-Z a-z 0-9 _ -)");
  }
  fs::create_directories(root_ / ".entries");
  std::string version_dir = acronym + "-" + UniqueSuffix();
  fs::path dir = root_ / ".entries" / version_dir;
  fs::create_directories(dir);

  CacheEntry entry;
  entry.acronym = acronym;
  entry.path = root_ / acronym;
  entry.created_at = std::chrono::system_clock::now();
  entry.source_locator = ontology.source_locator();
  entry.term_count = ontology.size();

  WriteFile(dir / kTerms, SerializeTermTable(ontology, '\t'));
  std::ostringstream manifest;
  manifest << "acronym: " << acronym << "\n"
           << "source: " << entry.source_locator << "\n"
           << "created_at: " << FormatTime(entry.created_at) << "\n"
           << "term_count: " << entry.term_count << "\n"
           << "format: term-table-tsv\n";
  if (ontology.version_info()) manifest << "version_info: " << *ontology.version_info() << "\n";
  WriteFile(dir / kManifest, manifest.str());

  // Swap the acronym symlink in one rename; readers see old or new, never half.
  fs::path link = root_ / acronym;
  fs::path tmp_link = root_ / (".link-" + version_dir);
  fs::create_directory_symlink(fs::path(".entries") / version_dir, tmp_link);
  fs::path previous;
  if (fs::is_symlink(link)) previous = root_ / fs::read_symlink(link);
  fs::rename(tmp_link, link);
  if (!previous.empty()) {
    std::error_code ec;
    fs::remove_all(previous, ec);
  }
  return entry;
}

CacheSetResult OntologyCache::CacheOntologySet(const std::vector<OntologySetRow>& rows) {
  if (rows.empty()) throw InputError("ontology set table has no rows");
  CacheSetResult result;
  // Last row wins for duplicate acronyms.
  std::map<std::string, std::size_t> last_row;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (auto [it, inserted] = last_row.try_emplace(rows[i].acronym, i); !inserted) {
      std::string warning = "duplicate acronym '" + rows[i].acronym +
                            "' in ontology set; using the last row";
      spdlog::warn(warning);
      result.warnings.push_back(std::move(warning));
      it->second = i;
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (last_row[rows[i].acronym] != i) continue;
    try {
      result.entries.push_back(CacheOntology(rows[i].locator, rows[i].acronym));
    } catch (const std::exception& e) {
      result.failures.push_back({rows[i].acronym, rows[i].locator, e.what()});
    }
  }
  return result;
}

bool OntologyCache::Contains(const std::string& acronym) const {
  return IsValidAcronym(acronym) && fs::exists(root_ / acronym / kManifest);
}

std::vector<std::string> OntologyCache::Acronyms() const {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& item : fs::directory_iterator(root_, ec)) {
    std::string name = item.path().filename().string();
    if (!name.empty() && name.front() != '.' && Contains(name)) out.push_back(name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CacheEntry OntologyCache::Entry(const std::string& acronym) const {
  if (!Contains(acronym)) {
    std::string available;
    for (const auto& a : Acronyms()) available += (available.empty() ? "" : ", ") + a;
    throw NotFoundError("no cached ontology '" + acronym + "'; available: [" +
                        available + "]");
  }
  auto manifest = ReadManifest(root_ / acronym / kManifest);
  CacheEntry entry;
  entry.acronym = acronym;
  entry.path = root_ / acronym;
  entry.source_locator = manifest["source"];
  entry.created_at = ParseTime(manifest["created_at"]);
  entry.term_count = std::stoul(manifest["term_count"]);
  return entry;
}

Ontology OntologyCache::Load(const std::string& acronym) const {
  CacheEntry entry = Entry(acronym);
  // Resolve the link once so a concurrent re-cache cannot mix versions.
  fs::path dir = fs::canonical(entry.path);
  auto manifest = ReadManifest(dir / kManifest);
  Ontology stored = ParseTermTable(ReadFile((dir / kTerms).string()), '\t');
  std::optional<std::string> version;
  if (auto it = manifest.find("version_info"); it != manifest.end()) version = it->second;
  auto terms = stored.terms();
  return Ontology(acronym, manifest["source"], std::move(terms), std::move(version));
}

std::vector<OntologySetRow> ParseOntologySetTable(std::string_view bytes, char separator) {
  auto records = csv::Parse(bytes, separator);
  if (records.empty()) throw FormatError("ontology set table is empty");
  const auto& header = records.front().fields;
  auto acronym_col = csv::ColumnIndex(header, "acronym");
  auto locator_col = csv::ColumnIndex(header, "locator");
  if (!locator_col) locator_col = csv::ColumnIndex(header, "url");
  if (!locator_col) locator_col = csv::ColumnIndex(header, "path");
  if (!acronym_col || !locator_col) {
    throw FormatError("ontology set table needs 'acronym' and 'locator' columns");
  }
  std::vector<OntologySetRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i].fields;
    OntologySetRow row;
    if (*acronym_col < f.size()) row.acronym = f[*acronym_col];
    if (*locator_col < f.size()) row.locator = f[*locator_col];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace termmap
