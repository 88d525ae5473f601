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

#include "termmap/service.hpp"

#include <chrono>
#include <condition_variable>
#include <deque>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include <spdlog/spdlog.h>

#include "httplib.h"
#include "json.hpp"
#include "termmap/cache.hpp"
#include "termmap/engine.hpp"
#include "termmap/error.hpp"
#include "termmap/fetch.hpp"
#include "termmap/hierarchy.hpp"

namespace termmap {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

enum class JobState { kQueued, kRunning, kDone, kFailed };

std::string_view ToString(JobState s) {
  switch (s) {
    case JobState::kQueued: return "Queued";
    case JobState::kRunning: return "Running";
    case JobState::kDone: return "Done";
    case JobState::kFailed: return "Failed";
  }
  return "Queued";
}

struct LoadedOntology {
  Ontology ontology;
  HierarchyIndex hierarchy;
};

struct Job {
  std::string id;
  JobState state = JobState::kQueued;
  MappingConfig config;
  std::chrono::system_clock::time_point submitted_at;
  std::optional<std::string> error;

  // Inputs, dropped once the job has run.
  std::string source_content;
  std::string ontology_bytes;  // uploaded ontology file
  std::string ontology_name;   // upload file name
  std::string target;          // path/URL or cached acronym

  std::shared_ptr<const LoadedOntology> ontology;
};

struct Session {
  std::mutex mu;
  MappingTable table;
  std::vector<std::uint64_t> versions;  // parallel to table.rows
  std::shared_ptr<const LoadedOntology> ontology;
};

// A bad request, reported as `status` with a JSON error body.
struct HttpFailure {
  int status;
  std::string message;
};

std::string NewId() {
  static std::mutex mu;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard<std::mutex> lock(mu);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(rng()));
  return buf;
}

std::string FormatTime(std::chrono::system_clock::time_point t) {
  std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void SendJson(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void SendError(httplib::Response& res, int status, const std::string& message) {
  SendJson(res, status, json{{"error", message}});
}

bool ParseFlag(const std::string& value) {
  return value == "true" || value == "1" || value == "on" || value == "yes";
}

json RowJson(const Mapping& m, std::size_t index, std::uint64_t version) {
  json row = {{"row", index},
              {"target_iri", m.target_iri},
              {"target_curie", m.target_curie},
              {"target_label", m.target_label},
              {"score", m.score},
              {"rank", m.rank},
              {"mapper", ToString(m.mapper)},
              {"matched_string", m.matched_string},
              {"mapping_type", ToString(m.mapping_type)},
              {"approval", ToString(m.approval)},
              {"version", version}};
  return row;
}

json SourceJson(const SourceTerm& s) {
  return {{"text", s.text},
          {"id", s.id ? json(*s.id) : json(nullptr)},
          {"tags", s.tags}};
}

// Rows grouped per source term; alternates follow rank 1.
json TableJson(const std::string& id, const Session& session) {
  const auto& table = session.table;
  json metadata = json::object();
  for (const auto& [k, v] : table.metadata) metadata[k] = v;
  json terms = json::array();
  for (std::size_t i = 0; i < table.rows.size();) {
    std::size_t j = i;
    json rows = json::array();
    while (j < table.rows.size() && table.rows[j].source == table.rows[i].source) {
      if (table.rows[j].has_target()) rows.push_back(RowJson(table.rows[j], j, session.versions[j]));
      ++j;
    }
    json term = SourceJson(table.rows[i].source);
    term["first_row"] = i;
    term["mappings"] = std::move(rows);
    terms.push_back(std::move(term));
    i = j;
  }
  json unmapped = json::array();
  for (const auto& u : table.unmapped) unmapped.push_back(SourceJson(u));
  return {{"session_id", id}, {"metadata", metadata}, {"terms", terms}, {"unmapped", unmapped}};
}

}  // namespace

struct MappingService::Impl {
  ServiceOptions options;
  httplib::Server server;

  std::mutex mu;
  std::condition_variable cv;
  bool stopping = false;
  std::deque<std::string> queue;
  std::map<std::string, std::shared_ptr<Job>> jobs;
  std::map<std::string, std::shared_ptr<Session>> sessions;
  std::vector<std::thread> workers;

  explicit Impl(ServiceOptions opts) : options(std::move(opts)) {
    std::error_code ec;
    fs::create_directories(options.session_dir, ec);
    LoadSessions();
    Routes();
    for (std::size_t i = 0; i < std::max<std::size_t>(1, options.workers); ++i) {
      workers.emplace_back([this] { WorkerLoop(); });
    }
  }

  ~Impl() {
    {
      std::lock_guard<std::mutex> lock(mu);
      stopping = true;
    }
    cv.notify_all();
    server.stop();
    for (auto& w : workers) w.join();
  }

  void LoadSessions() {
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(options.session_dir, ec)) {
      if (entry.path().extension() != ".csv") continue;
      try {
        auto session = std::make_shared<Session>();
        session->table = ReadMappingTable(entry.path().string());
        session->versions.assign(session->table.rows.size(), 0);
        sessions[entry.path().stem().string()] = std::move(session);
      } catch (const std::exception& e) {
        spdlog::warn("skipping unreadable session {}: {}", entry.path().string(), e.what());
      }
    }
  }

  void Persist(const std::string& id, const Session& session) {
    fs::path path = options.session_dir / (id + ".csv");
    fs::path tmp = options.session_dir / (id + ".csv.tmp");
    try {
      WriteMappingTable(session.table, tmp.string());
      fs::rename(tmp, path);
    } catch (const std::exception& e) {
      spdlog::error("cannot persist session {}: {}", id, e.what());
    }
  }

  std::shared_ptr<Session> AddSession(const std::string& id, MappingTable table,
                                      std::shared_ptr<const LoadedOntology> ontology) {
    auto session = std::make_shared<Session>();
    session->table = std::move(table);
    session->versions.assign(session->table.rows.size(), 0);
    session->ontology = std::move(ontology);
    {
      std::lock_guard<std::mutex> lock(session->mu);
      Persist(id, *session);
    }
    std::lock_guard<std::mutex> lock(mu);
    sessions[id] = session;
    return session;
  }

  void WorkerLoop() {
    for (;;) {
      std::shared_ptr<Job> job;
      {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return stopping || !queue.empty(); });
        if (stopping) return;
        job = jobs.at(queue.front());
        queue.pop_front();
        job->state = JobState::kRunning;
      }
      RunJob(*job);
    }
  }

  std::shared_ptr<const LoadedOntology> LoadJobOntology(const Job& job) {
    auto loaded = std::make_shared<LoadedOntology>();
    if (!job.ontology_bytes.empty()) {
      auto first = job.ontology_bytes.find_first_not_of(" \t\r\n");
      bool is_json = first != std::string::npos && job.ontology_bytes[first] == '{';
      bool is_tsv = job.ontology_name.size() >= 4 &&
                    job.ontology_name.compare(job.ontology_name.size() - 4, 4, ".tsv") == 0;
      loaded->ontology = is_json ? ParseObograph(job.ontology_bytes)
                                 : ParseTermTable(job.ontology_bytes, is_tsv ? '\t' : ',');
      loaded->ontology.set_source_locator(job.ontology_name);
    } else {
      MappingConfig resolve = job.config;
      resolve.cache_root = options.cache_root;
      loaded->ontology = ResolveOntology(job.target, resolve);
      if (job.config.use_cache && loaded->ontology.acronym().empty()) {
        loaded->ontology.set_acronym(job.target);
      }
    }
    loaded->hierarchy = BuildHierarchy(loaded->ontology);
    return loaded;
  }

  void RunJob(Job& job) {
    MappingTable table;
    std::shared_ptr<const LoadedOntology> ontology;
    std::optional<std::string> error;
    try {
      auto terms = ReadSourceTerms(job.source_content, job.config);
      bool remote = job.config.mapper == Mapper::kZooma || job.config.mapper == Mapper::kBioportal;
      if (remote) {
        table = MapTerms(std::move(terms), job.target, job.config, options.transport.get());
      } else {
        ontology = LoadJobOntology(job);
        table = MapTerms(std::move(terms), ontology->ontology, job.config, options.transport.get());
      }
    } catch (const std::exception& e) {
      error = e.what();
    }
    if (!error) AddSession(job.id, std::move(table), ontology);
    std::lock_guard<std::mutex> lock(mu);
    job.source_content.clear();
    job.ontology_bytes.clear();
    job.ontology = ontology;
    job.error = error;
    job.state = error ? JobState::kFailed : JobState::kDone;
  }

  // Multipart form values (0.16 keeps text fields with the files) or
  // urlencoded parameters.
  static std::optional<std::string> Field(const httplib::Request& req, const std::string& name) {
    if (req.has_file(name)) return req.get_file_value(name).content;
    if (req.has_param(name)) return req.get_param_value(name);
    return std::nullopt;
  }

  MappingConfig ParseConfig(const httplib::Request& req) {
    MappingConfig config;
    config.cache_root = options.cache_root;
    try {
      if (auto v = Field(req, "mapper")) {
        auto m = ParseMapper(*v);
        if (!m) throw HttpFailure{400, "unknown mapper '" + *v + "'"};
        config.mapper = *m;
      }
      if (auto v = Field(req, "max_mappings")) config.max_mappings = std::stoul(*v);
      if (auto v = Field(req, "min_score")) config.min_score = std::stod(*v);
      if (auto v = Field(req, "excl_deprecated")) config.excl_deprecated = ParseFlag(*v);
      if (auto v = Field(req, "incl_unmapped")) config.incl_unmapped = ParseFlag(*v);
      if (auto v = Field(req, "use_cache")) config.use_cache = ParseFlag(*v);
      if (auto v = Field(req, "include_broad_synonyms")) config.include_broad_synonyms = ParseFlag(*v);
      if (auto v = Field(req, "ngram_size")) config.ngram_size = std::stoul(*v);
      if (auto v = Field(req, "term_type")) config.term_type = ParseTermTypeFilter(*v);
      if (auto v = Field(req, "csv_column"); v && !v->empty()) config.csv_column = *v;
      if (auto v = Field(req, "ids_column"); v && !v->empty()) config.source_terms_ids_column = *v;
      if (auto v = Field(req, "separator"); v && !v->empty()) {
        config.separator = (*v == "\\t" || *v == "tab") ? '\t' : (*v)[0];
      }
      if (auto v = Field(req, "base_iris"); v && !v->empty()) {
        std::size_t start = 0;
        while (start <= v->size()) {
          std::size_t end = v->find(',', start);
          if (end == std::string::npos) end = v->size();
          if (end > start) config.base_iris.push_back(v->substr(start, end - start));
          start = end + 1;
        }
      }
      if (auto v = Field(req, "api_key")) config.bioportal_api_key = *v;
      config.Validate();
    } catch (const HttpFailure&) {
      throw;
    } catch (const std::exception& e) {
      throw HttpFailure{400, std::string("invalid configuration: ") + e.what()};
    }
    return config;
  }

  void SubmitJob(const httplib::Request& req, httplib::Response& res) {
    auto job = std::make_shared<Job>();
    job->id = NewId();
    job->submitted_at = std::chrono::system_clock::now();
    job->config = ParseConfig(req);

    if (auto text = Field(req, "source_text"); text && !text->empty()) {
      job->source_content = *text;
    } else if (auto file = Field(req, "source_file"); file && !file->empty()) {
      job->source_content = *file;
    } else {
      throw HttpFailure{400, "missing field: source_text or source_file"};
    }
    if (req.has_file("ontology_file") && !req.get_file_value("ontology_file").content.empty()) {
      auto file = req.get_file_value("ontology_file");
      job->ontology_bytes = file.content;
      job->ontology_name = file.filename.empty() ? "upload" : file.filename;
    } else if (auto url = Field(req, "ontology_url"); url && !url->empty()) {
      job->target = *url;
    } else if (auto acronym = Field(req, "ontology"); acronym && !acronym->empty()) {
      job->target = *acronym;
    } else {
      throw HttpFailure{400, "missing field: ontology_file, ontology_url or ontology"};
    }
    {
      std::lock_guard<std::mutex> lock(mu);
      jobs[job->id] = job;
      queue.push_back(job->id);
    }
    cv.notify_one();
    SendJson(res, 202, json{{"job_id", job->id}, {"state", ToString(JobState::kQueued)}});
  }

  std::shared_ptr<Job> FindJob(const std::string& id) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = jobs.find(id);
    if (it == jobs.end()) throw HttpFailure{404, "unknown job '" + id + "'"};
    return it->second;
  }

  std::shared_ptr<Session> FindSession(const std::string& id) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = sessions.find(id);
    if (it == sessions.end()) throw HttpFailure{404, "unknown session '" + id + "'"};
    return it->second;
  }

  // The job's session, 409 until the job is done.
  std::shared_ptr<Session> DoneJobSession(const std::string& id) {
    auto job = FindJob(id);
    {
      std::lock_guard<std::mutex> lock(mu);
      if (job->state != JobState::kDone) {
        std::string msg = "job " + id + " is " + std::string(ToString(job->state));
        if (job->error) msg += ": " + *job->error;
        throw HttpFailure{409, msg};
      }
    }
    return FindSession(id);
  }

  json JobJson(const Job& job) {
    std::lock_guard<std::mutex> lock(mu);
    return {{"job_id", job.id},
            {"state", ToString(job.state)},
            {"submitted_at", FormatTime(job.submitted_at)},
            {"error", job.error ? json(*job.error) : json(nullptr)}};
  }

  json PatchRow(const std::string& id, std::size_t row, const json& body) {
    auto session = FindSession(id);
    std::lock_guard<std::mutex> lock(session->mu);
    auto& rows = session->table.rows;
    if (row >= rows.size()) throw HttpFailure{404, "row " + std::to_string(row) + " not found"};
    if (!body.is_object()) throw HttpFailure{422, "body must be a JSON object"};

    std::optional<MappingType> type;
    std::optional<Approval> approval;
    if (body.contains("mapping_type")) {
      if (!body["mapping_type"].is_string() ||
          !(type = ParseMappingType(body["mapping_type"].get<std::string>()))) {
        throw HttpFailure{422, "mapping_type must be one of Exact, Broad, Narrow"};
      }
    }
    if (body.contains("approval")) {
      if (!body["approval"].is_string() ||
          !(approval = ParseApproval(body["approval"].get<std::string>()))) {
        throw HttpFailure{422, "approval must be one of Unapproved, Approved, Rejected"};
      }
    }

    std::size_t target = row;
    if (body.contains("alternate_iri") || body.contains("alternate_rank")) {
      // Swap the rank-1 row of this term with the named alternate.
      std::size_t begin = row, end = row + 1;
      while (begin > 0 && rows[begin - 1].source == rows[row].source) --begin;
      while (end < rows.size() && rows[end].source == rows[row].source) ++end;
      std::optional<std::size_t> alt;
      for (std::size_t k = begin; k < end; ++k) {
        bool hit = body.contains("alternate_iri")
                       ? body["alternate_iri"].is_string() &&
                             rows[k].target_iri == body["alternate_iri"].get<std::string>()
                       : body["alternate_rank"].is_number_unsigned() &&
                             rows[k].rank == body["alternate_rank"].get<std::size_t>();
        if (hit) alt = k;
      }
      if (!alt || !rows[*alt].has_target()) throw HttpFailure{422, "alternate not found for this term"};
      std::size_t first = begin;
      for (std::size_t k = begin; k < end; ++k) {
        if (rows[k].rank == 1) first = k;
      }
      // Rows trade places; ranks stay with the positions.
      std::swap(rows[first], rows[*alt]);
      std::swap(rows[first].rank, rows[*alt].rank);
      ++session->versions[first];
      ++session->versions[*alt];
      target = first;
    }
    if (type) rows[target].mapping_type = *type;
    if (approval) rows[target].approval = *approval;
    ++session->versions[target];
    Persist(id, *session);
    return RowJson(rows[target], target, session->versions[target]);
  }

  json Neighborhood(const std::string& job_id, const std::string& iri) {
    auto job = FindJob(job_id);
    std::shared_ptr<const LoadedOntology> loaded;
    {
      std::lock_guard<std::mutex> lock(mu);
      loaded = job->ontology;
    }
    if (!loaded) throw HttpFailure{409, "job " + job_id + " has no loaded ontology"};
    const Ontology& ontology = loaded->ontology;
    const OntologyTerm* term = ontology.Find(iri);
    if (!term) throw HttpFailure{404, "unknown term '" + iri + "'"};
    auto describe = [&](const std::string& id) {
      const OntologyTerm* t = ontology.Find(id);
      return json{{"iri", id},
                  {"curie", t ? t->curie : CurieFromIri(id)},
                  {"label", t ? t->display_label() : ""},
                  {"parents", t ? json(loaded->hierarchy.ParentsOf(t->iri)) : json::array()}};
    };
    json ancestors = json::array(), children = json::array(), instances = json::array();
    for (const auto& a : loaded->hierarchy.AncestorsOf(term->iri)) ancestors.push_back(describe(a));
    for (const auto& c : term->children) children.push_back(describe(c));
    for (const auto& i : term->instances) instances.push_back(describe(i));
    return {{"iri", term->iri},
            {"curie", term->curie},
            {"labels", term->labels},
            {"parents", loaded->hierarchy.ParentsOf(term->iri)},
            {"ancestors", ancestors},
            {"children", children},
            {"instances", instances}};
  }

  template <typename Fn>
  httplib::Server::Handler Guard(Fn fn) {
    return [fn](const httplib::Request& req, httplib::Response& res) {
      try {
        fn(req, res);
      } catch (const HttpFailure& f) {
        SendError(res, f.status, f.message);
      } catch (const std::exception& e) {
        SendError(res, 500, e.what());
      }
    };
  }

  void Routes() {
    server.set_payload_max_length(options.max_payload_bytes);

    server.Post("/api/jobs", Guard([this](const auto& req, auto& res) { SubmitJob(req, res); }));

    server.Get(R"(/api/jobs/([0-9a-f]+))", Guard([this](const auto& req, auto& res) {
                 SendJson(res, 200, JobJson(*FindJob(req.matches[1])));
               }));

    server.Get(R"(/api/jobs/([0-9a-f]+)/result)", Guard([this](const auto& req, auto& res) {
                 std::string id = req.matches[1];
                 auto session = DoneJobSession(id);
                 std::lock_guard<std::mutex> lock(session->mu);
                 SendJson(res, 200, TableJson(id, *session));
               }));

    server.Get(R"(/api/jobs/([0-9a-f]+)/result\.csv)", Guard([this](const auto& req, auto& res) {
                 auto session = DoneJobSession(req.matches[1]);
                 std::lock_guard<std::mutex> lock(session->mu);
                 res.set_content(FormatMappingTable(session->table), "text/csv");
               }));

    server.Get(R"(/api/jobs/([0-9a-f]+)/graphs)", Guard([this](const auto& req, auto& res) {
                 std::string id = req.matches[1];
                 auto session = DoneJobSession(id);
                 auto job = FindJob(id);
                 std::lock_guard<std::mutex> lock(session->mu);
                 if (!job->ontology) throw HttpFailure{409, "job has no loaded ontology"};
                 res.set_content(ExportTermGraphs(session->table, job->ontology->ontology,
                                                  job->ontology->hierarchy),
                                 "application/json");
               }));

    server.Post("/api/sessions/resume", Guard([this](const auto& req, auto& res) {
                  std::string content;
                  if (req.is_multipart_form_data()) {
                    if (req.has_file("mapping_table")) {
                      content = req.get_file_value("mapping_table").content;
                    } else if (!req.files.empty()) {
                      content = req.files.begin()->second.content;
                    }
                  } else {
                    content = req.body;
                  }
                  if (content.find_first_not_of(" \t\r\n") == std::string::npos) {
                    throw HttpFailure{400, "empty mapping table"};
                  }
                  MappingTable table;
                  try {
                    table = ParseMappingTable(content);
                  } catch (const std::exception& e) {
                    throw HttpFailure{400, e.what()};
                  }
                  std::string id = NewId();
                  auto session = AddSession(id, std::move(table), nullptr);
                  std::lock_guard<std::mutex> lock(session->mu);
                  SendJson(res, 201, TableJson(id, *session));
                }));

    server.Get(R"(/api/sessions/([0-9a-f]+))", Guard([this](const auto& req, auto& res) {
                 std::string id = req.matches[1];
                 auto session = FindSession(id);
                 std::lock_guard<std::mutex> lock(session->mu);
                 SendJson(res, 200, TableJson(id, *session));
               }));

    server.Get(R"(/api/sessions/([0-9a-f]+)/result\.csv)", Guard([this](const auto& req, auto& res) {
                 auto session = FindSession(req.matches[1]);
                 std::lock_guard<std::mutex> lock(session->mu);
                 res.set_content(FormatMappingTable(session->table), "text/csv");
               }));

    server.Patch(R"(/api/sessions/([0-9a-f]+)/rows/(\d+))", Guard([this](const auto& req, auto& res) {
                   json body;
                   try {
                     body = json::parse(req.body);
                   } catch (const json::exception& e) {
                     throw HttpFailure{422, std::string("invalid JSON body: ") + e.what()};
                   }
                   SendJson(res, 200, PatchRow(req.matches[1], std::stoul(req.matches[2]), body));
                 }));

    server.Get("/api/terms/neighborhood", Guard([this](const auto& req, auto& res) {
                 if (!req.has_param("iri") || !req.has_param("job")) {
                   throw HttpFailure{400, "iri and job query parameters are required"};
                 }
                 SendJson(res, 200, Neighborhood(req.get_param_value("job"), req.get_param_value("iri")));
               }));
  }
};

MappingService::MappingService(ServiceOptions options)
    : impl_(std::make_unique<Impl>(std::move(options))) {}

MappingService::~MappingService() = default;

int MappingService::BindToAnyPort(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool MappingService::Bind(const std::string& host, int port) {
  return impl_->server.bind_to_port(host, port);
}

bool MappingService::Run() { return impl_->server.listen_after_bind(); }

void MappingService::Stop() { impl_->server.stop(); }

void MappingService::WaitUntilReady() const { impl_->server.wait_until_ready(); }

}  // namespace termmap
