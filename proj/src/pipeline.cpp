#include "mediagraph/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "mediagraph/activity.hpp"
#include "mediagraph/audience.hpp"
#include "mediagraph/coverage.hpp"
#include "mediagraph/graph_io.hpp"
#include "mediagraph/parallel.hpp"
#include "mediagraph/shorts.hpp"

namespace mediagraph {
namespace {

constexpr std::array<std::string_view, 26> kConfigKeys = {
    "corpus_dir",       "channels_file",      "videos_file",
    "comments_file",    "window_start",       "window_end",
    "output_dir",       "shorts_resolver",    "shorts_template",
    "shorts_delay_ms",  "shorts_timeout_s",   "threshold",
    "include_zero_comment_videos",            "max_commenters_per_video",
    "diameter_max_nodes", "chpwg_scope",      "top_edges",
    "group_by",         "gazetteer",          "backend",
    "backend_endpoint", "backend_model",      "backend_token",
    "backend_fixture",  "backend_timeout_s",  "parallel"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t to_uint(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    throw Error(ErrorCode::Config,
                fmt::format("'{}' needs a non-negative integer, got '{}'", key, v));
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  std::string s(v);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
  if (s == "false" || s == "no" || s == "0" || s == "off") return false;
  throw Error(ErrorCode::Config, fmt::format("'{}' needs true or false, got '{}'", key, v));
}

Date to_date(std::string_view key, std::string_view v) {
  const auto d = parse_date(v);
  if (!d) throw Error(ErrorCode::Config, fmt::format("'{}' needs YYYY-MM-DD, got '{}'", key, v));
  return *d;
}

fs::path resolve(const fs::path& base, std::string_view v) {
  if (v.empty()) return {};
  fs::path p{std::string(v)};
  if (p.is_relative() && !base.empty()) p = base / p;
  return p;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, fmt::format("cannot write '{}'", path.string()));
  out << content;
}

std::string hex(const unsigned char* data, unsigned len) {
  std::string out;
  out.reserve(len * 2);
  for (unsigned i = 0; i < len; ++i) out += fmt::format("{:02x}", data[i]);
  return out;
}

struct DigestCtx {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  DigestCtx() {
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
      throw Error(ErrorCode::Io, "sha256 initialisation failed");
    }
  }
  ~DigestCtx() { EVP_MD_CTX_free(ctx); }
  void update(const void* data, std::size_t n) { EVP_DigestUpdate(ctx, data, n); }
  std::string finish() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    EVP_DigestFinal_ex(ctx, md, &len);
    return hex(md, len);
  }
};

std::vector<fs::path> sorted_files(const fs::path& dir, std::string_view extension = {}) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    if (!extension.empty() && e.path().extension() != extension) continue;
    out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------- config

void PipelineConfig::set(std::string_view key, std::string_view raw, const fs::path& base) {
  auto v = trim(raw);
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) {
    v = v.substr(1, v.size() - 2);
  }
  const std::string value(v);
  if (key == "corpus_dir") corpus_dir = resolve(base, v);
  else if (key == "channels_file") channels_file = resolve(base, v);
  else if (key == "videos_file") videos_file = resolve(base, v);
  else if (key == "comments_file") comments_file = resolve(base, v);
  else if (key == "window_start") window_start = to_date(key, v);
  else if (key == "window_end") window_end = to_date(key, v);
  else if (key == "output_dir") output_dir = resolve(base, v);
  else if (key == "shorts_resolver") shorts_resolver = value;
  else if (key == "shorts_template") shorts_template = value;
  else if (key == "shorts_delay_ms") shorts_delay = std::chrono::milliseconds(to_uint(key, v));
  else if (key == "shorts_timeout_s") shorts_timeout = std::chrono::seconds(to_uint(key, v));
  else if (key == "threshold") threshold = static_cast<std::uint32_t>(to_uint(key, v));
  else if (key == "include_zero_comment_videos") include_zero_comment_videos = to_bool(key, v);
  else if (key == "max_commenters_per_video") max_commenters_per_video = to_uint(key, v);
  else if (key == "diameter_max_nodes") diameter_max_nodes = to_uint(key, v);
  else if (key == "chpwg_scope") chpwg_scope = value;
  else if (key == "top_edges") top_edges = to_uint(key, v);
  else if (key == "group_by") group_by = value;
  else if (key == "gazetteer") gazetteer = resolve(base, v);
  else if (key == "backend") backend = value;
  else if (key == "backend_endpoint") backend_endpoint = value;
  else if (key == "backend_model") backend_model = value;
  else if (key == "backend_token") backend_token = value;
  else if (key == "backend_fixture") backend_fixture = resolve(base, v);
  else if (key == "backend_timeout_s") backend_timeout = std::chrono::seconds(to_uint(key, v));
  else if (key == "parallel") parallel = std::max<std::size_t>(1, to_uint(key, v));
  else throw Error(ErrorCode::Config, fmt::format("unknown config key '{}'", key));
}

PipelineConfig PipelineConfig::parse(std::string_view text, const fs::path& base_dir,
                                     const std::string& source) {
  PipelineConfig config;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const auto line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::Config, fmt::format("{}:{}: expected key = value", source, line_no));
    }
    try {
      config.set(trim(line.substr(0, eq)), line.substr(eq + 1), base_dir);
    } catch (const Error& e) {
      throw Error(ErrorCode::Config, fmt::format("{}:{}: {}", source, line_no, e.what()));
    }
  }
  return config;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  auto config = parse(read_file(path), path.parent_path(), path.string());
  config.apply_env();
  return config;
}

void PipelineConfig::apply_env() {
  for (auto key : kConfigKeys) {
    std::string name = "MEDIAGRAPH_";
    for (char c : key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (const char* v = std::getenv(name.c_str())) set(key, v);
  }
}

void PipelineConfig::validate() const {
  if (threshold < 1) throw Error(ErrorCode::Config, "threshold must be at least 1");
  if (window_end < window_start) throw Error(ErrorCode::Config, "window_end precedes window_start");
  if (shorts_resolver != "none" && shorts_resolver != "http") {
    throw Error(ErrorCode::Config, fmt::format("unknown shorts_resolver '{}'", shorts_resolver));
  }
  if (chpwg_scope != "all" && chpwg_scope != "nm" && chpwg_scope != "pp") {
    throw Error(ErrorCode::Config, fmt::format("unknown chpwg_scope '{}'", chpwg_scope));
  }
  if (group_by != "orientation") {
    throw Error(ErrorCode::Config, fmt::format("unsupported group_by '{}'", group_by));
  }
  if (backend != "gazetteer" && backend != "http" && backend != "fixture") {
    throw Error(ErrorCode::Config, fmt::format("unknown backend '{}'", backend));
  }
  if (channels_path().empty() || videos_path().empty() || comments_path().empty()) {
    throw Error(ErrorCode::Config, "corpus_dir or all three corpus files must be set");
  }
}

fs::path PipelineConfig::channels_path() const {
  if (!channels_file.empty()) return channels_file;
  return corpus_dir.empty() ? fs::path{} : corpus_dir / kChannelsFile;
}
fs::path PipelineConfig::videos_path() const {
  if (!videos_file.empty()) return videos_file;
  return corpus_dir.empty() ? fs::path{} : corpus_dir / kVideosFile;
}
fs::path PipelineConfig::comments_path() const {
  if (!comments_file.empty()) return comments_file;
  return corpus_dir.empty() ? fs::path{} : corpus_dir / kCommentsFile;
}

// ---------------------------------------------------------------- hashing

std::string sha256_hex(std::string_view data) {
  DigestCtx d;
  d.update(data.data(), data.size());
  return d.finish();
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, fmt::format("cannot open '{}'", path.string()));
  DigestCtx d;
  std::vector<char> buf(1 << 20);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    d.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return d.finish();
}

// ---------------------------------------------------------------- stage blocks

void write_shorts_labels(const fs::path& path, const Corpus& corpus) {
  std::string out;
  for (const auto& v : corpus.videos()) {
    nlohmann::ordered_json j;
    j["video_id"] = v.id;
    j["shorts_label"] = std::string(to_string(v.shorts_label));
    out += j.dump();
    out += '\n';
  }
  write_file(path, out);
}

Corpus apply_shorts_labels(const Corpus& corpus, const fs::path& path) {
  std::vector<ShortsLabel> labels;
  for (const auto& v : corpus.videos()) labels.push_back(v.shorts_label);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, fmt::format("cannot open '{}'", path.string()));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const auto id = j.at("video_id").get<std::string>();
      const auto label = parse_shorts_label(j.at("shorts_label").get<std::string>());
      if (!label) throw ParseError(path.string(), line_no, "unknown shorts_label");
      if (const auto v = corpus.find_video(id)) labels[*v] = *label;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
  }
  return corpus.with_shorts_labels(std::move(labels));
}

std::vector<fs::path> write_graph_files(const Corpus& corpus, const fs::path& dir,
                                        const GraphFileOptions& options) {
  fs::create_directories(dir);
  const auto& channels = corpus.channels();
  std::vector<std::vector<fs::path>> written(channels.size());
  parallel_for(channels.size(), options.workers, [&](std::size_t c) {
    const auto& ch = channels[c];
    const auto vcg = build_vcg(ch.id, corpus, options.vcg);
    if (vcg.edge_count() == 0) return;
    ProjectionOptions projection;
    projection.max_commenters_per_video = options.max_commenters_per_video;
    const auto cpwg = project_commenters(vcg, projection);
    const auto stem = file_stem_for(ch.id);
    auto tag = [&](GraphRecord r) {
      r.header.channel_kind = ch.kind;
      r.header.orientation = ch.orientation;
      return r;
    };
    written[c].push_back(dir / (stem + ".vcg"));
    write_graph(written[c].back(), tag(record_of(vcg)));
    written[c].push_back(dir / (stem + ".cpwg"));
    write_graph(written[c].back(), tag(record_of(cpwg, GraphKind::CPWG, ch.id)));
    if (options.avcg_threshold) {
      written[c].push_back(dir / (stem + ".avcg"));
      write_graph(written[c].back(),
                  tag(record_of(build_avcg(vcg, cpwg, *options.avcg_threshold), ch.id)));
    }
  });
  std::vector<std::string> scope;
  for (const auto& ch : channels) {
    if (options.chpwg_scope == "all" ||
        (options.chpwg_scope == "nm" && ch.kind == ChannelKind::NM) ||
        (options.chpwg_scope == "pp" && ch.kind == ChannelKind::PP)) {
      scope.push_back(ch.id);
    }
  }
  std::vector<fs::path> out;
  for (auto& w : written) out.insert(out.end(), w.begin(), w.end());
  if (!scope.empty()) {
    out.push_back(dir / "channels.chpwg");
    write_graph(out.back(), record_of(build_channel_graph(corpus, scope), GraphKind::ChPWG));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<fs::path> write_avcg_files(const fs::path& graphs_dir, const fs::path& out_dir,
                                       std::uint32_t threshold, std::size_t workers) {
  if (!fs::is_directory(graphs_dir)) {
    throw Error(ErrorCode::Io, fmt::format("graph directory '{}' not found", graphs_dir.string()));
  }
  fs::create_directories(out_dir);
  const auto vcgs = sorted_files(graphs_dir, ".vcg");
  std::vector<fs::path> out(vcgs.size());
  parallel_for(vcgs.size(), workers, [&](std::size_t i) {
    const auto vcg_record = read_graph(vcgs[i]);
    auto cpwg_path = vcgs[i];
    cpwg_path.replace_extension(".cpwg");
    const auto vcg = vcg_record.to_bipartite();
    const auto cpwg = read_graph(cpwg_path).to_weighted();
    auto record = record_of(build_avcg(vcg, cpwg, threshold), vcg.channel_id);
    record.header.channel_kind = vcg_record.header.channel_kind;
    record.header.orientation = vcg_record.header.orientation;
    out[i] = out_dir / vcgs[i].filename().replace_extension(".avcg");
    write_graph(out[i], record);
  });
  return out;
}

GraphSummaries summarize_graph_files(const fs::path& graphs_dir, const fs::path& avcg_dir,
                                     std::uint32_t threshold,
                                     const DiameterOptions& diameter, std::size_t workers) {
  if (!fs::is_directory(graphs_dir)) {
    throw Error(ErrorCode::Io, fmt::format("graph directory '{}' not found", graphs_dir.string()));
  }
  const auto vcgs = sorted_files(graphs_dir, ".vcg");
  std::vector<NetworkSummary> rows(vcgs.size());
  std::vector<GroupKey> keys(vcgs.size());
  std::vector<std::uint32_t> thresholds(vcgs.size(), threshold);
  parallel_for(vcgs.size(), workers, [&](std::size_t i) {
    const auto vcg_record = read_graph(vcgs[i]);
    const auto& h = vcg_record.header;
    if (!h.channel_kind || !h.orientation) {
      throw Error(ErrorCode::MissingField,
                  fmt::format("'{}' lacks channel kind/orientation", vcgs[i].string()));
    }
    keys[i] = {*h.channel_kind, *h.orientation};
    const auto vcg = vcg_record.to_bipartite();
    auto cpwg_path = vcgs[i];
    const auto cpwg = read_graph(cpwg_path.replace_extension(".cpwg")).to_weighted();
    const auto avcg_path = avcg_dir / vcgs[i].filename().replace_extension(".avcg");
    AugmentedGraph avcg;
    if (!avcg_dir.empty() && fs::exists(avcg_path)) {
      avcg = read_graph(avcg_path).to_augmented();
    } else {
      avcg = build_avcg(vcg, cpwg, threshold);
    }
    thresholds[i] = avcg.threshold;
    rows[i] = summarize_graphs(vcg, cpwg, avcg, diameter);
  });
  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) {
    return rows[a].channel_id < rows[b].channel_id;
  });
  GraphSummaries out;
  out.threshold = thresholds.empty() ? threshold : thresholds.front();
  for (auto i : order) {
    if (thresholds[i] != out.threshold) {
      throw Error(ErrorCode::Mismatch, "AVCG files were built with different thresholds");
    }
    out.rows.push_back(std::move(rows[i]));
    out.keys.push_back(keys[i]);
  }
  return out;
}

std::vector<fs::path> write_tables(const NamedTables& tables, const fs::path& dir) {
  fs::create_directories(dir);
  std::vector<fs::path> out;
  for (const auto& [name, table] : tables) {
    out.push_back(dir / (name + ".csv"));
    write_csv(out.back(), table);
  }
  return out;
}

std::vector<fs::path> render_report(const std::vector<fs::path>& inputs, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  std::vector<fs::path> out;
  for (const auto& dir : inputs) {
    if (!fs::is_directory(dir)) {
      throw Error(ErrorCode::Io, fmt::format("missing upstream tables in '{}'", dir.string()));
    }
    for (const auto& csv : sorted_files(dir, ".csv")) {
      const auto table = read_csv(csv);
      const auto stem = csv.stem().string();
      out.push_back(out_dir / (stem + ".csv"));
      write_csv(out.back(), table, NumberStyle::Display);
      out.push_back(out_dir / (stem + ".json"));
      write_json(out.back(), table);
    }
  }
  return out;
}

std::unique_ptr<ExtractionBackend> make_backend(const PipelineConfig& config,
                                                const Gazetteer& gazetteer) {
  if (config.backend == "gazetteer") return std::make_unique<GazetteerBackend>(gazetteer);
  if (config.backend == "fixture") {
    if (config.backend_fixture.empty()) {
      throw Error(ErrorCode::Config, "fixture backend needs backend_fixture");
    }
    return std::make_unique<FixtureBackend>(FixtureBackend::load(config.backend_fixture));
  }
  if (config.backend == "http") {
    HttpBackendConfig http;
    http.endpoint = config.backend_endpoint;
    http.model = config.backend_model;
    http.token = config.backend_token;
    http.timeout = config.backend_timeout;
    return std::make_unique<HttpChatBackend>(std::move(http));
  }
  throw Error(ErrorCode::Config, fmt::format("unknown backend '{}'", config.backend));
}

// ---------------------------------------------------------------- manifest

std::string Manifest::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "mediagraph-manifest v1";
  j["stages"] = nlohmann::ordered_json::object();
  for (auto stage : kStages) {
    const auto it = fingerprints.find(std::string(stage));
    if (it != fingerprints.end()) j["stages"][it->first] = it->second;
  }
  j["files"] = nlohmann::ordered_json::array();
  for (const auto& f : files) {
    nlohmann::ordered_json e;
    e["path"] = f.path;
    e["stage"] = f.stage;
    e["sha256"] = f.sha256;
    e["bytes"] = f.bytes;
    j["files"].push_back(std::move(e));
  }
  return j.dump(1) + "\n";
}

StageError::StageError(std::string stage, const Error& cause)
    : Error(cause.code(), fmt::format("{}: {}", stage, cause.what())),
      stage_(std::move(stage)),
      cause_(cause.code()) {}

// ---------------------------------------------------------------- runner

namespace {

struct StageSpec {
  std::string name;
  std::string dir;
  std::vector<std::string> deps;
  std::vector<std::string> settings;       // "key=value", part of the fingerprint
  std::vector<std::pair<std::string, fs::path>> inputs;  // external files
  std::function<void(const fs::path& staging)> run;
  bool enabled = true;
};

class Runner {
 public:
  Runner(fs::path out, const RunOptions& options) : out_(std::move(out)), options_(options) {}

  void stage(const StageSpec& spec, std::vector<StageOutcome>* outcomes) {
    StageOutcome outcome{spec.name};
    const auto target = out_ / spec.dir;
    const auto stamp = out_ / ".stamps" / (spec.name + ".json");
    if (!spec.enabled) {
      fs::remove_all(target);
      fs::remove(stamp);
      outcome.disabled = true;
      log(fmt::format("{}: disabled", spec.name));
      if (outcomes) outcomes->push_back(outcome);
      return;
    }
    try {
      const auto fingerprint = fingerprint_of(spec);
      if (!options_.force && up_to_date(spec, stamp, fingerprint)) {
        outcome.skipped = true;
        log(fmt::format("{}: up to date", spec.name));
      } else {
        log(fmt::format("{}: running", spec.name));
        const auto staging = out_ / ".staging" / spec.dir;
        fs::remove_all(staging);
        fs::create_directories(staging);
        try {
          spec.run(staging);
        } catch (...) {
          fs::remove_all(staging);
          throw;
        }
        fs::remove_all(target);
        fs::create_directories(target.parent_path());
        fs::rename(staging, target);
        outputs_[spec.name] = hash_outputs(spec);
        write_stamp(stamp, fingerprint, outputs_[spec.name]);
      }
      fingerprints_[spec.name] = fingerprint;
    } catch (const StageError&) {
      throw;
    } catch (const Error& e) {
      throw StageError(spec.name, e);
    } catch (const fs::filesystem_error& e) {
      throw StageError(spec.name, Error(ErrorCode::Io, e.what()));
    } catch (const std::exception& e) {
      throw StageError(spec.name, Error(ErrorCode::Io, e.what()));
    }
    if (outcomes) outcomes->push_back(outcome);
  }

  Manifest manifest() const {
    Manifest m;
    for (const auto& [name, files] : outputs_) {
      m.files.insert(m.files.end(), files.begin(), files.end());
    }
    std::sort(m.files.begin(), m.files.end(),
              [](const auto& a, const auto& b) { return a.path < b.path; });
    m.fingerprints = fingerprints_;
    return m;
  }

 private:
  void log(std::string_view msg) const {
    if (options_.log) options_.log(msg);
  }

  std::string fingerprint_of(const StageSpec& spec) const {
    std::string text = "stage " + spec.name + "\n";
    for (const auto& s : spec.settings) text += "set " + s + "\n";
    for (const auto& dep : spec.deps) {
      text += "dep " + dep + "\n";
      const auto it = outputs_.find(dep);
      if (it == outputs_.end()) continue;  // disabled upstream
      for (const auto& f : it->second) text += f.path + " " + f.sha256 + "\n";
    }
    for (const auto& [role, path] : spec.inputs) {
      if (!fs::exists(path)) {
        throw Error(ErrorCode::Io, fmt::format("input '{}' not found", path.string()));
      }
      text += "input " + role + " " + sha256_file(path) + "\n";
    }
    return sha256_hex(text);
  }

  std::vector<ManifestEntry> hash_outputs(const StageSpec& spec) const {
    std::vector<ManifestEntry> files;
    const auto root = out_ / spec.dir;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
      if (!e.is_regular_file()) continue;
      ManifestEntry f;
      f.path = fs::relative(e.path(), out_).generic_string();
      f.stage = spec.name;
      f.sha256 = sha256_file(e.path());
      f.bytes = e.file_size();
      files.push_back(std::move(f));
    }
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.path < b.path; });
    return files;
  }

  bool up_to_date(const StageSpec& spec, const fs::path& stamp, const std::string& fingerprint) {
    if (!fs::exists(stamp) || !fs::is_directory(out_ / spec.dir)) return false;
    nlohmann::json j = nlohmann::json::parse(read_file(stamp), nullptr, false);
    if (j.is_discarded() || j.value("fingerprint", "") != fingerprint) return false;
    std::vector<ManifestEntry> recorded;
    for (const auto& f : j.value("files", nlohmann::json::array())) {
      recorded.push_back({f.value("path", ""), spec.name, f.value("sha256", ""),
                          f.value("bytes", std::uintmax_t{0})});
    }
    const auto current = hash_outputs(spec);
    if (current.size() != recorded.size()) return false;
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (current[i].path != recorded[i].path || current[i].sha256 != recorded[i].sha256) {
        return false;
      }
    }
    outputs_[spec.name] = current;
    return true;
  }

  void write_stamp(const fs::path& stamp, const std::string& fingerprint,
                   const std::vector<ManifestEntry>& files) const {
    fs::create_directories(stamp.parent_path());
    nlohmann::ordered_json j;
    j["fingerprint"] = fingerprint;
    j["files"] = nlohmann::ordered_json::array();
    for (const auto& f : files) {
      j["files"].push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    }
    write_file(stamp, j.dump(1) + "\n");
  }

  fs::path out_;
  const RunOptions& options_;
  std::map<std::string, std::vector<ManifestEntry>> outputs_;
  std::map<std::string, std::string> fingerprints_;
};

std::string window_setting(const PipelineConfig& c) {
  return fmt::format("window={}..{}", format_date(c.window_start), format_date(c.window_end));
}

}  // namespace

Manifest run_pipeline(const PipelineConfig& config, const RunOptions& options,
                      std::vector<StageOutcome>* outcomes) {
  config.validate();
  const auto out = config.output_dir;
  fs::create_directories(out);
  const auto workers = config.parallel;
  const auto window = config.window();

  std::optional<Corpus> corpus_cache;
  std::optional<Corpus> labeled_cache;
  auto corpus = [&]() -> const Corpus& {
    if (!corpus_cache) corpus_cache = load_corpus_dir(out / "corpus", window);
    return *corpus_cache;
  };
  auto labeled = [&]() -> const Corpus& {
    if (!labeled_cache) {
      labeled_cache = apply_shorts_labels(corpus(), out / "labels" / "shorts_labels.jsonl");
    }
    return *labeled_cache;
  };
  const bool coverage_enabled = !config.gazetteer.empty();
  std::optional<Gazetteer> gazetteer_cache;
  auto gazetteer = [&]() -> const Gazetteer& {
    if (!gazetteer_cache) gazetteer_cache = Gazetteer::load(config.gazetteer);
    return *gazetteer_cache;
  };

  Runner runner(out, options);
  std::vector<StageSpec> stages;

  stages.push_back({"ingest", "corpus", {}, {window_setting(config)},
                    {{"channels", config.channels_path()},
                     {"videos", config.videos_path()},
                     {"comments", config.comments_path()}},
                    [&](const fs::path& staging) {
                      auto c = load_corpus(config.channels_path(), config.videos_path(),
                                           config.comments_path(), window);
                      write_corpus(c, staging);
                      nlohmann::ordered_json v;
                      v["channels"] = c.channels().size();
                      v["videos"] = c.videos().size();
                      v["comments"] = c.comments().size();
                      v["commenters"] = c.commenter_count();
                      v["videos_out_of_window"] = c.report().videos_out_of_window;
                      v["comments_on_excluded_videos"] = c.report().comments_on_excluded_videos;
                      v["window"] = {format_date(config.window_start),
                                     format_date(config.window_end)};
                      write_file(staging / "validation.json", v.dump(1) + "\n");
                      corpus_cache = std::move(c);
                      labeled_cache.reset();
                    }});

  std::vector<std::string> label_settings{"resolver=" + config.shorts_resolver};
  if (config.shorts_resolver == "http") label_settings.push_back("template=" + config.shorts_template);
  stages.push_back({"label-shorts", "labels", {"ingest"}, label_settings, {},
                    [&](const fs::path& staging) {
                      LabelCounts counts;
                      if (config.shorts_resolver == "http") {
                        HttpResolverConfig http;
                        http.url_template = config.shorts_template;
                        http.delay = config.shorts_delay;
                        http.timeout = config.shorts_timeout;
                        auto outcome = label_corpus(corpus(), make_http_resolver(http), workers);
                        counts = outcome.counts;
                        write_shorts_labels(staging / "shorts_labels.jsonl", outcome.corpus);
                      } else {
                        for (const auto& v : corpus().videos()) {
                          if (v.shorts_label == ShortsLabel::Short) ++counts.short_count;
                          else if (v.shorts_label == ShortsLabel::Regular) ++counts.regular;
                          else ++counts.unlabeled;
                        }
                        write_shorts_labels(staging / "shorts_labels.jsonl", corpus());
                      }
                      nlohmann::ordered_json s;
                      s["short"] = counts.short_count;
                      s["regular"] = counts.regular;
                      s["unlabeled"] = counts.unlabeled;
                      s["probed"] = counts.probed;
                      write_file(staging / "summary.json", s.dump(1) + "\n");
                      labeled_cache.reset();
                    }});

  stages.push_back({"graphs", "graphs", {"ingest"},
                    {fmt::format("include_zero_comment_videos={}", config.include_zero_comment_videos),
                     fmt::format("max_commenters_per_video={}", config.max_commenters_per_video),
                     "chpwg_scope=" + config.chpwg_scope},
                    {},
                    [&](const fs::path& staging) {
                      GraphFileOptions o;
                      o.vcg.include_zero_comment_videos = config.include_zero_comment_videos;
                      o.max_commenters_per_video = config.max_commenters_per_video;
                      o.chpwg_scope = config.chpwg_scope;
                      o.workers = workers;
                      write_graph_files(corpus(), staging, o);
                    }});

  stages.push_back({"avcg", "avcg", {"graphs"}, {fmt::format("threshold={}", config.threshold)}, {},
                    [&](const fs::path& staging) {
                      write_avcg_files(out / "graphs", staging, config.threshold, workers);
                    }});

  stages.push_back({"metrics", "metrics", {"ingest", "graphs", "avcg"},
                    {fmt::format("diameter_max_nodes={}", config.diameter_max_nodes),
                     fmt::format("top_edges={}", config.top_edges), "group_by=" + config.group_by},
                    {},
                    [&](const fs::path& staging) {
                      DiameterOptions d;
                      d.max_nodes = config.diameter_max_nodes;
                      const auto s = summarize_graph_files(out / "graphs", out / "avcg",
                                                           config.threshold, d, workers);
                      NamedTables tables;
                      tables.emplace_back("network_summary",
                                          network_summary_table(s.rows, s.threshold));
                      tables.emplace_back("network_groups",
                                          network_group_table(s.rows, s.keys, s.threshold));
                      const auto chpwg = out / "graphs" / "channels.chpwg";
                      if (fs::exists(chpwg)) {
                        tables.emplace_back("channel_edges",
                                            channel_edges_table(read_graph(chpwg).to_weighted(),
                                                                corpus(), config.top_edges));
                      }
                      write_tables(tables, staging);
                    }});

  stages.push_back({"activity", "activity", {"ingest", "label-shorts"}, {window_setting(config)}, {},
                    [&](const fs::path& staging) {
                      write_tables(activity_tables(labeled(), window), staging);
                    }});

  stages.push_back({"audience", "audience", {"ingest"}, {}, {},
                    [&](const fs::path& staging) {
                      write_tables(audience_tables(corpus()), staging);
                    }});

  std::vector<std::string> backend_settings{"backend=" + config.backend};
  std::vector<std::pair<std::string, fs::path>> extract_inputs;
  if (coverage_enabled) extract_inputs.emplace_back("gazetteer", config.gazetteer);
  if (config.backend == "http") {
    backend_settings.push_back("endpoint=" + config.backend_endpoint);
    backend_settings.push_back("model=" + config.backend_model);
  } else if (config.backend == "fixture") {
    extract_inputs.emplace_back("fixture", config.backend_fixture);
  }
  StageSpec extract{"extract", "extract", {"ingest"}, backend_settings, extract_inputs,
                    [&](const fs::path& staging) {
                      auto backend = make_backend(config, gazetteer());
                      AnnotateOptions o;
                      o.workers = workers;
                      const auto annotations = annotate_corpus(corpus(), gazetteer(), *backend, o);
                      write_annotations(staging / "annotations.jsonl", annotations);
                      std::size_t parse_failures = 0, backend_failures = 0;
                      for (const auto& a : annotations) {
                        for (const auto& f : a.flags) {
                          if (f == kFlagParseFailure) ++parse_failures;
                          if (f == kFlagBackendFailure) ++backend_failures;
                        }
                      }
                      nlohmann::ordered_json s;
                      s["backend"] = backend->name();
                      s["videos"] = annotations.size();
                      s["parse_failures"] = parse_failures;
                      s["backend_failures"] = backend_failures;
                      write_file(staging / "summary.json", s.dump(1) + "\n");
                    }};
  extract.enabled = coverage_enabled;
  stages.push_back(std::move(extract));

  StageSpec coverage{"coverage", "coverage", {"ingest", "extract"}, {},
                     coverage_enabled ? std::vector<std::pair<std::string, fs::path>>{
                                            {"gazetteer", config.gazetteer}}
                                      : std::vector<std::pair<std::string, fs::path>>{},
                     [&](const fs::path& staging) {
                       const auto annotations = read_annotations(out / "extract" / "annotations.jsonl");
                       write_tables(coverage_tables(corpus(), annotations, gazetteer()), staging);
                     }};
  coverage.enabled = coverage_enabled;
  stages.push_back(std::move(coverage));

  std::vector<std::string> report_deps{"metrics", "activity", "audience"};
  if (coverage_enabled) report_deps.push_back("coverage");
  stages.push_back({"report", "report", report_deps, {}, {},
                    [&](const fs::path& staging) {
                      std::vector<fs::path> inputs;
                      for (const auto& d : report_deps) inputs.push_back(out / d);
                      render_report(inputs, staging);
                    }});

  for (const auto& spec : stages) runner.stage(spec, outcomes);
  fs::remove_all(out / ".staging");

  auto manifest = runner.manifest();
  write_file(out / "manifest.json", manifest.to_json());
  return manifest;
}

}  // namespace mediagraph
