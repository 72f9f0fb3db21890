#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mediagraph/corpus.hpp"
#include "mediagraph/error.hpp"
#include "mediagraph/extraction.hpp"
#include "mediagraph/gazetteer.hpp"
#include "mediagraph/graph.hpp"
#include "mediagraph/metrics.hpp"
#include "mediagraph/report.hpp"
#include "mediagraph/table.hpp"
#include "mediagraph/time.hpp"

namespace mediagraph {

namespace fs = std::filesystem;

/// Flat `key = value` configuration. '#' starts a comment line. Every key
/// can be overridden by the environment variable MEDIAGRAPH_<KEY> (upper
/// case). Relative paths are resolved against the config file's directory.
struct PipelineConfig {
  // inputs
  fs::path corpus_dir;  // holds channels.jsonl, videos.jsonl, comments.jsonl
  fs::path channels_file, videos_file, comments_file;  // override corpus_dir
  Date window_start = Date{std::chrono::year{2024} / 3 / 1};
  Date window_end = Date{std::chrono::year{2024} / 7 / 14};
  fs::path output_dir = "out";

  // shorts labelling: "none" keeps labels present in the input
  std::string shorts_resolver = "none";
  std::string shorts_template = "https://www.youtube.com/shorts/{id}";
  std::chrono::milliseconds shorts_delay{500};
  std::chrono::seconds shorts_timeout{20};

  // graphs
  std::uint32_t threshold = 2;
  bool include_zero_comment_videos = false;
  std::size_t max_commenters_per_video = 100'000;
  std::size_t diameter_max_nodes = 2'000'000;
  std::string chpwg_scope = "all";  // all | nm | pp
  std::size_t top_edges = 50;
  std::string group_by = "orientation";

  // coverage; an empty gazetteer disables extract and coverage
  fs::path gazetteer;
  std::string backend = "gazetteer";  // gazetteer | http | fixture
  std::string backend_endpoint;
  std::string backend_model;
  std::string backend_token;
  fs::path backend_fixture;
  std::chrono::seconds backend_timeout{60};

  std::size_t parallel = 1;

  static PipelineConfig parse(std::string_view text, const fs::path& base_dir = {},
                              const std::string& source = "<config>");
  /// parse() of the file, then environment overrides.
  static PipelineConfig load(const fs::path& path);

  /// Sets one key from its text form; Error(Config) on unknown keys or bad
  /// values.
  void set(std::string_view key, std::string_view value, const fs::path& base_dir = {});
  void apply_env();
  /// Throws Error(Config) for threshold < 1 or unknown choices.
  void validate() const;

  CollectionWindow window() const { return {window_start, window_end}; }
  fs::path channels_path() const;
  fs::path videos_path() const;
  fs::path comments_path() const;
};

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);
std::string sha256_file(const fs::path& path);

// Stage building blocks, shared by the pipeline and the CLI subcommands.

/// Line-delimited JSON {"video_id","shorts_label"}, corpus video order.
void write_shorts_labels(const fs::path& path, const Corpus& corpus);
/// Applies labels by video id; videos missing from the file keep theirs.
Corpus apply_shorts_labels(const Corpus& corpus, const fs::path& path);

struct GraphFileOptions {
  VcgOptions vcg;
  std::size_t max_commenters_per_video = 100'000;
  std::string chpwg_scope = "all";
  /// Also write <stem>.avcg next to the VCG/CPWG files.
  std::optional<std::uint32_t> avcg_threshold;
  std::size_t workers = 1;
};

/// Writes <stem>.vcg and <stem>.cpwg per channel with comments, plus
/// channels.chpwg. Returns the written paths, sorted.
std::vector<fs::path> write_graph_files(const Corpus& corpus, const fs::path& dir,
                                        const GraphFileOptions& options);

/// Reads every <stem>.vcg/<stem>.cpwg pair of `graphs_dir` and writes
/// <stem>.avcg into `out_dir`.
std::vector<fs::path> write_avcg_files(const fs::path& graphs_dir, const fs::path& out_dir,
                                       std::uint32_t threshold, std::size_t workers);

struct GraphSummaries {
  std::vector<NetworkSummary> rows;  // by channel id
  std::vector<GroupKey> keys;
  std::uint32_t threshold = 2;
};

/// Summaries for every channel in `graphs_dir`. AVCGs come from `avcg_dir`
/// when present there, else they are built with `threshold`.
GraphSummaries summarize_graph_files(const fs::path& graphs_dir, const fs::path& avcg_dir,
                                     std::uint32_t threshold,
                                     const DiameterOptions& diameter, std::size_t workers);

/// <dir>/<name>.csv per table (machine style).
std::vector<fs::path> write_tables(const NamedTables& tables, const fs::path& dir);

/// Display-style CSV and JSON rendition of every machine CSV in `inputs`
/// (directories scanned non-recursively). Throws Error(Io) when an input
/// directory is missing.
std::vector<fs::path> render_report(const std::vector<fs::path>& inputs, const fs::path& out_dir);

std::unique_ptr<ExtractionBackend> make_backend(const PipelineConfig& config,
                                                const Gazetteer& gazetteer);

struct ManifestEntry {
  std::string path;  // relative to the output directory, '/' separated
  std::string stage;
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct Manifest {
  std::vector<ManifestEntry> files;  // sorted by path
  std::map<std::string, std::string> fingerprints;
  std::string to_json() const;
};

struct StageOutcome {
  std::string stage;
  bool skipped = false;
  bool disabled = false;
};

/// A stage failure; what() is "<stage>: <cause>".
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause);
  const std::string& stage() const noexcept { return stage_; }
  ErrorCode cause_code() const noexcept { return cause_; }

 private:
  std::string stage_;
  ErrorCode cause_;
};

inline constexpr std::array<std::string_view, 10> kStages = {
    "ingest", "label-shorts", "graphs", "avcg",    "metrics",
    "activity", "audience",   "extract", "coverage", "report"};

struct RunOptions {
  bool force = false;
  std::function<void(std::string_view)> log;
};

/// Runs all stages in order. A stage is skipped when its stamp records the
/// same fingerprint (config subset plus upstream output hashes) and its
/// outputs still hash as recorded. Each stage writes into a staging
/// directory that replaces its output directory only on success. Writes
/// <output_dir>/manifest.json.
Manifest run_pipeline(const PipelineConfig& config, const RunOptions& options = {},
                      std::vector<StageOutcome>* outcomes = nullptr);

}  // namespace mediagraph
