// mediagraph command-line interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "mediagraph/activity.hpp"
#include "mediagraph/audience.hpp"
#include "mediagraph/corpus.hpp"
#include "mediagraph/coverage.hpp"
#include "mediagraph/graph_io.hpp"
#include "mediagraph/pipeline.hpp"
#include "mediagraph/report.hpp"
#include "mediagraph/shorts.hpp"
#include "mediagraph/synth.hpp"

namespace mg = mediagraph;
namespace fs = std::filesystem;

namespace {

struct Globals {
  std::string config_path;
  std::size_t parallel = 0;  // 0: take it from the config
  bool quiet = false;
};

mg::PipelineConfig load_config(const Globals& g) {
  mg::PipelineConfig config;
  if (!g.config_path.empty()) {
    config = mg::PipelineConfig::load(g.config_path);
  } else {
    config.apply_env();
  }
  if (g.parallel > 0) config.parallel = g.parallel;
  return config;
}

void say(const Globals& g, std::string_view msg) {
  if (!g.quiet) std::cerr << msg << '\n';
}

// Resolves a required path from a flag or a config value.
fs::path need(const std::string& flag_value, const fs::path& fallback, std::string_view what) {
  if (!flag_value.empty()) return flag_value;
  if (!fallback.empty()) return fallback;
  throw mg::Error(mg::ErrorCode::Config, fmt::format("{} not given (flag or config)", what));
}

mg::Corpus load_dir(const fs::path& dir, const mg::PipelineConfig& config) {
  return mg::load_corpus_dir(dir, config.window());
}

// Reads a JSONL {"video_id","final_url"} file into an offline resolver.
mg::ShortsResolver fixture_resolver(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mg::Error(mg::ErrorCode::Io, fmt::format("cannot open '{}'", path.string()));
  auto urls = std::make_shared<std::map<std::string, std::string, std::less<>>>();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      (*urls)[j.at("video_id").get<std::string>()] = j.at("final_url").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw mg::ParseError(path.string(), line_no, e.what());
    }
  }
  return [urls](std::string_view id) {
    mg::ShortsProbeResult r;
    r.video_id = std::string(id);
    if (const auto it = urls->find(id); it != urls->end()) {
      r.final_url = it->second;
      r.status = mg::ProbeStatus::Resolved;
    }
    return r;
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Commenting-network analytics for political media channels"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "Flat key = value config file")
      ->check(CLI::ExistingFile);
  app.add_option("--parallel", g.parallel, "Upper bound on worker threads");
  app.add_flag("-q,--quiet", g.quiet, "No progress output");
  // Subcommands also accept the global options after their name.
  auto add_globals = [&](CLI::App* sub) {
    sub->add_option("--config", g.config_path)->check(CLI::ExistingFile);
    sub->add_option("--parallel", g.parallel);
    sub->add_flag("-q,--quiet", g.quiet);
  };

  // ingest
  std::string in_dir, out_dir, channels_file, videos_file, comments_file;
  auto* ingest = app.add_subcommand("ingest", "Validate raw JSONL files into a corpus directory");
  ingest->add_option("--in", in_dir, "Directory with channels/videos/comments .jsonl");
  ingest->add_option("--channels", channels_file);
  ingest->add_option("--videos", videos_file);
  ingest->add_option("--comments", comments_file);
  ingest->add_option("--out", out_dir, "Output corpus directory")->required();
  add_globals(ingest);

  // synth
  std::uint64_t seed = 1;
  mg::SynthConfig synth_config = mg::SynthConfig::all_groups(5);
  std::size_t channels_per_group = 5;
  auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic corpus");
  synth->add_option("--out", out_dir)->required();
  synth->add_option("--seed", seed)->capture_default_str();
  synth->add_option("--channels-per-group", channels_per_group)->capture_default_str();
  synth->add_option("--videos-per-channel", synth_config.videos_per_channel)->capture_default_str();
  synth->add_option("--commenters", synth_config.commenter_pool)->capture_default_str();
  synth->add_option("--p-in", synth_config.in_group_probability)->capture_default_str();
  synth->add_option("--p-cross", synth_config.cross_group_probability)->capture_default_str();
  synth->add_option("--p-repeat", synth_config.repeat_probability)->capture_default_str();
  synth->add_option("--shorts-probability", synth_config.shorts_probability,
                    "Negative leaves videos unlabelled")->capture_default_str();
  add_globals(synth);

  // label-shorts
  std::string template_url, resolver_fixture;
  auto* label = app.add_subcommand("label-shorts", "Label Shorts by probing the Shorts URL");
  label->add_option("--in", in_dir)->required();
  label->add_option("--out", out_dir)->required();
  label->add_option("--template", template_url, "URL template with {id}");
  label->add_option("--fixture", resolver_fixture,
                    "Offline resolver: JSONL {video_id, final_url}");
  add_globals(label);

  // build-graphs
  std::string corpus_dir;
  std::optional<std::uint32_t> threshold;
  std::string scope;
  auto* graphs = app.add_subcommand("build-graphs", "Write VCG, CPWG, AVCG and ChPWG files");
  graphs->add_option("--corpus", corpus_dir)->required();
  graphs->add_option("--out", out_dir)->required();
  graphs->add_option("--threshold", threshold, "AVCG co-comment threshold");
  graphs->add_option("--scope", scope, "ChPWG channels: all, nm or pp");
  add_globals(graphs);

  // metrics
  std::string graphs_dir, avcg_dir, out_file, group_by;
  auto* metrics = app.add_subcommand("metrics", "Per-channel network summary CSV");
  metrics->add_option("--graphs", graphs_dir)->required();
  metrics->add_option("--avcg", avcg_dir, "AVCG directory (default: --graphs)");
  metrics->add_option("--out", out_file)->required();
  metrics->add_option("--group-by", group_by, "orientation: macro-average per group");
  metrics->add_option("--threshold", threshold, "Used when no AVCG file is found");
  add_globals(metrics);

  // activity
  std::string labels_file;
  auto* activity = app.add_subcommand("activity", "Upload and engagement tables");
  activity->add_option("--corpus", corpus_dir)->required();
  activity->add_option("--labels", labels_file, "shorts_labels.jsonl to apply");
  activity->add_option("--out", out_dir)->required();
  add_globals(activity);

  // audience
  auto* audience = app.add_subcommand("audience", "Commenter taxonomy and overlap tables");
  audience->add_option("--corpus", corpus_dir)->required();
  audience->add_option("--out", out_dir)->required();
  add_globals(audience);

  // extract
  std::string gazetteer_file, backend, fixture_file, endpoint, model, cache_file;
  auto* extract = app.add_subcommand("extract", "Annotate NM videos with mentions and interviewees");
  extract->add_option("--corpus", corpus_dir)->required();
  extract->add_option("--gazetteer", gazetteer_file);
  extract->add_option("--backend", backend)->check(CLI::IsMember({"gazetteer", "http", "fixture"}));
  extract->add_option("--fixture", fixture_file, "Recorded replies for the fixture backend");
  extract->add_option("--endpoint", endpoint);
  extract->add_option("--model", model);
  extract->add_option("--cache", cache_file, "Earlier annotations to reuse");
  extract->add_option("--out", out_file)->required();
  add_globals(extract);

  // coverage
  std::string annotations_file;
  auto* coverage = app.add_subcommand("coverage", "Coverage shares and presence tables");
  coverage->add_option("--annotations", annotations_file)->required();
  coverage->add_option("--corpus", corpus_dir);
  coverage->add_option("--gazetteer", gazetteer_file);
  coverage->add_option("--out", out_dir)->required();
  add_globals(coverage);

  // report
  std::vector<std::string> report_inputs;
  auto* report = app.add_subcommand("report", "Display CSV and JSON renditions of tables");
  report->add_option("--in", report_inputs, "Directories of machine CSVs")->required();
  report->add_option("--out", out_dir)->required();
  add_globals(report);

  // run
  bool force = false;
  auto* run = app.add_subcommand("run", "Run the whole pipeline from the config");
  run->add_flag("--force", force, "Ignore stamps and rerun every stage");
  run->add_option("--out", out_dir, "Override output_dir");
  add_globals(run);

  CLI11_PARSE(app, argc, argv);

  const auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  try {
    auto config = load_config(g);

    if (sub == ingest) {
      mg::Corpus corpus;
      if (!in_dir.empty()) {
        corpus = mg::load_corpus_dir(in_dir, config.window());
      } else {
        corpus = mg::load_corpus(need(channels_file, config.channels_path(), "--channels"),
                                 need(videos_file, config.videos_path(), "--videos"),
                                 need(comments_file, config.comments_path(), "--comments"),
                                 config.window());
      }
      mg::write_corpus(corpus, out_dir);
      say(g, fmt::format("ingest: {} channels, {} videos, {} comments; dropped {} videos "
                         "outside the window and {} of their comments",
                         corpus.channels().size(), corpus.videos().size(),
                         corpus.comments().size(), corpus.report().videos_out_of_window,
                         corpus.report().comments_on_excluded_videos));
    } else if (sub == synth) {
      synth_config.groups = mg::SynthConfig::all_groups(channels_per_group).groups;
      synth_config.window = config.window();
      const auto corpus = mg::generate_synthetic(synth_config, seed);
      mg::write_corpus(corpus, out_dir);
      say(g, fmt::format("synth: {} channels, {} videos, {} comments, {} commenters",
                         corpus.channels().size(), corpus.videos().size(),
                         corpus.comments().size(), corpus.commenter_count()));
    } else if (sub == label) {
      const auto corpus = load_dir(in_dir, config);
      mg::ShortsResolver resolver;
      if (!resolver_fixture.empty()) {
        resolver = fixture_resolver(resolver_fixture);
      } else {
        mg::HttpResolverConfig http;
        http.url_template = template_url.empty() ? config.shorts_template : template_url;
        http.delay = config.shorts_delay;
        http.timeout = config.shorts_timeout;
        resolver = mg::make_http_resolver(http);
      }
      const auto outcome = mg::label_corpus(corpus, resolver, config.parallel);
      mg::write_corpus(outcome.corpus, out_dir);
      say(g, fmt::format("label-shorts: probed {}, short {}, regular {}, unlabeled {}",
                         outcome.counts.probed, outcome.counts.short_count,
                         outcome.counts.regular, outcome.counts.unlabeled));
    } else if (sub == graphs) {
      const auto corpus = load_dir(corpus_dir, config);
      mg::GraphFileOptions o;
      o.vcg.include_zero_comment_videos = config.include_zero_comment_videos;
      o.max_commenters_per_video = config.max_commenters_per_video;
      o.chpwg_scope = scope.empty() ? config.chpwg_scope : scope;
      o.avcg_threshold = threshold.value_or(config.threshold);
      o.workers = config.parallel;
      if (*o.avcg_threshold < 1) throw mg::Error(mg::ErrorCode::Config, "threshold must be at least 1");
      const auto files = mg::write_graph_files(corpus, out_dir, o);
      say(g, fmt::format("build-graphs: wrote {} files to {}", files.size(), out_dir));
    } else if (sub == metrics) {
      mg::DiameterOptions d;
      d.max_nodes = config.diameter_max_nodes;
      const auto s = mg::summarize_graph_files(graphs_dir, avcg_dir.empty() ? graphs_dir : avcg_dir,
                                               threshold.value_or(config.threshold), d,
                                               config.parallel);
      const auto grouping = group_by.empty() ? std::string{} : group_by;
      if (!grouping.empty() && grouping != "orientation") {
        throw mg::Error(mg::ErrorCode::Config, fmt::format("unsupported --group-by '{}'", grouping));
      }
      const auto table = grouping.empty() ? mg::network_summary_table(s.rows, s.threshold)
                                          : mg::network_group_table(s.rows, s.keys, s.threshold);
      if (const auto parent = fs::path(out_file).parent_path(); !parent.empty()) {
        fs::create_directories(parent);
      }
      mg::write_csv(out_file, table);
      say(g, fmt::format("metrics: {} channels", s.rows.size()));
    } else if (sub == activity) {
      auto corpus = load_dir(corpus_dir, config);
      if (!labels_file.empty()) corpus = mg::apply_shorts_labels(corpus, labels_file);
      mg::write_tables(mg::activity_tables(corpus, config.window()), out_dir);
    } else if (sub == audience) {
      mg::write_tables(mg::audience_tables(load_dir(corpus_dir, config)), out_dir);
    } else if (sub == extract) {
      if (!backend.empty()) config.backend = backend;
      if (!fixture_file.empty()) config.backend_fixture = fixture_file;
      if (!endpoint.empty()) config.backend_endpoint = endpoint;
      if (!model.empty()) config.backend_model = model;
      const auto corpus = load_dir(corpus_dir, config);
      const auto gazetteer = mg::Gazetteer::load(need(gazetteer_file, config.gazetteer, "--gazetteer"));
      auto b = mg::make_backend(config, gazetteer);
      std::vector<mg::VideoAnnotation> cache;
      if (!cache_file.empty() && fs::exists(cache_file)) cache = mg::read_annotations(cache_file);
      mg::AnnotateOptions o;
      o.workers = config.parallel;
      o.cache = cache;
      const auto annotations = mg::annotate_corpus(corpus, gazetteer, *b, o);
      mg::write_annotations(out_file, annotations);
      std::size_t failures = 0;
      for (const auto& a : annotations) failures += a.flags.empty() ? 0 : 1;
      say(g, fmt::format("extract: {} NM videos annotated with the {} backend, {} flagged",
                         annotations.size(), b->name(), failures));
    } else if (sub == coverage) {
      const auto corpus = load_dir(need(corpus_dir, config.corpus_dir, "--corpus"), config);
      const auto gazetteer = mg::Gazetteer::load(need(gazetteer_file, config.gazetteer, "--gazetteer"));
      const auto annotations = mg::read_annotations(annotations_file);
      mg::write_tables(mg::coverage_tables(corpus, annotations, gazetteer), out_dir);
    } else if (sub == report) {
      std::vector<fs::path> inputs(report_inputs.begin(), report_inputs.end());
      const auto files = mg::render_report(inputs, out_dir);
      say(g, fmt::format("report: wrote {} files", files.size()));
    } else if (sub == run) {
      if (!out_dir.empty()) config.output_dir = out_dir;
      mg::RunOptions o;
      o.force = force;
      if (!g.quiet) o.log = [](std::string_view msg) { std::cerr << msg << '\n'; };
      const auto manifest = mg::run_pipeline(config, o);
      say(g, fmt::format("run: {} files in {}", manifest.files.size(),
                         (config.output_dir / "manifest.json").string()));
    }
  } catch (const mg::StageError& e) {
    std::cerr << "mediagraph " << command << ": stage " << e.what() << '\n';
    return 1;
  } catch (const mg::Error& e) {
    std::cerr << "mediagraph " << command << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "mediagraph " << command << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}
