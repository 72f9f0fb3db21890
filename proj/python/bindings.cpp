#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "mediagraph/audience.hpp"
#include "mediagraph/corpus.hpp"
#include "mediagraph/error.hpp"
#include "mediagraph/extraction.hpp"
#include "mediagraph/gazetteer.hpp"
#include "mediagraph/graph.hpp"
#include "mediagraph/metrics.hpp"
#include "mediagraph/pipeline.hpp"
#include "mediagraph/stats.hpp"
#include "mediagraph/synth.hpp"

namespace py = pybind11;
namespace mg = mediagraph;
using namespace pybind11::literals;

namespace {

std::optional<mg::CollectionWindow> window_of(const std::optional<std::string>& start,
                                              const std::optional<std::string>& end) {
  if (!start && !end) return std::nullopt;
  return mg::CollectionWindow::parse(start.value_or("2024-03-01"), end.value_or("2024-07-14"));
}

py::object nan_to_none(double x) {
  if (std::isnan(x)) return py::none();
  return py::float_(x);
}

py::dict summary_dict(const mg::NetworkSummary& s) {
  return py::dict("channel_id"_a = s.channel_id, "component_count"_a = s.component_count,
                  "vcg_density"_a = s.vcg_density, "vcg_density_norm"_a = s.vcg_density_norm,
                  "avcg_density"_a = s.avcg_density, "avcg_transitivity"_a = s.avcg_transitivity,
                  "avcg_diameter"_a = s.avcg_diameter, "cpwg_edge_count"_a = s.cpwg_edge_count,
                  "cpwg_density"_a = nan_to_none(s.cpwg_density));
}

}  // namespace

PYBIND11_MODULE(_mediagraph, m) {
  m.doc() = "Channel, video and commenter network analytics.";

  py::register_exception<mg::Error>(m, "MediagraphError");

  py::class_<mg::Corpus>(m, "Corpus")
      .def_property_readonly("channel_count", [](const mg::Corpus& c) { return c.channels().size(); })
      .def_property_readonly("video_count", [](const mg::Corpus& c) { return c.videos().size(); })
      .def_property_readonly("comment_count", [](const mg::Corpus& c) { return c.comments().size(); })
      .def_property_readonly("commenter_count", &mg::Corpus::commenter_count)
      .def_property_readonly("videos_out_of_window",
                             [](const mg::Corpus& c) { return c.report().videos_out_of_window; })
      .def("channels",
           [](const mg::Corpus& c) {
             py::list out;
             for (const auto& ch : c.channels()) {
               out.append(py::dict("id"_a = ch.id, "title"_a = ch.title,
                                   "kind"_a = std::string(mg::to_string(ch.kind)),
                                   "orientation"_a = std::string(mg::to_string(ch.orientation))));
             }
             return out;
           })
      .def("__repr__", [](const mg::Corpus& c) {
        return "<Corpus channels=" + std::to_string(c.channels().size()) +
               " videos=" + std::to_string(c.videos().size()) +
               " comments=" + std::to_string(c.comments().size()) + ">";
      });

  m.def("load_corpus",
        [](const std::filesystem::path& dir, std::optional<std::string> start,
           std::optional<std::string> end) { return mg::load_corpus_dir(dir, window_of(start, end)); },
        "dir"_a, "window_start"_a = py::none(), "window_end"_a = py::none(),
        "Load channels.jsonl, videos.jsonl and comments.jsonl from a directory.");
  m.def("write_corpus", &mg::write_corpus, "corpus"_a, "dir"_a);

  m.def("generate_synthetic",
        [](std::uint64_t seed, std::size_t channels_per_group, std::size_t videos_per_channel,
           std::size_t commenters, double p_in, double p_cross, double p_repeat,
           double shorts_probability) {
          auto c = mg::SynthConfig::all_groups(channels_per_group);
          c.videos_per_channel = videos_per_channel;
          c.commenter_pool = commenters;
          c.in_group_probability = p_in;
          c.cross_group_probability = p_cross;
          c.repeat_probability = p_repeat;
          c.shorts_probability = shorts_probability;
          return mg::generate_synthetic(c, seed);
        },
        "seed"_a = 1, "channels_per_group"_a = 2, "videos_per_channel"_a = 10,
        "commenters"_a = 100, "p_in"_a = 0.1, "p_cross"_a = 0.0, "p_repeat"_a = 0.0,
        "shorts_probability"_a = 0.25);

  m.def("summarize_channel",
        [](const mg::Corpus& corpus, const std::string& channel_id, std::uint32_t threshold)
            -> py::object {
          mg::SummaryOptions opt;
          opt.threshold = threshold;
          auto s = mg::summarize_channel(channel_id, corpus, opt);
          if (!s) return py::none();
          return summary_dict(*s);
        },
        "corpus"_a, "channel_id"_a, "threshold"_a = 2,
        "Network summary of one channel, None when it has no comments.");

  m.def("commenter_projection",
        [](const mg::Corpus& corpus, const std::string& channel_id) {
          auto g = mg::project_commenters(mg::build_vcg(channel_id, corpus));
          std::vector<std::tuple<std::string, std::string, std::uint64_t>> out;
          for (const auto& e : g.edges)
            out.emplace_back(g.nodes[e.a], g.nodes[e.b], static_cast<std::uint64_t>(e.weight));
          return out;
        },
        "corpus"_a, "channel_id"_a, "Co-comment edges (a, b, shared videos) of a channel.");

  m.def("taxonomy",
        [](const mg::Corpus& corpus) {
          py::list out;
          for (const auto& r : mg::taxonomy_report(corpus)) {
            out.append(py::dict("group"_a = std::string(mg::to_string(r.group)),
                                "commenters"_a = r.commenters, "share_percent"_a = r.share_percent,
                                "mean_comments_per_commenter"_a = r.mean_comments_per_commenter));
          }
          return out;
        },
        "corpus"_a);

  m.def("overlap_matrix",
        [](const mg::Corpus& corpus) {
          auto om = mg::overlap_matrix(corpus);
          std::vector<std::string> labels;
          for (const auto& g : om.groups) labels.push_back(g.label());
          std::vector<std::vector<double>> cells(om.size(), std::vector<double>(om.size()));
          for (std::size_t y = 0; y < om.size(); ++y)
            for (std::size_t x = 0; x < om.size(); ++x) cells[y][x] = om.cell(y, x);
          return py::make_tuple(labels, cells);
        },
        "corpus"_a, "Group labels and the percentage overlap matrix (rows are the base group).");

  m.def("pearson",
        [](const std::vector<double>& x, const std::vector<double>& y) {
          auto r = mg::pearson(x, y);
          return py::make_tuple(r.r, r.p, r.n);
        },
        "x"_a, "y"_a, "Pearson r, two-sided p-value and n.");

  m.def("ccdf",
        [](const std::vector<double>& values) {
          auto c = mg::ccdf(values);
          return py::make_tuple(c.values, c.survival);
        },
        "values"_a);

  py::class_<mg::Gazetteer>(m, "Gazetteer")
      .def_static("load", [](const std::filesystem::path& p) { return mg::Gazetteer::load(p); })
      .def("__len__", &mg::Gazetteer::size)
      .def("match", [](const mg::Gazetteer& g, const std::string& text) {
        std::vector<std::string> out;
        for (auto* p : mg::match_politicians(text, g)) out.push_back(p->full_name);
        return out;
      });

  m.def("parse_invited", &mg::parse_invited, "text"_a,
        "Names under \"Invited\" in a model reply, None when unparseable.");

  m.def("extract_interviewees",
        [](const std::string& title, const std::string& description,
           std::map<std::string, std::string> replies, const mg::Gazetteer& gazetteer) {
          mg::Video v;
          v.title = title;
          v.description = description;
          mg::FixtureBackend backend(std::move(replies));
          auto x = mg::extract_interviewees(v, backend, gazetteer);
          std::vector<std::string> names;
          for (auto i : x.politicians) names.push_back(gazetteer[i].full_name);
          return py::make_tuple(names, x.flags);
        },
        "title"_a, "description"_a, "replies"_a, "gazetteer"_a,
        "Interviewee extraction against recorded replies keyed by prompt text.");

  m.def("extraction_prompt",
        [](const std::string& title, const std::string& description) {
          mg::Video v;
          v.title = title;
          v.description = description;
          return mg::make_extraction_request(v).prompt_text;
        },
        "title"_a, "description"_a);

  m.def("run_pipeline",
        [](const std::filesystem::path& config_path, bool force, std::optional<std::size_t> parallel) {
          auto config = mg::PipelineConfig::load(config_path);
          if (parallel) config.parallel = *parallel;
          config.validate();
          mg::RunOptions options;
          options.force = force;
          std::vector<mg::StageOutcome> outcomes;
          {
            py::gil_scoped_release release;
            mg::run_pipeline(config, options, &outcomes);
          }
          py::dict out;
          for (const auto& o : outcomes)
            out[py::str(o.stage)] = o.disabled ? "disabled" : o.skipped ? "skipped" : "ran";
          return out;
        },
        "config"_a, "force"_a = false, "parallel"_a = py::none(),
        "Run every stage; returns stage -> ran/skipped/disabled.");
}
