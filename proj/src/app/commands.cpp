#include "levelset/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "levelset/app/output_dir.hpp"
#include "levelset/io/png.hpp"
#include "levelset/io/sample_io.hpp"
#include "levelset/nn/metrics.hpp"
#include "levelset/simd/kernels.hpp"
#include "levelset/worlds/circle.hpp"
#include "levelset/worlds/decoder.hpp"
#include "levelset/worlds/house_rocket.hpp"

namespace levelset::app {

using nlohmann::json;

namespace {

class Echo {
 public:
  Echo& add(const std::string& key, const std::string& value) {
    text_ += key + "=" + value + "\n";
    return *this;
  }
  Echo& add(const std::string& key, double value) { return add(key, io::format_real(value)); }
  Echo& add(const std::string& key, std::uint64_t value) { return add(key, std::to_string(value)); }
  Echo& add(const std::string& key, int value) { return add(key, std::to_string(value)); }
  Echo& add(const std::string& key, const std::filesystem::path& value) { return add(key, value.string()); }
  Echo& sampler(const SamplerConfig& c) {
    return add("alpha", c.alpha)
        .add("particles", c.num_particles)
        .add("steps", c.num_steps)
        .add("n", c.resample_count)
        .add("seed", c.seed)
        .add("floor", c.prediction_floor)
        .add("threads", c.threads);
  }
  std::string str() const { return text_; }

 private:
  std::string text_;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::unique_ptr<WorldModel> make_world(const SampleOptions& o) {
  if (o.world == "house-rocket") return std::make_unique<HouseRocketWorld>();
  if (o.world == "circle") return std::make_unique<CircleWorld>();
  if (o.world == "decoder") return std::make_unique<DecoderWorld>(DecoderWorld::load(o.decoder));
  throw std::invalid_argument("unknown world '" + o.world + "' (expected house-rocket, circle or decoder)");
}

json summary_json(const eval::WorldSummary& s) {
  json j{{"world", s.world},
         {"n", s.n},
         {"mean_confidence", s.mean_confidence},
         {"mean_max_confidence", s.mean_max_confidence},
         {"target_agreement", nullptr},
         {"label_accuracy", s.label_accuracy},
         {"delta", s.delta},
         {"mean_acceptance", s.mean_acceptance}};
  if (s.target_agreement) j["target_agreement"] = *s.target_agreement;
  return j;
}

json metrics_json(const nn::EvalMetrics& m) {
  json per_class = json::array();
  for (std::size_t c = 0; c < m.per_class.size(); ++c) {
    const auto& pc = m.per_class[c];
    per_class.push_back({{"label", c},
                         {"precision", pc.precision},
                         {"recall", pc.recall},
                         {"support", pc.support},
                         {"true_positive", pc.true_positive},
                         {"false_positive", pc.false_positive},
                         {"false_negative", pc.false_negative}});
  }
  // Top-level precision and recall treat the rocket class as positive.
  const auto& positive = m.per_class.at(kRocketLabel);
  return {{"count", m.count},         {"correct", m.correct},   {"accuracy", m.accuracy},
          {"positive_class", kRocketLabel}, {"precision", positive.precision}, {"recall", positive.recall},
          {"per_class", per_class},   {"confusion", m.confusion}};
}

}  // namespace

std::string config_echo(const GenDataOptions& o) {
  return Echo().add("count", static_cast<std::uint64_t>(o.count)).add("seed", o.seed).add("out", o.out).str();
}

std::string config_echo(const TrainOptions& o) {
  return Echo()
      .add("data", o.data)
      .add("out", o.out)
      .add("epochs", o.train.epochs)
      .add("batch-size", o.train.batch_size)
      .add("lr", o.train.learning_rate)
      .add("optimizer", o.train.optimizer)
      .add("seed", o.train.seed)
      .add("threads", o.train.threads)
      .add("holdout", o.holdout)
      .str();
}

std::string config_echo(const SampleOptions& o) {
  Echo e;
  e.add("world", o.world).add("classifier", o.classifier);
  if (!o.decoder.empty()) e.add("decoder", o.decoder);
  e.add("target", o.target).add("k", o.k.value_or(default_proposal_scale(o.world))).sampler(o.sampler).add("out", o.out);
  return e.str();
}

std::string config_echo(const EvalOptions& o) {
  return Echo().add("samples", o.samples).add("target", o.target).add("out", o.out).str();
}

std::string config_echo(const CircleOptions& o) {
  return Echo()
      .add("classifier", o.classifier)
      .add("k", o.sampler.proposal_scale)
      .sampler(o.sampler)
      .add("out", o.out)
      .str();
}

json deviation_report_json(std::span<const Simplex> predictions, const TargetPrediction& target) {
  const eval::DeviationReport d = eval::deviation(predictions, target.probs());
  const eval::ConfidenceStats c = eval::confidence_stats(predictions);
  json conf{{"mean", c.mean}, {"min", c.min}, {"max", c.max}, {"n", c.n}};
  if (c.binary) {
    conf["band"] = {eval::kAmbiguityBandLo, eval::kAmbiguityBandHi};
    conf["in_band"] = c.in_band;
    conf["out_of_band"] = c.out_of_band;
    conf["band_fraction"] = c.band_fraction();
  }
  return {{"target", target.label()},
          {"target_probs", target.probs().values()},
          {"n", d.n},
          {"num_classes", d.num_classes},
          {"delta", d.delta},
          {"delta_percent", d.delta_percent_string()},
          {"per_sample_delta", d.per_sample},
          {"confidence", conf}};
}

json circle_report_json(const eval::CircleComparison& cmp, const SamplerConfig& cfg) {
  json targets = json::array();
  for (const auto& r : cmp.results) {
    json deltas{{"confidence", r.confidence_delta},
                {"max_confidence", r.max_confidence_delta},
                {"label_accuracy", r.label_accuracy_delta},
                {"target_agreement", nullptr}};
    if (r.target_agreement_delta) deltas["target_agreement"] = *r.target_agreement_delta;
    targets.push_back({{"target", r.target.label()},
                       {"target_probs", r.target.probs().values()},
                       {"worlds", {summary_json(r.plain), summary_json(r.circle)}},
                       {"delta", deltas}});
  }
  return {{"sampler", sampler_json(cfg)}, {"delta_convention", "circle minus house-rocket"}, {"targets", targets}};
}

void cmd_gen_data(const GenDataOptions& o, std::ostream& log) {
  if (o.count == 0) throw std::invalid_argument("--count must be positive");
  OutputDir out(o.out);
  for (std::size_t i = 0; i < o.count; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "img_%05zu.png", i);
    out.file(name);
  }
  out.file("labels.csv");
  Rng rng(o.seed);
  const nn::LabeledDataset data = nn::generate_dataset(o.count, rng);
  io::write_dataset_dir(data, out.path());
  write_text(out.file(kConfigEcho), config_echo(o));
  out.commit();
  log << "gen-data: wrote " << o.count << " images to " << out.path().string() << "\n";
}

void cmd_train(const TrainOptions& o, std::ostream& log) {
  require_dir(o.data, "dataset directory");
  o.train.validate();
  if (!(o.holdout > 0.0 && o.holdout < 1.0)) throw std::invalid_argument("--holdout must lie in (0, 1)");
  OutputDir out(o.out);

  const nn::LabeledDataset data = io::read_dataset_dir(o.data);
  if (data.width() != data.height() || data.width() % 4 != 0) {
    throw std::runtime_error("training expects square images with a side divisible by 4");
  }
  const auto held = static_cast<std::size_t>(std::llround(o.holdout * static_cast<double>(data.size())));
  if (held == 0 || held >= data.size()) throw std::runtime_error("dataset too small for the requested holdout split");
  const nn::LabeledDataset train_set = data.slice(0, data.size() - held);
  const nn::LabeledDataset test_set = data.slice(data.size() - held, data.size());

  nn::Network net = nn::default_cnn(data.width(), data.num_classes());
  Rng init_rng = Rng(o.train.seed).split(1);
  nn::kaiming_uniform_init(net, init_rng);
  nn::Classifier clf(std::move(net));

  log << "train: " << train_set.size() << " training / " << test_set.size() << " held-out images, kernels "
      << simd::isa_name(simd::active().isa) << "\n";
  std::ostringstream loss_csv;
  loss_csv << "epoch,batch,loss\n";
  int last_epoch = -1;
  const nn::TrainResult result = nn::train(clf, train_set, o.train, [&](const nn::LossRecord& r) {
    loss_csv << r.epoch << "," << r.batch << "," << io::format_real(r.loss) << "\n";
    if (r.epoch != last_epoch) {
      last_epoch = r.epoch;
      log << "train: epoch " << r.epoch + 1 << "/" << o.train.epochs << "\n";
    }
  });

  const nn::EvalMetrics held_metrics = nn::evaluate(clf, test_set);
  const nn::EvalMetrics train_metrics = nn::evaluate(clf, train_set);
  json metrics = metrics_json(held_metrics);
  metrics["split"] = "holdout";
  metrics["train_accuracy"] = train_metrics.accuracy;
  metrics["train_count"] = train_metrics.count;
  metrics["final_loss"] = result.history.back().loss;
  metrics["initial_loss"] = result.history.front().loss;

  clf.save(out.file("classifier.lswf"));
  write_text(out.file("metrics.json"), dump(metrics));
  write_text(out.file("loss.csv"), loss_csv.str());
  write_text(out.file(kConfigEcho), config_echo(o));
  out.commit();
  log << "train: held-out accuracy " << held_metrics.accuracy << "\n";
}

void cmd_sample(const SampleOptions& o, std::ostream& log) {
  require_file(o.classifier, "classifier");
  if (o.world == "decoder") require_file(o.decoder, "decoder");
  const TargetPrediction target = TargetPrediction::parse(o.target);
  SamplerConfig cfg = o.sampler;
  cfg.proposal_scale = o.k.value_or(default_proposal_scale(o.world));
  cfg.validate(target.num_classes());

  const nn::Classifier clf = nn::Classifier::load(o.classifier);
  const std::unique_ptr<WorldModel> world = make_world(o);
  OutputDir out(o.out);

  log << "sample: " << world->name() << ", target " << target.label() << ", " << cfg.num_particles << " chains x "
      << cfg.num_steps << " steps\n";
  const SampleSet set = run_chains(*world, clf, target, cfg);

  std::vector<Image> images;
  for (const auto& s : set.samples) images.push_back(s.image);
  io::export_latents(set, out.file("samples.csv"));
  io::write_png_gray8(io::tile_grid(images), out.file("grid.png"));

  json diag{{"world", world->name()},
            {"target", target.label()},
            {"sampler", sampler_json(cfg)},
            {"mean_acceptance", set.diagnostics.mean_acceptance},
            {"acceptance_rates", set.diagnostics.acceptance_rates},
            {"traces", set.diagnostics.traces},
            {"warnings", set.diagnostics.warnings}};
  write_text(out.file("diagnostics.json"), dump(diag));
  const std::vector<Simplex> preds = set.predictions();
  write_text(out.file("report.json"), dump(deviation_report_json(preds, target)));
  write_text(out.file(kConfigEcho), config_echo(o));
  out.commit();
  for (const auto& w : set.diagnostics.warnings) log << "warning: " << w << "\n";
  log << "sample: mean acceptance " << set.diagnostics.mean_acceptance << "\n";
}

void cmd_eval(const EvalOptions& o, std::ostream& log) {
  require_file(o.samples, "samples CSV");
  const TargetPrediction target = TargetPrediction::parse(o.target);
  const io::SampleTable table = io::read_latents(o.samples);
  if (table.rows.empty()) throw std::runtime_error(o.samples.string() + ": no samples");
  if (table.num_classes != target.num_classes()) {
    throw std::invalid_argument("target has " + std::to_string(target.num_classes()) + " classes but the samples have " +
                                std::to_string(table.num_classes));
  }
  OutputDir out(o.out);
  const std::vector<Simplex> preds = table.predictions();
  const json report = deviation_report_json(preds, target);
  write_text(out.file("report.json"), dump(report));
  write_text(out.file(kConfigEcho), config_echo(o));
  out.commit();
  log << "eval: delta " << report["delta_percent"].get<std::string>() << "\n";
}

void cmd_circle_compare(const CircleOptions& o, std::ostream& log) {
  require_file(o.classifier, "classifier");
  o.sampler.validate(2);
  const nn::Classifier clf = nn::Classifier::load(o.classifier);
  OutputDir out(o.out);
  const auto targets = eval::default_circle_targets();
  log << "circle-compare: " << targets.size() << " targets x 2 worlds\n";
  const eval::CircleComparison cmp = eval::circle_comparison(clf, o.sampler, targets);
  write_text(out.file("report.json"), dump(circle_report_json(cmp, o.sampler)));
  write_text(out.file(kConfigEcho), config_echo(o));
  out.commit();
  for (const auto& r : cmp.results) {
    log << "circle-compare: " << r.target.label() << " confidence delta " << r.confidence_delta << "\n";
  }
}

namespace {

void add_sampler_flags(CLI::App* cmd, SamplerConfig& s) {
  cmd->add_option("--alpha", s.alpha, "Dirichlet concentration")->capture_default_str();
  cmd->add_option("--particles", s.num_particles, "number of chains N")->capture_default_str();
  cmd->add_option("--steps", s.num_steps, "MH steps per chain T")->capture_default_str();
  cmd->add_option("--n", s.resample_count, "samples kept after resampling")->capture_default_str();
  cmd->add_option("--seed", s.seed, "master seed")->capture_default_str();
  cmd->add_option("--floor", s.prediction_floor, "prediction clamp epsilon")->capture_default_str();
  cmd->add_option("--threads", s.threads, "worker threads (does not change results)")->capture_default_str();
}

// Splices the key=value lines of a subcommand's --config file in front of its
// command-line flags; later flags win, so the command line overrides the file.
std::vector<std::string> expand_config(const CLI::App& app, const std::vector<std::string>& args) {
  if (args.empty()) return args;
  const CLI::App* cmd = nullptr;
  for (const CLI::App* sub : app.get_subcommands({})) {
    if (sub->get_name() == args[0]) cmd = sub;
  }
  if (cmd == nullptr) return args;

  std::vector<std::string> rest{args[0]};
  std::string config;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config requires a file");
      config = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (config.empty()) return args;

  std::ifstream in(config);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + config);
  std::vector<std::string> out{args[0]};
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    const std::string where = config + ":" + std::to_string(line_no);
    if (eq == std::string::npos) throw CLI::ValidationError("--config", where + ": expected key=value");
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    const std::string key = trim(line.substr(0, eq));
    if (key == "config" || cmd->get_option_no_throw("--" + key) == nullptr) {
      throw CLI::ValidationError("--config", where + ": unknown key '" + key + "' for " + cmd->get_name());
    }
    out.push_back("--" + key);
    out.push_back(trim(line.substr(eq + 1)));
  }
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Level-set sampling of classifier inputs"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  GenDataOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-data", "render a labeled house/rocket dataset");
  gen_cmd->add_option("--count", gen.count, "number of images")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "output directory")->required();

  TrainOptions tr;
  auto* train_cmd = app.add_subcommand("train", "train the CNN classifier on a dataset directory");
  train_cmd->add_option("--data", tr.data, "dataset directory")->required();
  train_cmd->add_option("--out", tr.out, "output directory")->required();
  train_cmd->add_option("--epochs", tr.train.epochs)->capture_default_str();
  train_cmd->add_option("--batch-size", tr.train.batch_size)->capture_default_str();
  train_cmd->add_option("--lr", tr.train.learning_rate)->capture_default_str();
  train_cmd->add_option("--optimizer", tr.train.optimizer)->check(CLI::IsMember({"adam", "sgd"}))->capture_default_str();
  train_cmd->add_option("--seed", tr.train.seed)->capture_default_str();
  train_cmd->add_option("--threads", tr.train.threads)->capture_default_str();
  train_cmd->add_option("--holdout", tr.holdout, "held-out fraction")->capture_default_str();

  SampleOptions smp;
  double k = 0.0;
  auto* sample_cmd = app.add_subcommand("sample", "sample the level set of a target prediction");
  sample_cmd->add_option("--world", smp.world)->check(CLI::IsMember({"house-rocket", "circle", "decoder"}))->capture_default_str();
  sample_cmd->add_option("--classifier", smp.classifier, "LSWF classifier")->required();
  sample_cmd->add_option("--decoder", smp.decoder, "LSWF decoder (decoder world)");
  sample_cmd->add_option("--target", smp.target, "beta:<b> | mnist:ambiguous|1vs7|8vs9 | probs:<p0>,<p1>,...")->capture_default_str();
  auto* k_opt = sample_cmd->add_option("--k", k, "proposal variance (default 0.25, decoder 0.05)");
  add_sampler_flags(sample_cmd, smp.sampler);
  sample_cmd->add_option("--out", smp.out, "output directory")->required();

  EvalOptions ev;
  auto* eval_cmd = app.add_subcommand("eval", "deviation and confidence report for a samples CSV");
  eval_cmd->add_option("--samples", ev.samples, "samples.csv")->required();
  eval_cmd->add_option("--target", ev.target, "target prediction")->required();
  eval_cmd->add_option("--out", ev.out, "output directory")->required();

  CircleOptions cc;
  auto* circle_cmd = app.add_subcommand("circle-compare", "compare level sets with and without a circle overlay");
  circle_cmd->add_option("--classifier", cc.classifier, "LSWF classifier")->required();
  circle_cmd->add_option("--k", cc.sampler.proposal_scale, "proposal variance")->capture_default_str();
  add_sampler_flags(circle_cmd, cc.sampler);
  circle_cmd->add_option("--out", cc.out, "output directory")->required();

  for (auto* cmd : {gen_cmd, train_cmd, sample_cmd, eval_cmd, circle_cmd}) {
    cmd->add_option("--config", "key=value file; flags override it");
  }

  try {
    const std::vector<std::string> expanded = expand_config(app, args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (k_opt->count() > 0) smp.k = k;

  try {
    if (*gen_cmd) cmd_gen_data(gen, err);
    if (*train_cmd) cmd_train(tr, err);
    if (*sample_cmd) cmd_sample(smp, err);
    if (*eval_cmd) cmd_eval(ev, err);
    if (*circle_cmd) cmd_circle_compare(cc, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace levelset::app
