#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "levelset/app/run_config.hpp"
#include "levelset/eval/circle_comparison.hpp"
#include "levelset/eval/deviation.hpp"

namespace levelset::app {

inline constexpr const char* kConfigEcho = "config.echo.txt";

/// Resolved options as key=value lines; the keys are the CLI flag names, so
/// the echo is itself a valid --config file.
std::string config_echo(const GenDataOptions& o);
std::string config_echo(const TrainOptions& o);
std::string config_echo(const SampleOptions& o);
std::string config_echo(const EvalOptions& o);
std::string config_echo(const CircleOptions& o);

/// Each command writes its artifacts plus the config echo into the output
/// directory, or removes what it wrote and rethrows. std::invalid_argument
/// signals a usage problem detected before any work starts.
void cmd_gen_data(const GenDataOptions& o, std::ostream& log);
void cmd_train(const TrainOptions& o, std::ostream& log);
void cmd_sample(const SampleOptions& o, std::ostream& log);
void cmd_eval(const EvalOptions& o, std::ostream& log);
void cmd_circle_compare(const CircleOptions& o, std::ostream& log);

/// Deviation and confidence report shared by sample and eval.
nlohmann::json deviation_report_json(std::span<const Simplex> predictions, const TargetPrediction& target);
nlohmann::json circle_report_json(const eval::CircleComparison& cmp, const SamplerConfig& cfg);

/// Parses argv and dispatches. Exit codes: 0 success, 1 runtime failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace levelset::app
