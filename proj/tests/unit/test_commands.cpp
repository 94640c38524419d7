#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "levelset/app/commands.hpp"
#include "levelset/eval/deviation.hpp"
#include "levelset/io/sample_io.hpp"

namespace fs = std::filesystem;
using levelset::app::run_cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "levelset_test_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir.parent_path());
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

const fs::path kPack = fs::path(LEVELSET_FIXTURE_DIR) / "reference_pack";

// A tiny trained classifier shared by the sampling tests.
const fs::path& trained_model() {
  static const fs::path model = [] {
    const auto data = scratch("model_data");
    const auto out = scratch("model");
    REQUIRE(cli({"gen-data", "--count", "60", "--seed", "3", "--out", data.string()}).code == 0);
    const Run r = cli({"train", "--data", data.string(), "--out", out.string(), "--epochs", "1", "--batch-size", "16"});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    return out / "classifier.lswf";
  }();
  return model;
}

std::vector<std::string> small_sample(const fs::path& out, const std::string& threads) {
  return {"sample", "--classifier", trained_model().string(), "--target", "beta:0.5", "--particles", "6", "--steps",
          "8",      "--n",          "4",     "--seed", "5", "--threads", threads, "--out", out.string()};
}

}  // namespace

TEST_CASE("usage errors") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"bogus"}).code == 2);
  const auto out = scratch("zero");
  const Run r = cli({"gen-data", "--count", "0", "--out", out.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("count") != std::string::npos);
  CHECK(!fs::exists(out));
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("gen-data is reproducible") {
  const auto a = scratch("gen_a"), b = scratch("gen_b");
  REQUIRE(cli({"gen-data", "--count", "20", "--seed", "9", "--out", a.string()}).code == 0);
  REQUIRE(cli({"gen-data", "--count", "20", "--seed", "9", "--out", b.string()}).code == 0);
  CHECK(slurp(a / "labels.csv") == slurp(b / "labels.csv"));
  CHECK(slurp(a / "img_00019.png") == slurp(b / "img_00019.png"));
  std::ifstream labels(a / "labels.csv");
  int lines = 0;
  for (std::string l; std::getline(labels, l);) ++lines;
  CHECK(lines == 21);
  CHECK(slurp(a / levelset::app::kConfigEcho) == "count=20\nseed=9\nout=" + a.string() + "\n");
}

TEST_CASE("train writes a classifier, metrics and loss history") {
  const fs::path model = trained_model();
  const fs::path dir = model.parent_path();
  CHECK(fs::exists(model));
  const auto metrics = read_json(dir / "metrics.json");
  for (const char* key : {"accuracy", "precision", "recall", "count", "correct", "per_class", "confusion"}) {
    CHECK(metrics.contains(key));
  }
  CHECK(metrics["count"] == 6);
  const std::string loss = slurp(dir / "loss.csv");
  CHECK(loss.rfind("epoch,batch,loss\n", 0) == 0);

  SUBCASE("corrupted dataset names the file and leaves no output") {
    const auto data = scratch("bad_data");
    REQUIRE(cli({"gen-data", "--count", "10", "--out", data.string()}).code == 0);
    fs::resize_file(data / "img_00004.png", 30);
    const auto out = scratch("bad_train");
    const Run r = cli({"train", "--data", data.string(), "--out", out.string(), "--epochs", "1"});
    CHECK(r.code == 1);
    CHECK(r.err.find("img_00004.png") != std::string::npos);
    CHECK(!fs::exists(out));
  }
}

TEST_CASE("sample artifacts") {
  const auto out = scratch("sample_1");
  const Run r = cli(small_sample(out, "1"));
  REQUIRE_MESSAGE(r.code == 0, r.err);
  for (const char* f : {"samples.csv", "grid.png", "diagnostics.json", "report.json", levelset::app::kConfigEcho}) {
    CHECK(fs::exists(out / f));
  }
  const auto table = levelset::io::read_latents(out / "samples.csv");
  CHECK(table.rows.size() == 4);
  const auto report = read_json(out / "report.json");
  CHECK(report["delta"].get<double>() >= 0.0);
  CHECK(report["n"] == 4);
  const auto diag = read_json(out / "diagnostics.json");
  CHECK(diag["acceptance_rates"].size() == 6);
  CHECK(diag["sampler"]["k"] == 0.25);

  SUBCASE("byte-identical across thread counts") {
    const auto out8 = scratch("sample_8");
    REQUIRE(cli(small_sample(out8, "8")).code == 0);
    for (const char* f : {"samples.csv", "grid.png", "diagnostics.json", "report.json"}) {
      CAPTURE(f);
      CHECK(slurp(out / f) == slurp(out8 / f));
    }
  }
  SUBCASE("eval reproduces the library deviation bit for bit") {
    const auto ev = scratch("eval");
    REQUIRE(cli({"eval", "--samples", (out / "samples.csv").string(), "--target", "beta:0.5", "--out", ev.string()}).code == 0);
    const auto er = read_json(ev / "report.json");
    CHECK(er["delta"].get<double>() == report["delta"].get<double>());
    const double lib = levelset::eval::deviation(table.predictions(), levelset::Simplex({0.5, 0.5})).delta;
    CHECK(er["delta"].get<double>() == lib);
    const std::string pct = er["delta_percent"];
    CHECK(pct.back() == '%');
    CHECK(pct.size() - pct.find('.') == 4);  // two decimals plus '%'
  }
  SUBCASE("the config echo is a valid config file") {
    const auto again = scratch("sample_echo");
    const Run e = cli({"sample", "--config", (out / levelset::app::kConfigEcho).string(), "--out", again.string()});
    REQUIRE_MESSAGE(e.code == 0, e.err);
    CHECK(slurp(out / "samples.csv") == slurp(again / "samples.csv"));
  }
}

TEST_CASE("config files") {
  const auto dir = scratch("config");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "run.cfg");
    f << "classifier=" << trained_model().string() << "\nparticles=5\nsteps=3\nn=2\ntarget=beta:0.9\n";
  }
  const auto out = dir / "out";
  const Run r = cli({"sample", "--config", (dir / "run.cfg").string(), "--particles", "4", "--out", out.string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const std::string echo = slurp(out / levelset::app::kConfigEcho);
  CHECK(echo.find("particles=4\n") != std::string::npos);
  CHECK(echo.find("steps=3\n") != std::string::npos);
  CHECK(echo.find("target=beta:0.9\n") != std::string::npos);

  {
    std::ofstream f(dir / "bad.cfg");
    f << "classifier=x.lswf\nparticels=5\n";
  }
  const Run bad = cli({"sample", "--config", (dir / "bad.cfg").string(), "--out", (dir / "out2").string()});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("particels") != std::string::npos);
}

TEST_CASE("sample failures are clean") {
  const auto out = scratch("missing");
  const Run r = cli({"sample", "--classifier", "/nonexistent/clf.lswf", "--out", out.string()});
  CHECK(r.code != 0);
  CHECK(r.err.find("/nonexistent/clf.lswf") != std::string::npos);
  CHECK(!fs::exists(out));

  const Run classes = cli({"sample", "--classifier", trained_model().string(), "--target", "mnist:1vs7", "--out",
                           out.string(), "--steps", "1"});
  CHECK(classes.code != 0);
  CHECK(!fs::exists(out));
}

TEST_CASE("decoder world through the CLI") {
  const auto out = scratch("decoder");
  const Run r = cli({"sample", "--world", "decoder", "--decoder", (kPack / "decoder.lswf").string(), "--classifier",
                     (kPack / "classifier.lswf").string(), "--target", "probs:0.2,0.3,0.5", "--particles", "4",
                     "--steps", "20", "--n", "3", "--out", out.string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(read_json(out / "diagnostics.json")["sampler"]["k"] == 0.05);
  CHECK(levelset::io::read_latents(out / "samples.csv").latent_dim == 5);
}

TEST_CASE("circle-compare structure") {
  const auto out = scratch("circle");
  const Run r = cli({"circle-compare", "--classifier", trained_model().string(), "--particles", "3", "--steps", "3",
                     "--n", "2", "--out", out.string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto rep = read_json(out / "report.json");
  REQUIRE(rep["targets"].size() == 3);
  for (const auto& t : rep["targets"]) {
    CHECK(t["worlds"].size() == 2);
    CHECK(t["delta"].contains("confidence"));
  }
}

TEST_CASE("the installed binary reports failures through its exit code") {
  const auto out = scratch("binary");
  const std::string cmd = std::string("\"") + LEVELSET_CLI_PATH + "\" sample --classifier /nonexistent.lswf --out \"" +
                          out.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CHECK(status != 0);
  CHECK(!fs::exists(out));
}
