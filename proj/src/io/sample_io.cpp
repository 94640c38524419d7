#include "levelset/io/sample_io.hpp"

#include <charconv>
#include <limits>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "levelset/io/png.hpp"

namespace levelset::io {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_real(const std::string& text, const std::string& where) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    // from_chars does not accept "inf"/"-inf"; log posteriors may be -inf.
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    if (text == "inf") return std::numeric_limits<double>::infinity();
    throw FormatError(where + ": cannot parse '" + text + "' as a number");
  }
  return v;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string latents_csv(const SampleSet& samples) {
  std::string out;
  for (std::size_t i = 0; i < samples.latent_dim; ++i) out += "z_" + std::to_string(i) + ",";
  for (std::size_t l = 0; l < samples.num_classes; ++l) out += "pred_" + std::to_string(l) + ",";
  out += "log_post,chain_id\n";
  for (const Sample& s : samples.samples) {
    for (double v : s.z) out += format_real(v) + ",";
    for (double v : s.prediction.values()) out += format_real(v) + ",";
    out += format_real(s.log_posterior) + "," + std::to_string(s.chain_id) + "\n";
  }
  return out;
}

void export_latents(const SampleSet& samples, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << latents_csv(samples);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<Simplex> SampleTable::predictions() const {
  std::vector<Simplex> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.emplace_back(r.prediction);
  return out;
}

SampleTable read_latents(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path.string() + ": empty file");
  const std::vector<std::string> header = split_csv(line);
  SampleTable table;
  std::size_t col = 0;
  while (col < header.size() && header[col] == "z_" + std::to_string(table.latent_dim)) ++table.latent_dim, ++col;
  while (col < header.size() && header[col] == "pred_" + std::to_string(table.num_classes)) ++table.num_classes, ++col;
  if (table.num_classes == 0 || col + 2 != header.size() || header[col] != "log_post" || header[col + 1] != "chain_id") {
    throw FormatError(path.string() + ": header does not match z_*,pred_*,log_post,chain_id");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    const std::vector<std::string> cells = split_csv(line);
    if (cells.size() != header.size()) throw FormatError(where + ": expected " + std::to_string(header.size()) + " columns");
    SampleRow row;
    std::size_t c = 0;
    for (std::size_t i = 0; i < table.latent_dim; ++i) row.z.push_back(parse_real(cells[c++], where));
    for (std::size_t i = 0; i < table.num_classes; ++i) row.prediction.push_back(parse_real(cells[c++], where));
    row.log_posterior = parse_real(cells[c++], where);
    row.chain_id = static_cast<std::size_t>(parse_real(cells[c], where));
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_dataset_dir(const nn::LabeledDataset& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream labels(dir / "labels.csv", std::ios::binary | std::ios::trunc);
  if (!labels) throw std::runtime_error("cannot write " + (dir / "labels.csv").string());
  labels << "file,label\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "img_%05zu.png", i);
    write_png_gray16(data.width(), data.height(), data.quantized(i), dir / name);
    labels << name << "," << data.label(i) << "\n";
  }
  if (!labels) throw std::runtime_error("write failed for " + (dir / "labels.csv").string());
}

nn::LabeledDataset read_dataset_dir(const std::filesystem::path& dir, int num_classes) {
  const auto labels_path = dir / "labels.csv";
  std::ifstream in(labels_path);
  if (!in) throw FormatError("cannot open " + labels_path.string());
  std::string line;
  if (!std::getline(in, line) || line != "file,label") throw FormatError(labels_path.string() + ": expected header 'file,label'");
  nn::LabeledDataset data;
  bool first = true;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    const std::string where = labels_path.string() + ":" + std::to_string(line_no);
    if (cells.size() != 2) throw FormatError(where + ": expected 'file,label'");
    const auto file = dir / cells[0];
    int label = 0;
    const auto [ptr, ec] = std::from_chars(cells[1].data(), cells[1].data() + cells[1].size(), label);
    if (ec != std::errc() || ptr != cells[1].data() + cells[1].size() || label < 0 || label >= num_classes) {
      throw FormatError(where + ": bad label '" + cells[1] + "' for " + file.string());
    }
    GrayPixels16 px;
    try {
      px = read_png_gray(file);
    } catch (const PngError& e) {
      throw FormatError(std::string("bad image ") + e.what());
    }
    if (first) {
      data = nn::LabeledDataset(px.width, px.height, num_classes);
      first = false;
    } else if (px.width != data.width() || px.height != data.height()) {
      throw FormatError(file.string() + ": image size differs from the rest of the dataset");
    }
    data.add_quantized(px.pixels, label);
  }
  if (data.empty()) throw FormatError(labels_path.string() + ": no images listed");
  return data;
}

}  // namespace levelset::io
