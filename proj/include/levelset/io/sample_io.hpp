#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "levelset/nn/dataset.hpp"
#include "levelset/numerics/simplex.hpp"
#include "levelset/sampler/level_set.hpp"

namespace levelset::io {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal form that round-trips a double (17 significant digits).
std::string format_real(double v);

/// CSV with header z_0..z_{d-1},pred_0..pred_{L-1},log_post,chain_id; one row per sample.
void export_latents(const SampleSet& samples, const std::filesystem::path& path);
std::string latents_csv(const SampleSet& samples);

struct SampleRow {
  std::vector<double> z;
  std::vector<double> prediction;
  double log_posterior = 0.0;
  std::size_t chain_id = 0;
};

struct SampleTable {
  std::size_t latent_dim = 0;
  std::size_t num_classes = 0;
  std::vector<SampleRow> rows;

  std::vector<Simplex> predictions() const;
};

/// Parses a file written by export_latents; throws FormatError naming the line on bad input.
SampleTable read_latents(const std::filesystem::path& path);

/// Dataset container: <dir>/img_NNNNN.png (16-bit grayscale) plus <dir>/labels.csv ("file,label").
void write_dataset_dir(const nn::LabeledDataset& data, const std::filesystem::path& dir);
/// Throws FormatError naming the offending file.
nn::LabeledDataset read_dataset_dir(const std::filesystem::path& dir, int num_classes = 2);

}  // namespace levelset::io
