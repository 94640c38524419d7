#include "levelset/app/output_dir.hpp"

#include <fstream>
#include <stdexcept>
#include <system_error>

namespace levelset::app {

OutputDir::OutputDir(std::filesystem::path dir) : dir_(std::move(dir)) {
  if (dir_.empty()) throw std::invalid_argument("output directory must be given");
  std::error_code ec;
  if (std::filesystem::exists(dir_, ec)) {
    if (!std::filesystem::is_directory(dir_, ec)) throw std::runtime_error(dir_.string() + " exists and is not a directory");
  } else {
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw std::runtime_error("cannot create " + dir_.string() + ": " + ec.message());
    created_ = true;
  }
}

OutputDir::~OutputDir() {
  if (committed_) return;
  std::error_code ec;
  if (created_) {
    std::filesystem::remove_all(dir_, ec);
    return;
  }
  for (const auto& f : files_) std::filesystem::remove(f, ec);
}

std::filesystem::path OutputDir::file(const std::string& name) {
  files_.push_back(dir_ / name);
  return files_.back();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  out.close();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace levelset::app
