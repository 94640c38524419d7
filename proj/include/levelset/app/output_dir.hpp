#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace levelset::app {

/// Output directory for one command run. Files are registered through
/// file(); unless commit() is called, the destructor removes every
/// registered file, and the directory itself if this run created it.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path dir);
  ~OutputDir();
  OutputDir(const OutputDir&) = delete;
  OutputDir& operator=(const OutputDir&) = delete;

  const std::filesystem::path& path() const { return dir_; }
  std::filesystem::path file(const std::string& name);
  void commit() { committed_ = true; }

 private:
  std::filesystem::path dir_;
  bool created_ = false;
  bool committed_ = false;
  std::vector<std::filesystem::path> files_;
};

/// Writes `text` to `path`, throwing std::runtime_error on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace levelset::app
