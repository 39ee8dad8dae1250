#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <unistd.h>

namespace testutil {

/// Self-cleaning scratch directory for file-format tests.
struct TempDir {
  std::filesystem::path path;

  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("exomotion_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

 private:
  static std::uint64_t& counter() {
    static std::uint64_t c = 0;
    return c;
  }
};

}  // namespace testutil
