#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ppursuit::manifest {

// Flat key=value run manifest written next to every file a command produces.
// Captures tool version, the resolved parameters, the seed, and input file
// digests — everything needed to reproduce the outputs bit-for-bit.
class Manifest {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, std::uint64_t value);

  void write(const std::string& path) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// FNV-1a 64-bit digest of a file's bytes, formatted "fnv1a64:<16 hex>".
std::string file_digest(const std::string& path);

}  // namespace ppursuit::manifest
