#include "ppursuit/manifest.hpp"

#include <cstdio>
#include <fstream>

#include "ppursuit/csv.hpp"
#include "ppursuit/error.hpp"

namespace ppursuit::manifest {

void Manifest::set(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}

void Manifest::set(const std::string& key, double value) {
  entries_.emplace_back(key, csv::format_double(value));
}

void Manifest::set(const std::string& key, std::uint64_t value) {
  entries_.emplace_back(key, std::to_string(value));
}

void Manifest::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ExitCode::parse, "cannot write file: " + path);
  }
  for (const auto& [key, value] : entries_) {
    out << key << '=' << value << '\n';
  }
  if (!out) {
    throw Error(ExitCode::parse, "write failed: " + path);
  }
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ExitCode::parse, "cannot open file: " + path);
  }
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ULL;
    }
    if (!in) break;
  }
  char hex[32];
  std::snprintf(hex, sizeof(hex), "fnv1a64:%016llx", static_cast<unsigned long long>(hash));
  return hex;
}

}  // namespace ppursuit::manifest
