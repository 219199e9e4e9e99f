#pragma once

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace alp {

/// Lowercase hex SHA-256 of a file's bytes.
inline std::string sha256_file(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + p.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 init failed");
  char buf[1 << 16];
  while (is) {
    is.read(buf, sizeof buf);
    if (is.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(is.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

/// UTC wall-clock time, e.g. 2026-10-17T01:02:03Z, or the compact 20261017T010203Z form.
inline std::string utc_stamp(std::chrono::system_clock::time_point t, bool compact = false) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, compact ? "%Y%m%dT%H%M%SZ" : "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct ManifestEntry {
  std::string path;  ///< relative to the run directory
  std::uintmax_t bytes = 0;
  std::string sha256;
};

struct RunManifest {
  std::string version;
  std::string subcommand;
  std::uint64_t seed = 0;
  std::string start;
  std::string end;
  int exit_code = 0;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<ManifestEntry> files;

  /// Lists every regular file under dir except the manifest itself, sorted by path.
  void inventory(const std::filesystem::path& dir) {
    files.clear();
    for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
      if (!e.is_regular_file()) continue;
      const auto rel = std::filesystem::relative(e.path(), dir).generic_string();
      if (rel == "manifest.txt") continue;
      files.push_back({rel, e.file_size(), sha256_file(e.path())});
    }
    std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
  }

  void write(std::ostream& os) const {
    os << "version=" << version << "\nsubcommand=" << subcommand << "\nseed=" << seed << "\nstart=" << start
       << "\nend=" << end << "\nexit_code=" << exit_code << "\n[config]\n";
    for (const auto& [k, v] : config) os << k << '=' << v << '\n';
    os << "[files]\n";
    for (const auto& f : files) os << f.sha256 << "  " << f.bytes << "  " << f.path << '\n';
  }
};

}  // namespace alp
