#pragma once

// JSON and CSV serialization for domains, corpus specs and reports.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lunekit/geometry.hpp"
#include "lunekit/verify.hpp"

namespace lunekit {

/// Unreadable, unwritable or malformed files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {schema_version, kappa, lambda, boundary: [[x, y, z], ...], metadata}.
/// Coordinates are embedding coordinates of the model surface.
struct DomainRecord {
  Curvature kappa;
  double lambda = 0.0;
  std::vector<ModelPoint> boundary;
  std::optional<std::uint64_t> seed;
  std::optional<double> h;
  std::string generator;
};

std::string domain_json(const DomainRecord& rec);
/// Throws IoError on malformed JSON and GeometryError for off-surface points.
DomainRecord parse_domain_json(const std::string& text);
DomainRecord read_domain(const std::filesystem::path& path);
void write_domain(const std::filesystem::path& path, const DomainRecord& rec);

/// Relative domain file paths are resolved against base_dir.
CorpusSpec parse_corpus_spec(const std::string& text, const std::filesystem::path& base_dir = {});
CorpusSpec read_corpus_spec(const std::filesystem::path& path);

std::string report_json(const VerificationReport& report);
/// One line per domain row.
std::string report_csv(const VerificationReport& report);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace lunekit
