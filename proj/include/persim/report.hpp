#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "persim/stats.hpp"

namespace persim {

/// Round-trip-exact, locale-independent formatting; CSV/JSON/SVG output must
/// be byte-identical across runs and worker counts.
std::string format_double(double v);

/// Write `content` exactly (LF endings, UTF-8), creating parent directories.
void write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

/// CSV assembly with a fixed header; one row per call.
class CsvBuilder {
 public:
  explicit CsvBuilder(const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  const std::string& str() const { return body_; }

 private:
  std::size_t columns_;
  std::string body_;
};

/// Self-contained log-log survival plot with the fitted line and theta
/// annotation.
std::string loglog_svg(const std::string& title,
                       const std::vector<PersistenceEstimate>& grid,
                       const std::optional<ExponentFit>& fit);

}  // namespace persim
