#include "persim/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace persim {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

CsvBuilder::CsvBuilder(const std::vector<std::string>& header)
    : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) body_ += ',';
    body_ += header[i];
  }
  body_ += '\n';
}

void CsvBuilder::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_)
    throw std::invalid_argument("CsvBuilder: wrong number of cells");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) body_ += ',';
    body_ += cells[i];
  }
  body_ += '\n';
}

namespace {

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string loglog_svg(const std::string& title,
                       const std::vector<PersistenceEstimate>& grid,
                       const std::optional<ExponentFit>& fit) {
  if (grid.empty()) throw std::invalid_argument("loglog_svg: empty grid");

  const double width = 640, height = 480;
  const double ml = 80, mr = 24, mt = 40, mb = 56;

  double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
  for (const auto& g : grid) {
    x_lo = std::min(x_lo, std::log10(static_cast<double>(g.n)));
    x_hi = std::max(x_hi, std::log10(static_cast<double>(g.n)));
    const double lo = g.ci_low > 0 ? g.ci_low : g.p_hat;
    if (g.p_hat > 0) {
      y_lo = std::min(y_lo, std::log10(lo));
      y_hi = std::max(y_hi, std::log10(g.ci_high));
    }
  }
  if (y_lo > y_hi) {  // no positive estimates to place
    y_lo = -1.0;
    y_hi = 0.0;
  }
  y_lo = std::floor(y_lo * 2.0) / 2.0 - 0.1;
  y_hi = std::ceil(y_hi * 2.0) / 2.0 + 0.1;
  x_lo -= 0.15;
  x_hi += 0.15;
  if (x_lo >= x_hi) x_hi = x_lo + 1.0;

  auto sx = [&](double lx) { return ml + (lx - x_lo) / (x_hi - x_lo) * (width - ml - mr); };
  auto sy = [&](double ly) { return height - mb - (ly - y_lo) / (y_hi - y_lo) * (height - mt - mb); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
       "viewBox=\"0 0 640 480\">\n";
  s += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  s += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"15\">" + title + "</text>\n";

  // axes
  s += "<line x1=\"" + fmt2(ml) + "\" y1=\"" + fmt2(height - mb) + "\" x2=\"" +
       fmt2(width - mr) + "\" y2=\"" + fmt2(height - mb) +
       "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  s += "<line x1=\"" + fmt2(ml) + "\" y1=\"" + fmt2(mt) + "\" x2=\"" + fmt2(ml) +
       "\" y2=\"" + fmt2(height - mb) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // x ticks on the grid points
  for (const auto& g : grid) {
    const double x = sx(std::log10(static_cast<double>(g.n)));
    s += "<line x1=\"" + fmt2(x) + "\" y1=\"" + fmt2(height - mb) + "\" x2=\"" +
         fmt2(x) + "\" y2=\"" + fmt2(height - mb + 5) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt2(x) + "\" y=\"" + fmt2(height - mb + 20) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
         std::to_string(g.n) + "</text>\n";
  }
  s += "<text x=\"" + fmt2((ml + width - mr) / 2) + "\" y=\"" + fmt2(height - 12) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">n</text>\n";

  // y ticks at half decades
  for (double e = std::ceil(y_lo * 2) / 2; e <= y_hi + 1e-9; e += 0.5) {
    const double y = sy(e);
    s += "<line x1=\"" + fmt2(ml - 5) + "\" y1=\"" + fmt2(y) + "\" x2=\"" + fmt2(ml) +
         "\" y2=\"" + fmt2(y) + "\" stroke=\"black\"/>\n";
    char lab[32];
    std::snprintf(lab, sizeof(lab), "1e%.1f", e);
    s += "<text x=\"" + fmt2(ml - 9) + "\" y=\"" + fmt2(y + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + lab +
         "</text>\n";
  }
  s += "<text x=\"18\" y=\"" + fmt2((mt + height - mb) / 2) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
       "transform=\"rotate(-90 18 " + fmt2((mt + height - mb) / 2) + ")\">p_hat</text>\n";

  // fitted line
  if (fit) {
    std::string pts;
    const int segments = 64;
    for (int i = 0; i <= segments; ++i) {
      const double lx = x_lo + 0.15 + (x_hi - 0.15 - (x_lo + 0.15)) * i / segments;
      const double ln_n = lx * std::log(10.0);
      double ly = fit->intercept - fit->theta_hat * ln_n;
      if (fit->log_correction && ln_n > 0) ly += *fit->log_correction * std::log(ln_n);
      ly /= std::log(10.0);
      if (i) pts += ' ';
      pts += fmt2(sx(lx)) + "," + fmt2(sy(ly));
    }
    s += "<polyline points=\"" + pts +
         "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";
    char note[96];
    std::snprintf(note, sizeof(note), "theta = %.4f +/- %.4f", fit->theta_hat,
                  fit->stderr_);
    s += "<text x=\"" + fmt2(width - mr - 6) + "\" y=\"" + fmt2(mt + 16) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"13\" "
         "fill=\"#c0392b\">" + note + "</text>\n";
  }

  // data points with CI whiskers
  for (const auto& g : grid) {
    if (g.p_hat <= 0) continue;
    const double x = sx(std::log10(static_cast<double>(g.n)));
    const double y = sy(std::log10(g.p_hat));
    if (g.ci_low > 0) {
      s += "<line x1=\"" + fmt2(x) + "\" y1=\"" + fmt2(sy(std::log10(g.ci_low))) +
           "\" x2=\"" + fmt2(x) + "\" y2=\"" + fmt2(sy(std::log10(g.ci_high))) +
           "\" stroke=\"#2c3e50\" stroke-width=\"1\"/>\n";
    }
    s += "<circle cx=\"" + fmt2(x) + "\" cy=\"" + fmt2(y) +
         "\" r=\"3\" fill=\"#2c3e50\"/>\n";
  }

  s += "</svg>\n";
  return s;
}

}  // namespace persim
