#include "tripois/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "tripois/error.hpp"
#include "tripois/statistics.hpp"

namespace tripois::svg {

namespace {

constexpr double kWidth = 640, kHeight = 420, kMargin = 50;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Maps data coordinates into the plot frame.
struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); }
  double py(double y) const {
    return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin);
  }
};

class Doc {
 public:
  explicit Doc(const std::string& title) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
         << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
         << kHeight << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    text(kWidth / 2, 24, title, "middle");
  }

  void axes(const Frame& f, const std::string& xlabel, const std::string& ylabel) {
    out_ << "<g stroke=\"black\" fill=\"none\"><rect x=\"" << kMargin << "\" y=\""
         << kMargin << "\" width=\"" << kWidth - 2 * kMargin << "\" height=\""
         << kHeight - 2 * kMargin << "\"/></g>\n";
    text(f.px(f.x0), kHeight - kMargin + 16, num(f.x0), "middle");
    text(f.px(f.x1), kHeight - kMargin + 16, num(f.x1), "middle");
    text(kMargin - 6, f.py(f.y0), num(f.y0), "end");
    text(kMargin - 6, f.py(f.y1) + 10, num(f.y1), "end");
    text(kWidth / 2, kHeight - 12, xlabel, "middle");
    text(14, kHeight / 2, ylabel, "start");
  }

  void rect(double x, double y, double w, double h, const std::string& cls,
            const std::string& fill) {
    out_ << "<rect class=\"" << cls << "\" x=\"" << num(x) << "\" y=\"" << num(y)
         << "\" width=\"" << num(w) << "\" height=\"" << num(h) << "\" fill=\""
         << fill << "\" stroke=\"none\"/>\n";
  }

  void polyline(const Frame& f, const std::vector<Point>& pts,
                const std::string& cls, const std::string& stroke,
                const std::string& dash = "") {
    out_ << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << stroke
         << "\" stroke-width=\"1.5\"";
    if (!dash.empty()) out_ << " stroke-dasharray=\"" << dash << "\"";
    out_ << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out_ << ' ';
      out_ << num(f.px(pts[i].x)) << ',' << num(f.py(pts[i].y));
    }
    out_ << "\"/>\n";
  }

  void circle(double x, double y) {
    out_ << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y)
         << "\" r=\"1.5\" fill=\"black\"/>\n";
  }

  void text(double x, double y, const std::string& s, const char* anchor) {
    out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y)
         << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\""
         << anchor << "\">" << s << "</text>\n";
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  std::ostringstream out_;
};

void require_data(const std::vector<double>& samples, double rate) {
  if (samples.empty()) throw InputError("no samples to plot");
  if (!(rate > 0.0)) throw InputError("rate must be positive");
}

double exp_quantile(double p, double rate) { return -std::log1p(-p) / rate; }

}  // namespace

std::vector<Point> exp_density_curve(double rate, double x_max, std::size_t points) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < points; ++i) {
    const double x = x_max * static_cast<double>(i) / static_cast<double>(points - 1);
    out.push_back({x, rate * std::exp(-rate * x)});
  }
  return out;
}

std::string histogram(const std::vector<double>& samples, double rate) {
  require_data(samples, rate);
  const double x_max = std::max(*std::max_element(samples.begin(), samples.end()),
                                exp_quantile(0.99, rate));
  const std::size_t bins = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::sqrt(static_cast<double>(samples.size()))), 5, 60);
  const double width = x_max / static_cast<double>(bins);
  std::vector<double> dens(bins, 0.0);
  for (double x : samples) {
    const auto b = std::min(bins - 1, static_cast<std::size_t>(x / width));
    dens[b] += 1.0;
  }
  for (double& d : dens) d /= static_cast<double>(samples.size()) * width;
  const double y_max = 1.05 * std::max(rate, *std::max_element(dens.begin(), dens.end()));
  const Frame f{0.0, x_max, 0.0, y_max};

  Doc doc("n^3 Delta_1 histogram, Exp(" + num(rate) + ") overlay");
  for (std::size_t b = 0; b < bins; ++b) {
    const double x = f.px(width * static_cast<double>(b));
    const double w = f.px(width * static_cast<double>(b + 1)) - x;
    doc.rect(x, f.py(dens[b]), w, f.py(0.0) - f.py(dens[b]), "bar", "#9ecae1");
  }
  doc.polyline(f, exp_density_curve(rate, x_max, 200), "overlay", "#d62728");
  doc.axes(f, "scaled area", "density");
  return doc.finish();
}

std::string qq(const std::vector<double>& samples, double rate) {
  require_data(samples, rate);
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  const double band = 1.358 / std::sqrt(m);
  const double top = std::max(sorted.back(), exp_quantile((m - 0.5) / m, rate));
  const Frame f{0.0, top, 0.0, top};

  Doc doc("Exponential Q-Q plot, rate " + num(rate));
  doc.polyline(f, {{0.0, 0.0}, {top, top}}, "diagonal", "#444444");
  std::vector<Point> lo, hi;
  for (int i = 1; i < 200; ++i) {
    const double p = i / 200.0;
    const double q = exp_quantile(p, rate);
    if (p + band < 1.0) lo.push_back({q, exp_quantile(p + band, rate)});
    if (p - band > 0.0) hi.push_back({q, exp_quantile(p - band, rate)});
  }
  doc.polyline(f, lo, "band", "#888888", "4 3");
  doc.polyline(f, hi, "band", "#888888", "4 3");
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double q = exp_quantile((static_cast<double>(i) + 0.5) / m, rate);
    doc.circle(f.px(q), f.py(std::min(sorted[i], top)));
  }
  doc.axes(f, "Exp quantile", "sample quantile");
  return doc.finish();
}

std::string counts(const std::vector<std::uint64_t>& data, double lambda) {
  if (data.empty()) throw InputError("no counts to plot");
  if (!(lambda >= 0.0)) throw InputError("lambda must be non-negative");
  const std::uint64_t k_max = std::max<std::uint64_t>(
      *std::max_element(data.begin(), data.end()),
      static_cast<std::uint64_t>(lambda + 4.0 * std::sqrt(lambda) + 2.0));
  std::vector<double> pmf(k_max + 1, 0.0);
  for (auto c : data) pmf[c] += 1.0 / static_cast<double>(data.size());
  double y_max = *std::max_element(pmf.begin(), pmf.end());
  for (std::uint64_t k = 0; k <= k_max; ++k) y_max = std::max(y_max, poisson_pmf(k, lambda));
  const Frame f{-0.5, static_cast<double>(k_max) + 0.5, 0.0, 1.05 * y_max};

  Doc doc("Count pmf against Poisson(" + num(lambda) + ")");
  const double slot = f.px(1.0) - f.px(0.0);
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    const double x = f.px(static_cast<double>(k)) - 0.4 * slot;
    const double pe = pmf[k], pp = poisson_pmf(k, lambda);
    doc.rect(x, f.py(pe), 0.4 * slot, f.py(0.0) - f.py(pe), "empirical", "#9ecae1");
    doc.rect(x + 0.4 * slot, f.py(pp), 0.4 * slot, f.py(0.0) - f.py(pp), "poisson", "#fdae6b");
  }
  doc.axes(f, "count", "probability");
  return doc.finish();
}

}  // namespace tripois::svg
