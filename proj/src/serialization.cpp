#include "tripois/serialization.hpp"

#include <array>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tripois/error.hpp"

namespace tripois {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw InputError(path + ": " + msg);
}

const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing");
  return *it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(path, "not finite");
  return x;
}

std::uint64_t count(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    if (j.get<std::int64_t>() < 0) fail(path, "must be non-negative");
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  }
  fail(path, "expected an integer");
}

Point point(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected [x, y]");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

std::vector<Point> point_list(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of points");
  std::vector<Point> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(point(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// [[a, b], [c, d]], row-major.
std::array<double, 4> matrix(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected a 2x2 matrix");
  const Point r0 = point(j[0], path + "[0]");
  const Point r1 = point(j[1], path + "[1]");
  return {r0.x, r0.y, r1.x, r1.y};
}

std::string kind_of(const Json& j, const std::string& path) {
  const Json& k = field(j, path, "kind");
  if (!k.is_string()) fail(path + ".kind", "expected a string");
  return k.get<std::string>();
}

// Re-labels factory errors with the path of the object being built.
template <class Fn>
auto labelled(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const InputError& e) {
    fail(path, e.what());
  }
}

Json point_json(Point p) { return Json::array({p.x, p.y}); }

}  // namespace

Region region_from_json(const Json& j, const std::string& path) {
  const std::string kind = kind_of(j, path);
  if (kind == "convex_polygon" || kind == "simple_polygon") {
    auto pts = point_list(field(j, path, "vertices"), path + ".vertices");
    return labelled(path, [&] {
      return kind == "convex_polygon" ? Region::convex_polygon(std::move(pts))
                                      : Region::simple_polygon(std::move(pts));
    });
  }
  if (kind == "disk") {
    const Point c = point(field(j, path, "center"), path + ".center");
    const double r = number(field(j, path, "radius"), path + ".radius");
    return labelled(path + ".radius", [&] { return Region::disk(c, r); });
  }
  if (kind == "rectangle") {
    const Point c = point(field(j, path, "corner"), path + ".corner");
    const double w = number(field(j, path, "width"), path + ".width");
    const double h = number(field(j, path, "height"), path + ".height");
    return labelled(path, [&] { return Region::rectangle(c, w, h); });
  }
  fail(path + ".kind", "unknown region kind '" + kind + "'");
}

Json region_to_json(const Region& s) {
  if (const auto* d = std::get_if<Disk>(&s.shape())) {
    return {{"kind", "disk"}, {"center", point_json(d->center)}, {"radius", d->radius}};
  }
  Json verts = Json::array();
  for (Point p : s.vertices()) verts.push_back(point_json(p));
  return {{"kind", s.is_convex() ? "convex_polygon" : "simple_polygon"},
          {"vertices", verts}};
}

Measure measure_from_json(const Json& j, const std::string& path) {
  const std::string kind = kind_of(j, path);
  if (kind == "uniform") {
    return Measure::uniform(region_from_json(field(j, path, "region"), path + ".region"));
  }
  if (kind == "gaussian") {
    Point mu{0.0, 0.0};
    if (j.contains("mean")) mu = point(j["mean"], path + ".mean");
    const auto v = matrix(field(j, path, "cov"), path + ".cov");
    if (v[1] != v[2]) fail(path + ".cov", "not symmetric");
    return labelled(path + ".cov", [&] {
      return Measure::gaussian(mu, CovMatrix{v[0], v[1], v[3]});
    });
  }
  if (kind == "mixture") {
    const Json& w = field(j, path, "weights");
    const Json& c = field(j, path, "components");
    if (!w.is_array()) fail(path + ".weights", "expected an array");
    if (!c.is_array()) fail(path + ".components", "expected an array");
    if (w.size() != c.size()) fail(path + ".weights", "length differs from components");
    std::vector<double> weights;
    std::vector<Measure> comps;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::string idx = "[" + std::to_string(i) + "]";
      weights.push_back(number(w[i], path + ".weights" + idx));
      comps.push_back(measure_from_json(c[i], path + ".components" + idx));
    }
    return labelled(path + ".weights", [&] {
      return Measure::mixture(std::move(weights), std::move(comps));
    });
  }
  if (kind == "affine") {
    const auto a = matrix(field(j, path, "A"), path + ".A");
    Point b{0.0, 0.0};
    if (j.contains("b")) b = point(j["b"], path + ".b");
    Measure base = measure_from_json(field(j, path, "base"), path + ".base");
    return labelled(path + ".A", [&] {
      return Measure::affine(Matrix2{a[0], a[1], a[2], a[3]}, b, std::move(base));
    });
  }
  fail(path + ".kind", "unknown measure kind '" + kind + "'");
}

Json measure_to_json(const Measure& m) {
  const auto& v = m.node().v;
  if (const auto* u = std::get_if<UniformMeasure>(&v)) {
    return {{"kind", "uniform"}, {"region", region_to_json(u->region)}};
  }
  if (const auto* g = std::get_if<GaussianMeasure>(&v)) {
    return {{"kind", "gaussian"},
            {"mean", point_json(g->mean)},
            {"cov", Json::array({Json::array({g->cov.v11, g->cov.v12}),
                                 Json::array({g->cov.v12, g->cov.v22})})}};
  }
  if (const auto* mx = std::get_if<MixtureMeasure>(&v)) {
    Json comps = Json::array();
    for (const auto& c : mx->components) comps.push_back(measure_to_json(c));
    return {{"kind", "mixture"}, {"weights", mx->weights}, {"components", comps}};
  }
  const auto& af = std::get<AffineMeasure>(v);
  return {{"kind", "affine"},
          {"A", Json::array({Json::array({af.a.a11, af.a.a12}),
                             Json::array({af.a.a21, af.a.a22})})},
          {"b", point_json(af.b)},
          {"base", measure_to_json(af.base)}};
}

SimConfig config_from_json(const Json& j) {
  if (!j.is_object()) fail("config", "expected an object");
  SimConfig cfg;
  if (j.contains("measure")) cfg.measure = measure_from_json(j["measure"], "measure");
  cfg.n = count(field(j, "config", "n"), "n");
  cfg.replicates = count(field(j, "config", "replicates"), "replicates");
  if (cfg.replicates == 0) fail("replicates", "must be positive");
  const Json& a = field(j, "config", "alphas");
  if (!a.is_array()) fail("alphas", "expected an array");
  for (std::size_t i = 0; i < a.size(); ++i) {
    cfg.alphas.push_back(number(a[i], "alphas[" + std::to_string(i) + "]"));
  }
  if (j.contains("k_order")) cfg.k_order = count(j["k_order"], "k_order");
  if (j.contains("seed")) cfg.seed = count(j["seed"], "seed");
  labelled("config", [&] {
    validate(cfg);
    return 0;
  });
  return cfg;
}

Json config_to_json(const SimConfig& cfg) {
  return {{"measure", measure_to_json(cfg.measure)},
          {"n", cfg.n},
          {"replicates", cfg.replicates},
          {"alphas", cfg.alphas},
          {"k_order", cfg.k_order},
          {"seed", cfg.seed}};
}

Json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open " + file.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(file.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write " + file.string());
  out << text;
  if (!out.flush()) throw IoError("write failed for " + file.string());
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_points_csv(std::ostream& out, const std::vector<Point>& pts) {
  out << "x,y\n";
  for (Point p : pts) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

std::vector<Point> read_points_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "x,y") throw InputError("points csv: bad header");
  std::vector<Point> pts;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    char* end = nullptr;
    const double x = std::strtod(line.c_str(), &end);
    if (*end != ',') throw InputError("points csv: bad row " + std::to_string(row));
    const char* rest = end + 1;
    const double y = std::strtod(rest, &end);
    if (end == rest || *end != '\0') {
      throw InputError("points csv: bad row " + std::to_string(row));
    }
    pts.push_back({x, y});
  }
  return pts;
}

void write_hits_csv(std::ostream& out, const std::vector<TriangleHit>& hits) {
  out << "i,j,k,area\n";
  for (const auto& h : hits) {
    out << h.i << ',' << h.j << ',' << h.k << ',' << format_double(h.area) << '\n';
  }
}

void write_replicates_csv(std::ostream& out, const SimResult& result) {
  const auto& cfg = result.config;
  out << "replicate";
  for (std::size_t i = 1; i <= cfg.k_order; ++i) out << ",delta" << i;
  for (std::size_t a = 1; a <= cfg.alphas.size(); ++a) out << ",T_alpha" << a;
  out << ",diam1\n";
  for (std::size_t r = 0; r < result.replicates.size(); ++r) {
    const auto& rec = result.replicates[r];
    out << r;
    for (double x : rec.scaled) out << ',' << format_double(x);
    for (auto c : rec.counts) out << ',' << c;
    out << ',' << format_double(rec.diameter) << '\n';
  }
}

SimResult read_replicates_csv(std::istream& in, const SimConfig& cfg) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("replicate,", 0) != 0) {
    throw InputError("replicates csv: bad header");
  }
  SimResult result{cfg, {}};
  const std::size_t fields = 2 + cfg.k_order + cfg.alphas.size();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    const std::string where = "replicates csv row " + std::to_string(result.replicates.size() + 1);
    if (cells.size() != fields) throw InputError(where + ": expected " + std::to_string(fields) + " fields");
    auto real = [&](const std::string& c) {
      char* end = nullptr;
      const double x = std::strtod(c.c_str(), &end);
      if (c.empty() || *end != '\0') throw InputError(where + ": bad number '" + c + "'");
      return x;
    };
    ReplicateRecord rec;
    for (std::size_t i = 0; i < cfg.k_order; ++i) rec.scaled.push_back(real(cells[1 + i]));
    for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
      rec.counts.push_back(static_cast<std::uint64_t>(real(cells[1 + cfg.k_order + a])));
    }
    rec.diameter = real(cells.back());
    result.replicates.push_back(std::move(rec));
  }
  if (result.replicates.size() != cfg.replicates) {
    throw InputError("replicates csv: row count differs from config");
  }
  return result;
}

Json kappa_to_json(const KappaEstimate& k, const Json& measure_echo) {
  return {{"kappa", k.value},
          {"se", k.standard_error},
          {"method", to_string(k.method)},
          {"measure", measure_echo}};
}

std::string tv_key(double alpha) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "tv_alpha%g", alpha);
  return buf;
}

Json summary_to_json(const SimResult& result, const SimSummary& s,
                     const TheoremBounds& bounds) {
  Json j;
  j["config"] = config_to_json(result.config);
  j["kappa"] = s.kappa;
  j["implied_kappa"] = s.implied_kappa;
  j["mean_delta1"] = s.mean_delta1.value;
  j["mean_delta1_se"] = s.mean_delta1.se;
  j["second_moment_delta1"] = s.second_moment_delta1.value;
  j["second_moment_delta1_se"] = s.second_moment_delta1.se;
  j["ks_D"] = s.ks.d;
  j["ks_p"] = s.ks.p_approx;
  j["median_diameter"] = s.median_diameter;
  Json per = Json::array();
  for (std::size_t a = 0; a < s.per_alpha.size(); ++a) {
    const auto& pa = s.per_alpha[a];
    Json e{{"alpha", pa.alpha},
           {"mean_count", pa.mean_count.value},
           {"mean_count_se", pa.mean_count.se},
           {"limit_mean", pa.limit_mean},
           {"tv_to_poisson", pa.tv_to_poisson}};
    if (a < bounds.lambda_hat.size()) e["lambda_hat"] = bounds.lambda_hat[a];
    if (a < bounds.chen_stein.size()) e["chen_stein_bound"] = bounds.chen_stein[a];
    if (a < bounds.tail_bound.size()) e["tail_bound"] = bounds.tail_bound[a];
    per.push_back(e);
    j[tv_key(pa.alpha)] = pa.tv_to_poisson;
  }
  j["per_alpha"] = per;
  return j;
}

}  // namespace tripois
