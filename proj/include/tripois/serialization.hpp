#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "tripois/experiments.hpp"
#include "tripois/geometry.hpp"
#include "tripois/kappa.hpp"
#include "tripois/measures.hpp"
#include "tripois/triangle_search.hpp"

namespace tripois {

using Json = nlohmann::json;

// Parsers throw InputError whose message starts with the JSON path of the
// offending field, e.g. "measure.components[1].cov: not symmetric".
Region region_from_json(const Json& j, const std::string& path = "region");
Json region_to_json(const Region& s);

Measure measure_from_json(const Json& j, const std::string& path = "measure");
Json measure_to_json(const Measure& m);

SimConfig config_from_json(const Json& j);
Json config_to_json(const SimConfig& cfg);

// Throws IoError if the file cannot be opened, InputError on bad JSON.
Json read_json_file(const std::filesystem::path& file);
void write_text_file(const std::filesystem::path& file, const std::string& text);

// %.17g, which round-trips every finite double.
std::string format_double(double x);

void write_points_csv(std::ostream& out, const std::vector<Point>& pts);
std::vector<Point> read_points_csv(std::istream& in);

void write_hits_csv(std::ostream& out, const std::vector<TriangleHit>& hits);

// Header "replicate,delta1..deltaK,T_alpha1..T_alphaA,diam1".
void write_replicates_csv(std::ostream& out, const SimResult& result);
// Rebuilds the replicate records; the shape must match cfg.
SimResult read_replicates_csv(std::istream& in, const SimConfig& cfg);

Json kappa_to_json(const KappaEstimate& k, const Json& measure_echo);

struct TheoremBounds {
  std::vector<double> lambda_hat;   // C(n,3) pi(alpha n^-3) per alpha
  std::vector<double> chen_stein;   // total-variation bound per alpha
  std::vector<double> tail_bound;   // exp(-lambda^2 / M_n) per alpha
};

Json summary_to_json(const SimResult& result, const SimSummary& summary,
                     const TheoremBounds& bounds);

// "tv_alpha" followed by alpha in %g form, e.g. tv_alpha2, tv_alpha0.5.
std::string tv_key(double alpha);

}  // namespace tripois
