#include "magnitude/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "magnitude/core/errors.hpp"

namespace mag::io {

namespace {

using nlohmann::json;

bool skippable(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

double parse_number(const std::string& token, std::size_t line_no) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw InvalidArgument("line " + std::to_string(line_no) + ": cannot parse '" + token + "' as a number");
  return v;
}

std::vector<std::string> poly_strings(const Polynomial& p) {
  std::vector<std::string> out;
  for (const auto& c : p.coefficients()) out.push_back(c.str());
  return out;
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string s;
  for (const auto& f : flags) {
    if (!s.empty()) s += ';';
    s += f;
  }
  return s;
}

json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

PointCloud read_points(std::istream& in) {
  PointCloud cloud;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream ss(line);
    std::vector<double> p;
    std::string tok;
    while (ss >> tok) p.push_back(parse_number(tok, line_no));
    if (!cloud.empty() && p.size() != cloud.dim())
      throw InvalidArgument("line " + std::to_string(line_no) + ": expected " + std::to_string(cloud.dim()) +
                            " coordinates, got " + std::to_string(p.size()));
    cloud.push_back(p);
  }
  if (cloud.empty()) throw InvalidArgument("point file contains no points");
  return cloud;
}

FiniteMetricSpace read_distance_matrix(std::istream& in, FiniteMetricSpace::Options options) {
  std::vector<double> entries;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream ss(line);
    std::string cell;
    std::size_t count = 0;
    while (std::getline(ss, cell, ',')) {
      const auto a = cell.find_first_not_of(" \t\r");
      const auto b = cell.find_last_not_of(" \t\r");
      if (a == std::string::npos) throw InvalidArgument("line " + std::to_string(line_no) + ": empty cell");
      entries.push_back(parse_number(cell.substr(a, b - a + 1), line_no));
      ++count;
    }
    if (rows == 0) cols = count;
    if (count != cols) throw InvalidArgument("line " + std::to_string(line_no) + ": ragged distance matrix");
    ++rows;
  }
  if (rows == 0) throw InvalidArgument("distance matrix is empty");
  if (rows != cols) throw InvalidArgument("distance matrix is not square");
  return FiniteMetricSpace(rows, std::move(entries), options);
}

ConvexBodySpec parse_body(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("body spec: ") + e.what());
  }
  ConvexBodySpec body;
  try {
    if (!j.is_object() || !j.contains("type")) throw InvalidArgument("body spec: missing \"type\"");
    const auto type = j.at("type").get<std::string>();
    if (type == "ball") {
      body = Ball{j.at("dim").get<int>(), j.value("radius", 1.0)};
    } else if (type == "box") {
      body = Box{j.at("edges").get<std::vector<double>>()};
    } else if (type == "interval") {
      body = Interval{j.at("length").get<double>()};
    } else if (type == "polytope") {
      const auto rows = j.at("vertices").get<std::vector<std::vector<double>>>();
      if (rows.empty()) throw InvalidArgument("body spec: polytope needs at least one vertex");
      body = Polytope{j.at("dim").get<int>(), PointCloud::from_rows(rows)};
    } else {
      throw InvalidArgument("body spec: unknown type '" + type + "'");
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("body spec: ") + e.what());
  }
  validate(body);
  return body;
}

ConvexBodySpec read_body(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_body(ss.str());
}

void write_magnitude_samples(std::ostream& out, const MagnitudeFunctionSamples& samples, Format format) {
  if (format == Format::csv) {
    out << "t,magnitude,condition,positive_definite,ill_conditioned,least_squares\n";
    for (const auto& s : samples)
      out << format_double(s.t) << ',' << format_double(s.magnitude) << ',' << format_double(s.condition) << ','
          << s.positive_definite << ',' << s.ill_conditioned << ',' << s.least_squares << '\n';
    return;
  }
  json arr = json::array();
  for (const auto& s : samples)
    arr.push_back({{"t", s.t},
                   {"magnitude", number(s.magnitude)},
                   {"condition", number(s.condition)},
                   {"positive_definite", s.positive_definite},
                   {"ill_conditioned", s.ill_conditioned},
                   {"least_squares", s.least_squares}});
  out << json{{"samples", arr}}.dump(2) << '\n';
}

void write_bound_report(std::ostream& out, const bounds::BoundReport& report, Format format) {
  if (format == Format::csv) {
    out << "t,lower,upper,conjecture_ref,large_t,points,violation,flags\n";
    for (const auto& r : report.rows)
      out << format_double(r.t) << ',' << format_double(r.lower) << ',' << format_double(r.upper) << ','
          << format_double(r.conjecture) << ',' << format_double(r.large_t) << ',' << r.points << ','
          << r.violation << ',' << join_flags(r.flags) << '\n';
    return;
  }
  json vk = json::array();
  for (const auto& e : report.profile.vk)
    vk.push_back({{"k", e.k},
                  {"value", e.value},
                  {"std_error", e.std_error},
                  {"method", to_string(e.method)},
                  {"samples", e.samples}});
  json rows = json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"t", r.t},
                    {"lower", r.lower},
                    {"upper", r.upper},
                    {"conjecture_ref", r.conjecture},
                    {"large_t", r.large_t},
                    {"points", r.points},
                    {"violation", r.violation},
                    {"flags", r.flags}});
  out << json{{"body", report.body},
              {"dim", report.dim},
              {"intrinsic_volumes", vk},
              {"conjecture_disproved", report.conjecture_disproved},
              {"violations", report.violations()},
              {"rows", rows}}
             .dump(2)
      << '\n';
}

void write_embed_rows(std::ostream& out, const std::vector<EmbedRow>& rows, Format format) {
  if (format == Format::csv) {
    out << "n,distortion,distortion_std_error,exhaustive,distortion_lower,distortion_upper,estimate,std_error,target,"
           "target_std_error\n";
    for (const auto& r : rows)
      out << r.n << ',' << format_double(r.distortion) << ',' << format_double(r.distortion_std_error) << ','
          << r.exhaustive << ',' << format_double(r.lower) << ',' << format_double(r.upper) << ','
          << format_double(r.convergence.estimate) << ',' << format_double(r.convergence.std_error) << ','
          << format_double(r.convergence.target) << ',' << format_double(r.convergence.target_std_error) << '\n';
    return;
  }
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"n", r.n},
                   {"distortion", r.distortion},
                   {"distortion_std_error", r.distortion_std_error},
                   {"exhaustive", r.exhaustive},
                   {"distortion_lower", r.lower},
                   {"distortion_upper", r.upper},
                   {"estimate", r.convergence.estimate},
                   {"std_error", r.convergence.std_error},
                   {"target", r.convergence.target},
                   {"target_std_error", r.convergence.target_std_error}});
  out << json{{"rows", arr}}.dump(2) << '\n';
}

void write_ball_result(std::ostream& out, const schroeder::BallMagnitudeResult& result,
                       const std::vector<BallEvaluation>& evaluations, Format format) {
  const Rational slope = schroeder::derivative_at_zero(result);
  if (format == Format::csv) {
    out << "field,index,value\n";
    const auto num = poly_strings(result.N);
    const auto den = poly_strings(result.D);
    for (std::size_t i = 0; i < num.size(); ++i) out << "num," << i << ',' << num[i] << '\n';
    for (std::size_t i = 0; i < den.size(); ++i) out << "den," << i << ',' << den[i] << '\n';
    out << "derivative_at_zero,," << slope.str() << '\n';
    for (const auto& e : evaluations)
      out << "eval," << e.t << ',' << (e.exact.empty() ? format_double(e.approx) : e.exact) << '\n';
    return;
  }
  json evals = json::array();
  for (const auto& e : evaluations) {
    json row{{"t", e.t}, {"approx", e.approx}};
    if (!e.exact.empty()) row["exact"] = e.exact;
    evals.push_back(row);
  }
  out << json{{"d", result.d},
              {"num", poly_strings(result.N)},
              {"den", poly_strings(result.D)},
              {"den_factor", factorial(static_cast<unsigned>(result.d)).str()},
              {"derivative_at_zero", slope.str()},
              {"evaluations", evals}}
             .dump(2)
      << '\n';
}

}  // namespace mag::io
