#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "magnitude/bounds.hpp"
#include "magnitude/core/errors.hpp"
#include "magnitude/core/random.hpp"
#include "magnitude/core/special.hpp"
#include "magnitude/embedding.hpp"
#include "magnitude/finite_magnitude.hpp"
#include "magnitude/intrinsic.hpp"
#include "magnitude/io.hpp"
#include "magnitude/schroeder.hpp"

namespace {

using namespace mag;

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2, kResource = 3 };

struct Grid {
  double start = 0.1;
  double stop = 10.0;
  int count = 20;
  bool log = false;

  void add(CLI::App* app) {
    app->add_option("--t-start", start, "first t")->capture_default_str();
    app->add_option("--t-stop", stop, "last t")->capture_default_str();
    app->add_option("--t-count", count, "number of t values")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_flag("--t-log", log, "log-spaced grid");
  }

  std::vector<double> values() const {
    if (count < 1) throw InvalidArgument("--t-count must be at least 1");
    if (!(start > 0.0) || !(stop >= start)) throw InvalidArgument("need 0 < --t-start <= --t-stop");
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
      v[static_cast<std::size_t>(i)] =
          log ? start * std::pow(stop / start, f) : start + f * (stop - start);
    }
    if (count > 1) v.back() = stop;
    return v;
  }
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  return in;
}

Metric parse_metric(const std::string& s) { return s == "l1" ? Metric::l1 : Metric::l2; }

io::Format parse_format(const std::string& s) { return s == "csv" ? io::Format::csv : io::Format::json; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Magnitude of metric spaces and convex bodies"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = RandomStream::kDefaultSeed;
  std::string format = "json";
  std::string output;
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("-o,--output", output, "write to this file instead of stdout");

  // ball-exact
  auto* ball = app.add_subcommand("ball-exact", "exact magnitude function of the odd-dimensional Euclidean ball");
  int ball_d = 1;
  std::vector<std::string> ball_eval;
  bool ball_grid = false;
  Grid ball_t;
  ball->add_option("--d", ball_d, "odd dimension")->required();
  ball->add_option("--eval", ball_eval, "exact evaluation points p/q");
  ball->add_flag("--grid", ball_grid, "also evaluate on the t grid");
  ball_t.add(ball);

  // finite-mag
  auto* finite = app.add_subcommand("finite-mag", "magnitude function of a finite point set");
  std::string points_path;
  std::string matrix_path;
  std::string metric = "l2";
  bool skip_triangle = false;
  Grid finite_t;
  auto* points_opt = finite->add_option("--input", points_path, "point file, one point per line");
  finite->add_option("--matrix", matrix_path, "square CSV distance matrix")->excludes(points_opt);
  finite->add_option("--metric", metric, "metric on points")->check(CLI::IsMember({"l1", "l2"}))->capture_default_str();
  finite->add_flag("--skip-triangle", skip_triangle, "skip the triangle-inequality check on a matrix");
  finite_t.add(finite);

  // bound-check
  auto* bound = app.add_subcommand("bound-check", "finite lower bounds against the intrinsic-volume upper bound");
  std::string body_path;
  std::size_t bound_samples = 20000;
  bounds::SampleOptions sample_opts;
  std::string bound_metric = "l2";
  Grid bound_t;
  bound->add_option("--body", body_path, "body spec JSON")->required();
  bound->add_option("--samples", bound_samples, "Monte Carlo samples per intrinsic volume")->capture_default_str();
  bound->add_option("--cap-points", sample_opts.cap_points, "largest finite sample")->capture_default_str();
  bound->add_option("--tolerance", sample_opts.tolerance, "refinement stopping increment")->capture_default_str();
  bound->add_option("--metric", bound_metric, "metric for finite samples")
      ->check(CLI::IsMember({"l1", "l2"}))
      ->capture_default_str();
  bound_t.add(bound);

  // embed-sim
  auto* embed = app.add_subcommand("embed-sim", "sign-pattern embedding of l2^d into l1");
  int embed_d = 1;
  std::vector<int> ns{4, 16, 64};
  int embed_k = 1;
  std::string embed_body;
  std::vector<double> y;
  std::size_t embed_samples = 100000;
  bool statistical = false;
  int cap_bits = embedding::kExhaustiveCapBits;
  embed->add_option("--d", embed_d, "ambient dimension")->capture_default_str();
  embed->add_option("--n", ns, "number of signs per coordinate")->capture_default_str();
  embed->add_option("--k", embed_k, "intrinsic volume index")->capture_default_str();
  embed->add_option("--body", embed_body, "body spec JSON (default unit cube)");
  embed->add_option("--y", y, "test vector for the distortion ratio (default e_1)");
  embed->add_option("--samples", embed_samples, "Monte Carlo samples")->capture_default_str();
  embed->add_flag("--statistical", statistical, "sample sign patterns when n*d exceeds the cap");
  embed->add_option("--cap-bits", cap_bits, "largest n*d enumerated exhaustively")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  std::ofstream file;
  if (!output.empty()) {
    file.open(output);
    if (!file) {
      std::cerr << "error: cannot write " << output << '\n';
      return kUsage;
    }
  }
  std::ostream& out = output.empty() ? std::cout : file;
  const io::Format fmt = parse_format(format);
  const RandomStream rng(seed);

  try {
    if (ball->parsed()) {
      if (ball_d < 1 || ball_d % 2 == 0) throw InvalidArgument("d must be odd");
      const auto r = schroeder::ball_magnitude_function(ball_d);
      std::vector<io::BallEvaluation> evals;
      for (const auto& s : ball_eval) {
        const Rational t = Rational::parse(s);
        const Rational v = r.ratfun(t);
        evals.push_back({t.str(), v.str(), v.to_double()});
      }
      if (ball_grid)
        for (double t : ball_t.values()) evals.push_back({io::format_double(t), "", r.ratfun(t)});
      io::write_ball_result(out, r, evals, fmt);
    } else if (finite->parsed()) {
      std::optional<FiniteMetricSpace> space;
      if (!matrix_path.empty()) {
        auto in = open_input(matrix_path);
        FiniteMetricSpace::Options opts;
        opts.check_triangle = !skip_triangle;
        space = io::read_distance_matrix(in, opts);
      } else if (!points_path.empty()) {
        auto in = open_input(points_path);
        space = FiniteMetricSpace::from_points(io::read_points(in), parse_metric(metric));
      } else {
        throw InvalidArgument("finite-mag needs --input or --matrix");
      }
      io::write_magnitude_samples(out, magnitude_function(*space, finite_t.values()), fmt);
    } else if (bound->parsed()) {
      auto in = open_input(body_path);
      const ConvexBodySpec body = io::read_body(in);
      sample_opts.metric = parse_metric(bound_metric);
      const auto report = bounds::bound_check(body, bound_t.values(), bound_samples, rng, sample_opts);
      io::write_bound_report(out, report, fmt);
      if (report.violations() > 0) {
        std::cerr << "error: " << report.violations() << " sandwich violation(s)\n";
        return kNumerical;
      }
    } else if (embed->parsed()) {
      if (embed_d < 1) throw InvalidArgument("--d must be positive");
      ConvexBodySpec body = Box{std::vector<double>(static_cast<std::size_t>(embed_d), 1.0)};
      if (!embed_body.empty()) {
        auto in = open_input(embed_body);
        body = io::read_body(in);
        embed_d = ambient_dim(body);
      }
      if (y.empty()) {
        y.assign(static_cast<std::size_t>(embed_d), 0.0);
        y[0] = 1.0;
      }
      if (static_cast<int>(y.size()) != embed_d) throw InvalidArgument("--y must have d entries");
      for (int n : ns)
        if (static_cast<long>(n) * embed_d > cap_bits && !statistical)
          throw ResourceLimit("n*d = " + std::to_string(static_cast<long>(n) * embed_d) +
                              " exceeds the exhaustive cap of " + std::to_string(cap_bits) +
                              " bits; pass --statistical to sample");
      const Polytope poly = to_polytope(body);
      const auto profile = bounds::intrinsic_profile(body, embed_samples, rng.fork(1));
      if (embed_k < 0 || embed_k >= static_cast<int>(profile.vk.size()))
        throw InvalidArgument("--k must lie in [0, d]");
      const auto& vk = profile.vk[static_cast<std::size_t>(embed_k)];
      const double scale = omega(embed_k) / std::ldexp(1.0, embed_k);
      const auto table =
          embedding::convergence_table(poly, embed_k, ns, embed_samples, rng.fork(2), scale * vk.value,
                                       scale * vk.std_error);
      std::vector<io::EmbedRow> rows;
      for (std::size_t i = 0; i < ns.size(); ++i) {
        io::EmbedRow row;
        row.n = ns[i];
        const auto b = embedding::distortion_bounds(ns[i]);
        row.lower = b.lower;
        row.upper = b.upper;
        if (static_cast<long>(ns[i]) * embed_d <= cap_bits) {
          row.distortion = embedding::distortion_ratio(y, ns[i], cap_bits);
        } else {
          const auto s = embedding::distortion_ratio_sampled(y, ns[i], embed_samples, rng.fork(3).substream(i));
          row.distortion = s.value;
          row.distortion_std_error = s.std_error;
          row.exhaustive = false;
        }
        row.convergence = table[i];
        rows.push_back(row);
      }
      io::write_embed_rows(out, rows, fmt);
    }
  } catch (const ResourceLimit& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResource;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
