#pragma once

// Readers for point files, distance matrices and body specs; writers for the
// tables the CLI emits.

#include <iosfwd>
#include <string>
#include <vector>

#include "magnitude/bounds.hpp"
#include "magnitude/core/body.hpp"
#include "magnitude/core/metric_space.hpp"
#include "magnitude/embedding.hpp"
#include "magnitude/finite_magnitude.hpp"
#include "magnitude/schroeder.hpp"

namespace mag::io {

/// One point per line, whitespace-separated decimals. Blank lines and lines
/// starting with '#' are skipped.
PointCloud read_points(std::istream& in);

/// Square CSV distance matrix.
FiniteMetricSpace read_distance_matrix(std::istream& in, FiniteMetricSpace::Options options = {});

/// {"type": "ball", "dim": 3, "radius": 1}, {"type": "box", "edges": [1, 1]},
/// {"type": "polytope", "dim": 2, "vertices": [[0, 0], ...]},
/// {"type": "interval", "length": 2}
ConvexBodySpec parse_body(const std::string& text);
ConvexBodySpec read_body(std::istream& in);

enum class Format { json, csv };

/// Shortest round-trip decimal for a double.
std::string format_double(double x);

void write_magnitude_samples(std::ostream& out, const MagnitudeFunctionSamples& samples, Format format);
void write_bound_report(std::ostream& out, const bounds::BoundReport& report, Format format);
/// One row of the embedding simulation: distortion of the test vector and the
/// l1 intrinsic volume estimate at this n.
struct EmbedRow {
  int n = 0;
  double distortion = 0.0;
  /// 0 when the distortion came from the exhaustive table
  double distortion_std_error = 0.0;
  bool exhaustive = true;
  double lower = 0.0;
  double upper = 0.0;
  embedding::ConvergenceRow convergence;
};

void write_embed_rows(std::ostream& out, const std::vector<EmbedRow>& rows, Format format);

/// Exact evaluations carry a rational; grid evaluations only the double.
struct BallEvaluation {
  std::string t;
  std::string exact;
  double approx = 0.0;
};

void write_ball_result(std::ostream& out, const schroeder::BallMagnitudeResult& result,
                       const std::vector<BallEvaluation>& evaluations, Format format);

}  // namespace mag::io
