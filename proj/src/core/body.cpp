#include "magnitude/core/body.hpp"

#include <cmath>

#include "magnitude/core/errors.hpp"

namespace mag {

namespace {
template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

bool positive(double x) { return std::isfinite(x) && x > 0.0; }
}  // namespace

void validate(const ConvexBodySpec& body) {
  std::visit(overloaded{
                 [](const Ball& b) {
                   if (b.dim < 1) throw InvalidArgument("ball: dimension must be positive");
                   if (!positive(b.radius)) throw InvalidArgument("ball: radius must be positive");
                 },
                 [](const Box& b) {
                   if (b.edges.empty()) throw InvalidArgument("box: needs at least one edge");
                   for (double e : b.edges)
                     if (!positive(e)) throw InvalidArgument("box: edges must be positive");
                 },
                 [](const Polytope& p) {
                   if (p.dim < 1) throw InvalidArgument("polytope: dimension must be positive");
                   if (p.vertices.empty()) throw InvalidArgument("polytope: needs at least one vertex");
                   if (p.vertices.dim() != static_cast<std::size_t>(p.dim))
                     throw InvalidArgument("polytope: vertex dimension mismatch");
                 },
                 [](const Interval& i) {
                   if (!positive(i.length)) throw InvalidArgument("interval: length must be positive");
                 },
             },
             body);
}

int ambient_dim(const ConvexBodySpec& body) {
  return std::visit(overloaded{
                        [](const Ball& b) { return b.dim; },
                        [](const Box& b) { return static_cast<int>(b.edges.size()); },
                        [](const Polytope& p) { return p.dim; },
                        [](const Interval&) { return 1; },
                    },
                    body);
}

std::string type_name(const ConvexBodySpec& body) {
  static const char* names[] = {"ball", "box", "polytope", "interval"};
  return names[body.index()];
}

Polytope to_polytope(const ConvexBodySpec& body) {
  validate(body);
  return std::visit(
      overloaded{
          [](const Ball&) -> Polytope { throw InvalidArgument("a ball has no vertex description"); },
          [](const Box& b) {
            const std::size_t n = b.edges.size();
            Polytope p{static_cast<int>(n), {}};
            std::vector<double> v(n);
            for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
              for (std::size_t c = 0; c < n; ++c) v[c] = (mask >> c & 1) ? b.edges[c] : 0.0;
              p.vertices.push_back(v);
            }
            return p;
          },
          [](const Polytope& p) { return p; },
          [](const Interval& i) {
            return Polytope{1, PointCloud(1, {0.0, i.length})};
          },
      },
      body);
}

Polytope unit_cube(int dim) {
  return to_polytope(Box{std::vector<double>(static_cast<std::size_t>(dim), 1.0)});
}

}  // namespace mag
