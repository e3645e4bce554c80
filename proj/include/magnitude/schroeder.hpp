#pragma once

// Exact magnitude of odd-dimensional Euclidean balls through weighted sums
// over node-disjoint families of Schroeder paths, plus the constructions and
// identities used to derive its slope at t = 0.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "magnitude/core/rational.hpp"

namespace mag::schroeder {

enum class StepKind : std::uint8_t { ascent, descent, flat };

struct Node {
  int x = 0;
  int y = 0;
  friend bool operator==(const Node&, const Node&) = default;
  friend auto operator<=>(const Node&, const Node&) = default;
};

struct Step {
  StepKind kind;
  Node start;

  Node end() const;
  friend bool operator==(const Step&, const Step&) = default;
};

/// Path from (-index, index) to (index, index).
struct Path {
  int index = 0;
  std::vector<Step> steps;

  std::vector<Node> nodes() const;
  friend bool operator==(const Path&, const Path&) = default;
};

/// One path per index 0..k, ordered by index; k = -1 is the empty collection.
struct DisjointCollection {
  int k = -1;
  std::vector<Path> paths;

  int flat_count() const;
  friend bool operator==(const DisjointCollection&, const DisjointCollection&) = default;
};

/// Throws InvalidArgument unless c is a disjoint k-collection: correct
/// endpoints, connected unit steps, and no node shared between paths.
void validate(const DisjointCollection& c);

struct EnumerationOptions {
  /// Largest number of collections materialized before ResourceLimit.
  std::size_t max_collections = std::size_t{1} << 22;
  /// Keep only collections with at most this many flat steps (-1 = all).
  int max_flat_steps = -1;
};

/// Exhaustive enumeration of X_k (k >= -1) in a fixed canonical order.
/// The projected size is counted first; ResourceLimit if it exceeds the cap.
std::vector<DisjointCollection> enumerate_collections(int k, const EnumerationOptions& options = {});

/// sum_j |X_k^j| t^j, i.e. collection counts by number of flat steps.
Polynomial count_by_flats(int k);

/// prod over all steps of w_j: ascent 1, flat t, descent from height y gives y + 1 - j.
Polynomial weight_product(const DisjointCollection& c, int j);

/// sum over X_k of weight_product(., j), computed by a column sweep that
/// carries the frontier of path heights. X_{-1} contributes 1.
Polynomial weight_sum(int k, int j);

/// The unique flat-free collection: path i is i ascents then i descents.
DisjointCollection roof_collection(int k);

/// sigma^k_{p,q}: path p is p-1 ascents, a flat, p-1 descents; paths
/// p+1..p+q are i-1 ascents, descent, ascent, i-1 descents; the rest are roofs.
DisjointCollection sigma_pq(int k, int p, int q);

/// Lifts c in X_k to X_{k+2}: shift up two, extend each path by an ascent and
/// a descent, add an outer roof path and the trivial path 0.
DisjointCollection mu_map(const DisjointCollection& c);

struct BallMagnitudeResult {
  int d = 1;
  int m = 0;
  /// sum over X_{m+1} of w_2 products
  Polynomial N;
  /// sum over X_{m-1} of w_0 products
  Polynomial D;
  RationalFunction ratfun{Polynomial(1), Polynomial(1)};
};

/// Largest m + 1 handled by ball_magnitude_function by default.
inline constexpr int kDefaultMaxCollectionIndex = 7;

/// Mag(t B^d) = N(t) / (d! D(t)) for odd d. Throws InvalidArgument for even
/// d, ResourceLimit past the cap, AssertionFailure if N(0) != d! D(0).
BallMagnitudeResult ball_magnitude_function(int d, int max_index = kDefaultMaxCollectionIndex);

/// (N'(0) - d! D'(0)) / N(0)
Rational derivative_at_zero(const BallMagnitudeResult& r);

/// The closed form prod_{j=1}^q [2(p+j)-2] / prod_{j=0}^q [2(p+j)-1].
Rational sigma_ratio_closed_form(int p, int q);

struct IdentityCheck {
  std::string name;
  int m = 0;
  std::string lhs;
  std::string rhs;
  bool holds = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_hold() const;
};

/// Verifies, for every m <= m_max: the reciprocal-binomial sum, the binomial
/// sum, the telescoping step, the mu weight identity, the sigma ratio
/// formula, the classification of one-flat collections against enumeration,
/// the set difference X^1_{m+1} \ mu(X^1_{m-1}), and the slope decomposition.
IdentityReport verify_combinatorial_identities(int m_max);

}  // namespace mag::schroeder
