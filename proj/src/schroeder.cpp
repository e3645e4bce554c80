#include "magnitude/schroeder.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "magnitude/core/errors.hpp"
#include "magnitude/core/special.hpp"
#include "magnitude/intrinsic.hpp"

namespace mag::schroeder {

Node Step::end() const {
  switch (kind) {
    case StepKind::ascent: return {start.x + 1, start.y + 1};
    case StepKind::descent: return {start.x + 1, start.y - 1};
    case StepKind::flat: return {start.x + 2, start.y};
  }
  return start;
}

std::vector<Node> Path::nodes() const {
  std::vector<Node> out{{-index, index}};
  for (const Step& s : steps) out.push_back(s.end());
  return out;
}

int DisjointCollection::flat_count() const {
  int f = 0;
  for (const Path& p : paths)
    for (const Step& s : p.steps) f += s.kind == StepKind::flat;
  return f;
}

void validate(const DisjointCollection& c) {
  if (c.k < -1) throw InvalidArgument("collection index must be >= -1");
  if (c.paths.size() != static_cast<std::size_t>(c.k + 1))
    throw InvalidArgument("collection must hold one path per index 0..k");
  std::set<Node> seen;
  for (std::size_t i = 0; i < c.paths.size(); ++i) {
    const Path& p = c.paths[i];
    const int idx = static_cast<int>(i);
    if (p.index != idx) throw InvalidArgument("paths must be ordered by index");
    Node at{-idx, idx};
    for (const Step& s : p.steps) {
      if (s.start != at) throw InvalidArgument("path steps are not connected");
      at = s.end();
    }
    if (at != Node{idx, idx}) throw InvalidArgument("path does not end at (i, i)");
    for (const Node& n : p.nodes())
      if (!seen.insert(n).second)
        throw InvalidArgument("node (" + std::to_string(n.x) + ", " + std::to_string(n.y) +
                              ") is shared by two paths");
  }
}

namespace {

using IntPoly = std::vector<mpz_class>;

void add_monomial(IntPoly& acc, const IntPoly& src, long coef, int shift) {
  if (acc.size() < src.size() + static_cast<std::size_t>(shift)) acc.resize(src.size() + static_cast<std::size_t>(shift));
  for (std::size_t i = 0; i < src.size(); ++i) acc[i + static_cast<std::size_t>(shift)] += src[i] * coef;
}

Polynomial to_polynomial(const IntPoly& p) {
  std::vector<Rational> c;
  c.reserve(p.size());
  for (const auto& v : p) c.emplace_back(v);
  return Polynomial(std::move(c));
}

// Column sweep over x = -k..k. A state lists, for the paths i = |x|..k that
// are present in column x, 2*y + mid where mid marks a flat step passing over
// the column. Non-mid entries are lattice nodes and must be distinct.
class Sweep {
 public:
  Sweep(int k, bool counting, int j) : k_(k), counting_(counting), j_(j) {}

  IntPoly run() {
    if (k_ < 0) return {mpz_class(1)};
    std::map<std::vector<int>, IntPoly> cur;
    cur[{2 * k_}] = {mpz_class(1)};
    for (x_ = -k_; x_ < k_; ++x_) {
      next_.clear();
      for (const auto& [state, poly] : cur) {
        state_ = &state;
        poly_ = &poly;
        out_.clear();
        occupied_.clear();
        if (x_ + 1 <= 0) {
          const int i = -(x_ + 1);
          out_.push_back(2 * i);
          occupied_.push_back(i);
        }
        extend(0, 1, 0);
      }
      cur.swap(next_);
    }
    IntPoly total;
    for (const auto& [state, poly] : cur) add_monomial(total, poly, 1, 0);
    return total;
  }

 private:
  bool reachable(int i, int col, int y) const { return std::abs(y - i) <= i - col; }

  bool free_node(int y) const {
    return std::find(occupied_.begin(), occupied_.end(), y) == occupied_.end();
  }

  void place(std::size_t pos, int code, long coef, int flats, bool node) {
    const int y = code / 2;
    if (node) {
      if (!free_node(y)) return;
      occupied_.push_back(y);
    }
    out_.push_back(code);
    extend(pos + 1, coef, flats);
    out_.pop_back();
    if (node) occupied_.pop_back();
  }

  void extend(std::size_t pos, long coef, int flats) {
    const std::vector<int>& s = *state_;
    if (pos == s.size()) {
      add_monomial(next_[out_], *poly_, coef, flats);
      return;
    }
    const int i = std::abs(x_) + static_cast<int>(pos);
    const int y = s[pos] / 2;
    const bool mid = s[pos] % 2 == 1;
    if (i == x_) {  // path ends in this column
      extend(pos + 1, coef, flats);
      return;
    }
    const int col = x_ + 1;
    if (mid) {
      place(pos, 2 * y, coef, flats, true);
      return;
    }
    if (reachable(i, col, y + 1)) place(pos, 2 * (y + 1), coef, flats, true);
    if (reachable(i, col, y - 1)) {
      const long w = counting_ ? 1 : y + 1 - j_;
      if (w != 0) place(pos, 2 * (y - 1), coef * w, flats, true);
    }
    if (x_ + 2 <= i && reachable(i, x_ + 2, y)) place(pos, 2 * y + 1, coef, flats + 1, false);
  }

  int k_;
  bool counting_;
  int j_;
  int x_ = 0;
  const std::vector<int>* state_ = nullptr;
  const IntPoly* poly_ = nullptr;
  std::vector<int> out_;
  std::vector<int> occupied_;
  std::map<std::vector<int>, IntPoly> next_;
};

// Depth-first enumeration, outermost path first. Each path is a DFS over
// steps that avoids nodes already used by outer paths.
class Enumerator {
 public:
  Enumerator(int k, int max_flats) : k_(k), max_flats_(max_flats), side_(2 * k + 1) {
    grid_.assign(static_cast<std::size_t>(side_ * side_), 0);
    stack_.resize(static_cast<std::size_t>(k + 1));
  }

  std::vector<DisjointCollection> run() {
    if (k_ < 0) return {DisjointCollection{-1, {}}};
    next_path(k_, 0);
    return std::move(out_);
  }

 private:
  char& cell(Node n) { return grid_[static_cast<std::size_t>((n.x + k_) * side_ + n.y)]; }

  bool usable(int i, Node n) {
    if (std::abs(n.y - i) > i - n.x) return false;
    if (n.y < 0 || n.y >= side_) return false;
    return !cell(n);
  }

  void next_path(int i, int flats) {
    if (i < 0) {
      DisjointCollection c{k_, {}};
      c.paths.reserve(stack_.size());
      for (const Path& p : stack_) c.paths.push_back(p);
      out_.push_back(std::move(c));
      return;
    }
    Path& path = stack_[static_cast<std::size_t>(i)];
    path.index = i;
    path.steps.clear();
    const Node start{-i, i};
    if (cell(start)) return;
    cell(start) = true;
    walk(i, start, flats);
    cell(start) = false;
  }

  void walk(int i, Node at, int flats) {
    Path& path = stack_[static_cast<std::size_t>(i)];
    if (at == Node{i, i}) {
      next_path(i - 1, flats);
      return;
    }
    const Step options[] = {{StepKind::ascent, at}, {StepKind::descent, at}, {StepKind::flat, at}};
    for (const Step& s : options) {
      if (s.kind == StepKind::flat && max_flats_ >= 0 && flats >= max_flats_) continue;
      const Node to = s.end();
      if (!usable(i, to)) continue;
      cell(to) = true;
      path.steps.push_back(s);
      walk(i, to, flats + (s.kind == StepKind::flat));
      path.steps.pop_back();
      cell(to) = false;
    }
  }

  int k_;
  int max_flats_;
  int side_;
  std::vector<char> grid_;
  std::vector<Path> stack_;
  std::vector<DisjointCollection> out_;
};

Path make_path(int index, const std::vector<StepKind>& kinds) {
  Path p{index, {}};
  Node at{-index, index};
  for (StepKind kind : kinds) {
    p.steps.push_back({kind, at});
    at = p.steps.back().end();
  }
  return p;
}

std::vector<StepKind> repeat(StepKind kind, int n) {
  return std::vector<StepKind>(static_cast<std::size_t>(std::max(n, 0)), kind);
}

std::vector<StepKind> concat(std::initializer_list<std::vector<StepKind>> parts) {
  std::vector<StepKind> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Path roof_path(int i) {
  return make_path(i, concat({repeat(StepKind::ascent, i), repeat(StepKind::descent, i)}));
}

std::string signature(const DisjointCollection& c) {
  std::string s = std::to_string(c.k) + ":";
  for (const Path& p : c.paths) {
    for (const Step& st : p.steps) s.push_back("adf"[static_cast<int>(st.kind)]);
    s.push_back('|');
  }
  return s;
}

}  // namespace

Polynomial count_by_flats(int k) {
  if (k < -1) throw InvalidArgument("collection index must be >= -1");
  return to_polynomial(Sweep(k, true, 0).run());
}

std::vector<DisjointCollection> enumerate_collections(int k, const EnumerationOptions& options) {
  if (k < -1) throw InvalidArgument("collection index must be >= -1");
  const Polynomial counts = count_by_flats(k);
  Rational projected;
  for (int j = 0; j <= counts.degree(); ++j)
    if (options.max_flat_steps < 0 || j <= options.max_flat_steps) projected += counts.coefficient(static_cast<std::size_t>(j));
  if (projected > Rational(static_cast<long>(options.max_collections)))
    throw ResourceLimit("enumerating X_" + std::to_string(k) + " needs " + projected.str() +
                        " collections, cap is " + std::to_string(options.max_collections));
  return Enumerator(k, options.max_flat_steps).run();
}

Polynomial weight_product(const DisjointCollection& c, int j) {
  Rational coef(1);
  std::size_t flats = 0;
  for (const Path& p : c.paths) {
    for (const Step& s : p.steps) {
      if (s.kind == StepKind::flat) ++flats;
      else if (s.kind == StepKind::descent) coef *= Rational(s.start.y + 1 - j);
    }
  }
  return Polynomial::monomial(coef, flats);
}

Polynomial weight_sum(int k, int j) {
  if (k < -1) throw InvalidArgument("collection index must be >= -1");
  return to_polynomial(Sweep(k, false, j).run());
}

DisjointCollection roof_collection(int k) {
  if (k < -1) throw InvalidArgument("collection index must be >= -1");
  DisjointCollection c{k, {}};
  for (int i = 0; i <= k; ++i) c.paths.push_back(roof_path(i));
  return c;
}

DisjointCollection sigma_pq(int k, int p, int q) {
  if (p < 1 || p > k || q < 0 || q > k - p)
    throw InvalidArgument("sigma_pq needs 1 <= p <= k and 0 <= q <= k - p");
  DisjointCollection c{k, {}};
  for (int i = 0; i <= k; ++i) {
    if (i == p) {
      c.paths.push_back(make_path(
          i, concat({repeat(StepKind::ascent, p - 1), {StepKind::flat}, repeat(StepKind::descent, p - 1)})));
    } else if (i >= p + 1 && i <= p + q) {
      c.paths.push_back(make_path(i, concat({repeat(StepKind::ascent, i - 1), {StepKind::descent, StepKind::ascent},
                                              repeat(StepKind::descent, i - 1)})));
    } else {
      c.paths.push_back(roof_path(i));
    }
  }
  return c;
}

DisjointCollection mu_map(const DisjointCollection& c) {
  validate(c);
  DisjointCollection out{c.k + 2, {}};
  out.paths.push_back(Path{0, {}});
  for (const Path& p : c.paths) {
    const int i = p.index + 1;
    Path lifted{i, {}};
    lifted.steps.push_back({StepKind::ascent, {-i, i}});
    for (const Step& s : p.steps) lifted.steps.push_back({s.kind, {s.start.x, s.start.y + 2}});
    lifted.steps.push_back({StepKind::descent, {i - 1, i + 1}});
    out.paths.push_back(std::move(lifted));
  }
  out.paths.push_back(roof_path(c.k + 2));
  return out;
}

BallMagnitudeResult ball_magnitude_function(int d, int max_index) {
  if (d < 1 || d % 2 == 0) throw InvalidArgument("d must be odd");
  const int m = (d - 1) / 2;
  if (m + 1 > max_index)
    throw ResourceLimit("ball magnitude for d = " + std::to_string(d) + " needs X_" +
                        std::to_string(m + 1) + ", cap is X_" + std::to_string(max_index));
  BallMagnitudeResult r;
  r.d = d;
  r.m = m;
  r.N = weight_sum(m + 1, 2);
  r.D = weight_sum(m - 1, 0);
  const Rational dfact = factorial(static_cast<unsigned>(d));
  if (r.N.coefficient(0) != dfact * r.D.coefficient(0))
    throw AssertionFailure("N(0) = " + r.N.coefficient(0).str() + " differs from d! D(0) = " +
                           (dfact * r.D.coefficient(0)).str());
  r.ratfun = RationalFunction(r.N, r.D * dfact);
  return r;
}

Rational derivative_at_zero(const BallMagnitudeResult& r) {
  const Rational dfact = factorial(static_cast<unsigned>(r.d));
  return (r.N.coefficient(1) - dfact * r.D.coefficient(1)) / r.N.coefficient(0);
}

Rational sigma_ratio_closed_form(int p, int q) {
  Rational num(1);
  Rational den(1);
  for (int j = 1; j <= q; ++j) num *= Rational(2 * (p + j) - 2);
  for (int j = 0; j <= q; ++j) den *= Rational(2 * (p + j) - 1);
  return num / den;
}

bool IdentityReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.holds; });
}

namespace {

Rational binom_half(int twice_x, int k) {
  return half_binomial(Rational(twice_x, 2), static_cast<unsigned>(k));
}

void record(IdentityReport& rep, const std::string& name, int m, const Rational& lhs, const Rational& rhs) {
  rep.checks.push_back({name, m, lhs.str(), rhs.str(), lhs == rhs});
}

void record(IdentityReport& rep, const std::string& name, int m, const std::string& lhs,
            const std::string& rhs, bool holds) {
  rep.checks.push_back({name, m, lhs, rhs, holds});
}

// t^{-1} prod w_2(sigma) / prod w_2(roof) for a one-flat collection.
Rational slope_ratio(const DisjointCollection& sigma, const Polynomial& roof_weight) {
  return weight_product(sigma, 2).coefficient(1) / roof_weight.coefficient(0);
}

}  // namespace

IdentityReport verify_combinatorial_identities(int m_max) {
  if (m_max < 0) throw InvalidArgument("m_max must be nonnegative");
  IdentityReport rep;
  for (int m = 0; m <= m_max; ++m) {
    const int d = 2 * m + 1;
    const int k = m + 1;

    Rational reciprocal_sum;
    for (int q = 0; q < m; ++q) reciprocal_sum += binom_half(2 * q + 1, q).inverse();
    record(rep, "reciprocal_binomial_sum", m, reciprocal_sum, binom_half(2 * m - 1, m).inverse() - Rational(1));

    Rational binomial_sum;
    for (int j = 0; j <= m; ++j) binomial_sum += binom_half(2 * j - 1, j);
    record(rep, "binomial_sum", m, binomial_sum, binom_half(2 * m + 1, m));

    record(rep, "telescoping", m, binom_half(2 * m + 1, m + 1).inverse() - binom_half(2 * m - 1, m).inverse(),
           binom_half(2 * m + 1, m).inverse());

    // mu: weight identity, flat preservation and injectivity over all of X_{m-1}.
    {
      const auto source = enumerate_collections(m - 1);
      const Rational dfact = factorial(static_cast<unsigned>(d));
      std::set<std::string> images;
      std::size_t good = 0;
      for (const auto& sigma : source) {
        const DisjointCollection lifted = mu_map(sigma);
        bool ok = true;
        try {
          validate(lifted);
        } catch (const InvalidArgument&) {
          ok = false;
        }
        ok = ok && lifted.k == k && lifted.flat_count() == sigma.flat_count() &&
             weight_product(lifted, 2) == weight_product(sigma, 0) * dfact;
        ok = ok && images.insert(signature(lifted)).second;
        good += ok;
      }
      record(rep, "mu_weight_identity", m, std::to_string(good) + " verified",
             std::to_string(source.size()) + " collections", good == source.size());
    }

    const Polynomial roof_weight = weight_product(roof_collection(k), 2);
    for (int p = 1; p <= k; ++p)
      for (int q = 0; q <= k - p; ++q)
        record(rep, "sigma_ratio(p=" + std::to_string(p) + ",q=" + std::to_string(q) + ")", m,
               slope_ratio(sigma_pq(k, p, q), roof_weight), sigma_ratio_closed_form(p, q));

    // X^1_k = { sigma^k_{p,q} } against raw enumeration.
    std::set<std::string> one_flat;
    for (const auto& c : enumerate_collections(k, {.max_flat_steps = 1}))
      if (c.flat_count() == 1) one_flat.insert(signature(c));
    std::set<std::string> constructed;
    for (int p = 1; p <= k; ++p)
      for (int q = 0; q <= k - p; ++q) constructed.insert(signature(sigma_pq(k, p, q)));
    record(rep, "one_flat_classification", m, std::to_string(one_flat.size()) + " enumerated",
           std::to_string(constructed.size()) + " constructed", one_flat == constructed);

    // X^1_{m+1} \ mu(X^1_{m-1}) as the stated disjoint union.
    std::set<std::string> difference = one_flat;
    for (const auto& c : enumerate_collections(m - 1, {.max_flat_steps = 1}))
      if (c.flat_count() == 1) difference.erase(signature(mu_map(c)));
    std::set<std::string> stated;
    std::size_t stated_count = 0;
    Rational slope;
    for (int q = 0; q <= m - 1; ++q) {
      const auto s = sigma_pq(k, 1, q);
      stated.insert(signature(s));
      slope += slope_ratio(s, roof_weight);
      ++stated_count;
    }
    for (int p = 1; p <= m + 1; ++p) {
      const auto s = sigma_pq(k, p, m + 1 - p);
      stated.insert(signature(s));
      slope += slope_ratio(s, roof_weight);
      ++stated_count;
    }
    record(rep, "mu_set_difference", m, std::to_string(difference.size()) + " remaining",
           std::to_string(stated_count) + " stated", difference == stated && stated.size() == stated_count);

    const Rational closed = reciprocal_sum + binom_half(2 * m + 1, m).inverse() * binomial_sum;
    record(rep, "slope_two_sums", m, slope, closed);
    record(rep, "slope_equals_half_v1", m, closed, ball_v1_odd(static_cast<unsigned>(m)) / Rational(2));
    record(rep, "slope_equals_derivative", m, derivative_at_zero(ball_magnitude_function(d)), slope);
  }
  return rep;
}

}  // namespace mag::schroeder
