#pragma once

// Hyperplane arrangements with multiplicities: Coxeter root systems, the
// deformed families A_m(p) and C_{m+1}(r,s), and chamber/shift utilities.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bamm/errors.hpp"
#include "bamm/multipoly.hpp"
#include "bamm/scalar.hpp"

namespace bamm {

struct RootVector {
  std::vector<Scalar> coords;
  int multiplicity = 1;
  int orbit = 0;
};

struct NumericVector {
  std::vector<double> coords;
  int multiplicity = 1;
  int orbit = 0;
};

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Minimum-norm point of the convex hull of the given points (Gilbert's algorithm).
inline std::vector<double> min_norm_point(const std::vector<std::vector<double>>& pts, int iterations = 20000) {
  std::vector<double> x = pts.front();
  for (int it = 0; it < iterations; ++it) {
    std::size_t best = 0;
    double best_val = dot(x, pts[0]);
    for (std::size_t j = 1; j < pts.size(); ++j) {
      double v = dot(x, pts[j]);
      if (v < best_val) {
        best_val = v;
        best = j;
      }
    }
    const double xx = dot(x, x);
    if (xx - best_val <= 1e-15 * std::max(1.0, xx)) break;
    std::vector<double> d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = pts[best][i] - x[i];
    const double dd = dot(d, d);
    if (dd == 0.0) break;
    const double t = std::clamp(-dot(x, d) / dd, 0.0, 1.0);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += t * d[i];
  }
  return x;
}

}  // namespace detail

// Arrangement with floating coordinates, used by quadrature and for groups whose
// roots leave a single quadratic extension (H3, H4, most dihedral groups).
class NumericArrangement {
 public:
  NumericArrangement() = default;
  NumericArrangement(std::size_t dimension, std::vector<NumericVector> vectors)
      : dimension_(dimension), vectors_(std::move(vectors)) {
    validate();
  }

  std::size_t dimension() const { return dimension_; }
  const std::vector<NumericVector>& vectors() const { return vectors_; }
  std::size_t size() const { return vectors_.size(); }

  int total_multiplicity() const {
    int s = 0;
    for (const auto& v : vectors_) s += v.multiplicity;
    return s;
  }

  // Unit vector v maximising min (alpha, v)/|alpha|, and that margin.
  std::pair<std::vector<double>, double> chamber_direction() const {
    std::vector<std::vector<double>> unit;
    for (const auto& v : vectors_) {
      std::vector<double> u = v.coords;
      const double nv = detail::norm(u);
      for (auto& c : u) c /= nv;
      unit.push_back(std::move(u));
    }
    std::vector<double> x = detail::min_norm_point(unit);
    const double nx = detail::norm(x);
    if (nx < 1e-12) throw InvalidArrangement("vectors do not lie in an open half-space");
    for (auto& c : x) c /= nx;
    double margin = INFINITY;
    for (const auto& u : unit) margin = std::min(margin, detail::dot(u, x));
    if (!(margin > 1e-12)) throw InvalidArrangement("vectors do not lie in an open half-space");
    return {x, margin};
  }

  // Orthonormal basis (columns) of the span of the vectors.
  Eigen::MatrixXd span_basis() const {
    Eigen::MatrixXd m(dimension_, vectors_.size());
    for (std::size_t j = 0; j < vectors_.size(); ++j) {
      for (std::size_t i = 0; i < dimension_; ++i) m(i, j) = vectors_[j].coords[i];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(i) > 1e-10 * s(0)) ++rank;
    }
    return svd.matrixU().leftCols(rank);
  }

 private:
  void validate() const {
    for (const auto& v : vectors_) {
      if (v.coords.size() != dimension_) throw InvalidArrangement("vector has wrong dimension");
      if (v.multiplicity < 1) throw InvalidArrangement("multiplicities must be positive");
      if (detail::norm(v.coords) == 0.0) throw InvalidArrangement("zero vector");
    }
    for (std::size_t a = 0; a < vectors_.size(); ++a) {
      for (std::size_t b = a + 1; b < vectors_.size(); ++b) {
        const auto& u = vectors_[a].coords;
        const auto& w = vectors_[b].coords;
        const double c = detail::dot(u, w) / (detail::norm(u) * detail::norm(w));
        if (std::abs(std::abs(c) - 1.0) < 1e-12) throw InvalidArrangement("collinear vectors");
      }
    }
    if (!vectors_.empty()) (void)chamber_direction();
  }

  std::size_t dimension_ = 0;
  std::vector<NumericVector> vectors_;
};

// Exact arrangement over Q or a single quadratic field Q(sqrt d).
class Arrangement {
 public:
  Arrangement() = default;
  Arrangement(std::size_t dimension, std::vector<RootVector> vectors)
      : dimension_(dimension), vectors_(std::move(vectors)) {
    validate();
  }

  std::size_t dimension() const { return dimension_; }
  const std::vector<RootVector>& vectors() const { return vectors_; }
  std::size_t size() const { return vectors_.size(); }
  std::int64_t radicand() const { return radicand_; }

  int total_multiplicity() const {
    int s = 0;
    for (const auto& v : vectors_) s += v.multiplicity;
    return s;
  }

  NumericArrangement numeric() const {
    std::vector<NumericVector> out;
    for (const auto& v : vectors_) {
      NumericVector nv;
      for (const auto& c : v.coords) nv.coords.push_back(c.to_double());
      nv.multiplicity = v.multiplicity;
      nv.orbit = v.orbit;
      out.push_back(std::move(nv));
    }
    return NumericArrangement(dimension_, std::move(out));
  }

  // A_m over the chosen block: prod (alpha, v)^{m_alpha}.
  MultiPoly<Scalar> am_polynomial(Block block) const {
    MultiPoly<Scalar> p = MultiPoly<Scalar>::constant(dimension_, Scalar(1));
    for (const auto& v : vectors_) {
      auto lin = MultiPoly<Scalar>::linear_form(std::span<const Scalar>(v.coords), block);
      p = p * pow(lin, static_cast<unsigned>(v.multiplicity));
    }
    return p;
  }

  // Exact rational v with (alpha, v) > 0 for every alpha.
  const std::vector<Rational>& positive_witness() const { return witness_; }

 private:
  void validate() {
    for (const auto& v : vectors_) {
      if (v.coords.size() != dimension_) throw InvalidArrangement("vector has wrong dimension");
      if (v.multiplicity < 1) throw InvalidArrangement("multiplicities must be positive");
      bool nonzero = false;
      for (const auto& c : v.coords) {
        if (!c.is_rational()) {
          if (radicand_ == 1) radicand_ = c.radicand();
          if (c.radicand() != radicand_) throw FieldMismatch("arrangement mixes quadratic radicands");
        }
        nonzero = nonzero || !c.is_zero();
      }
      if (!nonzero) throw InvalidArrangement("zero vector");
    }
    for (std::size_t a = 0; a < vectors_.size(); ++a) {
      for (std::size_t b = a + 1; b < vectors_.size(); ++b) {
        if (collinear(vectors_[a].coords, vectors_[b].coords)) {
          throw InvalidArrangement("collinear vectors at positions " + std::to_string(a) + " and " +
                                   std::to_string(b));
        }
      }
    }
    if (!vectors_.empty()) certify_halfspace();
  }

  static bool collinear(const std::vector<Scalar>& u, const std::vector<Scalar>& w) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      for (std::size_t j = i + 1; j < u.size(); ++j) {
        if (!(u[i] * w[j] - u[j] * w[i]).is_zero()) return false;
      }
    }
    return true;
  }

  void certify_halfspace() {
    NumericArrangement num;
    std::vector<double> dir;
    {
      std::vector<std::vector<double>> unit;
      for (const auto& v : vectors_) {
        std::vector<double> u;
        for (const auto& c : v.coords) u.push_back(c.to_double());
        const double nu = detail::norm(u);
        for (auto& c : u) c /= nu;
        unit.push_back(std::move(u));
      }
      dir = detail::min_norm_point(unit);
      if (detail::norm(dir) < 1e-12) throw InvalidArrangement("vectors do not lie in an open half-space");
    }
    const double nd = detail::norm(dir);
    for (long scale : {1L << 12, 1L << 24, 1L << 40}) {
      std::vector<Rational> v;
      for (double c : dir) v.push_back(Rational(static_cast<long>(std::llround(c / nd * scale)), scale));
      for (auto& c : v) c.canonicalize();
      bool ok = true;
      for (const auto& r : vectors_) {
        Scalar s(0);
        for (std::size_t i = 0; i < dimension_; ++i) s += r.coords[i] * Scalar(v[i]);
        if (s.sign() <= 0) {
          ok = false;
          break;
        }
      }
      if (ok) {
        witness_ = std::move(v);
        return;
      }
    }
    throw InvalidArrangement("vectors do not lie in an open half-space");
  }

  std::size_t dimension_ = 0;
  std::vector<RootVector> vectors_;
  std::int64_t radicand_ = 1;
  std::vector<Rational> witness_;
};

enum class Group { A, B, C, D, E, F, G, H, I };
enum class Normalization { norm2, orbitwise };

struct CoxeterDatum {
  Group group = Group::A;
  std::string label;
  int rank = 0;
  std::vector<int> degrees;
  std::uint64_t order = 0;
  int positive_roots = 0;
  std::vector<std::string> orbit_names;
  std::vector<int> orbit_sizes;

  // prod d_j == |W| and sum (d_j - 1) == |R+|.
  bool consistent() const {
    std::uint64_t prod = 1;
    int sum = 0;
    for (int d : degrees) {
      prod *= static_cast<std::uint64_t>(d);
      sum += d - 1;
    }
    return prod == order && sum == positive_roots;
  }
};

struct CoxeterSystem {
  CoxeterDatum datum;
  std::optional<Arrangement> exact;  // absent for numeric-only groups
  NumericArrangement numeric;
  bool numeric_only() const { return !exact.has_value(); }
};

inline std::string group_letter(Group g) {
  static const char* names = "ABCDEFGHI";
  return std::string(1, names[static_cast<int>(g)]);
}

inline std::string coxeter_label(Group g, int rank) {
  if (g == Group::I) return "I2(" + std::to_string(rank) + ")";
  return group_letter(g) + std::to_string(rank);
}

// Parses labels such as "A2", "B3", "F4", "I2(5)", "I2_5".
inline std::pair<Group, int> parse_group(const std::string& label) {
  if (label.size() < 2) throw UsageError("unknown group label '" + label + "'");
  const std::string letters = "ABCDEFGHI";
  const auto pos = letters.find(static_cast<char>(std::toupper(static_cast<unsigned char>(label[0]))));
  if (pos == std::string::npos) throw UsageError("unknown group label '" + label + "'");
  const Group g = static_cast<Group>(pos);
  std::string rest = label.substr(1);
  try {
    if (g == Group::I) {
      if (rest.rfind("2", 0) != 0) throw UsageError("dihedral groups are written I2(q)");
      rest = rest.substr(1);
      rest.erase(std::remove_if(rest.begin(), rest.end(), [](char c) { return c == '(' || c == ')' || c == '_'; }),
                 rest.end());
    }
    std::size_t used = 0;
    const int r = std::stoi(rest, &used);
    if (used != rest.size()) throw UsageError("unknown group label '" + label + "'");
    return {g, r};
  } catch (const std::logic_error&) {
    throw UsageError("unknown group label '" + label + "'");
  }
}

namespace detail {

inline std::vector<int> range_degrees(int from, int step, int count) {
  std::vector<int> d;
  for (int i = 0; i < count; ++i) d.push_back(from + step * i);
  return d;
}

inline std::uint64_t factorial_u64(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

inline CoxeterDatum coxeter_table(Group g, int rank) {
  CoxeterDatum d;
  d.group = g;
  d.label = coxeter_label(g, rank);
  switch (g) {
    case Group::A:
      if (rank < 1) throw UnsupportedGroup("A_n needs n >= 1");
      d.rank = rank;
      d.degrees = range_degrees(2, 1, rank);
      d.order = factorial_u64(rank + 1);
      break;
    case Group::B:
    case Group::C:
      if (rank < 2) throw UnsupportedGroup(d.label + " needs rank >= 2");
      d.rank = rank;
      d.degrees = range_degrees(2, 2, rank);
      d.order = (std::uint64_t{1} << rank) * factorial_u64(rank);
      break;
    case Group::D:
      if (rank < 3) throw UnsupportedGroup("D_n needs n >= 3");
      d.rank = rank;
      d.degrees = range_degrees(2, 2, rank - 1);
      d.degrees.push_back(rank);
      std::sort(d.degrees.begin(), d.degrees.end());
      d.order = (std::uint64_t{1} << (rank - 1)) * factorial_u64(rank);
      break;
    case Group::E:
      d.rank = rank;
      if (rank == 6) {
        d.degrees = {2, 5, 6, 8, 9, 12};
        d.order = 51840;
      } else if (rank == 7) {
        d.degrees = {2, 6, 8, 10, 12, 14, 18};
        d.order = 2903040;
      } else if (rank == 8) {
        d.degrees = {2, 8, 12, 14, 18, 20, 24, 30};
        d.order = 696729600;
      } else {
        throw UnsupportedGroup("E_n needs n in {6,7,8}");
      }
      break;
    case Group::F:
      if (rank != 4) throw UnsupportedGroup("F_n needs n = 4");
      d.rank = 4;
      d.degrees = {2, 6, 8, 12};
      d.order = 1152;
      break;
    case Group::G:
      if (rank != 2) throw UnsupportedGroup("G_n needs n = 2");
      d.rank = 2;
      d.degrees = {2, 6};
      d.order = 12;
      break;
    case Group::H:
      d.rank = rank;
      if (rank == 3) {
        d.degrees = {2, 6, 10};
        d.order = 120;
      } else if (rank == 4) {
        d.degrees = {2, 12, 20, 30};
        d.order = 14400;
      } else {
        throw UnsupportedGroup("H_n needs n in {3,4}");
      }
      break;
    case Group::I:
      if (rank < 2) throw UnsupportedGroup("I2(q) needs q >= 2");
      d.rank = 2;
      d.degrees = {2, rank};
      std::sort(d.degrees.begin(), d.degrees.end());
      d.order = 2 * static_cast<std::uint64_t>(rank);
      break;
  }
  int sum = 0;
  for (int x : d.degrees) sum += x - 1;
  d.positive_roots = sum;
  return d;
}

inline Scalar rat(long a, long b = 1) { return Scalar(make_rational(a, b)); }

inline std::vector<Scalar> unit_vec(std::size_t dim, std::size_t i, Scalar c = Scalar(1)) {
  std::vector<Scalar> v(dim, Scalar(0));
  v[i] = std::move(c);
  return v;
}

inline std::vector<Scalar> combo(std::size_t dim, std::size_t i, long si, std::size_t j, long sj) {
  std::vector<Scalar> v(dim, Scalar(0));
  v[i] = Scalar(si);
  v[j] = Scalar(sj);
  return v;
}

// Keeps the roots on the positive side of (2^{n-1}, ..., 2, 1).
inline std::vector<std::vector<Scalar>> positive_part(const std::vector<std::vector<Scalar>>& roots) {
  std::vector<std::vector<Scalar>> out;
  for (const auto& r : roots) {
    Scalar s(0);
    for (std::size_t i = 0; i < r.size(); ++i) s += r[i] * Scalar(1L << (r.size() - 1 - i));
    if (s.sign() > 0) out.push_back(r);
  }
  return out;
}

inline std::vector<std::vector<Scalar>> e8_roots() {
  std::vector<std::vector<Scalar>> roots;
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = i + 1; j < 8; ++j) {
      for (long si : {1L, -1L}) {
        for (long sj : {1L, -1L}) roots.push_back(combo(8, i, si, j, sj));
      }
    }
  }
  for (int mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) % 2 != 0) continue;
    std::vector<Scalar> v;
    for (int i = 0; i < 8; ++i) v.push_back(rat((mask >> i) & 1 ? -1 : 1, 2));
    roots.push_back(std::move(v));
  }
  return roots;
}

inline Scalar dot_exact(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  Scalar s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline std::vector<double> to_doubles(const std::vector<Scalar>& v) {
  std::vector<double> out;
  for (const auto& c : v) out.push_back(c.to_double());
  return out;
}

}  // namespace detail

// Positive roots of a finite Coxeter group with per-orbit multiplicities.
// Orbit 0 is the short orbit (or the only orbit); orbit 1 the long one. For C_n
// the short orbit is e_i +- e_j and the long orbit is sqrt2 e_i.
inline CoxeterSystem build_coxeter(Group g, int rank, Normalization norm = Normalization::norm2,
                                   std::vector<int> multiplicities = {1}) {
  CoxeterSystem sys;
  sys.datum = detail::coxeter_table(g, rank);
  if (!sys.datum.consistent()) throw UnsupportedGroup("degree table failed validation for " + sys.datum.label);
  if (norm == Normalization::orbitwise && g != Group::B && g != Group::F) {
    throw UnsupportedGroup("orbitwise normalization is only defined for B_n and F4");
  }
  auto mult = [&](int orbit) {
    if (multiplicities.empty()) return 1;
    return multiplicities.at(std::min<std::size_t>(orbit, multiplicities.size() - 1));
  };

  using detail::combo;
  using detail::rat;
  using detail::unit_vec;
  std::vector<std::pair<std::vector<Scalar>, int>> roots;  // (coords, orbit)
  std::size_t dim = static_cast<std::size_t>(rank);
  const Scalar sqrt2 = Scalar::sqrt_of(2);
  const Scalar half_sqrt2 = sqrt2 * rat(1, 2);

  std::vector<std::pair<std::vector<double>, int>> numeric_roots;
  std::size_t numeric_dim = 0;

  switch (g) {
    case Group::A:
      if (rank == 1) {
        dim = 1;
        roots.push_back({unit_vec(1, 0, sqrt2), 0});
        sys.datum.orbit_names = {"all"};
        break;
      }
      dim = static_cast<std::size_t>(rank) + 1;
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) roots.push_back({combo(dim, i, 1, j, -1), 0});
      }
      sys.datum.orbit_names = {"all"};
      break;
    case Group::B:
    case Group::C: {
      const int short_orbit = g == Group::B ? 0 : 1;
      const int long_orbit = 1 - short_orbit;
      for (std::size_t i = 0; i < dim; ++i) {
        roots.push_back({unit_vec(dim, i, norm == Normalization::norm2 ? sqrt2 : Scalar(1)), short_orbit});
      }
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) {
          roots.push_back({combo(dim, i, 1, j, -1), long_orbit});
          roots.push_back({combo(dim, i, 1, j, 1), long_orbit});
        }
      }
      sys.datum.orbit_names = {"short", "long"};
      break;
    }
    case Group::D:
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) {
          roots.push_back({combo(dim, i, 1, j, -1), 0});
          roots.push_back({combo(dim, i, 1, j, 1), 0});
        }
      }
      sys.datum.orbit_names = {"all"};
      break;
    case Group::E: {
      dim = 8;
      auto all = detail::e8_roots();
      std::vector<std::vector<Scalar>> ortho;
      if (rank <= 7) ortho.push_back(combo(8, 6, 1, 7, 1));
      if (rank == 6) ortho.push_back(combo(8, 5, -1, 6, -1));
      std::vector<std::vector<Scalar>> kept;
      for (auto& r : all) {
        bool ok = true;
        for (const auto& o : ortho) ok = ok && detail::dot_exact(r, o).is_zero();
        if (ok) kept.push_back(r);
      }
      for (auto& r : detail::positive_part(kept)) roots.push_back({r, 0});
      sys.datum.orbit_names = {"all"};
      break;
    }
    case Group::F: {
      const Scalar s = norm == Normalization::norm2 ? sqrt2 : Scalar(1);
      const Scalar h = norm == Normalization::norm2 ? half_sqrt2 : rat(1, 2);
      for (std::size_t i = 0; i < 4; ++i) roots.push_back({unit_vec(4, i, s), 0});
      for (int mask = 0; mask < 8; ++mask) {
        std::vector<Scalar> v{h};
        for (int b = 0; b < 3; ++b) v.push_back((mask >> b) & 1 ? -h : h);
        roots.push_back({v, 0});
      }
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
          roots.push_back({combo(4, i, 1, j, -1), 1});
          roots.push_back({combo(4, i, 1, j, 1), 1});
        }
      }
      sys.datum.orbit_names = {"short", "long"};
      break;
    }
    case Group::G: {
      dim = 3;
      const Scalar third_sqrt3 = Scalar::sqrt_of(3) * rat(1, 3);
      std::vector<std::vector<Scalar>> all;
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
          if (i == j) continue;
          all.push_back(combo(3, i, 1, j, -1));
        }
      }
      for (std::size_t i = 0; i < 3; ++i) {
        for (long sg : {1L, -1L}) {
          std::vector<Scalar> v(3, -third_sqrt3 * Scalar(sg));
          v[i] = third_sqrt3 * Scalar(2 * sg);
          all.push_back(v);
        }
      }
      for (auto& r : detail::positive_part(all)) {
        bool is_long = !r[0].is_rational() || !r[1].is_rational() || !r[2].is_rational();
        roots.push_back({r, is_long ? 1 : 0});
      }
      sys.datum.orbit_names = {"short", "long"};
      break;
    }
    case Group::I: {
      const int q = rank;
      if (q == 2) {
        dim = 2;
        roots.push_back({unit_vec(2, 0, sqrt2), 0});
        roots.push_back({unit_vec(2, 1, sqrt2), 1});
        sys.datum.orbit_names = {"first", "second"};
      } else if (q == 3) {
        dim = 3;
        for (std::size_t i = 0; i < 3; ++i) {
          for (std::size_t j = i + 1; j < 3; ++j) roots.push_back({combo(3, i, 1, j, -1), 0});
        }
        sys.datum.orbit_names = {"all"};
      } else if (q == 4) {
        dim = 2;
        roots.push_back({unit_vec(2, 0, sqrt2), 0});
        roots.push_back({unit_vec(2, 1, sqrt2), 0});
        roots.push_back({combo(2, 0, 1, 1, -1), 1});
        roots.push_back({combo(2, 0, 1, 1, 1), 1});
        sys.datum.orbit_names = {"first", "second"};
      } else if (q == 6) {
        auto g2 = build_coxeter(Group::G, 2, Normalization::norm2, multiplicities);
        g2.datum = sys.datum;
        g2.datum.orbit_names = {"first", "second"};
        return g2;
      } else {
        numeric_dim = 2;
        for (int j = 0; j < q; ++j) {
          const double phi = M_PI * j / q;
          numeric_roots.push_back({{-std::sqrt(2.0) * std::sin(phi), std::sqrt(2.0) * std::cos(phi)},
                                   q % 2 == 0 ? j % 2 : 0});
        }
        sys.datum.orbit_names = q % 2 == 0 ? std::vector<std::string>{"first", "second"}
                                           : std::vector<std::string>{"all"};
      }
      break;
    }
    case Group::H: {
      numeric_dim = static_cast<std::size_t>(rank);
      const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
      std::vector<std::vector<double>> all;
      if (rank == 3) {
        for (int i = 0; i < 3; ++i) {
          std::vector<double> v(3, 0.0);
          v[i] = 1.0;
          all.push_back(v);
        }
        for (int c = 0; c < 3; ++c) {
          for (int mask = 0; mask < 8; ++mask) {
            std::vector<double> base{phi / 2, 0.5, 0.5 / phi};
            for (int b = 0; b < 3; ++b) {
              if ((mask >> b) & 1) base[b] = -base[b];
            }
            std::vector<double> v(3);
            for (int i = 0; i < 3; ++i) v[(i + c) % 3] = base[i];
            all.push_back(v);
          }
        }
      } else {
        for (int i = 0; i < 4; ++i) {
          std::vector<double> v(4, 0.0);
          v[i] = 1.0;
          all.push_back(v);
        }
        for (int mask = 0; mask < 16; ++mask) {
          std::vector<double> v(4);
          for (int b = 0; b < 4; ++b) v[b] = (mask >> b) & 1 ? -0.5 : 0.5;
          all.push_back(v);
        }
        std::vector<int> perm{0, 1, 2, 3};
        do {
          int inversions = 0;
          for (int a = 0; a < 4; ++a) {
            for (int b = a + 1; b < 4; ++b) inversions += perm[a] > perm[b];
          }
          if (inversions % 2 != 0) continue;
          for (int mask = 0; mask < 8; ++mask) {
            std::vector<double> base{phi / 2, 0.5, 0.5 / phi, 0.0};
            for (int b = 0; b < 3; ++b) {
              if ((mask >> b) & 1) base[b] = -base[b];
            }
            std::vector<double> v(4);
            for (int i = 0; i < 4; ++i) v[perm[i]] = base[i];
            all.push_back(v);
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
      std::vector<double> gen(numeric_dim);
      for (std::size_t i = 0; i < numeric_dim; ++i) gen[i] = std::pow(0.1, static_cast<double>(i)) * (1.0 + 0.0137 * i);
      for (auto& v : all) {
        if (detail::dot(v, gen) <= 0) continue;
        for (auto& c : v) c *= std::sqrt(2.0);
        numeric_roots.push_back({v, 0});
      }
      sys.datum.orbit_names = {"all"};
      break;
    }
  }

  if (numeric_dim > 0) {
    std::vector<NumericVector> nv;
    std::vector<int> sizes(sys.datum.orbit_names.size(), 0);
    for (auto& [c, o] : numeric_roots) {
      nv.push_back({c, mult(o), o});
      sizes[o]++;
    }
    if (static_cast<int>(nv.size()) != sys.datum.positive_roots) {
      throw UnsupportedGroup("root generation mismatch for " + sys.datum.label);
    }
    sys.datum.orbit_sizes = sizes;
    sys.numeric = NumericArrangement(numeric_dim, std::move(nv));
    return sys;
  }

  std::vector<RootVector> rv;
  std::vector<int> sizes(sys.datum.orbit_names.size(), 0);
  for (auto& [c, o] : roots) {
    sizes[o]++;
    if (mult(o) == 0) continue;
    rv.push_back({c, mult(o), o});
  }
  if (static_cast<int>(roots.size()) != sys.datum.positive_roots) {
    throw UnsupportedGroup("root generation mismatch for " + sys.datum.label);
  }
  sys.datum.orbit_sizes = sizes;
  sys.exact = Arrangement(dim, std::move(rv));
  sys.numeric = sys.exact->numeric();
  return sys;
}

enum class DeformedFamily { A, C };

struct DeformedDatum {
  DeformedFamily family = DeformedFamily::A;
  int m = 1;
  int p = 1;
  int r = 0;
  int s = 0;
};

// A_m(p): e_i - e_j (mult p) and e_i - sqrt(p) e_{m+1} (mult 1) in R^{m+1}.
inline std::pair<Arrangement, DeformedDatum> build_deformed_a(int m, int p) {
  if (m < 1 || p < 1) throw InvalidArrangement("A_m(p) needs m >= 1 and p >= 1");
  const std::size_t dim = static_cast<std::size_t>(m) + 1;
  const Scalar sp = Scalar::sqrt_of(p);
  std::vector<RootVector> vs;
  for (std::size_t i = 0; i < dim - 1; ++i) {
    for (std::size_t j = i + 1; j < dim - 1; ++j) vs.push_back({detail::combo(dim, i, 1, j, -1), p, 0});
  }
  for (std::size_t i = 0; i < dim - 1; ++i) {
    std::vector<Scalar> v(dim, Scalar(0));
    v[i] = Scalar(1);
    v[dim - 1] = -sp;
    vs.push_back({v, 1, 1});
  }
  return {Arrangement(dim, std::move(vs)), DeformedDatum{DeformedFamily::A, m, p, 0, 0}};
}

// C_{m+1}(r,s) with p = (2r+1)/(2s+1): e_i +- e_j (mult p), e_i (mult r),
// e_{m+1} (mult s), e_i +- sqrt(p) e_{m+1} (mult 1). Zero multiplicities are dropped.
inline std::pair<Arrangement, DeformedDatum> build_deformed_c(int m, int r, int s) {
  if (m < 1 || r < 0 || s < 0) throw InvalidArrangement("C_{m+1}(r,s) needs m >= 1 and r, s >= 0");
  if ((2 * r + 1) % (2 * s + 1) != 0) {
    throw IntegralityViolation("p = (2r+1)/(2s+1) = " + std::to_string(2 * r + 1) + "/" +
                               std::to_string(2 * s + 1) + " is not an integer");
  }
  const int p = (2 * r + 1) / (2 * s + 1);
  const std::size_t dim = static_cast<std::size_t>(m) + 1;
  const Scalar sp = Scalar::sqrt_of(p);
  std::vector<RootVector> vs;
  for (std::size_t i = 0; i < dim - 1; ++i) {
    for (std::size_t j = i + 1; j < dim - 1; ++j) {
      vs.push_back({detail::combo(dim, i, 1, j, -1), p, 0});
      vs.push_back({detail::combo(dim, i, 1, j, 1), p, 0});
    }
  }
  if (r > 0) {
    for (std::size_t i = 0; i < dim - 1; ++i) vs.push_back({detail::unit_vec(dim, i), r, 1});
  }
  if (s > 0) vs.push_back({detail::unit_vec(dim, dim - 1), s, 2});
  for (std::size_t i = 0; i < dim - 1; ++i) {
    for (long sg : {-1L, 1L}) {
      std::vector<Scalar> v(dim, Scalar(0));
      v[i] = Scalar(1);
      v[dim - 1] = sp * Scalar(sg);
      vs.push_back({v, 1, 3});
    }
  }
  return {Arrangement(dim, std::move(vs)), DeformedDatum{DeformedFamily::C, m, p, r, s}};
}

enum class Branch { rational, principal_log };

// Shift vector for the contour i*xi + R^n with its regularity certificate:
// margin = min |(alpha, xi)| / |alpha| over the bound vectors.
struct ContourSpec {
  std::vector<double> xi;
  Branch branch = Branch::rational;
  double margin = 0.0;
};

enum class ShiftStrategy { positive_chamber, negative_chamber, given };

inline double shift_margin(const NumericArrangement& a, std::span<const double> xi) {
  double margin = INFINITY;
  for (const auto& v : a.vectors()) {
    margin = std::min(margin, std::abs(detail::dot(v.coords, xi)) / detail::norm(v.coords));
  }
  return margin;
}

// Regular shift. For the chamber strategies the shift is the max-margin chamber
// direction scaled so the nearest hyperplane sits at distance pole_distance.
inline ContourSpec regular_shift(const NumericArrangement& a, ShiftStrategy strategy,
                                 std::span<const double> given = {}, double pole_distance = 2.5,
                                 Branch branch = Branch::rational) {
  ContourSpec spec;
  spec.branch = branch;
  if (strategy == ShiftStrategy::given) {
    if (given.size() != a.dimension()) throw ArityMismatch("shift vector has wrong dimension");
    spec.xi.assign(given.begin(), given.end());
    const double scale = std::max(1.0, detail::norm(given));
    for (const auto& v : a.vectors()) {
      if (std::abs(detail::dot(v.coords, given)) <= 1e-12 * scale * detail::norm(v.coords)) {
        throw NotRegular("shift lies on a hyperplane of the arrangement");
      }
    }
    spec.margin = shift_margin(a, spec.xi);
    return spec;
  }
  auto [dir, margin] = a.chamber_direction();
  const double sgn = strategy == ShiftStrategy::positive_chamber ? 1.0 : -1.0;
  for (auto& c : dir) spec.xi.push_back(sgn * c * pole_distance / margin);
  spec.margin = shift_margin(a, spec.xi);
  return spec;
}

inline ContourSpec regular_shift(const Arrangement& a, ShiftStrategy strategy, std::span<const double> given = {},
                                 double pole_distance = 2.5, Branch branch = Branch::rational) {
  return regular_shift(a.numeric(), strategy, given, pole_distance, branch);
}

// Candidate shifts in one chamber at decreasing pole distances.
inline std::vector<ContourSpec> chamber_shifts(const NumericArrangement& a, ShiftStrategy strategy,
                                               std::vector<double> pole_distances = {2.5, 1.5, 1.0, 0.5}) {
  std::vector<ContourSpec> out;
  for (double pd : pole_distances) out.push_back(regular_shift(a, strategy, {}, pd));
  return out;
}

// Chamber shift with |xi| at most max_norm; narrow chambers get a smaller pole distance.
inline ContourSpec bounded_shift(const NumericArrangement& a, ShiftStrategy strategy, double pole_distance = 2.5,
                                 double max_norm = 4.0) {
  ContourSpec spec = regular_shift(a, strategy, {}, pole_distance);
  const double n = detail::norm(spec.xi);
  if (n > max_norm) {
    for (auto& c : spec.xi) c *= max_norm / n;
    spec.margin = shift_margin(a, spec.xi);
  }
  return spec;
}

// Shift for the deformed integrals in coordinates (t_1..t_n, tau_1..tau_m) with
// xi_n > ... > xi_1 > eta_m > ... > eta_1 > 0.
inline ContourSpec ordered_shift(int n, int m, double spacing = 1.0, double base = 1.0) {
  ContourSpec spec;
  spec.branch = Branch::principal_log;
  spec.xi.resize(static_cast<std::size_t>(n + m));
  for (int j = 0; j < m; ++j) spec.xi[n + j] = base + spacing * j;
  for (int i = 0; i < n; ++i) spec.xi[i] = base + spacing * (m + i);
  spec.margin = std::min(base, spacing);
  return spec;
}

inline bool is_ordered_shift(const ContourSpec& spec, int n, int m) {
  if (static_cast<int>(spec.xi.size()) != n + m) return false;
  std::vector<double> seq;
  for (int j = 0; j < m; ++j) seq.push_back(spec.xi[n + j]);
  for (int i = 0; i < n; ++i) seq.push_back(spec.xi[i]);
  if (!seq.empty() && !(seq.front() > 0)) return false;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (!(seq[i] > seq[i - 1])) return false;
  }
  return true;
}

}  // namespace bamm
