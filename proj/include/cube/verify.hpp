#pragma once

// Certification drivers: triangle periodicity, linear recurrences of the
// cylinder sequences, grove sums against recurrence values, and degree
// growth on the torus. Every pass is an exact equality; random
// specializations only choose the point at which exact values are compared.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cube/charpoly.hpp"
#include "cube/json_io.hpp"
#include "cube/lattice.hpp"
#include "cube/laurent.hpp"

namespace cube {

struct Symbolic {};
struct RandomRational {
  std::uint64_t seed = 1;
  int trials = 3;
};
using CheckMode = std::variant<Symbolic, RandomRational>;

/// Numerators and denominators uniform in [1, 20].
Assignment random_assignment(const std::vector<VarId>& vars, std::uint64_t seed);
Assignment random_assignment(const Region& region, std::uint64_t seed);

/// Worker bound from CUBE_THREADS, else the hardware concurrency (at least 1).
unsigned worker_count();

// ---- periodicity -----------------------------------------------------------

struct PeriodicityWitness {
  Vertex v;
  int t = 0;
  std::string identity;  // "rotation" or "period"
  std::string lhs, rhs;
  int trial = 0;
};

struct PeriodicityReport {
  int m = 3;
  bool symbolic = true;
  int trials = 1;
  long comparisons = 0;
  std::optional<PeriodicityWitness> witness;  // first violation

  bool pass() const { return !witness.has_value(); }
};

/// For every v of the triangle and t = color(v) + 3s in [color(v), color(v)+6m]:
/// f_{rot v}(t+2m) = f_v(t) and f_v(t+6m) = f_v(t). Throws invalid_argument
/// for m < 3.
PeriodicityReport check_periodicity(int m, const CheckMode& mode);

// ---- linear recurrences ----------------------------------------------------

struct RecurrenceCertificate {
  int n = 1, m = 2;
  Vertex v;
  int r = 1;  // depth: the sequence is governed by the r-fold root products
  CharPoly char_poly;
  int l_min = 0, l_max = 0;  // sequence indices used
  std::vector<LaurentPoly> sequence;
  std::vector<LaurentPoly> residuals;  // residuals[l] for l = l_min .. l_max - deg
  std::optional<int> onset;            // first l with zero residuals through the window end
  std::optional<Assignment> specialization;

  /// Zero residuals from the onset on, and at least three of them.
  bool valid() const;
};

class WindowTooSmall : public std::runtime_error {
 public:
  WindowTooSmall(const std::string& what, RecurrenceCertificate cert)
      : std::runtime_error(what), certificate(std::move(cert)) {}
  RecurrenceCertificate certificate;
};

/// Certifies f_{v+lg}(color(v)+2ln), l = 0..l_max, against the characteristic
/// polynomial of the cylinder. v must be boundary-adjacent, v = (m-1, j, k).
/// With a specialization every variable is assigned and residuals are
/// rationals. Throws WindowTooSmall when fewer than three zero residuals end
/// the window.
RecurrenceCertificate check_cylinder_recurrence(int n, int m, const Vertex& v, int l_max,
                                                const std::optional<Assignment>& specialization = std::nullopt);

/// The same for v = (i, j, k) with 0 <= i < m against the polynomial of the
/// (m-i)-fold root products. i = 0 is the boundary, whose sequence is all ones.
RecurrenceCertificate check_plethysm_recurrence(int n, int m, const Vertex& v, int l_max,
                                                const std::optional<Assignment>& specialization = std::nullopt);

/// One certificate per trial (a single symbolic one in Symbolic mode).
std::vector<RecurrenceCertificate> check_plethysm_recurrence(int n, int m, const Vertex& v, int l_max,
                                                             const CheckMode& mode);

/// On Cylinder(1, m) the column i = m-1 holds one vertex per color, so
/// y_t = f_{w(t)}(t) interleaves two shifted sequences and its terms
/// y_{color(v)+3s} are the fixed-vertex sequence of v.
struct SubsampleReport {
  int m = 2;
  Vertex v;
  std::vector<Rational> column;      // y_0 .. y_{count-1}
  std::vector<Rational> fixed;       // f_v(color(v) + 3s)
  CharPoly interleaved_poly;         // Q(t^2)
  CharPoly fixed_poly;               // cubes of the roots of Q(t^2)
  std::optional<int> interleaved_onset, fixed_onset;
  int interleaved_zeros = 0, fixed_zeros = 0;

  bool pass() const { return interleaved_onset && fixed_onset && interleaved_zeros >= 3 && fixed_zeros >= 3; }
};

SubsampleReport check_fixed_vertex_subsample(int m, const Vertex& v, const Assignment& specialization, int count);

// ---- grove oracle ----------------------------------------------------------

struct GroveCheck {
  Region ambient;  // plane or cylinder
  Vertex v;
  int t = 2;
  std::optional<std::uint64_t> seed;  // compare at a random point instead of symbolically
};

struct GroveCheckResult {
  GroveCheck check;
  std::size_t groves = 0;
  bool match = false;
};

/// Sum of grove weights over G(v,t) against f_v(t+1), per entry.
std::vector<GroveCheckResult> cross_check_grove_oracle(const std::vector<GroveCheck>& scope);

/// The plane at the apex of the right color for t (symbolic through t = 3,
/// numeric beyond) and, for t <= 7, every cylinder variable of (1,2), (1,3)
/// and (2,2) of that color.
std::vector<GroveCheck> default_grove_scope(int t, std::uint64_t seed);

// ---- degree growth ---------------------------------------------------------

struct GrowthReport {
  Vertex A, B, v;
  int t_max = 0;                          // T ranges over 0..t_max
  std::vector<std::int64_t> degrees;      // degree spread of f_v(color(v)+3T)
  std::vector<std::int64_t> second_differences;
  Rational linear_rss, quadratic_rss;     // least-squares residual sums
  Rational quadratic_coefficient;         // leading coefficient of the quadratic fit
  Rational min_ratio, max_ratio;          // d(T)/T^2 over 1 <= T <= t_max

  bool nondecreasing() const;
  bool quadratic_beats_linear() const { return quadratic_rss < linear_rss; }
  /// Every second difference within a factor two of the fitted constant
  /// second difference 2a.
  bool second_differences_banded() const;
  bool pass() const { return nondecreasing() && quadratic_beats_linear() && second_differences_banded(); }
};

/// Throws invalid_argument for t_max < 6.
GrowthReport measure_degree_growth(const Vertex& A, const Vertex& B, const Vertex& v, int t_max);

// ---- JSON reports ----------------------------------------------------------

Json to_json(const PeriodicityReport& r);
Json to_json(const RecurrenceCertificate& c);
Json to_json(const SubsampleReport& r);
Json to_json(const GroveCheckResult& r);
Json to_json(const GrowthReport& r);

}  // namespace cube
