#include "cube/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <set>
#include <thread>
#include <tuple>

#include "cube/groves.hpp"
#include "cube/recurrence.hpp"

namespace cube {

Assignment random_assignment(const std::vector<VarId>& vars, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(1, 20);
  Assignment a;
  for (const auto& v : vars) {
    int num = d(rng);
    int den = d(rng);
    a[v] = Rational(num, den);
    a[v].canonicalize();
  }
  return a;
}

Assignment random_assignment(const Region& region, std::uint64_t seed) {
  std::vector<VarId> vars;
  for (const auto& u : region.variables()) vars.push_back(VarId{u});
  return random_assignment(vars, seed);
}

unsigned worker_count() {
  if (const char* env = std::getenv("CUBE_THREADS")) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Runs fn(0..count-1) on up to worker_count() threads; rethrows the first
// exception after all workers finish.
template <class F>
void parallel_for(std::size_t count, F&& fn) {
  std::size_t workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::size_t trial_count(const CheckMode& mode) {
  if (const auto* r = std::get_if<RandomRational>(&mode)) {
    if (r->trials < 1) throw std::invalid_argument("at least one trial is required");
    return static_cast<std::size_t>(r->trials);
  }
  return 1;
}

std::optional<Assignment> trial_assignment(const CheckMode& mode, const Region& region, std::size_t trial) {
  if (const auto* r = std::get_if<RandomRational>(&mode)) return random_assignment(region, r->seed + trial);
  return std::nullopt;
}

}  // namespace

// ---- periodicity -----------------------------------------------------------

PeriodicityReport check_periodicity(int m, const CheckMode& mode) {
  if (m < 3) throw std::invalid_argument("check_periodicity: m must be at least 3");
  Region tri = Region::triangle(m);
  std::size_t trials = trial_count(mode);
  std::vector<PeriodicityReport> per(trials);

  parallel_for(trials, [&](std::size_t trial) {
    LaurentAlgebra alg;
    if (auto a = trial_assignment(mode, tri, trial)) alg.assign = *a;
    Recurrence rec(tri, alg);
    PeriodicityReport& out = per[trial];
    for (const auto& v : tri.fundamental_domain()) {
      int eps = color(v);
      Vertex rv = rotate(m, v);
      for (int t = eps; t <= eps + 6 * m; t += 3) {
        const LaurentPoly& base = rec.value(v, t);
        const LaurentPoly& rotated = rec.value(rv, t + 2 * m);
        const LaurentPoly& later = rec.value(v, t + 6 * m);
        out.comparisons += 2;
        auto fail = [&](const char* identity, const Vertex& at, int time, const LaurentPoly& lhs) {
          out.witness = PeriodicityWitness{at, time, identity, lhs.to_string(), base.to_string(), static_cast<int>(trial)};
        };
        if (rotated != base) fail("rotation", rv, t + 2 * m, rotated);
        else if (later != base) fail("period", v, t + 6 * m, later);
        if (out.witness) return;
      }
    }
  });

  PeriodicityReport report;
  report.m = m;
  report.symbolic = std::holds_alternative<Symbolic>(mode);
  report.trials = static_cast<int>(trials);
  for (const auto& r : per) {
    report.comparisons += r.comparisons;
    if (r.witness && !report.witness) report.witness = r.witness;
  }
  return report;
}

// ---- linear recurrences ----------------------------------------------------

bool RecurrenceCertificate::valid() const {
  if (!onset) return false;
  for (std::size_t l = static_cast<std::size_t>(*onset - l_min); l < residuals.size(); ++l)
    if (!residuals[l].is_zero()) return false;
  return residuals.size() - static_cast<std::size_t>(*onset - l_min) >= 3;
}

namespace {

std::optional<int> onset_of(const std::vector<LaurentPoly>& residuals, int l_min) {
  std::size_t first = residuals.size();
  while (first > 0 && residuals[first - 1].is_zero()) --first;
  if (first == residuals.size()) return std::nullopt;
  return l_min + static_cast<int>(first);
}

void require_cylinder_vertex(int n, int m, const Vertex& v) {
  if (n < 1 || m < 2) throw std::invalid_argument("cylinder needs n >= 1 and m >= 2");
  if (!Region::cylinder(n, m).contains(v)) throw OutOfRegion(to_string(v) + " is not in " + Region::cylinder(n, m).describe());
}

RecurrenceCertificate certify(int n, int m, const Vertex& v, int r, const CharPoly& symbolic_poly, int l_max,
                              const std::optional<Assignment>& specialization) {
  if (l_max < 0) throw std::invalid_argument("l_max must be nonnegative");
  RecurrenceCertificate cert;
  cert.n = n;
  cert.m = m;
  cert.v = v;
  cert.r = r;
  cert.l_max = l_max;
  cert.specialization = specialization;
  cert.char_poly = specialization ? specialize(symbolic_poly, *specialization) : symbolic_poly;

  LaurentAlgebra alg;
  if (specialization) alg.assign = *specialization;
  Recurrence rec(Region::cylinder(n, m), alg);
  cert.sequence = rec.flatten_cylinder_sequence(v, Recurrence::Mode::Shifted, l_max + 1);

  int deg = cert.char_poly.degree();
  for (int l = 0; l + deg <= l_max; ++l)
    cert.residuals.push_back(residual(cert.char_poly, cert.sequence, static_cast<std::size_t>(l)));
  cert.onset = onset_of(cert.residuals, cert.l_min);
  if (!cert.valid())
    throw WindowTooSmall("no onset with three zero residuals within l <= " + std::to_string(l_max) + " for " +
                             to_string(v) + " on Cylinder(" + std::to_string(n) + "," + std::to_string(m) + ")",
                         std::move(cert));
  return cert;
}

CharPoly plethysm_poly(int n, int m, int r) { return char_poly_plethysm(char_poly_Q(n, m), r); }

}  // namespace

RecurrenceCertificate check_cylinder_recurrence(int n, int m, const Vertex& v, int l_max,
                                                const std::optional<Assignment>& specialization) {
  require_cylinder_vertex(n, m, v);
  if (v.i != m - 1) throw std::invalid_argument("check_cylinder_recurrence needs a vertex (m-1, j, k)");
  return certify(n, m, v, 1, char_poly_Q(n, m), l_max, specialization);
}

RecurrenceCertificate check_plethysm_recurrence(int n, int m, const Vertex& v, int l_max,
                                                const std::optional<Assignment>& specialization) {
  require_cylinder_vertex(n, m, v);
  if (v.i >= m) throw std::invalid_argument("check_plethysm_recurrence needs 0 <= i < m");
  int r = m - v.i;
  return certify(n, m, v, r, plethysm_poly(n, m, r), l_max, specialization);
}

std::vector<RecurrenceCertificate> check_plethysm_recurrence(int n, int m, const Vertex& v, int l_max,
                                                             const CheckMode& mode) {
  require_cylinder_vertex(n, m, v);
  if (v.i >= m) throw std::invalid_argument("check_plethysm_recurrence needs 0 <= i < m");
  int r = m - v.i;
  CharPoly q = plethysm_poly(n, m, r);
  Region cyl = Region::cylinder(n, m);
  std::size_t trials = trial_count(mode);
  std::vector<std::optional<RecurrenceCertificate>> out(trials);
  parallel_for(trials, [&](std::size_t trial) {
    out[trial] = certify(n, m, v, r, q, l_max, trial_assignment(mode, cyl, trial));
  });
  std::vector<RecurrenceCertificate> certs;
  for (auto& c : out) certs.push_back(std::move(*c));
  return certs;
}

namespace {

// Onset and number of trailing zero residuals of q on seq.
std::pair<std::optional<int>, int> scan(const CharPoly& q, const std::vector<Rational>& seq) {
  std::vector<LaurentPoly> terms(seq.begin(), seq.end());
  std::vector<LaurentPoly> res;
  for (std::size_t l = 0; l + static_cast<std::size_t>(q.degree()) < terms.size(); ++l) res.push_back(residual(q, terms, l));
  auto onset = onset_of(res, 0);
  return {onset, onset ? static_cast<int>(res.size()) - *onset : 0};
}

}  // namespace

SubsampleReport check_fixed_vertex_subsample(int m, const Vertex& v, const Assignment& specialization, int count) {
  require_cylinder_vertex(1, m, v);
  if (v.i != m - 1) throw std::invalid_argument("check_fixed_vertex_subsample needs a vertex (m-1, j, k)");
  Region cyl = Region::cylinder(1, m);
  for (const auto& u : cyl.variables())
    if (!specialization.count(VarId{u}))
      throw MissingAssignment("specialization leaves " + to_string(u) + " unassigned");

  SubsampleReport rep;
  rep.m = m;
  rep.v = v;
  LaurentAlgebra alg;
  alg.assign = specialization;
  Recurrence rec(cyl, alg);
  std::array<Vertex, 3> by_color;
  for (int j = 0; j < 3; ++j) {
    Vertex w{m - 1, j, 1 - m - j};
    by_color[static_cast<std::size_t>(color(w))] = w;
  }
  for (int t = 0; t < count; ++t) rep.column.push_back(*rec.value(by_color[static_cast<std::size_t>(t % 3)], t).as_constant());
  for (int t = color(v); t < count; t += 3) rep.fixed.push_back(*rec.value(v, t).as_constant());

  CharPoly q = specialize(char_poly_Q(1, m), specialization);
  rep.interleaved_poly = stretch(q, 2);
  rep.fixed_poly = power_roots(rep.interleaved_poly, 3);
  std::tie(rep.interleaved_onset, rep.interleaved_zeros) = scan(rep.interleaved_poly, rep.column);
  std::tie(rep.fixed_onset, rep.fixed_zeros) = scan(rep.fixed_poly, rep.fixed);
  return rep;
}

// ---- grove oracle ----------------------------------------------------------

std::vector<GroveCheckResult> cross_check_grove_oracle(const std::vector<GroveCheck>& scope) {
  std::vector<GroveCheckResult> out(scope.size());
  parallel_for(scope.size(), [&](std::size_t idx) {
    const GroveCheck& c = scope[idx];
    GroveRegion g = build_region(c.v, c.t);
    std::vector<Forest> groves;
    if (c.ambient.is_plane()) {
      groves = enumerate_groves(g);
    } else if (c.ambient.is_cylinder()) {
      groves = enumerate_strip_groves(c.ambient.cylinder().n, c.ambient.cylinder().m, c.v, c.t);
    } else {
      throw std::invalid_argument("grove oracle: only the plane and cylinders are supported");
    }
    LaurentPoly sum = grove_sum(g, groves, c.ambient);
    Recurrence rec(c.ambient);
    const LaurentPoly& val = rec.value(c.v, c.t + 1);
    bool match;
    if (c.seed) {
      std::set<VarId> vars;
      for (const auto& id : sum.variables()) vars.insert(id);
      for (const auto& id : val.variables()) vars.insert(id);
      Assignment a = random_assignment(std::vector<VarId>(vars.begin(), vars.end()), *c.seed);
      match = substitute(sum, a) == substitute(val, a);
    } else {
      match = sum == val;
    }
    out[idx] = GroveCheckResult{c, groves.size(), match};
  });
  return out;
}

std::vector<GroveCheck> default_grove_scope(int t, std::uint64_t seed) {
  if (t < 2) throw std::invalid_argument("groves need t >= 2");
  std::vector<GroveCheck> scope;
  for (const Vertex& apex : {Vertex{0, 0, 0}, Vertex{1, 0, -1}, Vertex{0, 1, -1}})
    if (floor_mod(t + 1 - color(apex), 3) == 0)
      scope.push_back({Region::plane(), apex, t, t >= 4 ? std::optional<std::uint64_t>(seed) : std::nullopt});
  if (t <= 7)
    for (auto [n, m] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 2}}) {
      Region cyl = Region::cylinder(n, m);
      for (const auto& v : cyl.variables())
        if (floor_mod(t + 1 - color(v), 3) == 0) scope.push_back({cyl, v, t, std::nullopt});
    }
  return scope;
}

// ---- degree growth ---------------------------------------------------------

bool GrowthReport::nondecreasing() const {
  for (std::size_t i = 1; i < degrees.size(); ++i)
    if (degrees[i] < degrees[i - 1]) return false;
  return true;
}

bool GrowthReport::second_differences_banded() const {
  if (quadratic_coefficient <= 0) return false;
  Rational lo = quadratic_coefficient, hi = 4 * quadratic_coefficient;
  for (auto d : second_differences)
    if (Rational(d) < lo || Rational(d) > hi) return false;
  return true;
}

namespace {

// Least squares fit of ys by a polynomial of the given degree in T = 0, 1, ...
// Returns the coefficients (lowest first) and the residual sum of squares.
std::pair<std::vector<Rational>, Rational> fit(const std::vector<std::int64_t>& ys, int degree) {
  std::size_t k = static_cast<std::size_t>(degree) + 1;
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k + 1, 0));
  for (std::size_t T = 0; T < ys.size(); ++T) {
    std::vector<Rational> row(k);
    Rational p = 1;
    for (std::size_t c = 0; c < k; ++c, p *= static_cast<long>(T)) row[c] = p;
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) a[r][c] += row[r] * row[c];
      a[r][k] += row[r] * Rational(static_cast<long>(ys[T]));
    }
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    while (a[piv][col] == 0) ++piv;
    std::swap(a[piv], a[col]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<Rational> beta(k);
  for (std::size_t r = 0; r < k; ++r) beta[r] = a[r][k] / a[r][r];
  Rational rss = 0;
  for (std::size_t T = 0; T < ys.size(); ++T) {
    Rational y = 0, p = 1;
    for (std::size_t c = 0; c < k; ++c, p *= static_cast<long>(T)) y += beta[c] * p;
    Rational e = Rational(static_cast<long>(ys[T])) - y;
    rss += e * e;
  }
  return {beta, rss};
}

}  // namespace

GrowthReport measure_degree_growth(const Vertex& A, const Vertex& B, const Vertex& v, int t_max) {
  if (t_max < 6) throw std::invalid_argument("measure_degree_growth: t_max must be at least 6");
  Region tor = Region::torus(A, B);
  DegreeRecurrence rec(tor, SupportAlgebra{tor.variables()});
  GrowthReport rep;
  rep.A = A;
  rep.B = B;
  rep.v = v;
  rep.t_max = t_max;
  for (int T = 0; T <= t_max; ++T) rep.degrees.push_back(SupportAlgebra::spread(rec.value(v, color(v) + 3 * T)));
  for (std::size_t i = 2; i < rep.degrees.size(); ++i)
    rep.second_differences.push_back(rep.degrees[i] - 2 * rep.degrees[i - 1] + rep.degrees[i - 2]);
  rep.linear_rss = fit(rep.degrees, 1).second;
  auto [beta, rss] = fit(rep.degrees, 2);
  rep.quadratic_rss = rss;
  rep.quadratic_coefficient = beta[2];
  for (int T = 1; T <= t_max; ++T) {
    Rational ratio(static_cast<long>(rep.degrees[static_cast<std::size_t>(T)]), static_cast<long>(T) * T);
    ratio.canonicalize();
    if (T == 1 || ratio < rep.min_ratio) rep.min_ratio = ratio;
    if (T == 1 || ratio > rep.max_ratio) rep.max_ratio = ratio;
  }
  return rep;
}

// ---- JSON ------------------------------------------------------------------

namespace {

Json assignment_json(const Assignment& a) {
  Json j = Json::object();
  for (const auto& [id, q] : a) j[to_string(id)] = to_string(q);
  return j;
}

Json rationals_json(const std::vector<Rational>& xs) {
  Json j = Json::array();
  for (const auto& q : xs) j.push_back(to_string(q));
  return j;
}

Json onset_json(const std::optional<int>& o) { return o ? Json(*o) : Json(nullptr); }

}  // namespace

Json to_json(const PeriodicityReport& r) {
  Json j;
  j["check"] = "periodicity";
  j["m"] = r.m;
  j["mode"] = r.symbolic ? "symbolic" : "random";
  j["trials"] = r.trials;
  j["comparisons"] = r.comparisons;
  j["pass"] = r.pass();
  if (r.witness) {
    const auto& w = *r.witness;
    j["witness"] = {{"vertex", to_string(w.v)}, {"t", w.t}, {"identity", w.identity},
                    {"lhs", w.lhs},           {"rhs", w.rhs}, {"trial", w.trial}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json to_json(const RecurrenceCertificate& c) {
  Json j;
  j["n"] = c.n;
  j["m"] = c.m;
  j["vertex"] = to_string(c.v);
  j["r"] = c.r;
  j["char_poly"] = to_json(c.char_poly);
  j["window"] = {c.l_min, c.l_max};
  j["onset"] = onset_json(c.onset);
  j["valid"] = c.valid();
  j["sequence"] = to_json(c.sequence)["coeffs"];
  j["residuals"] = to_json(c.residuals)["coeffs"];
  j["specialization"] = c.specialization ? assignment_json(*c.specialization) : Json(nullptr);
  return j;
}

Json to_json(const SubsampleReport& r) {
  Json j;
  j["m"] = r.m;
  j["vertex"] = to_string(r.v);
  j["column"] = rationals_json(r.column);
  j["fixed_vertex"] = rationals_json(r.fixed);
  j["interleaved_poly"] = to_json(r.interleaved_poly);
  j["fixed_poly"] = to_json(r.fixed_poly);
  j["interleaved_onset"] = onset_json(r.interleaved_onset);
  j["fixed_onset"] = onset_json(r.fixed_onset);
  j["pass"] = r.pass();
  return j;
}

Json to_json(const GroveCheckResult& r) {
  Json j;
  j["region"] = r.check.ambient.describe();
  j["vertex"] = to_string(r.check.v);
  j["t"] = r.check.t;
  j["mode"] = r.check.seed ? "random" : "symbolic";
  if (r.check.seed) j["seed"] = *r.check.seed;
  j["groves"] = r.groves;
  j["match"] = r.match;
  return j;
}

Json to_json(const GrowthReport& r) {
  Json j;
  j["check"] = "entropy";
  j["A"] = to_string(r.A);
  j["B"] = to_string(r.B);
  j["vertex"] = to_string(r.v);
  j["t_max"] = r.t_max;
  j["degrees"] = r.degrees;
  j["second_differences"] = r.second_differences;
  j["linear_rss"] = to_string(r.linear_rss);
  j["quadratic_rss"] = to_string(r.quadratic_rss);
  j["quadratic_coefficient"] = to_string(r.quadratic_coefficient);
  j["ratio_band"] = {to_string(r.min_ratio), to_string(r.max_ratio)};
  j["nondecreasing"] = r.nondecreasing();
  j["quadratic_beats_linear"] = r.quadratic_beats_linear();
  j["second_differences_banded"] = r.second_differences_banded();
  j["pass"] = r.pass();
  return j;
}

}  // namespace cube
