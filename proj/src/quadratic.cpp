#include "neq/quadratic.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace neq {

SolverConfig SolverConfig::from_environment(SolverConfig base) {
  auto read = [](const char *name, auto &field) {
    const char *raw = std::getenv(name);
    if (!raw || !*raw) return;
    char *end = nullptr;
    errno = 0;
    long long v = std::strtoll(raw, &end, 10);
    if (errno != 0 || *end != '\0' || v <= 0)
      throw std::invalid_argument(std::string(name) + " must be a positive integer, got '" + raw + "'");
    field = static_cast<std::decay_t<decltype(field)>>(v);
  };
  read("NEQ_SEARCH_BOUND", base.search_bound);
  read("NEQ_MODULUS_LIMIT", base.modulus_limit);
  read("NEQ_BRANCH_BUDGET", base.branch_budget);
  read("NEQ_RESIDUE_BUDGET", base.residue_budget);
  read("NEQ_TIME_BUDGET", base.time_budget_ms);
  return base;
}

void SolverConfig::validate() const {
  if (search_bound <= 0 || modulus_limit <= 0 || branch_budget == 0 || residue_budget == 0 || time_budget_ms <= 0)
    throw std::invalid_argument("solver configuration values must be positive");
}

Deadline::Deadline(std::int64_t budget_ms)
    : end_(std::chrono::steady_clock::now() + std::chrono::milliseconds(budget_ms)) {}

bool Deadline::expired() const { return std::chrono::steady_clock::now() >= end_; }

std::string verdict_name(Verdict v) {
  switch (v) {
  case Verdict::Sat: return "sat";
  case Verdict::Unsat: return "unsat";
  case Verdict::Unknown: return "unknown";
  }
  return "?";
}

std::string certificate_kind_name(CertificateKind kind) {
  switch (kind) {
  case CertificateKind::GcdFailure: return "gcd-failure";
  case CertificateKind::EmptyCongruence: return "empty-congruence";
  case CertificateKind::ModularObstruction: return "modular-obstruction";
  case CertificateKind::DefiniteExhaustion: return "definite-exhaustion";
  case CertificateKind::Discriminant: return "discriminant";
  case CertificateKind::NonzeroConstant: return "nonzero-constant";
  case CertificateKind::AllBranchesUnsat: return "all-branches-unsat";
  }
  return "?";
}

std::string describe_certificate(const Certificate &c) {
  std::string s = certificate_kind_name(c.kind);
  switch (c.kind) {
  case CertificateKind::GcdFailure:
    s += c.divisor == 0 ? " (a row combination reads 0 = nonzero)" : " (" + c.divisor.str() + " divides every coefficient but not the constant)";
    break;
  case CertificateKind::EmptyCongruence:
  case CertificateKind::ModularObstruction: s += " mod " + std::to_string(c.modulus); break;
  case CertificateKind::DefiniteExhaustion:
    s += std::string(c.sign > 0 ? " (positive" : " (negative") + " definite, no zero with |y| <= " + c.bound.str() + ")";
    break;
  case CertificateKind::Discriminant: s += " " + c.discriminant.str(); break;
  case CertificateKind::NonzeroConstant: break;
  case CertificateKind::AllBranchesUnsat: s += " (" + std::to_string(c.children.size()) + " cases)"; break;
  }
  if (!c.detail.empty()) s += ": " + c.detail;
  return s;
}

namespace {

constexpr std::int64_t kSmallLimit = std::int64_t(1) << 40;

/// Q restricted to a compact list of unknowns, with int64 coefficients when
/// they fit, for fast evaluation at small points.
struct CompactPoly {
  struct Term {
    int a, b; // compact indices, -1 absent
    std::int64_t c;
  };
  std::vector<int> vars; // compact -> original
  std::vector<Term> terms;
  bool fast = true;
  IntPolynomial exact; // over compact indices

  explicit CompactPoly(const IntPolynomial &Q) {
    vars = Q.support();
    std::vector<int> mapping(Q.variable_bound(), -1);
    for (std::size_t i = 0; i < vars.size(); ++i) mapping[vars[i]] = static_cast<int>(i);
    exact = Q.remap(mapping);
    for (const auto &[m, c] : exact.terms()) {
      if (!fits_int64(c) || abs(c) > kSmallLimit) fast = false;
      terms.push_back({m.first, m.second, fast ? static_cast<std::int64_t>(c) : 0});
    }
  }

  int size() const { return static_cast<int>(vars.size()); }

  /// Exact zero test at y (compact). Fast path is exact while |y| <= 2^20.
  bool is_zero_at(const std::vector<std::int64_t> &y) const {
    if (fast) {
      __int128 sum = 0;
      for (const auto &t : terms) {
        __int128 v = t.c;
        if (t.a >= 0) v *= y[t.a];
        if (t.b >= 0) v *= y[t.b];
        sum += v;
      }
      return sum == 0;
    }
    std::vector<Integer> big(y.begin(), y.end());
    return exact.evaluate(big) == 0;
  }

  /// Q(y) mod m in {0..m-1}; exact for any coefficient size.
  std::int64_t residue_at(const std::vector<std::int64_t> &y, std::int64_t m) const {
    if (!fast) {
      std::vector<Integer> big(y.begin(), y.end());
      return static_cast<std::int64_t>(mod_floor(exact.evaluate(big), Integer(m)));
    }
    __int128 sum = 0;
    for (const auto &t : terms) {
      __int128 v = t.c % m;
      if (t.a >= 0) v = v * y[t.a] % m;
      if (t.b >= 0) v = v * y[t.b] % m;
      sum += v;
    }
    auto r = static_cast<std::int64_t>(sum % m);
    return r < 0 ? r + m : r;
  }

  std::vector<Integer> expand(const std::vector<std::int64_t> &y, int unknown_count) const {
    std::vector<Integer> out(unknown_count, 0);
    for (std::size_t i = 0; i < vars.size(); ++i) out[vars[i]] = y[i];
    return out;
  }
};

/// Value for digit d in the canonical order 0, 1, -1, 2, -2, ...
inline std::int64_t canonical_value(std::int64_t d) { return d == 0 ? 0 : (d % 2 ? (d + 1) / 2 : -d / 2); }

enum class ShellOutcome { Found, Exhausted, Budget, Time };

struct ShellSearch {
  ShellOutcome outcome = ShellOutcome::Exhausted;
  std::vector<std::int64_t> point;
  std::int64_t complete_radius = -1;
  std::uint64_t visited = 0;
};

/*
 * Scans the box |y_i| <= radius in increasing l-infinity shells,
 * lexicographic in the canonical value order within a shell.
 */
ShellSearch shell_search(const CompactPoly &P, std::int64_t radius, std::uint64_t budget, const Deadline *deadline) {
  ShellSearch s;
  const int k = P.size();
  std::vector<std::int64_t> y(k);
  std::int64_t top = 0;
  // Returns true to stop (found or out of budget).
  auto visit = [&](auto &&self, int i, bool hit) -> bool {
    if (i == k) {
      if (++s.visited > budget) {
        s.outcome = ShellOutcome::Budget;
        return true;
      }
      if ((s.visited & 4095u) == 0 && deadline && deadline->expired()) {
        s.outcome = ShellOutcome::Time;
        return true;
      }
      if (P.is_zero_at(y)) {
        s.outcome = ShellOutcome::Found;
        s.point = y;
        return true;
      }
      return false;
    }
    // The last coordinate must reach the shell if no earlier one did.
    const std::int64_t first = (i == k - 1 && !hit) ? std::max<std::int64_t>(top - 1, 0) : 0;
    for (std::int64_t d = first; d <= top; ++d) {
      y[i] = canonical_value(d);
      if (self(self, i + 1, hit || d >= top - 1)) return true;
    }
    return false;
  };
  for (std::int64_t r = 0; r <= radius; ++r) {
    top = 2 * r;
    if (visit(visit, 0, r == 0)) return s;
    s.complete_radius = r;
  }
  s.outcome = ShellOutcome::Exhausted;
  return s;
}

/// Whether Q has a zero modulo m, by enumerating the support of Q mod m.
/// Throws ResidueLimit when m^k exceeds `budget`.
struct ResidueLimit {};

bool has_zero_mod(const IntPolynomial &Q, std::int64_t m, std::uint64_t budget, std::uint64_t *visited) {
  IntPolynomial R = Q.reduced_mod(Integer(m));
  if (R.is_zero()) return true;
  CompactPoly P(R);
  const int k = P.size();
  Integer total = 1;
  for (int i = 0; i < k; ++i) total *= m;
  if (total > budget) throw ResidueLimit{};
  std::vector<std::int64_t> y(k, 0);
  for (;;) {
    if (visited) ++*visited;
    if (P.residue_at(y, m) == 0) return true;
    int pos = k;
    while (pos-- > 0) {
      if (++y[pos] < m) break;
      y[pos] = 0;
    }
    if (pos < 0) return false;
  }
}

bool is_prime_power(std::int64_t m) {
  if (m < 2) return false;
  std::int64_t p = 2;
  while (p * p <= m && m % p != 0) ++p;
  if (m % p != 0) return true; // m prime
  while (m % p == 0) m /= p;
  return m == 1;
}

/// Bareiss elimination without pivoting: the k-th pivot is the k-th leading
/// principal minor.
bool leading_minors_positive(IntMatrix M) {
  const std::size_t n = M.size();
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (M[k][k] <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
    prev = M[k][k];
  }
  return true;
}

/// G = Hessian (2 q_ii on the diagonal, q_ij off it), L linear part, e constant,
/// over compact indices.
struct QuadraticParts {
  IntMatrix G;
  IntVector L;
  Integer e;
};

QuadraticParts split(const IntPolynomial &P, int k) {
  QuadraticParts q{IntMatrix(k, IntVector(k, 0)), IntVector(k, 0), 0};
  for (const auto &[m, c] : P.terms()) {
    if (m.degree() == 0) {
      q.e = c;
    } else if (m.degree() == 1) {
      q.L[m.second] = c;
    } else if (m.first == m.second) {
      q.G[m.first][m.first] = 2 * c;
    } else {
      q.G[m.first][m.second] = c;
      q.G[m.second][m.first] = c;
    }
  }
  return q;
}

IntMatrix shifted(const IntMatrix &G, const Integer &num, const Integer &den) {
  IntMatrix S = G;
  for (std::size_t i = 0; i < S.size(); ++i) {
    for (auto &v : S[i]) v *= den;
    S[i][i] -= num;
  }
  return S;
}

/// Radius beyond which sign*Q > 0, given den*G - num*I positive definite.
Integer definite_radius(const QuadraticParts &q, const Integer &num, const Integer &den) {
  // Q >= mu r^2 - l r + e with mu = num / (2 den), l = ||L||_1, r = ||y||_2.
  Integer l = 0;
  for (const auto &v : q.L) l += abs(v);
  Integer E = q.e < 0 ? Integer(-q.e) : Integer(0);
  auto ceil_div = [](const Integer &a, const Integer &b) { return (a + b - 1) / b; };
  Integer lin = ceil_div(2 * den * l, num);
  Integer root = isqrt(ceil_div(2 * den * E, num)) + 1;
  return lin + root + 1;
}

/// Rational lower bound num/den for the smallest eigenvalue of a positive
/// definite G, within a factor of about 1 + 1/64.
std::pair<Integer, Integer> eigen_lower_bound(const IntMatrix &G) {
  Integer num = 1, den = 1;
  auto ok = [&](const Integer &n, const Integer &d) { return leading_minors_positive(shifted(G, n, d)); };
  if (ok(num, den)) {
    while (ok(num * 2, den)) num *= 2;
  } else {
    do den *= 2;
    while (!ok(num, den) && den < (Integer(1) << 256));
    if (!ok(num, den)) return {0, 1};
  }
  // Refine: ok(num/den) holds, ok(2num/den) fails.
  Integer lo = num * 64, hi = num * 128, d = den * 64;
  for (int step = 0; step < 6; ++step) {
    Integer mid = (lo + hi) / 2;
    if (ok(mid, d))
      lo = mid;
    else
      hi = mid;
  }
  Integer g = gcd(lo, d);
  return {lo / g, d / g};
}

std::int64_t span(const Integer &radius) {
  return fits_int64(radius) && radius < (std::int64_t(1) << 20) ? static_cast<std::int64_t>(radius) : -1;
}

bool box_fits(const Integer &radius, int k, std::uint64_t budget) {
  Integer points = 1;
  for (int i = 0; i < k; ++i) {
    points *= 2 * radius + 1;
    if (points > budget) return false;
  }
  return true;
}

DecisionResult sat(std::vector<Integer> witness) {
  DecisionResult r;
  r.verdict = Verdict::Sat;
  r.integer_witness = std::move(witness);
  return r;
}

DecisionResult unsat(Certificate c) {
  DecisionResult r;
  r.verdict = Verdict::Unsat;
  r.certificate = std::move(c);
  return r;
}

std::optional<DecisionResult> univariate(const IntPolynomial &Q, int var, int unknown_count) {
  Integer a = Q.quadratic_coefficient(var, var), b = Q.linear_coefficient(var), c = Q.constant_term();
  if (a == 0) return std::nullopt;
  Integer disc = b * b - 4 * a * c;
  Certificate cert;
  cert.kind = CertificateKind::Discriminant;
  cert.discriminant = disc;
  Integer s;
  if (!is_square(disc, &s)) return unsat(cert);
  for (const Integer &root : {Integer(-b + s), Integer(-b - s)}) {
    if (root % (2 * a) == 0) {
      std::vector<Integer> w(unknown_count, 0);
      w[var] = root / (2 * a);
      return sat(std::move(w));
    }
  }
  return unsat(cert);
}

/*
 * Unknowns occurring only linearly with gcd g: Q = sum c_s y_s + R(rest) has
 * a zero iff R has a zero modulo g.
 */
std::optional<DecisionResult> linear_escape(const IntPolynomial &Q, int unknown_count, std::uint64_t budget,
                                            std::uint64_t &visited) {
  std::vector<int> free_vars;
  Integer g = 0;
  for (int v : Q.support())
    if (Q.only_linear_in(v)) {
      free_vars.push_back(v);
      g = gcd(g, Q.linear_coefficient(v));
    }
  if (free_vars.empty()) return std::nullopt;

  IntPolynomial R = Q;
  for (int v : free_vars) R.add_term(Monomial::linear(v), -Q.linear_coefficient(v));
  std::vector<Integer> w(unknown_count, 0);

  if (g != 1) {
    if (!fits_int64(g)) return std::nullopt;
    const auto m = static_cast<std::int64_t>(g);
    IntPolynomial Rm = R.reduced_mod(g);
    CompactPoly P(Rm);
    Integer total = 1;
    for (int i = 0; i < P.size(); ++i) total *= m;
    if (total > budget) return std::nullopt;
    // Search residues in canonical order for a zero of R mod g.
    std::vector<std::int64_t> y(P.size(), 0);
    bool found = false;
    for (;;) {
      ++visited;
      if (P.residue_at(y, m) == 0) {
        found = true;
        break;
      }
      int pos = P.size();
      while (pos-- > 0) {
        if (++y[pos] < m) break;
        y[pos] = 0;
      }
      if (pos < 0) break;
    }
    if (!found) {
      Certificate c;
      c.kind = CertificateKind::ModularObstruction;
      c.modulus = m;
      c.detail = "unknowns occurring only linearly have coefficient gcd " + g.str();
      return unsat(c);
    }
    for (int i = 0; i < P.size(); ++i) w[P.vars[i]] = y[i];
  }

  Integer rest = R.evaluate(w); // sum c_s y_s = -rest
  // Combine coefficients: sum c_s x_s = g.
  std::vector<Integer> x(free_vars.size(), 0);
  Integer acc = 0;
  for (std::size_t i = 0; i < free_vars.size(); ++i) {
    Integer c = Q.linear_coefficient(free_vars[i]);
    ExtendedGcd e = extended_gcd(acc, c);
    for (std::size_t j = 0; j < i; ++j) x[j] *= e.x;
    x[i] = e.y;
    acc = e.g;
  }
  Integer scale = -rest / acc;
  for (std::size_t i = 0; i < free_vars.size(); ++i) w[free_vars[i]] = x[i] * scale;
  return sat(std::move(w));
}

} // namespace

bool is_positive_definite(const IntMatrix &G) { return leading_minors_positive(G); }

DecisionResult decide_quadratic(const IntPolynomial &Q, const SolverConfig &cfg, int unknown_count) {
  Deadline deadline(cfg.time_budget_ms);
  return decide_quadratic(Q, cfg, unknown_count, deadline);
}

DecisionResult decide_quadratic(const IntPolynomial &Q, const SolverConfig &cfg, int unknown_count,
                                const Deadline &deadline) {
  if (Q.degree() > 2) throw DegreeOverflow("decide_quadratic needs degree <= 2");
  if (unknown_count < 0) unknown_count = Q.variable_bound();
  if (Q.variable_bound() > unknown_count) throw std::invalid_argument("polynomial uses more unknowns than declared");

  std::uint64_t visited = 0;
  auto finish = [&](DecisionResult r) {
    r.stats.points += visited;
    if (r.verdict == Verdict::Sat && Q.evaluate(r.integer_witness) != 0)
      throw std::logic_error("quadratic backend produced a non-verifying witness");
    return r;
  };

  if (Q.is_constant()) {
    if (Q.is_zero()) return finish(sat(std::vector<Integer>(unknown_count, 0)));
    Certificate c;
    c.kind = CertificateKind::NonzeroConstant;
    c.detail = Q.to_string();
    return finish(unsat(c));
  }

  if (auto r = linear_escape(Q, unknown_count, cfg.residue_budget, visited)) return finish(std::move(*r));

  const auto support = Q.support();
  if (support.size() == 1)
    if (auto r = univariate(Q, support[0], unknown_count)) return finish(std::move(*r));

  CompactPoly P(Q);
  const int k = P.size();

  // Definite quadratic part: every zero lies in a computable box.
  for (int sign : {1, -1}) {
    QuadraticParts parts = split(sign > 0 ? P.exact : -P.exact, k);
    if (!leading_minors_positive(parts.G)) continue;
    auto [num, den] = eigen_lower_bound(parts.G);
    if (num == 0) break;
    Integer radius = definite_radius(parts, num, den);
    if (span(radius) < 0 || !box_fits(radius, k, cfg.residue_budget)) break;
    ShellSearch s = shell_search(P, span(radius), cfg.residue_budget, &deadline);
    visited += s.visited;
    if (s.outcome == ShellOutcome::Found) return finish(sat(P.expand(s.point, unknown_count)));
    if (s.outcome == ShellOutcome::Exhausted) {
      Certificate c;
      c.kind = CertificateKind::DefiniteExhaustion;
      c.sign = sign;
      c.bound = radius;
      c.mu_num = num;
      c.mu_den = den;
      return finish(unsat(c));
    }
    break;
  }

  // A small box first: cheap Sat answers before the modular scan.
  {
    ShellSearch quick = shell_search(P, std::min<std::int64_t>(2, cfg.search_bound), cfg.residue_budget, &deadline);
    visited += quick.visited;
    if (quick.outcome == ShellOutcome::Found) return finish(sat(P.expand(quick.point, unknown_count)));
  }

  // Modular obstruction over prime powers.
  std::uint64_t residue_left = cfg.residue_budget;
  for (std::int64_t m = 2; m <= cfg.modulus_limit; ++m) {
    if (!is_prime_power(m)) continue;
    if (deadline.expired()) break;
    std::uint64_t before = visited;
    try {
      if (!has_zero_mod(Q, m, residue_left, &visited)) {
        Certificate c;
        c.kind = CertificateKind::ModularObstruction;
        c.modulus = m;
        return finish(unsat(c));
      }
    } catch (const ResidueLimit &) {
      break;
    }
    residue_left -= std::min(residue_left, visited - before);
  }

  ShellSearch s = shell_search(P, cfg.search_bound, cfg.residue_budget, &deadline);
  visited += s.visited;
  if (s.outcome == ShellOutcome::Found) return finish(sat(P.expand(s.point, unknown_count)));
  DecisionResult r;
  r.verdict = Verdict::Unknown;
  r.search_bound = std::max<std::int64_t>(s.complete_radius, 0);
  r.reason = s.outcome == ShellOutcome::Exhausted ? "box search exhausted without a solution"
             : s.outcome == ShellOutcome::Time    ? "time budget exhausted"
                                                  : "search point budget exhausted";
  return finish(r);
}

bool verify_quadratic_certificate(const IntPolynomial &Q, const Certificate &cert, std::uint64_t budget) {
  switch (cert.kind) {
  case CertificateKind::NonzeroConstant: return Q.is_constant() && !Q.is_zero();
  case CertificateKind::Discriminant: {
    auto support = Q.support();
    if (support.size() != 1) return false;
    const int v = support[0];
    Integer a = Q.quadratic_coefficient(v, v), b = Q.linear_coefficient(v), c = Q.constant_term();
    if (a == 0 || b * b - 4 * a * c != cert.discriminant) return false;
    Integer s;
    if (!is_square(cert.discriminant, &s)) return true;
    return (-b + s) % (2 * a) != 0 && (-b - s) % (2 * a) != 0;
  }
  case CertificateKind::ModularObstruction: {
    if (cert.modulus < 2) return false;
    try {
      return !has_zero_mod(Q, cert.modulus, budget, nullptr);
    } catch (const ResidueLimit &) {
      return false;
    }
  }
  case CertificateKind::DefiniteExhaustion: {
    if (cert.sign != 1 && cert.sign != -1) return false;
    if (cert.mu_num <= 0 || cert.mu_den <= 0) return false;
    CompactPoly P(cert.sign > 0 ? Q : -Q);
    QuadraticParts parts = split(P.exact, P.size());
    if (!leading_minors_positive(shifted(parts.G, cert.mu_num, cert.mu_den))) return false;
    if (definite_radius(parts, cert.mu_num, cert.mu_den) > cert.bound) return false;
    if (span(cert.bound) < 0 || !box_fits(cert.bound, P.size(), budget)) return false;
    return shell_search(P, span(cert.bound), budget, nullptr).outcome == ShellOutcome::Exhausted;
  }
  default: return false;
  }
}

} // namespace neq
