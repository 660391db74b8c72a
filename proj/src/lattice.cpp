#include "neq/lattice.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace neq {

using Rational = boost::multiprecision::cpp_rational;

IntVector AffineLattice::point(const IntVector &params) const {
  if (params.size() != basis.size()) throw std::invalid_argument("lattice parameter count mismatch");
  IntVector y = offset;
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (params[j] != 0)
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += params[j] * basis[j][i];
  return y;
}

void rows_to_matrix(const std::vector<IntPolynomial> &rows, int unknown_count, IntMatrix &A, IntVector &b) {
  A.assign(rows.size(), IntVector(unknown_count, 0));
  b.assign(rows.size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].degree() > 1) throw std::invalid_argument("linear system row has degree > 1");
    for (const auto &[m, c] : rows[r].terms()) {
      if (m.degree() == 0)
        b[r] = -c;
      else if (m.second >= unknown_count)
        throw std::invalid_argument("linear row uses an unknown beyond the declared count");
      else
        A[r][m.second] = c;
    }
  }
}

namespace {

/*
 * Diagonalizes A by unimodular row operations P and column operations Q:
 * P A Q = D with D diagonal in its leading `rank` entries. No divisibility
 * chain is enforced; solving only needs the diagonal shape.
 */
struct Diagonalization {
  IntMatrix D;
  IntMatrix P; // rows x rows
  IntMatrix Q; // cols x cols
  std::size_t rank = 0;
};

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix I(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

Diagonalization diagonalize(const IntMatrix &A, std::size_t cols) {
  const std::size_t rows = A.size();
  Diagonalization s{A, identity_matrix(rows), identity_matrix(cols), 0};
  IntMatrix &D = s.D;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(D[i], D[j]);
    std::swap(s.P[i], s.P[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto &row : D) std::swap(row[i], row[j]);
    for (auto &row : s.Q) std::swap(row[i], row[j]);
  };
  auto add_row = [&](std::size_t target, std::size_t source, const Integer &q) { // row_t -= q row_s
    for (std::size_t k = 0; k < cols; ++k) D[target][k] -= q * D[source][k];
    for (std::size_t k = 0; k < rows; ++k) s.P[target][k] -= q * s.P[source][k];
  };
  auto add_col = [&](std::size_t target, std::size_t source, const Integer &q) { // col_t -= q col_s
    for (std::size_t k = 0; k < rows; ++k) D[k][target] -= q * D[k][source];
    for (std::size_t k = 0; k < cols; ++k) s.Q[k][target] -= q * s.Q[k][source];
  };

  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Smallest nonzero entry of the remaining block becomes the pivot.
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (D[i][j] != 0 && (pi == rows || abs(D[i][j]) < abs(D[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (D[i][t] != 0) {
          add_row(i, t, D[i][t] / D[t][t]);
          if (D[i][t] != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < cols; ++j)
        if (D[t][j] != 0) {
          add_col(j, t, D[t][j] / D[t][t]);
          if (D[t][j] != 0) clean = false;
        }
      if (clean) break;
      // A remainder is smaller than the pivot; move it into place.
      std::size_t bi = t, bj = t;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (D[i][t] != 0 && abs(D[i][t]) < abs(D[bi][bj])) {
          bi = i;
          bj = t;
        }
      for (std::size_t j = t + 1; j < cols; ++j)
        if (D[t][j] != 0 && abs(D[t][j]) < abs(D[bi][bj])) {
          bi = t;
          bj = j;
        }
      if (bi != t) swap_rows(t, bi);
      if (bj != t) swap_cols(t, bj);
    }
    ++t;
  }
  s.rank = t;
  return s;
}

} // namespace

LinearSolution solve_linear_system(const IntMatrix &A, const IntVector &b, int unknown_count) {
  const auto cols = static_cast<std::size_t>(unknown_count);
  const std::size_t rows = A.size();
  Diagonalization s = diagonalize(A, cols);

  IntVector Pb(rows, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < rows; ++k) Pb[i] += s.P[i][k] * b[k];

  IntVector z(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (i < s.rank) {
      const Integer &d = s.D[i][i];
      if (Pb[i] % d != 0) return {std::nullopt, GcdCertificate{s.P[i], abs(d)}};
      z[i] = Pb[i] / d;
    } else if (Pb[i] != 0) {
      return {std::nullopt, GcdCertificate{s.P[i], 0}};
    }
  }

  AffineLattice L;
  L.offset.assign(cols, 0);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t k = 0; k < s.rank; ++k) L.offset[i] += s.Q[i][k] * z[k];
  for (std::size_t j = s.rank; j < cols; ++j) {
    IntVector v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = s.Q[i][j];
    L.basis.push_back(std::move(v));
  }
  return {std::move(L), std::nullopt};
}

LinearSolution solve_linear_system(const std::vector<IntPolynomial> &rows, int unknown_count) {
  IntMatrix A;
  IntVector b;
  rows_to_matrix(rows, unknown_count, A, b);
  return solve_linear_system(A, b, unknown_count);
}

bool verify_gcd_certificate(const IntMatrix &A, const IntVector &b, const GcdCertificate &cert) {
  if (cert.multipliers.size() != A.size() || cert.divisor < 0) return false;
  auto divisible = [&](const Integer &v) { return cert.divisor == 0 ? v == 0 : v % cert.divisor == 0; };
  const std::size_t cols = A.empty() ? 0 : A[0].size();
  for (std::size_t j = 0; j < cols; ++j) {
    Integer s = 0;
    for (std::size_t i = 0; i < A.size(); ++i) s += cert.multipliers[i] * A[i][j];
    if (!divisible(s)) return false;
  }
  Integer rhs = 0;
  for (std::size_t i = 0; i < A.size(); ++i) rhs += cert.multipliers[i] * b[i];
  return !divisible(rhs);
}

bool verify_gcd_certificate(const std::vector<IntPolynomial> &rows, int unknown_count, const GcdCertificate &cert) {
  IntMatrix A;
  IntVector b;
  rows_to_matrix(rows, unknown_count, A, b);
  return verify_gcd_certificate(A, b, cert);
}

void residue_class_system(const AffineLattice &lattice, const std::vector<int> &positions, const IntVector &residues,
                          const Integer &modulus, IntMatrix &A, IntVector &b) {
  if (positions.size() != residues.size()) throw std::invalid_argument("one residue per position required");
  const std::size_t d = lattice.dimension();
  const std::size_t k = positions.size();
  A.assign(k, IntVector(d + k, 0));
  b.assign(k, 0);
  for (std::size_t r = 0; r < k; ++r) {
    const int i = positions[r];
    for (std::size_t j = 0; j < d; ++j) A[r][j] = lattice.basis[j][i];
    A[r][d + r] = modulus;
    b[r] = residues[r] - lattice.offset[i];
  }
}

ClassIntersection intersect_with_residue_class(const AffineLattice &lattice, const std::vector<int> &positions,
                                               const IntVector &residues, const Integer &modulus) {
  if (positions.empty()) return {lattice, std::nullopt};
  const std::size_t d = lattice.dimension();
  const std::size_t k = positions.size();
  IntMatrix A;
  IntVector b;
  residue_class_system(lattice, positions, residues, modulus, A, b);
  LinearSolution sol = solve_linear_system(A, b, static_cast<int>(d + k));
  if (!sol.lattice) return {std::nullopt, sol.certificate};

  // The projection onto the c-coordinates is injective on solutions of the
  // homogeneous system, so projected basis vectors stay independent.
  IntVector c0(sol.lattice->offset.begin(), sol.lattice->offset.begin() + static_cast<std::ptrdiff_t>(d));
  AffineLattice out;
  out.offset = lattice.point(c0);
  for (const auto &w : sol.lattice->basis) {
    IntVector params(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d));
    IntVector v(lattice.ambient(), 0);
    for (std::size_t j = 0; j < d; ++j)
      if (params[j] != 0)
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += params[j] * lattice.basis[j][i];
    out.basis.push_back(std::move(v));
  }
  return {std::move(out), std::nullopt};
}

namespace {

Rational dot(const std::vector<Rational> &a, const std::vector<Rational> &b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer round_nearest(const Rational &q) {
  // floor(q + 1/2)
  Rational shifted = q + Rational(1, 2);
  Integer num = boost::multiprecision::numerator(shifted);
  Integer den = boost::multiprecision::denominator(shifted);
  return floor_div(num, den);
}

std::vector<Rational> to_rational(const IntVector &v) { return {v.begin(), v.end()}; }

} // namespace

AffineLattice reduce_basis(AffineLattice lattice) {
  auto &B = lattice.basis;
  const std::size_t d = B.size();
  if (d > 0) {
    const Rational delta(3, 4);
    auto gram_schmidt = [&](std::vector<std::vector<Rational>> &star, std::vector<std::vector<Rational>> &mu,
                            std::vector<Rational> &norms) {
      star.assign(d, {});
      mu.assign(d, std::vector<Rational>(d, 0));
      norms.assign(d, 0);
      for (std::size_t i = 0; i < d; ++i) {
        star[i] = to_rational(B[i]);
        for (std::size_t j = 0; j < i; ++j) {
          mu[i][j] = dot(to_rational(B[i]), star[j]) / norms[j];
          for (std::size_t k = 0; k < star[i].size(); ++k) star[i][k] -= mu[i][j] * star[j][k];
        }
        norms[i] = dot(star[i], star[i]);
      }
    };
    std::vector<std::vector<Rational>> star, mu;
    std::vector<Rational> norms;
    gram_schmidt(star, mu, norms);
    std::size_t k = 1;
    std::size_t guard = 0;
    while (k < d && ++guard < 100000) {
      for (std::size_t j = k; j-- > 0;) {
        Integer q = round_nearest(mu[k][j]);
        if (q != 0) {
          for (std::size_t i = 0; i < B[k].size(); ++i) B[k][i] -= q * B[j][i];
          gram_schmidt(star, mu, norms);
        }
      }
      if (norms[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]) {
        ++k;
      } else {
        std::swap(B[k], B[k - 1]);
        gram_schmidt(star, mu, norms);
        k = std::max<std::size_t>(k - 1, 1);
      }
    }
    // Babai nearest plane on the offset.
    for (std::size_t j = d; j-- > 0;) {
      Integer q = round_nearest(dot(to_rational(lattice.offset), star[j]) / norms[j]);
      if (q != 0)
        for (std::size_t i = 0; i < lattice.offset.size(); ++i) lattice.offset[i] -= q * B[j][i];
    }
  }
  return lattice;
}

} // namespace neq
