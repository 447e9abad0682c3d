#include "tshift/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace tshift {
namespace {

void check_square(std::size_t rows, std::size_t cols) {
  if (rows != cols) throw std::invalid_argument("matrix is not square");
}

}  // namespace

Rational determinant(Matrix<Rational> m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    check_square(n, m[c].size());
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

Real determinant(Matrix<Real> m) {
  const std::size_t n = m.size();
  Real det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    check_square(n, m[c].size());
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (abs(m[r][c]) > abs(m[p][c])) p = r;
    }
    if (m[p][c] == 0) return Real(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Real f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

bool solve(Matrix<Real> a, std::vector<Real> b, std::vector<Real>& x, const Real& pivot_floor) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("solve: size mismatch");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (abs(a[r][c]) > abs(a[p][c])) p = r;
    }
    if (abs(a[p][c]) <= pivot_floor) return false;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const Real f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  x.assign(n, Real(0));
  for (std::size_t i = n; i-- > 0;) {
    Real s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return true;
}

bool solve(Matrix<Rational> a, std::vector<Rational> b, std::vector<Rational>& x) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("solve: size mismatch");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return false;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  x.assign(n, Rational(0));
  for (std::size_t i = n; i-- > 0;) {
    Rational s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return true;
}

Matrix<Rational> submatrix(const Matrix<Rational>& m, const std::vector<std::size_t>& idx) {
  Matrix<Rational> out(idx.size(), std::vector<Rational>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) out[i][j] = m.at(idx[i]).at(idx[j]);
  }
  return out;
}

void for_each_subset(std::size_t n,
                     const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  for (std::size_t size = 1; size <= n; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      if (!visit(idx)) return;
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == n - size + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

std::vector<Real> symmetric_eigenvalues(Matrix<Real> a, const Real& tolerance,
                                        std::size_t max_sweeps) {
  const std::size_t n = a.size();
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    Real off = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    }
    if (off <= tolerance * tolerance) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0) continue;
        const Real theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const Real sign = theta >= 0 ? Real(1) : Real(-1);
        const Real t = sign / (abs(theta) + sqrt(theta * theta + 1));
        const Real c = 1 / sqrt(t * t + 1);
        const Real s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const Real akp = a[k][p];
          const Real akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Real apk = a[p][k];
          const Real aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<Real> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(a[i][i]);
  return out;
}

}  // namespace tshift
