#include "ppursuit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace ppursuit::linalg {

namespace {

// Householder reduction of a symmetric matrix to tridiagonal form, followed by
// the implicit-shift QL iteration. This is the classic tred2/tql2 pair; `z` is
// overwritten with the accumulated orthogonal transform when `want_vectors`
// is set, so after ql_iterate the eigenvector for d[j] is column j of z.
void householder_tridiag(Matrix& z, Vector& d, Vector& e, bool want_vectors) {
  const std::size_t n = z.rows();
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t l = i - 1;
    double h = 0.0;
    double sc = 0.0;
    if (l > 0) {
      for (std::size_t k = 0; k <= l; ++k) sc += std::abs(z(i, k));
      if (sc == 0.0) {
        e[i] = z(i, l);
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          z(i, k) /= sc;
          h += z(i, k) * z(i, k);
        }
        double f = z(i, l);
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[i] = sc * g;
        h -= f * g;
        z(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          if (want_vectors) z(j, i) = z(i, j) / h;
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
          for (std::size_t k = j + 1; k <= l; ++k) g += z(k, j) * z(i, k);
          e[j] = g / h;
          f += e[j] * z(i, j);
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = z(i, j);
          g = e[j] - hh * f;
          e[j] = g;
          for (std::size_t k = 0; k <= j; ++k) z(j, k) -= f * e[k] + g * z(i, k);
        }
      }
    } else {
      e[i] = z(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (want_vectors) {
      if (d[i] != 0.0) {
        for (std::size_t j = 0; j < i; ++j) {
          double g = 0.0;
          for (std::size_t k = 0; k < i; ++k) g += z(i, k) * z(k, j);
          for (std::size_t k = 0; k < i; ++k) z(k, j) -= g * z(k, i);
        }
      }
      d[i] = z(i, i);
      z(i, i) = 1.0;
      for (std::size_t j = 0; j < i; ++j) z(j, i) = z(i, j) = 0.0;
    } else {
      d[i] = z(i, i);
    }
  }
}

void ql_iterate(Matrix& z, Vector& d, Vector& e, bool want_vectors) {
  const std::size_t n = d.size();
  if (n < 2) return;
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 64) {
          throw Error(ExitCode::dimension, "eigensolver failed to converge");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        const double sgn = (g >= 0.0) ? std::abs(r) : -std::abs(r);
        g = d[m] - d[l] + e[l] / (g + sgn);
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (std::size_t ip1 = m; ip1 > l; --ip1) {
          const std::size_t i = ip1 - 1;
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (want_vectors) {
            for (std::size_t k = 0; k < n; ++k) {
              f = z(k, i + 1);
              z(k, i + 1) = s * z(k, i) + c * f;
              z(k, i) = c * z(k, i) - s * f;
            }
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

void check_symmetric(const Matrix& s, const char* who) {
  if (s.rows() != s.cols()) {
    throw Error(ExitCode::dimension, std::string(who) + ": matrix must be square");
  }
  double max_abs = 0.0;
  double max_asym = 0.0;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = i; j < s.cols(); ++j) {
      max_abs = std::max(max_abs, std::abs(s(i, j)));
      max_asym = std::max(max_asym, std::abs(s(i, j) - s(j, i)));
    }
  }
  if (max_asym > 1e-10 * std::max(1.0, max_abs)) {
    throw Error(ExitCode::dimension, std::string(who) + ": matrix is not symmetric");
  }
}

}  // namespace

Vector column_means(const Matrix& x) {
  Vector mu(x.cols(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double* r = x.row(i);
    for (std::size_t j = 0; j < x.cols(); ++j) mu[j] += r[j];
  }
  const double inv = 1.0 / static_cast<double>(x.rows());
  for (double& v : mu) v *= inv;
  return mu;
}

Matrix centered(const Matrix& x) {
  const Vector mu = column_means(x);
  Matrix out = x;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    double* r = out.row(i);
    for (std::size_t j = 0; j < out.cols(); ++j) r[j] -= mu[j];
  }
  return out;
}

Matrix covariance(const Matrix& x) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  if (n < 2) {
    throw Error(ExitCode::dimension, "covariance requires at least two rows");
  }
  require_finite(x, "covariance input");
  const Vector mu = column_means(x);
  Matrix c(d, d, 0.0);
  Vector dev(d);
  for (std::size_t i = 0; i < n; ++i) {
    const double* r = x.row(i);
    for (std::size_t j = 0; j < d; ++j) dev[j] = r[j] - mu[j];
    for (std::size_t j = 0; j < d; ++j) {
      const double dj = dev[j];
      if (dj == 0.0) continue;
      double* cr = c.row(j);
      for (std::size_t k = j; k < d; ++k) cr[k] += dj * dev[k];
    }
  }
  const double inv = 1.0 / static_cast<double>(n - 1);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j; k < d; ++k) {
      const double v = c(j, k) * inv;
      c(j, k) = v;
      c(k, j) = v;
    }
  }
  return c;
}

SymEigen sym_eigen(const Matrix& s) {
  check_symmetric(s, "sym_eigen");
  require_finite(s, "sym_eigen input");
  const std::size_t n = s.rows();
  Matrix z = s;
  Vector d(n, 0.0);
  Vector e(n, 0.0);
  householder_tridiag(z, d, e, true);
  ql_iterate(z, d, e, true);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });

  SymEigen out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.eigenvalues[j] = d[src];
    // Sign convention: largest-magnitude entry positive, ties -> lowest index.
    std::size_t pivot = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = std::abs(z(i, src));
      if (a > best) {
        best = a;
        pivot = i;
      }
    }
    const double flip = (z(pivot, src) < 0.0) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = flip * z(i, src);
  }
  return out;
}

Vector sym_eigenvalues_ascending(const Matrix& s) {
  check_symmetric(s, "sym_eigenvalues");
  require_finite(s, "sym_eigenvalues input");
  const std::size_t n = s.rows();
  Matrix z = s;
  Vector d(n, 0.0);
  Vector e(n, 0.0);
  householder_tridiag(z, d, e, false);
  ql_iterate(z, d, e, false);
  std::sort(d.begin(), d.end());
  return d;
}

Matrix standardize(const Matrix& x) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  if (n < 2) {
    throw Error(ExitCode::dimension, "standardize requires at least two rows");
  }
  require_finite(x, "standardize input");
  const Vector mu = column_means(x);
  Vector ssd(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* r = x.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double t = r[j] - mu[j];
      ssd[j] += t * t;
    }
  }
  Vector inv_sd(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (ssd[j] == 0.0) {
      throw Error(ExitCode::dimension,
                  "standardize: column " + std::to_string(j + 1) + " has zero variance");
    }
    inv_sd[j] = 1.0 / std::sqrt(ssd[j] / static_cast<double>(n - 1));
  }
  Matrix out(n, d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* r = x.row(i);
    double* o = out.row(i);
    for (std::size_t j = 0; j < d; ++j) o[j] = (r[j] - mu[j]) * inv_sd[j];
  }
  return out;
}

WhitenResult whiten(const Matrix& x) {
  const Matrix c = covariance(x);
  const SymEigen eig = sym_eigen(c);
  const std::size_t d = c.rows();
  const double lmax = eig.eigenvalues.front();
  const double lmin = eig.eigenvalues.back();
  if (lmax <= 0.0 || lmin <= 0.0 || lmax / lmin > 1e12) {
    throw Error(ExitCode::dimension,
                "whiten: covariance is rank deficient or too ill-conditioned "
                "(condition limit 1e12); reduce dimensionality first");
  }
  Vector inv_sqrt(d);
  for (std::size_t j = 0; j < d; ++j) inv_sqrt[j] = 1.0 / std::sqrt(eig.eigenvalues[j]);

  // W = V diag(1/sqrt(lambda)) V^T — symmetric, so whitening is rotation-free.
  Matrix w(d, d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j; k < d; ++k) {
      double s = 0.0;
      for (std::size_t l = 0; l < d; ++l) {
        s += eig.eigenvectors(j, l) * inv_sqrt[l] * eig.eigenvectors(k, l);
      }
      w(j, k) = s;
      w(k, j) = s;
    }
  }
  WhitenResult out;
  out.data = matmul(centered(x), w);
  out.transform = std::move(w);
  return out;
}

Matrix cholesky(const Matrix& s) {
  check_symmetric(s, "cholesky");
  const std::size_t n = s.rows();
  Matrix l(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = s(i, j);
      for (std::size_t k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
      if (i == j) {
        if (sum <= 0.0) {
          throw Error(ExitCode::dimension, "cholesky: matrix is not positive definite");
        }
        l(i, i) = std::sqrt(sum);
      } else {
        l(i, j) = sum / l(j, j);
      }
    }
  }
  return l;
}

Vector cholesky_solve(const Matrix& l, const Vector& b) {
  const std::size_t n = l.rows();
  if (b.size() != n) {
    throw Error(ExitCode::dimension, "cholesky_solve: dimension mismatch");
  }
  Vector y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = b[i];
    for (std::size_t k = 0; k < i; ++k) sum -= l(i, k) * y[k];
    y[i] = sum / l(i, i);
  }
  Vector x(n, 0.0);
  for (std::size_t ip1 = n; ip1 > 0; --ip1) {
    const std::size_t i = ip1 - 1;
    double sum = y[i];
    for (std::size_t k = i + 1; k < n; ++k) sum -= l(k, i) * x[k];
    x[i] = sum / l(i, i);
  }
  return x;
}

}  // namespace ppursuit::linalg
