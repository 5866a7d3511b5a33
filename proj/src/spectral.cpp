#include "mugraph/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

namespace mugraph {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_connected(const Graph& g) {
  const auto dist = bfs_distances(g, 0);
  return std::find(dist.begin(), dist.end(), -1) == dist.end();
}

// Deterministic pseudo-random doubles in [-1, 1); fixed-seed splitmix64 so
// results are identical across standard library implementations.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}
  double next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return double(z >> 11) * (2.0 / 9007199254740992.0) - 1.0;
  }

 private:
  std::uint64_t state_;
};

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

void scale_to_unit(std::vector<double>& x) {
  const double n = norm2(x);
  if (n > 0.0)
    for (double& v : x) v /= n;
}

// Householder reduction of a symmetric matrix to tridiagonal form.
// d: diagonal; e: subdiagonal with e[i] coupling rows i−1 and i (e[0] = 0).
// When accumulate is true, z holds the orthogonal transform column-major
// (z[j] = column j), so tridiagonal coordinates y map back as x = Z·y.
struct Tridiagonal {
  std::vector<double> d;
  std::vector<double> e;
  std::vector<std::vector<double>> z;
};

Tridiagonal householder_tridiagonalize(const SymMatrix& m, bool accumulate) {
  const int n = m.order();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m(i, j);

  std::vector<double> d(n, 0.0), e(n, 0.0);
  std::vector<double> p(n), q(n);

  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (int k = 0; k <= l; ++k) scale += std::fabs(a[i][k]);
      if (scale == 0.0) {
        e[i] = a[i][l];
      } else {
        for (int k = 0; k <= l; ++k) {
          a[i][k] /= scale;
          h += a[i][k] * a[i][k];
        }
        double f = a[i][l];
        const double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a[i][l] = f - g;
        // p = A·u / h over the leading block, reading the lower triangle only.
        std::fill(p.begin(), p.begin() + l + 1, 0.0);
        for (int j = 0; j <= l; ++j) {
          const double* row = a[j].data();
          const double uj = a[i][j];
          double s = row[j] * uj;
          for (int k = 0; k < j; ++k) {
            s += row[k] * a[i][k];
            p[k] += row[k] * uj;
          }
          p[j] += s;
        }
        double f_sum = 0.0;
        for (int j = 0; j <= l; ++j) {
          p[j] /= h;
          f_sum += p[j] * a[i][j];
        }
        const double hh = f_sum / (h + h);
        for (int j = 0; j <= l; ++j) q[j] = p[j] - hh * a[i][j];
        // Rank-two update of the lower triangle: A ← A − u·qᵀ − q·uᵀ.
        for (int j = 0; j <= l; ++j) {
          const double uj = a[i][j];
          const double qj = q[j];
          double* row = a[j].data();
          for (int k = 0; k <= j; ++k) row[k] -= uj * q[k] + qj * a[i][k];
        }
        if (accumulate)
          for (int k = 0; k <= l; ++k) a[k][i] = a[i][k] / h;
      }
    } else {
      e[i] = a[i][l];
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;

  Tridiagonal out;
  out.e = e;
  if (!accumulate) {
    for (int i = 0; i < n; ++i) d[i] = a[i][i];
    out.d = std::move(d);
    return out;
  }

  // Accumulate the product of the Householder reflections into `a`.
  std::vector<double> gv(n);
  for (int i = 0; i < n; ++i) {
    const int l = i - 1;
    if (d[i] != 0.0) {
      std::fill(gv.begin(), gv.begin() + l + 1, 0.0);
      for (int k = 0; k <= l; ++k) {
        const double f = a[i][k];
        if (f != 0.0) {
          const double* row = a[k].data();
          for (int j = 0; j <= l; ++j) gv[j] += f * row[j];
        }
      }
      for (int k = 0; k <= l; ++k) {
        const double ck = a[k][i];
        double* row = a[k].data();
        for (int j = 0; j <= l; ++j) row[j] -= gv[j] * ck;
      }
    }
    d[i] = a[i][i];
    a[i][i] = 1.0;
    for (int j = 0; j <= l; ++j) {
      a[j][i] = 0.0;
      a[i][j] = 0.0;
    }
  }
  out.d = std::move(d);
  out.z.assign(n, std::vector<double>(n));
  for (int col = 0; col < n; ++col)
    for (int row = 0; row < n; ++row) out.z[col][row] = a[row][col];
  return out;
}

// Implicit-shift QL on a tridiagonal matrix.  d is the diagonal; e[i]
// couples rows i−1 and i on entry.  When z is non-null its columns are
// rotated along, so column k ends up as the eigenvector of d[k].  Values
// come out unsorted.
void ql_implicit_shift(std::vector<double>& d, std::vector<double>& e,
                       std::vector<std::vector<double>>* z, int max_sweeps) {
  const int n = int(d.size());
  if (n <= 1) return;
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= kEps * dd) break;
      }
      if (m != l) {
        if (iter++ == max_sweeps)
          throw Error("eigensolver did not converge: eigenvalue index " +
                      std::to_string(l) + " still coupled after " +
                      std::to_string(max_sweeps) + " sweeps");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z) {
            double* zi = (*z)[i].data();
            double* zi1 = (*z)[i + 1].data();
            for (int k = 0; k < n; ++k) {
              f = zi1[k];
              zi1[k] = s * zi[k] + c * f;
              zi[k] = c * zi[k] - s * f;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

std::vector<double> sorted_values(std::vector<double> d, std::vector<double> e,
                                  int max_sweeps) {
  ql_implicit_shift(d, e, nullptr, max_sweeps);
  std::sort(d.begin(), d.end());
  return d;
}

// One solve of (T − sigma·I)·x = rhs, reusing a banded LU factorization with
// partial pivoting.  Near-singular shifts are expected (sigma is an
// eigenvalue); zero pivots are replaced by a tiny value, which inverse
// iteration tolerates.
class ShiftedTridiagSolver {
 public:
  ShiftedTridiagSolver(const std::vector<double>& d, const std::vector<double>& e,
                       double sigma)
      : n_(int(d.size())), u0_(n_), u1_(n_, 0.0), u2_(n_, 0.0), mult_(n_, 0.0),
        swap_(n_, 0) {
    double scale = std::fabs(sigma);
    for (int i = 0; i < n_; ++i) scale = std::max(scale, std::fabs(d[i]));
    for (int i = 1; i < n_; ++i) scale = std::max(scale, std::fabs(e[i]));
    tiny_ = kEps * kEps * (scale + 1.0);

    double bi = d[0] - sigma;
    double ci = (n_ > 1) ? e[1] : 0.0;
    double di = 0.0;
    for (int i = 0; i + 1 < n_; ++i) {
      const double sub = e[i + 1];
      const double bn = d[i + 1] - sigma;
      const double cn = (i + 2 < n_) ? e[i + 2] : 0.0;
      if (std::fabs(bi) >= std::fabs(sub)) {
        double pivot = bi;
        if (pivot == 0.0) pivot = tiny_;
        const double m = sub / pivot;
        u0_[i] = pivot;
        u1_[i] = ci;
        u2_[i] = di;
        mult_[i] = m;
        swap_[i] = 0;
        bi = bn - m * ci;
        ci = cn - m * di;
        di = 0.0;
      } else {
        const double m = bi / sub;
        u0_[i] = sub;
        u1_[i] = bn;
        u2_[i] = cn;
        mult_[i] = m;
        swap_[i] = 1;
        bi = ci - m * bn;
        ci = di - m * cn;
        di = 0.0;
      }
    }
    u0_[n_ - 1] = (bi == 0.0) ? tiny_ : bi;
    u1_[n_ - 1] = 0.0;
    u2_[n_ - 1] = 0.0;
  }

  void solve(std::vector<double>& x) const {
    for (int i = 0; i + 1 < n_; ++i) {
      if (swap_[i]) std::swap(x[i], x[i + 1]);
      x[i + 1] -= mult_[i] * x[i];
    }
    for (int i = n_ - 1; i >= 0; --i) {
      double v = x[i];
      if (i + 1 < n_) v -= u1_[i] * x[i + 1];
      if (i + 2 < n_) v -= u2_[i] * x[i + 2];
      x[i] = v / u0_[i];
    }
  }

 private:
  int n_;
  double tiny_;
  std::vector<double> u0_, u1_, u2_, mult_;
  std::vector<char> swap_;
};

// Inverse iteration on a tridiagonal matrix at shift sigma, deflating the
// direction `avoid` (a unit vector, typically the known kernel) out of every
// iterate.  Returns a unit vector.
std::vector<double> tridiag_inverse_iteration(const std::vector<double>& d,
                                              const std::vector<double>& e,
                                              double sigma,
                                              const std::vector<double>& avoid,
                                              int cap) {
  const int n = int(d.size());
  const ShiftedTridiagSolver solver(d, e, sigma);
  SplitMix rng(0x2545f4914f6cdd1dULL);

  auto deflate = [&](std::vector<double>& x) {
    if (avoid.empty()) return;
    double dot = 0.0;
    for (int i = 0; i < n; ++i) dot += x[i] * avoid[i];
    for (int i = 0; i < n; ++i) x[i] -= dot * avoid[i];
  };

  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) y[i] = rng.next();
  deflate(y);
  scale_to_unit(y);

  std::vector<double> next(n);
  for (int iter = 0; iter < cap; ++iter) {
    next = y;
    solver.solve(next);
    deflate(next);
    const double nn = norm2(next);
    if (nn == 0.0 || !std::isfinite(nn)) {
      for (int i = 0; i < n; ++i) next[i] = rng.next();
      deflate(next);
      scale_to_unit(next);
      y = next;
      continue;
    }
    for (double& v : next) v /= nn;
    double diff_minus = 0.0, diff_plus = 0.0;
    for (int i = 0; i < n; ++i) {
      const double dm = next[i] - y[i];
      const double dp = next[i] + y[i];
      diff_minus += dm * dm;
      diff_plus += dp * dp;
    }
    y = next;
    if (std::min(diff_minus, diff_plus) <= 1e-26) break;
  }
  return y;
}

// y = L·x through the adjacency lists (no dense matrix).
std::vector<double> laplacian_apply(const Graph& g, const std::vector<double>& x) {
  std::vector<double> y(g.n);
  for (int v = 0; v < g.n; ++v) {
    double s = double(g.degree(v)) * x[v];
    for (int w : g.adj[v]) s -= x[w];
    y[v] = s;
  }
  return y;
}

double edge_sum(const Graph& g, const std::vector<double>& x) {
  double s = 0.0;
  for (int v = 0; v < g.n; ++v)
    for (int w : g.adj[v])
      if (w > v) {
        const double dvw = x[v] - x[w];
        s += dvw * dvw;
      }
  return s;
}

void deflate_against_ones(std::vector<double>& x) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / double(x.size());
  for (double& v : x) v -= mean;
}

void canonical_sign(std::vector<double>& x) {
  for (double v : x) {
    if (v != 0.0) {
      if (v < 0.0)
        for (double& w : x) w = -w;
      return;
    }
  }
}

double orth_defect(const std::vector<double>& x) {
  const double s = std::accumulate(x.begin(), x.end(), 0.0);
  return std::fabs(s) / std::sqrt(double(x.size()));
}

int max_degree(const Graph& g) {
  int d = 0;
  for (int v = 0; v < g.n; ++v) d = std::max(d, g.degree(v));
  return d;
}

// Shared tail of both fiedler paths: certify the candidate vector, refine mu
// through the edge-sum Rayleigh quotient, and package the result.
FiedlerResult finish_fiedler(const Graph& g, std::vector<double> x,
                             const std::string& method, double next_eigenvalue,
                             const Tolerances& tol) {
  deflate_against_ones(x);
  scale_to_unit(x);
  canonical_sign(x);
  const double mu = edge_sum(g, x);  // ‖x‖ = 1, so this is the Rayleigh quotient

  FiedlerResult out;
  out.mu = mu;
  out.method = method;
  out.next_eigenvalue = next_eigenvalue;
  out.orthogonality_defect = orth_defect(x);
  const std::vector<double> lx = laplacian_apply(g, x);
  double r2 = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double ri = lx[i] - mu * x[i];
    r2 += ri * ri;
  }
  out.residual = std::sqrt(r2);
  out.vector = std::move(x);

  const double residual_bound = tol.residual_scale * (1.0 + double(max_degree(g)));
  if (out.residual > residual_bound)
    throw Error(method + " fiedler computation failed its certificate: residual " +
                fmt(out.residual) + " exceeds " + fmt(residual_bound));
  if (std::fabs(norm2(out.vector) - 1.0) > tol.unit_norm)
    throw Error(method + " fiedler computation produced a non-unit vector");
  if (out.orthogonality_defect > tol.orthogonality)
    throw Error(method + " fiedler computation lost orthogonality to the all-ones vector: defect " +
                fmt(out.orthogonality_defect));
  if (out.mu <= tol.connectivity_floor)
    throw Error(method + " fiedler computation returned mu = " + fmt(out.mu) +
                " for a connected graph; expected a strictly positive value");
  return out;
}

}  // namespace

SymMatrix::SymMatrix(int order) : order_(order) {
  if (order < 1)
    throw Error("matrix order must be at least 1, got " + std::to_string(order));
  a_.assign(std::size_t(order) * order, 0.0);
}

void SymMatrix::set(int i, int j, double value) {
  a_[std::size_t(i) * order_ + j] = value;
  a_[std::size_t(j) * order_ + i] = value;
}

double SymMatrix::inf_norm() const {
  double best = 0.0;
  for (int i = 0; i < order_; ++i) {
    double row = 0.0;
    for (int j = 0; j < order_; ++j) row += std::fabs((*this)(i, j));
    best = std::max(best, row);
  }
  return best;
}

std::string FiedlerResult::csv_row() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%s,%.17g", vector.size(), mu,
                residual, method.c_str(), orthogonality_defect);
  return buf;
}

SymMatrix laplacian(const Graph& g) {
  SymMatrix m(g.n);
  for (int v = 0; v < g.n; ++v) {
    m.set(v, v, double(g.degree(v)));
    for (int w : g.adj[v])
      if (w > v) m.set(v, w, -1.0);
  }
  return m;
}

SymMatrix normalized_laplacian(const Graph& g) {
  SymMatrix m(g.n);
  std::vector<double> inv_sqrt(g.n, 0.0);
  for (int v = 0; v < g.n; ++v) {
    const int d = g.degree(v);
    if (d > 0) {
      m.set(v, v, 1.0);
      inv_sqrt[v] = 1.0 / std::sqrt(double(d));
    }
  }
  for (int v = 0; v < g.n; ++v)
    for (int w : g.adj[v])
      if (w > v) m.set(v, w, -inv_sqrt[v] * inv_sqrt[w]);
  return m;
}

EigenSystem eigen_full(const SymMatrix& m, const Tolerances& tol) {
  const int n = m.order();
  Tridiagonal t = householder_tridiagonalize(m, true);
  ql_implicit_shift(t.d, t.e, &t.z, tol.ql_max_sweeps);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return t.d[a] < t.d[b]; });

  EigenSystem out;
  out.values.resize(n);
  out.vectors.resize(n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = t.d[order[k]];
    out.vectors[k] = std::move(t.z[order[k]]);
  }

  const double bound = tol.eigen_residual_scale * (1.0 + m.inf_norm());
  for (int k = 0; k < n; ++k) {
    double r2 = 0.0;
    const std::vector<double>& v = out.vectors[k];
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += m(i, j) * v[j];
      const double ri = s - out.values[k] * v[i];
      r2 += ri * ri;
    }
    if (std::sqrt(r2) > bound)
      throw Error("eigensolver residual check failed at eigenvalue index " +
                  std::to_string(k) + ": " + fmt(std::sqrt(r2)) + " exceeds " +
                  fmt(bound));
  }
  return out;
}

std::vector<double> eigenvalues_only(const SymMatrix& m, const Tolerances& tol) {
  Tridiagonal t = householder_tridiagonalize(m, false);
  return sorted_values(std::move(t.d), std::move(t.e), tol.ql_max_sweeps);
}

FiedlerResult fiedler(const Graph& g, const Tolerances& tol) {
  if (g.n < 2)
    throw Error("fiedler vector undefined: need at least 2 vertices, got " +
                std::to_string(g.n));
  if (!is_connected(g))
    throw Error("fiedler vector undefined for a disconnected graph "
                "(second Laplacian eigenvalue is 0)");

  const SymMatrix lap = laplacian(g);
  Tridiagonal t = householder_tridiagonalize(lap, true);
  const std::vector<double> values =
      sorted_values(t.d, t.e, tol.ql_max_sweeps);
  const double sigma = values[1];
  const double next = (g.n >= 3) ? values[2]
                                 : std::numeric_limits<double>::quiet_NaN();

  // Kernel of the Laplacian in tridiagonal coordinates: Zᵀ·(1/√n).
  const int n = g.n;
  std::vector<double> kernel(n);
  const double inv_sqrt_n = 1.0 / std::sqrt(double(n));
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int r = 0; r < n; ++r) s += t.z[i][r];
    kernel[i] = s * inv_sqrt_n;
  }
  scale_to_unit(kernel);

  const std::vector<double> y = tridiag_inverse_iteration(
      t.d, t.e, sigma, kernel, tol.inverse_iteration_cap);

  std::vector<double> x(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double yi = y[i];
    if (yi == 0.0) continue;
    const double* col = t.z[i].data();
    for (int r = 0; r < n; ++r) x[r] += yi * col[r];
  }
  return finish_fiedler(g, std::move(x), "dense", next, tol);
}

FiedlerResult fiedler(const Graph& g, const CellPartition& cells,
                      const Tolerances& tol) {
  if (g.n < 2)
    throw Error("fiedler vector undefined: need at least 2 vertices, got " +
                std::to_string(g.n));
  if (!is_connected(g))
    throw Error("fiedler vector undefined for a disconnected graph "
                "(second Laplacian eigenvalue is 0)");
  QuotientLift lift = quotient_mu(g, cells, tol);
  return finish_fiedler(g, std::move(lift.lifted), "quotient",
                        std::numeric_limits<double>::quiet_NaN(), tol);
}

double rayleigh(const Graph& g, const std::vector<double>& x) {
  if (int(x.size()) != g.n)
    throw Error("rayleigh quotient: vector length " + std::to_string(x.size()) +
                " does not match vertex count " + std::to_string(g.n));
  double nrm2 = 0.0;
  for (double v : x) nrm2 += v * v;
  if (nrm2 == 0.0) throw Error("rayleigh quotient undefined for the zero vector");
  return edge_sum(g, x) / nrm2;
}

double deflated_bound(const Graph& g, const std::vector<double>& x) {
  if (int(x.size()) != g.n)
    throw Error("deflated bound: vector length " + std::to_string(x.size()) +
                " does not match vertex count " + std::to_string(g.n));
  std::vector<double> y = x;
  deflate_against_ones(y);
  double ymax = 0.0, xmax = 0.0;
  for (int i = 0; i < g.n; ++i) {
    ymax = std::max(ymax, std::fabs(y[i]));
    xmax = std::max(xmax, std::fabs(x[i]));
  }
  if (ymax <= 16.0 * kEps * xmax || (ymax == 0.0 && xmax == 0.0))
    throw Error("deflated bound undefined: vector is a multiple of the all-ones vector");
  return rayleigh(g, y);
}

double test_vector_bound(const GammaSpec& spec) {
  spec.validate();
  const FamilyGraph fam = gamma_d(spec);
  const Graph& g = fam.graph;
  const auto& cells = fam.cells.cells;
  const int m = spec.total_m();

  if (m == 1) {
    // The cosine vector is constant for a single block; a one-step vector
    // (indicator of the first cell) still certifies a finite upper bound.
    std::vector<double> y(g.n, 0.0);
    for (int v : cells[0]) y[v] = 1.0;
    return deflated_bound(g, y);
  }

  constexpr double kPi = 3.14159265358979323846;
  std::vector<double> x(m + 2, 0.0);  // 1-indexed; x[m+1] mirrors x[m]
  const double amp = std::sqrt(2.0 / double(m));
  for (int i = 1; i <= m; ++i)
    x[i] = amp * std::cos((2.0 * i - 1.0) * kPi / (2.0 * m));
  x[m + 1] = x[m];

  std::vector<double> y(g.n, 0.0);
  int block = 0;  // 0-indexed global block number
  for (std::size_t seg = 0; seg < spec.triples.size(); ++seg) {
    const double a = spec.triples[seg][0];
    const double b = spec.triples[seg][1];
    const double c = spec.triples[seg][2];
    for (int rep = 0; rep < spec.ms[seg]; ++rep, ++block) {
      const double xi = x[block + 1];
      const double xn = x[block + 2];
      const double first = xi;
      const double second = ((a + b) * xi + c * xn) / (a + b + c);
      const double third = (b * xi + (a + c) * xn) / (a + b + c);
      for (int v : cells[3 * block]) y[v] = first;
      for (int v : cells[3 * block + 1]) y[v] = second;
      for (int v : cells[3 * block + 2]) y[v] = third;
    }
  }
  return deflated_bound(g, y);
}

SymMatrix quotient_matrix(const Graph& g, const CellPartition& cells) {
  cells.validate(g);
  const EquitableResult res = is_equitable(g, cells);
  if (const auto* w = std::get_if<EquitableWitness>(&res))
    throw Error("quotient requires an equitable partition: vertices " +
                std::to_string(w->u) + " and " + std::to_string(w->v) +
                " in cell " + std::to_string(w->cell) +
                " differ on neighbor counts toward cell " +
                std::to_string(w->target_cell));
  const auto& q = std::get<std::vector<std::vector<int>>>(res);
  const int k = int(q.size());

  SymMatrix m(k);
  for (int i = 0; i < k; ++i) {
    long long deg = 0;
    for (int j = 0; j < k; ++j) deg += q[i][j];
    m.set(i, i, double(deg - q[i][i]));
    for (int j = i + 1; j < k; ++j)
      if (q[i][j] > 0)
        m.set(i, j, -std::sqrt(double(q[i][j]) * double(q[j][i])));
  }
  return m;
}

QuotientLift quotient_mu(const Graph& g, const CellPartition& cells,
                         const Tolerances& tol) {
  const SymMatrix m = quotient_matrix(g, cells);
  if (m.order() < 2)
    throw Error("quotient inapplicable: the partition has a single cell, "
                "so no second eigenvalue exists");
  const EigenSystem es = eigen_full(m, tol);

  const int k = m.order();
  std::vector<double> inv_sqrt_size(k);
  for (int i = 0; i < k; ++i)
    inv_sqrt_size[i] = 1.0 / std::sqrt(double(cells.cells[i].size()));

  std::vector<double> x(g.n, 0.0);
  for (int i = 0; i < k; ++i) {
    const double value = es.vectors[1][i] * inv_sqrt_size[i];
    for (int v : cells.cells[i]) x[v] = value;
  }
  deflate_against_ones(x);
  scale_to_unit(x);
  canonical_sign(x);

  const double mu = edge_sum(g, x);
  const std::vector<double> lx = laplacian_apply(g, x);
  double r2 = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double ri = lx[i] - mu * x[i];
    r2 += ri * ri;
  }
  const double residual = std::sqrt(r2);
  const double bound = tol.residual_scale * (1.0 + double(max_degree(g)));
  if (residual > bound)
    throw Error("quotient inapplicable: lifted vector has residual " +
                fmt(residual) + " exceeding " + fmt(bound) +
                "; the second eigenvector is not constant on these cells");
  return QuotientLift{mu, std::move(x)};
}

double relaxation_time(const Graph& g, const Tolerances& tol) {
  if (g.n < 2)
    throw Error("relaxation time undefined: need at least 2 vertices, got " +
                std::to_string(g.n));
  if (!is_connected(g))
    throw Error("relaxation time undefined for a disconnected graph");

  const SymMatrix nl = normalized_laplacian(g);
  Tridiagonal t = householder_tridiagonalize(nl, true);
  const std::vector<double> values = sorted_values(t.d, t.e, tol.ql_max_sweeps);
  const double sigma = values[1];

  // Kernel of the normalized Laplacian: (√deg_v), mapped to tridiagonal
  // coordinates through Zᵀ.
  const int n = g.n;
  std::vector<double> root_deg(n);
  for (int v = 0; v < n; ++v) root_deg[v] = std::sqrt(double(g.degree(v)));
  scale_to_unit(root_deg);
  std::vector<double> kernel(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    const double* col = t.z[i].data();
    for (int r = 0; r < n; ++r) s += col[r] * root_deg[r];
    kernel[i] = s;
  }
  scale_to_unit(kernel);

  const std::vector<double> y = tridiag_inverse_iteration(
      t.d, t.e, sigma, kernel, tol.inverse_iteration_cap);
  std::vector<double> z(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double yi = y[i];
    if (yi == 0.0) continue;
    const double* col = t.z[i].data();
    for (int r = 0; r < n; ++r) z[r] += yi * col[r];
  }
  // Deflate the kernel direction and refine the eigenvalue via the
  // normalized edge form Σ_{uv∈E}(z_u/√d_u − z_v/√d_v)².
  double dot = 0.0;
  for (int v = 0; v < n; ++v) dot += z[v] * root_deg[v];
  for (int v = 0; v < n; ++v) z[v] -= dot * root_deg[v];
  scale_to_unit(z);

  std::vector<double> scaled(n);
  for (int v = 0; v < n; ++v) scaled[v] = z[v] / std::sqrt(double(g.degree(v)));
  const double lambda2 = edge_sum(g, scaled);
  if (lambda2 <= tol.connectivity_floor)
    throw Error("relaxation time computation returned a non-positive spectral gap " +
                fmt(lambda2) + " for a connected graph");
  return 1.0 / lambda2;
}

StructureReport fiedler_structure_check(const Graph& g, const FiedlerResult& f,
                                        const CellPartition* cells,
                                        const Tolerances& tol) {
  StructureReport rep;
  const std::vector<double>& x = f.vector;
  const int n = g.n;
  double xmax = 0.0;
  for (double v : x) xmax = std::max(xmax, std::fabs(v));
  const double eps = tol.support_eps_scale * xmax;

  // (a) sign-support connectivity, both sides.
  auto side_connected = [&](bool nonneg) {
    std::vector<char> in(n, 0);
    int count = 0, start = -1;
    for (int v = 0; v < n; ++v) {
      const bool member = nonneg ? (x[v] >= -eps) : (x[v] <= eps);
      if (member) {
        in[v] = 1;
        ++count;
        if (start < 0) start = v;
      }
    }
    if (count == 0) return true;  // vacuous; cannot happen for a unit vector ⊥ 1
    std::vector<char> seen(n, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : g.adj[v])
        if (in[w] && !seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
    }
    return reached == count;
  };
  if (!side_connected(true)) {
    rep.nonnegative_support_connected = false;
    rep.violations.push_back("the set of vertices with value >= -eps does not induce a connected subgraph");
  }
  if (!side_connected(false)) {
    rep.nonpositive_support_connected = false;
    rep.violations.push_back("the set of vertices with value <= eps does not induce a connected subgraph");
  }

  // (b) descent: every clearly positive vertex has a strictly smaller neighbor.
  for (int v = 0; v < n; ++v) {
    if (x[v] > eps) {
      bool found = false;
      for (int w : g.adj[v])
        if (x[w] < x[v]) {
          found = true;
          break;
        }
      if (!found) {
        rep.descent_ok = false;
        rep.violations.push_back("vertex " + std::to_string(v) + " (value " +
                                 fmt(x[v]) + ") has no neighbor with a smaller value");
      }
    }
  }

  // (c) cell-level shape, only with a partition and a clear eigenvalue gap.
  if (cells == nullptr) return rep;

  double lambda3 = f.next_eigenvalue;
  if (!std::isfinite(lambda3)) {
    if (n < 3) {
      rep.tie_skipped = true;
      return rep;
    }
    const std::vector<double> values = eigenvalues_only(laplacian(g), tol);
    lambda3 = values[2];
  }
  const double gap = lambda3 - f.mu;
  if (!(gap > tol.eigenvalue_tie_rel * std::max(std::fabs(lambda3), std::fabs(f.mu)))) {
    rep.tie_skipped = true;
    return rep;
  }

  cells->validate(g);
  rep.checked_cells = true;
  const double cell_eps = tol.cell_eps_scale * xmax;
  const std::size_t k = cells->cells.size();
  std::vector<double> means(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    double lo = x[cells->cells[i][0]], hi = lo, sum = 0.0;
    for (int v : cells->cells[i]) {
      lo = std::min(lo, x[v]);
      hi = std::max(hi, x[v]);
      sum += x[v];
    }
    means[i] = sum / double(cells->cells[i].size());
    if (hi - lo > cell_eps) {
      rep.cells_constant = false;
      rep.violations.push_back("cell " + std::to_string(i) + " spans values " +
                               fmt(lo) + " to " + fmt(hi) + ", wider than " +
                               fmt(cell_eps));
    }
  }

  if (k >= 2) {
    const double direction = (means.back() > means.front()) ? 1.0 : -1.0;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      if (!((means[i + 1] - means[i]) * direction > 0.0)) {
        rep.cells_monotone = false;
        rep.violations.push_back("cell values are not strictly monotone between cells " +
                                 std::to_string(i) + " and " + std::to_string(i + 1));
      }
    }
  }

  int sign_changes = 0;
  int prev_sign = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (std::fabs(means[i]) <= eps) continue;  // treat near-zero cells as neutral
    const int s = means[i] > 0.0 ? 1 : -1;
    if (prev_sign != 0 && s != prev_sign) ++sign_changes;
    prev_sign = s;
  }
  if (sign_changes != 1) {
    rep.single_sign_change = false;
    rep.violations.push_back("cell values change sign " + std::to_string(sign_changes) +
                             " times along the chain (expected exactly 1)");
  }
  return rep;
}

}  // namespace mugraph
