#pragma once
// Dense symmetric eigensolving and the spectral quantities built on it:
// Laplacians, algebraic connectivity with certified residuals, Rayleigh
// bounds, equitable-quotient shortcuts, and random-walk relaxation time.
//
// The solver is a classical Householder tridiagonalization followed by
// implicit-shift QL.  Eigenvectors for a single target eigenvalue come from
// inverse iteration on the tridiagonal form; their eigenvalues are then
// refined through the edge-sum Rayleigh quotient, which keeps tiny
// eigenvalues accurate to high relative precision.

#include <limits>
#include <string>
#include <vector>

#include "mugraph/families.hpp"
#include "mugraph/graph.hpp"

namespace mugraph {

// Dense symmetric matrix with full row-major storage.  set() writes both
// (i,j) and (j,i), so the two entries are always bit-identical.
class SymMatrix {
 public:
  explicit SymMatrix(int order);

  int order() const { return order_; }
  double operator()(int i, int j) const { return a_[std::size_t(i) * order_ + j]; }
  void set(int i, int j, double value);
  // Max absolute row sum.
  double inf_norm() const;

 private:
  int order_;
  std::vector<double> a_;
};

// Every numeric tolerance and iteration cap used by this module, in one
// auditable record.  Functions accept an instance so callers can tighten or
// relax bounds explicitly; the defaults below are the contract.
struct Tolerances {
  double unit_norm = 1e-12;            // |‖x‖₂ − 1| for reported eigenvectors
  double orthogonality = 1e-10;        // |⟨x,1⟩|/√n for reported eigenvectors
  double residual_scale = 1e-8;        // ‖Lx − μx‖₂ ≤ scale·(1 + max degree)
  double eigen_residual_scale = 1e-9;  // eigen_full: ‖Mv − λv‖₂ ≤ scale·(1 + ‖M‖∞)
  double quotient_agreement = 1e-8;    // quotient μ vs dense μ, absolute
  double eigenvalue_tie_rel = 1e-8;    // λ₂ vs λ₃ closer than this ⇒ treated as tied
  double support_eps_scale = 1e-9;     // ε = scale·‖x‖∞ in sign-support checks
  double cell_eps_scale = 1e-7;        // cell-constancy slack, relative to ‖x‖∞
  double tau_mu_rel = 1e-9;            // τ·μ = d check for regular graphs, relative
  double bound_slack = 1e-10;          // certified upper bounds may undershoot μ by this
  double connectivity_floor = 1e-12;   // computed μ of a connected graph must exceed this
  int ql_max_sweeps = 60;              // implicit-shift QL sweeps per eigenvalue
  int inverse_iteration_cap = 50;      // refinement iterations for one eigenvector
};

// Second-smallest Laplacian eigenvalue together with its unit eigenvector
// and the evidence that the pair is trustworthy.
struct FiedlerResult {
  double mu = 0.0;
  std::vector<double> vector;          // unit norm, orthogonal to the all-ones vector
  double residual = 0.0;               // ‖L·vector − mu·vector‖₂
  std::string method;                  // "dense" or "quotient"
  double orthogonality_defect = 0.0;   // |⟨vector, 1⟩| / √n
  // Third-smallest eigenvalue when the solve exposes it (dense path); NaN
  // otherwise.  Used to detect eigenvalue ties before shape checks.
  double next_eigenvalue = std::numeric_limits<double>::quiet_NaN();

  // "n,mu,residual,method,orth_defect" with 17 significant digits.
  std::string csv_row() const;
};

// Full eigendecomposition: values ascending, vectors[k] the unit eigenvector
// for values[k], mutually orthogonal.
struct EigenSystem {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
};

// Result of the equitable-quotient shortcut: the certified eigenvalue and
// the cell-constant unit eigenvector it lifts to on the full graph.
struct QuotientLift {
  double mu = 0.0;
  std::vector<double> lifted;
};

// Shape report for a computed Fiedler vector.  Checks never throw; every
// failed property lands in `violations` with the matching flag cleared.
struct StructureReport {
  bool nonnegative_support_connected = true;  // {i : x_i ≥ −ε} induces a connected subgraph
  bool nonpositive_support_connected = true;  // {i : x_i ≤ ε} induces a connected subgraph
  bool descent_ok = true;       // every x_i > ε has a neighbor with strictly smaller value
  bool checked_cells = false;   // cell-level checks ran (partition given, no eigenvalue tie)
  bool cells_constant = true;   // vector constant on each cell
  bool cells_monotone = true;   // cell values strictly monotone along the cell order
  bool single_sign_change = true;  // cell values change sign exactly once
  bool tie_skipped = false;     // λ₂ and λ₃ nearly equal; cell checks skipped
  std::vector<std::string> violations;

  bool all_ok() const { return violations.empty(); }
};

// Laplacian D − A.  Diagonal holds the degrees, each edge contributes −1;
// every row sums to zero exactly.
SymMatrix laplacian(const Graph& g);

// Normalized Laplacian I − D^{−1/2} A D^{−1/2}; isolated vertices get a zero
// diagonal entry.
SymMatrix normalized_laplacian(const Graph& g);

// All eigenvalues and an orthonormal eigenvector basis, values ascending.
// Every pair satisfies ‖Mv − λv‖₂ ≤ eigen_residual_scale·(1 + ‖M‖∞); a
// failure to converge or to meet that bound raises an Error naming the index.
EigenSystem eigen_full(const SymMatrix& m, const Tolerances& tol = Tolerances{});

// Eigenvalues only, ascending.  Same algorithm without vector accumulation.
std::vector<double> eigenvalues_only(const SymMatrix& m,
                                     const Tolerances& tol = Tolerances{});

// Algebraic connectivity of a connected graph (n ≥ 2) with its unit Fiedler
// vector, via the dense pipeline.  The result satisfies the FiedlerResult
// bounds or an Error is raised.  The vector's sign is canonical: its first
// nonzero entry is positive.
FiedlerResult fiedler(const Graph& g, const Tolerances& tol = Tolerances{});

// Same quantity through the equitable-quotient shortcut: solve the
// cell-level problem, lift, and certify the lift against the full Laplacian.
// Errors if the partition is not equitable or the lifted vector fails the
// residual bound ("quotient inapplicable").
FiedlerResult fiedler(const Graph& g, const CellPartition& cells,
                      const Tolerances& tol = Tolerances{});

// Rayleigh quotient Σ_{ij∈E}(x_i − x_j)² / ‖x‖², evaluated by the edge sum
// (never by a matrix product).  Errors on the zero vector or length mismatch.
double rayleigh(const Graph& g, const std::vector<double>& x);

// rayleigh(g, x − mean(x)·1): a certified upper bound on the algebraic
// connectivity for any x that is not a multiple of the all-ones vector.
double deflated_bound(const Graph& g, const std::vector<double>& x);

// Upper bound on the algebraic connectivity of the chain graph described by
// `spec`, from the explicit cosine test vector: block i of m carries
// √(2/m)·cos((2i−1)π/(2m)) on its first cell and the convex interpolations
// ((a+b)x_i + c·x_{i+1})/(a+b+c) and (b·x_i + (a+c)·x_{i+1})/(a+b+c) on the
// other two, with x_{m+1} := x_m.  For m = 1 that vector is constant, so the
// bound falls back to the one-step indicator of the first cell.
double test_vector_bound(const GammaSpec& spec);

// Symmetrized quotient of the Laplacian over an equitable partition:
// S^{1/2} Q S^{−1/2} with S = diag(cell sizes), i.e. diagonal entries
// (cell degree − within-cell count) and off-diagonal −√(q_ij·q_ji).
// Its spectrum is contained in the Laplacian's.
SymMatrix quotient_matrix(const Graph& g, const CellPartition& cells);

// Second-smallest eigenvalue of the quotient, lifted to a unit vector on the
// full graph and certified by the full-Laplacian residual bound.  Errors with
// "quotient inapplicable" if the certificate fails.
QuotientLift quotient_mu(const Graph& g, const CellPartition& cells,
                         const Tolerances& tol = Tolerances{});

// Relaxation time of the lazy-free random walk: 1/(1 − η₂) where η₂ is the
// second-largest eigenvalue of D^{−1/2} A D^{−1/2}, computed as the
// reciprocal of the second-smallest normalized-Laplacian eigenvalue.
// Requires a connected graph on at least 2 vertices.  For d-regular graphs
// this equals d/μ.
double relaxation_time(const Graph& g, const Tolerances& tol = Tolerances{});

// Shape checks for a computed Fiedler vector: sign-support connectivity and
// the descent property always run; with a partition, cell constancy, strict
// monotonicity along the cell order, and a single sign change are checked
// too, unless the second and third eigenvalues are relatively closer than
// eigenvalue_tie_rel (reported via tie_skipped).
StructureReport fiedler_structure_check(const Graph& g, const FiedlerResult& f,
                                        const CellPartition* cells = nullptr,
                                        const Tolerances& tol = Tolerances{});

}  // namespace mugraph
