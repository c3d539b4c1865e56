#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rav/realstruct.hpp"
#include "rav/siegel.hpp"
#include "rav/subvariety.hpp"

namespace rav {

struct Config {
  double tol_fix = 1e-9;
  double tol_res = 1e-8;
  double tol_fstable = 1e-8;
  long denom_bound = 10000;
  int max_iters = 500;
  unsigned long seed = 0;
  int threads = 1;

  void validate_fields() const;  // BadConfig
};

// A certified nearby real period matrix: Z_found lies in the fixed locus of
// the type, the plane is exactly T-stable and symplectically nondegenerate,
// and the complex structure at Z_found preserves the plane up to j_residual
// (Frobenius norm of (I - P) J P for the orthoprojector P onto the plane).
struct DensityWitness {
  int g = 0;
  int k = 0;
  int alpha = 0;
  int lambda = 0;
  ExactMatrix m;          // normal form matrix of the type
  ExactMatrix t;          // lattice involution
  SiegelPoint z_start;
  SiegelPoint z_found;    // float, in the fixed locus
  RationalPlane plane;    // exactly T-stable, symplectic rank 2k
  double j_residual = 0.0;
  double displacement = 0.0;  // max-norm of Z_found - Z_start
  double eps = 0.0;           // displacement budget the witness was held to
  Config cfg;                 // tolerances in force when it was produced
};

struct CertifyReport {
  struct Entry {
    std::string name;
    bool pass = false;
    double value = 0.0;
  };
  std::vector<Entry> entries;

  bool all_pass() const;
};

// Solver outcome. A failed search is reported with diagnostics, not thrown:
// witnesses are guaranteed to exist arbitrarily close, but this solver is not
// guaranteed to find them.
struct SearchResult {
  bool success = false;
  std::optional<DensityWitness> witness;
  std::string failure;  // "NoConvergence" when unsuccessful
  double best_residual = std::numeric_limits<double>::infinity();
  double best_displacement = std::numeric_limits<double>::infinity();
  int planes_tried = 0;
};

// Perturbs Z0 (in the fixed locus of type (alpha, lambda)) within the fixed
// locus into a point whose abelian variety contains a k-dimensional real
// abelian subvariety: picks T-compatible seed planes from the eigenvectors
// of T, approximates them by exactly T-stable rational planes, and moves Y
// by damped Gauss-Newton until the plane is J-stable within tol_res.
// NotInFixedLocus / BadK / IndexNotInI / BadConfig on bad inputs.
SearchResult density_search(const SiegelPoint& z0, int alpha, int lambda, int k, double eps,
                            const Config& cfg = {});

// Independent re-verification of every witness invariant.
CertifyReport certify(const DensityWitness& w);

struct SampleCell {
  double eps = 0.0;
  bool success = false;
  double residual = 0.0;
  double displacement = 0.0;
  int planes_tried = 0;
};

struct SampleRow {
  int index = 0;
  unsigned long seed = 0;
  std::vector<SampleCell> cells;  // one per schedule entry
};

struct SampleSummary {
  double eps = 0.0;
  double success_rate = 0.0;
  double median_residual = 0.0;
  double median_displacement = 0.0;
};

struct SampleTable {
  int alpha = 0;
  int lambda = 0;
  int g = 0;
  int k = 0;
  int n = 0;
  unsigned long seed = 0;
  std::vector<double> eps_schedule;
  std::vector<SampleRow> rows;
  std::vector<SampleSummary> summary;
};

// Seeded random fixed-locus starting points (Y = A A^t + I/2 with Gaussian
// A), one density_search per (sample, eps). Per-sample seeds are derived from
// the master seed by index, so results are byte-identical for a fixed seed
// regardless of thread count.
SampleTable sample_density(int alpha, int lambda, int g, int k, int n_samples,
                           const std::vector<double>& eps_schedule, unsigned long seed,
                           const Config& cfg = {});

}  // namespace rav
