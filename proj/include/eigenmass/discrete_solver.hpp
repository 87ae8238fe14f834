#pragma once
// Discrete Laplacians on the structured grids (box-scheme fluxes, so K is
// symmetric and M diagonal), shift-invert Lanczos eigenpair extraction near
// a spectral target, Weyl counting by LDL^T inertia, and a versioned
// eigenpair cache ("EMEIG1").

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eigenmass/band_matrix.hpp"
#include "eigenmass/closed_form.hpp"
#include "eigenmass/geometry.hpp"

namespace emass {

struct DiscreteOperator {
  std::shared_ptr<const Grid> grid;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  BandMatrix stiffness;                  // over retained dofs
  std::vector<double> mass;              // diagonal lumped mass (cell volumes)
  std::vector<std::int32_t> dof_to_node;
  std::vector<std::int32_t> node_to_dof;  // -1 on eliminated Dirichlet rows

  std::size_t dofs() const { return mass.size(); }
  // residual ||K v - lambda2 M v|| / (lambda2 ||M v||) for a dof vector
  double residual(const std::vector<double>& v, double lambda2) const;
};

DiscreteOperator assemble(std::shared_ptr<const Grid> grid, BoundaryCondition bc);

struct Eigenpair {
  double lambda2 = 0.0;
  std::vector<double> vec;  // dof-ordered, unit M-norm
  double residual = 0.0;
  bool converged = false;
};

struct EigenpairBatch {
  std::shared_ptr<const Grid> grid;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  double target = 0.0;
  std::vector<Eigenpair> pairs;  // sorted by |lambda2 - target|
  std::string provenance;
};

// `count` eigenpairs nearest `target` by shift-invert Lanczos with full
// reorthogonalization.  A near-singular shift is automatically perturbed by
// 1e-3*max(target,1) (recorded in provenance); non-converged pairs are
// returned flagged.
EigenpairBatch solve_near(const DiscreteOperator& op, double target, int count,
                          std::uint64_t seed = 1);

struct WeylReport {
  double lambda_cap = 0.0;       // Λ
  std::size_t count = 0;         // #{λ² <= Λ}
  double weyl_estimate = 0.0;    // |Ω| Λ / (4π)
  double rel_deviation = 0.0;
};

// Eigenvalue count below Lambda via LDL^T inertia (2-d domains).
WeylReport weyl_check(const DiscreteOperator& op, double lambda_cap);

void cache_store(const EigenpairBatch& batch, const std::string& path);
EigenpairBatch cache_load(const std::string& path, std::shared_ptr<const Grid> expected);

// wrap one batch entry as a grid-sampled EigenMode (boundary rows refilled)
EigenMode batch_mode(const EigenpairBatch& batch, std::size_t index);

// M-weighted inner product of two dof vectors
double m_inner(const DiscreteOperator& op, const std::vector<double>& a,
               const std::vector<double>& b);

}  // namespace emass
