#pragma once
// Model domains, structured grids with exact cell quadrature weights,
// clipped ball regions B(x0,mu) ∩ Ω and boundary (Fermi) coordinates.

#include <cstdint>
#include <string>
#include <vector>

#include "eigenmass/quadrature.hpp"

namespace emass {

enum class DomainKind { UnitSquare, UnitDisk, SphereS2, UnitBall3 };

struct Domain {
  DomainKind kind = DomainKind::UnitSquare;
  int dimension = 2;
  bool boundary_present = true;

  static Domain make(DomainKind k);
  double diameter() const;
  double volume() const;  // area for 2-d domains, surface measure for S2
  bool contains(const Vec3& p, double tol = 1e-9) const;
};

std::string to_string(DomainKind k);
DomainKind domain_kind_from_string(const std::string& s);

enum class NodeFlag : std::uint8_t { Interior = 0, Boundary = 1 };

struct Grid {
  Domain domain;
  int resolution = 0;
  double spacing = 0.0;  // nominal mesh size, ~ diam/resolution
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  std::vector<std::uint8_t> flags;

  // structured extents; meaning depends on the family
  int n1 = 0, n2 = 0, n3 = 0;
  // square: n1 = n2 = resolution+1 (nodes per side)
  // disk:   n1 = radial rings, n2 = ntheta (+ center node at index 0)
  // sphere: n1 = ntheta (cell-centered), n2 = nphi
  // ball:   n1 = radial rings, n2 = ntheta, n3 = nphi (+ center at index 0)

  std::size_t size() const { return nodes.size(); }
  std::size_t square_index(int i, int j) const { return static_cast<std::size_t>(j) * n1 + i; }
  std::size_t disk_index(int ring, int j) const {
    return 1 + static_cast<std::size_t>(ring - 1) * n2 + j;
  }
  std::size_t sphere_index(int j, int k) const {
    return static_cast<std::size_t>(j - 1) * n2 + k;
  }
  std::size_t ball_index(int ring, int j, int k) const {
    return 1 + (static_cast<std::size_t>(ring - 1) * n2 + (j - 1)) * n3 + k;
  }
  double weight_sum() const;
};

// Structured grid for a model domain. resolution >= 8.
Grid build_grid(const Domain& domain, int resolution);

// Geodesic distance on S2, Euclidean elsewhere.
double geodesic_distance(const Domain& domain, const Vec3& a, const Vec3& b);

struct BallRegion {
  Vec3 center;
  double radius = 0.0;
  std::vector<std::int32_t> node_indices;
  std::vector<double> clipped_weights;
  bool under_resolved = false;
  double weight_sum() const;
};

// Nodes of B(x0,mu) ∩ Ω with cell-fraction clipped weights (16 subsamples
// per straddling cell). mu < 2*spacing marks the result under-resolved.
BallRegion ball_region(const Grid& grid, const Vec3& x0, double mu);

struct FermiCoords {
  double s1 = 0.0;   // tangential coordinate (edge position / theta / polar angle)
  double s2 = 0.0;   // second tangential coordinate (azimuth, 3-d only)
  double xn = 0.0;   // distance to the boundary
  int face = 0;      // square edge id: 0 bottom, 1 right, 2 top, 3 left
  bool tie = false;  // nearest face was ambiguous; broken by face order
};

FermiCoords fermi_coordinates(const Domain& domain, const Vec3& p);

// Versioned binary grid cache (magic "EMGRID1").
void write_grid_cache(const Grid& grid, const std::string& path);
Grid read_grid_cache(const std::string& path);

}  // namespace emass
