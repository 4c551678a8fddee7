#pragma once

// Potential files, lambda and number syntax, grids and mesh export.
//
// Potential file:
//   { "m": 2,
//     "h":    [ [["re", "im"], ...], ... ],   one list per j, coefficients of z^0, z^1, ...
//     "hhat": [ ... ],
//     "h_partner": [...], "hhat_partner": [...] }   optional, see NormalizedPotential
// Each part is a JSON string holding an integer, "p/q" or a decimal; plain JSON integers are accepted too.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "willmore/surface.hpp"

namespace willmore {

NormalizedPotential parse_potential(const std::string& text);
NormalizedPotential load_potential(const std::string& path);
std::string potential_to_json(const NormalizedPotential& p);

// "p/q", integer or decimal
double parse_real(const std::string& s);
int parse_positive_int(const std::string& s);

// "re,im", "i", "-i", "1", or "@t" for exp(2 pi i t); must lie on the unit circle
struct LambdaSpec {
  cplx value = 1.0;
  std::optional<GaussianRational> exact;  // when both parts were given as rationals
};
LambdaSpec parse_lambda(const std::string& s);

enum class GridKind { Polar, Cartesian };

struct GridSpec {
  GridKind kind = GridKind::Polar;
  int n = 32;
  double radius = 1.0;
};

// Polar: the centre, then n rings of n points; Cartesian: the n x n lattice on
// [-R, R]^2 restricted to the closed disk.
struct Grid {
  std::vector<cplx> points;
  std::vector<std::array<int, 3>> triangles;
};
Grid make_grid(const GridSpec& spec);

struct MeshVertex {
  cplx z;
  bool singular = false;
  Eigen::VectorXd Y, Yhat;  // real light-cone lifts
  Eigen::VectorXd y, yhat;  // points of S^{2m}
  double metric_y = 0.0, metric_yhat = 0.0;  // |y_z|^2, |yhat_z|^2
};

struct Mesh {
  int m = 0;
  cplx lambda = 1.0;
  Grid grid;
  std::vector<MeshVertex> vertices;
};

// Vertices off the big cell are kept and flagged. Runs on worker_threads() threads.
Mesh build_mesh(const HolomorphicFrame& hf, const GridSpec& spec, cplx lambda);

// columns: re_z, im_z, Y0.., Yh0.., y1.., yh1.., metric_y, metric_yh, singular
std::string mesh_csv(const Mesh& mesh);

// m = 2 only. Stereographic projection of S^4 from (0, 0, 0, 0, 1) to R^4, then the
// last coordinate is dropped: a lossy picture, not an isometry. Faces touching a
// flagged vertex or the pole are left out.
std::string mesh_obj(const Mesh& mesh);

void write_file(const std::string& path, const std::string& content);

}  // namespace willmore
