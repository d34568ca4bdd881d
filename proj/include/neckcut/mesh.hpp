#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace neckcut::mesh {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using UV = std::array<double, 2>;
using Tri = std::array<int, 3>;

/// R³ meshes use the first three coordinates and keep w = 0.
enum class Ambient { euclidean_r3, round_s3 };

std::string to_string(Ambient a);
Ambient ambient_from_string(const std::string& s);

/// Triangle mesh of a surface in R³ or in the unit sphere S³ ⊂ R⁴.
///
/// Edge k of a triangle joins corners k and (k+1)%3. When `edge_mid` is filled the
/// triangles are treated as quadratic patches through the three corners and the three
/// edge midpoints, which makes area second order accurate on curved pieces.
struct MeshSurface {
  Ambient ambient = Ambient::euclidean_r3;
  std::vector<Vec4> vertices;
  std::vector<Tri> triangles;
  std::vector<Vec4> normals;
  std::vector<double> a_norm2;  ///< |A|² per vertex
  std::vector<double> ric_nn;   ///< Ric(N, N) per vertex
  std::vector<Mat4> shape;      ///< A(X, Y) = Xᵀ·shape·Y for ambient vectors tangent at the vertex
  bool analytic_curvature = false;

  std::vector<std::array<Vec4, 3>> edge_mid;
  std::vector<std::array<Vec4, 3>> edge_mid_normal;

  // Parameter values when the mesh came from a parametrization.
  std::vector<UV> uv;
  std::vector<std::array<UV, 3>> edge_mid_uv;

  /// Offsets along N must stay below this for the normal exponential map to be a chart.
  double normal_radius = std::numeric_limits<double>::infinity();

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t triangle_count() const { return triangles.size(); }
  bool quadratic() const { return edge_mid.size() == triangles.size() && !triangles.empty(); }
  bool has_curvature() const { return a_norm2.size() == vertices.size() && ric_nn.size() == vertices.size(); }

  /// Throws DomainError on a broken invariant (bad index, flat triangle, unnormalized normal,
  /// vertex off the sphere).
  void validate() const;
};

/// Parametrized surface: the mesh builders lay out (u, v) and `realize` samples these.
struct ParamSurface {
  Ambient ambient = Ambient::euclidean_r3;
  std::function<Vec4(double, double)> point;
  std::function<Vec4(double, double)> normal;
  std::function<Mat4(double, double)> shape;  ///< optional
  double ric_nn = 0.0;
  double period_u = 0.0;  ///< 0 when not periodic
  double period_v = 0.0;
  double normal_radius = std::numeric_limits<double>::infinity();
};

/// Samples `s` at the given parameter points and at the parameter midpoint of every edge.
/// Edges of periodic parametrizations take the short way around.
MeshSurface realize(const ParamSurface& s, const std::vector<UV>& uv, const std::vector<Tri>& tris);

double flat_triangle_area(const Vec4& a, const Vec4& b, const Vec4& c);

/// Area of the quadratic patch through corners p0, p1, p2 and edge midpoints m01, m12, m20
/// (seven-point degree-five rule).
double quadratic_triangle_area(const Vec4& p0, const Vec4& p1, const Vec4& p2, const Vec4& m01,
                               const Vec4& m12, const Vec4& m20);

/// Per-triangle area: quadratic when edge midpoints are present, flat otherwise.
std::vector<double> triangle_areas(const MeshSurface& m);
double total_area(const MeshSurface& m);

/// Closed-form normal geodesic: x + sN in R³, cos(s)x + sin(s)N in S³.
Vec4 exp_normal(Ambient a, const Vec4& x, const Vec4& n, double s);
/// Velocity of that geodesic at time s; the pushed normal for constant offsets.
Vec4 exp_normal_velocity(Ambient a, const Vec4& x, const Vec4& n, double s);

/// Moves every vertex (and every edge midpoint) along its normal geodesic. `mid_offset`
/// gives midpoint offsets; when null the two endpoint offsets are averaged.
/// Throws ChartOverflow if some |offset| reaches `normal_radius`.
MeshSurface push_along_normals(const MeshSurface& m, const std::vector<double>& offset,
                               const std::vector<std::array<double, 3>>* mid_offset = nullptr);

int euler_characteristic(const MeshSurface& m);
std::vector<std::vector<int>> vertex_neighbors(const MeshSurface& m);
std::vector<std::vector<int>> vertex_triangles(const MeshSurface& m);
/// Edges used by exactly one triangle, as (a, b) in triangle orientation.
std::vector<std::array<int, 2>> boundary_edges(const MeshSurface& m);

/// Least-squares shape operator from neighbouring normals. Fills `shape`, `a_norm2` and
/// `ric_nn` and clears `analytic_curvature`.
void finite_difference_curvature(MeshSurface& m);

/// Index-list text format: `ambient <tag>`, then `v x y z w`, `n x y z w`, `f i j k`
/// (0-based). Lines starting with '#' are ignored.
void write_mesh(std::ostream& os, const MeshSurface& m);
MeshSurface read_mesh(std::istream& is);

/// Quantized lookup of points by position; neighbouring cells are probed so points
/// straddling a cell boundary are still found.
class PositionIndex {
 public:
  explicit PositionIndex(double tol) : tol_(tol) {}
  /// Index of a stored point within `tol` of v, or −1.
  int find(const Vec4& v) const;
  int insert(const Vec4& v);
  const std::vector<Vec4>& points() const { return points_; }

 private:
  using Key = std::array<long long, 4>;
  Key key_of(const Vec4& v) const;
  double tol_;
  std::vector<Vec4> points_;
  std::map<Key, std::vector<int>> cells_;
};

/// Concatenates meshes, welding vertices that coincide to within `tol`.
MeshSurface merge(const std::vector<const MeshSurface*>& parts, double tol = 1e-10);

}  // namespace neckcut::mesh
