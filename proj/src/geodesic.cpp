#include "neckcut/geodesic.hpp"

#include <cmath>
#include <limits>
#include <queue>

#include "neckcut/errors.hpp"

namespace neckcut::mesh {

namespace {

// Distance at c from a planar point source known only through its distances da, db to a
// and b. Returns +inf when the unfolded ray misses the edge ab.
double unfold(double lab, double lac, double lbc, double da, double db) {
  if (lab <= 0.0) return std::numeric_limits<double>::infinity();
  // a = (0, 0), b = (lab, 0), c above the axis, source below it.
  const double xc = (lac * lac - lbc * lbc + lab * lab) / (2 * lab);
  const double yc = std::sqrt(std::max(lac * lac - xc * xc, 0.0));
  const double xs = (da * da - db * db + lab * lab) / (2 * lab);
  const double ys2 = da * da - xs * xs;
  if (ys2 < 0.0) return std::numeric_limits<double>::infinity();
  const double ys = -std::sqrt(ys2);
  const double dy = yc - ys;
  if (dy <= 0.0) return std::numeric_limits<double>::infinity();
  // Where the segment from source to c crosses y = 0.
  const double xcross = xs + (xc - xs) * (-ys / dy);
  if (xcross < 0.0 || xcross > lab) return std::numeric_limits<double>::infinity();
  return std::hypot(xc - xs, yc - ys);
}

}  // namespace

std::vector<double> geodesic_distance(const MeshSurface& m, const std::vector<std::pair<int, double>>& seeds) {
  const std::size_t n = m.vertices.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  const auto nb = vertex_neighbors(m);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (const auto& [v, d] : seeds) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw DomainError("geodesic_distance: seed out of range");
    if (d < dist[v]) {
      dist[v] = d;
      queue.push({d, v});
    }
  }
  std::vector<int> order;
  std::vector<char> done(n, 0);
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (done[v]) continue;
    done[v] = 1;
    order.push_back(v);
    for (int w : nb[v]) {
      const double nd = d + (m.vertices[w] - m.vertices[v]).norm();
      if (nd < dist[w]) {
        dist[w] = nd;
        queue.push({nd, w});
      }
    }
  }
  // Correction pass in settling order; rank tells which corners were settled earlier.
  std::vector<int> rank(n, -1);
  for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = static_cast<int>(k);
  const auto vt = vertex_triangles(m);
  for (int c : order) {
    for (int t : vt[c]) {
      const auto& tri = m.triangles[t];
      int a = -1, b = -1;
      for (int k : tri) {
        if (k == c) continue;
        (a < 0 ? a : b) = k;
      }
      if (rank[a] < 0 || rank[b] < 0 || rank[a] > rank[c] || rank[b] > rank[c]) continue;
      const double lab = (m.vertices[a] - m.vertices[b]).norm();
      const double lac = (m.vertices[a] - m.vertices[c]).norm();
      const double lbc = (m.vertices[b] - m.vertices[c]).norm();
      dist[c] = std::min(dist[c], unfold(lab, lac, lbc, dist[a], dist[b]));
    }
  }
  return dist;
}

}  // namespace neckcut::mesh
