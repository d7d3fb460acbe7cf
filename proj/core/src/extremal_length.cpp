#include "slelab/extremal_length.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace slelab::excursion {

namespace {
constexpr double kPi = 3.141592653589793238462643383279;
}

GridMask GridMask::parse(const std::string& text) {
  std::istringstream in(text);
  std::string tag;
  GridMask m;
  if (!(in >> tag >> m.width >> m.height) || tag != "gridmask")
    throw std::invalid_argument("GridMask: bad header");
  if (m.width <= 0 || m.height <= 0)
    throw std::invalid_argument("GridMask: bad dimensions");
  m.cells.assign(static_cast<std::size_t>(m.width) * m.height, 0);
  std::string row;
  std::getline(in, row);
  for (int y = 0; y < m.height; ++y) {
    if (!std::getline(in, row) || static_cast<int>(row.size()) < m.width)
      throw std::invalid_argument("GridMask: truncated rows");
    for (int x = 0; x < m.width; ++x) {
      switch (row[x]) {
        case '.': m.at(x, y) = 0; break;
        case '#': m.at(x, y) = 1; break;
        case 'A': m.at(x, y) = 2; break;
        case 'B': m.at(x, y) = 3; break;
        default: throw std::invalid_argument("GridMask: bad cell flag");
      }
    }
  }
  return m;
}

std::string GridMask::serialize() const {
  static const char glyph[4] = {'.', '#', 'A', 'B'};
  std::ostringstream out;
  out << "gridmask " << width << ' ' << height << '\n';
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) out << glyph[at(x, y)];
    out << '\n';
  }
  return out.str();
}

GridMask GridMask::refined() const {
  GridMask r;
  r.width = 2 * width;
  r.height = 2 * height;
  r.cells.assign(static_cast<std::size_t>(r.width) * r.height, 0);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      std::uint8_t v = at(x, y);
      r.at(2 * x, 2 * y) = v;
      r.at(2 * x + 1, 2 * y) = v;
      r.at(2 * x, 2 * y + 1) = v;
      r.at(2 * x + 1, 2 * y + 1) = v;
    }
  return r;
}

GridMask rectangle_mask(double L, int ny) {
  if (!(L > 0.0) || ny < 4)
    throw std::invalid_argument("rectangle_mask: bad parameters");
  int nx = static_cast<int>(std::lround(L / kPi * ny));
  if (nx < 3) nx = 3;
  GridMask m;
  m.width = nx;
  m.height = ny;
  m.cells.assign(static_cast<std::size_t>(nx) * ny, 1);
  for (int y = 0; y < ny; ++y) {
    m.at(0, y) = 2;
    m.at(nx - 1, y) = 3;
  }
  return m;
}

GridMask annulus_mask(double r, int n) {
  if (!(r > 0.0 && r < 1.0) || n < 16)
    throw std::invalid_argument("annulus_mask: bad parameters");
  GridMask m;
  m.width = n;
  m.height = n;
  m.cells.assign(static_cast<std::size_t>(n) * n, 0);
  double h = 2.2 / n;  // grid covers [-1.1, 1.1]^2
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      double cx = -1.1 + (x + 0.5) * h;
      double cy = -1.1 + (y + 0.5) * h;
      double rho = std::hypot(cx, cy);
      if (rho >= 1.0) continue;        // outside the disk
      if (rho <= r) continue;          // inside the inner disk
      if (rho >= 1.0 - h) m.at(x, y) = 3;       // outer boundary ring = B
      else if (rho <= r + h) m.at(x, y) = 2;    // inner boundary ring = A
      else m.at(x, y) = 1;
    }
  return m;
}

GridMask slit_annulus_mask(double r, double slit_from, int n) {
  if (!(slit_from > r && slit_from < 1.0))
    throw std::invalid_argument("slit_annulus_mask: slit_from outside (r, 1)");
  GridMask m = annulus_mask(r, n);
  double h = 2.2 / n;
  int yrow = static_cast<int>(std::floor((0.0 + 1.1) / h));  // row containing y=0
  for (int x = 0; x < n; ++x) {
    double cx = -1.1 + (x + 0.5) * h;
    if (cx >= slit_from && m.at(x, yrow) != 0) m.at(x, yrow) = 0;
  }
  return m;
}

double grid_resistance(const GridMask& m) {
  const int W = m.width, H = m.height;
  std::vector<int> idx(static_cast<std::size_t>(W) * H, -1);
  int n_unknown = 0;
  bool has_a = false, has_b = false;
  for (int y = 0; y < H; ++y)
    for (int x = 0; x < W; ++x) {
      std::uint8_t v = m.at(x, y);
      if (v == 1) idx[static_cast<std::size_t>(y) * W + x] = n_unknown++;
      if (v == 2) has_a = true;
      if (v == 3) has_b = true;
    }
  if (!has_a || !has_b)
    throw std::invalid_argument("grid_resistance: missing marked arc");
  if (n_unknown == 0)
    throw std::invalid_argument("grid_resistance: empty interior");

  // Reject arcs in direct contact: the resistance would be dominated by the
  // touching edges rather than the region.
  for (int y = 0; y < H; ++y)
    for (int x = 0; x < W; ++x) {
      if (m.at(x, y) != 2) continue;
      const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        int xx = x + dx[d], yy = y + dy[d];
        if (xx >= 0 && xx < W && yy >= 0 && yy < H && m.at(xx, yy) == 3)
          throw std::invalid_argument("grid_resistance: arcs touch");
      }
    }

  auto cell = [&](int x, int y) -> std::uint8_t {
    if (x < 0 || x >= W || y < 0 || y >= H) return 0;
    return m.at(x, y);
  };

  // Assemble degree, rhs (arc A at potential 1, arc B at 0).
  std::vector<double> deg(n_unknown, 0.0), rhs(n_unknown, 0.0);
  std::vector<std::array<int, 4>> nbr(n_unknown, {-1, -1, -1, -1});
  {
    int k = 0;
    for (int y = 0; y < H; ++y)
      for (int x = 0; x < W; ++x) {
        if (m.at(x, y) != 1) continue;
        const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
          int xx = x + dx[d], yy = y + dy[d];
          std::uint8_t v = cell(xx, yy);
          if (v == 0) continue;
          deg[k] += 1.0;
          if (v == 1) nbr[k][d] = idx[static_cast<std::size_t>(yy) * W + xx];
          else if (v == 2) rhs[k] += 1.0;
        }
        ++k;
      }
  }

  auto apply = [&](const std::vector<double>& v, std::vector<double>& out) {
    for (int i = 0; i < n_unknown; ++i) {
      double acc = deg[i] * v[i];
      for (int d = 0; d < 4; ++d)
        if (nbr[i][d] >= 0) acc -= v[nbr[i][d]];
      out[i] = acc;
    }
  };

  // Jacobi-preconditioned conjugate gradient.
  std::vector<double> v(n_unknown, 0.0), rvec(rhs), z(n_unknown), p(n_unknown),
      ap(n_unknown);
  for (int i = 0; i < n_unknown; ++i) z[i] = rvec[i] / deg[i];
  p = z;
  double rz = 0.0, rhs_norm = 0.0;
  for (int i = 0; i < n_unknown; ++i) {
    rz += rvec[i] * z[i];
    rhs_norm += rhs[i] * rhs[i];
  }
  double tol2 = 1e-24 * (rhs_norm > 0 ? rhs_norm : 1.0);
  for (int it = 0; it < 30 * n_unknown + 100; ++it) {
    double rr = 0.0;
    for (int i = 0; i < n_unknown; ++i) rr += rvec[i] * rvec[i];
    if (rr < tol2) break;
    apply(p, ap);
    double pap = 0.0;
    for (int i = 0; i < n_unknown; ++i) pap += p[i] * ap[i];
    double alpha = rz / pap;
    for (int i = 0; i < n_unknown; ++i) {
      v[i] += alpha * p[i];
      rvec[i] -= alpha * ap[i];
    }
    double rz_new = 0.0;
    for (int i = 0; i < n_unknown; ++i) {
      z[i] = rvec[i] / deg[i];
      rz_new += rvec[i] * z[i];
    }
    double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n_unknown; ++i) p[i] = z[i] + beta * p[i];
  }

  // Current out of arc A: sum over edges from A cells into the region/B.
  double current = 0.0;
  for (int y = 0; y < H; ++y)
    for (int x = 0; x < W; ++x) {
      if (m.at(x, y) != 2) continue;
      const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        int xx = x + dx[d], yy = y + dy[d];
        std::uint8_t vv = cell(xx, yy);
        if (vv == 1)
          current += 1.0 - v[idx[static_cast<std::size_t>(yy) * W + xx]];
        else if (vv == 3)
          current += 1.0;
      }
    }
  if (!(current > 0.0))
    throw std::invalid_argument("grid_resistance: arcs are disconnected");
  return 1.0 / current;
}

double pi_extremal_distance(const GridMask& m) {
  return kPi * grid_resistance(m);
}

double pi_extremal_distance_richardson(
    const std::function<GridMask(int)>& builder, int n) {
  double coarse = pi_extremal_distance(builder(n));
  double fine = pi_extremal_distance(builder(2 * n));
  return 2.0 * fine - coarse;
}

double pi_extremal_distance_richardson(const GridMask& m) {
  double coarse = pi_extremal_distance(m);
  double fine = pi_extremal_distance(m.refined());
  return 2.0 * fine - coarse;
}

}  // namespace slelab::excursion
