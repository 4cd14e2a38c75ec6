#include "drev/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace drev {

namespace {
std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool close_rel(double a, double b) {
  return std::abs(a - b) <= 1e-9 * (1.0 + std::max(std::abs(a), std::abs(b)));
}
}  // namespace

void write_field_csv(std::ostream& os, const Field& u) {
  const Grid& g = u.grid();
  os << "theta,rho,r,s,t,value\n";
  for (int i = 0; i <= g.n_rho(); ++i) {
    for (int j = 0; j < g.n_theta(); ++j) {
      double th = g.theta(j), r = g.r(i, j);
      os << fmt17(th) << ',' << fmt17(g.rho(i)) << ',' << fmt17(r) << ','
         << fmt17(r * std::cos(th)) << ',' << fmt17(r * std::sin(th)) << ','
         << fmt17(u.at(i, j)) << '\n';
    }
  }
}

void write_field_csv(const std::string& path, const Field& u) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_field_csv(os, u);
  if (!os) throw std::runtime_error("write failed: " + path);
}

Field read_field_csv(std::istream& is, std::shared_ptr<const Grid> grid) {
  const Grid& g = *grid;
  std::string line;
  if (!std::getline(is, line) || line.rfind("theta,rho,r,s,t,value", 0) != 0)
    throw std::runtime_error("field CSV: bad or missing header");
  Field out(grid);
  for (int i = 0; i <= g.n_rho(); ++i) {
    for (int j = 0; j < g.n_theta(); ++j) {
      if (!std::getline(is, line))
        throw std::runtime_error("field CSV: truncated file");
      std::istringstream ss(line);
      double col[6];
      char comma;
      for (int c = 0; c < 6; ++c) {
        if (!(ss >> col[c])) throw std::runtime_error("field CSV: bad row");
        if (c < 5 && !(ss >> comma))
          throw std::runtime_error("field CSV: bad row");
      }
      if (!close_rel(col[0], g.theta(j)) || !close_rel(col[1], g.rho(i)) ||
          !close_rel(col[2], g.r(i, j)))
        throw std::runtime_error("field CSV: node coordinates do not match grid");
      if (i > 0 && i < g.n_rho()) out.interior(i, j) = col[5];
    }
  }
  return out;
}

Field read_field_csv(const std::string& path,
                     std::shared_ptr<const Grid> grid) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return read_field_csv(is, std::move(grid));
}

}  // namespace drev
