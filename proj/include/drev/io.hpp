#ifndef DREV_IO_HPP
#define DREV_IO_HPP

#include <iosfwd>
#include <string>

#include "drev/grid.hpp"

namespace drev {

// Nodal field as CSV with header theta,rho,r,s,t,value; every node is
// written, Dirichlet rows included, in (rho outer, theta inner) order.
// Values use %.17g so a round trip is bit exact.
void write_field_csv(std::ostream& os, const Field& u);
void write_field_csv(const std::string& path, const Field& u);

// Reads a field written by write_field_csv back onto the given grid; the
// node coordinates must match (relative 1e-9), so the caller reconstructs the
// grid from the same configuration first.
Field read_field_csv(std::istream& is, std::shared_ptr<const Grid> grid);
Field read_field_csv(const std::string& path, std::shared_ptr<const Grid> grid);

}  // namespace drev

#endif
