#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "resclust/metric.hpp"
#include "resclust/mst.hpp"

namespace resclust {

/// Distance matrix: n rows of n comma-separated decimals, no header.
SquareMatrix read_matrix_csv(std::istream& in);
SquareMatrix read_matrix_csv(const std::string& path);
void write_matrix_csv(std::ostream& out, const SquareMatrix& m);

/// Points: header `x1,...,xd`, then one point per row.
std::vector<std::vector<double>> read_points_csv(std::istream& in);
std::vector<std::vector<double>> read_points_csv(const std::string& path);
void write_points_csv(std::ostream& out, const std::vector<std::vector<double>>& points);

/// Facility opening costs: one decimal per line, line i is f(point i).
std::vector<double> read_costs_csv(std::istream& in);
std::vector<double> read_costs_csv(const std::string& path);

/// Spanning tree edges as `i,j,weight` lines, in insertion order.
void write_edges_csv(std::ostream& out, const std::vector<TreeEdge>& edges);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace resclust
