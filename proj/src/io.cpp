#include "resclust/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace resclust {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw std::runtime_error("line " + std::to_string(line) + ": cannot parse number '" + std::string(field) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// Non-blank lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> content_lines(std::istream& in) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!trim(line).empty()) lines.emplace_back(number, line);
  }
  return lines;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return in;
}

}  // namespace

SquareMatrix read_matrix_csv(std::istream& in) {
  const auto lines = content_lines(in);
  const std::size_t n = lines.size();
  if (n == 0) throw std::runtime_error("matrix CSV is empty");
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto fields = split(lines[i].second);
    if (fields.size() != n) {
      throw std::runtime_error("line " + std::to_string(lines[i].first) + ": expected " + std::to_string(n) +
                               " values, found " + std::to_string(fields.size()));
    }
    for (std::size_t j = 0; j < n; ++j) m(i, j) = parse_double(fields[j], lines[i].first);
  }
  return m;
}

SquareMatrix read_matrix_csv(const std::string& path) {
  auto in = open_input(path);
  return read_matrix_csv(in);
}

void write_matrix_csv(std::ostream& out, const SquareMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

std::vector<std::vector<double>> read_points_csv(std::istream& in) {
  const auto lines = content_lines(in);
  if (lines.empty()) throw std::runtime_error("points CSV is empty");
  const auto header = split(lines.front().second);
  for (std::size_t t = 0; t < header.size(); ++t) {
    if (trim(header[t]) != "x" + std::to_string(t + 1)) {
      throw std::runtime_error("points CSV header must be x1,x2,...,xd");
    }
  }
  const std::size_t dim = header.size();
  std::vector<std::vector<double>> points;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = split(lines[r].second);
    if (fields.size() != dim) {
      throw std::runtime_error("line " + std::to_string(lines[r].first) + ": expected " + std::to_string(dim) +
                               " coordinates, found " + std::to_string(fields.size()));
    }
    auto& p = points.emplace_back(dim);
    for (std::size_t t = 0; t < dim; ++t) p[t] = parse_double(fields[t], lines[r].first);
  }
  if (points.empty()) throw std::runtime_error("points CSV has no points");
  return points;
}

std::vector<std::vector<double>> read_points_csv(const std::string& path) {
  auto in = open_input(path);
  return read_points_csv(in);
}

void write_points_csv(std::ostream& out, const std::vector<std::vector<double>>& points) {
  const std::size_t dim = points.empty() ? 0 : points.front().size();
  for (std::size_t t = 0; t < dim; ++t) out << (t ? ",x" : "x") << t + 1;
  out << '\n';
  for (const auto& p : points) {
    for (std::size_t t = 0; t < p.size(); ++t) out << (t ? "," : "") << format_double(p[t]);
    out << '\n';
  }
}

std::vector<double> read_costs_csv(std::istream& in) {
  std::vector<double> costs;
  for (const auto& [number, line] : content_lines(in)) {
    const auto fields = split(line);
    if (fields.size() != 1) throw std::runtime_error("line " + std::to_string(number) + ": expected one value");
    costs.push_back(parse_double(fields.front(), number));
  }
  return costs;
}

std::vector<double> read_costs_csv(const std::string& path) {
  auto in = open_input(path);
  return read_costs_csv(in);
}

void write_edges_csv(std::ostream& out, const std::vector<TreeEdge>& edges) {
  for (const auto& e : edges) out << e.u << ',' << e.v << ',' << format_double(e.weight) << '\n';
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

}  // namespace resclust
