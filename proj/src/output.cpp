#include "ricci/output.hpp"

#include <bit>
#include <cstdio>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "ricci/error.hpp"

namespace ricci {
namespace {

std::string format_full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value == 0.0 ? 0.0 : value);
  return buf;
}

}  // namespace

std::string format_curvature(double value) {
  char buf[40];
  // Collapse -0 so identical curvatures print identically.
  std::snprintf(buf, sizeof buf, "%.12g", value == 0.0 ? 0.0 : value);
  return buf;
}

void write_curvature_csv(std::ostream& out, const Graph& g, const EdgeCurvatureMap& curvs) {
  const bool flags = !curvs.converged().empty();
  const auto label = curvs.method().label();
  const auto& ids = g.source_ids();
  out << "u,v,kappa,method" << (flags ? ",converged" : "") << '\n';
  for (std::size_t i = 0; i < curvs.size(); ++i) {
    const auto& e = curvs.edges()[i];
    out << ids[e.u] << ',' << ids[e.v] << ',' << format_curvature(curvs.values()[i]) << ',' << label;
    if (flags) out << ',' << (curvs.converged()[i] ? 1 : 0);
    out << '\n';
  }
}

void write_curvature_json(std::ostream& out, const Graph& g, const EdgeCurvatureMap& curvs) {
  nlohmann::ordered_json doc;
  doc["method"] = curvs.method().label();
  auto rows = nlohmann::ordered_json::array();
  const auto& ids = g.source_ids();
  for (std::size_t i = 0; i < curvs.size(); ++i) {
    const auto& e = curvs.edges()[i];
    nlohmann::ordered_json row;
    row["u"] = ids[e.u];
    row["v"] = ids[e.v];
    row["kappa"] = std::stod(format_curvature(curvs.values()[i]));
    if (!curvs.converged().empty()) row["converged"] = static_cast<bool>(curvs.converged()[i]);
    rows.push_back(std::move(row));
  }
  doc["edges"] = std::move(rows);
  out << doc.dump(1) << '\n';
}

void write_features_csv(std::ostream& out, const Graph& g, const FeatureMatrix& features) {
  if (features.rows() != g.num_nodes()) throw InputError("feature rows do not match the graph");
  out << "node_id";
  for (const auto& name : features.column_names()) out << ',' << name;
  out << '\n';
  const auto& x = features.data();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    out << g.source_ids()[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < x.cols(); ++j) out << ',' << format_full(x(i, j));
    out << '\n';
  }
}

void write_features_binary(std::ostream& out, const FeatureMatrix& features) {
  static_assert(std::endian::native == std::endian::little, "binary dump assumes a little-endian host");
  const auto& x = features.data();  // Eigen default storage is column-major
  out.write(reinterpret_cast<const char*>(x.data()), static_cast<std::streamsize>(x.size() * sizeof(double)));
}

Eigen::MatrixXd read_features_binary(std::istream& in, std::size_t rows, std::size_t cols) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  in.read(reinterpret_cast<char*>(x.data()), static_cast<std::streamsize>(x.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(x.size() * sizeof(double))) {
    throw InputError("binary feature file is truncated");
  }
  return x;
}

}  // namespace ricci
