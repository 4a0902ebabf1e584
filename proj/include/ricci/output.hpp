#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "ricci/curvature.hpp"
#include "ricci/encodings.hpp"

namespace ricci {

/// "%.12g" rendering used by curvature dumps.
std::string format_curvature(double value);

/// Header `u,v,kappa,method`, plus `converged` for Sinkhorn maps. Endpoints
/// are written as source ids of `g`.
void write_curvature_csv(std::ostream& out, const Graph& g, const EdgeCurvatureMap& curvs);
/// {"method": ..., "edges": [{"u":..,"v":..,"kappa":..}, ...]}; kappa values
/// carry the same 12 significant digits as the CSV.
void write_curvature_json(std::ostream& out, const Graph& g, const EdgeCurvatureMap& curvs);

/// Header `node_id,<group>_<i>,...`; node_id is the source id; values use 17
/// significant digits so they read back bit-exactly.
void write_features_csv(std::ostream& out, const Graph& g, const FeatureMatrix& features);
/// Raw little-endian float64 in column-major order, rows x cols values.
void write_features_binary(std::ostream& out, const FeatureMatrix& features);
Eigen::MatrixXd read_features_binary(std::istream& in, std::size_t rows, std::size_t cols);

}  // namespace ricci
