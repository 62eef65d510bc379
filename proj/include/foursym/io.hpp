#pragma once

#include <string>

#include "foursym/bundle.hpp"
#include "foursym/one_form.hpp"

#include <json.hpp>

namespace foursym::io {

using json = nlohmann::ordered_json;

/// algebra.json: { "n": int, "basis": [[row-major reals]],
///                 "translation_flags": [bool] (optional) }
json algebra_to_json(const LieAlgebraBasis& alg);
LieAlgebraBasis algebra_from_json(const json& j);

/// { "matrix": [[...]], "order": 2|4 }
json automorphism_to_json(const LinearAutomorphism& tau);
LinearAutomorphism automorphism_from_json(const json& j);

/// spec.json = algebra.json + { "tau": {...}, "J0_m": [[...]],
///                              "family": ..., "params": [...] }
json spec_to_json(const FourSymmetricSpec& spec);
FourSymmetricSpec spec_from_json(const json& j);

json matrix_to_json(const Eigen::MatrixXd& M);
Eigen::MatrixXd matrix_from_json(const json& j);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

/// form.grid: little-endian binary, magic "ZCG1", u32 nu, u32 nv, f64 h,
/// u32 dim, u8 periodic_u, u8 periodic_v, then nu*nv*2*dim doubles in
/// node-major (A_u, A_v)-interleaved order.
void write_form(const std::string& path, const DiscreteOneForm& form);
DiscreteOneForm read_form(const std::string& path);

/// frame.grid: magic "ZCF1", u32 nu, u32 nv, f64 h, u32 n, u8 flags, then
/// nu*nv n x n matrices (column-major) per node.
void write_frames(const std::string& path, const Grid2D& grid,
                  const std::vector<Eigen::MatrixXd>& frames);
std::pair<Grid2D, std::vector<Eigen::MatrixXd>> read_frames(const std::string& path);

}  // namespace foursym::io
