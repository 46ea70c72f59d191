#ifndef COARSE_IO_HPP
#define COARSE_IO_HPP

#include "coarse/amenability.hpp"
#include "coarse/blocking.hpp"
#include "coarse/geometry.hpp"
#include "coarse/spectral.hpp"
#include "coarse/warped.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace coarse::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Parses a JSON file; malformed input or a missing file throws InputError
/// (with line and column for syntax errors).
Json read_json_file(const std::filesystem::path& path);
Json parse_json(const std::string& text, const std::string& origin);

/// Finite numbers stay numbers; +-inf and nan become the strings "inf", "-inf", "nan".
Json number(double value);
double to_number(const Json& value, const std::string& field);

/// {"points", "coords", "metric", "explicit_distances", "weights", "levels", "side", "scale"}.
FiniteCoarseSpace space_from_json(const Json& doc);
FiniteCoarseSpace load_space(const std::filesystem::path& path);
Json space_to_json(const FiniteCoarseSpace& space);

/// {"radius": R} or {"pairs": [[x, y], ...], "symmetrize": bool}; points are ids.
Entourage entourage_from_json(const FiniteCoarseSpace& space, const Json& doc);

Json to_json(const SpectralReport& report);
Json to_json(const BlockingCollection& blocking);
Json to_json(const FolnerCertificate& certificate);
Json to_json(const FolnerSearch& search, const FiniteCoarseSpace& space);
Json to_json(const FamilyVerdict& verdict);
Json to_json(const DecompositionReport& report);
Json net_to_json(const FiniteCoarseSpace& space, const Entourage& f, const CoarseNet& net);

/// One eigenvalue per row under the header "index,eigenvalue".
std::string spectrum_csv(const std::vector<double>& eigenvalues);
/// Rows "t,gap,best_ratio".
std::string levels_csv(const FamilyVerdict& verdict);
/// Eigenvalue strip plot; deterministic (no timestamp).
std::string spectrum_svg(const std::vector<double>& eigenvalues);

/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);
void write_json(const std::filesystem::path& path, const Json& doc);

/// 16-byte header (magic "WARP", u32 version, u64 n) then n*n float64 row-major.
std::string encode_distances(const Eigen::MatrixXd& table);
Eigen::MatrixXd decode_distances(const std::string& bytes);

struct WarpConfig {
  BaseManifold base;
  std::vector<double> levels;
  double points_per_unit = 16.0;
  GroupPresentation presentation;
  double gap_threshold = 0.05;
  std::vector<double> decomposition_radii;
  double cone_cutoff = 0.0;
};

/// Validates every field before returning; errors carry the field path.
WarpConfig warp_config_from_json(const Json& doc);
Json manifest_json(const WarpConfig& config, const WarpedSystem& system);

}  // namespace coarse::io

#endif  // COARSE_IO_HPP
