#include "coarse/io.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace coarse::io {

namespace {

std::string field_type(const Json& v) { return v.type_name(); }

const Json& require(const Json& doc, const std::string& key, const std::string& path) {
  if (!doc.is_object() || !doc.contains(key)) throw InputError(path + key + ": required field missing");
  return doc.at(key);
}

void check_schema(const Json& doc) {
  if (!doc.is_object()) throw InputError("document must be a JSON object");
  if (doc.contains("schema_version")) {
    const Json& v = doc["schema_version"];
    if (!v.is_number_integer() || v.get<int>() != kSchemaVersion)
      throw InputError("schema_version: expected " + std::to_string(kSchemaVersion));
  }
}

std::vector<double> number_list(const Json& v, const std::string& field) {
  if (!v.is_array()) throw InputError(field + ": expected an array, got " + field_type(v));
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(to_number(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::string format_double(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

Json ids_of(const FiniteCoarseSpace& space, const PointSet& set) {
  Json out = Json::array();
  for (Index x : set) out.push_back(space.ids()[static_cast<std::size_t>(x)]);
  return out;
}

Json index_list(const PointSet& set) {
  Json out = Json::array();
  for (Index x : set) out.push_back(x);
  return out;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": malformed JSON");
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str(), path.string());
}

Json number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

double to_number(const Json& value, const std::string& field) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
  }
  throw InputError(field + ": expected a number or \"inf\", got " + value.dump());
}

FiniteCoarseSpace space_from_json(const Json& doc) {
  check_schema(doc);
  std::vector<std::string> ids;
  if (doc.contains("points")) {
    const Json& pts = doc["points"];
    if (!pts.is_array()) throw InputError("points: expected an array");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].is_string()) ids.push_back(pts[i].get<std::string>());
      else if (pts[i].is_number_integer()) ids.push_back(std::to_string(pts[i].get<long long>()));
      else throw InputError("points[" + std::to_string(i) + "]: expected a string or integer id");
    }
  }
  const std::string metric = doc.value("metric", std::string("euclidean"));
  if (metric != "euclidean" && metric != "torus" && metric != "explicit")
    throw InputError("metric: expected \"euclidean\", \"torus\" or \"explicit\", got \"" + metric + "\"");

  Eigen::MatrixXd coords;
  Eigen::MatrixXd table;
  Index n = -1;
  if (!ids.empty()) n = static_cast<Index>(ids.size());
  if (metric == "explicit") {
    std::vector<double> tri = number_list(require(doc, "explicit_distances", ""), "explicit_distances");
    if (n < 0) {
      // n(n-1)/2 entries
      auto m = static_cast<Index>(std::llround((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(tri.size()))) / 2.0));
      n = m;
    }
    const auto strict = static_cast<std::size_t>(n * (n - 1) / 2);
    const auto with_diag = static_cast<std::size_t>(n * (n + 1) / 2);
    if (tri.size() != strict && tri.size() != with_diag)
      throw InputError("explicit_distances: expected " + std::to_string(strict) + " (or " + std::to_string(with_diag) +
                       ") upper-triangle entries, got " + std::to_string(tri.size()));
    const bool diag = tri.size() == with_diag && with_diag != strict;
    table = Eigen::MatrixXd::Zero(n, n);
    std::size_t k = 0;
    for (Index x = 0; x < n; ++x)
      for (Index y = diag ? x : x + 1; y < n; ++y) {
        table(x, y) = tri[k];
        table(y, x) = tri[k];
        ++k;
      }
  } else {
    const Json& c = require(doc, "coords", "");
    if (!c.is_array()) throw InputError("coords: expected an array of rows");
    const auto rows = static_cast<Index>(c.size());
    if (n >= 0 && rows != n) throw InputError("coords: " + std::to_string(rows) + " rows for " + std::to_string(n) + " points");
    n = rows;
    Index dim = rows == 0 ? 0 : -1;
    for (Index i = 0; i < rows; ++i) {
      const std::string field = "coords[" + std::to_string(i) + "]";
      std::vector<double> row = number_list(c[static_cast<std::size_t>(i)], field);
      if (dim < 0) {
        dim = static_cast<Index>(row.size());
        coords.resize(rows, dim);
      }
      if (static_cast<Index>(row.size()) != dim) throw InputError(field + ": expected " + std::to_string(dim) + " coordinates");
      for (Index k = 0; k < dim; ++k) {
        if (!std::isfinite(row[static_cast<std::size_t>(k)])) throw InputError(field + ": coordinates must be finite");
        coords(i, k) = row[static_cast<std::size_t>(k)];
      }
    }
  }
  if (n <= 0) throw InputError("points: the space must have at least one point");

  Eigen::VectorXd weights = Eigen::VectorXd::Ones(n);
  if (doc.contains("weights")) {
    std::vector<double> w = number_list(doc["weights"], "weights");
    if (static_cast<Index>(w.size()) != n) throw InputError("weights: expected " + std::to_string(n) + " entries");
    for (Index x = 0; x < n; ++x) weights[x] = w[static_cast<std::size_t>(x)];
  }
  std::vector<int> levels;
  if (doc.contains("levels") && !doc["levels"].is_null()) {
    const Json& l = doc["levels"];
    if (!l.is_array() || static_cast<Index>(l.size()) != n)
      throw InputError("levels: expected " + std::to_string(n) + " integer labels");
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!l[i].is_number_integer()) throw InputError("levels[" + std::to_string(i) + "]: expected an integer");
      levels.push_back(l[i].get<int>());
    }
  }
  double scale = doc.contains("scale") ? to_number(doc["scale"], "scale") : 1.0;

  FiniteCoarseSpace space = [&] {
    if (metric == "explicit") return FiniteCoarseSpace::from_distances(table, weights, levels);
    if (metric == "torus") {
      double side = doc.contains("side") ? to_number(doc["side"], "side") : 1.0;
      return FiniteCoarseSpace::torus(coords, side, weights, levels, scale);
    }
    return FiniteCoarseSpace::euclidean(coords, weights, levels, scale);
  }();
  if (!ids.empty()) space.set_ids(ids);
  return space;
}

FiniteCoarseSpace load_space(const std::filesystem::path& path) { return space_from_json(read_json_file(path)); }

Json space_to_json(const FiniteCoarseSpace& space) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["points"] = space.ids();
  const Index n = space.size();
  switch (space.metric_kind()) {
    case MetricKind::euclidean:
    case MetricKind::torus: {
      doc["metric"] = space.metric_kind() == MetricKind::torus ? "torus" : "euclidean";
      Json rows = Json::array();
      for (Index i = 0; i < n; ++i) {
        Json row = Json::array();
        for (Index k = 0; k < space.coords().cols(); ++k) row.push_back(space.coords()(i, k));
        rows.push_back(row);
      }
      doc["coords"] = rows;
      if (space.metric_kind() == MetricKind::torus) doc["side"] = space.side();
      doc["scale"] = space.scale();
      break;
    }
    case MetricKind::explicit_table: {
      doc["metric"] = "explicit";
      Json tri = Json::array();
      for (Index x = 0; x < n; ++x)
        for (Index y = x + 1; y < n; ++y) tri.push_back(number(space.distance(x, y)));
      doc["explicit_distances"] = tri;
      break;
    }
  }
  Json w = Json::array();
  for (Index x = 0; x < n; ++x) w.push_back(space.weight(x));
  doc["weights"] = w;
  if (space.has_levels()) doc["levels"] = space.levels();
  return doc;
}

Entourage entourage_from_json(const FiniteCoarseSpace& space, const Json& doc) {
  check_schema(doc);
  if (doc.contains("radius")) return Entourage::radius(space, to_number(doc["radius"], "radius"));
  const Json& pairs = require(doc, "pairs", "");
  if (!pairs.is_array()) throw InputError("pairs: expected an array of [x, y]");
  auto point = [&](const Json& v, const std::string& field) {
    std::string id;
    if (v.is_string()) id = v.get<std::string>();
    else if (v.is_number_integer()) id = std::to_string(v.get<long long>());
    else throw InputError(field + ": expected a point id");
    Index x = space.index_of(id);
    if (x < 0) throw InputError(field + ": unknown point \"" + id + "\"");
    return x;
  };
  std::vector<Entourage::Pair> list;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string field = "pairs[" + std::to_string(i) + "]";
    if (!pairs[i].is_array() || pairs[i].size() != 2) throw InputError(field + ": expected [x, y]");
    list.emplace_back(point(pairs[i][0], field + "[0]"), point(pairs[i][1], field + "[1]"));
  }
  return Entourage::from_pairs(space, list, doc.value("symmetrize", false));
}

Json to_json(const SpectralReport& r) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["gap"] = number(r.gap);
  doc["kernel_dim"] = r.kernel_dim;
  doc["component_count"] = r.component_count;
  doc["kernel_basis_is_locally_constant"] = r.kernel_basis_is_locally_constant;
  doc["method"] = to_string(r.method);
  doc["residual"] = number(r.residual);
  doc["lambda_max"] = number(r.lambda_max);
  doc["kernel_threshold"] = number(r.kernel_threshold);
  doc["representation"] = r.representation;
  Json ev = Json::array();
  for (double v : r.eigenvalues) ev.push_back(number(v));
  doc["eigenvalues"] = ev;
  return doc;
}

Json to_json(const BlockingCollection& b) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  Json blocks = Json::array();
  for (const auto& block : b.blocks) blocks.push_back(ids_of(b.bound.space(), block));
  doc["blocks"] = blocks;
  doc["bound"] = b.bound.descriptor();
  doc["floor"] = number(b.floor);
  return doc;
}

Json to_json(const FolnerCertificate& c) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["subset"] = ids_of(c.entourage.space(), c.subset);
  doc["indices"] = index_list(c.subset);
  doc["entourage"] = c.entourage.descriptor();
  doc["ratio"] = number(c.ratio);
  doc["epsilon"] = number(c.epsilon_target);
  doc["valid"] = c.valid();
  return doc;
}

Json to_json(const FolnerSearch& s, const FiniteCoarseSpace& space) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["found"] = s.certificate.has_value();
  doc["stage"] = s.stage;
  doc["certificate"] = s.certificate ? to_json(*s.certificate) : Json();
  doc["best_ratio"] = number(s.best_ratio);
  doc["best_subset"] = ids_of(space, s.best_subset);
  doc["best_indices"] = index_list(s.best_subset);
  return doc;
}

Json to_json(const FamilyVerdict& v) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["verdict"] = to_string(v.verdict);
  doc["gap_floor"] = number(v.gap_floor);
  doc["gap_threshold"] = number(v.gap_threshold);
  doc["scope"] = v.scope;
  Json levels = Json::array();
  for (const auto& [t, g] : v.per_level_gap) {
    Json row;
    row["t"] = t;
    row["gap"] = number(g);
    auto f = v.per_level_folner.find(t);
    row["best_ratio"] = f == v.per_level_folner.end() ? Json() : number(f->second);
    auto e = v.per_level_error.find(t);
    if (e != v.per_level_error.end()) row["error"] = e->second;
    levels.push_back(row);
  }
  doc["levels"] = levels;
  return doc;
}

Json to_json(const DecompositionReport& r) {
  Json doc;
  doc["radius"] = number(r.radius);
  doc["word_length"] = r.word_length;
  doc["lipschitz"] = number(r.lipschitz);
  doc["r_prime"] = number(r.r_prime);
  doc["pairs"] = r.pairs;
  doc["covered"] = r.covered;
  doc["coverage"] = number(r.coverage);
  doc["max_needed"] = number(r.max_needed);
  return doc;
}

Json net_to_json(const FiniteCoarseSpace& space, const Entourage& f, const CoarseNet& net) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["entourage"] = f.descriptor();
  doc["net"] = ids_of(space, net.points);
  doc["indices"] = index_list(net.points);
  Json witness = Json::array();
  double worst = 0.0;
  for (Index x = 0; x < space.size(); ++x) {
    Index y = net.witness[static_cast<std::size_t>(x)];
    double d = space.distance(x, y);
    worst = std::max(worst, d);
    witness.push_back({{"point", space.ids()[static_cast<std::size_t>(x)]},
                       {"net_point", space.ids()[static_cast<std::size_t>(y)]},
                       {"distance", number(d)}});
  }
  doc["witness"] = witness;
  doc["max_witness_distance"] = number(worst);
  return doc;
}

std::string spectrum_csv(const std::vector<double>& eigenvalues) {
  std::string out = "index,eigenvalue\n";
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) out += std::to_string(i) + "," + format_double(eigenvalues[i]) + "\n";
  return out;
}

std::string levels_csv(const FamilyVerdict& verdict) {
  std::string out = "t,gap,best_ratio\n";
  for (const auto& [t, g] : verdict.per_level_gap) {
    auto f = verdict.per_level_folner.find(t);
    out += std::to_string(t) + "," + format_double(g) + "," +
           (f == verdict.per_level_folner.end() ? std::string() : format_double(f->second)) + "\n";
  }
  return out;
}

std::string spectrum_svg(const std::vector<double>& eigenvalues) {
  const double width = 640.0, height = 80.0, margin = 20.0;
  double lo = 0.0, hi = 1.0;
  if (!eigenvalues.empty()) {
    lo = std::min(0.0, *std::min_element(eigenvalues.begin(), eigenvalues.end()));
    hi = std::max(lo + 1e-12, *std::max_element(eigenvalues.begin(), eigenvalues.end()));
  }
  std::ostringstream svg;
  svg << std::setprecision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  svg << "  <line x1=\"" << margin << "\" y1=\"" << height / 2 << "\" x2=\"" << width - margin << "\" y2=\"" << height / 2
      << "\" stroke=\"#888\"/>\n";
  for (double v : eigenvalues) {
    double x = margin + (v - lo) / (hi - lo) * (width - 2 * margin);
    svg << "  <line x1=\"" << x << "\" y1=\"" << height / 2 - 15 << "\" x2=\"" << x << "\" y2=\"" << height / 2 + 15
        << "\" stroke=\"#c33\"/>\n";
  }
  svg << "  <text x=\"" << margin << "\" y=\"" << height - 4 << "\" font-size=\"10\">" << lo << "</text>\n";
  svg << "  <text x=\"" << width - margin << "\" y=\"" << height - 4 << "\" font-size=\"10\" text-anchor=\"end\">" << hi
      << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError(tmp.string() + ": cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InputError(tmp.string() + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

void write_json(const std::filesystem::path& path, const Json& doc) { write_atomic(path, doc.dump(2) + "\n"); }

std::string encode_distances(const Eigen::MatrixXd& table) {
  const auto n = static_cast<std::uint64_t>(table.rows());
  const std::uint32_t version = 1;
  std::string out("WARP", 4);
  out.append(reinterpret_cast<const char*>(&version), sizeof version);
  out.append(reinterpret_cast<const char*>(&n), sizeof n);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = table;
  out.append(reinterpret_cast<const char*>(rows.data()), static_cast<std::size_t>(rows.size()) * sizeof(double));
  return out;
}

Eigen::MatrixXd decode_distances(const std::string& bytes) {
  if (bytes.size() < 16 || bytes.compare(0, 4, "WARP") != 0) throw InputError("distance file: bad header");
  std::uint32_t version = 0;
  std::uint64_t n = 0;
  std::memcpy(&version, bytes.data() + 4, sizeof version);
  std::memcpy(&n, bytes.data() + 8, sizeof n);
  if (version != 1) throw InputError("distance file: unsupported version " + std::to_string(version));
  if (bytes.size() != 16 + n * n * sizeof(double)) throw InputError("distance file: size does not match n");
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows(static_cast<Index>(n), static_cast<Index>(n));
  std::memcpy(rows.data(), bytes.data() + 16, n * n * sizeof(double));
  return rows;
}

WarpConfig warp_config_from_json(const Json& doc) {
  check_schema(doc);
  WarpConfig cfg;
  const Json& base = require(doc, "base", "");
  std::string kind;
  int dim = 1;
  if (base.is_string()) {
    kind = base.get<std::string>();
    dim = doc.value("dim", kind == "torus" ? 2 : 1);
  } else if (base.is_object()) {
    kind = base.value("kind", std::string());
    dim = base.value("dim", kind == "torus" ? 2 : 1);
  } else {
    throw InputError("base: expected \"circle\", \"torus\" or {\"kind\", \"dim\"}");
  }
  if (kind == "circle") cfg.base = BaseManifold::circle();
  else if (kind == "torus") {
    if (dim < 1 || dim > 3) throw InputError("base.dim: expected 1, 2 or 3");
    cfg.base = BaseManifold::torus(dim);
  } else {
    throw InputError("base.kind: expected \"circle\" or \"torus\", got \"" + kind + "\"");
  }

  cfg.levels = doc.contains("levels") ? number_list(doc["levels"], "levels") : std::vector<double>{1, 2, 4, 8, 16};
  if (doc.contains("points_per_unit")) cfg.points_per_unit = to_number(doc["points_per_unit"], "points_per_unit");
  if (doc.contains("gap_threshold")) cfg.gap_threshold = to_number(doc["gap_threshold"], "gap_threshold");
  if (!(cfg.gap_threshold > 0.0)) throw InputError("gap_threshold: must be positive");
  if (doc.contains("decomposition_radii"))
    cfg.decomposition_radii = number_list(doc["decomposition_radii"], "decomposition_radii");
  if (doc.contains("cone_cutoff")) cfg.cone_cutoff = to_number(doc["cone_cutoff"], "cone_cutoff");

  const Json& gens = require(doc, "generators", "");
  if (!gens.is_array() || gens.empty()) throw InputError("generators: expected a non-empty array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string path = "generators[" + std::to_string(i) + "]";
    const Json& g = gens[i];
    if (!g.is_object()) throw InputError(path + ": expected an object");
    Generator gen;
    gen.name = g.value("name", "s" + std::to_string(i));
    const std::string gk = g.contains("kind") && g["kind"].is_string() ? g["kind"].get<std::string>() : "";
    if (gk == "identity") {
      gen.kind = Generator::Kind::identity;
      gen.shift = Eigen::VectorXd::Zero(cfg.base.dim);
    } else if (gk == "rotation") {
      gen.kind = Generator::Kind::rotation;
      std::vector<double> s = number_list(require(g, "shift", path + "."), path + ".shift");
      if (static_cast<int>(s.size()) != cfg.base.dim)
        throw InputError(path + ".shift: expected " + std::to_string(cfg.base.dim) + " components");
      gen.shift = Eigen::Map<Eigen::VectorXd>(s.data(), static_cast<Index>(s.size()));
      if (!gen.shift.allFinite()) throw InputError(path + ".shift: components must be finite");
    } else if (gk == "automorphism") {
      gen.kind = Generator::Kind::automorphism;
      const Json& m = require(g, "matrix", path + ".");
      if (!m.is_array() || static_cast<int>(m.size()) != cfg.base.dim)
        throw InputError(path + ".matrix: expected " + std::to_string(cfg.base.dim) + " rows");
      gen.matrix.resize(cfg.base.dim, cfg.base.dim);
      for (int r = 0; r < cfg.base.dim; ++r) {
        const std::string rp = path + ".matrix[" + std::to_string(r) + "]";
        std::vector<double> row = number_list(m[static_cast<std::size_t>(r)], rp);
        if (static_cast<int>(row.size()) != cfg.base.dim)
          throw InputError(rp + ": expected " + std::to_string(cfg.base.dim) + " entries");
        for (int c = 0; c < cfg.base.dim; ++c) gen.matrix(r, c) = row[static_cast<std::size_t>(c)];
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(gen.matrix);
      gen.lipschitz = svd.singularValues()(0);
    } else {
      throw InputError(path + ".kind: expected \"identity\", \"rotation\" or \"automorphism\"");
    }
    if (g.contains("lipschitz")) {
      gen.lipschitz = to_number(g["lipschitz"], path + ".lipschitz");
      if (!(gen.lipschitz > 0.0) || !std::isfinite(gen.lipschitz))
        throw InputError(path + ".lipschitz: must be positive and finite");
    }
    cfg.presentation.generators.push_back(gen);
  }
  if (doc.contains("relations")) {
    for (const auto& r : doc["relations"]) cfg.presentation.relations.push_back(r.dump());
  }
  if (doc.value("add_inverses", true)) {
    cfg.presentation.close_under_inverses();
  } else {
    for (std::size_t i = 0; i < cfg.presentation.generators.size(); ++i) cfg.presentation.generators[i].inverse = -1;
    GroupPresentation probe = cfg.presentation;
    probe.close_under_inverses();
    if (probe.size() != cfg.presentation.size())
      throw InputError("generators: add_inverses is false but the set is not closed under inverses");
    cfg.presentation = probe;
  }
  cfg.presentation.validate(cfg.base);
  return cfg;
}

Json manifest_json(const WarpConfig& config, const WarpedSystem& system) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["base"] = {{"kind", config.base.name()}, {"dim", config.base.dim}};
  doc["points_per_unit"] = config.points_per_unit;
  Json levels = Json::array();
  for (const auto& level : system.levels)
    levels.push_back({{"t", level.t},
                      {"density", level.density},
                      {"points", level.size()},
                      {"distances", "distances_t" + std::to_string(std::lround(level.t)) + ".bin"}});
  doc["levels"] = levels;
  Json gens = Json::array();
  for (const auto& g : config.presentation.generators) {
    Json j;
    j["name"] = g.name;
    j["kind"] = g.kind == Generator::Kind::identity ? "identity"
                : g.kind == Generator::Kind::rotation ? "rotation"
                                                      : "automorphism";
    if (g.kind == Generator::Kind::rotation) j["shift"] = std::vector<double>(g.shift.data(), g.shift.data() + g.shift.size());
    if (g.kind == Generator::Kind::automorphism) {
      Json m = Json::array();
      for (Index r = 0; r < g.matrix.rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < g.matrix.cols(); ++c) row.push_back(g.matrix(r, c));
        m.push_back(row);
      }
      j["matrix"] = m;
    }
    j["lipschitz"] = g.lipschitz;
    j["inverse"] = g.inverse;
    gens.push_back(j);
  }
  doc["generators"] = gens;
  return doc;
}

}  // namespace coarse::io
