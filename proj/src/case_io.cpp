#include "gmreslab/case_io.hpp"

#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "gmreslab/errors.hpp"
#include "gmreslab/matrix_market.hpp"

namespace gmreslab {

namespace fs = std::filesystem;
using nlohmann::json;

void write_case_dir(const std::string& dir, const GeneratedCase& c) {
  fs::create_directories(dir);
  write_matrix_market((fs::path(dir) / "A.mtx").string(), c.a_dense);
  write_matrix_market((fs::path(dir) / "H.mtx").string(), c.h_dense);
  write_matrix_market((fs::path(dir) / "b.mtx").string(), c.b);

  json meta;
  meta["family"] = c.meta.family;
  meta["n"] = c.meta.n;
  meta["seed"] = c.meta.seed;
  meta["rhs_seed"] = c.meta.rhs_seed;
  if (c.meta.family == "householder-lee") {
    meta["mu"] = c.meta.mu;
    meta["lambda"] = c.meta.lambda;
  } else {
    meta["K"] = c.meta.K;
    meta["kappa_X"] = c.meta.kappa_x;
  }
  meta["eigenvalues"] = c.eigenvalues.data();

  std::ofstream out(fs::path(dir) / "case.json");
  if (!out)
    throw std::runtime_error("cannot open case.json for writing in " + dir);
  out << meta.dump(2) << "\n";
}

LoadedCase read_case_dir(const std::string& dir) {
  std::ifstream in(fs::path(dir) / "case.json");
  if (!in) throw std::runtime_error("cannot open case.json in " + dir);
  json meta;
  try {
    in >> meta;
  } catch (const json::exception& e) {
    throw parse_error(std::string("case.json: ") + e.what(), 1);
  }

  const std::vector<double> eigs =
      meta.at("eigenvalues").get<std::vector<double>>();
  LoadedCase c{read_matrix_market((fs::path(dir) / "A.mtx").string()),
               read_matrix_market((fs::path(dir) / "H.mtx").string()),
               read_matrix_market_vector((fs::path(dir) / "b.mtx").string()),
               eigs.empty() ? Vector() : Vector(eigs),
               {}};
  c.meta.family = meta.at("family").get<std::string>();
  c.meta.n = meta.at("n").get<int>();
  c.meta.seed = meta.at("seed").get<std::uint64_t>();
  c.meta.rhs_seed = meta.at("rhs_seed").get<std::uint64_t>();
  if (meta.contains("mu")) c.meta.mu = meta["mu"].get<double>();
  if (meta.contains("lambda")) c.meta.lambda = meta["lambda"].get<double>();
  if (meta.contains("K")) c.meta.K = meta["K"].get<double>();
  if (meta.contains("kappa_X")) c.meta.kappa_x = meta["kappa_X"].get<double>();
  return c;
}

}  // namespace gmreslab
