// lwlab: command-line front end for the lwlab library.

#include "lwlab/lwlab.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using lwlab::Mat;
using lwlab::Polytope;
using lwlab::Subspace;
using lwlab::Vec;
using nlohmann::json;

// A body argument is a JSON file path or a named body such as "cube(3)".
Polytope load_body(const std::string& arg) {
  if (std::filesystem::exists(arg)) return lwlab::body_from_json(json::parse(lwlab::read_text(arg)));
  return lwlab::named_body(arg);
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

Vec parse_vector(const std::string& s, int n) {
  const auto v = parse_list(s);
  if (static_cast<int>(v.size()) != n) throw lwlab::DegenerateInput("vector '" + s + "' must have " + std::to_string(n) + " entries");
  Vec out(n);
  for (int i = 0; i < n; ++i) out(i) = v[i];
  return out;
}

// "e1,e3" spans coordinate axes; "1,0,0;0,1,1" spans explicit vectors.
Subspace parse_subspace(const std::string& s, int n) {
  if (!s.empty() && s[0] == 'e') {
    std::vector<int> idx;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.size() < 2 || item[0] != 'e') throw lwlab::DegenerateInput("bad axis '" + item + "'");
      const int i = std::stoi(item.substr(1));
      if (i < 1 || i > n) throw lwlab::DegenerateInput("axis '" + item + "' out of range");
      idx.push_back(i - 1);
    }
    return Subspace::coordinate(n, idx);
  }
  std::vector<Vec> vs;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) vs.push_back(parse_vector(item, n));
  return Subspace::span(vs, n);
}

json to_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json to_json(const Mat& m) {
  json a = json::array();
  for (int i = 0; i < m.rows(); ++i) a.push_back(to_json(Vec(m.row(i).transpose())));
  return a;
}

lwlab::UniformCover load_cover(const std::string& path) {
  const json j = json::parse(lwlab::read_text(path));
  lwlab::UniformCover c;
  for (const auto& s : j.at("sets")) c.sets.push_back(s.get<std::vector<int>>());
  c.weights = j.at("weights").get<std::vector<double>>();
  return c;
}

json lambda_json(const lwlab::LambdaResult& r) {
  return {{"value", r.value},
          {"witness", to_json(r.witness)},
          {"certificate", r.certificate},
          {"method", r.method},
          {"evaluations", r.evaluations},
          {"best_restart", r.best_restart},
          {"resolution", r.resolution},
          {"min_vertex_gap", r.min_vertex_gap},
          {"resolution_ok", r.resolution_ok}};
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("LWLAB_SEED")) return std::stoull(env);
  return 42;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sections, projections and reverse Loomis-Whitney constants of polytopes"};
  app.require_subcommand(1);

  std::string body_arg;

  auto* iso = app.add_subcommand("isotropy", "L_K, covariance and principal axes");
  iso->add_option("body", body_arg, "body JSON file or named body")->required();

  double p = 2.0;
  std::string dir;
  auto* zp = app.add_subcommand("zp", "support function of Z_p(K)");
  zp->add_option("body", body_arg)->required();
  zp->add_option("--p", p, "moment order, p >= 1");
  zp->add_option("--dir", dir, "direction, comma separated")->required();

  std::string subspace;
  auto* paouris = app.add_subcommand("paouris", "|K cap H-perp|^(1/d) |P_H Z_d K|^(1/d)");
  paouris->add_option("body", body_arg)->required();
  paouris->add_option("--subspace", subspace, "e1,e2 or 1,0,0;0,1,0")->required();

  bool volume_flag = false, witness_flag = false;
  auto* pistar = app.add_subcommand("pistar", "polar projection body");
  pistar->add_option("body", body_arg)->required();
  pistar->add_flag("--volume", volume_flag, "|Pi* K| with the Petty-Zhang bounds");
  pistar->add_option("--section", subspace, "|Pi* K cap H|");
  pistar->add_flag("--witness", witness_flag, "inscribed cross-polytope frame in H");

  std::string method = "search", cover_path;
  int restarts = 32;
  auto* lambda = app.add_subcommand("lambda", "reverse dual Loomis-Whitney constant");
  lambda->add_option("body", body_arg)->required();
  lambda->add_option("--method", method, "scan (planar) or search")->check(CLI::IsMember({"scan", "search"}));
  lambda->add_option("--restarts", restarts)->check(CLI::PositiveNumber);
  lambda->add_option("--cover", cover_path, "uniform cover JSON");

  std::string suite = "all", out_path, json_path, snapshot_path;
  std::vector<int> dims;
  int trials = 0;
  std::uint64_t seed = default_seed();
  auto* verify = app.add_subcommand("verify", "run inequality suites");
  verify->add_option("--suite", suite, "suite id or all");
  verify->add_option("--dim", dims, "dimensions")->delimiter(',');
  verify->add_option("--trials", trials)->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed);
  verify->add_option("--restarts", restarts)->check(CLI::PositiveNumber);
  verify->add_option("--out", out_path, "CSV report (stdout if omitted)");
  verify->add_option("--json", json_path, "JSON report");
  verify->add_option("--snapshot", snapshot_path, "regression snapshot CSV");

  std::string shape, name, gen_out;
  int gen_dim = 2, points = 0;
  bool symmetric = false;
  auto* gen = app.add_subcommand("gen", "write a body as JSON");
  gen->add_option("--shape", shape)->required()->check(CLI::IsMember({"named", "random"}));
  gen->add_option("--name", name, "named body, e.g. cube(3)");
  gen->add_option("--dim", gen_dim);
  gen->add_option("--points", points, "generator count (default 4n)");
  gen->add_flag("--symmetric", symmetric);
  gen->add_option("--seed", seed);
  gen->add_option("--out", gen_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (iso->parsed()) {
      const Polytope k = lwlab::normalize(load_body(body_arg)).first;
      const lwlab::CovarianceMatrix cov = lwlab::covariance(k);
      print({{"L", lwlab::isotropic_constant(k)},
             {"covariance", to_json(cov.m)},
             {"principal_axes", to_json(lwlab::principal_axes(lwlab::Ellipsoid{cov.m}))}});
    } else if (zp->parsed()) {
      const Polytope k = load_body(body_arg);
      print({{"p", p}, {"h", lwlab::zp_support(k, p, parse_vector(dir, k.dim()))}});
    } else if (paouris->parsed()) {
      const Polytope k = load_body(body_arg);
      const lwlab::PaourisValue v = lwlab::paouris_product(k, parse_subspace(subspace, k.dim()));
      print({{"value", v.value}, {"uncertainty", v.uncertainty}});
    } else if (pistar->parsed()) {
      const Polytope k = load_body(body_arg);
      json j;
      if (volume_flag) {
        const lwlab::SampledVolume v = lwlab::pistar_volume(k);
        const lwlab::PettyZhangReport r = lwlab::petty_zhang_check(k);
        j["volume"] = {{"value", v.volume}, {"uncertainty", v.uncertainty}, {"samples", v.samples},
                       {"product", r.lower.rhs}, {"lower", r.lower.lhs}, {"upper", r.upper.rhs}};
      }
      if (!subspace.empty()) {
        const Subspace h = parse_subspace(subspace, k.dim());
        const lwlab::SampledVolume v = lwlab::pistar_section_volume(k, h);
        j["section"] = {{"value", v.volume}, {"uncertainty", v.uncertainty}, {"samples", v.samples}};
        if (witness_flag) {
          const lwlab::CrossPolytopeWitness w = lwlab::inscribed_cross_polytope(k, h);
          j["witness"] = {{"frame", to_json(w.frame)}, {"radii", w.radii}, {"cross_volume", w.cross_volume}, {"ratio", w.ratio}};
        }
      } else if (witness_flag) {
        throw lwlab::DegenerateInput("--witness needs --section");
      }
      if (j.is_null()) throw lwlab::DegenerateInput("pistar: give --volume or --section");
      print(j);
    } else if (lambda->parsed()) {
      const Polytope k = load_body(body_arg);
      lwlab::LambdaResult r;
      if (!cover_path.empty())
        r = lwlab::lambda_cover_search(k, load_cover(cover_path), restarts);
      else if (method == "scan")
        r = lwlab::lambda_tilde_planar(k);
      else
        r = lwlab::lambda_tilde(k, restarts);
      print(lambda_json(r));
    } else if (verify->parsed()) {
      lwlab::SuiteConfig cfg;
      cfg.dims = dims;
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.restarts = restarts;
      std::vector<lwlab::InequalityReport> rows = lwlab::run_suite(suite, cfg);
      if (!snapshot_path.empty()) {
        const auto snap = lwlab::from_csv(lwlab::read_text(snapshot_path));
        for (const auto& d : lwlab::apply_snapshot(rows, snap)) std::cerr << d.check_id << " " << d.body_id << ": " << d.what << "\n";
      }
      const std::string csv = lwlab::to_csv(rows);
      if (out_path.empty())
        std::cout << csv;
      else
        lwlab::write_text(out_path, csv);
      if (!json_path.empty()) lwlab::write_text(json_path, lwlab::to_json(rows).dump(2) + "\n");
      int failed = 0;
      for (const auto& r : rows) failed += r.failed();
      std::cerr << rows.size() << " rows, " << failed << " failed\n";
      return failed == 0 ? 0 : 1;
    } else if (gen->parsed()) {
      Polytope k = shape == "named" ? lwlab::named_body(name)
                                    : lwlab::gen_random_body(gen_dim, points > 0 ? points : 4 * gen_dim, symmetric, seed);
      const std::string text = lwlab::body_to_json(k).dump(2) + "\n";
      if (gen_out.empty())
        std::cout << text;
      else
        lwlab::write_text(gen_out, text);
    }
  } catch (const std::exception& e) {
    std::cerr << "lwlab: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
