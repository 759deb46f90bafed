#include "kplane/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "kplane/errors.hpp"

namespace kplane {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << std::setprecision(17);
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string(), 0, std::string("invalid JSON: ") + e.what());
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits a line into `n` numbers; nullopt for a header-like line.
std::optional<std::vector<double>> parse_numbers(const std::string& line, std::size_t n,
                                                 const std::string& name, std::size_t lineno) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  bool any_text = false;
  while (std::getline(ss, cell, ',')) {
    cell = trim(cell);
    double v = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
      any_text = true;
      out.push_back(std::numeric_limits<double>::quiet_NaN());
    } else {
      out.push_back(v);
    }
  }
  if (any_text) {
    if (lineno == 1) return std::nullopt;
    throw ParseError(name, lineno, "expected " + std::to_string(n) + " numbers, got '" + line + "'");
  }
  if (out.size() != n) {
    throw ParseError(name, lineno,
                     "expected " + std::to_string(n) + " columns, got " + std::to_string(out.size()));
  }
  return out;
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  p.replace_extension(".json");
  if (p == csv) p += ".json";
  return p;
}

void write_profile(const std::filesystem::path& csv, const RadialProfile& f) {
  {
    std::ofstream out = open_out(csv);
    out << "r,value\n";
    for (std::size_t i = 0; i < f.size(); ++i) out << f.radius(i) << ',' << f.value(i) << '\n';
  }
  json meta = {{"d", f.dim()},
               {"tail_exponent", f.tail_exponent()},
               {"interp", std::string(to_string(f.interp()))}};
  std::ofstream side = open_out(sidecar_path(csv));
  side << meta.dump(2) << '\n';
}

RadialProfile parse_profile_csv(std::istream& in, const std::string& name, int d,
                                double tail_exponent, Interp interp) {
  std::vector<double> r, v;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    const auto nums = parse_numbers(line, 2, name, lineno);
    if (!nums) continue;
    const double ri = (*nums)[0];
    const double vi = (*nums)[1];
    if (!(ri > 0.0) || !std::isfinite(ri)) {
      throw ParseError(name, lineno, "radius must be positive and finite");
    }
    if (!r.empty() && !(ri > r.back())) {
      throw ParseError(name, lineno, "radii must be strictly increasing");
    }
    if (!(vi >= 0.0) || !std::isfinite(vi)) {
      throw ParseError(name, lineno, "value must be finite and nonnegative");
    }
    r.push_back(ri);
    v.push_back(vi);
  }
  if (r.size() < 2) throw ParseError(name, lineno, "need at least two samples");
  return RadialProfile(d, std::move(r), std::move(v), tail_exponent, interp);
}

RadialProfile read_profile(const std::filesystem::path& csv, const ProfileDefaults& defaults) {
  std::optional<int> d = defaults.d;
  std::optional<double> gamma = defaults.tail_exponent;
  Interp interp = Interp::log_pchip;
  const auto side = sidecar_path(csv);
  if (std::filesystem::exists(side)) {
    const json meta = read_json(side);
    try {
      if (meta.contains("d")) d = meta.at("d").get<int>();
      if (meta.contains("tail_exponent")) gamma = meta.at("tail_exponent").get<double>();
      if (meta.contains("interp")) interp = interp_from_string(meta.at("interp").get<std::string>());
    } catch (const json::exception& e) {
      throw ParseError(side.string(), 0, e.what());
    }
  }
  if (!d || !gamma) {
    throw Error("profile " + csv.string() + ": no sidecar with d and tail_exponent");
  }
  std::ifstream in = open_in(csv);
  return parse_profile_csv(in, csv.string(), *d, *gamma, interp);
}

void write_field(const std::filesystem::path& csv, const AxiSymField& g) {
  const AxiGrid& grid = g.grid();
  {
    std::ofstream out = open_out(csv);
    out << "rho,s,value\n";
    for (std::size_t i = 0; i < grid.n_rho(); ++i) {
      for (std::size_t j = 0; j < grid.n_s(); ++j) {
        out << grid.rho(i) << ',' << grid.s(j) << ',' << g.at(i, j) << '\n';
      }
    }
  }
  json meta = {{"d", g.dim()},
               {"tail_exponent", g.tail_exponent()},
               {"rho_edges", std::vector<double>(grid.rho_edges().begin(), grid.rho_edges().end())},
               {"s_edges", std::vector<double>(grid.s_edges().begin(), grid.s_edges().end())}};
  std::ofstream side = open_out(sidecar_path(csv));
  side << std::setprecision(17) << meta.dump() << '\n';
}

AxiSymField read_field(const std::filesystem::path& csv) {
  const auto side = sidecar_path(csv);
  const json meta = read_json(side);
  int d = 0;
  double gamma = 0.0;
  std::vector<double> rho_edges, s_edges;
  try {
    d = meta.at("d").get<int>();
    gamma = meta.at("tail_exponent").get<double>();
    rho_edges = meta.at("rho_edges").get<std::vector<double>>();
    s_edges = meta.at("s_edges").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw ParseError(side.string(), 0, e.what());
  }
  auto grid = std::make_shared<const AxiGrid>(std::move(rho_edges), std::move(s_edges));
  std::vector<double> values;
  values.reserve(grid->size());
  std::ifstream in = open_in(csv);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto nums = parse_numbers(line, 3, csv.string(), lineno);
    if (!nums) continue;
    if (values.size() == grid->size()) throw ParseError(csv.string(), lineno, "too many rows");
    const std::size_t i = values.size() / grid->n_s();
    const std::size_t j = values.size() % grid->n_s();
    const double tol = 1e-9 * (1.0 + std::abs(grid->rho(i)) + std::abs(grid->s(j)));
    if (std::abs((*nums)[0] - grid->rho(i)) > tol || std::abs((*nums)[1] - grid->s(j)) > tol) {
      throw ParseError(csv.string(), lineno, "coordinates do not match the grid in the sidecar");
    }
    if (!((*nums)[2] >= 0.0) || !std::isfinite((*nums)[2])) {
      throw ParseError(csv.string(), lineno, "value must be finite and nonnegative");
    }
    values.push_back((*nums)[2]);
  }
  if (values.size() != grid->size()) {
    throw ParseError(csv.string(), lineno, "expected " + std::to_string(grid->size()) + " rows");
  }
  return AxiSymField(d, std::move(grid), std::move(values), gamma);
}

void write_trace_csv(const std::filesystem::path& csv, const ConvergenceReport& rep) {
  std::ofstream out = open_out(csv);
  write_trace_csv(out, rep);
}

void write_trace_csv(std::ostream& out, const ConvergenceReport& rep) {
  out.precision(17);
  out << "n,distance,ratio,norm\n";
  for (std::size_t i = 0; i < rep.iterates_kept.size(); ++i) {
    out << rep.iterates_kept[i] << ',' << rep.distances[i] << ',';
    if (!std::isnan(rep.ratios[i])) out << rep.ratios[i];
    out << ',' << rep.norms[i] << '\n';
  }
}

std::string trace_summary_json(const ConvergenceReport& rep, int k, int d, std::uint64_t seed,
                               const std::string& init, double tol, std::size_t max_iters) {
  double last_ratio = std::numeric_limits<double>::quiet_NaN();
  for (double r : rep.ratios) {
    if (!std::isnan(r)) last_ratio = r;
  }
  json j = {{"k", k},
            {"d", d},
            {"seed", seed},
            {"init", init},
            {"tol", tol},
            {"max_iters", max_iters},
            {"iterations", rep.steps.size()},
            {"converged", rep.converged},
            {"amplitude", rep.amplitude},
            {"initial_distance", rep.distances.front()},
            {"final_distance", rep.final_distance()},
            {"final_ratio", last_ratio},
            {"distance_monotone", rep.distance_monotone},
            {"ratio_monotone", rep.ratio_monotone}};
  if (rep.converged) j["converged_at"] = rep.converged_at;
  return j.dump(2);
}

std::string mc_json(const MCEstimate& est) {
  json j = {{"value", est.value},
            {"std_error", est.std_error},
            {"n_samples", est.n_samples},
            {"seed", est.seed},
            {"rejected", est.rejected}};
  return j.dump(2);
}

}  // namespace kplane
