#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "kplane/field.hpp"
#include "kplane/flow.hpp"
#include "kplane/mc_oracle.hpp"
#include "kplane/profile.hpp"

namespace kplane {

/// "<stem>.json" next to a CSV file.
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

struct ProfileDefaults {
  std::optional<int> d;
  std::optional<double> tail_exponent;
};

/// CSV body "r,value" (header line optional) plus the JSON sidecar
/// {d, tail_exponent, interp}. Values missing from an absent sidecar come
/// from `defaults`; ParseError names the offending line.
void write_profile(const std::filesystem::path& csv, const RadialProfile& f);
RadialProfile read_profile(const std::filesystem::path& csv, const ProfileDefaults& defaults = {});
RadialProfile parse_profile_csv(std::istream& in, const std::string& name, int d,
                                double tail_exponent, Interp interp);

/// CSV body "rho,s,value" in row-major grid order; the sidecar carries
/// {d, tail_exponent, rho_edges, s_edges}.
void write_field(const std::filesystem::path& csv, const AxiSymField& g);
AxiSymField read_field(const std::filesystem::path& csv);

/// Trace CSV "n,distance,ratio,norm".
void write_trace_csv(const std::filesystem::path& csv, const ConvergenceReport& rep);
void write_trace_csv(std::ostream& out, const ConvergenceReport& rep);
std::string trace_summary_json(const ConvergenceReport& rep, int k, int d, std::uint64_t seed,
                               const std::string& init, double tol, std::size_t max_iters);

std::string mc_json(const MCEstimate& est);

}  // namespace kplane
