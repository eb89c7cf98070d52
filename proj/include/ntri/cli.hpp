#pragma once

// Command implementations behind the `nt` tool. Each returns a process exit
// code and writes to the given streams, so they can be driven from tests.

#include <cstdint>
#include <iosfwd>
#include <string>

#include "json.hpp"
#include "ntri/certificate.hpp"
#include "ntri/embedding.hpp"

namespace ntri::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kIo = 2,
  kExceptionInput = 3,
  kInternal = 4,
};

/// Oracle size cap: NT_ORACLE_MAX when set to a positive integer, else 25.
int oracle_cap();

/// Reads and parses an NTG file.
NearTriangulation read_ntg_file(const std::string& path);

nlohmann::json certificate_json(const NearTriangulation& t, const TdsCertificate& cert, const std::string& method);

/// Checks a certificate against a graph without using the solver.
/// Returns an empty string when valid, else the reason.
std::string check_certificate(const NearTriangulation& t, const nlohmann::json& cert);

struct GenArgs {
  std::string family;
  int n = 0;
  int k = 0;
  int interior = -1;
  std::uint64_t seed = 0;
  int count = 1;
  std::string out_dir = ".";
};

struct SolveArgs {
  std::string path;
  std::string method = "constructive";  // constructive | exact | mop-dp
  bool pretty = false;
};

struct VerifyArgs {
  std::string family = "random_neartri";
  int n_lo = 10;
  int n_hi = 10;
  int k_lo = 1;
  int k_hi = 1;
  int samples = 10;
  int interior = -1;  // -1: drawn per instance
  std::uint64_t seed = 1;
  int oracle_max = 18;
  int threads = 0;  // 0: hardware concurrency
  bool pretty = false;
};

/// Parses "a..b" or "a" into an inclusive range.
std::pair<int, int> parse_range(const std::string& text);

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err);
int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_inspect(const std::string& path, bool pretty, std::ostream& out, std::ostream& err);
int cmd_replay(const std::string& cert_path, const std::string& ntg_path, std::ostream& out, std::ostream& err);

}  // namespace ntri::cli
