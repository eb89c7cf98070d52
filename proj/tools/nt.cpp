#include <iostream>

#include "CLI11.hpp"
#include "ntri/cli.hpp"

int main(int argc, char** argv) {
  namespace c = ntri::cli;
  CLI::App app{"Total domination tools for near-triangulations"};
  app.require_subcommand(1);

  std::string path;
  auto* validate = app.add_subcommand("validate", "Check an NTG file");
  validate->add_option("file", path, "NTG file")->required();

  c::GenArgs gen;
  auto* g = app.add_subcommand("gen", "Write generated instances as NTG files");
  g->add_option("--family", gen.family,
                "fan | wheel | h7 | random_mop | random_neartri | tight_mop | octahedra | exceptions")
      ->required();
  g->add_option("--n", gen.n, "Order");
  g->add_option("--k", gen.k, "Family parameter");
  g->add_option("--interior", gen.interior, "Interior vertices (random_neartri)");
  g->add_option("--seed", gen.seed, "Seed");
  g->add_option("--count", gen.count, "Instances, with consecutive seeds");
  g->add_option("-o,--out", gen.out_dir, "Output directory");

  c::SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Print a certificate for one instance");
  s->add_option("file", solve.path, "NTG file")->required();
  s->add_option("--method", solve.method, "constructive | exact | mop-dp")
      ->check(CLI::IsMember({"constructive", "exact", "mop-dp"}));
  s->add_flag("--pretty", solve.pretty, "Indented JSON");

  c::VerifyArgs verify;
  std::string n_range, k_range;
  auto* v = app.add_subcommand("verify", "Check the bound over a family of instances");
  v->add_option("--family", verify.family,
                "random_neartri | random_mop | fan | wheel | h7 | tight_mop | octahedra | exceptions | enumerate-mops");
  v->add_option("--n-range", n_range, "Orders a..b");
  v->add_option("--k-range", k_range, "Family parameters a..b");
  v->add_option("--samples", verify.samples, "Instances per order for random families");
  v->add_option("--interior", verify.interior, "Interior vertices; default draws one per instance");
  v->add_option("--seed", verify.seed, "Base seed");
  v->add_option("--oracle-max", verify.oracle_max, "Cross-check with exact search up to this order");
  v->add_option("--threads", verify.threads, "Worker threads");
  v->add_flag("--pretty", verify.pretty, "Table instead of JSON lines");

  bool inspect_pretty = false;
  auto* inspect = app.add_subcommand("inspect", "Print the polygon decomposition");
  inspect->add_option("file", path, "NTG file")->required();
  inspect->add_flag("--pretty", inspect_pretty, "Indented JSON");

  std::string cert_path;
  auto* replay = app.add_subcommand("replay", "Re-check a certificate against its graph");
  replay->add_option("cert", cert_path, "Certificate JSON")->required();
  replay->add_option("file", path, "NTG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : c::kValidation;
  }

  try {
    if (!n_range.empty()) std::tie(verify.n_lo, verify.n_hi) = c::parse_range(n_range);
    if (!k_range.empty()) std::tie(verify.k_lo, verify.k_hi) = c::parse_range(k_range);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return c::kValidation;
  }

  if (*validate) return c::cmd_validate(path, std::cout, std::cerr);
  if (*g) return c::cmd_gen(gen, std::cout, std::cerr);
  if (*s) return c::cmd_solve(solve, std::cout, std::cerr);
  if (*v) return c::cmd_verify(verify, std::cout, std::cerr);
  if (*inspect) return c::cmd_inspect(path, inspect_pretty, std::cout, std::cerr);
  if (*replay) return c::cmd_replay(cert_path, path, std::cout, std::cerr);
  return c::kValidation;
}
