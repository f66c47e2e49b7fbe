#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "entire/commands.hpp"

namespace {

bool read_file(const std::string& path, std::string& out) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    out = ss.str();
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int emit(const entire::cli::CommandResult& r) {
  std::cout << r.output;
  if (!r.error.empty()) std::cerr << r.error << "\n";
  return r.exit_code;
}

std::vector<double> parse_radii(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace entire::cli;
  CLI::App app{"Decide whether z_i' = z_i p_i(z) has only entire solutions"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  bool json = true;  // JSON is the default output everywhere except expand
  std::string file, cert;

  auto* check_cmd = app.add_subcommand("check", "decide a system; exit 0 entire, 3 not entire");
  check_cmd->add_option("file", file, "system file ('-' for stdin)")->required();
  check_cmd->add_flag("--json", json, "JSON output (default)");

  bool expand_json = false;
  auto* expand_cmd = app.add_subcommand("expand", "print the system a certificate describes");
  expand_cmd->add_option("cert", cert, "certificate or check output (JSON)")->required();
  expand_cmd->add_flag("--json", expand_json, "wrap the system text in a JSON document");

  auto* verify_cmd = app.add_subcommand("verify", "check a certificate against a system; exit 0 iff it holds");
  verify_cmd->add_option("cert", cert, "certificate or check output (JSON)")->required();
  verify_cmd->add_option("file", file, "system file")->required();

  auto* diverge_cmd = app.add_subcommand("diverge", "log-divergence sum z_i dp_i/dz_i");
  diverge_cmd->add_option("file", file, "system file")->required();

  SimulateOptions sim;
  std::string init_text;
  auto* sim_cmd = app.add_subcommand("simulate", "integrate along rays from the origin");
  sim_cmd->add_option("file", file, "system file")->required();
  sim_cmd->add_option("--radius", sim.radius, "ray length R")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--rays", sim.rays, "number of equally spaced rays")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--init", init_text, "initial values, e.g. 1,2,1+i (default all 1)");
  sim_cmd->add_option("--rtol", sim.rel_tol, "relative tolerance");
  sim_cmd->add_option("--atol", sim.abs_tol, "absolute tolerance");

  NevanlinnaOptions nev;
  std::string radii_text = "1";
  auto* nev_cmd = app.add_subcommand("nevanlinna", "estimate m(r, z_i) for the solution components");
  nev_cmd->add_option("file", file, "system file")->required();
  nev_cmd->add_option("--r", radii_text, "comma-separated radii");
  nev_cmd->add_option("--samples", nev.samples, "points on each circle")->check(CLI::Range(8, 1 << 20));
  nev_cmd->add_option("--init", init_text, "initial values (default all 1)");

  std::uint64_t seed = 1;
  entire::RandomCertificateOptions rnd;
  auto* rnd_cmd = app.add_subcommand("random-cert", "sample a certificate and its system");
  rnd_cmd->add_option("--seed", seed, "random seed");
  rnd_cmd->add_option("--n", rnd.n, "dimension")->check(CLI::Range(1, 8));
  rnd_cmd->add_option("--bound", rnd.entry_bound, "entry bound")->check(CLI::PositiveNumber);
  rnd_cmd->add_option("--terms", rnd.theta_terms, "max terms per theta")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  std::string a, b;
  auto load = [](const std::string& path, std::string& out) {
    if (read_file(path, out)) return true;
    std::cerr << "cannot read " << path << "\n";
    return false;
  };

  try {
    if (*check_cmd) return load(file, a) ? emit(check(a)) : kInputError;
    if (*expand_cmd) return load(cert, a) ? emit(expand_certificate(a, expand_json)) : kInputError;
    if (*verify_cmd) return load(cert, a) && load(file, b) ? emit(verify_certificate(a, b)) : kInputError;
    if (*diverge_cmd) return load(file, a) ? emit(diverge(a)) : kInputError;
    if (*sim_cmd) {
      if (!init_text.empty()) sim.initial = parse_complex_list(init_text);
      return load(file, a) ? emit(simulate(a, sim)) : kInputError;
    }
    if (*nev_cmd) {
      if (!init_text.empty()) nev.initial = parse_complex_list(init_text);
      nev.radii = parse_radii(radii_text);
      return load(file, a) ? emit(nevanlinna(a, nev)) : kInputError;
    }
    if (*rnd_cmd) return emit(random_certificate_command(seed, rnd));
  } catch (const std::exception& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
