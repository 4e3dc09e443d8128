// nctvem: h-convergence runs from a key=value config.

#include "nctvem/study.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Nonconforming Trefftz VEM for the 2D Helmholtz impedance problem"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "run a single mesh or an h-convergence study");
  std::string config_path, csv, svg, dump;
  bool patch = false, svd = false, no_svd = false, quiet = false;
  run->add_option("--config", config_path, "key=value configuration file")->required();
  run->add_flag("--patch-test", patch, "exact solution = plane wave of the direction set");
  run->add_flag("--svd-filter", svd, "reduce edge spaces by truncated eigendecomposition (default)");
  run->add_flag("--no-svd-filter", no_svd, "keep the unreduced edge spaces");
  run->add_option("--dump-system", dump, "write the system matrix (Matrix Market) and rhs");
  run->add_option("--csv", csv, "CSV output path");
  run->add_option("--svg", svg, "SVG plot output path");
  run->add_flag("-q,--quiet", quiet, "no per-run log");
  run->get_option("--svd-filter")->excludes(run->get_option("--no-svd-filter"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  nctvem::StudyConfig cfg;
  try {
    cfg = nctvem::load_config(config_path);
  } catch (const nctvem::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n' << app.help();
    return 2;
  }
  if (patch) cfg.patch_test = true;
  if (svd) cfg.element.svd_filter = true;
  if (no_svd) cfg.element.svd_filter = false;
  if (!csv.empty()) cfg.csv = csv;
  if (!svg.empty()) cfg.svg = svg;
  if (!dump.empty()) cfg.dump_system = dump;

  try {
    const auto res = nctvem::run_study(cfg, quiet ? nullptr : &std::cout);
    if (!cfg.csv.empty()) {
      std::ofstream out(cfg.csv);
      if (!out) throw std::runtime_error("cannot write '" + cfg.csv + "'");
      nctvem::write_csv(out, res);
    } else {
      nctvem::write_csv(std::cout, res);
    }
    if (!cfg.svg.empty()) {
      std::ofstream out(cfg.svg);
      if (!out) throw std::runtime_error("cannot write '" + cfg.svg + "'");
      nctvem::write_svg(out, res);
    }
    int failed = 0;
    for (const auto& s : res.series)
      for (const auto& r : s.runs) failed += !r.failure.empty();
    if (failed == static_cast<int>(res.series.size() * cfg.resolutions())) return 1;
  } catch (const nctvem::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
