// Times the serial reference kernels against their OpenMP twins on the
// same workloads and prints a throughput table. The outputs are asserted
// identical before timing, so the speedup numbers compare like with like.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>

#include "hlawka/json_io.hpp"
#include "hlawka/search.hpp"
#include "hlawka/suite.hpp"

namespace {

double time_seconds(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void row(const char* name, double serial_s, double parallel_s) {
  std::printf("%-22s %10.3f s %12.3f s %9.2fx\n", name, serial_s, parallel_s,
              serial_s / parallel_s);
}

std::string strip_elapsed(const hlawka::json& j) {
  hlawka::json c = j;
  c.erase("elapsed_seconds");
  return c.dump();
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t trials = 200000;
  if (argc > 1) trials = std::strtoull(argv[1], nullptr, 10);

  std::printf("threads: %d (OpenMP %s)\n", hlawka::max_threads(),
              hlawka::openmp_enabled() ? "on" : "off");
  std::printf("%-22s %12s %14s %10s\n", "kernel", "serial", "parallel",
              "speedup");

  using hlawka::ExecMode;

  hlawka::SuiteConfig cfg;
  cfg.trials = trials;
  cfg.dimension = 5;
  cfg.seed = 42;
  hlawka::SuiteReport rs, rp;
  const double suite_serial =
      time_seconds([&] { rs = hlawka::run_suite(cfg, ExecMode::serial); });
  const double suite_parallel =
      time_seconds([&] { rp = hlawka::run_suite(cfg, ExecMode::parallel); });
  if (strip_elapsed(hlawka::json(rs)) != strip_elapsed(hlawka::json(rp))) {
    std::fprintf(stderr, "suite kernels disagree\n");
    return 1;
  }
  row("verify suite", suite_serial, suite_parallel);

  hlawka::IdentityReport is, ip;
  const double id_serial = time_seconds(
      [&] { is = hlawka::run_identities(trials / 4, 7, false, ExecMode::serial); });
  const double id_parallel = time_seconds(
      [&] { ip = hlawka::run_identities(trials / 4, 7, false, ExecMode::parallel); });
  if (strip_elapsed(hlawka::json(is)) != strip_elapsed(hlawka::json(ip))) {
    std::fprintf(stderr, "identity kernels disagree\n");
    return 1;
  }
  row("identity scan", id_serial, id_parallel);

  hlawka::GridSpec grid;
  hlawka::GridResult gs, gp;
  const double grid_serial =
      time_seconds([&] { gs = hlawka::grid_min_xi(grid, ExecMode::serial); });
  const double grid_parallel =
      time_seconds([&] { gp = hlawka::grid_min_xi(grid, ExecMode::parallel); });
  if (gs.min_scaled_xi != gp.min_scaled_xi ||
      gs.admissible_count != gp.admissible_count) {
    std::fprintf(stderr, "grid kernels disagree\n");
    return 1;
  }
  row("grid oracle", grid_serial, grid_parallel);

  hlawka::SearchConfig sc;
  sc.restarts = 32;
  hlawka::SearchResult ss, sp;
  const double search_serial =
      time_seconds([&] { ss = hlawka::minimize_xi(sc, ExecMode::serial); });
  const double search_parallel =
      time_seconds([&] { sp = hlawka::minimize_xi(sc, ExecMode::parallel); });
  if (hlawka::json(ss).dump() != hlawka::json(sp).dump()) {
    std::fprintf(stderr, "search kernels disagree\n");
    return 1;
  }
  row("descent restarts", search_serial, search_parallel);

  return 0;
}
